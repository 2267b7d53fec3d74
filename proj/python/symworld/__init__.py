"""Text games with symbolic modules."""

import json

from ._core import (
    DEFAULT_STEP_LIMIT,
    TASKS,
    ConfigError,
    Episode,
    EpisodeFinished,
    Error,
    InvalidAction,
    calc,
    kb_query,
    normalize_score,
    role_init,
)
from ._core import evaluate as _evaluate
from ._core import run_episode as _run_episode

__all__ = [
    "DEFAULT_STEP_LIMIT",
    "TASKS",
    "ConfigError",
    "Episode",
    "EpisodeFinished",
    "Error",
    "InvalidAction",
    "calc",
    "evaluate",
    "kb_query",
    "normalize_score",
    "role_init",
    "run_episode",
]


def run_episode(task, seed, agent="oracle", agent_seed=0):
    """Run one episode; returns the trace as a list of JSON records."""
    text = _run_episode(task, seed, agent, agent_seed)
    return [json.loads(line) for line in text.splitlines() if line]


def evaluate(tasks=TASKS, split="test", episodes=100, agent="oracle", jobs=1):
    """Run a benchmark; returns the report as a dict."""
    return json.loads(_evaluate(list(tasks), split, episodes, agent, jobs))
