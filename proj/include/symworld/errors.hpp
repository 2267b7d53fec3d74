#pragma once

#include <stdexcept>
#include <string>

namespace symworld {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad task name, bad flag value, missing credential, unreadable file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The chosen text is not a member of the current valid action set.
class InvalidAction : public Error {
 public:
  explicit InvalidAction(std::string action)
      : Error("invalid action: '" + action + "'"), action_(std::move(action)) {}
  const std::string& action() const noexcept { return action_; }

 private:
  std::string action_;
};

class EpisodeFinished : public Error {
 public:
  EpisodeFinished() : Error("episode already finished") {}
};

/// No valid action could be recovered from a model reply.
class ReplyUnparseable : public Error {
 public:
  explicit ReplyUnparseable(std::string raw)
      : Error("reply does not name a valid action: '" + raw + "'"), raw_(std::move(raw)) {}
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

/// Connection failure, timeout, or retries exhausted on transient errors.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// Endpoint answered with a non-success status.
class ApiError : public Error {
 public:
  ApiError(int status, std::string body_excerpt)
      : Error("api error " + std::to_string(status) + ": " + body_excerpt),
        status_(status),
        body_(std::move(body_excerpt)) {}
  int status() const noexcept { return status_; }
  const std::string& body() const noexcept { return body_; }

 private:
  int status_;
  std::string body_;
};

class MockExhausted : public Error {
 public:
  MockExhausted() : Error("scripted mock has no replies left") {}
};

/// The agent could not produce a decision; the episode is cut short.
class AgentAborted : public Error {
 public:
  using Error::Error;
};

}  // namespace symworld
