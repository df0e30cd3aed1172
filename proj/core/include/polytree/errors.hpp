#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polytree {

/// Base of every error thrown by the library. `module()` names the
/// subsystem that raised it so front ends can tag messages.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}
  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// Malformed text input. `position()` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error("parse", what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class InvalidArgument : public Error {
 public:
  InvalidArgument(std::string module, const std::string& what) : Error(std::move(module), what) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what) : Error("polycore", what) {}
};

class RootFindingFailed : public Error {
 public:
  explicit RootFindingFailed(const std::string& what) : Error("polycore", what) {}
};

class ConnectedJuliaSet : public Error {
 public:
  explicit ConnectedJuliaSet(const std::string& what) : Error("treebuild", what) {}
};

class ResolutionExhausted : public Error {
 public:
  explicit ResolutionExhausted(const std::string& what) : Error("treebuild", what) {}
};

class TruncationExceeded : public Error {
 public:
  explicit TruncationExceeded(const std::string& what) : Error("treebuild", what) {}
};

class VertexInBall : public Error {
 public:
  explicit VertexInBall(const std::string& what) : Error("treebuild", what) {}
};

class DegreeDrop : public Error {
 public:
  explicit DegreeDrop(const std::string& what) : Error("degeneration", what) {}
};

class NotDivergent : public Error {
 public:
  explicit NotDivergent(const std::string& what) : Error("degeneration", what) {}
};

class NonStabilizedTree : public Error {
 public:
  explicit NonStabilizedTree(const std::string& what) : Error("degeneration", what) {}
};

class ExtrapolationMismatch : public Error {
 public:
  ExtrapolationMismatch(const std::string& what, double deviation)
      : Error("degeneration", what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class RepresentativeNotSemistable : public Error {
 public:
  explicit RepresentativeNotSemistable(const std::string& what) : Error("gitstab", what) {}
};

}  // namespace polytree
