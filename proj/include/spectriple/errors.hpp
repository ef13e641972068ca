#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectriple {

/// Malformed presentation or group expression; offset is a byte position in the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Knuth-Bendix completion did not reach confluence within budget.
/// Oracles must not be built from the partial system.
class CompletionExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element/time budget exhausted; carries partial progress statistics.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& msg, std::size_t elements, int sphere)
      : std::runtime_error(msg + " (enumerated " + std::to_string(elements) +
                           " elements, reached sphere " + std::to_string(sphere) + ")"),
        elements_(elements),
        sphere_(sphere) {}
  std::size_t elements_enumerated() const { return elements_; }
  int sphere_reached() const { return sphere_; }

 private:
  std::size_t elements_;
  int sphere_;
};

/// An operation needed group translates outside the enumerated ball.
class MarginInsufficient : public std::runtime_error {
 public:
  MarginInsufficient(const std::string& msg, int required_radius)
      : std::runtime_error(msg + " (required ball radius " + std::to_string(required_radius) + ")"),
        required_(required_radius) {}
  int required_radius() const { return required_; }

 private:
  int required_;
};

/// A sphere in the requested range is empty (finite group); the sphere-uniform
/// measure is undefined there.
class EmptySphere : public std::runtime_error {
 public:
  explicit EmptySphere(int sphere)
      : std::runtime_error("empty sphere at radius " + std::to_string(sphere) +
                           "; sphere-uniform measure undefined"),
        sphere_(sphere) {}
  int sphere() const { return sphere_; }

 private:
  int sphere_;
};

class NotInBall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad command-line / config input (exit code 64 in the CLI).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spectriple
