#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdn {

enum class ErrorKind {
  invalid_argument,
  below_threshold,
  ill_conditioned,
  degenerate_estimate,
  undefined_metric,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

// A requested component sits at or below the bulk edge.
class BelowThreshold : public Error {
 public:
  BelowThreshold(std::size_t index, const std::string& what)
      : Error(ErrorKind::below_threshold, what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class IllConditioned : public Error {
 public:
  IllConditioned(std::size_t index, const std::string& what)
      : Error(ErrorKind::ill_conditioned, what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class DegenerateEstimate : public Error {
 public:
  explicit DegenerateEstimate(const std::string& what) : Error(ErrorKind::degenerate_estimate, what) {}
};

class UndefinedMetric : public Error {
 public:
  explicit UndefinedMetric(const std::string& what) : Error(ErrorKind::undefined_metric, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace sdn
