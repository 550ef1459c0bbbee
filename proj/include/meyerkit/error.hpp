#pragma once

#include <stdexcept>
#include <string>

namespace meyerkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimensions, groups or number fields of two operands do not match.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The stacked embedding matrix of a cut-and-project scheme is singular.
class SingularEmbedding : public Error {
 public:
  using Error::Error;
};

/// A lattice generated by a pattern does not have full rank.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// A physical point does not belong to the structure group.
class UnresolvableCoordinates : public Error {
 public:
  using Error::Error;
};

/// The truncated omega intersection became empty.
class InconsistentPatch : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or input file. Carries the location of the problem.
class ConfigError : public Error {
 public:
  ConfigError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace meyerkit
