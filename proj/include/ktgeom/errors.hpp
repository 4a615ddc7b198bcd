#pragma once

#include <stdexcept>
#include <string>

namespace ktgeom {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stencil or sample point left the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Degenerate metric, failed decomposition or non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An operation received input of the wrong shape or kind.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A check was requested on a manifold that does not satisfy its premises.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Unknown catalog name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (point count, step, suite name).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Independent routes to the Lee form disagree: a sign convention is broken.
class ConventionFault : public Error {
 public:
  using Error::Error;
};

}  // namespace ktgeom
