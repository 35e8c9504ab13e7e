#pragma once

#include <stdexcept>
#include <string>

namespace otk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Combining jets of different truncation order, or asking for derivatives a
/// jet does not carry.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// A function evaluated outside its domain (ln of a nonpositive value, a kink
/// of abs, division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnboundParameter : public Error {
 public:
  explicit UnboundParameter(const std::string& name)
      : Error("unbound parameter '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// det g = 0 or det h = 0 at an evaluated point.
class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

/// C_rho vanishes, so the invariant frame is undefined.
class NullGradient : public Error {
 public:
  using Error::Error;
};

/// A genericity assumption fails (I4 = 0, Q_gamma = 0 where it must not, ...).
class NotGeneric : public Error {
 public:
  using Error::Error;
};

/// No pair of basic invariants is functionally independent on the domain.
class NoIndependentPair : public Error {
 public:
  using Error::Error;
};

/// Fewer valid signature samples than required.
class DomainTooSmall : public Error {
 public:
  using Error::Error;
};

/// Newton inversion of the chart map did not reach the tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Newton inversion of the chart map left the coordinate box.
class LeftDomain : public Error {
 public:
  using Error::Error;
};

}  // namespace otk
