#pragma once

#include <stdexcept>
#include <string>

namespace knotscatter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// k_i == k_n: the momentum transfer vanishes and the l = 0 radial integral
/// diverges.
class ForwardScattering : public InvalidArgument {
public:
  ForwardScattering()
      : InvalidArgument("forward scattering: momentum transfer is zero") {}
};

/// A closed form was asked for at a parameter where it has a pole
/// (Gamma at a non-positive integer, or an explicit 1/l or 1/(l-1)).
class DegenerateClosedForm : public Error {
public:
  using Error::Error;
};

/// An iterative or series evaluation ran out of budget before meeting its
/// tolerance.
class NonConvergence : public Error {
public:
  using Error::Error;
};

} // namespace knotscatter
