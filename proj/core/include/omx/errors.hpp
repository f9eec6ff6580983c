// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace omx {

/// An argument outside the domain where a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Blue-detuned operation at or beyond C = 1, where the linearized
/// conversion theory stops describing the device (self-oscillation).
class LasingError : public DomainError {
 public:
  explicit LasingError(const std::string& what)
      : DomainError("phonon lasing regime: " + what) {}
};

/// A fit could not be carried out or its outcome was not trustworthy.
class FitRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named model or configuration entry that does not exist.
class UnknownModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace omx
