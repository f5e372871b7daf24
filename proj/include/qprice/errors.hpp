// Copyright 2026 The qprice Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qprice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands live on lattices of different sizes.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A parameter is outside the domain where the operation is defined.
class DomainError : public Error {
  public:
    using Error::Error;
};

class IndexError : public Error {
  public:
    using Error::Error;
};

/// Normalizing the zero function.
class DegenerateStateError : public Error {
  public:
    using Error::Error;
};

/// A caller-side precondition such as hermiticity does not hold.
class ContractError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// A numerical identity that must hold (Robertson bound, non-negative
/// variance, unit norm) failed beyond its tolerance. Signals a bug or a
/// badly conditioned input, never a user mistake.
class InvariantViolation : public Error {
  public:
    using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Norm drift during time evolution exceeded the conservation threshold.
class ConservationViolation : public InvariantViolation {
  public:
    ConservationViolation(const std::string& what, long step, double time, double norm_error)
        : InvariantViolation(what), step_(step), time_(time), norm_error_(norm_error) {}

    long step() const noexcept { return step_; }
    double time() const noexcept { return time_; }
    double norm_error() const noexcept { return norm_error_; }

  private:
    long step_;
    double time_;
    double norm_error_;
};

} // namespace qprice
