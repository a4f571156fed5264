// Copyright 2026 The nonlocal-bounds developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace nlb {

/** Base class for all library errors. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/** Matrix dimensions incompatible with the requested operation. */
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/** An observable fails the involution check obs^2 == I. */
class InvalidObservable : public Error {
 public:
  using Error::Error;
};

/** Iterative eigensolver or optimizer failed to reach its tolerance. */
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/** State pair does not satisfy tr(rho + sigma) == 1. */
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/** rho - sigma has weight outside the support of rho + sigma. */
class SupportViolation : public Error {
 public:
  using Error::Error;
};

/** Weight set violates u00*u01 == u10*u11. */
class WeightConstraintViolation : public Error {
 public:
  using Error::Error;
};

/** Input outside the mathematical domain of the operation. */
class DomainError : public Error {
 public:
  using Error::Error;
};

/** Marginals too degenerate for the moment-normalized correlators. */
class DegenerateMarginals : public Error {
 public:
  using Error::Error;
};

/** Angle configuration makes the weight-assignment system singular. */
class DegenerateAngles : public Error {
 public:
  using Error::Error;
};

/** A reduced observable has a residual sigma_2 component. */
class NonRealSymmetric : public Error {
 public:
  using Error::Error;
};

/** A computed probability table has an entry below -1e-12. */
class NonDistribution : public Error {
 public:
  using Error::Error;
};

/** File could not be read, parsed, or written. */
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlb
