// Copyright 2026 The gsmc Authors
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

#ifndef GSMC_ERRORS_HPP_
#define GSMC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gsmc {

/// Thrown where the logarithm map (and everything layered on it) is
/// undefined: tr(R) at -1 for SO(3), theta at +/-pi for SE(2).
struct NearAntipodal : std::runtime_error {
  explicit NearAntipodal(const std::string& what) : std::runtime_error(what) {}
};

/// Reduced mass matrix failed its SPD factorization.
struct SingularMass : std::runtime_error {
  explicit SingularMass(const std::string& what) : std::runtime_error(what) {}
};

/// A state handed to the constrained dynamics does not satisfy the
/// velocity constraint.
struct ConstraintViolation : std::runtime_error {
  explicit ConstraintViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Desired planar path has (numerically) vanishing forward speed.
struct DegeneratePath : std::runtime_error {
  explicit DegeneratePath(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario configuration failed to parse or validate.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gsmc

#endif  // GSMC_ERRORS_HPP_
