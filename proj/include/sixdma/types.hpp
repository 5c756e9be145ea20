// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace sixdma {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Per-drop Monte Carlo work is data parallel; `parallel` runs it under
// OpenMP, `serial` is the plain-loop reference path kept for testing and
// benchmarking. Both reduce in fixed drop order, so results are
// bit-identical.
enum class ExecPolicy { serial, parallel };

struct GimbalLockError : std::domain_error {
  using std::domain_error::domain_error;
};

struct DegenerateDirectionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InitializationFailedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonUnitDirectionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TooCloseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroPositionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalFailureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LpInfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LpUnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteObjectiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sixdma
