#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace vhed {

using cdouble = std::complex<double>;
using FieldArray = Eigen::ArrayXXcd;  // (iy, ix) layout, iy = row

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cdouble kI{0.0, 1.0};

// Convention tag persisted with every artifact file. Identifies the fixed set:
// forward DFT e^{-i xi.x}, P/S zero mode = 0, partial FT kernel e^{+i t tau},
// first-order Radon phase e^{-i phi}, oracle constant -i*pi/sqrt(2).
inline constexpr unsigned kConventionId = 1;

// Contract violations (bad inputs, unmet preconditions).
struct ContractError : std::runtime_error {
  explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures (non-convergence, NaN/Inf).
struct ComputeError : std::runtime_error {
  explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vhed
