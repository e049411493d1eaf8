#pragma once

#include <vector>

#include "vhed/types.hpp"

namespace vhed {

// Two-dimensional complex DFT on square arrays, built on Eigen's FFT module.
// Forward is unnormalized e^{-i<xi,x>}; inverse carries the full 1/n^2.
// One instance per thread: plans and scratch are not shareable.
class Fft2 {
 public:
  void forward(FieldArray& a);
  void inverse(FieldArray& a);

  // 1-D transforms used by the spectral/tomo filters (in place).
  void forward1d(std::vector<cdouble>& v);
  void inverse1d(std::vector<cdouble>& v);

 private:
  struct Impl;
  void pass_columns(FieldArray& a, bool inverse);

  std::vector<cdouble> buf_;
  FieldArray scratch_;
};

// Per-thread transform instance (spectral scratch is per-worker by design).
Fft2& thread_fft();

}  // namespace vhed
