#include "vhed/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace vhed {

namespace {
Eigen::FFT<double>& engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}
}  // namespace

void Fft2::pass_columns(FieldArray& a, bool inverse) {
  const Eigen::Index n = a.rows();
  buf_.resize(static_cast<size_t>(n));
  auto& fft = engine();
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    cdouble* col = a.data() + j * n;  // column-contiguous
    if (inverse)
      fft.inv(buf_.data(), col, n);
    else
      fft.fwd(buf_.data(), col, n);
    std::copy(buf_.begin(), buf_.end(), col);
  }
}

void Fft2::forward(FieldArray& a) {
  pass_columns(a, false);
  scratch_ = a.transpose();
  pass_columns(scratch_, false);
  a = scratch_.transpose();
}

void Fft2::inverse(FieldArray& a) {
  pass_columns(a, true);
  scratch_ = a.transpose();
  pass_columns(scratch_, true);
  a = scratch_.transpose();
}

void Fft2::forward1d(std::vector<cdouble>& v) {
  buf_.resize(v.size());
  engine().fwd(buf_.data(), v.data(), static_cast<Eigen::Index>(v.size()));
  v.swap(buf_);
}

void Fft2::inverse1d(std::vector<cdouble>& v) {
  buf_.resize(v.size());
  engine().inv(buf_.data(), v.data(), static_cast<Eigen::Index>(v.size()));
  v.swap(buf_);
}

Fft2& thread_fft() {
  thread_local Fft2 fft2;
  return fft2;
}

}  // namespace vhed
