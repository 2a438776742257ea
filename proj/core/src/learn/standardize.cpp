#include "gbnl/learn/standardize.hpp"

#include <cmath>

#include "gbnl/error.hpp"

namespace gbnl::learn {

Standardizer standardize_fit(const Matrix& x) {
  if (x.rows() == 0) raise(ErrorCode::kArgument, "standardize_fit: empty matrix");
  Standardizer s;
  s.means.resize(x.cols());
  s.stds.resize(x.cols());
  const auto n = static_cast<double>(x.rows());
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const double first = x(0, c);
    double shift = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      if (!std::isfinite(x(r, c))) raise(ErrorCode::kNumeric, "standardize_fit: non-finite value");
      shift += x(r, c) - first;
    }
    const double mean = first + shift / n;
    double ss = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) ss += (x(r, c) - mean) * (x(r, c) - mean);
    s.means[c] = mean;
    s.stds[c] = std::sqrt(ss / n);
  }
  return s;
}

Matrix Standardizer::apply(const Matrix& x) const {
  if (x.cols() != means.size()) raise(ErrorCode::kArgument, "standardize_apply: column count mismatch");
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      out(r, c) = stds[c] > 0.0 ? (x(r, c) - means[c]) / stds[c] : 0.0;
    }
  }
  return out;
}

Matrix standardize_apply(const Matrix& x, const Standardizer& scaler) { return scaler.apply(x); }

}  // namespace gbnl::learn
