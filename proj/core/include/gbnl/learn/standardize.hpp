#pragma once

#include <vector>

#include "gbnl/matrix.hpp"

namespace gbnl::learn {

/// Per-column z-scoring with population standard deviation. Columns whose
/// standard deviation is zero map to 0.
struct Standardizer {
  std::vector<double> means;
  std::vector<double> stds;

  Matrix apply(const Matrix& x) const;

  friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

/// Throws kArgument on an empty matrix and kNumeric on non-finite values.
Standardizer standardize_fit(const Matrix& x);
Matrix standardize_apply(const Matrix& x, const Standardizer& scaler);

}  // namespace gbnl::learn
