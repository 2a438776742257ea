#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gbnl {

/// Exact counts. Subset counts for 93-point clouds reach ~1e27.
using BigInt = boost::multiprecision::cpp_int;

/// Rows 0..n of Pascal's triangle; row[m][k] = C(m, k).
class BinomialTable {
 public:
  explicit BinomialTable(std::int64_t n);

  /// C(m, k); zero outside 0 <= k <= m.
  const BigInt& operator()(std::int64_t m, std::int64_t k) const;
  std::int64_t max_n() const { return static_cast<std::int64_t>(rows_.size()) - 1; }

 private:
  std::vector<std::vector<BigInt>> rows_;
  BigInt zero_{0};
};

BigInt binomial(std::int64_t n, std::int64_t k);

/// Nearest double; magnitudes here stay far below the double range.
inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace gbnl
