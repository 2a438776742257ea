#include "gbnl/learn/metrics.hpp"

#include <cmath>
#include <string>

#include "gbnl/error.hpp"

namespace gbnl::learn {

double to_delta_g(double value, LabelUnit unit) {
  return unit == LabelUnit::kPkd ? -kPkdToKcal * value : value;
}

double to_delta_g(double value, std::string_view unit) {
  auto parsed = parse_label_unit(unit);
  if (!parsed) raise(ErrorCode::kConfig, "unknown label unit '" + std::string(unit) + "'");
  return to_delta_g(value, *parsed);
}

double shifted_mean(std::span<const double> a) {
  if (a.empty()) return 0.0;
  double acc = 0.0;
  for (double x : a) acc += x - a[0];
  return a[0] + acc / static_cast<double>(a.size());
}

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) raise(ErrorCode::kArgument, "pearson: length mismatch");
  if (a.size() < 2) raise(ErrorCode::kArgument, "pearson: need at least two samples");
  const double ma = shifted_mean(a);
  const double mb = shifted_mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double da = a[k] - ma;
    const double db = b[k] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

double rmse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) raise(ErrorCode::kArgument, "rmse: length mismatch");
  if (a.empty()) raise(ErrorCode::kArgument, "rmse: empty input");
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace gbnl::learn
