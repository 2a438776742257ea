#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "gbnl/seqdata.hpp"

namespace gbnl::learn {

/// pKd to kcal/mol factor.
inline constexpr double kPkdToKcal = 1.3633;

/// Binding free energy in kcal/mol: pKd x maps to -1.3633 x, a value already
/// in kcal/mol passes through.
double to_delta_g(double value, LabelUnit unit);
/// Throws kConfig for a unit name other than "pkd" or "dg_kcal_per_mol".
double to_delta_g(double value, std::string_view unit);

/// Pearson correlation; nullopt when either input has zero variance. Throws
/// kArgument for unequal lengths or fewer than two samples.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

double rmse(std::span<const double> a, std::span<const double> b);

/// Mean computed as a[0] + mean(a - a[0]), exact for constant input.
double shifted_mean(std::span<const double> a);

}  // namespace gbnl::learn
