#pragma once

#include <cstddef>

#include "gbnl/betti_table.hpp"
#include "gbnl/simplex.hpp"

namespace gbnl {

/// Brute-force graded Betti numbers. Every routine here enumerates all 2^n
/// vertex subsets and is meant as ground truth for small inputs only.
struct OracleOptions {
  std::size_t max_vertices = 14;
};

/// No override of OracleOptions::max_vertices may exceed this.
inline constexpr std::size_t kOracleHardLimit = 30;

/// beta_{i,|W|} = sum over W of rank H~_{|W|-i-1}(Delta_W), computed from
/// GF(2) boundary ranks of every induced subcomplex. Throws kCapExceeded
/// above the vertex cap.
BettiTable graded_betti_bruteforce(const SimplicialComplex& complex, const OracleOptions& options = {});
BettiTable graded_betti_bruteforce(const GapGraph& graph, const OracleOptions& options = {});

/// Filtration scales eps_lo <= eps_hi.
class PersistencePair {
 public:
  /// Throws kArgument unless both are finite, non-negative and ordered.
  PersistencePair(double eps_lo, double eps_hi);
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// Sum over W of the rank of H~_{j-1}(Delta_W at eps_lo) -> H~_{j-1}(Delta_W
/// at eps_hi), for the VR(1) filtration of `cloud`.
BettiTable persistent_graded_betti_bruteforce(const PositionCloud& cloud, const PersistencePair& pair,
                                              const OracleOptions& options = {});

/// Rank over GF(2) of the map on reduced homology in `degree` (-1..2)
/// induced by the inclusion sub -> super. Throws kArgument if `sub` is not
/// a subcomplex of `super`.
std::size_t induced_map_rank(const SimplicialComplex& sub, const SimplicialComplex& super, int degree);

}  // namespace gbnl
