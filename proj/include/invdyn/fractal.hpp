#pragma once

#include <cstdint>
#include <functional>

#include "invdyn/grid.hpp"
#include "invdyn/semigroup.hpp"

namespace invdyn {

struct EstimatorParams {
  std::size_t samples = 200000;
  std::size_t burn_in = 100;
  std::uint64_t seed = 1;
  int max_word_len = 6;
  int max_closure_iters = 200;
  /// Threads used by data-parallel sweeps. Results do not depend on it.
  unsigned workers = 1;

  void validate() const;
};

/// Start point for backward orbits; generic for every map in the corpus.
inline const SpherePoint kOrbitStart = SpherePoint::finite(0.3141592653589793, 0.2718281828459045);

/// Rasterized backward orbit of <f>.
SphereMask julia_single(const RationalMap& f, const TwoChartGrid& grid, const EstimatorParams& params);

/// Union of the rasterized random backward orbit of G and the backward orbits
/// of every word map of length <= max_word_len within the degree cap.
SphereMask julia_semigroup(const RationalSemigroup& G, const TwoChartGrid& grid,
                           const EstimatorParams& params);

struct InvariantJuliaResult {
  SphereMask mask;
  /// Sweeps up to and including the first one that left the mask unchanged
  /// for good.
  int iterations = 0;
  /// Point sweeps run; later sweeps may add points without adding pixels.
  int sweeps = 0;
  /// False when max_closure_iters ran out while pixels were still being added.
  bool converged = false;
};

/// Called with M_0, M_1, ... as the closure proceeds.
using ClosureObserver = std::function<void(int iteration, const SphereMask& mask)>;

/// Grid fixed point of E_0 = {J of the first generator},
/// E_{n+1} = E_n + g(E_n) + g^-1(E_n) over generators g.
///
/// The iteration propagates actual points: every owned pixel of the mask keeps
/// one representative point of the grand orbit, and each sweep pushes the new
/// representatives forward through each generator and pulls them back through
/// each generator's preimages. It stops once a sweep claims no new pixel.
InvariantJuliaResult invariant_julia(const RationalSemigroup& G, const TwoChartGrid& grid,
                                     const EstimatorParams& params,
                                     const ClosureObserver& observer = {});

/// Open-set complement: a pixel is set only if it and every pixel identified
/// with it in the other chart are unset.
SphereMask complement(const SphereMask& mask);

/// Pixels containing g(center) for the set pixels of `mask`, then sync.
SphereMask forward_image(const SphereMask& mask, const RationalMap& g, unsigned workers = 1);

/// Pixels p with g(center p) landing in a set pixel of `mask`, then sync.
SphereMask preimage_mask(const SphereMask& mask, const RationalMap& g, unsigned workers = 1);

}  // namespace invdyn
