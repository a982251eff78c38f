#include "invdyn/fractal.hpp"

#include <algorithm>
#include <cmath>

#include "invdyn/errors.hpp"
#include "invdyn/parallel.hpp"

namespace invdyn {

namespace {

constexpr int kSubdivision = 3;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<SpherePoint> single_map_orbit(const RationalMap& f, const EstimatorParams& params) {
  const auto G = RationalSemigroup::create({f});
  return backward_orbit_sample(G, kOrbitStart, params.samples, params.burn_in, params.seed);
}

// OR of per-chunk masks built over the active pixels of `grid`.
template <typename PerPixel>
SphereMask pixel_sweep(const TwoChartGrid& grid, unsigned workers, PerPixel&& body) {
  const std::size_t total = grid.pixel_count();
  std::vector<SphereMask> parts(std::max(1u, workers), SphereMask(grid));
  parallel_chunks(total, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    SphereMask& part = parts[chunk];
    for (std::size_t i = begin; i < end; ++i) {
      if (grid.active(i)) body(i, part);
    }
  });
  SphereMask out(grid);
  for (const auto& p : parts) out |= p;
  out.sync();
  return out;
}

}  // namespace

void EstimatorParams::validate() const {
  if (samples == 0) throw UsageError("samples must be positive");
  if (max_word_len < 1) throw UsageError("max_word_len must be positive");
  if (max_closure_iters < 1) throw UsageError("max_closure_iters must be positive");
}

SphereMask julia_single(const RationalMap& f, const TwoChartGrid& grid, const EstimatorParams& params) {
  params.validate();
  if (f.degree() < 2) throw InvalidMap("Julia set estimation needs degree >= 2");
  const auto pts = single_map_orbit(f, params);
  return rasterize(grid, pts);
}

SphereMask julia_semigroup(const RationalSemigroup& G, const TwoChartGrid& grid,
                           const EstimatorParams& params) {
  params.validate();
  SphereMask out(grid);
  for (const auto& p : backward_orbit_sample(G, kOrbitStart, params.samples, params.burn_in, params.seed)) {
    out.set_point(p);
  }

  std::vector<Word> words;
  for (auto& w : enumerate_words(G, params.max_word_len)) {
    if (word_degree(G, w) <= kWordDegreeCap) words.push_back(std::move(w));
  }
  const std::size_t per_word = std::max<std::size_t>(1000, params.samples / std::max<std::size_t>(words.size(), 1));
  std::vector<SphereMask> parts(std::max(1u, params.workers), SphereMask(grid));
  parallel_chunks(words.size(), params.workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const auto pts = word_backward_orbit_sample(G, words[k], kOrbitStart, per_word, params.burn_in,
                                                  splitmix64(params.seed + k + 1));
      for (const auto& p : pts) parts[chunk].set_point(p);
    }
  });
  for (const auto& p : parts) out |= p;
  out.sync();
  return out;
}

InvariantJuliaResult invariant_julia(const RationalSemigroup& G, const TwoChartGrid& grid,
                                     const EstimatorParams& params, const ClosureObserver& observer) {
  params.validate();
  // Points are deduplicated on a lattice kSubdivision times finer than the
  // pixels of their home chart, so each owned pixel keeps several spread-out
  // representatives.
  const int side = kSubdivision * grid.n();
  const double step = grid.pixel_size() / kSubdivision;
  std::vector<std::uint8_t> claimed(2 * static_cast<std::size_t>(side) * static_cast<std::size_t>(side), 0);
  auto cell_of = [&](const SpherePoint& p) {
    const bool inner = p.is_finite() && std::abs(p.value()) <= 1.0;
    const Complex c = inner ? p.value() : (p.is_infinite() ? Complex{} : 1.0 / p.value());
    const auto col = static_cast<std::size_t>(std::clamp<long>(std::lround(c.real() / step) + side / 2, 0, side - 1));
    const auto row = static_cast<std::size_t>(std::clamp<long>(side / 2 - std::lround(c.imag() / step), 0, side - 1));
    return (inner ? 0 : static_cast<std::size_t>(side) * side) + row * side + col;
  };
  SphereMask mask(grid);

  auto claim = [&](const std::vector<SpherePoint>& candidates, std::vector<SpherePoint>& fresh) {
    for (const auto& p : candidates) {
      auto& cell = claimed[cell_of(p)];
      if (cell) continue;
      cell = 1;
      fresh.push_back(p);
      mask.set_point(p);
    }
    mask.sync();
  };

  std::vector<SpherePoint> frontier;
  claim(single_map_orbit(G[0], params), frontier);
  if (observer) observer(0, mask);

  InvariantJuliaResult result{mask, 1, 0, false};
  const unsigned workers = std::max(1u, params.workers);
  for (int iter = 1; iter <= params.max_closure_iters; ++iter) {
    std::vector<std::vector<SpherePoint>> parts(workers);
    parallel_chunks(frontier.size(), workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
      auto& out = parts[chunk];
      for (std::size_t k = begin; k < end; ++k) {
        for (const auto& g : G.generators()) {
          out.push_back(eval(g, frontier[k]));
          for (const auto& w : preimages(g, frontier[k])) out.push_back(w.point);
        }
      }
    });
    std::vector<SpherePoint> fresh;
    const std::size_t before = mask.count();
    for (const auto& part : parts) claim(part, fresh);
    result.sweeps = iter;
    if (mask.count() != before) result.iterations = iter + 1;
    if (fresh.empty()) {
      result.converged = true;
      break;
    }
    if (observer) observer(iter, mask);
    frontier.swap(fresh);
  }
  result.mask = mask;
  return result;
}

SphereMask complement(const SphereMask& mask) {
  const auto& g = mask.grid();
  SphereMask out(g);
  for (std::size_t i = 0; i < g.pixel_count(); ++i) {
    if (!g.active(i) || mask.test(i)) continue;
    const auto linked = g.identified(i);
    if (std::any_of(linked.begin(), linked.end(), [&](std::size_t j) { return mask.test(j); })) continue;
    out.set(i);
  }
  return out;
}

SphereMask forward_image(const SphereMask& mask, const RationalMap& g, unsigned workers) {
  const auto& grid = mask.grid();
  return pixel_sweep(grid, workers, [&](std::size_t i, SphereMask& out) {
    if (mask.test(i)) out.set_point(eval(g, grid.point_of(i)));
  });
}

SphereMask preimage_mask(const SphereMask& mask, const RationalMap& g, unsigned workers) {
  const auto& grid = mask.grid();
  return pixel_sweep(grid, workers, [&](std::size_t i, SphereMask& out) {
    const SpherePoint y = eval(g, grid.point_of(i));
    const bool inner = y.is_finite() && std::abs(y.value()) <= 1.0;
    auto j = grid.pixel_in_chart(inner ? 0 : 1, y);
    if (!j) j = grid.pixel_in_chart(inner ? 1 : 0, y);
    if (j && mask.test(*j)) out.set(i);
  });
}

}  // namespace invdyn
