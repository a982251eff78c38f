#pragma once

#include <cstdint>
#include <vector>

#include "invdyn/ratmap.hpp"

namespace invdyn {

/// Composed word maps above this degree are rejected.
inline constexpr long long kWordDegreeCap = 64;

/// Finitely generated rational semigroup. Every generator has degree >= 2.
class RationalSemigroup {
 public:
  static RationalSemigroup create(std::vector<RationalMap> generators);

  const std::vector<RationalMap>& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const RationalMap& operator[](std::size_t i) const { return generators_.at(i); }

 private:
  explicit RationalSemigroup(std::vector<RationalMap> g) : generators_(std::move(g)) {}
  std::vector<RationalMap> generators_;
};

/// Nonempty sequence of generator indices. The rightmost index acts first:
/// [i0, i1, ..., ik] is g_i0 o g_i1 o ... o g_ik.
struct Word {
  std::vector<std::size_t> indices;

  friend bool operator==(const Word&, const Word&) = default;
};

/// Product of generator degrees along w. Validates w against G.
long long word_degree(const RationalSemigroup& G, const Word& w);

/// Composition of the generators along w. Throws DegreeCapExceeded.
RationalMap word_map(const RationalSemigroup& G, const Word& w);

/// All words of length 1..max_len in lexicographic order (shorter first).
std::vector<Word> enumerate_words(const RationalSemigroup& G, int max_len);

/// Random backward orbit: z <- a uniformly chosen distinct preimage of z under
/// a uniformly chosen generator. The sequence starts at `start`; the first
/// burn_in points are dropped and the next `count` returned.
///
/// Uses std::mt19937_64 seeded with `seed`; choices are `rng() % k`, so runs
/// are bit-reproducible across platforms. Throws StuckOrbit when the orbit
/// sits on one point for more than 1000 consecutive steps.
std::vector<SpherePoint> backward_orbit_sample(const RationalSemigroup& G, const SpherePoint& start,
                                               std::size_t count, std::size_t burn_in,
                                               std::uint64_t seed);

/// Backward orbit of the single map word_map(G, w), realized as chained
/// generator preimages (outermost generator inverted first), so no
/// high-degree root finding is needed.
std::vector<SpherePoint> word_backward_orbit_sample(const RationalSemigroup& G, const Word& w,
                                                    const SpherePoint& start, std::size_t count,
                                                    std::size_t burn_in, std::uint64_t seed);

/// start, then generators applied innermost-first; length |w| + 1.
std::vector<SpherePoint> forward_orbit(const RationalSemigroup& G, const SpherePoint& start,
                                       const Word& w);

}  // namespace invdyn
