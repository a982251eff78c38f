#include "invdyn/semigroup.hpp"

#include <random>

#include "invdyn/errors.hpp"

namespace invdyn {

namespace {

constexpr int kStuckLimit = 1000;
constexpr double kSamePoint = 1e-14;

void check_word(const RationalSemigroup& G, const Word& w) {
  if (w.indices.empty()) throw UsageError("words are nonempty");
  for (auto i : w.indices) {
    if (i >= G.size()) throw UsageError("word index " + std::to_string(i) + " out of range");
  }
}

// One uniformly chosen distinct preimage.
SpherePoint pick_preimage(const RationalMap& g, const SpherePoint& z, std::mt19937_64& rng) {
  const auto pre = preimages(g, z);
  return pre[static_cast<std::size_t>(rng() % pre.size())].point;
}

template <typename Step>
std::vector<SpherePoint> run_orbit(const SpherePoint& start, std::size_t count, std::size_t burn_in,
                                   Step&& step) {
  if (count == 0) throw UsageError("backward orbit sample count must be positive");
  std::vector<SpherePoint> out;
  out.reserve(count);
  SpherePoint z = start;
  int repeats = 0;
  for (std::size_t t = 0; t < burn_in + count; ++t) {
    if (t >= burn_in) out.push_back(z);
    if (t + 1 == burn_in + count) break;
    const SpherePoint next = step(z);
    repeats = (chordal_distance(next, z) <= kSamePoint) ? repeats + 1 : 0;
    if (repeats > kStuckLimit) throw StuckOrbit();
    z = next;
  }
  return out;
}

}  // namespace

RationalSemigroup RationalSemigroup::create(std::vector<RationalMap> generators) {
  if (generators.empty()) throw UsageError("at least one generator required");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].degree() < 2) {
      throw InvalidMap("generator " + std::to_string(i) + " has degree < 2");
    }
  }
  return RationalSemigroup(std::move(generators));
}

long long word_degree(const RationalSemigroup& G, const Word& w) {
  check_word(G, w);
  long long d = 1;
  for (auto i : w.indices) {
    d *= G[i].degree();
    if (d > (1LL << 40)) break;
  }
  return d;
}

RationalMap word_map(const RationalSemigroup& G, const Word& w) {
  const long long d = word_degree(G, w);
  if (d > kWordDegreeCap) throw DegreeCapExceeded(d);
  RationalMap acc = G[w.indices.back()];
  for (auto it = w.indices.rbegin() + 1; it != w.indices.rend(); ++it) acc = compose(G[*it], acc);
  return acc;
}

std::vector<Word> enumerate_words(const RationalSemigroup& G, int max_len) {
  if (max_len < 1) throw UsageError("max word length must be at least 1");
  std::vector<Word> out;
  const std::size_t n = G.size();
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(len), 0);
    while (true) {
      out.push_back(Word{idx});
      int pos = len - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == n) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return out;
}

std::vector<SpherePoint> backward_orbit_sample(const RationalSemigroup& G, const SpherePoint& start,
                                               std::size_t count, std::size_t burn_in,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run_orbit(start, count, burn_in, [&](const SpherePoint& z) {
    const auto& g = G[static_cast<std::size_t>(rng() % G.size())];
    return pick_preimage(g, z, rng);
  });
}

std::vector<SpherePoint> word_backward_orbit_sample(const RationalSemigroup& G, const Word& w,
                                                    const SpherePoint& start, std::size_t count,
                                                    std::size_t burn_in, std::uint64_t seed) {
  check_word(G, w);
  std::mt19937_64 rng(seed);
  return run_orbit(start, count, burn_in, [&](SpherePoint z) {
    for (auto i : w.indices) z = pick_preimage(G[i], z, rng);
    return z;
  });
}

std::vector<SpherePoint> forward_orbit(const RationalSemigroup& G, const SpherePoint& start,
                                       const Word& w) {
  check_word(G, w);
  std::vector<SpherePoint> out{start};
  for (auto it = w.indices.rbegin(); it != w.indices.rend(); ++it) out.push_back(eval(G[*it], out.back()));
  return out;
}

}  // namespace invdyn
