#include "invdyn/topology.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "invdyn/errors.hpp"

namespace invdyn {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  // Keeps the smaller index as root so labels do not depend on merge order.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Calls fn(j) for the owned node reached from owned pixel i through each
// neighbour within `reach` (1: 4-neighbours, 2: 8-neighbours) in the chart;
// non-owned neighbours are replaced by their representatives. `neighbour`
// is passed too so callers can test the crossing pixel itself.
template <typename Fn>
void for_each_adjacent(const TwoChartGrid& g, std::size_t i, bool eight, Fn&& fn) {
  static constexpr int kDr[8] = {-1, 1, 0, 0, -1, -1, 1, 1};
  static constexpr int kDc[8] = {0, 0, -1, 1, -1, 1, -1, 1};
  const Pixel p = g.pixel(i);
  const int n = g.n();
  const int count = eight ? 8 : 4;
  for (int k = 0; k < count; ++k) {
    const int rr = p.row + kDr[k], cc = p.col + kDc[k];
    if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
    const std::size_t nb = g.index({p.chart, rr, cc});
    if (!g.active(nb)) continue;
    const std::size_t target = g.owned(nb) ? nb : g.representative(nb);
    if (target != i) fn(nb, target);
  }
}

void check_label(const ComponentLabeling& lab, int j) {
  if (j < 1 || j > lab.component_count) throw InvalidLabel(j);
}

}  // namespace

int ComponentLabeling::significant_count() const {
  int k = 0;
  while (k < component_count && component_sizes[static_cast<std::size_t>(k)] >= kMinComponentPixels) ++k;
  return k;
}

int ComponentLabeling::label_at(const SpherePoint& p) const { return labels[grid.owned_pixel_of(p)]; }

ComponentLabeling label_components(const SphereMask& open_set) {
  const auto& g = open_set.grid();
  const std::size_t total = g.pixel_count();
  auto open = [&](std::size_t i) { return g.active(i) && open_set.test(i); };

  DisjointSets sets(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (!g.owned(i) || !open(i)) continue;
    for_each_adjacent(g, i, false, [&](std::size_t nb, std::size_t target) {
      if (open(nb) && open(target)) sets.unite(i, target);
    });
  }

  // Roots are the smallest member index, so sorting by (size desc, root asc)
  // gives a labeling independent of traversal order.
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t i = 0; i < total; ++i) {
    if (g.owned(i) && open(i)) ++sizes[sets.find(i)];
  }
  std::vector<std::pair<std::size_t, std::size_t>> order(sizes.begin(), sizes.end());
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::map<std::size_t, int> label_of_root;
  ComponentLabeling out{g, std::vector<int>(total, 0), static_cast<int>(order.size()), {}};
  for (std::size_t k = 0; k < order.size(); ++k) {
    label_of_root[order[k].first] = static_cast<int>(k) + 1;
    out.component_sizes.push_back(order[k].second);
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (g.owned(i) && open(i)) out.labels[i] = label_of_root[sets.find(i)];
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (g.active(i) && !g.owned(i) && open(i)) out.labels[i] = out.labels[g.representative(i)];
  }
  return out;
}

std::vector<std::vector<std::size_t>> holes(const ComponentLabeling& lab, int j) {
  check_label(lab, j);
  const auto& g = lab.grid;
  const std::size_t total = g.pixel_count();
  auto outside = [&](std::size_t i) { return g.active(i) && lab.labels[i] != j; };

  DisjointSets sets(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (!g.owned(i) || !outside(i)) continue;
    for_each_adjacent(g, i, true, [&](std::size_t nb, std::size_t target) {
      if (outside(nb) && outside(target)) sets.unite(i, target);
    });
  }

  std::map<std::size_t, std::vector<std::size_t>> pieces;
  std::map<std::size_t, double> area;
  for (std::size_t i = 0; i < total; ++i) {
    if (!g.owned(i) || !outside(i)) continue;
    const std::size_t r = sets.find(i);
    pieces[r].push_back(i);
    area[r] += g.spherical_area(i);
  }
  if (pieces.empty()) return {};
  std::size_t outer = pieces.begin()->first;
  for (const auto& [root, a] : area) {
    if (a > area[outer]) outer = root;
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : pieces) {
    if (root != outer) out.push_back(std::move(members));
  }
  return out;
}

bool simply_connected(const ComponentLabeling& lab, int j) { return holes(lab, j).empty(); }

std::string to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::Zero: return "Zero";
    case ComponentClass::One: return "One";
    case ComponentClass::Two: return "Two";
    case ComponentClass::Many: return "Many";
  }
  return "Many";
}

ComponentClass component_class_from_string(const std::string& s) {
  if (s == "Zero") return ComponentClass::Zero;
  if (s == "One") return ComponentClass::One;
  if (s == "Two") return ComponentClass::Two;
  if (s == "Many") return ComponentClass::Many;
  throw UsageError("unknown component class '" + s + "'");
}

ComponentClass classify_count(std::vector<TracePoint> trace) {
  if (trace.size() < 2) throw InsufficientTrace();
  std::stable_sort(trace.begin(), trace.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  const int fine = trace[trace.size() - 1].count;
  const int coarse = trace[trace.size() - 2].count;
  if (fine != coarse) return ComponentClass::Many;
  switch (fine) {
    case 0: return ComponentClass::Zero;
    case 1: return ComponentClass::One;
    case 2: return ComponentClass::Two;
    default: return ComponentClass::Many;
  }
}

std::vector<LabelPermutation> check_permutation(const RationalSemigroup& G, const ComponentLabeling& lab) {
  constexpr std::size_t kSamples = 64;
  constexpr int kInteriorRadius = 2;
  const auto& g = lab.grid;
  const int n = g.n();
  const int k = lab.significant_count();

  std::vector<std::vector<std::size_t>> samples(static_cast<std::size_t>(k));
  {
    std::vector<std::vector<std::size_t>> interior(static_cast<std::size_t>(k));
    std::vector<std::vector<std::size_t>> any(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < g.pixel_count(); ++i) {
      const int l = lab.labels[i];
      if (l < 1 || l > k || !g.owned(i)) continue;
      any[static_cast<std::size_t>(l - 1)].push_back(i);
      const Pixel p = g.pixel(i);
      bool inside = true;
      for (int dr = -kInteriorRadius; dr <= kInteriorRadius && inside; ++dr) {
        for (int dc = -kInteriorRadius; dc <= kInteriorRadius && inside; ++dc) {
          const int rr = p.row + dr, cc = p.col + dc;
          if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
          const std::size_t nb = g.index({p.chart, rr, cc});
          if (g.active(nb) && lab.labels[nb] != l) inside = false;
        }
      }
      if (inside) interior[static_cast<std::size_t>(l - 1)].push_back(i);
    }
    for (std::size_t c = 0; c < samples.size(); ++c) {
      const auto& pool = interior[c].empty() ? any[c] : interior[c];
      const std::size_t take = std::min(kSamples, pool.size());
      for (std::size_t s = 0; s < take; ++s) samples[c].push_back(pool[s * pool.size() / take]);
    }
  }

  std::vector<LabelPermutation> out;
  for (std::size_t gi = 0; gi < G.size(); ++gi) {
    LabelPermutation perm{gi, {}};
    for (int c = 1; c <= k; ++c) {
      std::map<int, int> votes;
      int landed = 0;
      for (auto i : samples[static_cast<std::size_t>(c - 1)]) {
        const int l = lab.label_at(eval(G[gi], g.point_of(i)));
        if (l < 1) continue;
        ++votes[l];
        ++landed;
      }
      if (landed == 0) {
        throw NotAPermutation("generator " + std::to_string(gi) + " sends no sample of component " +
                              std::to_string(c) + " into a component");
      }
      const auto best = std::max_element(votes.begin(), votes.end(),
                                         [](const auto& a, const auto& b) { return a.second < b.second; });
      if (best->second < 0.9 * landed) {
        throw NotAPermutation("generator " + std::to_string(gi) + " splits component " + std::to_string(c));
      }
      perm.image.push_back(best->first);
    }
    std::vector<int> sorted = perm.image;
    std::sort(sorted.begin(), sorted.end());
    for (int c = 1; c <= k; ++c) {
      if (sorted[static_cast<std::size_t>(c - 1)] != c) {
        throw NotAPermutation("generator " + std::to_string(gi) + " does not permute the components");
      }
    }
    out.push_back(std::move(perm));
  }
  return out;
}

std::vector<ComponentSummary> summarize_components(const ComponentLabeling& lab) {
  std::vector<ComponentSummary> out;
  for (int j = 1; j <= lab.significant_count(); ++j) {
    const int h = static_cast<int>(holes(lab, j).size());
    out.push_back({lab.component_sizes[static_cast<std::size_t>(j - 1)], h, h == 0});
  }
  return out;
}

}  // namespace invdyn
