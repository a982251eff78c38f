#include "invdyn/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "invdyn/errors.hpp"

namespace invdyn {

TwoChartGrid::TwoChartGrid(int n, double overlap) : n_(n), overlap_(overlap) {
  if (n < 32) throw UsageError("grid needs at least 32 pixels per side");
  if (!(overlap > 0.0) || overlap > 0.5) throw UsageError("chart overlap must lie in (0, 0.5]");
  h_ = 2.0 * radius() / n_;
  build_tables();
}

Pixel TwoChartGrid::pixel(std::size_t index) const noexcept {
  const auto nn = static_cast<std::size_t>(n_);
  return {static_cast<int>(index / (nn * nn)), static_cast<int>((index / nn) % nn),
          static_cast<int>(index % nn)};
}

SpherePoint TwoChartGrid::point_of(const Pixel& p) const {
  const SpherePoint c(center(p));
  return p.chart == 0 ? c : c.reciprocal();
}

std::optional<Complex> TwoChartGrid::chart_coordinate(int chart, const SpherePoint& p) const {
  const SpherePoint q = chart == 0 ? p : p.reciprocal();
  if (q.is_infinite()) return std::nullopt;
  if (std::abs(q.value()) > radius()) return std::nullopt;
  return q.value();
}

std::optional<std::size_t> TwoChartGrid::pixel_at(int chart, Complex coord) const {
  const double cx = std::floor(coord.real() / h_ + 0.5);
  const double cy = std::floor(coord.imag() / h_ + 0.5);
  const double col = cx + n_ / 2;
  const double row = n_ / 2 - cy;
  if (!(col >= 0 && col < n_ && row >= 0 && row < n_)) return std::nullopt;
  const std::size_t i = index({chart, static_cast<int>(row), static_cast<int>(col)});
  if (!active(i)) return std::nullopt;
  return i;
}

std::optional<std::size_t> TwoChartGrid::pixel_in_chart(int chart, const SpherePoint& p) const {
  const auto coord = chart_coordinate(chart, p);
  if (!coord) return std::nullopt;
  return pixel_at(chart, *coord);
}

std::size_t TwoChartGrid::owned_pixel_of(const SpherePoint& p) const {
  const bool inner = p.is_finite() && std::abs(p.value()) <= 1.0;
  if (auto i = pixel_in_chart(inner ? 0 : 1, p)) return representative(*i);
  if (auto i = pixel_in_chart(inner ? 1 : 0, p)) return representative(*i);
  // Unreachable for n >= 32: every point lies in an active pixel of its home chart.
  throw NumericalError("point not covered by the grid");
}

double TwoChartGrid::spherical_area(std::size_t i) const noexcept {
  const double r2 = std::norm(center(i));
  return 4.0 * h_ * h_ / ((1.0 + r2) * (1.0 + r2));
}

void TwoChartGrid::build_tables() {
  auto t = std::make_shared<Tables>();
  const std::size_t total = pixel_count();
  t->active.assign(total, 0);
  t->owned.assign(total, 0);
  t->partner.assign(total, -1);
  t->rep.assign(total, -1);
  for (std::size_t i = 0; i < total; ++i) {
    const Pixel p = pixel(i);
    const double r = std::abs(center(p));
    t->active[i] = r <= radius() ? 1 : 0;
    t->owned[i] = t->active[i] && (p.chart == 0 ? r <= 1.0 : r < 1.0);
  }
  flags_ = t;  // pixel_at() consults the active flags below

  for (std::size_t i = 0; i < total; ++i) {
    if (!t->active[i]) continue;
    const Pixel p = pixel(i);
    const Complex c = center(p);
    if (c != Complex(0.0) && std::abs(1.0 / c) <= radius()) {
      if (auto q = pixel_at(1 - p.chart, 1.0 / c)) t->partner[i] = static_cast<std::int64_t>(*q);
    }
  }

  // Identification is symmetric: a pixel is linked to its partner and to
  // every pixel whose partner it is.
  std::vector<std::vector<std::size_t>> links(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (t->partner[i] < 0) continue;
    const auto j = static_cast<std::size_t>(t->partner[i]);
    links[i].push_back(j);
    links[j].push_back(i);
  }
  t->link_offset.assign(total + 1, 0);
  for (std::size_t i = 0; i < total; ++i) {
    auto& l = links[i];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    t->link_offset[i + 1] = t->link_offset[i] + l.size();
    t->links.insert(t->links.end(), l.begin(), l.end());
  }

  for (std::size_t i = 0; i < total; ++i) {
    if (!t->active[i]) continue;
    if (t->owned[i]) {
      t->rep[i] = static_cast<std::int64_t>(i);
      continue;
    }
    // Non-owned active pixels sit near the seam: pick the owned pixel of the
    // other chart, around the partner, whose center is chordally closest.
    const SpherePoint target = point_of(i);
    const Pixel home = pixel(i);
    const auto q0 = pixel_at(1 - home.chart, 1.0 / center(home));
    double best = std::numeric_limits<double>::infinity();
    std::int64_t best_i = -1;
    if (q0) {
      const Pixel q = pixel(*q0);
      for (int dr = -2; dr <= 2; ++dr) {
        for (int dc = -2; dc <= 2; ++dc) {
          const int rr = q.row + dr, cc = q.col + dc;
          if (rr < 0 || rr >= n_ || cc < 0 || cc >= n_) continue;
          const std::size_t j = index({q.chart, rr, cc});
          if (!t->owned[j]) continue;
          const double d = chordal_distance(point_of(j), target);
          if (d < best) {
            best = d;
            best_i = static_cast<std::int64_t>(j);
          }
        }
      }
    }
    t->rep[i] = best_i;
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (t->active[i] && t->rep[i] < 0) throw NumericalError("grid seam has an unrepresented pixel");
  }
}

SphereMask::SphereMask(TwoChartGrid grid) : grid_(std::move(grid)), bits_(grid_.pixel_count(), 0) {}

void SphereMask::set_point(const SpherePoint& p) {
  for (int chart = 0; chart < 2; ++chart) {
    if (auto i = grid_.pixel_in_chart(chart, p)) bits_[*i] = 1;
  }
}

bool SphereMask::contains_point(const SpherePoint& p) const {
  for (int chart = 0; chart < 2; ++chart) {
    if (auto i = grid_.pixel_in_chart(chart, p); i && bits_[*i]) return true;
  }
  return false;
}

std::size_t SphereMask::count() const noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) c += (bits_[i] && grid_.active(i)) ? 1 : 0;
  return c;
}

std::size_t SphereMask::count_owned() const noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) c += (bits_[i] && grid_.owned(i)) ? 1 : 0;
  return c;
}

void SphereMask::sync() {
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !grid_.identified(i).empty()) pending.push_back(i);
  }
  while (!pending.empty()) {
    const std::size_t i = pending.back();
    pending.pop_back();
    for (auto j : grid_.identified(i)) {
      if (!bits_[j]) {
        bits_[j] = 1;
        pending.push_back(j);
      }
    }
  }
}

bool SphereMask::chart_consistent() const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (!bits_[i]) continue;
    for (auto j : grid_.identified(i)) {
      if (!bits_[j]) return false;
    }
  }
  return true;
}

SphereMask& SphereMask::operator|=(const SphereMask& other) {
  if (!(grid_ == other.grid_)) throw UsageError("mask grids differ");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

bool SphereMask::subset_of(const SphereMask& other) const {
  if (!(grid_ == other.grid_)) throw UsageError("mask grids differ");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

SphereMask rasterize(const TwoChartGrid& grid, std::span<const SpherePoint> points) {
  SphereMask m(grid);
  for (const auto& p : points) m.set_point(p);
  m.sync();
  return m;
}

SphereMask dilate(const SphereMask& mask, int radius) {
  const auto& g = mask.grid();
  const int n = g.n();
  SphereMask out(g);
  for (std::size_t i = 0; i < g.pixel_count(); ++i) {
    if (!mask.test(i) || !g.active(i)) continue;
    const Pixel p = g.pixel(i);
    for (int dr = -radius; dr <= radius; ++dr) {
      for (int dc = -radius; dc <= radius; ++dc) {
        const int rr = p.row + dr, cc = p.col + dc;
        if (rr < 0 || rr >= n || cc < 0 || cc >= n) continue;
        const std::size_t j = g.index({p.chart, rr, cc});
        if (g.active(j)) out.set(j);
      }
    }
  }
  out.sync();
  return out;
}

}  // namespace invdyn
