#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "invdyn/sphere.hpp"

namespace invdyn {

struct Pixel {
  int chart = 0;  // 0: z coordinate, 1: w = 1/z coordinate
  int row = 0;    // row 0 is the top (largest imaginary part)
  int col = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Two square rasters covering the sphere: chart 0 is the disk |z| <= 1 + overlap,
/// chart 1 the disk |w| <= 1 + overlap with w = 1/z.
///
/// Pixel centers sit on the lattice h * (col - n/2, n/2 - row) with
/// h = 2 (1 + overlap) / n, so both real axes (and hence the extended real
/// line) pass through pixel centers. A pixel is active when its center lies in
/// its chart's disk. Chart 0 owns active pixels with |center| <= 1, chart 1
/// those with |center| < 1; owned pixels tile the sphere once and are the
/// nodes of the component graph.
class TwoChartGrid {
 public:
  explicit TwoChartGrid(int n, double overlap = 0.05);

  int n() const noexcept { return n_; }
  double overlap() const noexcept { return overlap_; }
  double radius() const noexcept { return 1.0 + overlap_; }
  double pixel_size() const noexcept { return h_; }
  std::size_t pixel_count() const noexcept { return 2 * static_cast<std::size_t>(n_) * n_; }

  std::size_t index(const Pixel& p) const noexcept {
    return (static_cast<std::size_t>(p.chart) * n_ + p.row) * n_ + p.col;
  }
  Pixel pixel(std::size_t index) const noexcept;

  /// Chart coordinate of the pixel center.
  Complex center(const Pixel& p) const noexcept {
    return {(p.col - n_ / 2) * h_, (n_ / 2 - p.row) * h_};
  }
  Complex center(std::size_t i) const noexcept { return center(pixel(i)); }

  bool active(std::size_t i) const noexcept { return flags_->active[i] != 0; }
  bool owned(std::size_t i) const noexcept { return flags_->owned[i] != 0; }

  /// Sphere point at the pixel center.
  SpherePoint point_of(const Pixel& p) const;
  SpherePoint point_of(std::size_t i) const { return point_of(pixel(i)); }

  /// Chart coordinate of a sphere point; nullopt when outside the chart disk.
  std::optional<Complex> chart_coordinate(int chart, const SpherePoint& p) const;

  /// Active pixel of `chart` containing p, if any.
  std::optional<std::size_t> pixel_in_chart(int chart, const SpherePoint& p) const;

  /// Pixel index for a chart coordinate, or nullopt if outside the raster or
  /// inactive.
  std::optional<std::size_t> pixel_at(int chart, Complex coord) const;

  /// Owned pixel representing the region containing p. Always exists.
  std::size_t owned_pixel_of(const SpherePoint& p) const;

  /// For an active pixel: the active pixel of the other chart containing its
  /// center, or -1.
  std::int64_t partner(std::size_t i) const noexcept { return flags_->partner[i]; }

  /// Pixels of the other chart identified with i: its partner and every
  /// pixel whose partner is i.
  std::span<const std::size_t> identified(std::size_t i) const noexcept {
    const auto* base = flags_->links.data();
    return {base + flags_->link_offset[i], base + flags_->link_offset[i + 1]};
  }

  /// For an active pixel: the owned pixel standing for it (itself if owned).
  std::size_t representative(std::size_t i) const noexcept {
    return static_cast<std::size_t>(flags_->rep[i]);
  }

  /// Spherical area of the pixel, 4 h^2 / (1 + |c|^2)^2.
  double spherical_area(std::size_t i) const noexcept;

  friend bool operator==(const TwoChartGrid& a, const TwoChartGrid& b) noexcept {
    return a.n_ == b.n_ && a.overlap_ == b.overlap_;
  }

 private:
  struct Tables {
    std::vector<std::uint8_t> active;
    std::vector<std::uint8_t> owned;
    std::vector<std::int64_t> partner;
    std::vector<std::int64_t> rep;
    std::vector<std::size_t> link_offset;
    std::vector<std::size_t> links;
  };
  void build_tables();

  int n_;
  double overlap_;
  double h_;
  std::shared_ptr<const Tables> flags_;
};

/// Boolean raster over a TwoChartGrid, one layer per chart.
class SphereMask {
 public:
  explicit SphereMask(TwoChartGrid grid);

  const TwoChartGrid& grid() const noexcept { return grid_; }

  bool test(std::size_t i) const noexcept { return bits_[i] != 0; }
  bool test(const Pixel& p) const noexcept { return test(grid_.index(p)); }
  void set(std::size_t i, bool value = true) noexcept { bits_[i] = value ? 1 : 0; }

  /// Sets the pixel containing p in every chart covering it.
  void set_point(const SpherePoint& p);

  /// True if some covering pixel of p is set.
  bool contains_point(const SpherePoint& p) const;

  /// Number of set active pixels across both charts.
  std::size_t count() const noexcept;

  /// Number of set owned pixels.
  std::size_t count_owned() const noexcept;

  /// Propagates set pixels to their identified pixels until stable.
  void sync();

  /// Checks that every set pixel's identified pixels are set.
  bool chart_consistent() const;

  SphereMask& operator|=(const SphereMask& other);

  /// Pixelwise subset.
  bool subset_of(const SphereMask& other) const;

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  friend bool operator==(const SphereMask& a, const SphereMask& b) {
    return a.grid_ == b.grid_ && a.bits_ == b.bits_;
  }

 private:
  TwoChartGrid grid_;
  std::vector<std::uint8_t> bits_;
};

/// Sets the covering pixels of every point, then syncs.
SphereMask rasterize(const TwoChartGrid& grid, std::span<const SpherePoint> points);

/// Chebyshev dilation by `radius` pixels within each chart, then sync.
SphereMask dilate(const SphereMask& mask, int radius);

}  // namespace invdyn
