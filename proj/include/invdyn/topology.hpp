#pragma once

#include <string>
#include <utility>
#include <vector>

#include "invdyn/fractal.hpp"

namespace invdyn {

/// Components smaller than this many owned pixels are rasterization specks
/// and are left out of counts.
inline constexpr std::size_t kMinComponentPixels = 4;

/// Connected components of an open set given as a mask.
///
/// Nodes are the owned pixels of the mask; edges join 4-neighbours within a
/// chart, and cross the chart seam through the representative of a non-owned
/// neighbour. Non-owned pixels carry the label of their representative.
struct ComponentLabeling {
  TwoChartGrid grid;
  /// Per pixel: 0 for pixels outside the open set, 1..k otherwise.
  std::vector<int> labels;
  int component_count = 0;
  /// Owned pixels per component, indexed by label - 1, non-increasing.
  std::vector<std::size_t> component_sizes;

  /// Labels whose size reaches kMinComponentPixels; always 1..significant.
  int significant_count() const;
  int label_at(const SpherePoint& p) const;
};

ComponentLabeling label_components(const SphereMask& open_set);

/// Holes of component j: the connected pieces of (sphere minus C_j) other than
/// the one of largest spherical area. Each hole is a list of owned pixel
/// indices. Throws InvalidLabel.
std::vector<std::vector<std::size_t>> holes(const ComponentLabeling& labeling, int j);

/// True iff the complement of C_j on the sphere is connected.
bool simply_connected(const ComponentLabeling& labeling, int j);

enum class ComponentClass { Zero, One, Two, Many };

std::string to_string(ComponentClass c);
ComponentClass component_class_from_string(const std::string& s);

struct TracePoint {
  int n = 0;
  int count = 0;
};

/// Stable count c in {0, 1, 2} at the two finest resolutions gives that
/// class; anything else is Many. Throws InsufficientTrace.
ComponentClass classify_count(std::vector<TracePoint> trace);

struct LabelPermutation {
  std::size_t generator = 0;
  /// image[j - 1] is the label that component j is carried into.
  std::vector<int> image;
};

/// For each generator, carries 64 interior centers of every significant
/// component through the generator and records the receiving label.
/// Throws NotAPermutation if samples of one component split by more than 10%
/// or the induced label map is not a bijection.
std::vector<LabelPermutation> check_permutation(const RationalSemigroup& G,
                                                const ComponentLabeling& labeling);

struct ComponentSummary {
  std::size_t size = 0;
  int hole_count = 0;
  bool simply_connected = true;
  friend bool operator==(const ComponentSummary&, const ComponentSummary&) = default;
};

struct ComponentReport {
  int count = 0;
  ComponentClass cls = ComponentClass::Zero;
  std::vector<ComponentSummary> components;
  std::vector<TracePoint> resolution_trace;
};

/// Summaries of the significant components of one labeling.
std::vector<ComponentSummary> summarize_components(const ComponentLabeling& labeling);

}  // namespace invdyn
