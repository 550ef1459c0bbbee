#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "meyerkit/fingroup.hpp"
#include "meyerkit/numeric.hpp"

namespace meyerkit {

/// Largest supported Euclidean dimension of an internal space.
inline constexpr std::size_t kMaxInternalDim = 3;

struct Interval {
  QuadExt lo;
  QuadExt hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Closed box: product of closed intervals (lo <= hi on every axis).
using Box = std::vector<Interval>;

bool box_contains(const Box& outer, const Box& inner);
bool box_contains_point(const Box& b, const QVector& p);
std::optional<Box> box_intersection(const Box& a, const Box& b);
bool box_is_solid(const Box& b);  ///< lo < hi on every axis

/// Point of the internal space R^m x F.
struct HPoint {
  QVector real;
  FinElement fin;
  friend bool operator==(const HPoint&, const HPoint&) = default;
};

std::string to_string(const HPoint& p);

enum class Membership { Interior, Boundary, Exterior };
enum class Comparison { Equal, ASubsetB, BSubsetA, Disjoint, Overlapping };

const char* to_string(Membership m);
const char* to_string(Comparison c);

/*
 * Region: a compact subset of R^m x F given fiberwise as a finite union of
 * closed boxes. Boxes may be degenerate (lower dimensional); regularize()
 * removes such parts.
 */
class Region {
 public:
  Region() = default;
  Region(std::size_t m, FinAbGroup F);

  /// The region consisting of a single box over the fiber `f`.
  static Region from_box(std::size_t m, const FinAbGroup& F, const FinElement& f, Box box);

  std::size_t m() const noexcept { return m_; }
  const FinAbGroup& group() const noexcept { return F_; }
  const std::map<FinElement, std::vector<Box>>& fibers() const noexcept { return fibers_; }
  const std::vector<Box>& fiber(const FinElement& f) const;

  void add_box(const FinElement& f, Box box);
  bool empty() const noexcept { return fibers_.empty(); }
  std::size_t box_count() const;
  std::size_t nonempty_fiber_count() const noexcept { return fibers_.size(); }

  /// -W
  Region negated() const;
  /// Same set; drops boxes contained in another box of the same fiber.
  Region simplified() const;
  /// Bounding box of the real part over all fibers; nullopt when empty.
  std::optional<Box> real_bounding_box() const;

  void check_compatible(const Region& other) const;
  void check_point(const HPoint& p) const;

 private:
  std::size_t m_ = 0;
  FinAbGroup F_;
  std::map<FinElement, std::vector<Box>> fibers_;
};

Membership region_membership(const Region& W, const HPoint& p);
Region region_translate(const Region& W, const HPoint& h);
Region region_intersect(const Region& A, const Region& B);
Region region_union(const Region& A, const Region& B);
Comparison region_compare(const Region& A, const Region& B);
bool region_equal(const Region& A, const Region& B);
bool region_subset(const Region& A, const Region& B);

struct Regularized {
  Region region;
  bool was_regular = false;
};
/// closure(interior(W)), reassembled into maximal boxes.
Regularized regularize(const Region& W);

struct Diameter {
  QuadExt value;
  bool multi_fiber = false;
};
/// Max-metric diameter of the real part (maximum over fibers).
Diameter region_diameter(const Region& W);

/// Fiber at g is the union of the fibers at f with h(f) = g.
Region region_pushforward(const Region& W, const FinHom& h);
/// Region over h.domain(): fiber at e is the fiber of W at h(e).
Region region_pullback(const Region& W, const FinHom& h);

/// Precomputed coordinate-cut grid of a region for repeated membership tests.
class RegionIndex {
 public:
  explicit RegionIndex(const Region& W);
  Membership classify(const QVector& real, const FinElement& fin) const;
  Membership classify(const HPoint& p) const { return classify(p.real, p.fin); }

  /// Coordinate-cut grid of one fiber: per axis the sorted cut values and a
  /// coverage flag for each product cell. Axis cell 2j+1 is the cut point
  /// c_j, even cells are the open gaps (cell 0 and 2K are unbounded).
  struct Grid {
    std::vector<QVector> cuts;
    std::vector<std::size_t> extent;
    std::vector<char> covered;

    std::size_t flat(const std::vector<std::size_t>& cell) const;
    bool at(const std::vector<std::size_t>& cell) const { return covered[flat(cell)] != 0; }
  };
  static Grid build_grid(const std::vector<Box>& boxes, std::vector<QVector> cuts);
  static std::vector<QVector> collect_cuts(std::size_t m, const std::vector<const std::vector<Box>*>& sets);
  static std::size_t locate(const QVector& cuts, const QuadExt& v);

 private:
  std::size_t m_ = 0;
  FinAbGroup F_;
  std::map<FinElement, Grid> grids_;
};

}  // namespace meyerkit
