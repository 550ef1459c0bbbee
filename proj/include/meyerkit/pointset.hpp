#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "meyerkit/region.hpp"

namespace meyerkit {

/*
 * Colored point pattern listed completely inside a bounded carrier box.
 * Points of each color are kept sorted and duplicate free.
 */
class MultiPointSet {
 public:
  MultiPointSet() = default;
  MultiPointSet(std::size_t d, std::vector<std::string> colors, Box carrier);

  std::size_t d() const noexcept { return d_; }
  const std::vector<std::string>& colors() const noexcept { return colors_; }
  std::size_t color_count() const noexcept { return colors_.size(); }
  const Box& carrier() const noexcept { return carrier_; }
  const std::vector<QVector>& points(std::size_t color) const { return points_.at(color); }
  std::optional<std::size_t> color_index(const std::string& label) const;

  /// Adds a point; throws InvalidArgument when it lies outside the carrier.
  void add(std::size_t color, QVector x);
  bool contains(std::size_t color, const QVector& x) const;
  bool support_contains(const QVector& x) const;
  bool erase(std::size_t color, const QVector& x);

  /// Union over all colors, sorted and duplicate free.
  std::vector<QVector> support() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Same pattern shifted by t (carrier shifted too).
  MultiPointSet translated(const QVector& t) const;
  /// Points inside `box` (intersected with the carrier); carrier becomes the
  /// intersection.
  MultiPointSet restricted(const Box& box) const;

  friend bool operator==(const MultiPointSet& a, const MultiPointSet& b) {
    return a.d_ == b.d_ && a.colors_ == b.colors_ && a.points_ == b.points_ && a.carrier_ == b.carrier_;
  }

 private:
  std::size_t d_ = 0;
  std::vector<std::string> colors_;
  std::vector<std::vector<QVector>> points_;
  Box carrier_;
};

/// A pattern truncated to the max-norm ball of radius R around the origin.
struct Patch {
  MultiPointSet points;
  QuadExt radius;
};
/// The patch of P seen from `center`: translate by -center, restrict to [-R, R]^d.
Patch make_patch(const MultiPointSet& P, const QVector& center, const QuadExt& R);

/// Center of a box.
QVector box_center(const Box& b);
/// The box shrunk by `margin` on every side; nullopt if that is empty.
std::optional<Box> shrink_box(const Box& b, const QuadExt& margin);
QuadExt squared_distance(const QVector& x, const QVector& y);
QuadExt max_distance(const QVector& x, const QVector& y);

/// Squared packing radius: a quarter of the minimum squared distance between
/// distinct support points. Throws InvalidArgument with fewer than two points.
QuadExt packing_radius_squared(const MultiPointSet& P);

struct CoveringBound {
  QuadExt value;       ///< largest observed distance to the pattern
  QuadExt resolution;  ///< additive uncertainty (0 in dimension 1)
  bool exact = false;  ///< value is the true covering radius of the shrunk carrier
};
/// Covering radius of the pattern over the carrier shrunk by `margin`.
/// Dimension 1 is exact (largest half gap); d >= 2 uses the max-norm on a
/// sample grid of spacing margin / 2.
CoveringBound covering_radius(const MultiPointSet& P, const QuadExt& margin);

/// Differences x - y of support points within max-norm R of the carrier
/// center that are not in support + Fset. Throws InvalidArgument when the
/// needed translates leave the carrier.
std::vector<QVector> meyer_defect(const MultiPointSet& P, const std::vector<QVector>& Fset, const QuadExt& R);

struct RepetitionResult {
  std::optional<QuadExt> radius;   ///< nullopt: not found at carrier scale
  std::size_t patch_classes = 0;
  std::size_t verified_centers = 0;
};
/// Smallest R such that from every verifiable support point every observed
/// r-patch class has another occurrence within max-distance R.
RepetitionResult repetition_radius(const MultiPointSet& P, const QuadExt& r);

}  // namespace meyerkit
