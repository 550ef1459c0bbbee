#pragma once

#include <string>
#include <vector>

#include "meyerkit/cps.hpp"
#include "meyerkit/pointset.hpp"

namespace meyerkit {

/// One window region per color label.
struct WindowSet {
  std::vector<std::string> colors;
  std::vector<Region> regions;

  std::size_t size() const noexcept { return colors.size(); }
};

enum class WindowMode { Closed, Interior };

/// Physical projections of the lattice points in phys_box whose internal part
/// lies in the window of each color (closed windows by default).
MultiPointSet generate_model_multiset(const CutProjectScheme& S, const WindowSet& W, const Box& phys_box,
                                      WindowMode mode = WindowMode::Closed);

struct ColorInterpolation {
  std::string color;
  std::vector<QVector> missing_interior;  ///< interior model points absent from P
  std::vector<QVector> outside_closed;    ///< lattice points of P outside the closed model set
  std::vector<QVector> slack;             ///< points of P whose internal part is on the boundary
  std::vector<QVector> not_in_lattice;    ///< hard failures
};

struct InterpolationReport {
  std::vector<ColorInterpolation> colors;
  std::size_t hard_failures() const;
  bool passes() const;
};

/// Checks interior model set <= P <= closed model set colorwise on phys_box.
InterpolationReport check_interpolation(const MultiPointSet& P, const CutProjectScheme& S, const WindowSet& W,
                                        const Box& phys_box);

}  // namespace meyerkit
