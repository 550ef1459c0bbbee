#pragma once

#include <set>
#include <string>
#include <vector>

#include "meyerkit/cps.hpp"
#include "meyerkit/modelset.hpp"
#include "meyerkit/morphism.hpp"
#include "meyerkit/pointset.hpp"

namespace meyerkit {

/*
 * A Meyer multiple set inside a known model multiple set. Symbolic inputs
 * give sub-windows U_i of the ambient windows, empirical inputs a finite
 * listing of the pattern.
 */
struct MeyerInput {
  enum class Mode { Symbolic, Empirical };

  CutProjectScheme ambient;
  WindowSet ambient_windows;
  Mode mode = Mode::Symbolic;
  WindowSet sub_windows;  ///< symbolic
  MultiPointSet points;   ///< empirical

  /// Throws InvalidArgument when the presentation does not fit the ambient data.
  void validate() const;
};

struct StarClosure {
  WindowSet V;
  bool outer = false;  ///< empirical outer approximation
  QuadExt resolution;  ///< dilation used (0 for symbolic inputs)
};

/// Closures of the star images of each color. Symbolic: U_i themselves.
/// Empirical: regularized union of boxes of half-width `dilation` around the
/// star images of points within `sample_radius` of the carrier center.
StarClosure star_closure_windows(const MeyerInput& inp, const QuadExt& sample_radius, const QuadExt& dilation);

/// {f in F : V_i + (0, f) = V_i for every i}.
std::set<FinElement> redundancy_subgroup(const FinAbGroup& F, const WindowSet& V);

struct QuotientScheme {
  CutProjectScheme cps;
  FinHom projection;  ///< S.group() -> quotient group
};
/// S with F replaced by F / R. Throws InvalidArgument if R is not a subgroup.
QuotientScheme quotient_cps(const CutProjectScheme& S, const std::set<FinElement>& R);
/// Windows pushed forward along a quotient projection (fibers merged per coset).
WindowSet quotient_windows(const WindowSet& W, const CutProjectScheme& S, const FinHom& projection);

struct ShrunkScheme {
  CutProjectScheme cps;
  IntMatrix basis;  ///< columns: basis of the generated sublattice in old coordinates
  Integer index;
  FinHom inclusion;  ///< finite group of the new scheme -> S.group()
};
/// Restricts the structure group to the lattice generated by the support of
/// P. Throws UnresolvableCoordinates for points outside the structure group
/// and RankDeficient when the support does not span.
ShrunkScheme shrink_structure_group(const CutProjectScheme& S, const MultiPointSet& P);

struct ChainViolation {
  std::string color;
  QVector point;
  std::string relation;  ///< e.g. "lambda <= lambda_under"
};

struct ChainReport {
  bool pass = true;
  std::vector<ChainViolation> violations;
  std::size_t strict_right = 0;  ///< points of delta outside lambda_under
  std::size_t strict_left = 0;   ///< points of lambda_under outside lambda
};
/// lambda <= lambda_under <= delta colorwise on the common carrier.
ChainReport verify_chain(const MultiPointSet& lambda, const MultiPointSet& lambda_under, const MultiPointSet& delta);

struct InclusionStep {
  std::string relation;
  bool holds = true;
  std::size_t violations = 0;
};

struct MinimalizationResult {
  StarClosure V1;
  std::set<FinElement> redundancy;
  CutProjectScheme cps2;
  WindowSet V2;
  FinHom quotient_projection;
  ShrunkScheme shrink;
  CutProjectScheme cps_min;
  WindowSet V;           ///< final windows, over cps_min.group()
  bool V_regular = false;
  MultiPointSet lambda;
  MultiPointSet lambda_under;
  MultiPointSet delta;
  ChainReport chain;
  std::vector<InclusionStep> steps;  ///< interior model set inclusions
  std::vector<MorphismSpec> morphisms;  ///< quotient projection and sublattice inclusion
  bool pass() const;
};

struct MinimalOptions {
  QuadExt dilation = QuadExt(Rational(1, 50));
  /// Radius around the box center used for empirical star closures; the
  /// whole box when unset.
  std::optional<QuadExt> sample_radius;
};

MinimalizationResult minimal_model_set(const MeyerInput& inp, const Box& box, const MinimalOptions& opt = {});

}  // namespace meyerkit
