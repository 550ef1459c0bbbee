#pragma once

#include <optional>
#include <vector>

#include "meyerkit/cps.hpp"
#include "meyerkit/modelset.hpp"
#include "meyerkit/pointset.hpp"

namespace meyerkit {

/*
 * Truncated omega state of a patch: the intersection over colors i and patch
 * points x of color i within max-distance R of the carrier center of
 * star(x) - V_i. The truncation ball follows the carrier, so translating a
 * patch together with its carrier translates the state exactly.
 *
 * Throws UnresolvableCoordinates for points outside the structure group,
 * InvalidArgument when R exceeds the patch radius or no point is in range.
 */
Region omega_region(const CutProjectScheme& S, const WindowSet& V, const Patch& patch, const QuadExt& R);

struct OmegaStep {
  QuadExt R;
  Region region;
};

struct OmegaPoint {
  bool resolved = false;
  HPoint point;                ///< hull center of the final region
  QuadExt certified_radius;    ///< diameter of the final region
  QuadExt R;                   ///< truncation radius reached
  std::vector<OmegaStep> trace;
};

/// Grows R (doubling from `start`, capped at the patch radius) until the
/// region is a single fiber of diameter <= tol. Throws InconsistentPatch when
/// a region becomes empty; returns resolved = false when the patch runs out.
OmegaPoint omega_point(const CutProjectScheme& S, const WindowSet& V, const Patch& patch, const QuadExt& tol,
                       const QuadExt& start = QuadExt(5));

enum class SrpVerdict { SameFiber, DistinctFiber, Unresolved };
const char* to_string(SrpVerdict v);

struct SrpResult {
  SrpVerdict verdict = SrpVerdict::Unresolved;
  QuadExt R;  ///< shared truncation radius
  std::optional<OmegaPoint> a, b;
};

/// DistinctFiber when the states at the shared radius are disjoint; SameFiber
/// when both resolve to points within tol of each other.
SrpResult srp_test(const CutProjectScheme& S, const WindowSet& V, const Patch& a, const Patch& b, const QuadExt& tol);

}  // namespace meyerkit
