#include "meyerkit/omega.hpp"

namespace meyerkit {

Region omega_region(const CutProjectScheme& S, const WindowSet& V, const Patch& patch, const QuadExt& R) {
  const auto& P = patch.points;
  if (P.d() != S.d()) throw DimensionError("patch and scheme have different physical dimensions");
  if (P.color_count() != V.size()) throw DimensionError("patch and windows have different numbers of colors");
  if (R > patch.radius) throw InvalidArgument("truncation radius " + R.str() + " exceeds the patch radius");

  QVector center = box_center(P.carrier());
  std::optional<Region> state;
  for (std::size_t i = 0; i < V.size(); ++i) {
    Region negV = S.restrict_window(V.regions[i]).negated();
    for (const auto& x : P.points(i)) {
      if (max_distance(x, center) > R) continue;
      auto z = S.coordinates_in_lattice(x);
      if (!z) throw UnresolvableCoordinates("patch point " + to_string(HPoint{x, {}}) + " is not in the structure group");
      Region t = region_translate(negV, S.internal(*z));
      state = state ? region_intersect(*state, t) : t.simplified();
      if (state->empty()) return *state;
    }
  }
  if (!state) throw InvalidArgument("no patch point within radius " + R.str());
  return *state;
}

OmegaPoint omega_point(const CutProjectScheme& S, const WindowSet& V, const Patch& patch, const QuadExt& tol,
                       const QuadExt& start) {
  if (qsign(start) <= 0) throw InvalidArgument("start radius must be positive");
  OmegaPoint out;
  QuadExt R = min(start, patch.radius);
  while (true) {
    Region region = omega_region(S, V, patch, R);
    if (region.empty()) throw InconsistentPatch("empty omega intersection at R = " + R.str());
    Diameter diam = region_diameter(region);
    out.R = R;
    out.trace.push_back({R, region});
    if (!diam.multi_fiber && diam.value <= tol) {
      const auto& [fin, boxes] = *region.fibers().begin();
      Box hull = *region.real_bounding_box();
      out.resolved = true;
      out.point = HPoint{box_center(hull), fin};
      out.certified_radius = diam.value;
      return out;
    }
    if (R == patch.radius) return out;
    R = min(R * QuadExt(2), patch.radius);
  }
}

const char* to_string(SrpVerdict v) {
  switch (v) {
    case SrpVerdict::SameFiber: return "same-fiber";
    case SrpVerdict::DistinctFiber: return "distinct-fiber";
    case SrpVerdict::Unresolved: return "unresolved";
  }
  return "?";
}

SrpResult srp_test(const CutProjectScheme& S, const WindowSet& V, const Patch& a, const Patch& b, const QuadExt& tol) {
  SrpResult out;
  out.R = min(a.radius, b.radius);
  Region ra = omega_region(S, V, a, out.R);
  Region rb = omega_region(S, V, b, out.R);
  if (ra.empty() || rb.empty()) throw InconsistentPatch("empty omega intersection at R = " + out.R.str());
  if (region_intersect(ra, rb).empty()) {
    out.verdict = SrpVerdict::DistinctFiber;
    return out;
  }
  out.a = omega_point(S, V, a, tol);
  out.b = omega_point(S, V, b, tol);
  if (out.a->resolved && out.b->resolved && out.a->point.fin == out.b->point.fin &&
      max_distance(out.a->point.real, out.b->point.real) <= tol)
    out.verdict = SrpVerdict::SameFiber;
  return out;
}

}  // namespace meyerkit
