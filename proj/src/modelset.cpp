#include "meyerkit/modelset.hpp"

#include <map>

namespace meyerkit {

namespace {

std::vector<Region> restricted_windows(const CutProjectScheme& S, const WindowSet& W) {
  if (W.colors.size() != W.regions.size()) throw DimensionError("window set with mismatched colors");
  std::vector<Region> out;
  for (const auto& r : W.regions) out.push_back(S.restrict_window(r));
  return out;
}

// Real bounding box of all windows together; nullopt when all are empty.
std::optional<Box> joint_bounding_box(const std::vector<Region>& regions) {
  std::optional<Box> hull;
  for (const auto& r : regions) {
    auto b = r.real_bounding_box();
    if (!b) continue;
    if (!hull) {
      hull = b;
      continue;
    }
    for (std::size_t k = 0; k < b->size(); ++k) {
      (*hull)[k].lo = min((*hull)[k].lo, (*b)[k].lo);
      (*hull)[k].hi = max((*hull)[k].hi, (*b)[k].hi);
    }
  }
  return hull;
}

std::vector<LatticePoint> candidates(const CutProjectScheme& S, const std::vector<Region>& regions,
                                     const Box& phys_box) {
  auto hull = joint_bounding_box(regions);
  if (!hull) return {};
  return enumerate_lattice(S, phys_box, *hull);
}

}  // namespace

MultiPointSet generate_model_multiset(const CutProjectScheme& S, const WindowSet& W, const Box& phys_box,
                                      WindowMode mode) {
  auto regions = restricted_windows(S, W);
  MultiPointSet out(S.d(), W.colors, phys_box);
  std::vector<RegionIndex> index;
  for (const auto& r : regions) index.emplace_back(r);
  for (const auto& p : candidates(S, regions, phys_box))
    for (std::size_t i = 0; i < regions.size(); ++i) {
      Membership mem = index[i].classify(p.internal);
      if (mem == Membership::Interior || (mode == WindowMode::Closed && mem == Membership::Boundary))
        out.add(i, p.phys);
    }
  return out;
}

std::size_t InterpolationReport::hard_failures() const {
  std::size_t n = 0;
  for (const auto& c : colors) n += c.not_in_lattice.size();
  return n;
}

bool InterpolationReport::passes() const {
  for (const auto& c : colors)
    if (!c.missing_interior.empty() || !c.outside_closed.empty() || !c.not_in_lattice.empty()) return false;
  return true;
}

InterpolationReport check_interpolation(const MultiPointSet& P, const CutProjectScheme& S, const WindowSet& W,
                                        const Box& phys_box) {
  if (P.d() != S.d()) throw DimensionError("point set and scheme have different physical dimensions");
  auto regions = restricted_windows(S, W);
  auto box = box_intersection(phys_box, P.carrier());
  InterpolationReport rep;
  for (const auto& label : W.colors) rep.colors.push_back({label, {}, {}, {}, {}});
  if (!box) return rep;

  // Best membership over all lattice points with a given physical position.
  auto rank = [](Membership m) { return m == Membership::Interior ? 2 : m == Membership::Boundary ? 1 : 0; };
  std::vector<std::map<QVector, int>> best(regions.size());
  std::vector<RegionIndex> index;
  for (const auto& r : regions) index.emplace_back(r);
  for (const auto& p : candidates(S, regions, *box))
    for (std::size_t i = 0; i < regions.size(); ++i) {
      int v = rank(index[i].classify(p.internal));
      if (v == 0) continue;
      int& slot = best[i][p.phys];
      slot = std::max(slot, v);
    }

  for (std::size_t i = 0; i < regions.size(); ++i) {
    auto& out = rep.colors[i];
    auto ci = P.color_index(W.colors[i]);
    for (const auto& [x, v] : best[i])
      if (v == 2 && !(ci && P.contains(*ci, x))) out.missing_interior.push_back(x);
    if (!ci) continue;
    for (const auto& x : P.points(*ci)) {
      if (!box_contains_point(*box, x)) continue;
      auto it = best[i].find(x);
      if (it == best[i].end()) {
        if (S.coordinates_in_lattice(x))
          out.outside_closed.push_back(x);
        else
          out.not_in_lattice.push_back(x);
      } else if (it->second == 1) {
        out.slack.push_back(x);
      }
    }
  }
  return rep;
}

}  // namespace meyerkit
