#include "meyerkit/region.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace meyerkit {

namespace {

// Calls f(cell) for every cell of the product of [lo_k, hi_k].
void for_each_cell(const std::vector<std::size_t>& lo, const std::vector<std::size_t>& hi,
                   const std::function<void(const std::vector<std::size_t>&)>& f) {
  const std::size_t m = lo.size();
  for (std::size_t k = 0; k < m; ++k)
    if (lo[k] > hi[k]) return;
  std::vector<std::size_t> cell = lo;
  for (;;) {
    f(cell);
    std::size_t k = m;
    while (k-- > 0) {
      if (cell[k] < hi[k]) {
        ++cell[k];
        break;
      }
      cell[k] = lo[k];
    }
    if (k == static_cast<std::size_t>(-1)) return;
  }
}

const std::vector<Box> kNoBoxes;

}  // namespace

// ---------------------------------------------------------------------------
// Boxes

bool box_contains(const Box& outer, const Box& inner) {
  for (std::size_t k = 0; k < outer.size(); ++k)
    if (inner[k].lo < outer[k].lo || outer[k].hi < inner[k].hi) return false;
  return true;
}

bool box_contains_point(const Box& b, const QVector& p) {
  for (std::size_t k = 0; k < b.size(); ++k)
    if (p[k] < b[k].lo || b[k].hi < p[k]) return false;
  return true;
}

std::optional<Box> box_intersection(const Box& a, const Box& b) {
  Box r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    r[k].lo = max(a[k].lo, b[k].lo);
    r[k].hi = min(a[k].hi, b[k].hi);
    if (r[k].hi < r[k].lo) return std::nullopt;
  }
  return r;
}

bool box_is_solid(const Box& b) {
  return std::all_of(b.begin(), b.end(), [](const Interval& iv) { return iv.lo < iv.hi; });
}

std::string to_string(const HPoint& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < p.real.size(); ++k) os << (k ? ", " : "") << p.real[k];
  if (!p.fin.empty()) os << (p.real.empty() ? "" : "; ") << element_str(p.fin);
  os << ")";
  return os.str();
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "interior";
    case Membership::Boundary: return "boundary";
    case Membership::Exterior: return "exterior";
  }
  return "?";
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "equal";
    case Comparison::ASubsetB: return "a-subset-b";
    case Comparison::BSubsetA: return "b-subset-a";
    case Comparison::Disjoint: return "disjoint";
    case Comparison::Overlapping: return "overlapping";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Region

Region::Region(std::size_t m, FinAbGroup F) : m_(m), F_(std::move(F)) {
  if (m_ > kMaxInternalDim)
    throw InvalidArgument("internal dimension " + std::to_string(m_) + " exceeds the supported maximum of " +
                          std::to_string(kMaxInternalDim));
}

Region Region::from_box(std::size_t m, const FinAbGroup& F, const FinElement& f, Box box) {
  Region r(m, F);
  r.add_box(f, std::move(box));
  return r;
}

const std::vector<Box>& Region::fiber(const FinElement& f) const {
  auto it = fibers_.find(f);
  return it == fibers_.end() ? kNoBoxes : it->second;
}

void Region::add_box(const FinElement& f, Box box) {
  if (!F_.contains(f)) throw DimensionError("fiber " + element_str(f) + " is not an element of " + F_.str());
  if (box.size() != m_) throw DimensionError("box dimension does not match the internal dimension");
  for (const auto& iv : box)
    if (iv.hi < iv.lo) throw InvalidArgument("box with lo > hi");
  fibers_[f].push_back(std::move(box));
}

std::size_t Region::box_count() const {
  std::size_t n = 0;
  for (const auto& [f, boxes] : fibers_) n += boxes.size();
  return n;
}

Region Region::negated() const {
  Region r(m_, F_);
  for (const auto& [f, boxes] : fibers_)
    for (const auto& b : boxes) {
      Box nb(m_);
      for (std::size_t k = 0; k < m_; ++k) nb[k] = {-b[k].hi, -b[k].lo};
      r.fibers_[F_.neg(f)].push_back(std::move(nb));
    }
  return r;
}

Region Region::simplified() const {
  Region r(m_, F_);
  for (const auto& [f, boxes] : fibers_) {
    std::vector<Box> kept;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < boxes.size() && !redundant; ++j) {
        if (i == j || !box_contains(boxes[j], boxes[i])) continue;
        // Equal boxes: keep the first occurrence only.
        redundant = !box_contains(boxes[i], boxes[j]) || j < i;
      }
      if (!redundant) kept.push_back(boxes[i]);
    }
    if (!kept.empty()) r.fibers_[f] = std::move(kept);
  }
  return r;
}

std::optional<Box> Region::real_bounding_box() const {
  std::optional<Box> hull;
  for (const auto& [f, boxes] : fibers_)
    for (const auto& b : boxes) {
      if (!hull) {
        hull = b;
        continue;
      }
      for (std::size_t k = 0; k < m_; ++k) {
        (*hull)[k].lo = min((*hull)[k].lo, b[k].lo);
        (*hull)[k].hi = max((*hull)[k].hi, b[k].hi);
      }
    }
  return hull;
}

void Region::check_compatible(const Region& other) const {
  if (m_ != other.m_ || !(F_ == other.F_))
    throw DimensionError("regions live in different internal spaces (R^" + std::to_string(m_) + " x " + F_.str() +
                         " vs R^" + std::to_string(other.m_) + " x " + other.F_.str() + ")");
}

void Region::check_point(const HPoint& p) const {
  if (p.real.size() != m_ || !F_.contains(p.fin))
    throw DimensionError("point " + to_string(p) + " is not in R^" + std::to_string(m_) + " x " + F_.str());
}

// ---------------------------------------------------------------------------
// Grid decomposition

std::size_t RegionIndex::Grid::flat(const std::vector<std::size_t>& cell) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < extent.size(); ++k) idx = idx * extent[k] + cell[k];
  return idx;
}

std::size_t RegionIndex::locate(const QVector& cuts, const QuadExt& v) {
  auto it = std::lower_bound(cuts.begin(), cuts.end(), v);
  auto p = static_cast<std::size_t>(it - cuts.begin());
  if (it != cuts.end() && *it == v) return 2 * p + 1;
  return 2 * p;
}

std::vector<QVector> RegionIndex::collect_cuts(std::size_t m, const std::vector<const std::vector<Box>*>& sets) {
  std::vector<QVector> cuts(m);
  for (const auto* boxes : sets)
    for (const auto& b : *boxes)
      for (std::size_t k = 0; k < m; ++k) {
        cuts[k].push_back(b[k].lo);
        cuts[k].push_back(b[k].hi);
      }
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return cuts;
}

RegionIndex::Grid RegionIndex::build_grid(const std::vector<Box>& boxes, std::vector<QVector> cuts) {
  Grid g;
  g.cuts = std::move(cuts);
  std::size_t total = 1;
  for (const auto& c : g.cuts) {
    g.extent.push_back(2 * c.size() + 1);
    total *= g.extent.back();
  }
  g.covered.assign(total, 0);
  const std::size_t m = g.cuts.size();
  for (const auto& b : boxes) {
    std::vector<std::size_t> lo(m), hi(m);
    for (std::size_t k = 0; k < m; ++k) {
      lo[k] = locate(g.cuts[k], b[k].lo);
      hi[k] = locate(g.cuts[k], b[k].hi);
    }
    for_each_cell(lo, hi, [&](const std::vector<std::size_t>& cell) { g.covered[g.flat(cell)] = 1; });
  }
  return g;
}

RegionIndex::RegionIndex(const Region& W) : m_(W.m()), F_(W.group()) {
  for (const auto& [f, boxes] : W.fibers()) grids_.emplace(f, build_grid(boxes, collect_cuts(m_, {&boxes})));
}

namespace {

Membership classify_in_grid(const RegionIndex::Grid& g, const QVector& real) {
  const std::size_t m = g.cuts.size();
  std::vector<std::size_t> cell(m), lo(m), hi(m);
  for (std::size_t k = 0; k < m; ++k) {
    cell[k] = RegionIndex::locate(g.cuts[k], real[k]);
    bool on_cut = cell[k] % 2 == 1;
    lo[k] = on_cut ? cell[k] - 1 : cell[k];
    hi[k] = on_cut ? cell[k] + 1 : cell[k];
  }
  if (!g.at(cell)) return Membership::Exterior;
  bool all = true;
  for_each_cell(lo, hi, [&](const std::vector<std::size_t>& c) {
    if (!g.at(c)) all = false;
  });
  return all ? Membership::Interior : Membership::Boundary;
}

}  // namespace

Membership RegionIndex::classify(const QVector& real, const FinElement& fin) const {
  if (real.size() != m_ || !F_.contains(fin))
    throw DimensionError("point " + to_string(HPoint{real, fin}) + " is not in R^" + std::to_string(m_) + " x " +
                         F_.str());
  auto it = grids_.find(fin);
  if (it == grids_.end()) return Membership::Exterior;
  return classify_in_grid(it->second, real);
}

// ---------------------------------------------------------------------------
// Operations

Membership region_membership(const Region& W, const HPoint& p) {
  W.check_point(p);
  const auto& boxes = W.fiber(p.fin);
  if (boxes.empty()) return Membership::Exterior;
  auto g = RegionIndex::build_grid(boxes, RegionIndex::collect_cuts(W.m(), {&boxes}));
  return classify_in_grid(g, p.real);
}

Region region_translate(const Region& W, const HPoint& h) {
  W.check_point(h);
  Region r(W.m(), W.group());
  for (const auto& [f, boxes] : W.fibers())
    for (const auto& b : boxes) {
      Box nb(W.m());
      for (std::size_t k = 0; k < W.m(); ++k) nb[k] = {b[k].lo + h.real[k], b[k].hi + h.real[k]};
      r.add_box(W.group().add(f, h.fin), std::move(nb));
    }
  return r;
}

Region region_intersect(const Region& A, const Region& B) {
  A.check_compatible(B);
  Region r(A.m(), A.group());
  for (const auto& [f, boxes] : A.fibers()) {
    const auto& other = B.fiber(f);
    for (const auto& a : boxes)
      for (const auto& b : other)
        if (auto c = box_intersection(a, b)) r.add_box(f, std::move(*c));
  }
  return r.simplified();
}

Region region_union(const Region& A, const Region& B) {
  A.check_compatible(B);
  Region r = A;
  for (const auto& [f, boxes] : B.fibers())
    for (const auto& b : boxes) r.add_box(f, b);
  return r.simplified();
}

Comparison region_compare(const Region& A, const Region& B) {
  A.check_compatible(B);
  bool a_only = false, b_only = false, shared = false;
  std::vector<FinElement> keys;
  for (const auto& [f, boxes] : A.fibers()) keys.push_back(f);
  for (const auto& [f, boxes] : B.fibers())
    if (!A.fibers().count(f)) keys.push_back(f);
  for (const auto& f : keys) {
    const auto& ab = A.fiber(f);
    const auto& bb = B.fiber(f);
    auto cuts = RegionIndex::collect_cuts(A.m(), {&ab, &bb});
    auto ga = RegionIndex::build_grid(ab, cuts);
    auto gb = RegionIndex::build_grid(bb, cuts);
    for (std::size_t i = 0; i < ga.covered.size(); ++i) {
      bool x = ga.covered[i] != 0, y = gb.covered[i] != 0;
      a_only |= x && !y;
      b_only |= y && !x;
      shared |= x && y;
    }
  }
  if (!a_only && !b_only) return Comparison::Equal;
  if (!a_only) return Comparison::ASubsetB;
  if (!b_only) return Comparison::BSubsetA;
  return shared ? Comparison::Overlapping : Comparison::Disjoint;
}

bool region_equal(const Region& A, const Region& B) { return region_compare(A, B) == Comparison::Equal; }

bool region_subset(const Region& A, const Region& B) {
  auto c = region_compare(A, B);
  return c == Comparison::Equal || c == Comparison::ASubsetB || (A.empty() && c != Comparison::Overlapping);
}

Regularized regularize(const Region& W) {
  Region out(W.m(), W.group());
  const std::size_t m = W.m();
  for (const auto& [f, boxes] : W.fibers()) {
    auto g = RegionIndex::build_grid(boxes, RegionIndex::collect_cuts(m, {&boxes}));
    // Solid cells: open gaps between consecutive cuts on every axis.
    std::vector<std::size_t> dims(m);
    bool any = true;
    for (std::size_t k = 0; k < m; ++k) {
      dims[k] = g.cuts[k].size() >= 2 ? g.cuts[k].size() - 1 : 0;
      if (dims[k] == 0) any = false;
    }
    if (!any) continue;
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    std::vector<char> solid(total, 0), used(total, 0);
    auto flat = [&](const std::vector<std::size_t>& c) {
      std::size_t idx = 0;
      for (std::size_t k = 0; k < m; ++k) idx = idx * dims[k] + c[k];
      return idx;
    };
    std::vector<std::size_t> zero(m, 0), last(m);
    for (std::size_t k = 0; k < m; ++k) last[k] = dims[k] - 1;
    for_each_cell(zero, last, [&](const std::vector<std::size_t>& c) {
      std::vector<std::size_t> gc(m);
      for (std::size_t k = 0; k < m; ++k) gc[k] = 2 * c[k] + 2;
      solid[flat(c)] = g.at(gc) ? 1 : 0;
    });
    auto free_cell = [&](const std::vector<std::size_t>& c) { return solid[flat(c)] && !used[flat(c)]; };

    // Greedy maximal boxes in lexicographic order of their first cell.
    for_each_cell(zero, last, [&](const std::vector<std::size_t>& start) {
      if (!free_cell(start)) return;
      std::vector<std::size_t> end = start;
      for (std::size_t axis = 0; axis < m; ++axis) {
        while (end[axis] + 1 < dims[axis]) {
          std::vector<std::size_t> lo = start, hi = end;
          lo[axis] = hi[axis] = end[axis] + 1;
          bool ok = true;
          for_each_cell(lo, hi, [&](const std::vector<std::size_t>& c) { ok = ok && free_cell(c); });
          if (!ok) break;
          ++end[axis];
        }
      }
      for_each_cell(start, end, [&](const std::vector<std::size_t>& c) { used[flat(c)] = 1; });
      Box b(m);
      for (std::size_t k = 0; k < m; ++k) b[k] = {g.cuts[k][start[k]], g.cuts[k][end[k] + 1]};
      out.add_box(f, std::move(b));
    });
  }
  if (m == 0) {
    // Zero-dimensional fibers are open points of a discrete group.
    for (const auto& [f, boxes] : W.fibers()) out.add_box(f, Box{});
  }
  bool regular = region_equal(out, W);
  return {std::move(out), regular};
}

Diameter region_diameter(const Region& W) {
  if (W.empty()) throw InvalidArgument("diameter of an empty region");
  Diameter d;
  d.value = QuadExt(0);
  d.multi_fiber = W.nonempty_fiber_count() > 1;
  for (const auto& [f, boxes] : W.fibers()) {
    Box hull = boxes.front();
    for (const auto& b : boxes)
      for (std::size_t k = 0; k < W.m(); ++k) {
        hull[k].lo = min(hull[k].lo, b[k].lo);
        hull[k].hi = max(hull[k].hi, b[k].hi);
      }
    for (const auto& iv : hull) d.value = max(d.value, iv.hi - iv.lo);
  }
  return d;
}

Region region_pushforward(const Region& W, const FinHom& h) {
  if (!(h.domain() == W.group())) throw DimensionError("pushforward along a homomorphism with another domain");
  Region r(W.m(), h.codomain());
  for (const auto& [f, boxes] : W.fibers())
    for (const auto& b : boxes) r.add_box(h.apply(f), b);
  return r.simplified();
}

Region region_pullback(const Region& W, const FinHom& h) {
  if (!(h.codomain() == W.group())) throw DimensionError("pullback along a homomorphism with another codomain");
  Region r(W.m(), h.domain());
  for (const auto& e : h.domain().elements())
    for (const auto& b : W.fiber(h.apply(e))) r.add_box(e, b);
  return r;
}

}  // namespace meyerkit
