#include "meyerkit/pointset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace meyerkit {

// ---------------------------------------------------------------------------
// MultiPointSet

MultiPointSet::MultiPointSet(std::size_t d, std::vector<std::string> colors, Box carrier)
    : d_(d), colors_(std::move(colors)), points_(colors_.size()), carrier_(std::move(carrier)) {
  if (carrier_.size() != d_) throw DimensionError("carrier dimension differs from d");
  for (const auto& iv : carrier_)
    if (iv.hi < iv.lo) throw InvalidArgument("carrier with lo > hi");
  std::set<std::string> seen(colors_.begin(), colors_.end());
  if (seen.size() != colors_.size()) throw InvalidArgument("duplicate color label");
}

std::optional<std::size_t> MultiPointSet::color_index(const std::string& label) const {
  auto it = std::find(colors_.begin(), colors_.end(), label);
  if (it == colors_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - colors_.begin());
}

void MultiPointSet::add(std::size_t color, QVector x) {
  if (color >= colors_.size()) throw InvalidArgument("color index out of range");
  if (x.size() != d_) throw DimensionError("point of wrong dimension");
  if (!box_contains_point(carrier_, x)) throw InvalidArgument("point outside the carrier");
  auto& pts = points_[color];
  auto it = std::lower_bound(pts.begin(), pts.end(), x);
  if (it == pts.end() || *it != x) pts.insert(it, std::move(x));
}

bool MultiPointSet::contains(std::size_t color, const QVector& x) const {
  const auto& pts = points_.at(color);
  return std::binary_search(pts.begin(), pts.end(), x);
}

bool MultiPointSet::support_contains(const QVector& x) const {
  for (std::size_t i = 0; i < colors_.size(); ++i)
    if (contains(i, x)) return true;
  return false;
}

bool MultiPointSet::erase(std::size_t color, const QVector& x) {
  auto& pts = points_.at(color);
  auto it = std::lower_bound(pts.begin(), pts.end(), x);
  if (it == pts.end() || *it != x) return false;
  pts.erase(it);
  return true;
}

std::vector<QVector> MultiPointSet::support() const {
  std::vector<QVector> all;
  for (const auto& pts : points_) all.insert(all.end(), pts.begin(), pts.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::size_t MultiPointSet::size() const {
  std::size_t n = 0;
  for (const auto& pts : points_) n += pts.size();
  return n;
}

MultiPointSet MultiPointSet::translated(const QVector& t) const {
  if (t.size() != d_) throw DimensionError("translation of wrong dimension");
  Box carrier = carrier_;
  for (std::size_t k = 0; k < d_; ++k) carrier[k] = {carrier[k].lo + t[k], carrier[k].hi + t[k]};
  MultiPointSet out(d_, colors_, carrier);
  for (std::size_t i = 0; i < colors_.size(); ++i)
    for (const auto& x : points_[i]) {
      QVector y = x;
      for (std::size_t k = 0; k < d_; ++k) y[k] += t[k];
      out.points_[i].push_back(std::move(y));
    }
  return out;
}

MultiPointSet MultiPointSet::restricted(const Box& box) const {
  auto cut = box_intersection(carrier_, box);
  if (!cut) throw InvalidArgument("restriction box misses the carrier");
  MultiPointSet out(d_, colors_, *cut);
  for (std::size_t i = 0; i < colors_.size(); ++i)
    for (const auto& x : points_[i])
      if (box_contains_point(*cut, x)) out.points_[i].push_back(x);
  return out;
}

Patch make_patch(const MultiPointSet& P, const QVector& center, const QuadExt& R) {
  QVector neg(center.size());
  for (std::size_t k = 0; k < center.size(); ++k) neg[k] = -center[k];
  Box ball(P.d(), Interval{-R, R});
  return {P.translated(neg).restricted(ball), R};
}

// ---------------------------------------------------------------------------
// Geometry helpers

QVector box_center(const Box& b) {
  QVector c;
  for (const auto& iv : b) c.push_back((iv.lo + iv.hi) / QuadExt(2));
  return c;
}

std::optional<Box> shrink_box(const Box& b, const QuadExt& margin) {
  Box r = b;
  for (auto& iv : r) {
    iv.lo += margin;
    iv.hi -= margin;
    if (iv.hi < iv.lo) return std::nullopt;
  }
  return r;
}

QuadExt squared_distance(const QVector& x, const QVector& y) {
  QuadExt s(0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    QuadExt t = x[k] - y[k];
    s += t * t;
  }
  return s;
}

QuadExt max_distance(const QVector& x, const QVector& y) {
  QuadExt s(0);
  for (std::size_t k = 0; k < x.size(); ++k) s = max(s, abs(x[k] - y[k]));
  return s;
}

// ---------------------------------------------------------------------------
// Verifiers

QuadExt packing_radius_squared(const MultiPointSet& P) {
  auto pts = P.support();
  if (pts.size() < 2) throw InvalidArgument("packing radius needs at least two points");
  // Sweep in the order of the first coordinate.
  std::optional<QuadExt> best;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      QuadExt dx = pts[j][0] - pts[i][0];
      if (best && *best <= dx * dx) break;
      QuadExt s = squared_distance(pts[i], pts[j]);
      if (!best || s < *best) best = s;
    }
  return *best / QuadExt(4);
}

CoveringBound covering_radius(const MultiPointSet& P, const QuadExt& margin) {
  auto J = shrink_box(P.carrier(), margin);
  if (!J) throw InvalidArgument("carrier shrunk by the margin is empty");
  auto pts = P.support();
  if (pts.empty()) throw InvalidArgument("covering radius of an empty pattern");
  CoveringBound out;
  if (P.d() == 1) {
    auto dist = [&](const QuadExt& x) {
      QVector key{x};
      auto it = std::lower_bound(pts.begin(), pts.end(), key);
      std::optional<QuadExt> best;
      if (it != pts.end()) best = (*it)[0] - x;
      if (it != pts.begin()) {
        QuadExt left = x - (*std::prev(it))[0];
        if (!best || left < *best) best = left;
      }
      return *best;
    };
    const QuadExt& a = (*J)[0].lo;
    const QuadExt& b = (*J)[0].hi;
    out.value = max(dist(a), dist(b));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      QuadExt mid = (pts[i][0] + pts[i + 1][0]) / QuadExt(2);
      if (a <= mid && mid <= b) out.value = max(out.value, dist(mid));
    }
    out.resolution = QuadExt(0);
    out.exact = out.value <= margin;
    return out;
  }
  const QuadExt h = margin / QuadExt(2);
  std::vector<QVector> grid{{}};
  for (const auto& iv : *J) {
    std::vector<QVector> next;
    for (const auto& g : grid) {
      for (QuadExt x = iv.lo;; x += h) {
        QuadExt v = x < iv.hi ? x : iv.hi;
        auto q = g;
        q.push_back(v);
        next.push_back(std::move(q));
        if (!(x < iv.hi)) break;
      }
    }
    grid = std::move(next);
  }
  out.value = QuadExt(0);
  for (const auto& g : grid) {
    std::optional<QuadExt> best;
    for (const auto& p : pts) {
      QuadExt dist = max_distance(g, p);
      if (!best || dist < *best) best = dist;
    }
    out.value = max(out.value, *best);
  }
  out.resolution = h / QuadExt(2);
  out.exact = false;
  return out;
}

std::vector<QVector> meyer_defect(const MultiPointSet& P, const std::vector<QVector>& Fset, const QuadExt& R) {
  const std::size_t d = P.d();
  for (const auto& f : Fset)
    if (f.size() != d) throw DimensionError("Fset vector of wrong dimension");
  // Every tested translate delta - f must lie in the carrier.
  std::vector<QVector> shifts = Fset;
  if (shifts.empty()) shifts.push_back(QVector(d, QuadExt(0)));
  for (const auto& f : shifts)
    for (std::size_t k = 0; k < d; ++k) {
      const QuadExt two_r = R + R;
      if (-two_r - f[k] < P.carrier()[k].lo || P.carrier()[k].hi < two_r - f[k])
        throw InvalidArgument("R exceeds the verifiable range of the carrier");
    }
  QVector center = box_center(P.carrier());
  auto support = P.support();
  std::vector<QVector> near;
  for (const auto& x : support)
    if (max_distance(x, center) <= R) near.push_back(x);
  std::set<QVector> diffs;
  for (const auto& x : near)
    for (const auto& y : near) {
      QVector dlt(d);
      for (std::size_t k = 0; k < d; ++k) dlt[k] = x[k] - y[k];
      diffs.insert(std::move(dlt));
    }
  std::vector<QVector> defect;
  for (const auto& dlt : diffs) {
    bool covered = false;
    for (const auto& f : Fset) {
      QVector t(d);
      for (std::size_t k = 0; k < d; ++k) t[k] = dlt[k] - f[k];
      if (std::binary_search(support.begin(), support.end(), t)) {
        covered = true;
        break;
      }
    }
    if (!covered) defect.push_back(dlt);
  }
  return defect;
}

namespace {

using PatchKey = std::vector<std::pair<QVector, std::size_t>>;

PatchKey patch_key(const MultiPointSet& P, const QVector& y, const QuadExt& r) {
  PatchKey key;
  for (std::size_t c = 0; c < P.color_count(); ++c)
    for (const auto& x : P.points(c)) {
      if (P.d() == 1 && x[0] < y[0] - r) continue;
      if (P.d() == 1 && y[0] + r < x[0]) break;
      if (max_distance(x, y) <= r) {
        QVector rel(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) rel[k] = x[k] - y[k];
        key.emplace_back(std::move(rel), c);
      }
    }
  std::sort(key.begin(), key.end());
  return key;
}

bool ball_in_carrier(const Box& carrier, const QVector& y, const QuadExt& rad) {
  for (std::size_t k = 0; k < y.size(); ++k)
    if (y[k] - rad < carrier[k].lo || carrier[k].hi < y[k] + rad) return false;
  return true;
}

}  // namespace

RepetitionResult repetition_radius(const MultiPointSet& P, const QuadExt& r) {
  for (const auto& iv : P.carrier())
    if (iv.hi - iv.lo < QuadExt(3) * r) throw InvalidArgument("carrier smaller than 3r");
  RepetitionResult out;
  auto support = P.support();
  std::vector<QVector> centers;
  std::map<PatchKey, std::vector<std::size_t>> classes;
  for (const auto& y : support)
    if (ball_in_carrier(P.carrier(), y, r)) {
      classes[patch_key(P, y, r)].push_back(centers.size());
      centers.push_back(y);
    }
  out.patch_classes = classes.size();
  if (centers.empty()) return out;

  // needed[i]: max over classes of the distance from centers[i] to the
  // nearest other occurrence of that class (nullopt if there is none).
  std::vector<std::optional<QuadExt>> needed(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) {
    std::optional<QuadExt> worst = QuadExt(0);
    for (const auto& [key, occ] : classes) {
      std::optional<QuadExt> best;
      if (P.d() == 1) {
        // Occurrences are sorted along the line: check the neighbours of i.
        auto it = std::lower_bound(occ.begin(), occ.end(), i);
        auto right = (it != occ.end() && *it == i) ? it + 1 : it;
        auto consider = [&](std::size_t j) {
          QuadExt v = max_distance(centers[i], centers[j]);
          if (!best || v < *best) best = v;
        };
        if (right != occ.end()) consider(*right);
        if (it != occ.begin()) consider(*std::prev(it));
      } else {
        for (std::size_t j : occ) {
          if (j == i) continue;
          QuadExt v = max_distance(centers[i], centers[j]);
          if (!best || v < *best) best = v;
        }
      }
      if (!best) {
        worst.reset();
        break;
      }
      worst = max(*worst, *best);
    }
    needed[i] = worst;
  }

  std::vector<QuadExt> candidates;
  for (const auto& v : needed)
    if (v) candidates.push_back(*v);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& R : candidates) {
    bool ok = true;
    std::size_t verified = 0;
    for (std::size_t i = 0; i < centers.size() && ok; ++i) {
      if (!ball_in_carrier(P.carrier(), centers[i], R + r)) continue;
      ++verified;
      ok = needed[i] && *needed[i] <= R;
    }
    if (!ok) continue;
    if (verified == 0) break;
    out.radius = R;
    out.verified_centers = verified;
    return out;
  }
  return out;
}

}  // namespace meyerkit
