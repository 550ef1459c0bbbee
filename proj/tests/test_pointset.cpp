#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "meyerkit/modelset.hpp"
#include "meyerkit/pointset.hpp"
#include "oracles.hpp"

using namespace meyerkit;
using fx::fibnum;
using fx::rat;

namespace {

MultiPointSet integers(long lo, long hi) {
  MultiPointSet P(1, {"z"}, fx::box1(rat(lo), rat(hi)));
  for (long k = lo; k <= hi; ++k) P.add(0, {rat(k)});
  return P;
}

MultiPointSet fib_on(long lo, long hi) {
  return generate_model_multiset(fx::fib(), fx::fib_window(), fx::box1(rat(lo), rat(hi)));
}

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
const double kPhiBar = (1.0 - std::sqrt(5.0)) / 2.0;

// Fibonacci model set points as (p, q) pairs, by brute force in floating
// point. The window ends are never hit by lattice points.
std::vector<std::pair<long, long>> fib_pairs(double lo, double hi) {
  std::vector<std::pair<long, long>> out;
  for (long q = -1000; q <= 1000; ++q)
    for (long p = -1700; p <= 1700; ++p) {
      double x = p + q * kPhi, s = p + q * kPhiBar;
      if (x >= lo && x <= hi && s >= -0.999 && s <= kPhi - 1 + 0.001) out.emplace_back(p, q);
    }
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.first + a.second * kPhi < b.first + b.second * kPhi; });
  return out;
}

// Independent repetition oracle on integer coordinates.
std::optional<double> repetition_oracle(const std::vector<std::pair<long, long>>& pts, double lo, double hi, double r) {
  auto pos = [](std::pair<long, long> z) { return z.first + z.second * kPhi; };
  std::vector<std::size_t> centers;
  std::vector<std::vector<std::pair<long, long>>> keys;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double x = pos(pts[i]);
    if (x - r < lo || x + r > hi) continue;
    std::vector<std::pair<long, long>> key;
    for (const auto& w : pts)
      if (std::fabs(pos(w) - x) <= r) key.emplace_back(w.first - pts[i].first, w.second - pts[i].second);
    centers.push_back(i);
    keys.push_back(key);
  }
  std::map<std::vector<std::pair<long, long>>, std::vector<double>> classes;
  for (std::size_t k = 0; k < centers.size(); ++k) classes[keys[k]].push_back(pos(pts[centers[k]]));
  std::vector<double> needed;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    double y = pos(pts[centers[k]]), worst = 0;
    for (const auto& [key, occ] : classes) {
      double best = INFINITY;
      for (double o : occ)
        if (o != y) best = std::min(best, std::fabs(o - y));
      worst = std::max(worst, best);
    }
    needed.push_back(worst);
  }
  std::vector<double> cands = needed;
  std::sort(cands.begin(), cands.end());
  for (double R : cands) {
    if (!std::isfinite(R)) break;
    bool ok = true;
    std::size_t verified = 0;
    for (std::size_t k = 0; k < centers.size(); ++k) {
      double y = pos(pts[centers[k]]);
      if (y - R - r < lo || y + R + r > hi) continue;
      ++verified;
      if (needed[k] > R) ok = false;
    }
    if (ok && verified > 0) return R;
    if (verified == 0) break;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("multi point set basics") {
  MultiPointSet P(1, {"a", "b"}, fx::box1(rat(0), rat(10)));
  P.add(0, {rat(3)});
  P.add(0, {rat(1)});
  P.add(0, {rat(3)});
  P.add(1, {rat(3)});
  CHECK(P.points(0) == std::vector<QVector>{{rat(1)}, {rat(3)}});
  CHECK(P.size() == 3);
  CHECK(P.support().size() == 2);
  CHECK(P.contains(1, {rat(3)}));
  CHECK_FALSE(P.contains(1, {rat(1)}));
  CHECK(P.color_index("b") == 1u);
  CHECK_FALSE(P.color_index("c"));
  CHECK_THROWS_AS(P.add(0, {rat(11)}), InvalidArgument);
  CHECK(P.erase(0, {rat(1)}));
  CHECK_FALSE(P.erase(0, {rat(1)}));

  auto T = P.translated({rat(5)});
  CHECK(T.carrier() == fx::box1(rat(5), rat(15)));
  CHECK(T.contains(0, {rat(8)}));
  auto R = P.restricted(fx::box1(rat(4), rat(20)));
  CHECK(R.carrier() == fx::box1(rat(4), rat(10)));
  CHECK(R.empty());
}

TEST_CASE("patches are centered at the origin") {
  auto P = integers(-10, 10);
  auto patch = make_patch(P, {rat(3)}, rat(2));
  CHECK(patch.radius == rat(2));
  CHECK(patch.points.carrier() == fx::box1(rat(-2), rat(2)));
  CHECK(patch.points.points(0).size() == 5);
}

TEST_CASE("packing radius") {
  CHECK(packing_radius_squared(integers(0, 10)) == rat(1, 4));
  // Substitution oracle: gaps are 1 and phi, so the minimum squared gap is 1.
  auto verts = oracle::fibonacci_vertices(50);
  MultiPointSet P(1, {"v"}, fx::box1(rat(0), rat(50)));
  for (auto [p, q] : verts)
    if (fibnum(p, q) <= rat(50)) P.add(0, {fibnum(p, q)});
  CHECK(packing_radius_squared(P) == rat(1, 4));
  CHECK(packing_radius_squared(fib_on(0, 50)) == rat(1, 4));
  CHECK_THROWS_AS(packing_radius_squared(integers(0, 0)), InvalidArgument);
}

TEST_CASE("covering radius") {
  auto cz = covering_radius(integers(0, 10), rat(1));
  CHECK(cz.exact);
  CHECK(cz.value == rat(1, 2));
  // Largest gap of the chain is phi, so the largest half gap is phi / 2.
  auto cf = covering_radius(fib_on(0, 100), rat(5));
  CHECK(cf.exact);
  CHECK(cf.value == fx::phi() / QuadExt(2));
  MultiPointSet empty(1, {"v"}, fx::box1(rat(0), rat(10)));
  CHECK_THROWS_AS(covering_radius(empty, rat(1)), InvalidArgument);
  CHECK_THROWS_AS(covering_radius(integers(0, 10), rat(6)), InvalidArgument);

  MultiPointSet grid(2, {"z"}, Box{{rat(0), rat(10)}, {rat(0), rat(10)}});
  for (long x = 0; x <= 10; ++x)
    for (long y = 0; y <= 10; ++y) grid.add(0, {rat(x), rat(y)});
  auto c2 = covering_radius(grid, rat(1));
  CHECK_FALSE(c2.exact);
  // Grid spacing margin / 2 leaves every point within a quarter of a node.
  CHECK(c2.resolution == rat(1, 4));
  CHECK(c2.value <= rat(1, 2));
  CHECK(c2.value + c2.resolution >= rat(1, 2));
}

TEST_CASE("meyer defect") {
  auto Z = integers(-20, 20);
  CHECK(meyer_defect(Z, {{rat(0)}}, rat(5)).empty());
  auto F = fib_on(-100, 100);
  CHECK_FALSE(meyer_defect(F, {}, rat(20)).empty());
  CHECK_THROWS_AS(meyer_defect(Z, {{rat(0)}}, rat(15)), InvalidArgument);

  // Monotone in the witness set.
  std::vector<QVector> small{{rat(0)}}, large{{rat(0)}, {rat(1)}, {fx::phi()}, {-fx::phi()}, {rat(-1)}};
  auto d0 = meyer_defect(F, {}, rat(20)), d1 = meyer_defect(F, small, rat(20)), d2 = meyer_defect(F, large, rat(20));
  CHECK(d1.size() <= d0.size());
  CHECK(d2.size() <= d1.size());
  for (const auto& v : d2) CHECK(std::find(d1.begin(), d1.end(), v) != d1.end());
}

TEST_CASE("repetition radius of the integers") {
  auto res = repetition_radius(integers(-50, 50), rat(2));
  REQUIRE(res.radius);
  CHECK(*res.radius == rat(1));
  CHECK(res.patch_classes == 1);
  CHECK_THROWS_AS(repetition_radius(integers(-2, 2), rat(2)), InvalidArgument);
}

TEST_CASE("repetition radius of the Fibonacci chain matches the oracle") {
  auto P = fib_on(-500, 500);
  auto res = repetition_radius(P, rat(3));
  auto expect = repetition_oracle(fib_pairs(-500, 500), -500, 500, 3);
  REQUIRE(expect);
  REQUIRE(res.radius);
  CHECK(res.radius->to_double() == doctest::Approx(*expect).epsilon(1e-12));
  CHECK(res.patch_classes >= 2);
  // The floating oracle saw the same point set.
  CHECK(P.size() == fib_pairs(-500, 500).size());
}

TEST_CASE("random scatter is not repetitive at carrier scale") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(-5000, 5000);
  MultiPointSet P(1, {"x"}, fx::box1(rat(-50), rat(50)));
  for (int k = 0; k < 80; ++k) P.add(0, {rat(num(rng), 100)});
  auto res = repetition_radius(P, rat(2));
  CHECK_FALSE(res.radius);
}

TEST_CASE("verifiers are translation invariant") {
  auto P = fib_on(-100, 100);
  QVector t{fibnum(7, -3)};
  auto Q = P.translated(t);
  CHECK(packing_radius_squared(P) == packing_radius_squared(Q));
  CHECK(covering_radius(P, rat(5)).value == covering_radius(Q, rat(5)).value);
  // Differences do not move while the support does, so the witness set
  // moves by -t.
  std::vector<QVector> Fset{{rat(0)}, {rat(1)}, {fx::phi()}}, shifted;
  for (const auto& f : Fset) shifted.push_back({f[0] - t[0]});
  CHECK(meyer_defect(P, Fset, rat(10)) == meyer_defect(Q, shifted, rat(10)));
  CHECK(repetition_radius(P, rat(2)).radius == repetition_radius(Q, rat(2)).radius);
}
