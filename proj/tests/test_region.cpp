#include <doctest.h>

#include <random>

#include "meyerkit/region.hpp"

using namespace meyerkit;

namespace {

const FinAbGroup kTrivial;
const FinAbGroup kZ2({2});

Interval iv(Rational lo, Rational hi) { return {QuadExt(lo), QuadExt(hi)}; }

Region interval_union(std::initializer_list<Interval> ivs, const FinAbGroup& F = kTrivial, FinElement f = {}) {
  Region r(1, F);
  if (f.empty()) f = F.zero();
  for (const auto& i : ivs) r.add_box(f, {i});
  return r;
}

HPoint pt(Rational x, FinElement f = {}) { return {{QuadExt(x)}, std::move(f)}; }

// Rasterized comparison on the real line / plane: membership of every cut
// coordinate, every midpoint between cuts and points beyond the outermost cuts.
bool naive_contains(const std::vector<Box>& boxes, const QVector& p) {
  for (const auto& b : boxes)
    if (box_contains_point(b, p)) return true;
  return false;
}

std::vector<QVector> sample_grid(std::size_t m, const std::vector<Box>& a, const std::vector<Box>& b) {
  std::vector<std::vector<Rational>> axes(m);
  for (const auto* set : {&a, &b})
    for (const auto& box : *set)
      for (std::size_t k = 0; k < m; ++k) {
        axes[k].push_back(box[k].lo.a());
        axes[k].push_back(box[k].hi.a());
      }
  for (auto& ax : axes) {
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end()), ax.end());
    std::vector<Rational> full;
    if (ax.empty()) {
      full.push_back(0);
    } else {
      full.push_back(ax.front() - 1);
      for (std::size_t i = 0; i < ax.size(); ++i) {
        full.push_back(ax[i]);
        if (i + 1 < ax.size()) full.push_back((ax[i] + ax[i + 1]) / 2);
      }
      full.push_back(ax.back() + 1);
    }
    ax = full;
  }
  std::vector<QVector> pts{{}};
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<QVector> next;
    for (const auto& p : pts)
      for (const auto& v : axes[k]) {
        auto q = p;
        q.push_back(QuadExt(v));
        next.push_back(q);
      }
    pts = next;
  }
  return pts;
}

Comparison raster_compare(std::size_t m, const std::vector<Box>& a, const std::vector<Box>& b) {
  bool a_only = false, b_only = false, shared = false;
  for (const auto& p : sample_grid(m, a, b)) {
    bool x = naive_contains(a, p), y = naive_contains(b, p);
    a_only |= x && !y;
    b_only |= y && !x;
    shared |= x && y;
  }
  if (!a_only && !b_only) return Comparison::Equal;
  if (!a_only) return Comparison::ASubsetB;
  if (!b_only) return Comparison::BSubsetA;
  return shared ? Comparison::Overlapping : Comparison::Disjoint;
}

std::vector<Box> random_boxes(std::mt19937_64& rng, std::size_t m) {
  std::uniform_int_distribution<int> e(0, 8), count(1, 6), degenerate(0, 5);
  std::vector<Box> boxes(static_cast<std::size_t>(count(rng)));
  for (auto& b : boxes) {
    b.resize(m);
    for (auto& i : b) {
      int x = e(rng), y = e(rng);
      if (degenerate(rng) == 0) y = x;
      i = iv(Rational(std::min(x, y), 2), Rational(std::max(x, y), 2));
    }
  }
  return boxes;
}

}  // namespace

TEST_CASE("membership spec examples") {
  CHECK(region_membership(interval_union({iv(0, 1)}), pt(Rational(1, 2))) == Membership::Interior);
  CHECK(region_membership(interval_union({iv(0, 1), iv(1, 2)}), pt(1)) == Membership::Interior);
  CHECK(region_membership(interval_union({iv(0, 1)}, kZ2, {0}), pt(Rational(1, 2), {1})) == Membership::Exterior);
  CHECK(region_membership(interval_union({iv(0, 1)}), pt(1)) == Membership::Boundary);
  CHECK(region_membership(interval_union({iv(0, 1)}), pt(2)) == Membership::Exterior);
  CHECK_THROWS_AS(region_membership(interval_union({iv(0, 1)}), pt(0, {1})), DimensionError);
}

TEST_CASE("translate spec examples") {
  Region W(1, kZ2);
  W.add_box({0}, {iv(0, 1)});
  W.add_box({1}, {iv(2, 3)});
  CHECK(region_equal(region_translate(W, pt(0, {0})), W));
  Region expect(1, kZ2);
  expect.add_box({1}, {iv(2, 3)});
  expect.add_box({0}, {iv(4, 5)});
  CHECK(region_equal(region_translate(W, pt(2, {1})), expect));
  CHECK(region_equal(region_translate(interval_union({iv(0, 1)}), pt(Rational(-1, 2))),
                     interval_union({iv(Rational(-1, 2), Rational(1, 2))})));
}

TEST_CASE("intersect spec examples") {
  CHECK(region_equal(region_intersect(interval_union({iv(0, 2)}), interval_union({iv(1, 3)})),
                     interval_union({iv(1, 2)})));
  auto touch = region_intersect(interval_union({iv(0, 1)}), interval_union({iv(1, 2)}));
  CHECK(touch.box_count() == 1);
  CHECK(touch.fiber({})[0][0] == iv(1, 1));
  CHECK(region_intersect(interval_union({iv(0, 1)}, kZ2, {0}), interval_union({iv(0, 1)}, kZ2, {1})).empty());
}

TEST_CASE("compare spec examples") {
  CHECK(region_compare(interval_union({iv(0, 1), iv(1, 2)}), interval_union({iv(0, 2)})) == Comparison::Equal);
  CHECK(region_compare(interval_union({iv(0, 1)}), interval_union({iv(0, 2)})) == Comparison::ASubsetB);
  CHECK(region_compare(interval_union({iv(0, 1)}), interval_union({iv(2, 3)})) == Comparison::Disjoint);
  CHECK(region_compare(interval_union({iv(0, 2)}), interval_union({iv(1, 3)})) == Comparison::Overlapping);
}

TEST_CASE("regularize spec examples") {
  auto r = regularize(interval_union({iv(0, 1)}));
  CHECK(r.was_regular);
  auto pt_region = regularize(interval_union({iv(0, 1), iv(2, 2)}));
  CHECK_FALSE(pt_region.was_regular);
  CHECK(region_equal(pt_region.region, interval_union({iv(0, 1)})));

  Region fin(2, kTrivial);
  fin.add_box({}, {iv(0, 1), iv(0, 1)});
  fin.add_box({}, {iv(1, 1), iv(0, 3)});
  auto reg = regularize(fin);
  CHECK_FALSE(reg.was_regular);
  CHECK(region_equal(reg.region, Region::from_box(2, kTrivial, {}, {iv(0, 1), iv(0, 1)})));
  CHECK(reg.region.box_count() == 1);

  auto merged = regularize(interval_union({iv(0, 1), iv(1, 2), iv(Rational(1, 2), Rational(3, 2))}));
  CHECK(merged.was_regular);
  CHECK(merged.region.box_count() == 1);
}

TEST_CASE("diameter spec examples") {
  auto d = region_diameter(interval_union({iv(1, 1)}));
  CHECK(d.value == QuadExt(0));
  CHECK_FALSE(d.multi_fiber);
  CHECK(region_diameter(interval_union({iv(0, 1), iv(3, 4)})).value == QuadExt(4));
  Region two(1, kZ2);
  two.add_box({0}, {iv(0, 1)});
  two.add_box({1}, {iv(0, 1)});
  CHECK(region_diameter(two).multi_fiber);
  CHECK_THROWS_AS(region_diameter(Region(1, kTrivial)), InvalidArgument);
}

TEST_CASE("construction limits") {
  CHECK_THROWS_AS(Region(4, kTrivial), InvalidArgument);
  Region r(1, kTrivial);
  CHECK_THROWS_AS(r.add_box({}, {iv(1, 0)}), InvalidArgument);
  CHECK_THROWS_AS(r.add_box({}, {iv(0, 1), iv(0, 1)}), DimensionError);
  Region zero(0, kZ2);
  zero.add_box({1}, {});
  CHECK(region_membership(zero, HPoint{{}, {1}}) == Membership::Interior);
  CHECK(region_membership(zero, HPoint{{}, {0}}) == Membership::Exterior);
  CHECK(regularize(zero).was_regular);
}

TEST_CASE("compare agrees with rasterized oracle") {
  std::mt19937_64 rng(5);
  for (std::size_t m = 1; m <= 2; ++m)
    for (int trial = 0; trial < 300; ++trial) {
      auto a = random_boxes(rng, m), b = random_boxes(rng, m);
      Region A(m, kTrivial), B(m, kTrivial);
      for (const auto& x : a) A.add_box({}, x);
      for (const auto& x : b) B.add_box({}, x);
      CHECK(region_compare(A, B) == raster_compare(m, a, b));
    }
}

TEST_CASE("region properties") {
  std::mt19937_64 rng(9);
  for (std::size_t m = 1; m <= 2; ++m)
    for (int trial = 0; trial < 100; ++trial) {
      Region W(m, kZ2);
      for (const auto& b : random_boxes(rng, m)) W.add_box({static_cast<std::int64_t>(rng() % 2)}, b);
      auto reg = regularize(W);
      CHECK(region_equal(regularize(reg.region).region, reg.region));
      CHECK(regularize(reg.region).was_regular);
      CHECK(region_subset(reg.region, W));

      HPoint h{QVector(m, QuadExt(Rational(static_cast<long>(rng() % 7) - 3, 3))), {1}};
      HPoint minus_h{QVector(m, -h.real[0]), {1}};
      CHECK(region_equal(region_translate(region_translate(W, h), minus_h), W));

      RegionIndex index(W);
      for (const auto& p : sample_grid(m, W.fiber({0}), W.fiber({1})))
        for (std::int64_t f = 0; f < 2; ++f) {
          auto mem = index.classify(p, {f});
          CHECK(mem == region_membership(W, HPoint{p, {f}}));
          CHECK((mem == Membership::Exterior) == !naive_contains(W.fiber({f}), p));
          if (mem == Membership::Interior)
            CHECK(region_membership(reg.region, HPoint{p, {f}}) != Membership::Exterior);
        }
    }
}

TEST_CASE("pushforward and pullback") {
  FinAbGroup Z4({4});
  FinHom h(Z4, kZ2, {{1}});
  Region W(1, Z4);
  W.add_box({0}, {iv(0, 1)});
  W.add_box({2}, {iv(1, 2)});
  W.add_box({1}, {iv(5, 6)});
  auto push = region_pushforward(W, h);
  CHECK(region_equal(push, [&] {
    Region e(1, kZ2);
    e.add_box({0}, {iv(0, 2)});
    e.add_box({1}, {iv(5, 6)});
    return e;
  }()));
  CHECK(region_compare(region_pullback(push, h), W) == Comparison::BSubsetA);
  CHECK(region_equal(W.negated().negated(), W));
}
