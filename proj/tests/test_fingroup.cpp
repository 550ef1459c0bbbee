#include <doctest.h>

#include <random>

#include "meyerkit/fingroup.hpp"

using namespace meyerkit;

namespace {

// Number of cosets of S in F by exhaustive partitioning.
std::size_t coset_count(const FinAbGroup& F, const std::set<FinElement>& S) {
  std::set<std::set<FinElement>> cosets;
  for (const auto& x : F.elements()) {
    std::set<FinElement> c;
    for (const auto& s : S) c.insert(F.add(x, s));
    cosets.insert(c);
  }
  return cosets.size();
}

}  // namespace

TEST_CASE("subgroup_and_quotient spec examples") {
  FinAbGroup Z2({2});
  auto none = subgroup_and_quotient(Z2, {});
  CHECK(none.subgroup == std::set<FinElement>{{0}});
  CHECK(none.quotient.size() == 2);
  CHECK(none.projection.is_injective());
  CHECK(none.projection.is_surjective());

  auto full = subgroup_and_quotient(Z2, {{1}});
  CHECK(full.subgroup.size() == 2);
  CHECK(full.quotient.is_trivial());

  FinAbGroup G({4, 2});
  auto q = subgroup_and_quotient(G, {{2, 0}});
  CHECK(q.quotient.orders() == std::vector<std::int64_t>{2, 2});
  CHECK(coset_count(G, q.subgroup) == 4);
}

TEST_CASE("Lagrange and kernel, exhaustive over small groups") {
  std::mt19937_64 rng(3);
  const std::vector<std::vector<std::int64_t>> shapes = {{2}, {4}, {6}, {2, 2}, {4, 2}, {2, 3}, {8, 4}, {3, 3}, {2, 2, 2}, {4, 4, 4}};
  for (const auto& orders : shapes) {
    FinAbGroup F(orders);
    REQUIRE(F.size() <= 64);
    auto all = F.elements();
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<FinElement> gens;
      for (int g = 0; g < trial % 3; ++g) gens.push_back(all[rng() % all.size()]);
      auto sq = subgroup_and_quotient(F, gens);
      CHECK(is_subgroup(F, sq.subgroup));
      CHECK(static_cast<std::int64_t>(sq.subgroup.size()) * sq.quotient.size() == F.size());
      CHECK(sq.projection.kernel() == sq.subgroup);
      CHECK(sq.projection.is_surjective());
      CHECK(coset_count(F, sq.subgroup) == static_cast<std::size_t>(sq.quotient.size()));
      for (const auto& x : all)
        for (const auto& y : all)
          CHECK(sq.projection.apply(F.add(x, y)) ==
                sq.quotient.add(sq.projection.apply(x), sq.projection.apply(y)));
    }
  }
}

TEST_CASE("homomorphisms") {
  FinAbGroup Z4({4}), Z2({2});
  FinHom h(Z4, Z2, {{1}});
  CHECK(h.apply({3}) == FinElement{1});
  CHECK(h.kernel() == std::set<FinElement>{{0}, {2}});
  CHECK_THROWS_AS(FinHom(Z2, Z4, {{1}}), InvalidArgument);
  FinHom twice(Z2, Z4, {{2}});
  CHECK(twice.is_injective());
  CHECK_FALSE(twice.is_surjective());
  CHECK(h.compose_after(twice) == FinHom::zero(Z2, Z2));
}

TEST_CASE("present_quotient of a relation lattice") {
  auto p = present_quotient(IntMatrix{{2, 0}, {0, 3}});
  CHECK(p.group.size() == 6);
  // The projection is surjective and kills the relations.
  std::set<FinElement> seen;
  for (long x = 0; x < 2; ++x)
    for (long y = 0; y < 3; ++y) seen.insert(p.project({x, y}));
  CHECK(seen.size() == 6);
  CHECK(p.project({2, 0}) == p.group.zero());
  CHECK(p.project({0, 3}) == p.group.zero());
  for (std::size_t j = 0; j < p.group.rank(); ++j)
    CHECK(p.project(p.generator_lifts.col(j)) == p.group.generator(j));
}

TEST_CASE("character_image corestricts onto the image") {
  FinAbGroup G({4, 2});
  LatticeCharacter c(G, {{2, 0}, {0, 0}});
  auto ci = character_image(c);
  CHECK(ci.corestricted.target().size() == 2);
  CHECK(ci.corestricted.is_surjective());
  CHECK(ci.inclusion.is_injective());
  for (long p = -3; p <= 3; ++p)
    for (long q = -3; q <= 3; ++q)
      CHECK(ci.inclusion.apply(ci.corestricted.apply(std::vector<std::int64_t>{p, q})) ==
            c.apply(std::vector<std::int64_t>{p, q}));
}
