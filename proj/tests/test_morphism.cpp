#include <doctest.h>

#include "fixtures.hpp"
#include "meyerkit/modelset.hpp"
#include "meyerkit/morphism.hpp"

using namespace meyerkit;
using fx::rat;

namespace {

const IntMatrix kDiagonal{{1, 1}, {1, -1}};  // index 2, p + q even
const IntMatrix kDouble{{2, 0}, {0, 1}};     // index 2, p even

MorphismSpec inclusion(const CutProjectScheme& S, const IntMatrix& basis) {
  CutProjectScheme sub = sublattice_cps(S, basis);
  // f: declared group of sub -> declared group of S; sub declares S.group().
  FinHom f = S.embedding().compose_after(FinHom::identity(S.group()));
  return {sub, S, QuadMatrix::identity(S.m()), f, basis};
}

}  // namespace

TEST_CASE("sublattice inclusions are valid morphisms") {
  for (const auto& S : {fx::fib(), fx::dec2(), fx::toy()})
    for (const auto& K : {kDiagonal, kDouble}) {
      auto spec = inclusion(S, K);
      auto rep = validate_morphism(spec);
      CHECK(rep.ok);
      CHECK(rep.failures.empty());
      auto oo = onto_open_check(spec);
      CHECK(oo.open);
      CHECK(oo.pass);
    }
}

TEST_CASE("sublattice of DEC2 on the parity lattice has trivial finite part") {
  auto sub = sublattice_cps(fx::dec2(), kDiagonal);
  CHECK(sub.group().is_trivial());
  CHECK(sublattice_cps(fx::dec2(), kDouble).group() == FinAbGroup({2}));
  CHECK_THROWS_AS(sublattice_cps(fx::dec2(), IntMatrix{{1, 1}, {1, 1}}), RankDeficient);
}

TEST_CASE("morphism validation reports broken conditions") {
  auto spec = inclusion(fx::fib(), kDiagonal);
  spec.T = QuadMatrix{{2}};
  auto rep = validate_morphism(spec);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failures.size() == 2);

  auto dspec = inclusion(fx::dec2(), kDouble);
  dspec.f = FinHom::zero(dspec.source.declared_group(), dspec.target.declared_group());
  CHECK_FALSE(validate_morphism(dspec).ok);

  auto shape = inclusion(fx::fib(), kDiagonal);
  shape.gamma_inclusion = IntMatrix{{1, 1}};
  CHECK_THROWS_AS(validate_morphism(shape), DimensionError);

  auto closed = inclusion(fx::fib(), kDiagonal);
  closed.T = QuadMatrix{{0}};
  auto oo = onto_open_check(closed);
  CHECK_FALSE(oo.open);
  CHECK_FALSE(oo.pass);
}

TEST_CASE("identity inclusion returns the identical scheme") {
  for (const auto& S : {fx::fib(), fx::dec2()}) {
    auto split = amalgamated_cps(S, IntMatrix::identity(2));
    REQUIRE(std::holds_alternative<CutProjectScheme>(split));
    const auto& T = std::get<CutProjectScheme>(split);
    CHECK(T.A() == S.A());
    CHECK(T.B() == S.B());
    CHECK(T.c() == S.c());
    auto gen = genuine_amalgam(S, IntMatrix::identity(2));
    CHECK(gen.cps.c() == S.c());
    CHECK(gen.from_F == FinHom::identity(S.group()));
  }
}

TEST_CASE("split amalgam restores the Fibonacci scheme") {
  auto S = fx::fib();
  for (const auto& K : {kDiagonal, kDouble}) {
    auto sub = sublattice_cps(S, K);
    auto back = amalgamated_cps(sub, K);
    REQUIRE(std::holds_alternative<CutProjectScheme>(back));
    const auto& T = std::get<CutProjectScheme>(back);
    CHECK(T.A() == S.A());
    CHECK(T.B() == S.B());
    Box box = fx::box1(rat(-50), rat(50));
    CHECK(generate_model_multiset(T, fx::fib_window(), box) == generate_model_multiset(S, fx::fib_window(), box));
    CHECK(same_cps_up_to_basis(S, T));
  }
}

TEST_CASE("split obstruction and the genuine amalgam") {
  auto F = fx::fib();
  QuadMatrix Kq = to_quad(kDouble);
  CutProjectScheme S1(F.A() * Kq, F.B() * Kq, LatticeCharacter(FinAbGroup({2}), {{1}, {0}}));
  auto split = amalgamated_cps(S1, kDouble);
  REQUIRE(std::holds_alternative<SplitObstruction>(split));
  CHECK_FALSE(std::get<SplitObstruction>(split).message.empty());

  // 2 e1' = f in E, so e1' has order 4.
  auto gen = genuine_amalgam(S1, kDouble);
  CHECK(gen.cps.group().size() == 4);
  CHECK(gen.from_F.is_injective());
  CHECK(gen.cps.A() == F.A());
  // The amalgam extends S1: c_E(K y) = from_F(c1(y)).
  for (long p = -3; p <= 3; ++p)
    for (long q = -3; q <= 3; ++q) {
      IntVector y{p, q};
      CHECK(gen.cps.c().apply(kDouble * y) == gen.from_F.apply(S1.c().apply(y)));
    }
}

TEST_CASE("genuine amalgam round trip regenerates DEC2") {
  auto D = fx::dec2();
  Box box = fx::box1(rat(-50), rat(50));
  auto direct = generate_model_multiset(D, fx::dec2_windows(), box);
  for (const auto& K : {kDiagonal, kDouble}) {
    auto sub = sublattice_cps(D, K);
    auto am = genuine_amalgam(sub, K);
    auto theta = amalgam_to_target(am.cps, D);
    CHECK(theta.is_surjective());
    auto W = pull_windows(fx::dec2_windows(), am.cps, D);
    CHECK(generate_model_multiset(am.cps, W, box) == direct);
  }
  // The split form cannot see the parity on the diagonal sublattice.
  auto split = amalgamated_cps(sublattice_cps(D, kDiagonal), kDiagonal);
  REQUIRE(std::holds_alternative<CutProjectScheme>(split));
  CHECK(std::get<CutProjectScheme>(split).group().is_trivial());
}

TEST_CASE("amalgam to target rejects incompatible targets") {
  auto am = genuine_amalgam(sublattice_cps(fx::fib(), kDiagonal), kDiagonal);
  CHECK_THROWS_AS(amalgam_to_target(am.cps, fx::toy()), InvalidArgument);
  // Trivial E cannot map onto a character that sees parity.
  auto trivial = sublattice_cps(fx::fib(), IntMatrix::identity(2));
  CHECK_THROWS_AS(amalgam_to_target(trivial, fx::dec2()), InvalidArgument);
}

TEST_CASE("same scheme up to basis") {
  auto S = fx::dec2();
  IntMatrix U{{1, 1}, {0, 1}};
  auto T = sublattice_cps(S, U);
  auto found = same_cps_up_to_basis(S, T);
  REQUIRE(found);
  CHECK(*found == U);
  CHECK_FALSE(same_cps_up_to_basis(S, sublattice_cps(S, kDouble)));
  CHECK_FALSE(same_cps_up_to_basis(S, fx::fib()));
}
