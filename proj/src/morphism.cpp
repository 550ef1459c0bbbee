#include "meyerkit/morphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace meyerkit {

namespace {

std::string basis_name(std::size_t k) { return "e" + std::to_string(k + 1); }

IntVector unit(std::size_t n, std::size_t k) {
  IntVector e(n, Integer(0));
  e[k] = 1;
  return e;
}

bool is_identity(const IntMatrix& K) { return K.rows() == K.cols() && K == IntMatrix::identity(K.rows()); }

void check_square_finite_index(const CutProjectScheme& S1, const IntMatrix& K) {
  if (K.rows() != S1.n() || K.cols() != S1.n())
    throw DimensionError("inclusion matrix must be " + std::to_string(S1.n()) + " x " + std::to_string(S1.n()));
  if (determinant(K) == 0) throw InvalidArgument("inclusion has infinite index (rank drop)");
}

// A1 K^-1 and B1 K^-1: the linear extension of the embedding to Gamma2.
std::pair<QuadMatrix, QuadMatrix> extend_embedding(const CutProjectScheme& S1, const IntMatrix& K) {
  QuadMatrix Kinv = inverse(to_quad(K));
  return {S1.A() * Kinv, S1.B() * Kinv};
}

}  // namespace

MorphismReport validate_morphism(const MorphismSpec& spec) {
  const auto& S1 = spec.source;
  const auto& S2 = spec.target;
  const auto& G = spec.gamma_inclusion;
  if (S1.d() != S2.d()) throw DimensionError("source and target have different physical dimensions");
  if (spec.T.rows() != S2.m() || spec.T.cols() != S1.m())
    throw DimensionError("T must be " + std::to_string(S2.m()) + " x " + std::to_string(S1.m()));
  if (G.rows() != S2.n() || G.cols() != S1.n())
    throw DimensionError("gamma_inclusion must be " + std::to_string(S2.n()) + " x " + std::to_string(S1.n()));
  if (!(spec.f.domain() == S1.declared_group()) || !(spec.f.codomain() == S2.declared_group()))
    throw DimensionError("f must map " + S1.declared_group().str() + " to " + S2.declared_group().str());

  MorphismReport rep;
  auto failure = [&](std::string msg) {
    rep.ok = false;
    rep.failures.push_back(std::move(msg));
  };
  if (G.cols() > 0 && column_hermite(G).rank != G.cols()) failure("gamma_inclusion does not have full column rank");

  QuadMatrix Gq = to_quad(G);
  QuadMatrix A2G = S2.A() * Gq;
  QuadMatrix TB1 = spec.T * S1.B();
  QuadMatrix B2G = S2.B() * Gq;
  for (std::size_t k = 0; k < S1.n(); ++k) {
    if (A2G.col(k) != S1.A().col(k)) failure(basis_name(k) + ": physical embeddings do not commute (A2 G != A1)");
    if (TB1.col(k) != B2G.col(k)) failure(basis_name(k) + ": real star maps do not intertwine (T B1 != B2 G)");
    IntVector e = unit(S1.n(), k);
    FinElement lhs = spec.f.apply(S1.embedding().apply(S1.c().apply(e)));
    FinElement rhs = S2.embedding().apply(S2.c().apply(G * e));
    if (lhs != rhs)
      failure(basis_name(k) + ": finite parts do not intertwine (f(c1) = " + element_str(lhs) +
              ", c2(G e) = " + element_str(rhs) + ")");
  }
  return rep;
}

OntoOpen onto_open_check(const MorphismSpec& spec) {
  OntoOpen out;
  out.open = rank(spec.T) == spec.target.m();
  out.image_open_subgroup = out.open;
  std::set<FinElement> image, target;
  for (const auto& x : spec.source.group().elements())
    image.insert(spec.f.apply(spec.source.embedding().apply(x)));
  for (const auto& y : spec.target.group().elements()) target.insert(spec.target.embedding().apply(y));
  out.onto = out.open && image == target;
  const auto& G = spec.gamma_inclusion;
  bool same_group = G.rows() == G.cols() && abs(determinant(G)) == 1;
  out.pass = same_group ? (out.onto && out.open) : (out.open && out.image_open_subgroup);
  return out;
}

CutProjectScheme sublattice_cps(const CutProjectScheme& S, const IntMatrix& basis) {
  if (basis.rows() != S.n() || basis.cols() != S.n()) throw DimensionError("sublattice basis must be square");
  if (determinant(basis) == 0) throw RankDeficient("sublattice basis is singular");
  QuadMatrix Bq = to_quad(basis);
  return CutProjectScheme(S.A() * Bq, S.B() * Bq, S.c().compose(basis), S.label());
}

std::variant<CutProjectScheme, SplitObstruction> amalgamated_cps(const CutProjectScheme& S1, const IntMatrix& K) {
  check_square_finite_index(S1, K);
  if (is_identity(K)) return S1;
  const std::size_t n = S1.n();
  const FinAbGroup& F = S1.group();
  // P K Q = S. With d = c2 o P^-1 the condition c2 K = c1 reads
  // s_j d(e_j) = c1(Q e_j) for every j.
  SmithForm sf = smith_form(K);
  auto all = F.elements();
  Integer exponent = 1;
  for (auto q : F.orders()) mpz_lcm_ui(exponent.get_mpz_t(), exponent.get_mpz_t(), static_cast<unsigned long>(q));
  auto small = [&](const Integer& v) {
    Integer r = v % exponent;
    if (r < 0) r += exponent;
    return r.get_si();
  };
  std::vector<FinElement> dimg(n);
  for (std::size_t j = 0; j < n; ++j) {
    FinElement target = S1.c().apply(sf.Q.col(j));
    auto it = std::find_if(all.begin(), all.end(), [&](const FinElement& y) { return F.scale(small(sf.diag[j]), y) == target; });
    if (it == all.end())
      return SplitObstruction{j, "c1(Q e" + std::to_string(j + 1) + ") = " + element_str(target) +
                                     " is not divisible by the invariant factor " + sf.diag[j].get_str()};
    dimg[j] = *it;
  }
  std::vector<FinElement> c2;
  for (std::size_t i = 0; i < n; ++i) {
    FinElement acc = F.zero();
    for (std::size_t j = 0; j < n; ++j) acc = F.add(acc, F.scale(small(sf.P(j, i)), dimg[j]));
    c2.push_back(acc);
  }
  LatticeCharacter c(F, c2);
  for (std::size_t j = 0; j < n; ++j)
    if (c.apply(K.col(j)) != S1.c().apply(unit(n, j))) throw Error("internal: split extension check failed");
  auto [A2, B2] = extend_embedding(S1, K);
  return CutProjectScheme(A2, B2, c, S1.label());
}

Amalgam genuine_amalgam(const CutProjectScheme& S1, const IntMatrix& K) {
  check_square_finite_index(S1, K);
  if (is_identity(K)) return {S1, FinHom::identity(S1.group())};
  const std::size_t n = S1.n();
  const FinAbGroup& F = S1.group();
  const std::size_t k = F.rank();
  IntMatrix rel(k + n, k + n);
  for (std::size_t j = 0; j < k; ++j) rel(j, j) = F.orders()[j];
  for (std::size_t j = 0; j < n; ++j) {
    FinElement cj = S1.c().apply(unit(n, j));
    for (std::size_t t = 0; t < k; ++t) rel(t, k + j) = -cj[t];
    for (std::size_t i = 0; i < n; ++i) rel(k + i, k + j) = K(i, j);
  }
  FinitePresentation pres = present_quotient(rel);
  std::vector<FinElement> c2, fromF;
  for (std::size_t i = 0; i < n; ++i) c2.push_back(pres.project(unit(k + n, k + i)));
  for (std::size_t t = 0; t < k; ++t) fromF.push_back(pres.project(unit(k + n, t)));
  auto [A2, B2] = extend_embedding(S1, K);
  CutProjectScheme amalgam(A2, B2, LatticeCharacter(pres.group, c2), S1.label());
  // c2 is onto E because c1 is onto F, so the scheme keeps E unchanged.
  return {amalgam, FinHom(F, amalgam.group(), fromF)};
}

FinHom amalgam_to_target(const CutProjectScheme& amalgam, const CutProjectScheme& target) {
  if (amalgam.n() != target.n() || !(amalgam.A() == target.A()) || !(amalgam.B() == target.B()))
    throw InvalidArgument("amalgam and target differ on the structure group embedding");
  const FinAbGroup& E = amalgam.group();
  const std::size_t n = amalgam.n();
  std::int64_t exponent = 1;
  for (const auto* G : {&E, &target.group()})
    for (auto q : G->orders()) exponent = std::lcm(exponent, q);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= exponent;
    if (total > kDefaultGroupCap) throw InvalidArgument("finite group too large for the exhaustive search");
  }
  // Both characters only depend on z modulo the joint exponent, so
  // [0, exponent)^n sees every pair (c_amalgam(z), c_target(z)).
  std::map<FinElement, FinElement> theta;
  std::vector<std::int64_t> z(n, 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = rest % exponent;
      rest /= exponent;
    }
    FinElement e = amalgam.c().apply(z);
    FinElement t = target.c().apply(z);
    auto [it, fresh] = theta.emplace(e, t);
    if (!fresh && it->second != t)
      throw InvalidArgument("no homomorphism intertwines the finite parts (c_target does not factor)");
  }
  std::vector<FinElement> images;
  for (std::size_t j = 0; j < E.rank(); ++j) images.push_back(theta.at(E.generator(j)));
  FinHom h(E, target.group(), images);
  for (const auto& [e, t] : theta)
    if (h.apply(e) != t) throw InvalidArgument("intertwining map is not a homomorphism");
  return h;
}

WindowSet pull_windows(const WindowSet& W, const CutProjectScheme& amalgam, const CutProjectScheme& target) {
  FinHom theta = amalgam_to_target(amalgam, target);
  WindowSet out;
  out.colors = W.colors;
  for (const auto& r : W.regions) out.regions.push_back(region_pullback(target.restrict_window(r), theta));
  return out;
}

std::optional<IntMatrix> same_cps_up_to_basis(const CutProjectScheme& S1, const CutProjectScheme& S2) {
  if (S1.d() != S2.d() || S1.m() != S2.m() || !(S1.group() == S2.group())) return std::nullopt;
  auto U = to_integer(S1.stacked_inverse() * S2.stacked());
  if (!U || abs(determinant(*U)) != 1) return std::nullopt;
  for (std::size_t k = 0; k < S1.n(); ++k)
    if (S2.c().apply(unit(S1.n(), k)) != S1.c().apply(U->col(k))) return std::nullopt;
  return U;
}

}  // namespace meyerkit
