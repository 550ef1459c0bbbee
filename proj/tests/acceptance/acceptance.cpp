// Acceptance suite: one pass/fail line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "meyerkit/config.hpp"
#include "oracles.hpp"

using namespace meyerkit;
using fx::fibnum;
using fx::rat;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED: " << what << ';';
    }
  }
};

const Box kBox50 = fx::box1(rat(-50), rat(50));
const Box kBox100 = fx::box1(rat(-100), rat(100));

IntVector ivec(const std::vector<long>& v) { return IntVector(v.begin(), v.end()); }

// 1. Fibonacci round trip against the substitution chain.
void fibonacci_round_trip(Verdict& v) {
  auto P = generate_model_multiset(fx::fib(), fx::fib_window(), fx::box1(rat(0), rat(200)));
  std::set<QVector> expect;
  for (auto [p, q] : oracle::fibonacci_vertices(200))
    if (fibnum(p, q) <= rat(200)) expect.insert({fibnum(p, q)});
  std::set<QVector> got(P.points(0).begin(), P.points(0).end());
  v.require(got == expect, "generated set differs from the substitution vertices");
  v.detail << " " << got.size() << " points";
}

// 2. Delone and Meyer properties of the Fibonacci chain at scale.
void delone_meyer(Verdict& v) {
  auto P = generate_model_multiset(fx::fib(), fx::fib_window(), kBox100);
  v.require(packing_radius_squared(P) == rat(1, 4), "squared packing radius is not 1/4");

  std::vector<QVector> F;
  for (auto [p, q] : oracle::fib_minimal_fset(-100, 100, 20, 3)) F.push_back({fibnum(p, q)});
  v.require(F == io::load_fset(fx::path("fib_fset.json"), 1), "oracle finite set differs from the frozen one");
  v.require(meyer_defect(P, F, rat(20)).empty(), "defect with the oracle finite set is nonempty");
  for (std::size_t k = 0; k < F.size(); ++k) {
    auto G = F;
    G.erase(G.begin() + static_cast<long>(k));
    v.require(!meyer_defect(P, G, rat(20)).empty(), "finite set is not minimal");
  }
  v.detail << " |F| = " << F.size();
}

// 3. Step 1 on duplicated fibers.
void redundancy_step(Verdict& v) {
  auto S = fx::dec2();
  auto W = fx::dec2_dup_windows();
  auto R = redundancy_subgroup(S.group(), W);
  v.require(R == std::set<FinElement>{{0}, {1}}, "redundancy subgroup is not Z/2");
  auto q = quotient_cps(S, R);
  v.require(q.cps.group().is_trivial(), "quotient group is not trivial");
  auto merged = generate_model_multiset(q.cps, quotient_windows(W, S, q.projection), kBox50);
  v.require(merged == generate_model_multiset(S, W, kBox50), "quotient regenerates a different set");

  MeyerInput inp;
  inp.ambient = S;
  inp.ambient_windows = W;
  inp.sub_windows = W;
  v.require(minimal_model_set(inp, kBox50).redundancy.size() == 2, "pipeline redundancy is not Z/2");
  v.detail << " |R| = " << R.size() << ", " << merged.size() << " points";
}

bool contains_all(const MultiPointSet& big, const MultiPointSet& small) {
  for (std::size_t i = 0; i < small.color_count(); ++i)
    for (const auto& x : small.points(i))
      if (!big.contains(i, x)) return false;
  return true;
}

// 4. Pipeline on a pattern cut by a smaller window.
void subwindow_pipeline(Verdict& v) {
  auto cfg = io::load_meyer_config(fx::path("subwin_meyer.json"));
  auto res = minimal_model_set(cfg.input, kBox100, cfg.options);
  v.require(res.chain.pass, "chain report fails");
  v.require(contains_all(res.lambda_under, res.lambda) && contains_all(res.delta, res.lambda_under),
            "direct containment check fails");
  v.require(res.chain.strict_right >= 1 && res.delta.size() > res.lambda_under.size(), "right containment not strict");
  v.require(region_compare(res.V.regions[0], cfg.input.sub_windows.regions[0]) == Comparison::Equal,
            "final window is not the input window");
  v.detail << " |lambda| = " << res.lambda.size() << ", |lambda_under| = " << res.lambda_under.size()
           << ", |delta| = " << res.delta.size();
}

// 5. Omega certification on Fibonacci patches.
void omega_certification(Verdict& v) {
  auto S = fx::fib();
  auto W = fx::fib_window();
  auto P = generate_model_multiset(S, W, fx::box1(rat(-2600), rat(2600)));
  Patch patch = make_patch(P, {rat(0)}, rat(2560));

  std::optional<Region> prev;
  for (long R : {5, 10, 20, 40}) {
    auto reg = omega_region(S, W, patch, rat(R));
    if (prev) {
      auto c = region_compare(reg, *prev);
      v.require(c == Comparison::ASubsetB || c == Comparison::Equal, "regions not nested at R = " + std::to_string(R));
    }
    prev = reg;
  }

  Patch small = make_patch(P, {rat(0)}, rat(40));
  auto base = omega_region(S, W, small, rat(40));
  const auto& pts = small.points.points(0);
  for (std::size_t k = 0; k < 20; ++k) {
    QVector x = pts[(k * 5 + 3) % pts.size()];
    HPoint s = S.internal(*S.coordinates_in_lattice(x));
    Patch moved{small.points.translated({-x[0]}), small.radius};
    v.require(region_equal(omega_region(S, W, moved, rat(40)), region_translate(base, HPoint{{-s.real[0]}, {}})),
              "equivariance fails");
  }

  QuadExt tol(Rational(1, 1000));
  auto at0 = omega_point(S, W, patch, tol);
  v.require(at0.resolved && abs(at0.point.real[0]) <= tol, "omega point at the origin not within tol of 0");
  QVector g0{fx::phi()};
  QuadExt s0 = S.internal(*S.coordinates_in_lattice(g0)).real[0];
  auto atg = omega_point(S, W, make_patch(P, g0, rat(2560)), tol);
  v.require(atg.resolved && abs(atg.point.real[0] + s0) <= tol, "omega point of the shifted pattern not within tol");
  v.detail << " resolved at R = " << at0.R.str() << " with diameter " << at0.certified_radius.to_double();
}

// 6. Idempotence of the pipeline.
void idempotence(Verdict& v) {
  auto cfg = io::load_meyer_config(fx::path("subwin_meyer.json"));
  auto first = minimal_model_set(cfg.input, kBox100, cfg.options);
  MeyerInput again;
  again.ambient = first.cps_min;
  again.ambient_windows = first.V;
  again.sub_windows = first.V;
  auto second = minimal_model_set(again, kBox100, cfg.options);
  v.require(second.pass(), "second run fails");
  v.require(second.shrink.index == first.shrink.index && second.shrink.index == 1, "index changes");
  v.require(same_cps_up_to_basis(first.cps_min, second.cps_min).has_value(), "scheme changes");
  v.require(region_compare(first.V.regions[0], second.V.regions[0]) == Comparison::Equal, "windows change");
  v.require(first.lambda_under == second.lambda_under, "point set changes");
}

// 7. Morphism checks and amalgam round trips.
void morphisms(Verdict& v) {
  std::size_t checked = 0;
  auto check_all = [&](const MinimalizationResult& res) {
    for (const auto& m : res.morphisms) {
      v.require(validate_morphism(m).ok, "pipeline morphism invalid");
      v.require(onto_open_check(m).pass, "pipeline morphism not onto/open");
      ++checked;
    }
  };
  auto cfg = io::load_meyer_config(fx::path("subwin_meyer.json"));
  check_all(minimal_model_set(cfg.input, kBox100, cfg.options));
  check_all(minimal_model_set(io::load_meyer_config(fx::path("dec2_dup_meyer.json")).input, kBox50));
  {
    auto D = fx::dec2();
    auto two = generate_model_multiset(D, fx::dec2_windows(), kBox100);
    MeyerInput inp;
    inp.ambient = D;
    inp.ambient_windows = WindowSet{{"even"}, {fx::dec2_windows().regions[0]}};
    inp.mode = MeyerInput::Mode::Empirical;
    inp.points = MultiPointSet(1, {"even"}, kBox100);
    for (const auto& x : two.points(0)) inp.points.add(0, x);
    check_all(minimal_model_set(inp, kBox100));
  }

  const IntMatrix kDiagonal{{1, 1}, {1, -1}}, kDouble{{2, 0}, {0, 1}};
  auto fib = fx::fib();
  auto fib_direct = generate_model_multiset(fib, fx::fib_window(), kBox50);
  auto D = fx::dec2();
  auto dec_direct = generate_model_multiset(D, fx::dec2_windows(), kBox50);
  for (const auto& K : {kDiagonal, kDouble}) {
    auto back = amalgamated_cps(sublattice_cps(fib, K), K);
    v.require(std::holds_alternative<CutProjectScheme>(back), "FIB amalgam does not split");
    if (auto* T = std::get_if<CutProjectScheme>(&back))
      v.require(generate_model_multiset(*T, fx::fib_window(), kBox50) == fib_direct, "FIB amalgam point set differs");
    auto am = genuine_amalgam(sublattice_cps(D, K), K);
    v.require(generate_model_multiset(am.cps, pull_windows(fx::dec2_windows(), am.cps, D), kBox50) == dec_direct,
              "DEC2 amalgam point set differs");
  }
  for (const auto& S : {fib, D}) {
    auto same = amalgamated_cps(S, IntMatrix::identity(2));
    auto* T = std::get_if<CutProjectScheme>(&same);
    v.require(T && T->A() == S.A() && T->B() == S.B() && T->c() == S.c() && T->declared_group() == S.declared_group(),
              "equal structure groups do not return the identical scheme");
  }
  v.detail << " " << checked << " pipeline morphisms";
}

// 8. Toy scheme against brute force over |z| <= 30.

// Union of closed intervals with rational endpoints, read straight from the
// fixture JSON.
using Intervals = std::vector<std::pair<Rational, Rational>>;

Rational endpoint(const io::json& j) {
  return j.is_number_integer() ? Rational(j.get<long>()) : parse_rational(j.get<std::string>());
}

std::vector<std::map<long, Intervals>> toy_window_oracle() {
  auto j = io::read_json_file(fx::path("toy_windows.json"));
  std::vector<std::map<long, Intervals>> out;
  for (const auto& w : j["windows"]) {
    std::map<long, Intervals> fibers;
    for (const auto& f : w["region"]["fibers"])
      for (const auto& b : f["boxes"])
        fibers[f["f"][0].get<long>()].emplace_back(endpoint(b[0][0]), endpoint(b[0][1]));
    out.push_back(fibers);
  }
  return out;
}

bool covered(const Intervals& iv, const Rational& s) {
  for (const auto& [lo, hi] : iv)
    if (lo <= s && s <= hi) return true;
  return false;
}

// Integer endpoints: s is interior iff s -+ 1/2 are both covered.
Membership classify(const Intervals& iv, long s) {
  if (!covered(iv, s)) return Membership::Exterior;
  return covered(iv, Rational(2 * s - 1, 2)) && covered(iv, Rational(2 * s + 1, 2)) ? Membership::Interior
                                                                                      : Membership::Boundary;
}

void toy_brute_force(Verdict& v) {
  auto S = fx::toy();
  auto W = fx::toy_windows();
  auto oracle_w = toy_window_oracle();
  const Box box = fx::box1(rat(-20), rat(20));
  // Toy scheme: x = z1 + z2, s = z1 - z2, f = z1 mod 2.
  std::vector<std::set<QVector>> closed(W.size()), interior(W.size());
  std::vector<Region> restricted;
  for (const auto& r : W.regions) restricted.push_back(S.restrict_window(r));
  std::size_t membership_checks = 0;
  bool membership_ok = true;
  for (long z1 = -30; z1 <= 30; ++z1)
    for (long z2 = -30; z2 <= 30; ++z2) {
      long x = z1 + z2, s = z1 - z2, f = ((z1 % 2) + 2) % 2;
      HPoint h = S.internal(ivec({z1, z2}));
      for (std::size_t i = 0; i < W.size(); ++i) {
        auto it = oracle_w[i].find(f);
        Membership expect = it == oracle_w[i].end() ? Membership::Exterior : classify(it->second, s);
        membership_ok = membership_ok && region_membership(restricted[i], h) == expect;
        ++membership_checks;
        if (x < -20 || x > 20) continue;
        if (expect != Membership::Exterior) closed[i].insert({rat(x)});
        if (expect == Membership::Interior) interior[i].insert({rat(x)});
      }
    }
  v.require(membership_ok, "membership disagrees with the interval oracle");

  auto P = generate_model_multiset(S, W, box);
  auto Pi = generate_model_multiset(S, W, box, WindowMode::Interior);
  for (std::size_t i = 0; i < W.size(); ++i) {
    v.require(std::set<QVector>(P.points(i).begin(), P.points(i).end()) == closed[i], "closed generation differs");
    v.require(std::set<QVector>(Pi.points(i).begin(), Pi.points(i).end()) == interior[i], "interior generation differs");
  }

  // Interpolation: every set between the interior and closed model sets passes;
  // dropping an interior point or adding an exterior lattice point fails.
  v.require(check_interpolation(P, S, W, box).passes() && check_interpolation(Pi, S, W, box).passes(),
            "model sets fail interpolation");
  std::size_t slack_total = 0;
  for (const auto& c : check_interpolation(P, S, W, box).colors) slack_total += c.slack.size();
  std::size_t slack_expect = 0;
  for (std::size_t i = 0; i < W.size(); ++i) slack_expect += closed[i].size() - interior[i].size();
  v.require(slack_total == slack_expect, "slack count differs");
  auto drop = P;
  drop.erase(0, *interior[0].begin());
  auto rep = check_interpolation(drop, S, W, box);
  v.require(!rep.passes() && rep.colors[0].missing_interior.size() == 1, "missing interior point not reported");
  for (long x = -20; x <= 20; ++x)
    if (!closed[1].count({rat(x)})) {
      auto extra = P;
      extra.add(1, {rat(x)});
      v.require(check_interpolation(extra, S, W, box).colors[1].outside_closed.size() == 1, "exterior point not reported");
      break;
    }

  // Redundancy: r fixes the windows iff every fiber f maps to an equal fiber.
  auto same_union = [](const Intervals& a, const Intervals& b) {
    for (long t = -40; t <= 40; ++t)
      if (covered(a, Rational(t, 4)) != covered(b, Rational(t, 4))) return false;
    return true;
  };
  auto redundancy_oracle = [&](const std::vector<std::map<long, Intervals>>& win) {
    std::set<FinElement> out;
    for (long r = 0; r < 2; ++r) {
      bool fixes = true;
      for (const auto& w : win)
        for (long f = 0; f < 2; ++f) {
          auto a = w.count(f) ? w.at(f) : Intervals{};
          auto b = w.count((f + r) % 2) ? w.at((f + r) % 2) : Intervals{};
          fixes = fixes && same_union(a, b);
        }
      if (fixes) out.insert({r});
    }
    return out;
  };
  v.require(redundancy_subgroup(S.group(), W) == redundancy_oracle(oracle_w), "redundancy differs");
  // Copy of color b on both fibers: the oracle and the library must both find Z/2.
  std::vector<std::map<long, Intervals>> dup{{{0, oracle_w[1].at(1)}, {1, oracle_w[1].at(1)}}};
  Region rb(1, FinAbGroup({2}));
  for (long f = 0; f < 2; ++f)
    for (const auto& [lo, hi] : dup[0].at(f)) rb.add_box({f}, fx::box1(QuadExt(lo), QuadExt(hi)));
  auto dup_expect = redundancy_oracle(dup);
  v.require(dup_expect.size() == 2 && redundancy_subgroup(S.group(), WindowSet{{"b"}, {rb}}) == dup_expect,
            "duplicated redundancy differs");
  v.detail << " " << membership_checks << " membership checks, " << P.size() << " points";
}

struct Criterion {
  int id;
  const char* name;
  double bound_s;
  std::function<void(Verdict&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Fibonacci round trip", 1, fibonacci_round_trip},
      {2, "Delone/Meyer at scale", 5, delone_meyer},
      {3, "redundancy quotient", 5, redundancy_step},
      {4, "minimal model set of the sub-window pattern", 10, subwindow_pipeline},
      {5, "omega certification", 10, omega_certification},
      {6, "idempotence", 10, idempotence},
      {7, "morphisms and amalgams", 5, morphisms},
      {8, "toy scheme brute force", 5, toy_brute_force},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < c.bound_s, "runtime bound exceeded");
    std::printf("[%s] criterion %d: %s (%.2f s, bound %.0f s)%s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.bound_s, v.detail.str().c_str());
    if (!v.pass) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
