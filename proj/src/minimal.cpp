#include "meyerkit/minimal.hpp"

#include <algorithm>

namespace meyerkit {

namespace {

std::vector<Region> restricted(const CutProjectScheme& S, const WindowSet& W) {
  std::vector<Region> out;
  for (const auto& r : W.regions) out.push_back(S.restrict_window(r));
  return out;
}

// Same scheme with the declared finite group replaced by the image of c.
CutProjectScheme clean(const CutProjectScheme& S) { return CutProjectScheme(S.A(), S.B(), S.c(), S.label()); }

std::size_t count_missing(const MultiPointSet& sub, const MultiPointSet& super) {
  std::size_t miss = 0;
  for (std::size_t i = 0; i < sub.color_count(); ++i)
    for (const auto& x : sub.points(i))
      if (!super.contains(i, x)) ++miss;
  return miss;
}

QuadExt carrier_radius(const Box& b) {
  QuadExt r(0);
  for (const auto& iv : b) r = max(r, iv.hi - iv.lo);
  return r;
}

}  // namespace

void MeyerInput::validate() const {
  if (ambient_windows.regions.size() != ambient_windows.colors.size())
    throw InvalidArgument("ambient windows: colors and regions differ in number");
  auto W = restricted(ambient, ambient_windows);
  if (mode == Mode::Symbolic) {
    if (sub_windows.colors != ambient_windows.colors)
      throw InvalidArgument("sub-window colors do not match the ambient window colors");
    auto U = restricted(ambient, sub_windows);
    for (std::size_t i = 0; i < U.size(); ++i) {
      Comparison cmp = region_compare(U[i], W[i]);
      if (cmp != Comparison::Equal && cmp != Comparison::ASubsetB)
        throw InvalidArgument("sub-window '" + sub_windows.colors[i] + "' is not contained in the ambient window (" +
                              to_string(cmp) + ")");
      if (!regularize(U[i]).was_regular)
        throw InvalidArgument("sub-window '" + sub_windows.colors[i] + "' is not topologically regular");
    }
    return;
  }
  if (points.colors() != ambient_windows.colors)
    throw InvalidArgument("point colors do not match the ambient window colors");
  if (points.d() != ambient.d()) throw DimensionError("point set and scheme have different physical dimensions");
  for (const auto& x : points.support())
    if (!ambient.coordinates_in_lattice(x))
      throw UnresolvableCoordinates("point " + to_string(HPoint{x, {}}) + " is not in the structure group");
}

StarClosure star_closure_windows(const MeyerInput& inp, const QuadExt& sample_radius, const QuadExt& dilation) {
  const auto& S = inp.ambient;
  StarClosure out;
  out.V.colors = inp.ambient_windows.colors;
  if (inp.mode == MeyerInput::Mode::Symbolic) {
    out.V.regions = restricted(S, inp.sub_windows);
    out.resolution = QuadExt(0);
    return out;
  }
  if (qsign(dilation) <= 0) throw InvalidArgument("dilation must be positive");
  auto W = restricted(S, inp.ambient_windows);
  QVector center = box_center(inp.points.carrier());
  for (std::size_t i = 0; i < inp.points.color_count(); ++i) {
    Region boxes(S.m(), S.group());
    for (const auto& x : inp.points.points(i)) {
      if (max_distance(x, center) > sample_radius) continue;
      auto z = S.coordinates_in_lattice(x);
      if (!z) throw UnresolvableCoordinates("point " + to_string(HPoint{x, {}}) + " is not in the structure group");
      HPoint h = S.internal(*z);
      Box b;
      for (const auto& v : h.real) b.push_back({v - dilation, v + dilation});
      boxes.add_box(h.fin, std::move(b));
    }
    if (boxes.empty())
      throw InvalidArgument("color '" + inp.points.colors()[i] + "' has no points within the sample radius");
    // The star images lie in the ambient window, so clipping keeps an outer
    // approximation of their closure.
    out.V.regions.push_back(regularize(region_intersect(boxes, W[i])).region);
  }
  out.outer = true;
  out.resolution = dilation;
  return out;
}

std::set<FinElement> redundancy_subgroup(const FinAbGroup& F, const WindowSet& V) {
  std::set<FinElement> out;
  for (const auto& f : F.elements()) {
    bool fixes = true;
    for (const auto& r : V.regions) {
      if (!(r.group() == F)) throw DimensionError("window over " + r.group().str() + ", expected " + F.str());
      if (!region_equal(region_translate(r, HPoint{QVector(r.m(), QuadExt(0)), f}), r)) {
        fixes = false;
        break;
      }
    }
    if (fixes) out.insert(f);
  }
  if (!is_subgroup(F, out)) throw Error("internal: redundancy set is not a subgroup");
  return out;
}

QuotientScheme quotient_cps(const CutProjectScheme& S, const std::set<FinElement>& R) {
  if (!is_subgroup(S.group(), R)) throw InvalidArgument("redundancy set is not a subgroup of " + S.group().str());
  auto sq = subgroup_and_quotient(S.group(), std::vector<FinElement>(R.begin(), R.end()));
  CutProjectScheme q(S.A(), S.B(), S.c().then(sq.projection), S.label());
  if (!(q.group() == sq.quotient)) throw Error("internal: quotient character is not onto");
  return {std::move(q), std::move(sq.projection)};
}

WindowSet quotient_windows(const WindowSet& W, const CutProjectScheme& S, const FinHom& projection) {
  WindowSet out;
  out.colors = W.colors;
  for (const auto& r : W.regions) out.regions.push_back(region_pushforward(S.restrict_window(r), projection));
  return out;
}

ShrunkScheme shrink_structure_group(const CutProjectScheme& S, const MultiPointSet& P) {
  if (P.d() != S.d()) throw DimensionError("point set and scheme have different physical dimensions");
  const std::size_t n = S.n();
  auto support = P.support();
  IntMatrix gens(n, support.size());
  for (std::size_t k = 0; k < support.size(); ++k) {
    auto z = S.coordinates_in_lattice(support[k]);
    if (!z) throw UnresolvableCoordinates("point " + to_string(HPoint{support[k], {}}) + " is not in the structure group");
    for (std::size_t i = 0; i < n; ++i) gens(i, k) = (*z)[i];
  }
  IntMatrix basis = support.empty() ? IntMatrix(n, 0) : lattice_basis(gens);
  if (basis.cols() < n)
    throw RankDeficient("the pattern generates a sublattice of rank " + std::to_string(basis.cols()) + " < " +
                        std::to_string(n));
  LatticeCharacter c = S.c().compose(basis);
  FinHom inclusion = FinHom::identity(S.group());
  if (!c.is_surjective()) {
    auto img = character_image(c);
    c = std::move(img.corestricted);
    inclusion = std::move(img.inclusion);
  }
  QuadMatrix Bq = to_quad(basis);
  Integer index = abs(determinant(basis));
  return {CutProjectScheme(S.A() * Bq, S.B() * Bq, std::move(c), S.label()), std::move(basis), std::move(index),
          std::move(inclusion)};
}

ChainReport verify_chain(const MultiPointSet& lambda, const MultiPointSet& lambda_under, const MultiPointSet& delta) {
  if (lambda.colors() != lambda_under.colors() || lambda.colors() != delta.colors())
    throw InvalidArgument("chain members have different color lists");
  auto box = box_intersection(lambda.carrier(), lambda_under.carrier());
  if (box) box = box_intersection(*box, delta.carrier());
  if (!box) throw InvalidArgument("chain members have disjoint carriers");
  auto L = lambda.restricted(*box), LU = lambda_under.restricted(*box), D = delta.restricted(*box);

  ChainReport rep;
  for (std::size_t i = 0; i < L.color_count(); ++i) {
    const auto& color = L.colors()[i];
    for (const auto& x : L.points(i))
      if (!LU.contains(i, x)) rep.violations.push_back({color, x, "lambda <= lambda_under"});
    for (const auto& x : LU.points(i)) {
      if (!D.contains(i, x)) rep.violations.push_back({color, x, "lambda_under <= delta"});
      if (!L.contains(i, x)) ++rep.strict_left;
    }
    for (const auto& x : D.points(i))
      if (!LU.contains(i, x)) ++rep.strict_right;
  }
  rep.pass = rep.violations.empty();
  return rep;
}

bool MinimalizationResult::pass() const {
  if (!chain.pass || !V_regular) return false;
  return std::all_of(steps.begin(), steps.end(), [](const InclusionStep& s) { return s.holds; });
}

MinimalizationResult minimal_model_set(const MeyerInput& inp, const Box& box, const MinimalOptions& opt) {
  inp.validate();
  const auto& colors = inp.ambient_windows.colors;
  CutProjectScheme S1 = clean(inp.ambient);
  WindowSet W1{colors, restricted(S1, inp.ambient_windows)};

  MinimalizationResult res;
  if (inp.mode == MeyerInput::Mode::Symbolic) {
    res.lambda = generate_model_multiset(S1, WindowSet{colors, restricted(S1, inp.sub_windows)}, box);
  } else {
    res.lambda = inp.points.restricted(box);
  }

  QuadExt radius = opt.sample_radius ? *opt.sample_radius : carrier_radius(inp.points.carrier());
  res.V1 = star_closure_windows(inp, radius, opt.dilation);

  // Step 1: factor out the finite redundancy.
  res.redundancy = redundancy_subgroup(S1.group(), res.V1.V);
  auto q = quotient_cps(S1, res.redundancy);
  res.cps2 = q.cps;
  res.quotient_projection = q.projection;
  res.V2 = quotient_windows(res.V1.V, S1, q.projection);

  // Step 2: shrink the structure group to the lattice the pattern generates.
  res.shrink = shrink_structure_group(res.cps2, res.lambda);
  res.cps_min = res.shrink.cps;
  res.V.colors = colors;
  res.V_regular = true;
  for (const auto& r : res.V2.regions) {
    auto reg = regularize(region_pullback(r, res.shrink.inclusion));
    res.V_regular = res.V_regular && reg.was_regular;
    res.V.regions.push_back(std::move(reg.region));
  }

  // Minimal model multiple set and the inclusion chain.
  MultiPointSet interior_min = generate_model_multiset(res.cps_min, res.V, box, WindowMode::Interior);
  res.lambda_under = interior_min;
  for (std::size_t i = 0; i < res.lambda.color_count(); ++i)
    for (const auto& x : res.lambda.points(i))
      if (box_contains_point(box, x) && !res.lambda_under.contains(i, x)) res.lambda_under.add(i, x);
  res.delta = generate_model_multiset(S1, W1, box, WindowMode::Closed);
  res.chain = verify_chain(res.lambda, res.lambda_under, res.delta);

  MultiPointSet interior2 = generate_model_multiset(res.cps2, res.V2, box, WindowMode::Interior);
  MultiPointSet interior1 = generate_model_multiset(S1, res.V1.V, box, WindowMode::Interior);
  MultiPointSet interiorW = generate_model_multiset(S1, W1, box, WindowMode::Interior);
  auto step = [&](std::string rel, const MultiPointSet& a, const MultiPointSet& b) {
    std::size_t v = count_missing(a, b);
    res.steps.push_back({std::move(rel), v == 0, v});
  };
  step("P_H(int V) <= P_H2(int V2)", interior_min, interior2);
  step("P_H2(int V2) <= P_H1(int V1)", interior2, interior1);
  step("P_H1(int V1) <= P_H1(int W1)", interior1, interiorW);

  const std::size_t m = S1.m(), n = S1.n();
  res.morphisms.push_back({S1, res.cps2, QuadMatrix::identity(m), res.quotient_projection, IntMatrix::identity(n)});
  res.morphisms.push_back(
      {res.cps_min, res.cps2, QuadMatrix::identity(m), res.shrink.inclusion, res.shrink.basis});
  return res;
}

}  // namespace meyerkit
