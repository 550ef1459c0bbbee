#include "meyerkit/cli.hpp"

#include <CLI11.hpp>

#include <ctime>
#include <functional>
#include <sstream>

#include "meyerkit/config.hpp"
#include "meyerkit/svg.hpp"

#ifndef MEYERKIT_VERSION
#define MEYERKIT_VERSION "0.0.0"
#endif

namespace meyerkit::cli {

namespace {

using io::json;

struct Args {
  std::string json_out;
  bool stamp = false;

  std::string cps, windows, points, input, spec, fset, gamma2, target, out, svg, report;
  std::vector<std::string> box, center;
  std::int64_t height = 50;
  std::uint64_t seed = 1;
  std::size_t samples = 256;
  bool interior = false;
  std::string margin = "1", min_packing, max_covering;
  std::string R, r, max_radius;
  std::string dilation;
  std::string patch, patch_a, patch_b, radius, tol = "1e-3", start = "5";
  bool trace = false;
  bool genuine = false;
};

struct Outcome {
  json report = json::object();
  bool pass = true;
  json violations = json::array();

  void violate(json v) {
    pass = false;
    violations.push_back(std::move(v));
  }
};

QuadExt number(const std::string& text, const std::string& flag) {
  try {
    return QuadExt::parse(text);
  } catch (const Error& e) {
    throw ConfigError(flag, e.what());
  }
}

Box box_arg(const std::vector<std::string>& v, std::size_t d, const std::string& flag = "--box") {
  if (v.size() != 2 * d) throw ConfigError(flag, "expected " + std::to_string(2 * d) + " values (lo hi per axis)");
  Box b;
  for (std::size_t k = 0; k < d; ++k) {
    QuadExt lo = number(v[2 * k], flag), hi = number(v[2 * k + 1], flag);
    if (hi < lo) throw ConfigError(flag, "lo > hi on axis " + std::to_string(k + 1));
    b.push_back({lo, hi});
  }
  return b;
}

json file_input(const std::string& path, const json& content) { return json{{"path", path}, {"content", content}}; }

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_points(const std::string& path, const MultiPointSet& P) {
  if (std::filesystem::path(path).extension() == ".json")
    io::write_file_atomic(path, io::to_json(P).dump(2) + "\n");
  else
    io::write_file_atomic(path, io::to_csv(P));
}

json points_json(const std::vector<QVector>& pts) {
  json out = json::array();
  for (const auto& x : pts) out.push_back(io::to_json(x));
  return out;
}

// A patch from a point file: seen from --center when given, otherwise the
// file is already centered and its carrier must be a cube [-R, R]^d.
Patch load_patch(const std::string& path, const std::vector<std::string>& center, const std::string& radius) {
  MultiPointSet P = io::load_pointset(path);
  const Box& c = P.carrier();
  QVector x(P.d(), QuadExt(0));
  if (!center.empty()) {
    if (center.size() != P.d()) throw ConfigError("--center", "expected " + std::to_string(P.d()) + " coordinates");
    for (std::size_t k = 0; k < P.d(); ++k) x[k] = number(center[k], "--center");
  }
  std::optional<QuadExt> room;
  for (std::size_t k = 0; k < P.d(); ++k) {
    QuadExt side = min(x[k] - c[k].lo, c[k].hi - x[k]);
    room = room ? min(*room, side) : side;
  }
  QuadExt R;
  if (!radius.empty()) {
    R = number(radius, "--radius");
    if (R > *room) throw ConfigError("--radius", "the ball of radius " + R.str() + " leaves the carrier of " + path);
  } else {
    if (center.empty())
      for (std::size_t k = 0; k < P.d(); ++k)
        if (c[k].lo != -c[k].hi || c[k].hi != c[0].hi)
          throw ConfigError(path, "carrier is not a centered cube; pass --radius or --center");
    R = *room;
  }
  if (qsign(R) <= 0) throw ConfigError(path, "patch radius must be positive");
  return make_patch(P, x, R);
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_validate(const Args& a) {
  CutProjectScheme S = io::load_cps(a.cps);
  ValidationReport rep = validate_cps(S, a.height, a.seed, a.samples);
  Outcome o;
  o.report["inputs"] = json{{"cps", file_input(a.cps, io::to_json(S))},
                            {"height_bound", a.height},
                            {"seed", a.seed},
                            {"samples", a.samples}};
  o.report["validation"] = io::to_json(rep);
  if (!rep.invertible) o.violate("embedding matrix [A; B] is singular");
  if (!rep.covering_verified) o.violate("covering box not verified on the samples");
  if (qsign(rep.separation) <= 0) o.violate("lattice not separated");
  return o;
}

Outcome cmd_generate(const Args& a) {
  CutProjectScheme S = io::load_cps(a.cps);
  WindowSet W = io::load_windows(a.windows);
  Box box = box_arg(a.box, S.d());
  MultiPointSet P = generate_model_multiset(S, W, box, a.interior ? WindowMode::Interior : WindowMode::Closed);
  Outcome o;
  o.report["inputs"] = json{{"cps", file_input(a.cps, io::to_json(S))},
                            {"windows", file_input(a.windows, io::to_json(W))},
                            {"box", io::to_json(box)},
                            {"mode", a.interior ? "interior" : "closed"}};
  json counts = json::array();
  for (std::size_t i = 0; i < P.color_count(); ++i)
    counts.push_back(json{{"color", P.colors()[i]}, {"count", P.points(i).size()}});
  o.report["counts"] = counts;
  o.report["total"] = P.size();
  if (!a.out.empty())
    write_points(a.out, P);
  else
    o.report["points"] = io::to_json(P);
  if (!a.svg.empty()) io::write_file_atomic(a.svg, svg_figure(P, S.label().empty() ? "model set" : S.label(), &S, &W));
  return o;
}

Outcome cmd_check(const Args& a) {
  CutProjectScheme S = io::load_cps(a.cps);
  WindowSet W = io::load_windows(a.windows);
  MultiPointSet P = io::load_pointset(a.points);
  Box box = a.box.empty() ? P.carrier() : box_arg(a.box, S.d());
  InterpolationReport rep = check_interpolation(P, S, W, box);
  Outcome o;
  o.report["inputs"] = json{{"cps", file_input(a.cps, io::to_json(S))},
                            {"windows", file_input(a.windows, io::to_json(W))},
                            {"points", file_input(a.points, io::to_json(P))},
                            {"box", io::to_json(box)}};
  o.report["interpolation"] = io::to_json(rep);
  for (const auto& c : rep.colors) {
    for (const auto& x : c.missing_interior)
      o.violate(json{{"color", c.color}, {"kind", "missing_interior"}, {"point", io::to_json(x)}});
    for (const auto& x : c.outside_closed)
      o.violate(json{{"color", c.color}, {"kind", "outside_closed"}, {"point", io::to_json(x)}});
    for (const auto& x : c.not_in_lattice)
      o.violate(json{{"color", c.color}, {"kind", "not_in_lattice"}, {"point", io::to_json(x)}});
  }
  o.pass = o.pass && rep.passes();
  return o;
}

Outcome cmd_delone(const Args& a) {
  MultiPointSet P = io::load_pointset(a.points);
  QuadExt margin = number(a.margin, "--margin");
  QuadExt packing = packing_radius_squared(P);
  CoveringBound cov = covering_radius(P, margin);
  Outcome o;
  o.report["inputs"] = json{{"points", file_input(a.points, io::to_json(P))}, {"margin", io::to_json(margin)}};
  o.report["packing_radius_squared"] = io::to_json(packing);
  o.report["covering_radius"] = io::to_json(cov);
  if (!a.min_packing.empty() && packing < number(a.min_packing, "--min-packing-sq"))
    o.violate(json{{"property", "packing"}, {"value", io::to_json(packing)}});
  if (!a.max_covering.empty() && cov.value + cov.resolution > number(a.max_covering, "--max-covering"))
    o.violate(json{{"property", "covering"}, {"value", io::to_json(cov.value)}, {"resolution", io::to_json(cov.resolution)}});
  return o;
}

Outcome cmd_meyer(const Args& a) {
  MultiPointSet P = io::load_pointset(a.points);
  std::vector<QVector> F = io::load_fset(a.fset, P.d());
  QuadExt R = number(a.R, "--R");
  auto defect = meyer_defect(P, F, R);
  Outcome o;
  o.report["inputs"] = json{{"points", file_input(a.points, io::to_json(P))},
                            {"fset", file_input(a.fset, points_json(F))},
                            {"R", io::to_json(R)}};
  o.report["defect_size"] = defect.size();
  for (const auto& x : defect) o.violate(json{{"difference", io::to_json(x)}});
  return o;
}

Outcome cmd_repetitivity(const Args& a) {
  MultiPointSet P = io::load_pointset(a.points);
  QuadExt r = number(a.r, "--r");
  RepetitionResult res = repetition_radius(P, r);
  Outcome o;
  o.report["inputs"] = json{{"points", file_input(a.points, io::to_json(P))}, {"r", io::to_json(r)}};
  o.report["repetition"] = io::to_json(res);
  if (!res.radius)
    o.violate("no repetition radius within the carrier");
  else if (!a.max_radius.empty() && *res.radius > number(a.max_radius, "--max-radius"))
    o.violate(json{{"property", "repetition radius"}, {"value", io::to_json(*res.radius)}});
  return o;
}

std::string chain_text(const MinimalizationResult& res) {
  std::ostringstream os;
  os << "chain lambda <= lambda_under <= delta: " << (res.chain.pass ? "pass" : "FAIL") << "\n";
  os << "points: lambda " << res.lambda.size() << ", lambda_under " << res.lambda_under.size() << ", delta "
     << res.delta.size() << "\n";
  os << "strict: left " << res.chain.strict_left << ", right " << res.chain.strict_right << "\n";
  os << "structure group index " << res.shrink.index.get_str() << ", redundancy order " << res.redundancy.size()
     << ", finite group " << res.cps_min.group().str() << "\n";
  for (const auto& s : res.steps)
    os << "interior " << s.relation << ": " << (s.holds ? "holds" : "FAILS") << " (" << s.violations << ")\n";
  for (const auto& v : res.chain.violations) {
    os << "violation " << v.relation << " color " << v.color << " at";
    for (const auto& x : v.point) os << ' ' << x.str();
    os << "\n";
  }
  return os.str();
}

Outcome cmd_minimize(const Args& a) {
  io::MeyerConfig cfg = io::load_meyer_config(a.input);
  if (!a.dilation.empty()) {
    cfg.options.dilation = number(a.dilation, "--dilation");
    if (qsign(cfg.options.dilation) <= 0) throw ConfigError("--dilation", "must be positive");
  }
  Box box = box_arg(a.box, cfg.input.ambient.d());
  MinimalizationResult res = minimal_model_set(cfg.input, box, cfg.options);
  json full = io::to_json(res);

  Outcome o;
  json inputs{{"ambient", io::to_json(cfg.input.ambient)},
              {"windows", io::to_json(cfg.input.ambient_windows)},
              {"mode", cfg.input.mode == MeyerInput::Mode::Symbolic ? "symbolic" : "empirical"}};
  if (cfg.input.mode == MeyerInput::Mode::Symbolic)
    inputs["sub_windows"] = io::to_json(cfg.input.sub_windows);
  else
    inputs["points"] = io::to_json(cfg.input.points);
  inputs["dilation"] = io::to_json(cfg.options.dilation);
  o.report["inputs"] = json{{"input", file_input(a.input, inputs)}, {"box", io::to_json(box)}};
  o.report["summary"] = json{{"chain_pass", res.chain.pass},
                             {"strict_left", res.chain.strict_left},
                             {"strict_right", res.chain.strict_right},
                             {"structure_index", res.shrink.index.get_str()},
                             {"redundancy_order", res.redundancy.size()},
                             {"finite_group", io::to_json(res.cps_min.group())},
                             {"windows_regular", res.V_regular},
                             {"lambda", res.lambda.size()},
                             {"lambda_under", res.lambda_under.size()},
                             {"delta", res.delta.size()}};
  if (!a.out.empty())
    io::write_file_atomic(a.out, full.dump(2) + "\n");
  else
    o.report["result"] = full;
  if (!a.report.empty()) io::write_file_atomic(a.report, chain_text(res));
  if (!a.svg.empty()) {
    std::vector<std::string> labels;
    for (const char* stage : {"lambda", "lambda_under", "delta"})
      for (const auto& c : res.lambda.colors()) labels.push_back(std::string(stage) + " " + c);
    MultiPointSet all(res.lambda.d(), labels, box);
    std::size_t k = 0;
    for (const MultiPointSet* P : {&res.lambda, &res.lambda_under, &res.delta})
      for (std::size_t i = 0; i < P->color_count(); ++i, ++k)
        for (const auto& x : P->points(i)) all.add(k, x);
    io::write_file_atomic(a.svg, svg_figure(all, "pattern, minimal model set, ambient model set"));
  }

  for (const auto& v : res.chain.violations)
    o.violate(json{{"relation", v.relation}, {"color", v.color}, {"point", io::to_json(v.point)}});
  for (const auto& s : res.steps)
    if (!s.holds) o.violate(json{{"relation", "interior " + s.relation}, {"count", s.violations}});
  for (std::size_t i = 0; i < res.morphisms.size(); ++i) {
    if (!validate_morphism(res.morphisms[i]).ok) o.violate(json{{"morphism", i}, {"property", "validation"}});
    if (!onto_open_check(res.morphisms[i]).pass) o.violate(json{{"morphism", i}, {"property", "onto/open"}});
  }
  if (!res.V_regular) o.violate("final windows are not regular");
  o.pass = o.pass && res.pass();
  return o;
}

Outcome cmd_omega(const Args& a) {
  CutProjectScheme S = io::load_cps(a.cps);
  WindowSet V = io::load_windows(a.windows);
  Patch patch = load_patch(a.patch, a.center, a.radius);
  QuadExt tol = number(a.tol, "--tol"), start = number(a.start, "--start");
  Outcome o;
  o.report["inputs"] = json{{"cps", file_input(a.cps, io::to_json(S))},
                            {"windows", file_input(a.windows, io::to_json(V))},
                            {"patch", file_input(a.patch, io::to_json(patch.points))},
                            {"radius", io::to_json(patch.radius)},
                            {"tol", io::to_json(tol)},
                            {"start", io::to_json(start)}};
  try {
    OmegaPoint pt = omega_point(S, V, patch, tol, start);
    o.report["omega"] = io::to_json(pt, a.trace);
    if (!pt.resolved) o.violate("patch exhausted before the region shrank to tol");
  } catch (const InconsistentPatch& e) {
    o.report["omega"] = nullptr;
    o.violate(json{{"property", "inconsistent patch"}, {"message", e.what()}});
  } catch (const UnresolvableCoordinates& e) {
    o.report["omega"] = nullptr;
    o.violate(json{{"property", "point outside the structure group"}, {"message", e.what()}});
  }
  return o;
}

Outcome cmd_srp(const Args& a) {
  CutProjectScheme S = io::load_cps(a.cps);
  WindowSet V = io::load_windows(a.windows);
  Patch pa = load_patch(a.patch_a, {}, a.radius), pb = load_patch(a.patch_b, {}, a.radius);
  QuadExt tol = number(a.tol, "--tol");
  SrpResult r = srp_test(S, V, pa, pb, tol);
  Outcome o;
  o.report["inputs"] = json{{"cps", file_input(a.cps, io::to_json(S))},
                            {"windows", file_input(a.windows, io::to_json(V))},
                            {"patch_a", file_input(a.patch_a, io::to_json(pa.points))},
                            {"patch_b", file_input(a.patch_b, io::to_json(pb.points))},
                            {"tol", io::to_json(tol)}};
  o.report["srp"] = io::to_json(r);
  if (r.verdict == SrpVerdict::Unresolved) o.violate("verdict unresolved at the available patch radius");
  return o;
}

Outcome cmd_morphism_validate(const Args& a) {
  MorphismSpec spec = io::load_morphism(a.spec);
  MorphismReport rep = validate_morphism(spec);
  OntoOpen oo = onto_open_check(spec);
  Outcome o;
  o.report["inputs"] = json{{"spec", file_input(a.spec, io::to_json(spec))}};
  o.report["validation"] = io::to_json(rep);
  o.report["onto_open"] = io::to_json(oo);
  for (const auto& f : rep.failures) o.violate(f);
  if (!oo.pass) o.violate("morphism is not onto and open");
  return o;
}

Outcome cmd_morphism_amalgam(const Args& a) {
  CutProjectScheme S1 = io::load_cps(a.cps);
  IntMatrix K = io::load_basis(a.gamma2);
  Outcome o;
  json inputs{{"cps", file_input(a.cps, io::to_json(S1))}, {"gamma2", file_input(a.gamma2, io::to_json(K))}};
  std::optional<CutProjectScheme> result;
  json obstruction = nullptr;
  if (!a.genuine) {
    auto split = amalgamated_cps(S1, K);
    if (auto* s = std::get_if<CutProjectScheme>(&split))
      result = *s;
    else
      obstruction = std::get<SplitObstruction>(split).message;
  }
  json from_F = nullptr;
  if (!result) {
    Amalgam am = genuine_amalgam(S1, K);
    result = am.cps;
    from_F = io::to_json(am.from_F);
  }
  o.report["split"] = from_F.is_null();
  o.report["split_obstruction"] = obstruction;
  o.report["cps"] = io::to_json(*result);
  o.report["from_F"] = from_F;
  if (!a.target.empty()) {
    CutProjectScheme T = io::load_cps(a.target);
    inputs["target"] = file_input(a.target, io::to_json(T));
    o.report["same_as_target_up_to_basis"] = same_cps_up_to_basis(T, *result).has_value();
    try {
      o.report["to_target"] = io::to_json(amalgam_to_target(*result, T));
    } catch (const InvalidArgument& e) {
      o.report["to_target"] = nullptr;
      o.violate(json{{"property", "map onto the target group"}, {"message", e.what()}});
    }
  }
  json report{{"inputs", inputs}};
  report.update(o.report);
  o.report = report;
  if (!a.out.empty()) io::write_file_atomic(a.out, io::to_json(*result).dump(2) + "\n");
  return o;
}

void common(CLI::App* sub, Args& a) {
  sub->add_option("--json", a.json_out, "Write the JSON report to this file instead of stdout");
  sub->add_flag("--stamp", a.stamp, "Add a timestamp to the report");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Exact cut-and-project schemes, model sets and minimal model sets", "meyerkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("meyerkit ") + MEYERKIT_VERSION);

  std::vector<std::pair<CLI::App*, std::function<Outcome(const Args&)>>> commands;
  std::map<CLI::App*, std::string> names;
  auto add = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn, const std::string& full) {
    CLI::App* sub = parent->add_subcommand(name, help);
    common(sub, a);
    commands.emplace_back(sub, fn);
    names[sub] = full;
    return sub;
  };

  auto* validate = add(&app, "validate", "Check a cut-and-project scheme", cmd_validate, "validate");
  validate->add_option("--cps", a.cps, "Scheme JSON")->required();
  validate->add_option("--height", a.height, "Height bound of the density search")->capture_default_str();
  validate->add_option("--seed", a.seed, "Seed of the covering samples")->capture_default_str();
  validate->add_option("--samples", a.samples, "Number of covering samples")->capture_default_str();

  auto* generate = add(&app, "generate", "Generate a model multiple set", cmd_generate, "generate");
  generate->add_option("--cps", a.cps, "Scheme JSON")->required();
  generate->add_option("--windows,--window", a.windows, "Windows JSON")->required();
  generate->add_option("--box", a.box, "Physical box, lo hi per axis")->required()->expected(2, 6);
  generate->add_flag("--interior", a.interior, "Use the window interiors");
  generate->add_option("--out", a.out, "Point file (.csv or .json)");
  generate->add_option("--svg", a.svg, "SVG figure");

  auto* check = add(&app, "check", "Check interior <= points <= closed model set", cmd_check, "check");
  check->add_option("--cps", a.cps, "Scheme JSON")->required();
  check->add_option("--windows,--window", a.windows, "Windows JSON")->required();
  check->add_option("--points", a.points, "Point file (.csv or .json)")->required();
  check->add_option("--box", a.box, "Box to check on (default: the carrier)")->expected(2, 6);

  CLI::App* verify = app.add_subcommand("verify", "Finite-scale Delone, Meyer and repetitivity checks");
  verify->require_subcommand(1);
  auto* delone = add(verify, "delone", "Packing and covering radii", cmd_delone, "verify delone");
  delone->add_option("--points", a.points, "Point file")->required();
  delone->add_option("--margin", a.margin, "Carrier margin for the covering radius")->capture_default_str();
  delone->add_option("--min-packing-sq", a.min_packing, "Fail below this squared packing radius");
  delone->add_option("--max-covering", a.max_covering, "Fail above this covering radius");
  auto* meyer = add(verify, "meyer", "Meyer defect against a finite set", cmd_meyer, "verify meyer");
  meyer->add_option("--points", a.points, "Point file")->required();
  meyer->add_option("--fset", a.fset, "Finite set JSON {\"fset\": [...]}")->required();
  meyer->add_option("--R", a.R, "Radius of the tested differences")->required();
  auto* rep = add(verify, "repetitivity", "Patch recurrence radius", cmd_repetitivity, "verify repetitivity");
  rep->add_option("--points", a.points, "Point file")->required();
  rep->add_option("--r", a.r, "Patch radius")->required();
  rep->add_option("--max-radius", a.max_radius, "Fail above this repetition radius");

  auto* minimize = add(&app, "minimize", "Minimal model set containing a pattern", cmd_minimize, "minimize");
  minimize->add_option("--input", a.input, "Pattern JSON")->required();
  minimize->add_option("--box", a.box, "Physical box, lo hi per axis")->required()->expected(2, 6);
  minimize->add_option("--out", a.out, "Full result JSON");
  minimize->add_option("--report", a.report, "Chain report text");
  minimize->add_option("--svg", a.svg, "SVG figure of the three point sets");
  minimize->add_option("--dilation", a.dilation, "Dilation of empirical star closures");

  auto* omega = add(&app, "omega", "Internal point of a patch", cmd_omega, "omega");
  omega->add_option("--cps", a.cps, "Scheme JSON")->required();
  omega->add_option("--windows,--window", a.windows, "Windows JSON")->required();
  omega->add_option("--patch", a.patch, "Point file")->required();
  omega->add_option("--center", a.center, "View the pattern from this point")->expected(1, 3);
  omega->add_option("--radius", a.radius, "Patch radius (default: largest available)");
  omega->add_option("--tol", a.tol, "Target diameter")->capture_default_str();
  omega->add_option("--start", a.start, "First truncation radius")->capture_default_str();
  omega->add_flag("--trace", a.trace, "Include the region at each radius");

  auto* srp = add(&app, "srp", "Compare the internal fibers of two patches", cmd_srp, "srp");
  srp->add_option("--cps", a.cps, "Scheme JSON")->required();
  srp->add_option("--windows,--window", a.windows, "Windows JSON")->required();
  srp->add_option("--patch-a", a.patch_a, "Centered point file")->required();
  srp->add_option("--patch-b", a.patch_b, "Centered point file")->required();
  srp->add_option("--radius", a.radius, "Patch radius (default: from the carriers)");
  srp->add_option("--tol", a.tol, "Resolution of the fibers")->capture_default_str();

  CLI::App* morphism = app.add_subcommand("morphism", "Scheme morphisms and amalgams");
  morphism->require_subcommand(1);
  auto* mval = add(morphism, "validate", "Validate a morphism", cmd_morphism_validate, "morphism validate");
  mval->add_option("--spec", a.spec, "Morphism JSON")->required();
  auto* mam = add(morphism, "amalgam", "Extend a scheme to a finite-index superlattice", cmd_morphism_amalgam,
                  "morphism amalgam");
  mam->add_option("--cps", a.cps, "Scheme JSON")->required();
  mam->add_option("--gamma2", a.gamma2, "Basis JSON {\"basis\": [...]}")->required();
  mam->add_option("--target", a.target, "Scheme the amalgam should reproduce");
  mam->add_flag("--genuine", a.genuine, "Always build the genuine amalgam");
  mam->add_option("--out", a.out, "Amalgam scheme JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kOk : kConfigError;
  }

  for (const auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    try {
      Outcome o = fn(a);
      json report{{"command", names[sub]}, {"version", MEYERKIT_VERSION}};
      if (a.stamp) report["timestamp"] = timestamp();
      report.update(o.report);
      report["pass"] = o.pass;
      report["violations"] = o.violations;
      std::string text = report.dump(2) + "\n";
      if (a.json_out.empty())
        out << text;
      else
        io::write_file_atomic(a.json_out, text);
      return o.pass ? kOk : kCheckFailed;
    } catch (const ConfigError& e) {
      err << "config error at " << e.what() << "\n";
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
    } catch (const std::filesystem::filesystem_error& e) {
      err << "error: " << e.what() << "\n";
    }
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace meyerkit::cli
