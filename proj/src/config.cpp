#include "meyerkit/config.hpp"

#include "io_detail.hpp"

namespace meyerkit::io {

using namespace detail;

namespace {

std::filesystem::path base_of(const std::filesystem::path& path) { return path.parent_path(); }

std::string ref_where(const json& j, const std::filesystem::path& base, const std::string& where) {
  return j.is_string() ? (base / j.get<std::string>()).string() + ":" : where;
}

json points_json(const std::vector<QVector>& pts) {
  json out = json::array();
  for (const auto& x : pts) out.push_back(to_json(x));
  return out;
}

}  // namespace

json resolve_ref(const json& j, const std::filesystem::path& base, const std::string& where) {
  if (j.is_object()) return j;
  if (!j.is_string()) fail(where, "expected an object or a file name");
  return read_json_file(base / j.get<std::string>());
}

MeyerConfig meyer_config_from_json(const json& j, const std::filesystem::path& base, const std::string& where) {
  MeyerConfig cfg;
  MeyerInput& inp = cfg.input;
  const json& amb = field(j, "ambient", where);
  inp.ambient = cps_from_json(resolve_ref(amb, base, child(where, "ambient")), ref_where(amb, base, child(where, "ambient")));
  const json& win = field(j, "windows", where);
  inp.ambient_windows =
      windows_from_json(resolve_ref(win, base, child(where, "windows")), ref_where(win, base, child(where, "windows")));

  std::string mode = j.contains("points") && !j.contains("sub_windows") ? "empirical" : "symbolic";
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) fail(child(where, "mode"), "expected \"symbolic\" or \"empirical\"");
    mode = j["mode"].get<std::string>();
  }
  if (mode == "symbolic") {
    inp.mode = MeyerInput::Mode::Symbolic;
    const json& sub = field(j, "sub_windows", where);
    inp.sub_windows = windows_from_json(resolve_ref(sub, base, child(where, "sub_windows")),
                                        ref_where(sub, base, child(where, "sub_windows")));
  } else if (mode == "empirical") {
    inp.mode = MeyerInput::Mode::Empirical;
    const json& pts = field(j, "points", where);
    if (pts.is_string() && std::filesystem::path(pts.get<std::string>()).extension() == ".csv")
      inp.points = load_pointset(base / pts.get<std::string>());
    else
      inp.points = pointset_from_json(resolve_ref(pts, base, child(where, "points")), ref_where(pts, base, child(where, "points")));
  } else {
    fail(child(where, "mode"), "unknown mode \"" + mode + "\"");
  }
  if (j.contains("dilation")) {
    cfg.options.dilation = quad_from_json(j["dilation"], child(where, "dilation"));
    if (qsign(cfg.options.dilation) <= 0) fail(child(where, "dilation"), "must be positive");
  }
  if (j.contains("sample_radius")) cfg.options.sample_radius = quad_from_json(j["sample_radius"], child(where, "sample_radius"));
  try {
    inp.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return cfg;
}

MeyerConfig load_meyer_config(const std::filesystem::path& path) {
  return meyer_config_from_json(read_json_file(path), base_of(path), path.string() + ":");
}

MorphismSpec morphism_from_json(const json& j, const std::filesystem::path& base, const std::string& where) {
  const json& src = field(j, "source", where);
  const json& tgt = field(j, "target", where);
  CutProjectScheme S1 = cps_from_json(resolve_ref(src, base, child(where, "source")), ref_where(src, base, child(where, "source")));
  CutProjectScheme S2 = cps_from_json(resolve_ref(tgt, base, child(where, "target")), ref_where(tgt, base, child(where, "target")));
  QuadMatrix T = quadmatrix_from_json(field(j, "T", where), child(where, "T"));
  FinHom f = j.contains("f") ? finhom_from_json(j["f"], child(where, "f"), S1.declared_group(), S2.declared_group())
                             : FinHom::zero(S1.declared_group(), S2.declared_group());
  IntMatrix G = intmatrix_from_json(field(j, "gamma_inclusion", where), child(where, "gamma_inclusion"));
  return {S1, S2, T, f, G};
}

MorphismSpec load_morphism(const std::filesystem::path& path) {
  return morphism_from_json(read_json_file(path), base_of(path), path.string() + ":");
}

json to_json(const MorphismSpec& spec) {
  return json{{"source", to_json(spec.source)},
              {"target", to_json(spec.target)},
              {"T", to_json(spec.T)},
              {"f", to_json(spec.f)},
              {"gamma_inclusion", to_json(spec.gamma_inclusion)}};
}

std::vector<QVector> load_fset(const std::filesystem::path& path, std::size_t d) {
  json j = read_json_file(path);
  std::string where = path.string() + ":";
  const json& arr = array_at(field(j, "fset", where), child(where, "fset"));
  std::vector<QVector> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    QVector x = qvector_from_json(arr[k], child(child(where, "fset"), k));
    if (x.size() != d) fail(child(child(where, "fset"), k), "expected " + std::to_string(d) + " coordinates");
    out.push_back(std::move(x));
  }
  return out;
}

IntMatrix load_basis(const std::filesystem::path& path) {
  json j = read_json_file(path);
  std::string where = path.string() + ":";
  return intmatrix_from_json(field(j, "basis", where), child(where, "basis"));
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const ValidationReport& r) {
  const DensityReport& dn = r.density;
  json density{{"verdict", dn.verdict},
               {"height_bound", dn.height_bound},
               {"integer_obstruction_rank", dn.integer_obstruction_rank},
               {"real_annihilator_rank", dn.real_annihilator_rank},
               {"obstruction_within_bound", dn.obstruction_within_bound}};
  density["witness"] = dn.witness ? to_json(*dn.witness) : json(nullptr);
  density["witness_height"] = dn.witness_height ? json(dn.witness_height->get_str()) : json(nullptr);
  density["annihilator_witness"] = dn.annihilator_witness ? to_json(*dn.annihilator_witness) : json(nullptr);
  return json{{"ok", r.ok()},
              {"determinant", to_json(r.determinant)},
              {"invertible", r.invertible},
              {"physical_injective", r.physical_injective},
              {"density", density},
              {"c_surjective", r.c_surjective},
              {"declared_group_size", r.declared_group_size},
              {"image_group_size", r.image_group_size},
              {"separation", to_json(r.separation)},
              {"separation_witness", to_json(r.separation_witness)},
              {"covering_box", to_json(r.covering_box)},
              {"covering_samples", r.covering_samples},
              {"covering_verified", r.covering_verified}};
}

json to_json(const InterpolationReport& r) {
  json colors = json::array();
  for (const auto& c : r.colors)
    colors.push_back(json{{"color", c.color},
                          {"missing_interior", points_json(c.missing_interior)},
                          {"outside_closed", points_json(c.outside_closed)},
                          {"not_in_lattice", points_json(c.not_in_lattice)},
                          {"slack", points_json(c.slack)}});
  return json{{"pass", r.passes()}, {"hard_failures", r.hard_failures()}, {"colors", colors}};
}

json to_json(const CoveringBound& c) {
  return json{{"value", to_json(c.value)}, {"resolution", to_json(c.resolution)}, {"exact", c.exact}};
}

json to_json(const RepetitionResult& r) {
  return json{{"radius", r.radius ? to_json(*r.radius) : json(nullptr)},
              {"patch_classes", r.patch_classes},
              {"verified_centers", r.verified_centers},
              {"scope", "finite-scale evidence on the carrier"}};
}

json to_json(const ChainReport& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back(json{{"color", x.color}, {"point", to_json(x.point)}, {"relation", x.relation}});
  return json{{"pass", r.pass}, {"strict_left", r.strict_left}, {"strict_right", r.strict_right}, {"violations", v}};
}

json to_json(const MorphismReport& r) { return json{{"ok", r.ok}, {"failures", r.failures}}; }

json to_json(const OntoOpen& r) {
  return json{{"pass", r.pass}, {"onto", r.onto}, {"open", r.open}, {"image_open_subgroup", r.image_open_subgroup}};
}

json to_json(const StarClosure& c) {
  return json{{"windows", to_json(c.V)}, {"outer", c.outer}, {"resolution", to_json(c.resolution)}};
}

json to_json(const ShrunkScheme& s) {
  return json{{"cps", to_json(s.cps)},
              {"basis", to_json(s.basis)},
              {"index", s.index.get_str()},
              {"inclusion", to_json(s.inclusion)}};
}

json to_json(const MinimalizationResult& r) {
  json redundancy = json::array();
  for (const auto& f : r.redundancy) redundancy.push_back(to_json(f));
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(json{{"relation", s.relation}, {"holds", s.holds}, {"violations", s.violations}});
  json morphisms = json::array();
  for (const auto& m : r.morphisms)
    morphisms.push_back(json{{"spec", to_json(m)},
                             {"validation", to_json(validate_morphism(m))},
                             {"onto_open", to_json(onto_open_check(m))}});
  return json{{"pass", r.pass()},
              {"star_closure", to_json(r.V1)},
              {"redundancy", redundancy},
              {"quotient", json{{"cps", to_json(r.cps2)}, {"windows", to_json(r.V2)}, {"projection", to_json(r.quotient_projection)}}},
              {"shrink", to_json(r.shrink)},
              {"cps_min", to_json(r.cps_min)},
              {"windows", to_json(r.V)},
              {"windows_regular", r.V_regular},
              {"lambda", to_json(r.lambda)},
              {"lambda_under", to_json(r.lambda_under)},
              {"delta", to_json(r.delta)},
              {"chain", to_json(r.chain)},
              {"interior_steps", steps},
              {"morphisms", morphisms}};
}

json to_json(const OmegaPoint& p, bool with_trace) {
  json out{{"resolved", p.resolved},
           {"point", to_json(p.point)},
           {"certified_radius", to_json(p.certified_radius)},
           {"R", to_json(p.R)}};
  if (with_trace) {
    json trace = json::array();
    for (const auto& s : p.trace)
      trace.push_back(json{{"R", to_json(s.R)}, {"diameter", to_json(region_diameter(s.region).value)}, {"region", to_json(s.region)}});
    out["trace"] = trace;
  }
  return out;
}

json to_json(const SrpResult& r) {
  return json{{"verdict", to_string(r.verdict)},
              {"R", to_json(r.R)},
              {"a", r.a ? to_json(*r.a, false) : json(nullptr)},
              {"b", r.b ? to_json(*r.b, false) : json(nullptr)}};
}

}  // namespace meyerkit::io
