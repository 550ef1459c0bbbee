#pragma once

#include <filesystem>
#include <vector>

#include "meyerkit/io.hpp"
#include "meyerkit/minimal.hpp"
#include "meyerkit/morphism.hpp"
#include "meyerkit/omega.hpp"

namespace meyerkit::io {

// Compound configuration files. Any sub-object may be given inline or as a
// path relative to the directory of the referring file.

/// The JSON value itself, or the contents of the JSON file it names.
json resolve_ref(const json& j, const std::filesystem::path& base, const std::string& where);

struct MeyerConfig {
  MeyerInput input;
  MinimalOptions options;
};

/// {"ambient", "windows", "mode": "symbolic" | "empirical", "sub_windows" or
/// "points", optional "dilation" and "sample_radius"}. The mode defaults to
/// symbolic when "sub_windows" is present. "points" may name a CSV file.
MeyerConfig meyer_config_from_json(const json& j, const std::filesystem::path& base, const std::string& where);
MeyerConfig load_meyer_config(const std::filesystem::path& path);

/// {"source", "target", "T", "f", "gamma_inclusion"}; the groups of f default
/// to the declared groups of the two schemes.
MorphismSpec morphism_from_json(const json& j, const std::filesystem::path& base, const std::string& where);
MorphismSpec load_morphism(const std::filesystem::path& path);
json to_json(const MorphismSpec& spec);

/// {"fset": [[x1, ..., xd], ...]}
std::vector<QVector> load_fset(const std::filesystem::path& path, std::size_t d);
/// {"basis": [[...], ...]}, columns are the basis vectors.
IntMatrix load_basis(const std::filesystem::path& path);

// Reports.

json to_json(const ValidationReport& r);
json to_json(const InterpolationReport& r);
json to_json(const CoveringBound& c);
json to_json(const RepetitionResult& r);
json to_json(const ChainReport& r);
json to_json(const MorphismReport& r);
json to_json(const OntoOpen& r);
json to_json(const StarClosure& c);
json to_json(const ShrunkScheme& s);
/// Every intermediate scheme, window set and point set of the pipeline.
json to_json(const MinimalizationResult& r);
json to_json(const OmegaPoint& p, bool with_trace);
json to_json(const SrpResult& r);

}  // namespace meyerkit::io
