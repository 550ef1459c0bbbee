#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "meyerkit/cps.hpp"
#include "meyerkit/modelset.hpp"
#include "meyerkit/pointset.hpp"

namespace meyerkit::io {

using json = nlohmann::ordered_json;

// Parsers take the JSON value and its location (file name plus JSON pointer)
// and throw ConfigError naming that location.

json to_json(const QuadExt& x);
QuadExt quad_from_json(const json& j, const std::string& where);

json to_json(const FinAbGroup& F);
FinAbGroup group_from_json(const json& j, const std::string& where);

json to_json(const FinElement& f);
FinElement element_from_json(const json& j, const std::string& where);

json to_json(const Box& b);
Box box_from_json(const json& j, std::size_t dim, const std::string& where);

json to_json(const IntVector& z);
IntVector intvector_from_json(const json& j, const std::string& where);
json to_json(const IntMatrix& M);
IntMatrix intmatrix_from_json(const json& j, const std::string& where);

json to_json(const QVector& v);
QVector qvector_from_json(const json& j, const std::string& where);

json to_json(const Region& W);
Region region_from_json(const json& j, const std::string& where);

json to_json(const HPoint& p);

json to_json(const QuadMatrix& M);
QuadMatrix quadmatrix_from_json(const json& j, const std::string& where);

/// {"domain", "codomain", "images"}; the groups may be supplied by the caller.
json to_json(const FinHom& h);
FinHom finhom_from_json(const json& j, const std::string& where, const std::optional<FinAbGroup>& domain = std::nullopt,
                        const std::optional<FinAbGroup>& codomain = std::nullopt);

/// {"d", "m", "D", "F", "A", "B", "c", "label"}; c lists the images of the
/// basis vectors. The declared F is recorded (the scheme shrinks it).
json to_json(const CutProjectScheme& S);
CutProjectScheme cps_from_json(const json& j, const std::string& where);

/// {"windows": [{"color": ..., "region": ...}, ...]}
json to_json(const WindowSet& W);
WindowSet windows_from_json(const json& j, const std::string& where);

/// {"d", "carrier", "colors": [{"label", "points": [[x...], ...]}]}
json to_json(const MultiPointSet& P);
MultiPointSet pointset_from_json(const json& j, const std::string& where);

/// CSV with columns x1..xd,color. Comment lines "# carrier lo hi ..." and
/// "# colors a b ..." record the carrier and the color order.
std::string to_csv(const MultiPointSet& P);
MultiPointSet pointset_from_csv(const std::string& text, const std::string& where,
                                const std::optional<Box>& carrier = std::nullopt);

json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

CutProjectScheme load_cps(const std::filesystem::path& path);
WindowSet load_windows(const std::filesystem::path& path);
/// Point sets from .csv or .json, chosen by extension.
MultiPointSet load_pointset(const std::filesystem::path& path, const std::optional<Box>& carrier = std::nullopt);

}  // namespace meyerkit::io
