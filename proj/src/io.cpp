#include "meyerkit/io.hpp"

#include <fstream>
#include <sstream>

#include "io_detail.hpp"

namespace meyerkit::io {

using namespace detail;

// ---------------------------------------------------------------------------
// Scalars and small objects

json to_json(const QuadExt& x) {
  return json{{"a", rational_str(x.a())}, {"b", rational_str(x.b())}, {"D", x.D()}};
}

QuadExt quad_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return QuadExt(j.get<long>());
    if (j.is_string()) return QuadExt::parse(j.get<std::string>());
    if (j.is_object()) {
      Rational a = rational_field(field(j, "a", where), child(where, "a"));
      Rational b = j.contains("b") ? rational_field(j["b"], child(where, "b")) : Rational(0);
      std::int64_t D = j.contains("D") ? int_from_json(j["D"], child(where, "D")) : 1;
      return QuadExt(a, b, D);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
  fail(where, "expected a number as {\"a\",\"b\",\"D\"}, a string or an integer");
}

json to_json(const FinAbGroup& F) { return json{{"orders", F.orders()}}; }

FinAbGroup group_from_json(const json& j, const std::string& where) {
  const json& orders = j.is_array() ? j : field(j, "orders", where);
  std::vector<std::int64_t> q;
  for (std::size_t i = 0; i < array_at(orders, where).size(); ++i) q.push_back(int_from_json(orders[i], child(where, i)));
  try {
    return FinAbGroup(q);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

json to_json(const FinElement& f) { return json(f); }

FinElement element_from_json(const json& j, const std::string& where) {
  FinElement f;
  for (std::size_t i = 0; i < array_at(j, where).size(); ++i) f.push_back(int_from_json(j[i], child(where, i)));
  return f;
}

json to_json(const Box& b) {
  json out = json::array();
  for (const auto& iv : b) out.push_back(json::array({to_json(iv.lo), to_json(iv.hi)}));
  return out;
}

Box box_from_json(const json& j, std::size_t dim, const std::string& where) {
  array_at(j, where);
  if (j.size() != dim) fail(where, "expected " + std::to_string(dim) + " intervals");
  Box b;
  for (std::size_t k = 0; k < dim; ++k) {
    const json& iv = array_at(j[k], child(where, k));
    if (iv.size() != 2) fail(child(where, k), "interval must be [lo, hi]");
    QuadExt lo = quad_from_json(iv[0], child(child(where, k), 0));
    QuadExt hi = quad_from_json(iv[1], child(child(where, k), 1));
    if (hi < lo) fail(child(where, k), "interval with lo > hi");
    b.push_back({lo, hi});
  }
  return b;
}

json to_json(const IntVector& z) {
  json out = json::array();
  for (const auto& x : z) {
    if (x.fits_slong_p())
      out.push_back(x.get_si());
    else
      out.push_back(x.get_str());
  }
  return out;
}

IntVector intvector_from_json(const json& j, const std::string& where) {
  IntVector z;
  for (std::size_t i = 0; i < array_at(j, where).size(); ++i) {
    if (j[i].is_number_integer()) {
      z.emplace_back(j[i].get<long>());
    } else if (j[i].is_string()) {
      Integer v;
      if (v.set_str(j[i].get<std::string>(), 10) != 0) fail(child(where, i), "expected an integer");
      z.push_back(v);
    } else {
      fail(child(where, i), "expected an integer");
    }
  }
  return z;
}

json to_json(const IntMatrix& M) {
  json out = json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) out.push_back(to_json(M.row(i)));
  return out;
}

IntMatrix intmatrix_from_json(const json& j, const std::string& where) {
  array_at(j, where);
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(intvector_from_json(j[i], child(where, i)));
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  IntMatrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(child(where, i), "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) M(i, k) = rows[i][k];
  }
  return M;
}

json to_json(const QVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

QVector qvector_from_json(const json& j, const std::string& where) {
  QVector v;
  for (std::size_t i = 0; i < array_at(j, where).size(); ++i) v.push_back(quad_from_json(j[i], child(where, i)));
  return v;
}

json to_json(const HPoint& p) { return json{{"real", to_json(p.real)}, {"f", to_json(p.fin)}}; }

// ---------------------------------------------------------------------------
// Regions and schemes

json to_json(const Region& W) {
  json fibers = json::array();
  for (const auto& [f, boxes] : W.fibers()) {
    json bs = json::array();
    for (const auto& b : boxes) bs.push_back(to_json(b));
    fibers.push_back(json{{"f", to_json(f)}, {"boxes", bs}});
  }
  return json{{"m", W.m()}, {"F", to_json(W.group())}, {"fibers", fibers}};
}

Region region_from_json(const json& j, const std::string& where) {
  auto m = int_from_json(field(j, "m", where), child(where, "m"));
  if (m < 0) fail(child(where, "m"), "negative dimension");
  FinAbGroup F = j.contains("F") ? group_from_json(j["F"], child(where, "F")) : FinAbGroup();
  try {
    Region W(static_cast<std::size_t>(m), F);
    const json& fibers = array_at(field(j, "fibers", where), child(where, "fibers"));
    for (std::size_t i = 0; i < fibers.size(); ++i) {
      std::string w = child(child(where, "fibers"), i);
      FinElement f = fibers[i].contains("f") ? element_from_json(fibers[i]["f"], child(w, "f")) : F.zero();
      if (!F.contains(f)) fail(child(w, "f"), "not an element of " + F.str());
      const json& boxes = array_at(field(fibers[i], "boxes", w), child(w, "boxes"));
      for (std::size_t k = 0; k < boxes.size(); ++k)
        W.add_box(f, box_from_json(boxes[k], static_cast<std::size_t>(m), child(child(w, "boxes"), k)));
    }
    return W;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

json to_json(const QuadMatrix& X) {
  json rows = json::array();
  for (std::size_t i = 0; i < X.rows(); ++i) rows.push_back(to_json(X.row(i)));
  return rows;
}

QuadMatrix quadmatrix_from_json(const json& j, const std::string& where) {
  array_at(j, where);
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(qvector_from_json(j[i], child(where, i)));
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  QuadMatrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(child(where, i), "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) M(i, k) = rows[i][k];
  }
  return M;
}

json to_json(const FinHom& h) {
  json images = json::array();
  for (const auto& img : h.images()) images.push_back(to_json(img));
  return json{{"domain", to_json(h.domain())}, {"codomain", to_json(h.codomain())}, {"images", images}};
}

FinHom finhom_from_json(const json& j, const std::string& where, const std::optional<FinAbGroup>& domain,
                        const std::optional<FinAbGroup>& codomain) {
  FinAbGroup dom = j.contains("domain") ? group_from_json(j["domain"], child(where, "domain"))
                   : domain            ? *domain
                                       : (fail(where, "missing field \"domain\""), FinAbGroup());
  FinAbGroup cod = j.contains("codomain") ? group_from_json(j["codomain"], child(where, "codomain"))
                   : codomain            ? *codomain
                                         : (fail(where, "missing field \"codomain\""), FinAbGroup());
  const json& imgs = array_at(field(j, "images", where), child(where, "images"));
  if (imgs.size() != dom.rank()) fail(child(where, "images"), "expected one image per generator of " + dom.str());
  std::vector<FinElement> images;
  for (std::size_t k = 0; k < imgs.size(); ++k) {
    FinElement e = element_from_json(imgs[k], child(child(where, "images"), k));
    if (e.size() != cod.rank()) fail(child(child(where, "images"), k), "element of wrong length for " + cod.str());
    images.push_back(cod.reduce(e));
  }
  try {
    return FinHom(dom, cod, images);
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

json to_json(const CutProjectScheme& S) {
  auto matrix = [](const QuadMatrix& X) { return to_json(X); };
  json c = json::array();
  for (const auto& img : S.c().images()) c.push_back(to_json(S.embedding().apply(img)));
  return json{{"label", S.label()}, {"d", S.d()},          {"m", S.m()},        {"D", S.field()},
              {"F", to_json(S.declared_group())}, {"A", matrix(S.A())}, {"B", matrix(S.B())}, {"c", c}};
}

CutProjectScheme cps_from_json(const json& j, const std::string& where) {
  auto d = int_from_json(field(j, "d", where), child(where, "d"));
  auto m = int_from_json(field(j, "m", where), child(where, "m"));
  if (d < 1 || m < 0) fail(where, "need d >= 1 and m >= 0");
  const std::size_t n = static_cast<std::size_t>(d + m);
  std::int64_t D = j.contains("D") ? int_from_json(j["D"], child(where, "D")) : 1;
  if (!is_squarefree(D)) fail(child(where, "D"), "D must be a squarefree positive integer");
  FinAbGroup F = j.contains("F") ? group_from_json(j["F"], child(where, "F")) : FinAbGroup();

  auto matrix = [&](const char* key, std::size_t rows) {
    std::string w = child(where, key);
    const json& a = array_at(field(j, key, where), w);
    if (a.size() != rows) fail(w, "expected " + std::to_string(rows) + " rows");
    QuadMatrix X(rows, n);
    for (std::size_t i = 0; i < rows; ++i) {
      const json& row = array_at(a[i], child(w, i));
      if (row.size() != n) fail(child(w, i), "expected " + std::to_string(n) + " entries");
      for (std::size_t k = 0; k < n; ++k) {
        QuadExt v = quad_from_json(row[k], child(child(w, i), k));
        if (!v.is_rational() && v.D() != D) fail(child(child(w, i), k), "entry outside Q(sqrt " + std::to_string(D) + ")");
        X(i, k) = v;
      }
    }
    return X;
  };
  QuadMatrix A = matrix("A", static_cast<std::size_t>(d));
  QuadMatrix B = matrix("B", static_cast<std::size_t>(m));

  std::vector<FinElement> images;
  if (j.contains("c")) {
    const json& c = array_at(j["c"], child(where, "c"));
    if (c.size() != n) fail(child(where, "c"), "expected " + std::to_string(n) + " images");
    for (std::size_t k = 0; k < n; ++k) {
      FinElement e = element_from_json(c[k], child(child(where, "c"), k));
      if (e.size() != F.rank()) fail(child(child(where, "c"), k), "element of wrong length for " + F.str());
      images.push_back(F.reduce(e));
    }
  } else {
    images.assign(n, F.zero());
  }
  std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
  try {
    return CutProjectScheme(A, B, LatticeCharacter(F, images), label);
  } catch (const SingularEmbedding&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

json to_json(const WindowSet& W) {
  json ws = json::array();
  for (std::size_t i = 0; i < W.size(); ++i) ws.push_back(json{{"color", W.colors[i]}, {"region", to_json(W.regions[i])}});
  return json{{"windows", ws}};
}

WindowSet windows_from_json(const json& j, const std::string& where) {
  const json& ws = array_at(field(j, "windows", where), child(where, "windows"));
  WindowSet W;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    std::string w = child(child(where, "windows"), i);
    const json& color = field(ws[i], "color", w);
    if (!color.is_string()) fail(child(w, "color"), "expected a string");
    W.colors.push_back(color.get<std::string>());
    W.regions.push_back(region_from_json(field(ws[i], "region", w), child(w, "region")));
  }
  return W;
}

// ---------------------------------------------------------------------------
// Point sets

json to_json(const MultiPointSet& P) {
  json colors = json::array();
  for (std::size_t i = 0; i < P.color_count(); ++i) {
    json pts = json::array();
    for (const auto& x : P.points(i)) pts.push_back(to_json(x));
    colors.push_back(json{{"label", P.colors()[i]}, {"points", pts}});
  }
  return json{{"d", P.d()}, {"carrier", to_json(P.carrier())}, {"colors", colors}};
}

MultiPointSet pointset_from_json(const json& j, const std::string& where) {
  auto d = int_from_json(field(j, "d", where), child(where, "d"));
  if (d < 1) fail(child(where, "d"), "dimension must be positive");
  Box carrier = box_from_json(field(j, "carrier", where), static_cast<std::size_t>(d), child(where, "carrier"));
  const json& colors = array_at(field(j, "colors", where), child(where, "colors"));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const json& l = field(colors[i], "label", child(child(where, "colors"), i));
    if (!l.is_string()) fail(child(child(where, "colors"), i), "label must be a string");
    labels.push_back(l.get<std::string>());
  }
  try {
    MultiPointSet P(static_cast<std::size_t>(d), labels, carrier);
    for (std::size_t i = 0; i < colors.size(); ++i) {
      std::string w = child(child(where, "colors"), i);
      const json& pts = array_at(field(colors[i], "points", w), child(w, "points"));
      for (std::size_t k = 0; k < pts.size(); ++k) {
        QVector x = qvector_from_json(pts[k], child(child(w, "points"), k));
        if (x.size() != static_cast<std::size_t>(d)) fail(child(child(w, "points"), k), "point of wrong dimension");
        try {
          P.add(i, x);
        } catch (const Error& e) {
          fail(child(child(w, "points"), k), e.what());
        }
      }
    }
    return P;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

std::string to_csv(const MultiPointSet& P) {
  std::ostringstream os;
  os << "# carrier";
  for (const auto& iv : P.carrier()) os << ' ' << iv.lo.str() << ' ' << iv.hi.str();
  os << "\n# colors";
  for (const auto& c : P.colors()) os << ' ' << c;
  os << '\n';
  for (std::size_t k = 0; k < P.d(); ++k) os << 'x' << k + 1 << ',';
  os << "color\n";
  for (std::size_t i = 0; i < P.color_count(); ++i)
    for (const auto& x : P.points(i)) {
      for (const auto& v : x) os << v.str() << ',';
      os << P.colors()[i] << '\n';
    }
  return os.str();
}

MultiPointSet pointset_from_csv(const std::string& text, const std::string& where, const std::optional<Box>& carrier) {
  std::istringstream in(text);
  std::string line;
  std::optional<Box> box = carrier;
  std::vector<std::string> colors;
  std::vector<std::pair<QVector, std::string>> rows;
  std::optional<std::size_t> d;
  std::size_t lineno = 0;
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string w = where + ":" + std::to_string(lineno);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      std::vector<std::string> words;
      for (std::string t; ss >> t;) words.push_back(t);
      if (key == "carrier" && !carrier) {
        if (words.empty() || words.size() % 2 != 0) fail(w, "carrier needs lo hi pairs");
        Box b;
        try {
          for (std::size_t k = 0; k < words.size(); k += 2) b.push_back({QuadExt::parse(words[k]), QuadExt::parse(words[k + 1])});
        } catch (const Error& e) {
          fail(w, e.what());
        }
        box = b;
      } else if (key == "colors") {
        colors = words;
      }
      continue;
    }
    auto cells = split(line, ',');
    if (cells.size() < 2) fail(w, "expected x1,...,xd,color");
    if (cells[0] == "x1") {
      d = cells.size() - 1;
      continue;
    }
    if (!d) d = cells.size() - 1;
    if (cells.size() != *d + 1) fail(w, "expected " + std::to_string(*d + 1) + " columns");
    QVector x;
    try {
      for (std::size_t k = 0; k < *d; ++k) x.push_back(QuadExt::parse(cells[k]));
    } catch (const Error& e) {
      fail(w, e.what());
    }
    rows.emplace_back(std::move(x), cells.back());
  }
  if (!box) fail(where, "no carrier given (use a \"# carrier\" line or pass one)");
  if (!d) d = box->size();
  if (box->size() != *d) fail(where, "carrier dimension differs from the point dimension");
  for (const auto& [x, c] : rows)
    if (std::find(colors.begin(), colors.end(), c) == colors.end()) colors.push_back(c);
  try {
    MultiPointSet P(*d, colors, *box);
    std::size_t k = 0;
    for (const auto& [x, c] : rows) {
      ++k;
      try {
        P.add(*P.color_index(c), x);
      } catch (const Error& e) {
        fail(where + ": row " + std::to_string(k), e.what());
      }
    }
    return P;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

// ---------------------------------------------------------------------------
// Files

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(path.string(), "cannot write file");
    out << content;
    if (!out) fail(path.string(), "write failed");
  }
  std::filesystem::rename(tmp, path);
}

CutProjectScheme load_cps(const std::filesystem::path& path) { return cps_from_json(read_json_file(path), path.string() + ":"); }

WindowSet load_windows(const std::filesystem::path& path) {
  return windows_from_json(read_json_file(path), path.string() + ":");
}

MultiPointSet load_pointset(const std::filesystem::path& path, const std::optional<Box>& carrier) {
  if (path.extension() == ".json") return pointset_from_json(read_json_file(path), path.string() + ":");
  return pointset_from_csv(read_text_file(path), path.string(), carrier);
}

}  // namespace meyerkit::io
