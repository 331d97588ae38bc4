#include "qmon/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace qmon::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t index_value(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::pair<std::size_t, std::size_t>> pair_list(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a list of pairs");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw ParseError(std::string(what) + " entries must be [i, j]");
    out.emplace_back(index_value(p[0], what), index_value(p[1], what));
  }
  return out;
}

std::vector<std::size_t> index_list(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a list");
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(index_value(v, what));
  return out;
}

std::size_t parse_index(std::string_view s, const char* what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError(std::string("bad ") + what + " key \"" + std::string(s) + "\"");
  return v;
}

std::pair<std::size_t, std::size_t> parse_pair_key(const std::string& key, const char* what) {
  auto comma = key.find(',');
  if (comma == std::string::npos) throw ParseError(std::string("bad ") + what + " key \"" + key + "\", expected \"i,j\"");
  return {parse_index(key.substr(0, comma), what), parse_index(key.substr(comma + 1), what)};
}

// Element given as an index or as a label.
Element element_value(const FiniteOL& l, const json& j) {
  if (j.is_string()) {
    if (auto e = l.find(j.get<std::string>())) return *e;
    throw ParseError("unknown element label \"" + j.get<std::string>() + "\"");
  }
  Element e = index_value(j, "element");
  if (e >= l.size()) throw StructureError("element index out of range", {e});
  return e;
}

json pairs_json(const std::vector<std::pair<std::size_t, std::size_t>>& ps) {
  json a = json::array();
  for (auto [x, y] : ps) a.push_back({x, y});
  return a;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

FiniteOL lattice_from_json(const json& j, std::size_t max_size) {
  const json& el = field(j, "elements");
  if (!el.is_array()) throw ParseError("\"elements\" must be a list");
  std::vector<std::string> labels;
  for (const auto& e : el) {
    if (!e.is_string()) throw ParseError("element labels must be strings");
    labels.push_back(e.get<std::string>());
  }
  if (labels.size() > max_size) throw SizeGuardError("lattice has more than " + std::to_string(max_size) + " elements");
  auto ortho = index_list(field(j, "ortho"), "ortho");
  if (ortho.size() != labels.size()) throw StructureError("ortho table length differs from the element count");
  if (j.contains("covers") == j.contains("leq")) throw ParseError("give exactly one of \"covers\" or \"leq\"");
  const bool covers = j.contains("covers");
  auto pairs = pair_list(j.at(covers ? "covers" : "leq"), covers ? "covers" : "leq");
  return FiniteOL::from_pairs(std::move(labels), pairs, std::move(ortho), covers ? OrderInput::Covers : OrderInput::Leq,
                              max_size);
}

json lattice_to_json(const FiniteOL& l) {
  json j;
  j["elements"] = l.labels();
  j["covers"] = pairs_json(l.covers());
  j["ortho"] = l.ortho_table();
  return j;
}

namespace {

FiniteOL lattice_field(const json& j, const std::filesystem::path& base_dir, std::size_t max_size) {
  const json& lj = field(j, "lattice");
  if (lj.is_string()) {
    std::filesystem::path p = lj.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return lattice_from_json(read_json_file(p), max_size);
  }
  return lattice_from_json(lj, max_size);
}

UnaryMap map_value(const FiniteOL& l, const json& j) {
  if (!j.is_array()) throw ParseError("a map must be a list");
  UnaryMap m;
  for (const auto& v : j) m.push_back(element_value(l, v));
  require_total(l, m);
  return m;
}

}  // namespace

QuantifierFile quantifier_from_json(const json& j, const std::filesystem::path& base_dir, std::size_t max_size) {
  QuantifierFile q;
  q.lattice = lattice_field(j, base_dir, max_size);
  q.map = map_value(q.lattice, field(j, "map"));
  return q;
}

json quantifier_to_json(const FiniteOL& l, const UnaryMap& e) {
  json j;
  j["lattice"] = lattice_to_json(l);
  j["map"] = e;
  return j;
}

CylindricStructure cylindric_from_json(const json& j, const std::filesystem::path& base_dir, std::size_t max_size) {
  CylindricStructure c;
  c.base = lattice_field(j, base_dir, max_size);
  if (j.contains("cylindrifications")) {
    const json& cy = j.at("cylindrifications");
    if (!cy.is_object()) throw ParseError("\"cylindrifications\" must be an object keyed by index");
    std::map<std::size_t, UnaryMap> by_index;
    for (const auto& [k, v] : cy.items()) by_index[parse_index(k, "cylindrification")] = map_value(c.base, v);
    for (const auto& [k, v] : by_index) {
      if (k != c.cyl.size()) throw StructureError("cylindrification indices must be 0..n-1", {k});
      c.cyl.push_back(v);
    }
  } else {
    c.cyl.push_back(map_value(c.base, field(j, "map")));
  }
  if (j.contains("diagonals")) {
    const json& dj = j.at("diagonals");
    if (!dj.is_object()) throw ParseError("\"diagonals\" must be an object keyed by \"i,j\"");
    const std::size_t n = c.dims();
    std::vector<std::vector<std::optional<Element>>> t(n, std::vector<std::optional<Element>>(n));
    for (const auto& [k, v] : dj.items()) {
      auto [a, b] = parse_pair_key(k, "diagonal");
      if (a >= n || b >= n) throw StructureError("diagonal index out of range", {a, b});
      t[a][b] = element_value(c.base, v);
    }
    c.diagonals.assign(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        // d_ii defaults to 1 and d_ji to d_ij.
        auto v = t[a][b] ? t[a][b] : t[b][a];
        if (!v && a == b) v = c.base.one();
        if (!v) throw StructureError("diagonal missing for an index pair", {a, b});
        c.diagonals[a][b] = *v;
      }
  }
  require_well_formed(c);
  return c;
}

json cylindric_to_json(const CylindricStructure& c) {
  json j;
  j["lattice"] = lattice_to_json(c.base);
  json cy = json::object();
  for (std::size_t i = 0; i < c.dims(); ++i) cy[std::to_string(i)] = c.cyl[i];
  j["cylindrifications"] = cy;
  if (c.has_diagonals()) {
    json d = json::object();
    for (std::size_t a = 0; a < c.dims(); ++a)
      for (std::size_t b = 0; b < c.dims(); ++b) d[std::to_string(a) + "," + std::to_string(b)] = c.d(a, b);
    j["diagonals"] = d;
  }
  return j;
}

GQ scalar_from_json(const json& j) {
  if (j.is_number_integer()) return GQ(j.get<long>());
  if (j.is_string()) return GQ::parse(j.get<std::string>());
  throw ParseError("scalars are integers or strings like \"1/2+3/4i\"");
}

json vector_to_json(std::span<const GQ> v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(z.str());
  return a;
}

json matrix_to_json(const GQMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_to_json(m.row(r)));
  return a;
}

GQMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("a matrix must be a list of rows");
  std::vector<GQVector> rows;
  std::size_t cols = 0;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("a matrix row must be a list");
    GQVector row;
    for (const auto& z : r) row.push_back(scalar_from_json(z));
    if (!rows.empty() && row.size() != cols) throw ParseError("matrix rows have different lengths");
    cols = row.size();
    rows.push_back(std::move(row));
  }
  return GQMatrix::from_rows(rows, cols);
}

SubspaceFile subspace_from_json(const json& j) {
  auto factors = index_list(field(j, "factors"), "factors");
  if (factors.empty()) throw ParseError("\"factors\" must not be empty");
  for (auto d : factors)
    if (d == 0) throw ParseError("factor dimensions must be positive");
  SubspaceFile f;
  f.layout = TensorLayout(factors);
  if (f.layout.ambient_dim() > kMaxAmbientDim)
    throw SizeGuardError("ambient dimension above " + std::to_string(kMaxAmbientDim));
  auto read_basis = [&](const json& b) {
    GQMatrix m = matrix_from_json(b);
    if (m.rows() > 0 && m.cols() != f.layout.ambient_dim())
      throw StructureError("basis vector length differs from the product of the factors");
    if (m.rows() == 0) return Subspace::zero(f.layout.ambient_dim());
    return Subspace::span(m);
  };
  if (j.contains("generators")) {
    for (const auto& b : j.at("generators")) f.subspaces.push_back(read_basis(b));
  } else {
    f.subspaces.push_back(read_basis(field(j, "basis")));
  }
  if (j.contains("diagonals")) {
    if (!j.at("diagonals").is_boolean()) throw ParseError("\"diagonals\" must be true or false");
    f.with_diagonals = j.at("diagonals").get<bool>();
  }
  return f;
}

json subspace_to_json(const TensorLayout& layout, const Subspace& s) {
  json j;
  j["factors"] = layout.dims();
  j["basis"] = matrix_to_json(s.basis());
  return j;
}

AlgebraFile algebra_from_json(const json& j) {
  AlgebraFile a;
  a.dim = index_value(field(j, "dim"), "dim");
  if (a.dim == 0) throw ParseError("\"dim\" must be positive");
  if (a.dim * a.dim > kMaxAmbientDim) throw SizeGuardError("dim^2 above " + std::to_string(kMaxAmbientDim));
  auto read = [&](const char* key, std::vector<GQMatrix>& out) {
    if (!j.contains(key)) return;
    for (const auto& m : j.at(key)) {
      GQMatrix x = matrix_from_json(m);
      if (x.rows() != a.dim || x.cols() != a.dim) throw StructureError(std::string(key) + " entry is not dim x dim");
      out.push_back(std::move(x));
    }
  };
  if (!j.contains("generators")) throw ParseError("missing field \"generators\"");
  read("generators", a.generators);
  read("projections", a.projections);
  return a;
}

Orthoframe frame_from_json(const json& j) {
  Orthoframe f;
  const json& pts = field(j, "points");
  if (!pts.is_array()) throw ParseError("\"points\" must be a list");
  for (const auto& p : pts) f.points.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  const std::size_t n = f.size();
  f.perp = perp_from_pairs(n, pair_list(field(j, "perp"), "perp"));
  if (j.contains("R")) {
    const json& rj = j.at("R");
    if (!rj.is_object()) throw ParseError("\"R\" must be an object keyed by index");
    std::map<std::size_t, Relation> by_index;
    for (const auto& [k, v] : rj.items()) by_index[parse_index(k, "R")] = relation_from_pairs(n, pair_list(v, "R"));
    for (auto& [k, v] : by_index) {
      if (k != f.r.size()) throw StructureError("relation indices must be 0..n-1", {k});
      f.r.push_back(std::move(v));
    }
  }
  if (j.contains("D")) {
    const json& dj = j.at("D");
    if (!dj.is_object()) throw ParseError("\"D\" must be an object keyed by \"i,j\"");
    for (const auto& [k, v] : dj.items()) {
      auto key = parse_pair_key(k, "D");
      PointSet s(n);
      for (auto x : index_list(v, "D")) {
        if (x >= n) throw StructureError("diagonal point out of range", {x});
        s.set(x);
      }
      f.d[key] = s;
    }
  }
  require_valid(f);
  return f;
}

json frame_to_json(const Orthoframe& f) {
  json j;
  j["points"] = f.points;
  std::vector<std::pair<std::size_t, std::size_t>> perp;
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t y = x + 1; y < f.size(); ++y)
      if (f.perp[x][y]) perp.emplace_back(x, y);
  j["perp"] = pairs_json(perp);
  json r = json::object();
  for (std::size_t i = 0; i < f.r.size(); ++i) {
    std::vector<std::pair<std::size_t, std::size_t>> ps;
    for (std::size_t x = 0; x < f.size(); ++x)
      for (auto y = f.r[i][x].find_first(); y != Bits::npos; y = f.r[i][x].find_next(y)) ps.emplace_back(x, y);
    r[std::to_string(i)] = pairs_json(ps);
  }
  j["R"] = r;
  if (!f.d.empty()) {
    json d = json::object();
    for (const auto& [k, s] : f.d) d[std::to_string(k.first) + "," + std::to_string(k.second)] = to_set(s);
    j["D"] = d;
  }
  return j;
}

}  // namespace qmon::io
