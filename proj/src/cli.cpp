#include "qmon/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qmon/greechie.hpp"
#include "qmon/tensor_cylindric.hpp"

namespace qmon::cli {

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Refused: return "refused";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

Check& Report::add(std::string name, bool ok, json witness, std::string note) {
  checks.push_back({std::move(name), ok ? Status::Pass : Status::Fail, std::move(witness), false, std::move(note)});
  return checks.back();
}

Check& Report::info(std::string name, bool ok, json witness, std::string note) {
  Check& c = add(std::move(name), ok, std::move(witness), std::move(note));
  c.informational = true;
  return c;
}

int Report::exit_code() const {
  int code = 0;
  for (const auto& c : checks) {
    if (c.informational) continue;
    if (c.status == Status::Refused) return 2;
    if (c.status == Status::Fail) code = 1;
  }
  return code;
}

json Report::to_json(bool with_timing) const {
  json j;
  j["command"] = command;
  json cs = json::array();
  for (const auto& c : checks) {
    json e;
    e["name"] = c.name;
    e["status"] = status_name(c.status);
    e["informational"] = c.informational;
    e["witness"] = c.witness;
    if (!c.note.empty()) e["note"] = c.note;
    cs.push_back(e);
  }
  j["checks"] = cs;
  j["exit_status"] = exit_code();
  json in = json::array();
  for (const auto& [p, d] : inputs) in.push_back({{"path", p}, {"sha256", d}});
  j["inputs"] = in;
  j["data"] = data;
  if (with_timing) j["timing_ms"] = timing_ms;
  return j;
}

std::string Report::text() const {
  std::ostringstream os;
  os << "qmon";
  for (const auto& a : command) os << ' ' << a;
  os << '\n';
  for (const auto& c : checks) {
    std::string tag(status_name(c.status));
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << "  " << std::left << std::setw(8) << tag << c.name;
    if (c.informational) os << " (informational)";
    if (!c.witness.is_null()) os << "\n            witness: " << c.witness.dump();
    if (!c.note.empty()) os << "\n            " << c.note;
    os << '\n';
  }
  for (const auto& [k, v] : data.items()) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.size() > 400) s = s.substr(0, 400) + " ...";
    os << "  " << k << ": " << s << '\n';
  }
  const int e = exit_code();
  os << "result: " << (e == 0 ? "pass" : e == 1 ? "violation" : "refused") << " (exit " << e << ")\n";
  return os.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
  return os.str();
}

namespace {

using io::json;

json elems(const FiniteOL& l, const std::vector<Element>& xs) {
  json idx = json::array(), lab = json::array();
  for (auto x : xs) {
    idx.push_back(x);
    lab.push_back(x < l.size() ? l.label(x) : "?");
  }
  return {{"elements", idx}, {"labels", lab}};
}

json elem(const FiniteOL& l, Element x) { return {{"index", x}, {"label", l.label(x)}}; }

// Index/element tuple with named positions; names starting with x, y, z are elements.
json tuple(const FiniteOL& l, const std::vector<Element>& w, const std::vector<std::string>& names) {
  json j = json::object();
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::string n = k < names.size() ? names[k] : "v" + std::to_string(k);
    if (n[0] == 'x' || n[0] == 'y' || n[0] == 'z') j[n] = elem(l, w[k]);
    else j[n] = w[k];
  }
  return j;
}

json point_tuple(const Orthoframe& f, const std::vector<Element>& w, const std::vector<std::string>& names) {
  json j = json::object();
  for (std::size_t k = 0; k < w.size(); ++k) {
    const std::string n = k < names.size() ? names[k] : "p" + std::to_string(k);
    if (n[0] == 'p') j[n] = {{"index", w[k]}, {"point", w[k] < f.size() ? f.points[w[k]] : "?"}};
    else j[n] = w[k];
  }
  return j;
}

json set_json(const FiniteOL& l, const ElementSet& s) {
  json j = json::array();
  for (auto x : s) j.push_back(l.label(x));
  return j;
}

void add_inputs(Report& r, const std::filesystem::path& file) {
  r.inputs.emplace_back(file.string(), sha256_hex(io::read_text_file(file)));
}

void add_quantifier_checks(Report& r, const FiniteOL& l, const UnaryMap& e, const std::string& prefix) {
  auto q = check_quantifier(l, e);
  for (std::size_t k = 0; k < q.axioms.size(); ++k) {
    const auto& a = q.axioms[k];
    json w = a.holds ? json(nullptr) : elems(l, a.witness);
    if (k == 5)
      r.info(prefix + a.name, a.holds, w, "Q6 may fail on OMLs; not part of the quantifier axioms");
    else
      r.add(prefix + a.name, a.holds, w);
  }
}

// ---- check -------------------------------------------------------------

void check_lattice(Report& r, const FiniteOL& l, bool require_oml) {
  auto v = validate_ortholattice(l);
  if (!v.structural.empty()) {
    const auto& s = v.structural.front();
    throw StructureError(s.axiom, s.witness);
  }
  const char* axioms[] = {"order-inverting", "x meet x' = 0", "x join x' = 1"};
  for (const char* a : axioms) {
    auto it = std::find_if(v.axioms.begin(), v.axioms.end(), [&](const Violation& x) { return x.axiom == a; });
    r.add(a, it == v.axioms.end(), it == v.axioms.end() ? json(nullptr) : elems(l, it->witness));
  }
  for (const auto& x : v.axioms)
    if (std::none_of(std::begin(axioms), std::end(axioms), [&](const char* a) { return x.axiom == a; }))
      r.add(x.axiom, false, elems(l, x.witness));
  if (!v.ok()) return;
  auto oml = check_orthomodular(l);
  json w = oml.witness ? elems(l, {oml.witness->first, oml.witness->second}) : json(nullptr);
  if (require_oml) r.add("orthomodular", oml.is_oml, w);
  else r.info("orthomodular", oml.is_oml, w);
  r.data["size"] = l.size();
  if (oml.is_oml) {
    r.data["center"] = set_json(l, center(l));
    json bs = json::array();
    for (const auto& b : blocks(l)) bs.push_back(set_json(l, b));
    r.data["blocks"] = bs;
    bool res = true;
    json rw = nullptr;
    for (Element x = 0; x < l.size() && res; ++x)
      for (Element y = 0; y < l.size() && res; ++y)
        for (Element z = 0; z < l.size() && res; ++z)
          if (l.leq(sasaki_product(l, x, y), z) != l.leq(y, sasaki_hook(l, x, z))) res = false, rw = elems(l, {x, y, z});
    r.info("Sasaki residuation", res, rw);
  }
}

void check_quantifier_file(Report& r, const io::QuantifierFile& q) {
  add_quantifier_checks(r, q.lattice, q.map, "");
  if (is_quantifier(q.lattice, q.map)) {
    auto res = check_residuation(q.lattice, q.map);
    r.info("residuation exists/forall", res.holds,
           res.witness ? elems(q.lattice, {res.witness->first, res.witness->second}) : json(nullptr));
    r.data["fixpoints"] = set_json(q.lattice, fixpoint_subalgebra(q.map));
  }
}

void check_cylindric_file(Report& r, const CylindricStructure& c, CylMode mode) {
  static const std::vector<std::vector<std::string>> shapes = {
      {"i", "x", "y"}, {"i", "j", "x"}, {"i", "j"}, {"i", "j", "k"}, {"i", "j", "x"}};
  auto rep = check_cylindric(c, mode);
  for (std::size_t k = 0; k < rep.axioms.size(); ++k) {
    const auto& a = rep.axioms[k];
    if (a.state == AxiomState::Skipped) {
      r.checks.push_back({a.name, Status::Skipped, nullptr, false, a.note});
      continue;
    }
    json w = nullptr;
    if (a.state == AxiomState::Fail) {
      w = tuple(c.base, a.witness, shapes[k]);
      if (k == 4) {
        // Both C5 terms and their meet, for replay.
        const std::size_t i = a.witness[0], j = a.witness[1];
        const Element x = a.witness[2], d = c.d(i, j);
        const Element t1 = c.cyl[i][c.base.meet(d, x)], t2 = c.cyl[i][c.base.meet(d, c.base.ortho(x))];
        w["first_term"] = elem(c.base, t1);
        w["second_term"] = elem(c.base, t2);
        w["meet"] = elem(c.base, c.base.meet(t1, t2));
      }
    }
    r.checks.push_back({a.name, a.state == AxiomState::Pass ? Status::Pass : Status::Fail, w, false, a.note});
  }
  r.data["mode"] = mode == CylMode::Weak ? "weak" : "full";
  r.data["size"] = c.base.size();
  r.data["dimensions"] = c.dims();
}

void check_frame_file(Report& r, const Orthoframe& f, std::size_t max_size) {
  for (std::size_t i = 0; i < f.r.size(); ++i) {
    auto m = check_monadic_frame(f, i);
    for (const auto& a : m.axioms)
      r.add(a.name + " (R" + std::to_string(i) + ")", a.holds,
            a.holds ? json(nullptr) : point_tuple(f, a.witness, {"p", "q"}));
    auto lr = check_image_closure(f, i, 12, 0, 4096);
    for (const auto& a : lr.axioms) {
      json w = nullptr;
      if (!a.holds) {
        PointSet s(f.size());
        for (auto x : a.witness) s.set(x);
        w = format_set(f, s);
      }
      r.info(a.name + " (R" + std::to_string(i) + ")", a.holds, w);
    }
  }
  if (f.r.size() > 1 || !f.d.empty()) {
    auto w = check_weak_cylindric_frame(f, max_size);
    static const std::vector<std::vector<std::string>> shapes = {{"i", "p", "q"}, {"i", "j", "p"}, {"i", "j"}, {"i", "j", "k"}};
    for (std::size_t k = 0; k < w.frame.axioms.size(); ++k) {
      const auto& a = w.frame.axioms[k];
      r.add(a.name, a.holds, a.holds ? json(nullptr) : point_tuple(f, a.witness, shapes[k]));
    }
    if (w.complex) {
      for (const auto& a : w.complex->axioms)
        if (a.state != AxiomState::Skipped)
          r.add("complex algebra " + a.name, a.state == AxiomState::Pass, a.witness.empty() ? json(nullptr) : json(a.witness));
    }
  } else if (f.r.size() == 1 && check_monadic_frame(f, 0).ok()) {
    auto m = complex_algebra(f, 0, max_size);
    add_quantifier_checks(r, m.closed.lattice, m.exists, "complex algebra ");
    r.data["closed_sets"] = m.closed.sets.size();
  }
}

void check_algebra_file(Report& r, const io::AlgebraFile& a, std::uint64_t seed, std::size_t samples) {
  StarAlgebra n = build_algebra(a.dim, a.generators);
  r.data["dim"] = n.dim();
  r.data["center_dim"] = center(n).dim();
  StarAlgebra cc = commutant(commutant(n));
  r.add("double commutant", cc == n);
  auto ec = verify_conditional_expectation(n, seed, 8);
  r.add("conditional expectation", ec.ok(), nullptr, ec.failed);
  MatrixSampler s(seed);
  std::vector<GQMatrix> ps = a.projections;
  for (auto& p : s.projections_of(full_algebra(a.dim), samples)) ps.push_back(p);
  bool all = true;
  json w = nullptr;
  for (const auto& p : ps) {
    require_projection(p);
    auto e = check_exists_equals_range_of_expectation(n, p);
    if (!e.all_equal && all) {
      all = false;
      w = {{"p", io::matrix_to_json(p)}, {"exists_p", io::matrix_to_json(e.exists_p)},
           {"range_of_expectation", io::matrix_to_json(e.range_of_e)}};
    }
  }
  r.add("exists equals range of expectation", all, w, std::to_string(ps.size()) + " projections");
}

}  // namespace

Report cmd_check(const std::string& kind, const std::filesystem::path& file, const Options& opt) {
  Report r;
  r.command = {"check", kind, file.string()};
  add_inputs(r, file);
  const json j = io::read_json_file(file);
  const auto dir = file.parent_path();
  if (kind == "lattice") {
    check_lattice(r, io::lattice_from_json(j, opt.max_size), opt.require_oml);
  } else if (kind == "quantifier") {
    check_quantifier_file(r, io::quantifier_from_json(j, dir, opt.max_size));
  } else if (kind == "cylindric") {
    r.command.push_back(opt.mode == CylMode::Weak ? "--mode=weak" : "--mode=full");
    check_cylindric_file(r, io::cylindric_from_json(j, dir, opt.max_size), opt.mode);
  } else if (kind == "frame") {
    check_frame_file(r, io::frame_from_json(j), opt.max_size);
  } else if (kind == "algebra") {
    check_algebra_file(r, io::algebra_from_json(j), opt.seed, std::min<std::size_t>(opt.samples, 8));
  } else {
    throw ParseError("unknown check kind " + kind);
  }
  return r;
}

// ---- repro -------------------------------------------------------------

namespace {

json q6_json(const Q6Witness& w) {
  const FiniteOL& l = w.lattice;
  json j;
  if (w.diagram) j["greechie"] = format_greechie(*w.diagram);
  j["size"] = l.size();
  j["subalgebra"] = set_json(l, w.subalgebra);
  j["p"] = l.label(w.p);
  j["q"] = l.label(w.q);
  j["exists(p meet exists q)"] = l.label(w.lhs);
  j["exists p meet exists q"] = l.label(w.rhs);
  j["quantifier"] = io::quantifier_to_json(l, w.exists);
  return j;
}

void repro_q6(Report& r, const Options& opt) {
  auto s = find_q6_counterexample(opt.max_blocks);
  r.add("witness found", s.witness.has_value(), nullptr,
        std::to_string(s.structures_examined) + " OMLs examined, " + std::to_string(s.candidates_skipped) +
            " pastings skipped");
  if (!s.witness) return;
  const Q6Witness& w = *s.witness;
  const FiniteOL& l = w.lattice;
  r.add("lattice is an OML", validate_ortholattice(l).ok() && check_orthomodular(l).is_oml);
  r.add("subalgebra is Boolean", is_subalgebra(l, w.subalgebra) && pairwise_commuting(l, w.subalgebra),
        set_json(l, w.subalgebra));
  r.add("Q1-Q5 hold", is_quantifier(l, w.exists));
  const Element lhs = w.exists[l.meet(w.p, w.exists[w.q])];
  const Element rhs = l.meet(w.exists[w.p], w.exists[w.q]);
  r.add("exists(p meet exists q) = 0", lhs == l.zero(), elem(l, lhs));
  r.add("exists p meet exists q != 0", rhs != l.zero(), elem(l, rhs));
  r.data["witness"] = q6_json(w);
}

void repro_c5(Report& r, const Options& opt) {
  const std::size_t d = opt.dim ? opt.dim : 3;
  auto w = c5_counterexample(d);
  r.add("first term contains H (x) <e0,e1>", w.first_contains_h_e01);
  r.add("second term contains H (x) <e0>", w.second_contains_h_e0);
  r.add("meet contains H (x) <e0>", w.expected_floor.leq(w.meet));
  r.add("meet rank >= d", w.meet.rank() >= d, w.meet.rank());
  r.add("C5 fails", !w.meet.is_zero() && w.reproduced);
  r.data["S"] = io::subspace_to_json(w.layout, w.s);
  r.data["first_term"] = io::subspace_to_json(w.layout, w.first_term);
  r.data["second_term"] = io::subspace_to_json(w.layout, w.second_term);
  r.data["meet"] = io::subspace_to_json(w.layout, w.meet);
  r.data["meet_rank"] = w.meet.rank();
}

void repro_diag(Report& r, const Options& opt) {
  std::vector<std::size_t> dims = opt.layout.empty() ? std::vector<std::size_t>{2, 2, 2, 2} : opt.layout;
  TensorLayout layout(dims);
  if (layout.ambient_dim() > kMaxAmbientDim) throw SizeGuardError("layout above the ambient dimension bound");
  json rows = json::array();
  const std::size_t n = layout.factors();
  if (n < 3) throw PreconditionError("DimensionMismatch", "diagonal composition needs at least 3 factors");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == k || j == i || j == k) continue;
        const bool ok = check_diagonal_composition(layout, i, j, k);
        r.add("D" + std::to_string(i) + std::to_string(k) + " = E" + std::to_string(j) + "(D" + std::to_string(i) +
                  std::to_string(j) + " meet D" + std::to_string(j) + std::to_string(k) + ")",
              ok);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      rows.push_back({{"i", i}, {"k", k}, {"rank", diagonal(layout, {i, k}).rank()}});
  r.data["layout"] = dims;
  r.data["diagonal_ranks"] = rows;
}

StarAlgebra m2_tensor_1() { return tensor_algebra(full_algebra(2), scalar_algebra(2)); }
StarAlgebra one_tensor_m2() { return tensor_algebra(scalar_algebra(2), full_algebra(2)); }

void repro_bell(Report& r) {
  const StarAlgebra n = m2_tensor_1();
  const GQMatrix p = bell_projection();
  auto e = check_exists_equals_range_of_expectation(n, p);
  const GQMatrix id = GQMatrix::identity(4);
  r.add("exists_N p = identity", e.exists_p == id, io::matrix_to_json(e.exists_p));
  r.add("P(E_N p) = identity", e.range_of_e == id, io::matrix_to_json(e.range_of_e));
  r.add("E_N p = I/4", conditional_expectation(n, p) == id * GQ(mpq_class(1, 4)));
  auto pp4 = check_pimsner_popa(n, p, GQ(mpq_class(1, 4)));
  r.add("Pimsner-Popa at 1/4 holds", pp4.holds && verify_certificate(pp4.difference, pp4.certificate));
  auto pp2 = check_pimsner_popa(n, p, GQ(mpq_class(1, 2)));
  json w = nullptr;
  if (pp2.certificate.witness)
    w = {{"vector", io::vector_to_json(*pp2.certificate.witness)}, {"value", pp2.certificate.value.str()}};
  r.add("Pimsner-Popa at 1/2 fails", !pp2.holds && verify_certificate(pp2.difference, pp2.certificate), w);
  r.data["p"] = io::matrix_to_json(p);
}

void repro_commuting_square(Report& r, const Options& opt) {
  auto sq = check_commuting_square(scalar_algebra(4), m2_tensor_1(), one_tensor_m2(), full_algebra(4), opt.seed,
                                   opt.samples);
  r.add("inclusions", sq.inclusions);
  r.add("expectations commute", sq.expectations_commute,
        sq.witness ? io::matrix_to_json(*sq.witness) : json(nullptr));
  r.add("quantifiers commute", sq.quantifiers_commute.value_or(false),
        sq.quantifier_witness ? io::matrix_to_json(*sq.quantifier_witness) : json(nullptr),
        std::to_string(sq.projections_tested) + " projections");
  r.add("M meet N = K", sq.intersection_is_k);
  // Diagonal algebra against the algebra generated by a projection that is
  // neither diagonal nor unbiased to it.
  std::vector<GQMatrix> diag{matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)};
  GQMatrix q = GQMatrix::from_rows({{1, 2}, {2, 4}}, 2) * GQ(mpq_class(1, 5));
  auto bad = check_commuting_square(scalar_algebra(2), build_algebra(2, diag), build_algebra(2, {q}),
                                    full_algebra(2), opt.seed, opt.samples);
  r.add("non-commuting square detected", !bad.expectations_commute && bad.witness.has_value(),
        bad.witness ? io::matrix_to_json(*bad.witness) : json(nullptr));
  r.data["non_commuting_generator"] = io::matrix_to_json(q);
}

void repro_expectation(Report& r, const Options& opt) {
  struct Case {
    std::string name;
    StarAlgebra n;
    std::size_t d;
  };
  std::vector<Case> cases;
  cases.push_back({"M2 (x) 1 in M4", m2_tensor_1(), 4});
  cases.push_back({"1 (x) M2 in M4", one_tensor_m2(), 4});
  cases.push_back({"diagonal in M3", build_algebra(3, {matrix_unit(3, 0, 0), matrix_unit(3, 1, 1)}), 3});
  cases.push_back({"M1 + M2 in M3", build_algebra(3, {matrix_unit(3, 0, 0), matrix_unit(3, 1, 2)}), 3});
  MatrixSampler s(opt.seed);
  for (const auto& c : cases) {
    std::vector<GQMatrix> ps;
    if (c.d == 4) ps.push_back(bell_projection());
    for (std::size_t k = 0; k < 4; ++k) ps.push_back(s.rank_one(c.d, k % 2 == 1));
    bool ok = true;
    json w = nullptr;
    for (const auto& p : ps) {
      auto e = check_exists_equals_range_of_expectation(c.n, p);
      if (!e.all_equal && ok) {
        ok = false;
        w = {{"p", io::matrix_to_json(p)}, {"exists_p", io::matrix_to_json(e.exists_p)},
             {"range_of_expectation", io::matrix_to_json(e.range_of_e)}};
      }
    }
    r.add("exists p = exists E p = P(E p): " + c.name, ok, w, std::to_string(ps.size()) + " projections");
  }
}

}  // namespace

Report cmd_repro(const std::string& name, const Options& opt) {
  Report r;
  r.command = {"repro", name};
  if (name == "q6") repro_q6(r, opt);
  else if (name == "c5") repro_c5(r, opt);
  else if (name == "diag") repro_diag(r, opt);
  else if (name == "bell") repro_bell(r);
  else if (name == "commuting-square") repro_commuting_square(r, opt);
  else if (name == "expectation") repro_expectation(r, opt);
  else throw ParseError("unknown scenario " + name);
  return r;
}

// ---- search ------------------------------------------------------------

Report cmd_search(const std::string& target, const Options& opt) {
  Report r;
  r.command = {"search", target};
  if (target == "q6") {
    Q6Search s;
    if (opt.boolean_only) {
      if (opt.max_atoms < 1 || opt.max_atoms > 6) throw SizeGuardError("--max-atoms must be between 1 and 6");
      r.command.push_back("--boolean-only");
      r.command.push_back("--max-atoms=" + std::to_string(opt.max_atoms));
      s = find_q6_boolean(opt.max_atoms);
    } else {
      if (opt.max_blocks < 1 || opt.max_blocks > 5) throw SizeGuardError("--max-blocks must be between 1 and 5");
      r.command.push_back("--max-blocks=" + std::to_string(opt.max_blocks));
      s = find_q6_counterexample(opt.max_blocks);
    }
    r.info("witness found", s.witness.has_value(), nullptr,
           std::to_string(s.structures_examined) + " structures examined");
    r.data["structures_examined"] = s.structures_examined;
    r.data["candidates_skipped"] = s.candidates_skipped;
    r.data["witness"] = s.witness ? q6_json(*s.witness) : json(nullptr);
  } else if (target == "expectation-gap") {
    const std::size_t d = opt.dim ? opt.dim : 4;
    if (d < 2 || d > 6) throw SizeGuardError("--dim must be between 2 and 6");
    r.command.push_back("--dim=" + std::to_string(d));
    r.command.push_back("--seed=" + std::to_string(opt.seed));
    auto g = search_expectation_gap(d, opt.seed);
    r.info("gap found", g.gaps > 0, nullptr,
           std::to_string(g.inclusions) + " inclusions, " + std::to_string(g.projections) + " projections");
    r.data["inclusions"] = g.inclusions;
    r.data["projections"] = g.projections;
    r.data["gaps"] = g.gaps;
    r.data["log"] = g.log;
  } else {
    throw ParseError("unknown search target " + target);
  }
  return r;
}

// ---- convert -----------------------------------------------------------

json cmd_convert(const std::string& kind, const std::filesystem::path& file, const Options& opt) {
  if (kind == "greechie") {
    const FiniteOL l = build_greechie(parse_greechie(io::read_text_file(file)), opt.max_size);
    return io::lattice_to_json(l);
  }
  if (kind == "tensor-closure") {
    auto sf = io::subspace_from_json(io::read_json_file(file));
    auto t = as_cylindric_structure(sf.layout, sf.subspaces, sf.with_diagonals, opt.max_size);
    json j = io::cylindric_to_json(t.structure);
    j["factors"] = sf.layout.dims();
    json subs = json::array();
    for (const auto& s : t.elements) subs.push_back(io::matrix_to_json(s.basis()));
    j["subspaces"] = subs;
    return j;
  }
  throw ParseError("unknown conversion " + kind);
}

// ---- entry point -------------------------------------------------------

namespace {

std::vector<std::size_t> parse_layout(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t v = 0;
    try {
      v = std::stoul(part);
    } catch (const std::exception&) {
      throw ParseError("bad --layout \"" + s + "\"");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"qmon: finite quantum monadic and cylindric algebra workbench"};
  app.require_subcommand(1);
  Options opt;
  std::string json_out;
  bool json_flag = false;
  std::string mode = "full", layout;
  auto global = [&](CLI::App* c) {
    c->add_option("--json", json_out, "write the JSON report to FILE (stdout when FILE is -)")->expected(0, 1);
    c->add_option("--seed", opt.seed, "seed for sampled checks");
    c->add_option("--max-size", opt.max_size, "element bound for finite structures");
  };

  std::string kind, file, name, target;
  auto* check = app.add_subcommand("check", "validate a structure file");
  check->add_option("kind", kind)->required()->check(CLI::IsMember({"lattice", "quantifier", "cylindric", "frame", "algebra"}));
  check->add_option("file", file)->required();
  check->add_option("--mode", mode)->check(CLI::IsMember({"weak", "full"}));
  check->add_flag("--oml", opt.require_oml, "fail unless the lattice is orthomodular");
  check->add_option("--samples", opt.samples);
  global(check);

  auto* repro = app.add_subcommand("repro", "reproduce a named scenario");
  repro->add_option("name", name)->required()->check(
      CLI::IsMember({"q6", "c5", "diag", "bell", "commuting-square", "expectation"}));
  repro->add_option("--layout", layout, "factor dimensions, e.g. 2,2,2,2");
  repro->add_option("--dim", opt.dim);
  repro->add_option("--max-blocks", opt.max_blocks);
  repro->add_option("--samples", opt.samples);
  global(repro);

  auto* search = app.add_subcommand("search", "bounded counterexample search");
  search->add_option("target", target)->required()->check(CLI::IsMember({"q6", "expectation-gap"}));
  search->add_option("--max-blocks", opt.max_blocks);
  search->add_flag("--boolean-only", opt.boolean_only);
  search->add_option("--max-atoms", opt.max_atoms);
  search->add_option("--dim", opt.dim);
  global(search);

  auto* convert = app.add_subcommand("convert", "convert an input format to JSON");
  convert->add_option("kind", kind)->required()->check(CLI::IsMember({"greechie", "tensor-closure"}));
  convert->add_option("file", file)->required();
  global(convert);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  for (auto* c : {check, repro, search, convert})
    if (c->parsed() && c->count("--json")) json_flag = true;
  opt.mode = mode == "weak" ? CylMode::Weak : CylMode::Full;

  auto emit = [&](const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (json_out.empty() || json_out == "-") {
      std::cout << text;
    } else {
      std::ofstream out(json_out, std::ios::binary);
      if (!out) throw ParseError("cannot write " + json_out);
      out << text;
    }
  };

  try {
    if (!layout.empty()) opt.layout = parse_layout(layout);
    if (convert->parsed()) {
      emit(cmd_convert(kind, file, opt));
      return 0;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    if (check->parsed()) r = cmd_check(kind, file, opt);
    else if (repro->parsed()) r = cmd_repro(name, opt);
    else r = cmd_search(target, opt);
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (json_flag && (json_out.empty() || json_out == "-")) {
      emit(r.to_json());
    } else {
      std::cout << r.text();
      if (json_flag) emit(r.to_json());
    }
    return r.exit_code();
  } catch (const StructureError& e) {
    std::cerr << "structural error: " << e.what();
    if (!e.witness().empty()) {
      std::cerr << " (witness";
      for (auto w : e.witness()) std::cerr << ' ' << w;
      std::cerr << ')';
    }
    std::cerr << '\n';
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace qmon::cli
