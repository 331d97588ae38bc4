#include <filesystem>

#include "doctest.h"
#include "qmon/cli.hpp"
#include "qmon/greechie.hpp"
#include "qmon/io.hpp"

using namespace qmon;

namespace {

std::filesystem::path fixture(const char* name) { return std::filesystem::path(QMON_FIXTURES) / name; }

}  // namespace

TEST_SUITE("io") {

TEST_CASE("lattice JSON round trip") {
  auto l = lattices::mo(3);
  auto back = io::lattice_from_json(io::lattice_to_json(l));
  CHECK(back.labels() == l.labels());
  CHECK(back.ortho_table() == l.ortho_table());
  for (Element x = 0; x < l.size(); ++x)
    for (Element y = 0; y < l.size(); ++y) CHECK(back.leq(x, y) == l.leq(x, y));
  auto mo2 = io::lattice_from_json(io::read_json_file(fixture("mo2.json")));
  CHECK(mo2.size() == 6);
  CHECK(check_orthomodular(mo2).is_oml);
}

TEST_CASE("lattice JSON errors") {
  CHECK_THROWS_AS(io::lattice_from_json(io::json::parse(R"({"elements": ["0"]})")), ParseError);
  CHECK_THROWS_AS(io::lattice_from_json(io::json::parse(R"({"elements": ["0","1"], "leq": [[0,1]], "covers": [], "ortho": [1,0]})")),
                  ParseError);
  CHECK_THROWS_AS(io::lattice_from_json(io::json::parse(R"({"elements": ["0","1"], "leq": [[0,1]], "ortho": [1]})")),
                  StructureError);
  CHECK_THROWS_AS(io::read_json_file(fixture("q6.greechie")), ParseError);
}

TEST_CASE("quantifier and cylindric files") {
  auto q = io::quantifier_from_json(io::read_json_file(fixture("mo2_quantifier.json")), QMON_FIXTURES);
  CHECK(is_quantifier(q.lattice, q.map));
  auto c = classical_cyl_set_algebra(2, 2);
  auto back = io::cylindric_from_json(io::cylindric_to_json(c));
  CHECK(back.cyl == c.cyl);
  CHECK(back.diagonals == c.diagonals);
  auto j = io::json::parse(R"({"lattice": "mo2.json", "cylindrifications": {"0": [0,1,1,1,1,1]}, "diagonals": {}})");
  auto one = io::cylindric_from_json(j, QMON_FIXTURES);
  CHECK(one.d(0, 0) == one.base.one());
  auto missing = io::json::parse(R"({"lattice": "mo2.json", "cylindrifications": {"0": [0,1,1,1,1,1], "1": [0,1,1,1,1,1]}, "diagonals": {}})");
  CHECK_THROWS_AS(io::cylindric_from_json(missing, QMON_FIXTURES), StructureError);
}

TEST_CASE("subspace and matrix files") {
  auto f = io::subspace_from_json(io::json::parse(R"({"factors": [2, 2], "basis": [["1/2+3/4i", "0", "0", "-i"]]})"));
  REQUIRE(f.subspaces.size() == 1);
  CHECK(f.subspaces[0].rank() == 1);
  auto back = io::subspace_from_json(io::subspace_to_json(f.layout, f.subspaces[0]));
  CHECK(back.subspaces[0] == f.subspaces[0]);
  CHECK_THROWS_AS(io::subspace_from_json(io::json::parse(R"({"factors": [2, 2], "basis": [["1", "0"]]})")), StructureError);
  CHECK_THROWS_AS(io::subspace_from_json(io::json::parse(R"({"factors": [16, 17], "basis": []})")), SizeGuardError);
  auto a = io::algebra_from_json(io::read_json_file(fixture("algebra_m2_x_1.json")));
  CHECK(build_algebra(a.dim, a.generators).dim() == 4);
  CHECK(a.projections.size() == 1);
}

TEST_CASE("frame files") {
  CHECK_THROWS_AS(io::frame_from_json(io::read_json_file(fixture("frame_reflexive_perp.json"))), StructureError);
  auto f = io::frame_from_json(io::read_json_file(fixture("frame_equivalence.json")));
  CHECK(check_monadic_frame(f, 0).ok());
  auto back = io::frame_from_json(io::frame_to_json(f));
  CHECK(back.perp == f.perp);
  CHECK(back.r == f.r);
}

TEST_CASE("Greechie conversion gives the Q6 lattice") {
  auto j = cli::cmd_convert("greechie", fixture("q6.greechie"), {});
  auto l = io::lattice_from_json(j);
  CHECK(l.size() == 12);
  CHECK(check_orthomodular(l).is_oml);
}

TEST_CASE("reports") {
  cli::Options opt;
  auto r = cli::cmd_check("lattice", fixture("mo2.json"), opt);
  CHECK(r.exit_code() == 0);
  CHECK(r.inputs.size() == 1);
  CHECK(r.inputs[0].second.size() == 64);
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  auto hex = cli::cmd_check("lattice", fixture("hexagon.json"), opt);
  CHECK(hex.exit_code() == 0);
  opt.require_oml = true;
  CHECK(cli::cmd_check("lattice", fixture("hexagon.json"), opt).exit_code() == 1);
  CHECK(cli::cmd_check("quantifier", fixture("constant_one.json"), {}).exit_code() == 1);
  // determinism apart from timing
  auto a = cli::cmd_repro("q6", {}).to_json(false);
  auto b = cli::cmd_repro("q6", {}).to_json(false);
  CHECK(a.dump() == b.dump());
}

TEST_CASE("C5 witness replays from the report") {
  cli::Options opt;
  auto r = cli::cmd_check("cylindric", fixture("tensor_c5_d3.cyl.json"), opt);
  CHECK(r.exit_code() == 1);
  const auto& c5 = r.checks.back();
  CHECK(c5.name == "C5");
  auto c = io::cylindric_from_json(io::read_json_file(fixture("tensor_c5_d3.cyl.json")), QMON_FIXTURES);
  const std::size_t i = c5.witness["i"], j = c5.witness["j"];
  const Element x = c5.witness["x"]["index"];
  const Element d = c.d(i, j);
  const Element meet = c.base.meet(c.cyl[i][c.base.meet(d, x)], c.cyl[i][c.base.meet(d, c.base.ortho(x))]);
  CHECK(meet != c.base.zero());
  CHECK(meet == c5.witness["meet"]["index"].get<Element>());
}

}
