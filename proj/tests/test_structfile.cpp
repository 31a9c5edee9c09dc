#include <doctest.h>

#include "gck/structfile.hpp"

using namespace gck;

namespace {

const char* kSymplectic = R"({
  "chart": {"coords": ["x", "y"]},
  "tensors": {
    "a0": {"kind": "endo", "matrix": [["0", "0"], ["0", "0"]]},
    "pi": {"kind": "bivector", "components": {"x^y": "-1"}},
    "sigma": {"kind": "2form", "components": {"x^y": "-1"}}
  },
  "structures": {
    "s": {"kind": "gcs", "a": "a0", "pi": "pi", "sigma": "sigma"}
  }
})";

}  // namespace

TEST_CASE("parse, resolve, check") {
    StructureFile f = parse_structure_file(kSymplectic);
    CHECK(f.primary.coords == VarList{"x", "y"});
    GeneralizedStructure s = resolve_gcs(f, "s");
    CHECK(check_gcs(s).certified());
    CHECK_THROWS_AS(resolve_gcs(f, "missing"), ResolutionError);
    CHECK_THROWS_AS(resolve_hitchin(f, "s"), ResolutionError);
}

TEST_CASE("canonical print is a fixed point of parse∘print") {
    StructureFile f = parse_structure_file(kSymplectic);
    std::string once = print_structure_file(f);
    StructureFile g = parse_structure_file(once);
    std::string twice = print_structure_file(g);
    CHECK(once == twice);
    GeneralizedStructure s1 = resolve_gcs(f, "s");
    GeneralizedStructure s2 = resolve_gcs(g, "s");
    CHECK(s1.a == s2.a);
    CHECK(s1.pi == s2.pi);
    CHECK(s1.sigma == s2.sigma);
}

TEST_CASE("writers round-trip through the parser") {
    Chart c({"x", "y"});
    KForm omega(c, 2);
    omega.set_component(std::array<size_t, 2>{0, 1}, c.parse("1"));
    HitchinPair pair(omega, EndoField::identity(c));

    StructureFile out(c);
    put_hitchin(out, "h", pair);
    put_gcs(out, "g", hitchin_to_gcs(pair));
    std::string text = print_structure_file(out);
    StructureFile in = parse_structure_file(text);
    HitchinPair p2 = resolve_hitchin(in, "h");
    CHECK(p2.omega == pair.omega);
    CHECK(p2.a == pair.a);
    GeneralizedStructure s2 = resolve_gcs(in, "g");
    CHECK(check_gcs(s2).certified());

    StructureFile gout(c);
    put_groupoid(gout, "G", build_pair_hitchin_groupoid(pair));
    StructureFile gin = parse_structure_file(print_structure_file(gout));
    HitchinGroupoidCandidate cand = resolve_groupoid(gin, "G");
    CHECK(check_hitchin_groupoid(cand).certified());
}

TEST_CASE("parse errors carry context") {
    CHECK_THROWS_AS(parse_structure_file("{ not json"), ParseError);
    CHECK_THROWS_AS(parse_structure_file("{}"), ParseError);
    CHECK_THROWS_AS(parse_structure_file(R"({"chart": {"coords": ["x", "x"]}})"), ParseError);
    CHECK_THROWS_AS(parse_structure_file(R"({
      "chart": {"coords": ["x", "y"]},
      "tensors": {"v": {"kind": "vector", "components": ["1"]}}
    })"),
                    ParseError);
    CHECK_THROWS_AS(parse_structure_file(R"({
      "chart": {"coords": ["x", "y"]},
      "tensors": {"f": {"kind": "2form", "components": {"y^x": "1"}}}
    })"),
                    ParseError);
    CHECK_THROWS_AS(parse_structure_file(R"({
      "chart": {"coords": ["x", "y"]},
      "tensors": {"f": {"kind": "spinor", "components": {}}}
    })"),
                    ParseError);
}
