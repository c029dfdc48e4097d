#include <doctest.h>

#include <orbisurf/kodaira.hpp>

#include <nlohmann/json.hpp>

using namespace orbi;
using kodaira::CurveConfig;
using kodaira::FiberKind;
using kodaira::FiberType;

namespace {

CurveConfig from_json_text(const char* text) {
  return kodaira::config_from_json(nlohmann::json::parse(text));
}

// n rational -2 curves arranged in a cycle (n >= 3).
CurveConfig cycle(long n) {
  CurveConfig cfg;
  for (long i = 0; i < n; ++i)
    cfg.components.push_back({"C" + std::to_string(i), -2, 0, 0, 0});
  for (long i = 0; i < n; ++i) {
    divlat::IncidencePoint p;
    std::string a = "C" + std::to_string(i);
    std::string b = "C" + std::to_string((i + 1) % n);
    p.branches[a] = p.branches[b] = 1;
    p.curve_mult[a] = p.curve_mult[b] = 1;
    p.pair_local[std::minmax(a, b)] = 1;
    cfg.points.push_back(p);
  }
  return cfg;
}

}  // namespace

TEST_CASE("smooth and low-count fibers") {
  // smooth elliptic fiber
  CurveConfig smooth;
  smooth.components.push_back({"F", 0, 0, 1, 1});
  CHECK(kodaira::classify(smooth) == FiberType{FiberKind::Smooth, 0});
  CHECK(kodaira::euler_number(smooth) == 0);

  // nodal cubic: one rational component with a two-branch point
  CurveConfig nodal = from_json_text(R"({
    "components": [{"label": "F", "self": 0, "k": 0, "genus": 0}],
    "points": [{"branches": {"F": 2}, "mult": {"F": 2}}]
  })");
  FiberType t = kodaira::classify(nodal);
  CHECK(t == FiberType{FiberKind::In, 1});
  CHECK(t.name() == "I_1");
  CHECK(t.euler() == 1);

  // cuspidal cubic: one branch of local multiplicity two
  CurveConfig cusp = from_json_text(R"({
    "components": [{"label": "F", "self": 0, "k": 0, "genus": 0}],
    "points": [{"branches": {"F": 1}, "mult": {"F": 2}}]
  })");
  CHECK(kodaira::classify(cusp) == FiberType{FiberKind::II, 0});
  CHECK(kodaira::euler_number(cusp) == 2);
}

TEST_CASE("two-component fibers split by the point model") {
  // I_2: two curves crossing at two distinct points
  CurveConfig i2 = from_json_text(R"({
    "components": [{"label": "A", "self": -2}, {"label": "B", "self": -2}],
    "points": [{"branches": {"A": 1, "B": 1}}, {"branches": {"A": 1, "B": 1}}]
  })");
  CHECK(kodaira::classify(i2) == FiberType{FiberKind::In, 2});

  // III: same Gram matrix, but tangent at a single point
  CurveConfig iii = from_json_text(R"({
    "components": [{"label": "A", "self": -2}, {"label": "B", "self": -2}],
    "points": [{"branches": {"A": 1, "B": 1},
                "pairs": [{"a": "A", "b": "B", "local": 2}]}]
  })");
  CHECK(kodaira::classify(iii) == FiberType{FiberKind::III, 0});
  CHECK(kodaira::classify(iii).dynkin() == "A~1");
  CHECK(kodaira::euler_number(i2) == 2);
  CHECK(kodaira::euler_number(iii) == 3);
}

TEST_CASE("three-component fibers split by the point model") {
  // I_3: triangle
  CHECK(kodaira::classify(cycle(3)) == FiberType{FiberKind::In, 3});

  // IV: three concurrent lines
  CurveConfig iv = from_json_text(R"({
    "components": [{"label": "A", "self": -2}, {"label": "B", "self": -2},
                   {"label": "C", "self": -2}],
    "points": [{"branches": {"A": 1, "B": 1, "C": 1},
                "pairs": [{"a": "A", "b": "B", "local": 1},
                          {"a": "A", "b": "C", "local": 1},
                          {"a": "B", "b": "C", "local": 1}]}]
  })");
  CHECK(kodaira::classify(iv) == FiberType{FiberKind::IV, 0});
  CHECK(kodaira::classify(iv).euler() == 4);
}

TEST_CASE("cycles classify as I_n") {
  for (long n : {4L, 5L, 9L}) {
    FiberType t = kodaira::classify(cycle(n));
    CHECK(t == FiberType{FiberKind::In, n});
    CHECK(t.euler() == n);
    CHECK(kodaira::euler_number(cycle(n)) == n);
  }
}

TEST_CASE("star and chain fibers via dynkin recognition") {
  // I_0*: central -2 curve with four transverse legs
  CurveConfig star = from_json_text(R"({
    "components": [{"label": "Z", "self": -2}, {"label": "L1", "self": -2},
                   {"label": "L2", "self": -2}, {"label": "L3", "self": -2},
                   {"label": "L4", "self": -2}],
    "gram": [[-2, 1, 1, 1, 1], [1, -2, 0, 0, 0], [1, 0, -2, 0, 0],
             [1, 0, 0, -2, 0], [1, 0, 0, 0, -2]]
  })");
  FiberType t = kodaira::classify(star);
  CHECK(t == FiberType{FiberKind::InStar, 0});
  CHECK(t.name() == "I_0*");
  CHECK(t.dynkin() == "D~4");
  CHECK(kodaira::fiber_multiplicities(star) == std::vector<Int>{2, 1, 1, 1, 1});

  // I_1*: D~5 chain with doubled spine
  CurveConfig d5 = from_json_text(R"({
    "components": [{"label": "A1", "self": -2}, {"label": "A2", "self": -2},
                   {"label": "M", "self": -2}, {"label": "N", "self": -2},
                   {"label": "B1", "self": -2}, {"label": "B2", "self": -2}],
    "gram": [[-2, 0, 1, 0, 0, 0], [0, -2, 1, 0, 0, 0], [1, 1, -2, 1, 0, 0],
             [0, 0, 1, -2, 1, 1], [0, 0, 0, 1, -2, 0], [0, 0, 0, 1, 0, -2]]
  })");
  CHECK(kodaira::classify(d5) == FiberType{FiberKind::InStar, 1});

  // IV*: E~6
  CurveConfig e6 = from_json_text(R"({
    "components": [{"label": "Z", "self": -2},
                   {"label": "A1", "self": -2}, {"label": "A2", "self": -2},
                   {"label": "B1", "self": -2}, {"label": "B2", "self": -2},
                   {"label": "C1", "self": -2}, {"label": "C2", "self": -2}],
    "gram": [[-2, 1, 0, 1, 0, 1, 0], [1, -2, 1, 0, 0, 0, 0], [0, 1, -2, 0, 0, 0, 0],
             [1, 0, 0, -2, 1, 0, 0], [0, 0, 0, 1, -2, 0, 0], [1, 0, 0, 0, 0, -2, 1],
             [0, 0, 0, 0, 0, 1, -2]]
  })");
  CHECK(kodaira::classify(e6) == FiberType{FiberKind::IVStar, 0});
  CHECK(kodaira::classify(e6).dynkin() == "E~6");
  CHECK(kodaira::fiber_multiplicities(e6) == std::vector<Int>{3, 2, 1, 2, 1, 2, 1});
}

TEST_CASE("dynkin recognition rejects non-affine graphs") {
  // plain A_3 path: negative definite, zariski already refuses
  CHECK_THROWS_AS(kodaira::classify(from_json_text(R"({
    "components": [{"label": "A", "self": -2}, {"label": "B", "self": -2},
                   {"label": "C", "self": -2}],
    "gram": [[-2, 1, 0], [1, -2, 1], [0, 1, -2]]
  })")),
                  Error);

  // direct recognition: a five-legged star is not affine ADE
  divlat::Gram star5(6, std::vector<Int>(6, 0));
  for (long i = 1; i < 6; ++i) star5[0][i] = star5[i][0] = 1;
  CHECK_THROWS_AS(kodaira::dynkin_recognize(star5), Error);
  // A~1 as a double edge
  divlat::Gram a1(2, std::vector<Int>(2, 0));
  a1[0][1] = a1[1][0] = 2;
  CHECK(kodaira::dynkin_recognize(a1) == "A~1");
}

TEST_CASE("classification preconditions") {
  // vertical (-1)-curve: blow up the node of an I_1 fiber; the total
  // transform F~ + 2E is a fiber, but E makes it non-minimal
  CHECK_THROWS_WITH_AS(kodaira::classify(from_json_text(R"({
    "components": [{"label": "F", "self": -4, "k": 2}, {"label": "E", "self": -1}],
    "points": [{"branches": {"F": 1, "E": 1}}, {"branches": {"F": 1, "E": 1}}]
  })")),
                       "kodaira: fiber is not relatively minimal", Error);

  // K.f != 0: a ruling fiber is not elliptic
  CurveConfig ruling = from_json_text(R"({
    "components": [{"label": "F", "self": 0, "k": -2, "genus": 0}]
  })");
  CHECK_THROWS_AS(kodaira::classify(ruling), Error);

  // declared multiplicities must match the kernel
  CurveConfig bad = cycle(3);
  for (auto& c : bad.components) c.mult = 2;
  CHECK_THROWS_AS(kodaira::classify(bad), Error);

  // disconnected union of two nodal fibers: corank 2
  CHECK_THROWS_AS(kodaira::classify(from_json_text(R"({
    "components": [{"label": "F", "self": 0, "k": 0},
                   {"label": "G", "self": 0, "k": 0}],
    "points": [{"branches": {"F": 2}, "mult": {"F": 2}},
               {"branches": {"G": 2}, "mult": {"G": 2}}]
  })")),
                  Error);
}

TEST_CASE("gram shorthand refuses ambiguous double intersections") {
  CHECK_THROWS_AS(from_json_text(R"({
    "components": [{"label": "A", "self": -2}, {"label": "B", "self": -2}],
    "gram": [[-2, 2], [2, -2]]
  })"),
                  Error);
}

TEST_CASE("dot output is deterministic and complete") {
  CurveConfig i2 = from_json_text(R"({
    "components": [{"label": "A", "self": -2, "mult": 1},
                   {"label": "B", "self": -2, "mult": 1}],
    "points": [{"branches": {"A": 1, "B": 1}}, {"branches": {"A": 1, "B": 1}}]
  })");
  std::string dot = kodaira::emit_dot(i2, "fiber");
  CHECK(dot == "graph \"fiber\" {\n"
               "  node [shape=box];\n"
               "  \"A\" [label=\"A (-2)\"];\n"
               "  \"B\" [label=\"B (-2)\"];\n"
               "  \"A\" -- \"B\";\n"
               "  \"A\" -- \"B\";\n"
               "}\n");
}

TEST_CASE("config json round trip") {
  CurveConfig iv = from_json_text(R"({
    "components": [{"label": "A", "self": -2}, {"label": "B", "self": -2},
                   {"label": "C", "self": -2}],
    "points": [{"branches": {"A": 1, "B": 1, "C": 1},
                "pairs": [{"a": "A", "b": "B", "local": 1},
                          {"a": "A", "b": "C", "local": 1},
                          {"a": "B", "b": "C", "local": 1}]}]
  })");
  CurveConfig back = kodaira::config_from_json(kodaira::config_to_json(iv));
  CHECK(kodaira::classify(back) == kodaira::classify(iv));
  CHECK(kodaira::gram_of(back) == kodaira::gram_of(iv));
  CHECK(kodaira::euler_number(back) == kodaira::euler_number(iv));
}
