#include <doctest.h>

#include <orbisurf/divlat.hpp>

#include <nlohmann/json.hpp>

using namespace orbi;
using divlat::DivLattice;
using divlat::Gram;
using divlat::SignatureReport;
using divlat::SurfaceModel;

namespace {

Gram gram_of(std::vector<std::vector<long>> rows) {
  Gram g;
  for (const auto& r : rows) {
    g.emplace_back();
    for (long v : r) g.back().push_back(Int(v));
  }
  return g;
}

// Fiber of a ruled rational surface: section D (self -n), fiber F, D.F = 1.
SurfaceModel ruled_model(long n) {
  SurfaceModel m;
  m.lat.add_component("D", -n, n - 2);
  m.lat.add_component("F", 0, -2);
  m.lat.set_pairing("D", "F", 1);
  m.pts.add_simple_crossing("D", "F");
  return m;
}

}  // namespace

TEST_CASE("signature handles definite, degenerate and zero-diagonal blocks") {
  CHECK(divlat::signature(gram_of({{1, 0}, {0, -1}})) == SignatureReport{1, 1, 0});
  CHECK(divlat::signature(gram_of({{0, 1}, {1, 0}})) == SignatureReport{1, 1, 0});
  CHECK(divlat::signature(gram_of({{-2, 1}, {1, -2}})) == SignatureReport{0, 2, 0});
  CHECK(divlat::signature(gram_of({{0, 0}, {0, 0}})) == SignatureReport{0, 0, 2});
  // affine A_2: corank one
  CHECK(divlat::signature(gram_of({{-2, 1, 1}, {1, -2, 1}, {1, 1, -2}})) ==
        SignatureReport{0, 2, 1});
  // zero diagonal with an off-diagonal partner on a degenerate row
  CHECK(divlat::signature(gram_of({{0, 2, 0}, {2, 0, 0}, {0, 0, 5}})) ==
        SignatureReport{2, 1, 0});
  CHECK(divlat::signature(Gram{}) == SignatureReport{0, 0, 0});
}

TEST_CASE("adjunction genus") {
  CHECK(divlat::adjunction_genus(-1, -1) == 0);   // exceptional curve
  CHECK(divlat::adjunction_genus(-2, 0) == 0);    // chain curve
  CHECK(divlat::adjunction_genus(0, 0) == 1);     // elliptic fiber
  CHECK(divlat::adjunction_genus(3, -3) == 1);    // plane cubic ambient-style
  CHECK(divlat::adjunction_genus(-3, 1) == 0);
}

TEST_CASE("lattice bookkeeping and validation") {
  DivLattice lat;
  lat.add_component("A", -2, 0);
  lat.add_component("B", -3, 1);
  lat.set_pairing("A", "B", 2);
  CHECK(lat.pairing("A", "B") == 2);
  CHECK(lat.pairing("B", "A") == 2);
  CHECK(lat.index_of("missing") == -1);
  CHECK_THROWS_AS(lat.require("missing"), Error);
  CHECK_THROWS_AS(lat.add_component("A", 0, 0), Error);
  CHECK_NOTHROW(lat.validate());
}

TEST_CASE("isolated blow-up appends an orthogonal exceptional curve") {
  DivLattice lat;
  lat.add_component("H", 1, -3);  // plane hyperplane class
  DivLattice up = divlat::blow_up(lat, "E");
  CHECK(up.size() == 2);
  CHECK(up.pairing("E", "E") == -1);
  CHECK(up.kdeg[up.require("E")] == -1);
  CHECK(up.pairing("H", "E") == 0);
  // K^2 drops by one: 9 -> 8 for the K written in this basis
  // K = -3H + E, K^2 = 9 - 1 = 8
  CHECK(divlat::signature(up.gram) == SignatureReport{1, 1, 0});
}

TEST_CASE("contracting a chain end merges its crossings") {
  // A - E - B with E exceptional: contract E, then A meets B once.
  SurfaceModel m;
  m.lat.add_component("A", -2, 0);
  m.lat.add_component("E", -1, -1);
  m.lat.add_component("B", -2, 0);
  m.lat.set_pairing("A", "E", 1);
  m.lat.set_pairing("E", "B", 1);
  m.pts.add_simple_crossing("A", "E");
  m.pts.add_simple_crossing("E", "B");
  divlat::validate_incidence(m);

  divlat::contract(m, "E");
  CHECK(m.lat.size() == 2);
  CHECK(m.lat.pairing("A", "A") == -1);
  CHECK(m.lat.pairing("B", "B") == -1);
  CHECK(m.lat.pairing("A", "B") == 1);
  CHECK(m.lat.kdeg[m.lat.require("A")] == -1);
  divlat::validate_incidence(m);
  REQUIRE(m.pts.points.size() == 1);
  CHECK(m.pts.points[0].branches.at("A") == 1);
  CHECK(m.pts.points[0].branches.at("B") == 1);
  CHECK(m.pts.points[0].pair_local.at({"A", "B"}) == 1);
}

TEST_CASE("contract then blow up at the image point is the identity") {
  SurfaceModel m = ruled_model(2);
  // Blow up the crossing of D and F.
  divlat::blow_up_at(m, 0, "E");
  CHECK(m.lat.pairing("D", "F") == 0);
  CHECK(m.lat.pairing("D", "E") == 1);
  CHECK(m.lat.pairing("F", "E") == 1);
  CHECK(m.lat.pairing("D", "D") == -3);
  CHECK(m.lat.pairing("F", "F") == -1);
  CHECK(m.lat.kdeg[m.lat.require("F")] == -1);
  divlat::validate_incidence(m);

  divlat::contract(m, "E");
  SurfaceModel orig = ruled_model(2);
  CHECK(m.lat.gram == orig.lat.gram);
  CHECK(m.lat.kdeg == orig.lat.kdeg);
  CHECK(m.lat.labels == orig.lat.labels);
  divlat::validate_incidence(m);
}

TEST_CASE("contract rejects non-exceptional components") {
  SurfaceModel m = ruled_model(2);
  CHECK_THROWS_AS(divlat::contract(m, "D"), Error);   // D^2 = -2
  CHECK_THROWS_AS(divlat::contract(m, "F"), Error);   // F^2 = 0
  CHECK_THROWS_AS(divlat::contract(m, "nope"), Error);
}

TEST_CASE("contraction accumulates local intersection data into tangency") {
  // Two curves each crossing E once at distinct points and each other never:
  // after contracting E they meet once, at one point, transversally.
  SurfaceModel m;
  m.lat.add_component("C1", -2, 0);
  m.lat.add_component("C2", -3, 1);
  m.lat.add_component("E", -1, -1);
  m.lat.set_pairing("C1", "E", 1);
  m.lat.set_pairing("C2", "E", 1);
  m.pts.add_simple_crossing("C1", "E");
  m.pts.add_simple_crossing("C2", "E");
  divlat::contract(m, "E");
  CHECK(m.lat.pairing("C1", "C2") == 1);
  REQUIRE(m.pts.points.size() == 1);
  const divlat::IncidencePoint& p = m.pts.points[0];
  CHECK(p.total_branches() == 2);
  CHECK(p.pair_local.at({"C1", "C2"}) == 1);

  // Contract again at the new crossing: C1 is exceptional now.
  CHECK(m.lat.pairing("C1", "C1") == -1);
  divlat::contract(m, "C1");
  CHECK(m.lat.pairing("C2", "C2") == -1);
  // C2 acquired no self-tangle: single branch, multiplicity one
  REQUIRE(m.pts.points.size() == 1);
  CHECK(m.pts.points[0].branches.at("C2") == 1);
  CHECK(m.pts.points[0].curve_mult.at("C2") == 1);
}

TEST_CASE("zariski solver returns primitive positive kernels") {
  using V = std::vector<Int>;
  // affine A_2 cycle
  CHECK(divlat::zariski_fiber_solver(gram_of({{-2, 1, 1}, {1, -2, 1}, {1, 1, -2}})) ==
        V{1, 1, 1});
  // affine D_4 star, center last
  CHECK(divlat::zariski_fiber_solver(gram_of({{-2, 0, 0, 0, 1},
                                              {0, -2, 0, 0, 1},
                                              {0, 0, -2, 0, 1},
                                              {0, 0, 0, -2, 1},
                                              {1, 1, 1, 1, -2}})) == V{1, 1, 1, 1, 2});
  // two components meeting twice: kernel (1,1), reported primitively
  CHECK(divlat::zariski_fiber_solver(gram_of({{-2, 2}, {2, -2}})) == V{1, 1});
  // single vertical component of square zero
  CHECK(divlat::zariski_fiber_solver(gram_of({{0}})) == V{1});
}

TEST_CASE("zariski solver rejects wrong corank and mixed kernels") {
  // negative definite: corank 0
  CHECK_THROWS_AS(divlat::zariski_fiber_solver(gram_of({{-2, 1}, {1, -2}})), Error);
  // two disjoint nodal fibers: corank 2
  CHECK_THROWS_AS(divlat::zariski_fiber_solver(gram_of({{0, 0}, {0, 0}})), Error);
  // positive entry on the diagonal
  CHECK_THROWS_AS(divlat::zariski_fiber_solver(gram_of({{1, 0}, {0, -1}})), Error);
  // corank 1 but the kernel vector has a zero coordinate
  CHECK_THROWS_AS(divlat::zariski_fiber_solver(gram_of({{-1, 0}, {0, 0}})), Error);
}

TEST_CASE("incidence validation catches a missing crossing") {
  SurfaceModel m = ruled_model(2);
  m.lat.set_pairing("D", "F", 2);  // gram says twice, points say once
  CHECK_THROWS_AS(divlat::validate_incidence(m), Error);
}

TEST_CASE("lattice json round trip") {
  DivLattice lat;
  lat.add_component("D_0", -2, 0);
  lat.add_component("Fib", 0, -2);
  lat.set_pairing("D_0", "Fib", 1);
  DivLattice back = divlat::lattice_from_json(divlat::lattice_to_json(lat));
  CHECK(back.labels == lat.labels);
  CHECK(back.gram == lat.gram);
  CHECK(back.kdeg == lat.kdeg);
}
