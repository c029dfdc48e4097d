#include <doctest.h>

#include <orbisurf/walls.hpp>

#include <nlohmann/json.hpp>

#include <random>

using namespace orbi;
using walls::ChernSpec;
using walls::NumLattice;
using walls::Vec;
using walls::Wall;
using walls::WallKind;

namespace {

NumLattice diag(std::vector<long> d) {
  NumLattice lat;
  long n = static_cast<long>(d.size());
  lat.gram.assign(n, std::vector<Int>(n, 0));
  for (long i = 0; i < n; ++i) lat.gram[i][i] = d[i];
  lat.validate();
  return lat;
}

Vec vec(std::vector<long> v) {
  Vec out;
  for (long x : v) out.push_back(Int(x));
  return out;
}

ChernSpec spec_of(long r, long delta_num, long delta_den = 1) {
  ChernSpec s;
  s.r = r;
  s.c1.assign(2, Int(0));
  s.c2 = make_rat(delta_num, delta_den) / make_rat(2 * r);
  return s;
}

}  // namespace

TEST_CASE("lattice validation enforces hyperbolic signature") {
  CHECK_NOTHROW(diag({1, -1}));
  CHECK_NOTHROW(diag({2, -2, -2}));
  CHECK_THROWS_AS(diag({1, 1}), Error);    // two positive directions
  CHECK_THROWS_AS(diag({-1, -1}), Error);  // no positive direction
  CHECK_THROWS_AS(diag({1, 0}), Error);    // degenerate
}

TEST_CASE("chern spec arithmetic") {
  NumLattice lat = diag({1, -1});
  ChernSpec s;
  s.r = 2;
  s.c1 = vec({2, 0});
  s.c2 = 1;
  CHECK(walls::slope(lat, s, vec({1, 0})) == 1);
  // 2*2*1 - 1*4 = 0
  CHECK(walls::discriminant(lat, s) == 0);
  s.c2 = make_rat(3, 2);
  CHECK(walls::discriminant(lat, s) == 2);

  // wall class of a rank-1 subobject
  CHECK(walls::subobject_wall_class(s, 1, vec({1, 1})) == vec({0, 2}));
}

TEST_CASE("segment walls for the worked rank-two example") {
  NumLattice lat = diag({1, -1});
  ChernSpec s = spec_of(2, 4);
  CHECK(walls::discriminant(lat, s) == 4);

  std::vector<Wall> found = walls::enumerate_walls(lat, s, vec({2, 1}), vec({2, -1}));
  REQUIRE(found.size() == 3);
  CHECK(found[0].xi == vec({0, 1}));
  CHECK(found[0].kind == WallKind::crosses);
  CHECK(found[0].xi_sq == -1);
  CHECK(found[1].xi == vec({1, -2}));
  CHECK(found[1].kind == WallKind::touches);
  CHECK(found[1].dot_h2 == 0);
  CHECK(found[2].xi == vec({1, 2}));
  CHECK(found[2].kind == WallKind::touches);
  CHECK(found[2].dot_h1 == 0);

  // the degenerate segment at an endpoint sees only the touching wall
  std::vector<Wall> at_h1 = walls::enumerate_walls(lat, s, vec({2, 1}), vec({2, 1}));
  REQUIRE(at_h1.size() == 1);
  CHECK(at_h1[0].xi == vec({1, 2}));
  CHECK(at_h1[0].kind == WallKind::contains_segment);
  CHECK(!walls::generic_check(lat, s, vec({2, 1})));
}

TEST_CASE("generic polarizations admit no wall") {
  NumLattice lat = diag({1, -1});
  // any wall through (3,1) needs xi = k(1,3), xi^2 = -8 below every bound here
  for (long delta = 1; delta <= 4; ++delta)
    CHECK(walls::generic_check(lat, spec_of(2, delta), vec({3, 1})));
  // but a large enough discriminant reaches it: -r^2 delta / 4 <= -8
  CHECK(!walls::generic_check(lat, spec_of(2, 8), vec({3, 1})));
}

TEST_CASE("trivial and empty wall systems") {
  NumLattice lat = diag({1, -1});
  // delta = 0: no negative square fits in [0, 0)
  CHECK(walls::enumerate_walls(lat, spec_of(2, 0), vec({2, 1}), vec({2, -1})).empty());
  // rank 1: delta < 0 impossible bound
  CHECK(walls::enumerate_walls(lat, spec_of(1, -2), vec({2, 1}), vec({2, -1})).empty());
}

TEST_CASE("polarizations must span ample rays") {
  NumLattice lat = diag({1, -1});
  ChernSpec s = spec_of(2, 4);
  CHECK_THROWS_AS(walls::enumerate_walls(lat, s, vec({1, 2}), vec({2, 1})), Error);
  CHECK_THROWS_AS(walls::enumerate_walls(lat, s, vec({1, 0}), vec({-1, 0})), Error);
}

TEST_CASE("certified radius loses no wall") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<long> xs(1, 6);
  for (NumLattice lat : {diag({1, -1}), diag({2, -2})}) {
    for (long r : {2L, 3L}) {
      for (long delta : {2L, 4L}) {
        ChernSpec s = spec_of(r, delta);
        for (int trial = 0; trial < 4; ++trial) {
          long x1 = xs(rng), x2 = xs(rng);
          std::uniform_int_distribution<long> y1(-x1 + 1, x1 - 1);
          std::uniform_int_distribution<long> y2(-x2 + 1, x2 - 1);
          Vec h1 = vec({x1, y1(rng)});
          Vec h2 = vec({x2, y2(rng)});
          Int radius = walls::certified_box_radius(lat, s, h1, h2);
          auto exact = walls::enumerate_walls(lat, s, h1, h2);
          auto wide = walls::enumerate_walls_in_box(lat, s, h1, h2, radius + 4);
          REQUIRE(exact.size() == wide.size());
          for (std::size_t i = 0; i < exact.size(); ++i) {
            CHECK(exact[i].xi == wide[i].xi);
            CHECK(exact[i].kind == wide[i].kind);
          }
        }
      }
    }
  }
}

TEST_CASE("walls are primitive, canonically signed and sorted") {
  NumLattice lat = diag({2, -2});
  ChernSpec s = spec_of(3, 4);
  auto found = walls::enumerate_walls(lat, s, vec({3, 2}), vec({4, -3}));
  for (std::size_t i = 0; i < found.size(); ++i) {
    const Wall& w = found[i];
    // first nonzero coordinate positive
    for (const Int& c : w.xi) {
      if (c != 0) {
        CHECK(c > 0);
        break;
      }
    }
    CHECK(w.xi_sq < 0);
    CHECK(w.xi_sq >= -Int(9));  // -r^2 delta / 4 = -9
    CHECK(w.dot_h1 * w.dot_h2 <= 0);
    if (i > 0) CHECK(found[i - 1].xi < w.xi);
  }
}

TEST_CASE("hyperbolic distance between rays") {
  NumLattice lat = diag({1, -1});
  CHECK(walls::cosh_distance_sq(lat, vec({1, 0}), vec({1, 0})) == 1);
  // cosh^2 d = (H.H')^2/(H^2 H'^2) = ((2*3-1*1)^2)/((4-1)(9-1)) = 25/24
  CHECK(walls::cosh_distance_sq(lat, vec({2, 1}), vec({3, 1})) == make_rat(25, 24));
}

TEST_CASE("lattice json forms") {
  NumLattice a = walls::numlattice_from_json(nlohmann::json::parse("[[1,0],[0,-1]]"));
  CHECK(a.rank() == 2);
  NumLattice b =
      walls::numlattice_from_json(nlohmann::json::parse(R"({"gram": [[2,1],[1,-2]]})"));
  CHECK(b.gram[0][1] == 1);
  CHECK_THROWS_AS(walls::numlattice_from_json(nlohmann::json::parse("[[1,0],[0,1]]")),
                  Error);

  auto ws = walls::enumerate_walls(diag({1, -1}), spec_of(2, 4), vec({2, 1}), vec({2, -1}));
  nlohmann::json j = walls::walls_to_json(ws);
  CHECK(j.size() == 3);
  CHECK(j[0]["kind"] == "crosses");
  CHECK(j[0]["xi"][1] == 1);
}
