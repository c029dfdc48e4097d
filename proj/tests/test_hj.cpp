#include <doctest.h>

#include <orbisurf/hj.hpp>

#include <algorithm>
#include <numeric>

using namespace orbi;
using hj::SingType;

namespace {

// Evaluate the continued fraction b0 - 1/(b1 - 1/(...)) exactly.
Rat continued_fraction(const std::vector<long>& b) {
  Rat value = make_rat(b.back());
  for (auto it = b.rbegin() + 1; it != b.rend(); ++it)
    value = make_rat(*it) - Rat(1) / value;
  return value;
}

}  // namespace

TEST_CASE("resolution chains of the standard quotient points") {
  using V = std::vector<long>;
  CHECK(hj::hj_chain({2, 1}).b == V{2});
  CHECK(hj::hj_chain({3, 2}).b == V{2, 2});
  CHECK(hj::hj_chain({3, 1}).b == V{3});
  CHECK(hj::hj_chain({4, 3}).b == V{2, 2, 2});
  CHECK(hj::hj_chain({4, 1}).b == V{4});
  CHECK(hj::hj_chain({6, 5}).b == V{2, 2, 2, 2, 2});
  CHECK(hj::hj_chain({6, 1}).b == V{6});

  // Two mixed entries worked out by hand: 5/2 = 3 - 1/2, 7/5 = [2,2,3].
  CHECK(hj::hj_chain({5, 2}).b == V{3, 2});
  CHECK(hj::hj_chain({7, 5}).b == V{2, 2, 3});
}

TEST_CASE("chains expand back to r/a and stay minimal") {
  for (long r = 2; r <= 50; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      hj::HJChain c = hj::hj_chain({r, a});
      CHECK(continued_fraction(c.b) == make_rat(r, a));
      // Minimality: no (-1)-curves in the exceptional chain.
      for (long b : c.b) CHECK(b >= 2);
    }
}

TEST_CASE("dual type inverts a, chain reverses") {
  for (long r = 2; r <= 50; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      SingType d = hj::dual({r, a});
      CHECK(d.r == r);
      CHECK((a * d.a) % r == 1);
      std::vector<long> rev = hj::hj_chain({r, a}).b;
      std::reverse(rev.begin(), rev.end());
      CHECK(hj::hj_chain(d).b == rev);
    }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(hj::validated(0, 1), Error);
  CHECK_THROWS_AS(hj::validated(4, 0), Error);
  CHECK_THROWS_AS(hj::validated(4, 4), Error);
  CHECK_THROWS_AS(hj::validated(4, 2), Error);
  CHECK_THROWS_AS(hj::validated(6, 3), Error);
  CHECK(hj::validated(6, 5).a == 5);
}

TEST_CASE("modular inverse") {
  CHECK(hj::mod_inverse(3, 7) == 5);
  CHECK(hj::mod_inverse(1, 2) == 1);
  CHECK(hj::mod_inverse(5, 6) == 5);
  CHECK_THROWS_AS(hj::mod_inverse(2, 4), Error);
}

TEST_CASE("fixed points normalize to 1/r(1,a) form") {
  // weights (2,3) at r=5: a = 3 * 2^{-1} = 3 * 3 = 9 = 4 mod 5
  auto t = hj::normalize_fixed_point(5, 2, 3);
  REQUIRE(t.has_value());
  CHECK(*t == SingType{5, 4});

  // already normalized
  CHECK(*hj::normalize_fixed_point(6, 1, 1) == SingType{6, 1});

  // order one means a smooth point
  CHECK(!hj::normalize_fixed_point(1, 0, 0).has_value());

  // non-unit weight: the fixed locus is a curve, not a point
  CHECK_THROWS_AS(hj::normalize_fixed_point(4, 2, 1), Error);
  CHECK_THROWS_AS(hj::normalize_fixed_point(6, 1, 3), Error);

  // weights only matter mod r
  CHECK(*hj::normalize_fixed_point(5, 7, 13) == *hj::normalize_fixed_point(5, 2, 3));
}

TEST_CASE("normalized data reproduces the chain regardless of orientation") {
  // 1/m(1, m-1) resolves to a palindromic chain of (m-1) curves of
  // self-intersection -2, so the two weight orders agree.
  for (long m : {2, 3, 4, 6}) {
    auto t = hj::normalize_fixed_point(m, 1, m - 1);
    REQUIRE(t.has_value());
    std::vector<long> b = hj::hj_chain(*t).b;
    CHECK(static_cast<long>(b.size()) == m - 1);
    for (long v : b) CHECK(v == 2);
    auto t2 = hj::normalize_fixed_point(m, m - 1, 1);
    CHECK(hj::hj_chain(*t2).b == b);
  }
}
