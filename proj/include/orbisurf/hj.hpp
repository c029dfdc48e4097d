#pragma once

// Cyclic quotient surface singularities 1/r(1,a) and their minimal
// resolutions via Hirzebruch-Jung continued fractions.

#include <orbisurf/common.hpp>

#include <optional>
#include <vector>

namespace orbi::hj {

// 1/r(1,a): the quotient of C^2 by mu_r acting with weights (1,a),
// gcd(a,r) = 1, 0 < a < r, r >= 2.
struct SingType {
  long r = 2;
  long a = 1;

  bool operator==(const SingType& o) const { return r == o.r && a == o.a; }
};

// Exceptional chain of the minimal resolution. b holds the negated
// self-intersections: curve i has self-intersection -b[i], b[i] >= 2, and
// r/a = b[0] - 1/(b[1] - 1/(... - 1/b[s-1])). Orientation is part of the
// data: the curve at b.front() meets the strict transform of the axis
// carrying the first weight, b.back() the axis carrying the second.
struct HJChain {
  SingType type;
  std::vector<long> b;
};

SingType validated(long r, long a);  // throws on invalid input

HJChain hj_chain(const SingType& t);

// a' with a*a' == 1 mod r; hj_chain(dual(t)).b is hj_chain(t).b reversed.
SingType dual(const SingType& t);

// Normalizes an isolated cyclic fixed point with cotangent weights (u1,u2)
// to 1/r(1, u2*u1^{-1} mod r). Requires gcd(u1,r) = gcd(u2,r) = 1 (else the
// fixed locus is non-isolated and the call throws). r == 1 yields nullopt:
// the point is smooth.
std::optional<SingType> normalize_fixed_point(long r, long u1, long u2);

long mod_inverse(long a, long r);  // throws unless gcd(a,r) = 1

}  // namespace orbi::hj
