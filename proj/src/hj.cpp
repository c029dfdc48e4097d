#include <orbisurf/hj.hpp>

#include <numeric>

namespace orbi::hj {

long mod_inverse(long a, long r) {
  a %= r;
  if (a < 0) a += r;
  long t = 0, new_t = 1;
  long n = r, new_n = a;
  while (new_n != 0) {
    long q = n / new_n;
    t -= q * new_t;
    std::swap(t, new_t);
    n -= q * new_n;
    std::swap(n, new_n);
  }
  if (n != 1) throw Error("hjres", "element is not invertible modulo r");
  if (t < 0) t += r;
  return t;
}

SingType validated(long r, long a) {
  if (r < 2) throw Error("hjres", "singularity order must be at least 2");
  if (a <= 0 || a >= r) throw Error("hjres", "weight must satisfy 0 < a < r");
  if (std::gcd(a, r) != 1) throw Error("hjres", "gcd(a,r) != 1: not an isolated cyclic quotient point");
  return SingType{r, a};
}

HJChain hj_chain(const SingType& t) {
  validated(t.r, t.a);
  HJChain chain;
  chain.type = t;
  long r = t.r, a = t.a;
  while (a > 0) {
    long b = (r + a - 1) / a;  // ceil(r/a)
    chain.b.push_back(b);
    long next_r = a;
    long next_a = b * a - r;
    r = next_r;
    a = next_a;
  }
  // Terminates with r == 1: the recursion maintains gcd(r,a) = 1 and r > a >= 0.
  if (r != 1) throw Error("hjres", "continued fraction did not terminate at 1");
  return chain;
}

SingType dual(const SingType& t) {
  validated(t.r, t.a);
  return SingType{t.r, mod_inverse(t.a, t.r)};
}

std::optional<SingType> normalize_fixed_point(long r, long u1, long u2) {
  if (r < 1) throw Error("hjres", "group order must be positive");
  if (r == 1) return std::nullopt;
  long w1 = ((u1 % r) + r) % r;
  long w2 = ((u2 % r) + r) % r;
  if (std::gcd(w1, r) != 1 || std::gcd(w2, r) != 1)
    throw Error("hjres", "non-isolated fixed locus: a weight is not a unit modulo r");
  long a = (w2 * mod_inverse(w1, r)) % r;
  return validated(r, a);
}

}  // namespace orbi::hj
