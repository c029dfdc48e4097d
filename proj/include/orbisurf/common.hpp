#pragma once

// Shared scalar types and the library-wide error convention.
// All arithmetic in this library is exact: integers are GMP mpz_class,
// rationals are GMP mpq_class kept canonicalized (den > 0, gcd = 1).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbi {

using Int = mpz_class;
using Rat = mpq_class;

// Domain error carrying the module that raised it; the CLI maps this to a
// {"error","module","detail"} object on stderr and exit code 1.
class Error : public std::runtime_error {
public:
  Error(std::string module, std::string detail)
      : std::runtime_error(module + ": " + detail),
        module_(std::move(module)),
        detail_(std::move(detail)) {}

  const std::string& module() const { return module_; }
  const std::string& detail() const { return detail_; }

private:
  std::string module_;
  std::string detail_;
};

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

// Exact floor of a nonnegative rational's square root.
inline Int isqrt_floor(const Rat& q) {
  if (q < 0) throw Error("common", "isqrt of negative rational");
  // floor(sqrt(n/d)) = floor(sqrt(n*d)/d) computed via integer sqrt.
  Int n = q.get_num() * q.get_den();
  Int root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return root / q.get_den();
}

inline long checked_long(const Int& v, const char* what) {
  if (!v.fits_slong_p()) throw Error("common", std::string(what) + " out of range");
  return v.get_si();
}

}  // namespace orbi
