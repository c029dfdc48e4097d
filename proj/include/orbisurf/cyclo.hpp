#pragma once

// Exact cyclotomic numbers and character theory for finite cyclic groups
// (arbitrary small groups via imported character tables).
//
// CycloNum stores an element of Q(zeta_N) as a rational coefficient vector
// over the power basis 1, zeta, ..., zeta^{N-1}, reduced modulo the N-th
// cyclotomic polynomial, so the support sits below phi(N) and equality at a
// fixed conductor is coefficient equality. Mixed-conductor operations lift
// lazily to the compositum Q(zeta_lcm).

#include <orbisurf/common.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace orbi::cyclo {

class CycloNum {
public:
  CycloNum() : conductor_(1), coeffs_(1, Rat(0)) {}
  explicit CycloNum(const Rat& value) : conductor_(1), coeffs_{value} {}
  explicit CycloNum(long value) : conductor_(1), coeffs_{make_rat(value)} {}

  // zeta_N^k
  static CycloNum root_of_unity(long N, long k);
  static CycloNum from_coeffs(long N, std::vector<Rat> coeffs);

  long conductor() const { return conductor_; }
  // Length == conductor; entries at index >= phi(conductor) are zero.
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  CycloNum lifted_to(long M) const;  // requires conductor | M

  CycloNum operator-() const;
  CycloNum operator+(const CycloNum& o) const;
  CycloNum operator-(const CycloNum& o) const;
  CycloNum operator*(const CycloNum& o) const;
  CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
  CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }

  CycloNum conj() const;  // zeta -> zeta^{-1}

  bool is_zero() const;
  bool is_rational() const;
  Rat to_rational() const;  // throws unless is_rational()

  // Equality of values: compares images in the compositum field.
  bool operator==(const CycloNum& o) const;
  bool operator!=(const CycloNum& o) const { return !(*this == o); }

private:
  long conductor_;
  std::vector<Rat> coeffs_;

  void reduce();  // mod Phi_conductor
};

long euler_phi(long n);
// Coefficients of Phi_n, ascending degree. Exact; cached.
const std::vector<Int>& cyclotomic_poly(long n);

// Character data for a finite group. Characters are class functions stored
// per group element (column g, row = irrep), identity first. For cyclic
// groups the table is square; imported tables may have fewer rows than
// columns and are validated by first orthogonality on import.
struct GroupData {
  long order = 1;
  std::vector<std::string> labels;               // element labels, identity first
  std::vector<std::vector<CycloNum>> table;      // irreps x elements

  long irrep_count() const { return static_cast<long>(table.size()); }
  long irrep_degree(long i) const;               // chi_i(e), a positive integer
};

// mu_r with elements e, g, ..., g^{r-1} and chi_j(g^k) = zeta_r^{jk}.
GroupData char_table_cyclic(long r);

// Throws orbi::Error unless rows are orthonormal and degrees are positive
// integers.
void validate_character_table(const GroupData& g);

GroupData group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const GroupData& g);

// Shared JSON conventions: rationals as {"num","den"} decimal strings (bare
// integers accepted on input), cyclotomic numbers as {"conductor","coeffs"}.
nlohmann::json rat_to_json(const Rat& q);
Rat rat_from_json(const nlohmann::json& j);
nlohmann::json cyclo_to_json(const CycloNum& v);
CycloNum cyclo_from_json(const nlohmann::json& j);

// (1/|G|) sum_g a(g) * conj(b(g)). Asserts the result is rational.
Rat inner_product(const GroupData& g, const std::vector<CycloNum>& a,
                  const std::vector<CycloNum>& b);

// Virtual integer combination of the group's irreps.
struct RepClass {
  std::vector<long> mult;  // one entry per irrep row

  bool operator==(const RepClass& o) const { return mult == o.mult; }
};

RepClass irrep(const GroupData& g, long i);
RepClass zero_rep(const GroupData& g);
RepClass regular_rep(const GroupData& g);
RepClass add(const RepClass& a, const RepClass& b);
RepClass scale(long c, const RepClass& a);

std::vector<CycloNum> character(const GroupData& g, const RepClass& r);
long degree(const GroupData& g, const RepClass& r);

// Inverse of character(): multiplicities via inner products with the irreps.
// Throws if a multiplicity is non-integral or the reconstruction differs.
RepClass decompose(const GroupData& g, const std::vector<CycloNum>& chi);

RepClass tensor(const GroupData& g, const RepClass& a, const RepClass& b);
RepClass dual_rep(const GroupData& g, const RepClass& a);

Rat inner_product(const GroupData& g, const RepClass& a, const RepClass& b);

}  // namespace orbi::cyclo
