#include <orbisurf/cyclo.hpp>

#include <algorithm>
#include <map>
#include <numeric>

namespace orbi::cyclo {

namespace {

// Remainder of p (ascending coeffs) modulo the monic integer polynomial m.
void poly_mod_monic(std::vector<Rat>& p, const std::vector<Int>& m) {
  const long dm = static_cast<long>(m.size()) - 1;
  for (long d = static_cast<long>(p.size()) - 1; d >= dm; --d) {
    Rat lead = p[d];
    if (lead == 0) continue;
    // p -= lead * x^{d-dm} * m
    for (long k = 0; k <= dm; ++k) p[d - dm + k] -= lead * Rat(m[k]);
  }
}

}  // namespace

long euler_phi(long n) {
  long result = n;
  long v = n;
  for (long p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      while (v % p == 0) v /= p;
      result -= result / p;
    }
  }
  if (v > 1) result -= result / v;
  return result;
}

const std::vector<Int>& cyclotomic_poly(long n) {
  static std::map<long, std::vector<Int>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division.
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const std::vector<Int>& phi_d = cyclotomic_poly(d);
    // Divide num by phi_d (monic), exactly.
    std::vector<Int> quot(num.size() - phi_d.size() + 1, Int(0));
    std::vector<Int> rem = num;
    const long dd = static_cast<long>(phi_d.size()) - 1;
    for (long k = static_cast<long>(rem.size()) - 1; k >= dd; --k) {
      Int c = rem[k];
      if (c == 0) continue;
      quot[k - dd] = c;
      for (long j = 0; j <= dd; ++j) rem[k - dd + j] -= c * phi_d[j];
    }
    for (const Int& c : rem)
      if (c != 0) throw Error("cyclo", "cyclotomic polynomial division not exact");
    num = std::move(quot);
  }
  while (num.size() > 1 && num.back() == 0) num.pop_back();
  return cache.emplace(n, std::move(num)).first->second;
}

void CycloNum::reduce() {
  const std::vector<Int>& phi = cyclotomic_poly(conductor_);
  // Fold exponents mod N first (callers may pass raw power-basis vectors).
  if (static_cast<long>(coeffs_.size()) > conductor_) {
    for (long k = conductor_; k < static_cast<long>(coeffs_.size()); ++k)
      coeffs_[k % conductor_] += coeffs_[k];
    coeffs_.resize(conductor_);
  }
  poly_mod_monic(coeffs_, phi);
  coeffs_.resize(conductor_, Rat(0));
}

CycloNum CycloNum::root_of_unity(long N, long k) {
  if (N < 1) throw Error("cyclo", "conductor must be positive");
  CycloNum c;
  c.conductor_ = N;
  c.coeffs_.assign(N, Rat(0));
  k %= N;
  if (k < 0) k += N;
  c.coeffs_[k] = 1;
  c.reduce();
  return c;
}

CycloNum CycloNum::from_coeffs(long N, std::vector<Rat> coeffs) {
  if (N < 1) throw Error("cyclo", "conductor must be positive");
  CycloNum c;
  c.conductor_ = N;
  c.coeffs_ = std::move(coeffs);
  c.coeffs_.resize(std::max<std::size_t>(c.coeffs_.size(), N), Rat(0));
  c.reduce();
  return c;
}

CycloNum CycloNum::lifted_to(long M) const {
  if (M % conductor_ != 0) throw Error("cyclo", "lift target is not a multiple of conductor");
  if (M == conductor_) return *this;
  CycloNum c;
  c.conductor_ = M;
  c.coeffs_.assign(M, Rat(0));
  const long step = M / conductor_;
  for (long k = 0; k < conductor_; ++k) c.coeffs_[(k * step) % M] += coeffs_[k];
  c.reduce();
  return c;
}

CycloNum CycloNum::operator-() const {
  CycloNum c = *this;
  for (Rat& q : c.coeffs_) q = -q;
  return c;
}

CycloNum CycloNum::operator+(const CycloNum& o) const {
  const long L = std::lcm(conductor_, o.conductor_);
  CycloNum a = lifted_to(L);
  CycloNum b = o.lifted_to(L);
  for (long k = 0; k < L; ++k) a.coeffs_[k] += b.coeffs_[k];
  a.reduce();
  return a;
}

CycloNum CycloNum::operator-(const CycloNum& o) const { return *this + (-o); }

CycloNum CycloNum::operator*(const CycloNum& o) const {
  const long L = std::lcm(conductor_, o.conductor_);
  CycloNum a = lifted_to(L);
  CycloNum b = o.lifted_to(L);
  std::vector<Rat> prod(L, Rat(0));
  for (long i = 0; i < L; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (long j = 0; j < L; ++j) {
      if (b.coeffs_[j] == 0) continue;
      prod[(i + j) % L] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  a.coeffs_ = std::move(prod);
  a.reduce();
  return a;
}

CycloNum CycloNum::conj() const {
  CycloNum c;
  c.conductor_ = conductor_;
  c.coeffs_.assign(conductor_, Rat(0));
  for (long k = 0; k < conductor_; ++k) c.coeffs_[(conductor_ - k) % conductor_] += coeffs_[k];
  c.reduce();
  return c;
}

bool CycloNum::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& q) { return q == 0; });
}

bool CycloNum::is_rational() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    if (coeffs_[k] != 0) return false;
  return true;
}

Rat CycloNum::to_rational() const {
  if (!is_rational()) throw Error("cyclo", "value is not rational");
  return coeffs_[0];
}

bool CycloNum::operator==(const CycloNum& o) const {
  const long L = std::lcm(conductor_, o.conductor_);
  return lifted_to(L).coeffs_ == o.lifted_to(L).coeffs_;
}

long GroupData::irrep_degree(long i) const {
  const CycloNum& v = table.at(i).at(0);
  if (!v.is_rational()) throw Error("cyclo", "irrep degree is not rational");
  Rat d = v.to_rational();
  if (!rat_is_integer(d) || d <= 0) throw Error("cyclo", "irrep degree is not a positive integer");
  return checked_long(Int(d.get_num()), "irrep degree");
}

GroupData char_table_cyclic(long r) {
  if (r < 1) throw Error("cyclo", "group order must be positive");
  GroupData g;
  g.order = r;
  g.labels.reserve(r);
  for (long k = 0; k < r; ++k) {
    if (k == 0)
      g.labels.push_back("e");
    else if (k == 1)
      g.labels.push_back("g");
    else
      g.labels.push_back("g^" + std::to_string(k));
  }
  g.table.assign(r, std::vector<CycloNum>(r));
  for (long j = 0; j < r; ++j)
    for (long k = 0; k < r; ++k) g.table[j][k] = CycloNum::root_of_unity(r, j * k);
  return g;
}

void validate_character_table(const GroupData& g) {
  if (g.order < 1) throw Error("cyclo", "group order must be positive");
  if (static_cast<long>(g.labels.size()) != g.order)
    throw Error("cyclo", "label count does not match group order");
  if (g.table.empty()) throw Error("cyclo", "character table has no rows");
  for (const auto& row : g.table)
    if (static_cast<long>(row.size()) != g.order)
      throw Error("cyclo", "character table row length does not match group order");
  for (long i = 0; i < g.irrep_count(); ++i) g.irrep_degree(i);  // throws if invalid
  for (long i = 0; i < g.irrep_count(); ++i) {
    for (long j = 0; j < g.irrep_count(); ++j) {
      Rat ip = inner_product(g, g.table[i], g.table[j]);
      if (ip != (i == j ? 1 : 0))
        throw Error("cyclo", "character table rows are not orthonormal");
    }
  }
}

nlohmann::json rat_to_json(const Rat& q) {
  return nlohmann::json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return make_rat(j.get<long>());
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw Error("cyclo", "rational must be an integer or a {num,den} object");
  Rat q(Int(j.at("num").get<std::string>()), Int(j.at("den").get<std::string>()));
  if (q.get_den() == 0) throw Error("cyclo", "rational has zero denominator");
  q.canonicalize();
  return q;
}

nlohmann::json cyclo_to_json(const CycloNum& v) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Rat& q : v.coeffs()) coeffs.push_back(rat_to_json(q));
  return nlohmann::json{{"conductor", v.conductor()}, {"coeffs", coeffs}};
}

CycloNum cyclo_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return CycloNum(j.get<long>());
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
    throw Error("cyclo", "cyclotomic number must be an integer or a {conductor,coeffs} object");
  long n = j.at("conductor").get<long>();
  std::vector<Rat> coeffs;
  for (const auto& e : j.at("coeffs")) coeffs.push_back(rat_from_json(e));
  return CycloNum::from_coeffs(n, std::move(coeffs));
}

GroupData group_from_json(const nlohmann::json& j) {
  GroupData g;
  g.order = j.at("order").get<long>();
  g.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& row : j.at("table")) {
    std::vector<CycloNum> r;
    for (const auto& e : row) r.push_back(cyclo_from_json(e));
    g.table.push_back(std::move(r));
  }
  validate_character_table(g);
  return g;
}

nlohmann::json group_to_json(const GroupData& g) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : g.table) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(cyclo_to_json(v));
    table.push_back(std::move(r));
  }
  return nlohmann::json{{"order", g.order}, {"labels", g.labels}, {"table", table}};
}

Rat inner_product(const GroupData& g, const std::vector<CycloNum>& a,
                  const std::vector<CycloNum>& b) {
  if (a.size() != b.size() || static_cast<long>(a.size()) != g.order)
    throw Error("cyclo", "character length does not match group order");
  CycloNum sum;
  for (long k = 0; k < g.order; ++k) sum += a[k] * b[k].conj();
  if (!sum.is_rational())
    throw Error("cyclo", "character inner product is not rational");
  return sum.to_rational() / Rat(g.order);
}

RepClass irrep(const GroupData& g, long i) {
  if (i < 0 || i >= g.irrep_count()) throw Error("cyclo", "irrep index out of range");
  RepClass r;
  r.mult.assign(g.irrep_count(), 0);
  r.mult[i] = 1;
  return r;
}

RepClass zero_rep(const GroupData& g) {
  RepClass r;
  r.mult.assign(g.irrep_count(), 0);
  return r;
}

RepClass regular_rep(const GroupData& g) {
  // chi_reg(e) = |G|, zero elsewhere; equivalently multiplicity = degree.
  RepClass r;
  r.mult.resize(g.irrep_count());
  for (long i = 0; i < g.irrep_count(); ++i) r.mult[i] = g.irrep_degree(i);
  return r;
}

RepClass add(const RepClass& a, const RepClass& b) {
  if (a.mult.size() != b.mult.size()) throw Error("cyclo", "rep class size mismatch");
  RepClass r = a;
  for (std::size_t i = 0; i < r.mult.size(); ++i) r.mult[i] += b.mult[i];
  return r;
}

RepClass scale(long c, const RepClass& a) {
  RepClass r = a;
  for (long& m : r.mult) m *= c;
  return r;
}

std::vector<CycloNum> character(const GroupData& g, const RepClass& r) {
  if (static_cast<long>(r.mult.size()) != g.irrep_count())
    throw Error("cyclo", "rep class does not match group");
  std::vector<CycloNum> chi(g.order);
  for (long k = 0; k < g.order; ++k) {
    CycloNum v;
    for (long i = 0; i < g.irrep_count(); ++i) {
      if (r.mult[i] == 0) continue;
      v += CycloNum(make_rat(r.mult[i])) * g.table[i][k];
    }
    chi[k] = v;
  }
  return chi;
}

long degree(const GroupData& g, const RepClass& r) {
  long d = 0;
  for (long i = 0; i < g.irrep_count(); ++i) d += r.mult[i] * g.irrep_degree(i);
  return d;
}

RepClass decompose(const GroupData& g, const std::vector<CycloNum>& chi) {
  RepClass r;
  r.mult.resize(g.irrep_count());
  for (long i = 0; i < g.irrep_count(); ++i) {
    Rat m = inner_product(g, chi, g.table[i]);
    if (!rat_is_integer(m))
      throw Error("cyclo", "character does not decompose integrally");
    r.mult[i] = checked_long(Int(m.get_num()), "irrep multiplicity");
  }
  std::vector<CycloNum> back = character(g, r);
  for (long k = 0; k < g.order; ++k)
    if (!(back[k] == chi[k]))
      throw Error("cyclo", "character is not in the span of the irreps");
  return r;
}

RepClass tensor(const GroupData& g, const RepClass& a, const RepClass& b) {
  std::vector<CycloNum> ca = character(g, a);
  std::vector<CycloNum> cb = character(g, b);
  std::vector<CycloNum> prod(g.order);
  for (long k = 0; k < g.order; ++k) prod[k] = ca[k] * cb[k];
  return decompose(g, prod);
}

RepClass dual_rep(const GroupData& g, const RepClass& a) {
  std::vector<CycloNum> ca = character(g, a);
  for (auto& v : ca) v = v.conj();
  return decompose(g, ca);
}

Rat inner_product(const GroupData& g, const RepClass& a, const RepClass& b) {
  return inner_product(g, character(g, a), character(g, b));
}

}  // namespace orbi::cyclo
