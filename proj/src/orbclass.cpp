#include <orbisurf/orbclass.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace orbi::orbclass {

namespace {

long positive_mod(long a, long m) {
  long v = a % m;
  return v < 0 ? v + m : v;
}

const cyclo::GroupData& group_of(long r) {
  static std::map<long, cyclo::GroupData> cache;
  auto it = cache.find(r);
  if (it == cache.end()) it = cache.emplace(r, cyclo::char_table_cyclic(r)).first;
  return it->second;
}

long rat_to_long(const Rat& q, const char* what) {
  if (!rat_is_integer(q)) throw Error("orbclass", std::string(what) + " is not an integer");
  return checked_long(Int(q.get_num()), what);
}

// Euler-form tables for one stacky point, indexed by nontrivial irreps.
struct PointTables {
  long r = 1;
  long kidx = 0;                      // index of rho_{w1+w2}
  std::vector<long> point_to_x;       // chi(O_p rho_i, O_X)
  std::vector<long> x_to_point;       // chi(O_X, O_p rho_i)
  std::vector<std::vector<long>> pp;  // chi(O_p rho_i, O_p rho_j)
};

const PointTables& tables_of(const StackyPoint& p) {
  static std::map<std::array<long, 3>, PointTables> cache;
  std::array<long, 3> key{p.r, positive_mod(p.w1, p.r), positive_mod(p.w2, p.r)};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const cyclo::GroupData& g = group_of(p.r);
  const long r = p.r;
  PointTables t;
  t.r = r;
  t.kidx = positive_mod(key[1] + key[2], r);
  cyclo::RepClass omega = cyclo::zero_rep(g);
  omega.mult[key[1]] += 1;
  omega.mult[key[2]] += 1;
  cyclo::RepClass kan = cyclo::irrep(g, t.kidx);

  t.point_to_x.assign(r - 1, 0);
  t.x_to_point.assign(r - 1, 0);
  t.pp.assign(r - 1, std::vector<long>(r - 1, 0));
  for (long i = 1; i < r; ++i) {
    cyclo::RepClass ri = cyclo::irrep(g, i);
    cyclo::RepClass rik = cyclo::tensor(g, ri, kan);
    cyclo::RepClass rio = cyclo::tensor(g, ri, omega);
    t.point_to_x[i - 1] =
        rat_to_long(cyclo::inner_product(g, cyclo::irrep(g, 0), rik), "pairing");
    t.x_to_point[i - 1] =
        rat_to_long(cyclo::inner_product(g, ri, cyclo::irrep(g, 0)), "pairing");
    for (long j = 1; j < r; ++j) {
      cyclo::RepClass rj = cyclo::irrep(g, j);
      Rat v = cyclo::inner_product(g, rj, ri) - cyclo::inner_product(g, rj, rio) +
              cyclo::inner_product(g, rj, rik);
      t.pp[i - 1][j - 1] = rat_to_long(v, "pairing");
    }
  }
  return cache.emplace(key, std::move(t)).first->second;
}

std::vector<long> coeffs_at(const KClassN& a, const StackyPoint& p) {
  auto it = a.coeffs.find(p.label);
  if (it == a.coeffs.end()) return std::vector<long>(p.r - 1, 0);
  if (static_cast<long>(it->second.size()) != p.r - 1)
    throw Error("orbclass", "coefficient vector at " + p.label + " must have length " +
                                std::to_string(p.r - 1));
  return it->second;
}

}  // namespace

void StackyPoint::validate() const {
  if (label.empty()) throw Error("orbclass", "stacky point needs a label");
  if (r < 2) throw Error("orbclass", "stacky point order must be at least 2");
  if (std::gcd(positive_mod(w1, r), r) != 1 || std::gcd(positive_mod(w2, r), r) != 1)
    throw Error("orbclass", "weights at " + label + " must be units mod " +
                                std::to_string(r) + " (isolated fixed point)");
}

const StackyPoint& OrbSurface::point(const std::string& label) const {
  for (const auto& p : points)
    if (p.label == label) return p;
  throw Error("orbclass", "unknown stacky point: " + label);
}

void OrbSurface::validate() const {
  std::set<std::string> seen;
  for (const auto& p : points) {
    p.validate();
    if (!seen.insert(p.label).second)
      throw Error("orbclass", "duplicate stacky point label: " + p.label);
  }
}

bool OrbChern::operator==(const OrbChern& o) const {
  if (rank != o.rank || deg != o.deg || ch2 != o.ch2) return false;
  std::set<std::string> labels;
  for (const auto& [l, v] : twisted) labels.insert(l);
  for (const auto& [l, v] : o.twisted) labels.insert(l);
  for (const auto& l : labels) {
    auto a = twisted.find(l);
    auto b = o.twisted.find(l);
    const std::vector<cyclo::CycloNum>* va = a == twisted.end() ? nullptr : &a->second;
    const std::vector<cyclo::CycloNum>* vb = b == o.twisted.end() ? nullptr : &b->second;
    std::size_t n = va ? va->size() : vb->size();
    if (va && vb && va->size() != vb->size()) return false;
    for (std::size_t k = 0; k < n; ++k) {
      cyclo::CycloNum x = va ? (*va)[k] : cyclo::CycloNum();
      cyclo::CycloNum y = vb ? (*vb)[k] : cyclo::CycloNum();
      if (!(x == y)) return false;
    }
  }
  return true;
}

OrbChern orb_chern_skyscraper(const StackyPoint& p, const cyclo::RepClass& rep) {
  p.validate();
  const cyclo::GroupData& g = group_of(p.r);
  if (static_cast<long>(rep.mult.size()) != g.irrep_count())
    throw Error("orbclass", "representation has wrong number of irreps");
  OrbChern c;
  c.ch2 = Rat(cyclo::degree(g, rep), p.r);
  c.ch2.canonicalize();
  std::vector<cyclo::CycloNum> chi = cyclo::character(g, rep);
  std::vector<cyclo::CycloNum> sectors;
  for (long k = 1; k < p.r; ++k) {
    cyclo::CycloNum one(1);
    cyclo::CycloNum f1 = one - cyclo::CycloNum::root_of_unity(p.r, positive_mod(p.w1 * k, p.r));
    cyclo::CycloNum f2 = one - cyclo::CycloNum::root_of_unity(p.r, positive_mod(p.w2 * k, p.r));
    sectors.push_back(f1 * f2 * chi[k]);
  }
  c.twisted[p.label] = std::move(sectors);
  return c;
}

OrbChern orb_chern(const OrbSurface& x, const KClassN& a) {
  x.validate();
  OrbChern c;
  c.ch2 = make_rat(a.n0);
  for (const auto& p : x.points) {
    std::vector<long> n = coeffs_at(a, p);
    const cyclo::GroupData& g = group_of(p.r);
    cyclo::RepClass rep = cyclo::zero_rep(g);
    for (long i = 1; i < p.r; ++i) rep.mult[i] = n[i - 1];
    OrbChern piece = orb_chern_skyscraper(p, rep);
    c.ch2 += piece.ch2;
    c.twisted[p.label] = piece.twisted[p.label];
  }
  for (const auto& [label, v] : a.coeffs) x.point(label);  // reject unknown labels
  return c;
}

namespace {

// [O_p rho_0] = [O_q] - sum_{i>=1} deg(rho_i) [O_p rho_i], asserted through
// Chern characters once per local type.
void assert_trivial_twist_identity(const StackyPoint& p) {
  static std::set<std::array<long, 3>> verified;
  std::array<long, 3> key{p.r, positive_mod(p.w1, p.r), positive_mod(p.w2, p.r)};
  if (verified.count(key)) return;
  const cyclo::GroupData& g = group_of(p.r);
  OrbChern lhs = orb_chern_skyscraper(p, cyclo::regular_rep(g));
  OrbChern rhs;  // ch(O_q): a free orbit point of plain degree 1
  rhs.ch2 = 1;
  if (!(lhs == rhs))
    throw Error("orbclass",
                "trivial-twist elimination identity failed at order " + std::to_string(p.r));
  verified.insert(key);
}

}  // namespace

KClassN kclass_of_quotient(const OrbSurface& x, const std::string& point_label,
                           const cyclo::RepClass& v) {
  x.validate();
  const StackyPoint& p = x.point(point_label);
  assert_trivial_twist_identity(p);
  const cyclo::GroupData& g = group_of(p.r);
  if (static_cast<long>(v.mult.size()) != g.irrep_count())
    throw Error("orbclass", "representation has wrong number of irreps");
  for (long m : v.mult)
    if (m < 0) throw Error("orbclass", "quotient representation needs nonnegative multiplicities");
  KClassN out;
  out.n0 = v.mult[0];
  std::vector<long> c(p.r - 1, 0);
  for (long i = 1; i < p.r; ++i)
    c[i - 1] = v.mult[i] - v.mult[0] * g.irrep_degree(i);
  out.coeffs[p.label] = std::move(c);
  return out;
}

Int euler_pairing(const OrbSurface& x, const ExtClass& a, const ExtClass& b) {
  x.validate();
  for (const auto& [label, v] : a.part.coeffs) x.point(label);
  for (const auto& [label, v] : b.part.coeffs) x.point(label);
  Rat total = 0;
  if (a.m != 0 && b.m != 0) {
    if (!x.chi_structure)
      throw Error("orbclass", "pairing needs chi(O_X) when both classes have nonzero rank");
    total += make_rat(a.m) * make_rat(b.m) * make_rat(*x.chi_structure);
  }
  total += make_rat(a.m) * make_rat(b.part.n0);
  total += make_rat(a.part.n0) * make_rat(b.m);
  for (const auto& p : x.points) {
    const PointTables& t = tables_of(p);
    std::vector<long> va = coeffs_at(a.part, p);
    std::vector<long> vb = coeffs_at(b.part, p);
    for (long j = 0; j < p.r - 1; ++j) total += make_rat(a.m) * make_rat(vb[j] * t.x_to_point[j]);
    for (long i = 0; i < p.r - 1; ++i) total += make_rat(va[i] * t.point_to_x[i]) * make_rat(b.m);
    for (long i = 0; i < p.r - 1; ++i)
      for (long j = 0; j < p.r - 1; ++j)
        total += make_rat(va[i]) * make_rat(vb[j]) * make_rat(t.pp[i][j]);
  }
  if (!rat_is_integer(total)) throw Error("orbclass", "euler pairing is not an integer");
  return Int(total.get_num());
}

KClassN twist_by_K(const OrbSurface& x, const KClassN& a) {
  x.validate();
  KClassN out;
  out.n0 = a.n0;
  for (const auto& p : x.points) {
    const cyclo::GroupData& g = group_of(p.r);
    const PointTables& t = tables_of(p);
    std::vector<long> n = coeffs_at(a, p);
    std::vector<long> c(p.r - 1, 0);
    cyclo::RepClass kan = cyclo::irrep(g, t.kidx);
    for (long i = 1; i < p.r; ++i) {
      if (n[i - 1] == 0) continue;
      cyclo::RepClass shifted = cyclo::tensor(g, cyclo::irrep(g, i), kan);
      long m0 = shifted.mult[0];
      if (m0 != 0) {
        assert_trivial_twist_identity(p);
        out.n0 += n[i - 1] * m0;
      }
      for (long l = 1; l < p.r; ++l)
        c[l - 1] += n[i - 1] * (shifted.mult[l] - m0 * g.irrep_degree(l));
    }
    out.coeffs[p.label] = std::move(c);
  }
  return out;
}

HilbResult hilb_dim(const OrbSurface& x, const KClassN& a) {
  x.validate();
  for (const auto& [label, v] : a.coeffs) x.point(label);
  long dim = 2 * a.n0;
  for (const auto& p : x.points) {
    const PointTables& t = tables_of(p);
    std::vector<long> n = coeffs_at(a, p);
    for (long i = 0; i < p.r - 1; ++i) {
      dim += n[i] * t.point_to_x[i];
      for (long j = 0; j < p.r - 1; ++j) dim -= n[i] * n[j] * t.pp[i][j];
    }
  }
  return HilbResult{dim, dim < 0};
}

namespace {

struct Staircase {
  std::vector<std::array<long, 2>> gens;  // minimal, a descending, b ascending
  std::vector<std::array<long, 2>> standard;
  long colength = 0;
};

Staircase staircase_of(const std::vector<std::array<long, 2>>& raw) {
  if (raw.empty()) throw Error("orbclass", "monomial ideal needs at least one generator");
  for (const auto& g : raw)
    if (g[0] < 0 || g[1] < 0) throw Error("orbclass", "negative exponent in generator");
  std::vector<std::array<long, 2>> gens;
  for (const auto& g : raw) {
    bool divisible = false;
    for (const auto& h : raw)
      if (h != g && h[0] <= g[0] && h[1] <= g[1]) {
        // Strict divisor, or the equal twin with smaller index wins.
        if (h[0] < g[0] || h[1] < g[1] || &h < &g) divisible = true;
      }
    if (!divisible) gens.push_back(g);
  }
  std::sort(gens.begin(), gens.end(),
            [](const auto& l, const auto& r) { return l[0] > r[0] || (l[0] == r[0] && l[1] < r[1]); });
  bool has_x = false, has_y = false;
  for (const auto& g : gens) {
    if (g[1] == 0) has_x = true;
    if (g[0] == 0) has_y = true;
  }
  if (!has_x || !has_y)
    throw Error("orbclass", "ideal does not have finite colength");

  Staircase s;
  s.gens = std::move(gens);
  long ax = s.gens.front()[0];  // largest a is the pure x power
  for (long a = 0; a < ax; ++a) {
    long h = -1;
    for (const auto& g : s.gens)
      if (g[0] <= a) { h = g[1]; break; }  // first match has minimal b for this column
    // gens sorted by a descending: the first with g[0] <= a is the one with
    // the largest a among applicable, which on a staircase has the smallest b.
    for (long b = 0; b < h; ++b) s.standard.push_back({a, b});
  }
  s.colength = static_cast<long>(s.standard.size());
  return s;
}

bool in_ideal(const Staircase& s, long a, long b) {
  for (const auto& g : s.gens)
    if (a >= g[0] && b >= g[1]) return true;
  return false;
}

long matrix_rank(std::vector<std::vector<Rat>> m) {
  long rows = static_cast<long>(m.size());
  if (rows == 0) return 0;
  long cols = static_cast<long>(m[0].size());
  long rank = 0;
  for (long c = 0; c < cols && rank < rows; ++c) {
    long piv = -1;
    for (long r = rank; r < rows; ++r)
      if (m[r][c] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    Rat d = m[rank][c];
    for (long j = c; j < cols; ++j) m[rank][j] /= d;
    for (long r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (long j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

OracleResult oracle_tangent_dim(long r, long w1, long w2,
                                const std::vector<std::array<long, 2>>& monomial_gens,
                                long truncation) {
  if (r < 1) throw Error("orbclass", "group order must be positive");
  w1 = positive_mod(w1, r);
  w2 = positive_mod(w2, r);
  Staircase s = staircase_of(monomial_gens);
  long n = (truncation < 0) ? s.colength + 2 : truncation;
  if (n < s.colength + 2)
    throw Error("orbclass", "truncation " + std::to_string(n) +
                                " too small: need at least colength + 2 = " +
                                std::to_string(s.colength + 2));

  auto weight = [&](long a, long b) { return positive_mod(a * w1 + b * w2, r); };

  // Unknowns: equivariant coefficients of each generator image.
  // unknown_of[t][k] = column of coefficient of standard monomial k in phi(g_t).
  const long ngens = static_cast<long>(s.gens.size());
  const long nstd = static_cast<long>(s.standard.size());
  std::vector<std::vector<long>> unknown_of(ngens, std::vector<long>(nstd, -1));
  long ncols = 0;
  for (long t = 0; t < ngens; ++t) {
    long wg = weight(s.gens[t][0], s.gens[t][1]);
    for (long k = 0; k < nstd; ++k)
      if (weight(s.standard[k][0], s.standard[k][1]) == wg) unknown_of[t][k] = ncols++;
  }

  // One syzygy per consecutive generator pair; rows indexed by the standard
  // monomial each product lands on.
  std::map<long, long> std_index;
  for (long k = 0; k < nstd; ++k)
    std_index[s.standard[k][0] * (4 * n) + s.standard[k][1]] = k;
  std::vector<std::vector<Rat>> rows;
  for (long t = 0; t + 1 < ngens; ++t) {
    long la = s.gens[t][0], lb = s.gens[t + 1][1];  // lcm exponents
    std::array<long, 2> f0{la - s.gens[t][0], lb - s.gens[t][1]};
    std::array<long, 2> f1{la - s.gens[t + 1][0], lb - s.gens[t + 1][1]};
    std::map<long, std::map<long, long>> eq;  // target monomial -> column -> coeff
    for (long k = 0; k < nstd; ++k) {
      for (int side = 0; side < 2; ++side) {
        long col = unknown_of[t + side][k];
        if (col < 0) continue;
        const auto& f = side == 0 ? f0 : f1;
        long a = s.standard[k][0] + f[0], b = s.standard[k][1] + f[1];
        if (in_ideal(s, a, b)) continue;
        eq[a * (4 * n) + b][col] += (side == 0 ? 1 : -1);
      }
    }
    for (const auto& [target, terms] : eq) {
      std::vector<Rat> row(ncols, Rat(0));
      bool nonzero = false;
      for (const auto& [col, coef] : terms)
        if (coef != 0) { row[col] = make_rat(coef); nonzero = true; }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  long rank = rows.empty() ? 0 : matrix_rank(std::move(rows));
  return OracleResult{ncols - rank, s.colength, n};
}

ClusterReport verify_cluster_family(long r, const std::vector<std::array<long, 2>>& sections) {
  if (r < 1) throw Error("orbclass", "group order must be positive");
  std::vector<std::array<long, 2>> secs = sections;
  if (secs.empty()) secs = {{1, 0}, {0, 1}, {1, 1}, {2, 3}, {-1, 2}};
  ClusterReport report;
  report.r = r;
  report.all_regular = true;
  for (const auto& [a, b] : secs) {
    if (a == 0 && b == 0) throw Error("orbclass", "section must be nonzero");
    ClusterSample sample;
    sample.a = a;
    sample.b = b;
    sample.rep.assign(r, 0);
    for (long d = 0; d < r; ++d) {
      // Multiplication by a x + b y from degree d-1 into degree d, in the
      // monomial bases x^e y^{d-1-e} and x^e y^{d-e}.
      std::vector<std::vector<Rat>> m(d + 1, std::vector<Rat>(std::max<long>(d, 1), Rat(0)));
      for (long e = 0; e < d; ++e) {
        m[e + 1][e] += make_rat(a);
        m[e][e] += make_rat(b);
      }
      long rank = d == 0 ? 0 : matrix_rank(std::move(m));
      long q = (d + 1) - rank;
      sample.rep[d % r] += q;
    }
    sample.regular = true;
    for (long i = 0; i < r; ++i)
      if (sample.rep[i] != 1) sample.regular = false;
    if (!sample.regular) report.all_regular = false;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

nlohmann::json surface_to_json(const OrbSurface& x) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : x.points)
    pts.push_back({{"label", p.label}, {"r", p.r}, {"w1", p.w1}, {"w2", p.w2}});
  nlohmann::json j{{"points", pts}};
  if (x.chi_structure) j["chi"] = *x.chi_structure;
  return j;
}

OrbSurface surface_from_json(const nlohmann::json& j) {
  OrbSurface x;
  for (const auto& pj : j.at("points")) {
    StackyPoint p;
    p.label = pj.at("label").get<std::string>();
    p.r = pj.at("r").get<long>();
    p.w1 = pj.at("w1").get<long>();
    p.w2 = pj.at("w2").get<long>();
    x.points.push_back(std::move(p));
  }
  if (j.contains("chi")) x.chi_structure = j.at("chi").get<long>();
  x.validate();
  return x;
}

nlohmann::json kclass_to_json(const KClassN& a) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [label, v] : a.coeffs) coeffs[label] = v;
  return nlohmann::json{{"n0", a.n0}, {"coeffs", coeffs}};
}

KClassN kclass_from_json(const nlohmann::json& j) {
  KClassN a;
  a.n0 = j.value("n0", 0L);
  if (j.contains("coeffs"))
    for (const auto& [label, v] : j.at("coeffs").items())
      a.coeffs[label] = v.get<std::vector<long>>();
  return a;
}

nlohmann::json extclass_to_json(const ExtClass& a) {
  nlohmann::json j = kclass_to_json(a.part);
  j["m"] = a.m;
  return j;
}

ExtClass extclass_from_json(const nlohmann::json& j) {
  ExtClass a;
  a.m = j.value("m", 0L);
  a.part = kclass_from_json(j);
  return a;
}

nlohmann::json chern_to_json(const OrbChern& c) {
  nlohmann::json twisted = nlohmann::json::object();
  for (const auto& [label, v] : c.twisted) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& z : v) arr.push_back(cyclo::cyclo_to_json(z));
    twisted[label] = std::move(arr);
  }
  return nlohmann::json{{"rank", cyclo::rat_to_json(c.rank)},
                        {"deg", cyclo::rat_to_json(c.deg)},
                        {"ch2", cyclo::rat_to_json(c.ch2)},
                        {"twisted", twisted}};
}

}  // namespace orbi::orbclass
