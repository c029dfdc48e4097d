#include <orbisurf/scenarios.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace orbi::scenarios {

std::string case_name(CaseId id) {
  switch (id) {
    case CaseId::D4: return "D4";
    case CaseId::E6: return "E6";
    case CaseId::E7: return "E7";
    case CaseId::E8: return "E8";
  }
  throw Error("scenarios", "unreachable case id");
}

CaseId case_from_string(const std::string& s) {
  if (s == "D4") return CaseId::D4;
  if (s == "E6") return CaseId::E6;
  if (s == "E7") return CaseId::E7;
  if (s == "E8") return CaseId::E8;
  throw Error("scenarios", "unknown case: " + s + " (expected D4, E6, E7 or E8)");
}

namespace {

struct CaseSpec {
  long i;
  std::vector<long> orders;
};

CaseSpec spec_of(CaseId id) {
  switch (id) {
    case CaseId::D4: return {2, {2, 2, 2, 2}};
    case CaseId::E6: return {3, {3, 3, 3}};
    case CaseId::E7: return {4, {4, 4, 2}};
    case CaseId::E8: return {6, {6, 3, 2}};
  }
  throw Error("scenarios", "unreachable case id");
}

std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const long n = static_cast<long>(a.size());
  for (long c = 0; c < n; ++c) {
    long piv = -1;
    for (long r = c; r < n; ++r)
      if (a[r][c] != 0) { piv = r; break; }
    if (piv < 0) throw Error("scenarios", "fiber equations are degenerate");
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (long r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (long k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rat> x(n);
  for (long c = 0; c < n; ++c) x[c] = b[c] / a[c][c];
  return x;
}

Int as_positive_int(const Rat& q, const std::string& what) {
  if (!rat_is_integer(q) || q <= 0)
    throw Error("scenarios", what + " must be a positive integer, got " + q.get_str());
  return Int(q.get_num());
}

// Multiplicities of the fiber components named in `other`, given the one
// known multiplicity m0 of component `known`: solves fiber.C = 0 for every
// C in `other`.
std::vector<Int> solve_fiber_mults(const divlat::DivLattice& lat,
                                   const std::vector<std::string>& other,
                                   const std::string& known, long m0) {
  const long n = static_cast<long>(other.size());
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  std::vector<Rat> b(n);
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) a[r][c] = Rat(lat.pairing(other[c], other[r]));
    b[r] = -make_rat(m0) * Rat(lat.pairing(known, other[r]));
  }
  std::vector<Rat> x = solve_linear(std::move(a), std::move(b));
  std::vector<Int> out;
  for (long c = 0; c < n; ++c)
    out.push_back(as_positive_int(x[c], "multiplicity of " + other[c]));
  return out;
}

// Self-intersection of the known component from fiber.known = 0.
Int solve_self(const divlat::DivLattice& lat, const std::vector<std::string>& other,
               const std::vector<Int>& mults, const std::string& known, long m0) {
  Rat sum = 0;
  for (std::size_t c = 0; c < other.size(); ++c)
    sum += Rat(mults[c]) * Rat(lat.pairing(other[c], known));
  Rat self = -sum / make_rat(m0);
  if (!rat_is_integer(self))
    throw Error("scenarios", "self-intersection of " + known + " is not integral");
  return Int(self.get_num());
}

Int fiber_k(const divlat::DivLattice& lat, const FiberRef& f) {
  Int total = 0;
  for (std::size_t c = 0; c < f.comps.size(); ++c)
    total += f.mults[c] * lat.kdeg[lat.require(f.comps[c])];
  return total;
}

divlat::Gram fiber_gram(const divlat::DivLattice& lat, const std::vector<std::string>& comps) {
  const long n = static_cast<long>(comps.size());
  divlat::Gram g(n, std::vector<Int>(n));
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) g[r][c] = lat.pairing(comps[r], comps[c]);
  return g;
}

void check_fiber_class(const divlat::DivLattice& lat, const FiberRef& f) {
  std::vector<Int> kernel = divlat::zariski_fiber_solver(fiber_gram(lat, f.comps));
  if (kernel != f.mults)
    throw Error("scenarios", "solved multiplicities of " + f.name +
                                 " disagree with the Zariski kernel");
}

}  // namespace

BuiltCase build_case(CaseId id) {
  CaseSpec sp = spec_of(id);
  BuiltCase c;
  c.id = id;
  c.i = sp.i;
  c.orders = sp.orders;
  divlat::DivLattice& lat = c.model.lat;
  divlat::PointModel& pts = c.model.pts;

  // Self-intersections of the sections and quotient fibers are unknown at
  // this stage; their Gram entries start at 0 and are solved below.
  lat.add_component("D_0", 0, 0);
  lat.add_component("D_inf", 0, 0);

  const long s = static_cast<long>(sp.orders.size());
  for (long j = 1; j <= s; ++j) {
    const long m = sp.orders[j - 1];
    const std::string dj = "D_" + std::to_string(j);
    const std::string fj = "F" + std::to_string(j);
    lat.add_component(dj, 0, 0);

    auto sing0 = hj::normalize_fixed_point(m, 1, m - 1);
    auto singinf = hj::normalize_fixed_point(m, 1, 1);
    if (!sing0 || !singinf) throw Error("scenarios", "marked point is not stacky");
    hj::HJChain chain0 = hj::hj_chain(*sing0);
    hj::HJChain chaininf = hj::hj_chain(*singinf);
    if (chaininf.b.size() != 1)
      throw Error("scenarios", "infinity-side resolution should be a single curve");

    std::vector<std::string> chain_labels;
    for (std::size_t t = 1; t <= chain0.b.size(); ++t) {
      std::string e = "E" + std::to_string(j) + "." + std::to_string(t);
      lat.add_component(e, -Int(chain0.b[t - 1]), 0);
      chain_labels.push_back(e);
    }
    lat.add_component(fj, -Int(chaininf.b[0]), 0);

    auto link = [&](const std::string& a, const std::string& b) {
      lat.set_pairing(a, b, 1);
      pts.add_simple_crossing(a, b);
    };
    link("D_0", chain_labels.front());
    for (std::size_t t = 0; t + 1 < chain_labels.size(); ++t)
      link(chain_labels[t], chain_labels[t + 1]);
    link(chain_labels.back(), dj);
    link(dj, fj);
    link(fj, "D_inf");

    // Ruling fiber over the j-th marked point: m D_j plus the two chains.
    std::vector<std::string> other = chain_labels;
    other.push_back(fj);
    std::vector<Int> mults = solve_fiber_mults(lat, other, dj, m);
    Int dj_self = solve_self(lat, other, mults, dj, m);
    lat.gram[lat.require(dj)][lat.require(dj)] = dj_self;

    FiberRef f;
    f.name = "ruling_p" + std::to_string(j);
    f.comps.push_back(dj);
    f.mults.push_back(m);
    for (std::size_t t = 0; t < other.size(); ++t) {
      f.comps.push_back(other[t]);
      f.mults.push_back(mults[t]);
    }
    c.ruling.push_back(std::move(f));
  }

  // Elliptic fiber over zero: i D_0 plus every zero-side chain.
  std::vector<std::string> zero_chain;
  for (long j = 1; j <= s; ++j)
    for (long t = 1; t < sp.orders[j - 1]; ++t)
      zero_chain.push_back("E" + std::to_string(j) + "." + std::to_string(t));
  std::vector<Int> zero_mults = solve_fiber_mults(lat, zero_chain, "D_0", sp.i);
  lat.gram[0][0] = solve_self(lat, zero_chain, zero_mults, "D_0", sp.i);
  c.ell_zero.name = "elliptic_over_zero";
  c.ell_zero.comps.push_back("D_0");
  c.ell_zero.mults.push_back(sp.i);
  for (std::size_t t = 0; t < zero_chain.size(); ++t) {
    c.ell_zero.comps.push_back(zero_chain[t]);
    c.ell_zero.mults.push_back(zero_mults[t]);
  }

  // Elliptic fiber over infinity: i D_inf plus the F curves.
  std::vector<std::string> inf_comps;
  for (long j = 1; j <= s; ++j) inf_comps.push_back("F" + std::to_string(j));
  std::vector<Int> inf_mults = solve_fiber_mults(lat, inf_comps, "D_inf", sp.i);
  lat.gram[1][1] = solve_self(lat, inf_comps, inf_mults, "D_inf", sp.i);
  c.ell_inf.name = "elliptic_over_inf";
  c.ell_inf.comps.push_back("D_inf");
  c.ell_inf.mults.push_back(sp.i);
  for (std::size_t t = 0; t < inf_comps.size(); ++t) {
    c.ell_inf.comps.push_back(inf_comps[t]);
    c.ell_inf.mults.push_back(inf_mults[t]);
  }

  // Canonical degrees from adjunction on smooth rational components.
  for (long k = 0; k < lat.size(); ++k) {
    lat.kdeg[k] = -2 - lat.gram[k][k];
    if (divlat::adjunction_genus(lat.gram[k][k], lat.kdeg[k]) != 0)
      throw Error("scenarios", "component " + lat.labels[k] + " is not rational");
  }

  // Cross-checks of the constraint scheme.
  for (const FiberRef& f : c.ruling) {
    if (fiber_k(lat, f) != -2)
      throw Error("scenarios", "K." + f.name + " != -2");
    check_fiber_class(lat, f);
  }
  for (const FiberRef* f : {&c.ell_zero, &c.ell_inf}) {
    if (fiber_k(lat, *f) != 0)
      throw Error("scenarios", "K." + f->name + " != 0");
    check_fiber_class(lat, *f);
  }
  divlat::validate_incidence(c.model);

  c.sig = divlat::signature(lat.gram);
  if (c.sig.n_plus != 1)
    throw Error("scenarios", "ambient lattice does not have exactly one positive square");
  return c;
}

kodaira::CurveConfig fiber_config(const BuiltCase& c, const FiberRef& f) {
  const divlat::DivLattice& lat = c.model.lat;
  kodaira::CurveConfig cfg;
  std::set<std::string> in_fiber(f.comps.begin(), f.comps.end());
  for (std::size_t k = 0; k < f.comps.size(); ++k) {
    long idx = lat.require(f.comps[k]);
    kodaira::FiberComponent fc;
    fc.label = f.comps[k];
    fc.self = lat.gram[idx][idx];
    fc.kdeg = lat.kdeg[idx];
    fc.genus = lat.genus[idx];
    fc.mult = f.mults[k];
    cfg.components.push_back(std::move(fc));
  }
  for (const auto& p : c.model.pts.points) {
    divlat::IncidencePoint q;
    for (const auto& [label, b] : p.branches) {
      if (!in_fiber.count(label)) continue;
      q.branches[label] = b;
      auto it = p.curve_mult.find(label);
      q.curve_mult[label] = it == p.curve_mult.end() ? Int(b) : it->second;
    }
    for (const auto& [key, v] : p.pair_local)
      if (in_fiber.count(key.first) && in_fiber.count(key.second)) q.pair_local[key] = v;
    bool essential = q.branches.size() >= 2;
    for (const auto& [label, b] : q.branches)
      if (b >= 2 || q.curve_mult[label] >= 2) essential = true;
    if (essential) cfg.points.push_back(std::move(q));
  }
  return cfg;
}

FiberTypes fibers_and_types(const BuiltCase& c) {
  FiberTypes t;
  t.over_zero = kodaira::classify(fiber_config(c, c.ell_zero));
  try {
    t.over_inf = kodaira::classify(fiber_config(c, c.ell_inf));
  } catch (const Error& e) {
    if (e.detail().find("not relatively minimal") == std::string::npos) throw;
    t.over_inf = std::nullopt;
  }
  return t;
}

EulerLedger euler_ledger(const BuiltCase& c) {
  EulerLedger led;
  led.ruling_total = 4;
  for (const FiberRef& f : c.ruling)
    led.ruling_total += kodaira::euler_number(fiber_config(c, f)) - 2;
  led.elliptic_total = kodaira::euler_number(fiber_config(c, c.ell_zero)) +
                       kodaira::euler_number(fiber_config(c, c.ell_inf));
  if (led.ruling_total != led.elliptic_total)
    throw Error("scenarios", "euler ledgers disagree: ruling " +
                                 std::to_string(led.ruling_total) + " vs elliptic " +
                                 std::to_string(led.elliptic_total));
  return led;
}

namespace {

void refresh_mults(const divlat::DivLattice& lat, FiberRef& f) {
  f.mults = divlat::zariski_fiber_solver(fiber_gram(lat, f.comps));
}

void drop_component(FiberRef& f, const std::string& label) {
  for (std::size_t k = 0; k < f.comps.size(); ++k)
    if (f.comps[k] == label) {
      f.comps.erase(f.comps.begin() + static_cast<long>(k));
      f.mults.erase(f.mults.begin() + static_cast<long>(k));
      return;
    }
}

std::vector<std::string> minus_one_curves(const divlat::DivLattice& lat,
                                          const std::vector<std::string>& among) {
  std::vector<std::string> out;
  for (const std::string& label : among) {
    long idx = lat.require(label);
    if (lat.gram[idx][idx] == -1 && lat.kdeg[idx] == -1) out.push_back(label);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

MinimalModelResult relative_minimal_model(const BuiltCase& c) {
  MinimalModelResult res;
  res.surface = c;
  BuiltCase& work = res.surface;
  const long e0 = euler_ledger(c).elliptic_total;
  long steps = 0;
  while (true) {
    std::vector<std::string> candidates =
        minus_one_curves(work.model.lat, work.ell_inf.comps);
    if (candidates.empty()) break;
    const std::string& target = candidates.front();
    divlat::contract(work.model, target);
    drop_component(work.ell_inf, target);
    refresh_mults(work.model.lat, work.ell_inf);
    ++steps;
    long e_now = kodaira::euler_number(fiber_config(work, work.ell_zero)) +
                 kodaira::euler_number(fiber_config(work, work.ell_inf));
    if (e_now != e0 - steps)
      throw Error("scenarios", "euler ledger broke while contracting " + target);
    res.stages.push_back({target, e_now});
  }
  work.ruling.clear();  // the ruling does not survive these contractions
  work.sig = divlat::signature(work.model.lat.gram);
  if (work.sig.n_plus != 1)
    throw Error("scenarios", "signature lost its unique positive square");
  res.final_type = kodaira::classify(fiber_config(work, work.ell_inf));
  return res;
}

HirzebruchResult hirzebruch_reduction(const BuiltCase& c) {
  HirzebruchResult res;
  res.surface = c;
  BuiltCase& work = res.surface;
  const long e0 = euler_ledger(c).ruling_total;
  long steps = 0;
  while (true) {
    std::vector<std::string> all, preferred;
    for (const FiberRef& f : work.ruling)
      for (const std::string& label : minus_one_curves(work.model.lat, f.comps))
        all.push_back(label);
    if (all.empty()) break;
    for (const std::string& label : all)
      if (work.model.lat.pairing(label, "D_0") == 0) preferred.push_back(label);
    if (preferred.empty())
      throw Error("scenarios", "no contraction candidate disjoint from D_0");
    std::sort(preferred.begin(), preferred.end());
    const std::string& target = preferred.front();
    divlat::contract(work.model, target);
    for (FiberRef& f : work.ruling) {
      drop_component(f, target);
      refresh_mults(work.model.lat, f);
    }
    ++steps;
    long e_now = 4;
    for (const FiberRef& f : work.ruling)
      e_now += kodaira::euler_number(fiber_config(work, f)) - 2;
    if (e_now != e0 - steps)
      throw Error("scenarios", "euler ledger broke while contracting " + target);
    res.stages.push_back({target, e_now});
  }
  for (const FiberRef& f : work.ruling) {
    if (f.comps.size() != 1 ||
        work.model.lat.pairing(f.comps[0], f.comps[0]) != 0)
      throw Error("scenarios", "ruling fiber " + f.name + " did not become irreducible");
  }
  work.ell_zero = FiberRef{};
  work.ell_inf = FiberRef{};
  work.sig = divlat::signature(work.model.lat.gram);
  res.d0_self = work.model.lat.pairing("D_0", "D_0");
  res.dinf_self = work.model.lat.pairing("D_inf", "D_inf");
  res.k_sq = Int(12 - e0) + steps;
  return res;
}

Boundary boundary_components(const BuiltCase& c) {
  Boundary b;
  b.components = c.ell_inf.comps;
  b.count = static_cast<long>(b.components.size());
  return b;
}

namespace {

CaseFixture make_fixture(CaseId id) {
  CaseFixture fx;
  fx.name = case_name(id);
  CaseSpec sp = spec_of(id);
  fx.i = sp.i;
  fx.orders = sp.orders;
  auto star = [](std::array<long, 2> center, std::vector<std::array<long, 2>> legs) {
    FixtureGraph g;
    g.nodes.push_back(center);
    for (std::size_t k = 0; k < legs.size(); ++k) {
      g.nodes.push_back(legs[k]);
      g.edges.push_back({0, static_cast<long>(k + 1)});
    }
    return g;
  };
  switch (id) {
    case CaseId::D4: {
      fx.over_zero = star({2, -2}, {{1, -2}, {1, -2}, {1, -2}, {1, -2}});
      fx.over_zero.type = "I_0*";
      fx.over_zero.dynkin = "D~4";
      fx.over_inf = fx.over_zero;
      fx.minimal_contractions = 0;
      fx.final_type = "I_0*";
      fx.final_nodes = fx.over_inf.nodes;
      fx.hirzebruch_contractions = 8;
      fx.boundary_count = 5;
      fx.euler = 12;
      break;
    }
    case CaseId::E6: {
      FixtureGraph g;
      g.nodes = {{3, -2}, {2, -2}, {1, -2}, {2, -2}, {1, -2}, {2, -2}, {1, -2}};
      g.edges = {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}};
      g.type = "IV*";
      g.dynkin = "E~6";
      fx.over_zero = g;
      fx.over_inf = star({3, -1}, {{1, -3}, {1, -3}, {1, -3}});
      fx.minimal_contractions = 1;
      fx.final_type = "IV";
      fx.final_nodes = {{1, -2}, {1, -2}, {1, -2}};
      fx.hirzebruch_contractions = 9;
      fx.boundary_count = 4;
      fx.euler = 13;
      break;
    }
    case CaseId::E7: {
      FixtureGraph g;
      g.nodes = {{4, -2}, {3, -2}, {2, -2}, {1, -2}, {3, -2}, {2, -2}, {1, -2}, {2, -2}};
      g.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}, {0, 7}};
      g.type = "III*";
      g.dynkin = "E~7";
      fx.over_zero = g;
      fx.over_inf = star({4, -1}, {{1, -4}, {1, -4}, {2, -2}});
      fx.minimal_contractions = 2;
      fx.final_type = "III";
      fx.final_nodes = {{1, -2}, {1, -2}};
      fx.hirzebruch_contractions = 10;
      fx.boundary_count = 4;
      fx.euler = 14;
      break;
    }
    case CaseId::E8: {
      FixtureGraph g;
      g.nodes = {{6, -2}, {5, -2}, {4, -2}, {3, -2}, {2, -2}, {1, -2}, {4, -2}, {2, -2}, {3, -2}};
      g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 6}, {6, 7}, {0, 8}};
      g.type = "II*";
      g.dynkin = "E~8";
      fx.over_zero = g;
      fx.over_inf = star({6, -1}, {{1, -6}, {2, -3}, {3, -2}});
      fx.minimal_contractions = 3;
      fx.final_type = "II";
      fx.final_nodes = {{1, 0}};
      fx.hirzebruch_contractions = 11;
      fx.boundary_count = 4;
      fx.euler = 15;
      break;
    }
  }
  return fx;
}

}  // namespace

const CaseFixture& fixture(CaseId id) {
  static const CaseFixture d4 = make_fixture(CaseId::D4);
  static const CaseFixture e6 = make_fixture(CaseId::E6);
  static const CaseFixture e7 = make_fixture(CaseId::E7);
  static const CaseFixture e8 = make_fixture(CaseId::E8);
  switch (id) {
    case CaseId::D4: return d4;
    case CaseId::E6: return e6;
    case CaseId::E7: return e7;
    case CaseId::E8: return e8;
  }
  throw Error("scenarios", "unreachable case id");
}

bool graphs_isomorphic(const std::vector<std::array<long, 2>>& nodes_a,
                       const std::vector<std::array<long, 2>>& edges_a,
                       const std::vector<std::array<long, 2>>& nodes_b,
                       const std::vector<std::array<long, 2>>& edges_b) {
  const long n = static_cast<long>(nodes_a.size());
  if (n != static_cast<long>(nodes_b.size())) return false;
  if (edges_a.size() != edges_b.size()) return false;
  auto attrs_a = nodes_a, attrs_b = nodes_b;
  std::sort(attrs_a.begin(), attrs_a.end());
  std::sort(attrs_b.begin(), attrs_b.end());
  if (attrs_a != attrs_b) return false;

  std::set<std::pair<long, long>> adj_a, adj_b;
  for (const auto& e : edges_a) adj_a.insert(std::minmax(e[0], e[1]));
  for (const auto& e : edges_b) adj_b.insert(std::minmax(e[0], e[1]));

  std::vector<long> map_ab(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(long)> extend = [&](long v) -> bool {
    if (v == n) return true;
    for (long w = 0; w < n; ++w) {
      if (used[w] || nodes_a[v] != nodes_b[w]) continue;
      bool ok = true;
      for (long u = 0; u < v && ok; ++u) {
        bool ea = adj_a.count(std::minmax(u, v)) > 0;
        bool eb = adj_b.count(std::minmax(map_ab[u], w)) > 0;
        if (ea != eb) ok = false;
      }
      if (!ok) continue;
      map_ab[v] = w;
      used[w] = true;
      if (extend(v + 1)) return true;
      map_ab[v] = -1;
      used[w] = false;
    }
    return false;
  };
  return extend(0);
}

namespace {

// (mult, self) nodes and index edges of a fiber configuration.
void graph_of_config(const kodaira::CurveConfig& cfg,
                     std::vector<std::array<long, 2>>& nodes,
                     std::vector<std::array<long, 2>>& edges) {
  nodes.clear();
  edges.clear();
  for (const auto& comp : cfg.components)
    nodes.push_back({checked_long(comp.mult, "mult"), checked_long(comp.self, "self")});
  divlat::Gram g = kodaira::gram_of(cfg);
  for (long a = 0; a < cfg.size(); ++a)
    for (long b = a + 1; b < cfg.size(); ++b)
      for (Int k = 0; k < g[a][b]; ++k) edges.push_back({a, b});
}

void diff_graph(std::vector<std::string>& diffs, const std::string& where,
                const kodaira::CurveConfig& cfg, const FixtureGraph& fx) {
  std::vector<std::array<long, 2>> nodes, edges;
  graph_of_config(cfg, nodes, edges);
  if (!graphs_isomorphic(nodes, edges, fx.nodes, fx.edges))
    diffs.push_back(where + ": dual graph differs from fixture");
}

std::string type_name(const std::optional<kodaira::FiberType>& t) {
  return t ? t->name() : std::string("(not relatively minimal)");
}

template <typename T>
void diff_value(std::vector<std::string>& diffs, const std::string& what, const T& got,
                const T& want) {
  if (got != want) {
    std::ostringstream os;
    os << what << ": got " << got << ", fixture says " << want;
    diffs.push_back(os.str());
  }
}

}  // namespace

std::vector<std::string> compare_table1(CaseId id) {
  const CaseFixture& fx = fixture(id);
  std::vector<std::string> diffs;

  BuiltCase built = build_case(id);
  FiberTypes types = fibers_and_types(built);
  EulerLedger ledger = euler_ledger(built);
  MinimalModelResult minimal = relative_minimal_model(built);
  HirzebruchResult hirz = hirzebruch_reduction(built);
  Boundary bdy = boundary_components(built);

  diff_value(diffs, "group order", built.i, fx.i);
  diff_graph(diffs, "fiber over 0", fiber_config(built, built.ell_zero), fx.over_zero);
  diff_graph(diffs, "fiber over inf", fiber_config(built, built.ell_inf), fx.over_inf);
  diff_value(diffs, "type over 0", types.over_zero.name(), fx.over_zero.type);
  diff_value(diffs, "dynkin over 0", types.over_zero.dynkin(), fx.over_zero.dynkin);
  std::string want_inf =
      fx.over_inf.type.empty() ? std::string("(not relatively minimal)") : fx.over_inf.type;
  diff_value(diffs, "type over inf", type_name(types.over_inf), want_inf);

  diff_value(diffs, "euler number", ledger.elliptic_total, fx.euler);
  diff_value(diffs, "minimal-model contractions",
             static_cast<long>(minimal.stages.size()), fx.minimal_contractions);
  diff_value(diffs, "final type over inf", minimal.final_type.name(), fx.final_type);
  long final_e = minimal.stages.empty() ? ledger.elliptic_total : minimal.stages.back().e_after;
  diff_value(diffs, "euler after minimal model", final_e, 12L);

  std::vector<std::array<long, 2>> final_nodes, final_edges;
  graph_of_config(fiber_config(minimal.surface, minimal.surface.ell_inf), final_nodes,
                  final_edges);
  std::sort(final_nodes.begin(), final_nodes.end());
  auto want_final = fx.final_nodes;
  std::sort(want_final.begin(), want_final.end());
  if (final_nodes != want_final)
    diffs.push_back("final fiber over inf: component attributes differ from fixture");

  diff_value(diffs, "hirzebruch contractions", static_cast<long>(hirz.stages.size()),
             fx.hirzebruch_contractions);
  diff_value(diffs, "D_0 self-intersection after reduction", hirz.d0_self, Int(-2));
  diff_value(diffs, "D_inf self-intersection after reduction", hirz.dinf_self, Int(2));
  diff_value(diffs, "K^2 after reduction", hirz.k_sq, Int(8));
  diff_value(diffs, "boundary components", bdy.count, fx.boundary_count);
  return diffs;
}

ScenarioReport run_case(CaseId id) {
  ScenarioReport r;
  r.built = build_case(id);
  r.types = fibers_and_types(r.built);
  r.ledger = euler_ledger(r.built);
  r.minimal = relative_minimal_model(r.built);
  r.hirzebruch = hirzebruch_reduction(r.built);
  r.boundary = boundary_components(r.built);
  r.diff = compare_table1(id);
  return r;
}

namespace {

nlohmann::json fiber_to_json(const BuiltCase& c, const FiberRef& f,
                             const std::optional<kodaira::FiberType>& type) {
  nlohmann::json comps = nlohmann::json::array();
  const divlat::DivLattice& lat = c.model.lat;
  for (std::size_t k = 0; k < f.comps.size(); ++k) {
    long idx = lat.require(f.comps[k]);
    comps.push_back({{"label", f.comps[k]},
                     {"mult", checked_long(f.mults[k], "mult")},
                     {"self", checked_long(lat.gram[idx][idx], "self")}});
  }
  nlohmann::json j{{"components", comps},
                   {"euler", kodaira::euler_number(fiber_config(c, f))}};
  if (type) {
    j["type"] = type->name();
    if (!type->dynkin().empty()) j["dynkin"] = type->dynkin();
  } else {
    j["type"] = nullptr;
  }
  return j;
}

nlohmann::json stages_to_json(const std::vector<ContractionStep>& stages) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& st : stages)
    arr.push_back({{"contracted", st.contracted}, {"euler_after", st.e_after}});
  return arr;
}

}  // namespace

nlohmann::json report_to_json(const ScenarioReport& r) {
  const divlat::DivLattice& lat = r.built.model.lat;
  nlohmann::json comps = nlohmann::json::array();
  for (long k = 0; k < lat.size(); ++k)
    comps.push_back({{"label", lat.labels[k]},
                     {"self", checked_long(lat.gram[k][k], "self")},
                     {"k", checked_long(lat.kdeg[k], "k")}});
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t j = 0; j < r.built.orders.size(); ++j)
    points.push_back(
        {{"label", "p" + std::to_string(j + 1)}, {"order", r.built.orders[j]}});
  nlohmann::json rulings = nlohmann::json::array();
  for (const FiberRef& f : r.built.ruling)
    rulings.push_back(fiber_to_json(r.built, f, std::nullopt));

  nlohmann::json j;
  j["schema_version"] = 1;
  j["case"] = case_name(r.built.id);
  j["group_order"] = r.built.i;
  j["orbifold_points"] = points;
  j["components"] = comps;
  j["signature"] = {{"n_plus", r.built.sig.n_plus},
                    {"n_minus", r.built.sig.n_minus},
                    {"n_zero", r.built.sig.n_zero}};
  j["ruling_fibers"] = rulings;
  j["elliptic_over_zero"] = fiber_to_json(r.built, r.built.ell_zero, r.types.over_zero);
  j["elliptic_over_inf"] = fiber_to_json(r.built, r.built.ell_inf, r.types.over_inf);
  j["euler"] = {{"ruling_total", r.ledger.ruling_total},
                {"elliptic_total", r.ledger.elliptic_total}};
  j["minimal_model"] = {
      {"contractions", stages_to_json(r.minimal.stages)},
      {"count", static_cast<long>(r.minimal.stages.size())},
      {"final_type", r.minimal.final_type.name()},
      {"final_fiber",
       fiber_to_json(r.minimal.surface, r.minimal.surface.ell_inf, r.minimal.final_type)}};
  j["hirzebruch"] = {{"contractions", stages_to_json(r.hirzebruch.stages)},
                     {"count", static_cast<long>(r.hirzebruch.stages.size())},
                     {"d0_self", checked_long(r.hirzebruch.d0_self, "d0")},
                     {"dinf_self", checked_long(r.hirzebruch.dinf_self, "dinf")},
                     {"k_sq", checked_long(r.hirzebruch.k_sq, "k_sq")}};
  j["boundary"] = {{"count", r.boundary.count}, {"components", r.boundary.components}};
  j["table1_diff"] = r.diff;
  return j;
}

std::string report_to_dot(const ScenarioReport& r) {
  std::ostringstream out;
  for (const FiberRef& f : r.built.ruling)
    out << kodaira::emit_dot(fiber_config(r.built, f), f.name);
  out << kodaira::emit_dot(fiber_config(r.built, r.built.ell_zero), "elliptic_over_zero");
  out << kodaira::emit_dot(fiber_config(r.built, r.built.ell_inf), "elliptic_over_inf");
  out << kodaira::emit_dot(fiber_config(r.minimal.surface, r.minimal.surface.ell_inf),
                           "elliptic_over_inf_minimal");
  return out.str();
}

}  // namespace orbi::scenarios
