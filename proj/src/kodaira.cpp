#include <orbisurf/kodaira.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace orbi::kodaira {

long CurveConfig::index_of(const std::string& label) const {
  for (long i = 0; i < size(); ++i)
    if (components[i].label == label) return i;
  return -1;
}

divlat::Gram gram_of(const CurveConfig& config) {
  const long n = config.size();
  divlat::Gram g(n, std::vector<Int>(n, Int(0)));
  for (long i = 0; i < n; ++i) g[i][i] = config.components[i].self;
  for (const auto& p : config.points)
    for (const auto& [key, v] : p.pair_local) {
      long i = config.index_of(key.first), j = config.index_of(key.second);
      if (i < 0 || j < 0)
        throw Error("kodaira", "point references unknown component: " + key.first + "/" +
                                   key.second);
      g[i][j] += v;
      g[j][i] += v;
    }
  return g;
}

long euler_number(const CurveConfig& config) {
  long e = 0;
  for (const auto& c : config.components) e += 2 - 2 * c.genus;
  for (const auto& p : config.points) {
    long b = p.total_branches();
    if (b > 1) e -= b - 1;
  }
  return e;
}

std::vector<Int> fiber_multiplicities(const CurveConfig& config) {
  return divlat::zariski_fiber_solver(gram_of(config));
}

std::string FiberType::name() const {
  switch (kind) {
    case FiberKind::Smooth: return "I_0";
    case FiberKind::In: return "I_" + std::to_string(n);
    case FiberKind::InStar: return "I_" + std::to_string(n) + "*";
    case FiberKind::II: return "II";
    case FiberKind::III: return "III";
    case FiberKind::IV: return "IV";
    case FiberKind::IVStar: return "IV*";
    case FiberKind::IIIStar: return "III*";
    case FiberKind::IIStar: return "II*";
  }
  throw Error("kodaira", "unreachable fiber kind");
}

long FiberType::euler() const {
  switch (kind) {
    case FiberKind::Smooth: return 0;
    case FiberKind::In: return n;
    case FiberKind::InStar: return n + 6;
    case FiberKind::II: return 2;
    case FiberKind::III: return 3;
    case FiberKind::IV: return 4;
    case FiberKind::IVStar: return 8;
    case FiberKind::IIIStar: return 9;
    case FiberKind::IIStar: return 10;
  }
  throw Error("kodaira", "unreachable fiber kind");
}

std::string FiberType::dynkin() const {
  switch (kind) {
    case FiberKind::Smooth: return "";
    case FiberKind::In: return n >= 1 ? "A~" + std::to_string(n - 1) : "";
    case FiberKind::InStar: return "D~" + std::to_string(n + 4);
    case FiberKind::II: return "";
    case FiberKind::III: return "A~1";
    case FiberKind::IV: return "A~2";
    case FiberKind::IVStar: return "E~6";
    case FiberKind::IIIStar: return "E~7";
    case FiberKind::IIStar: return "E~8";
  }
  throw Error("kodaira", "unreachable fiber kind");
}

namespace {

long adj_entry(const divlat::Gram& a, long i, long j) {
  return checked_long(a[i][j], "adjacency entry");
}

bool graph_connected(const divlat::Gram& a) {
  const long n = static_cast<long>(a.size());
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<long> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    long v = stack.back();
    stack.pop_back();
    for (long j = 0; j < n; ++j)
      if (j != v && !seen[j] && a[v][j] != 0) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

std::string dynkin_recognize(const divlat::Gram& adjacency) {
  const long n = static_cast<long>(adjacency.size());
  if (n < 2) throw Error("kodaira", "not an affine ADE diagram");
  for (long i = 0; i < n; ++i)
    if (static_cast<long>(adjacency[i].size()) != n)
      throw Error("kodaira", "adjacency is not square");
  if (!graph_connected(adjacency)) throw Error("kodaira", "graph is not connected");

  std::vector<long> wdeg(n, 0);  // weighted degree (edge multiplicities)
  long total_edges = 0;
  bool has_multi = false;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (i == j) continue;
      long e = adj_entry(adjacency, i, j);
      if (e < 0) throw Error("kodaira", "negative adjacency entry");
      wdeg[i] += e;
      if (i < j) {
        total_edges += e;
        if (e >= 2) has_multi = true;
      }
    }

  if (n == 2) {
    if (adj_entry(adjacency, 0, 1) == 2) return "A~1";
    throw Error("kodaira", "not an affine ADE diagram");
  }
  if (has_multi) throw Error("kodaira", "not an affine ADE diagram");

  bool all_deg2 = std::all_of(wdeg.begin(), wdeg.end(), [](long d) { return d == 2; });
  if (all_deg2 && total_edges == n) return "A~" + std::to_string(n - 1);

  // From here: simple connected graph, want a tree (edges = n - 1).
  if (total_edges != n - 1) throw Error("kodaira", "not an affine ADE diagram");

  std::vector<long> branch_nodes;
  for (long i = 0; i < n; ++i) {
    if (wdeg[i] > 4) throw Error("kodaira", "not an affine ADE diagram");
    if (wdeg[i] >= 3) branch_nodes.push_back(i);
  }

  auto leaf_neighbors = [&](long v) {
    long count = 0;
    for (long j = 0; j < n; ++j)
      if (j != v && adjacency[v][j] != 0 && wdeg[j] == 1) ++count;
    return count;
  };

  if (branch_nodes.size() == 1 && wdeg[branch_nodes[0]] == 4) {
    if (n == 5 && leaf_neighbors(branch_nodes[0]) == 4) return "D~4";
    throw Error("kodaira", "not an affine ADE diagram");
  }
  if (branch_nodes.size() == 2) {
    for (long v : branch_nodes)
      if (wdeg[v] != 3 || leaf_neighbors(v) != 2)
        throw Error("kodaira", "not an affine ADE diagram");
    return "D~" + std::to_string(n - 1);
  }
  if (branch_nodes.size() == 1) {
    // Single degree-3 node: measure the three arm lengths.
    long center = branch_nodes[0];
    std::vector<long> arms;
    for (long j = 0; j < n; ++j) {
      if (j == center || adjacency[center][j] == 0) continue;
      long len = 1, prev = center, cur = j;
      while (wdeg[cur] == 2) {
        for (long k = 0; k < n; ++k)
          if (k != prev && k != cur && adjacency[cur][k] != 0) {
            prev = cur;
            cur = k;
            ++len;
            break;
          }
        if (cur == prev) break;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end(), std::greater<long>());
    if (arms == std::vector<long>{2, 2, 2}) return "E~6";
    if (arms == std::vector<long>{3, 3, 1}) return "E~7";
    if (arms == std::vector<long>{5, 2, 1}) return "E~8";
  }
  throw Error("kodaira", "not an affine ADE diagram");
}

namespace {

Int local_mult(const divlat::IncidencePoint& p, const std::string& label, long branches) {
  auto it = p.curve_mult.find(label);
  return it == p.curve_mult.end() ? Int(branches) : it->second;
}

// Marked points where some component is singular or meets another one.
std::vector<const divlat::IncidencePoint*> essential_points(const CurveConfig& config) {
  std::vector<const divlat::IncidencePoint*> out;
  for (const auto& p : config.points) {
    bool essential = p.branches.size() >= 2;
    for (const auto& [label, b] : p.branches)
      if (b >= 2 || local_mult(p, label, b) >= 2) essential = true;
    if (essential) out.push_back(&p);
  }
  return out;
}

FiberType finish(const CurveConfig& config, FiberType t) {
  long e = euler_number(config);
  if (e != t.euler())
    throw Error("kodaira", "euler number " + std::to_string(e) +
                               " inconsistent with recognized type " + t.name());
  return t;
}

}  // namespace

FiberType classify(const CurveConfig& config) {
  const long n = config.size();
  if (n == 0) throw Error("kodaira", "empty configuration");
  divlat::Gram g = gram_of(config);

  std::vector<Int> mult;
  try {
    mult = divlat::zariski_fiber_solver(g);
  } catch (const Error& e) {
    throw Error("kodaira", std::string("not a fiber configuration: ") + e.detail());
  }
  Int kf = 0;
  for (long i = 0; i < n; ++i) {
    kf += mult[i] * config.components[i].kdeg;
    if (config.components[i].mult != 0 && config.components[i].mult != mult[i])
      throw Error("kodaira", "declared multiplicity of " + config.components[i].label +
                                 " disagrees with the fiber class");
  }
  if (kf != 0) throw Error("kodaira", "K.f != 0: not an elliptic fiber");
  for (const auto& c : config.components)
    if (c.self == -1 && c.kdeg == -1)
      throw Error("kodaira", "fiber is not relatively minimal");

  auto essentials = essential_points(config);

  if (n == 1) {
    const auto& c = config.components[0];
    if (c.self != 0) throw Error("kodaira", "single fiber component must have self 0");
    if (c.genus == 1) {
      if (!essentials.empty())
        throw Error("kodaira", "genus-1 component with singular points");
      return finish(config, {FiberKind::Smooth, 0});
    }
    if (c.genus != 0) throw Error("kodaira", "unrecognized fiber component genus");
    if (essentials.size() != 1)
      throw Error("kodaira", "rational fiber needs exactly one singular point");
    const auto& p = *essentials[0];
    long b = p.branches.at(c.label);
    Int m = local_mult(p, c.label, b);
    if (b == 2 && m == 2) return finish(config, {FiberKind::In, 1});
    if (b == 1 && m == 2) return finish(config, {FiberKind::II, 0});
    throw Error("kodaira", "unrecognized singular point on irreducible fiber");
  }

  for (const auto& c : config.components) {
    if (c.genus != 0)
      throw Error("kodaira", "positive-genus component in a reducible fiber");
    if (c.kdeg != 0)
      throw Error("kodaira", "reducible fiber component with K.C != 0");
  }
  for (const auto* p : essentials)
    for (const auto& [label, b] : p->branches)
      if (b >= 2 || local_mult(*p, label, b) >= 2)
        throw Error("kodaira", "singular component in a reducible fiber");

  if (n == 2) {
    if (g[0][1] != 2) throw Error("kodaira", "two components must meet twice in total");
    if (essentials.size() == 2) return finish(config, {FiberKind::In, 2});
    if (essentials.size() == 1) return finish(config, {FiberKind::III, 0});
    throw Error("kodaira", "point model missing for two-component fiber");
  }
  if (n == 3) {
    bool pairwise_one = g[0][1] == 1 && g[0][2] == 1 && g[1][2] == 1;
    if (pairwise_one) {
      if (essentials.size() == 1 && essentials[0]->branches.size() == 3)
        return finish(config, {FiberKind::IV, 0});
      if (essentials.size() == 3) return finish(config, {FiberKind::In, 3});
      throw Error("kodaira", "point model inconsistent for three-component fiber");
    }
  }

  std::string d = dynkin_recognize(g);
  if (d.rfind("A~", 0) == 0) {
    long an = std::stol(d.substr(2));
    return finish(config, {FiberKind::In, an + 1});
  }
  if (d.rfind("D~", 0) == 0) {
    long dn = std::stol(d.substr(2));
    return finish(config, {FiberKind::InStar, dn - 4});
  }
  if (d == "E~6") return finish(config, {FiberKind::IVStar, 0});
  if (d == "E~7") return finish(config, {FiberKind::IIIStar, 0});
  if (d == "E~8") return finish(config, {FiberKind::IIStar, 0});
  throw Error("kodaira", "unrecognized fiber configuration");
}

std::string emit_dot(const CurveConfig& config, const std::string& graph_name) {
  std::ostringstream out;
  out << "graph \"" << graph_name << "\" {\n";
  out << "  node [shape=box];\n";
  for (const auto& c : config.components) {
    out << "  \"" << c.label << "\" [label=\"";
    if (c.mult > 1) out << c.mult.get_str() << "*";
    out << c.label << " (" << c.self.get_str() << ")\"];\n";
  }
  const long n = config.size();
  divlat::Gram g = gram_of(config);
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) {
      long e = checked_long(g[i][j], "edge multiplicity");
      for (long k = 0; k < e; ++k)
        out << "  \"" << config.components[i].label << "\" -- \""
            << config.components[j].label << "\";\n";
    }
  out << "}\n";
  return out.str();
}

nlohmann::json config_to_json(const CurveConfig& config) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : config.components)
    comps.push_back({{"label", c.label},
                     {"self", checked_long(c.self, "self")},
                     {"k", checked_long(c.kdeg, "k")},
                     {"genus", c.genus},
                     {"mult", checked_long(c.mult, "mult")}});
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : config.points) {
    nlohmann::json branches = nlohmann::json::object();
    nlohmann::json curve_mult = nlohmann::json::object();
    for (const auto& [label, b] : p.branches) branches[label] = b;
    for (const auto& [label, m] : p.curve_mult)
      curve_mult[label] = checked_long(m, "curve_mult");
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [key, v] : p.pair_local)
      pairs.push_back(
          {{"a", key.first}, {"b", key.second}, {"local", checked_long(v, "local")}});
    pts.push_back({{"branches", branches}, {"mult", curve_mult}, {"pairs", pairs}});
  }
  return nlohmann::json{{"components", comps}, {"points", pts}};
}

CurveConfig config_from_json(const nlohmann::json& j) {
  CurveConfig config;
  for (const auto& c : j.at("components")) {
    FiberComponent fc;
    fc.label = c.at("label").get<std::string>();
    fc.self = Int(c.at("self").get<long>());
    fc.kdeg = Int(c.value("k", -2 - c.at("self").get<long>()));
    fc.genus = c.value("genus", 0L);
    fc.mult = Int(c.value("mult", 0L));
    config.components.push_back(std::move(fc));
  }
  if (j.contains("points")) {
    for (const auto& pj : j.at("points")) {
      divlat::IncidencePoint p;
      for (const auto& [label, b] : pj.at("branches").items())
        p.branches[label] = b.get<long>();
      if (pj.contains("mult"))
        for (const auto& [label, m] : pj.at("mult").items())
          p.curve_mult[label] = Int(m.get<long>());
      else
        for (const auto& [label, b] : p.branches) p.curve_mult[label] = Int(b);
      if (pj.contains("pairs"))
        for (const auto& e : pj.at("pairs")) {
          std::string a = e.at("a").get<std::string>();
          std::string b = e.at("b").get<std::string>();
          p.pair_local[std::minmax(a, b)] += Int(e.at("local").get<long>());
        }
      else if (p.branches.size() == 2) {
        auto it = p.branches.begin();
        std::string a = it->first;
        std::string b = std::next(it)->first;
        p.pair_local[std::minmax(a, b)] = 1;
      }
      config.points.push_back(std::move(p));
    }
  } else if (j.contains("gram")) {
    // Transverse shorthand: pairwise intersections <= 1 become simple
    // crossings. Anything larger is ambiguous without a point model.
    const auto& gram = j.at("gram");
    for (std::size_t i = 0; i < config.components.size(); ++i)
      for (std::size_t k = i + 1; k < config.components.size(); ++k) {
        long v = gram.at(i).at(k).get<long>();
        if (v < 0 || v > 1)
          throw Error("kodaira",
                      "gram shorthand requires pairwise intersections 0 or 1; "
                      "supply a point model instead");
        if (v == 1) {
          divlat::IncidencePoint p;
          p.branches[config.components[i].label] = 1;
          p.branches[config.components[k].label] = 1;
          p.curve_mult[config.components[i].label] = 1;
          p.curve_mult[config.components[k].label] = 1;
          p.pair_local[std::minmax(config.components[i].label,
                                   config.components[k].label)] = 1;
          config.points.push_back(std::move(p));
        }
      }
  }
  return config;
}

}  // namespace orbi::kodaira
