// Command-line front end: JSON reports (DOT for graph output) over the
// library. Errors from the library land on stderr as a JSON object and
// exit code 1; usage problems exit 2.

#include <orbisurf/cyclo.hpp>
#include <orbisurf/divlat.hpp>
#include <orbisurf/hj.hpp>
#include <orbisurf/kodaira.hpp>
#include <orbisurf/orbclass.hpp>
#include <orbisurf/scenarios.hpp>
#include <orbisurf/walls.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

bool pretty_output() {
  const char* v = std::getenv("ORBISURF_COLOR");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void emit(const json& j) {
  if (pretty_output())
    std::cout << j.dump(2) << '\n';
  else
    std::cout << j.dump() << '\n';
}

std::vector<long> parse_longs(const std::string& s, const std::string& what) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stol(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw orbi::Error("cli", what + ": expected comma-separated integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw orbi::Error("cli", what + " is empty");
  return out;
}

orbi::walls::Vec parse_vec(const std::string& s, const std::string& what) {
  orbi::walls::Vec out;
  for (long v : parse_longs(s, what)) out.push_back(orbi::Int(v));
  return out;
}

// Flag values starting with '{' (or '[') are inline JSON; anything else is
// a path to a JSON file.
json load_json_arg(const std::string& value, const std::string& what) {
  std::string text = value;
  if (value.empty() || (value[0] != '{' && value[0] != '[')) {
    std::ifstream in(value);
    if (!in) throw orbi::Error("cli", what + ": cannot open file '" + value + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw orbi::Error("cli", what + ": invalid JSON: " + e.what());
  }
}

orbi::Rat parse_rat(const std::string& s, const std::string& what) {
  try {
    orbi::Rat q(s);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument(s);
    return q;
  } catch (const std::exception&) {
    throw orbi::Error("cli", what + ": expected a rational like 3 or 3/4, got '" + s + "'");
  }
}

std::pair<long, long> parse_pair(const std::string& s, const std::string& what) {
  std::vector<long> v = parse_longs(s, what);
  if (v.size() != 2) throw orbi::Error("cli", what + ": expected two integers, got '" + s + "'");
  return {v[0], v[1]};
}

// One stacky point at the given group order and weights; enough structure
// for the point-local commands.
orbi::orbclass::OrbSurface point_surface(long r, const std::string& weights) {
  auto [w1, w2] = parse_pair(weights, "--weights");
  orbi::orbclass::OrbSurface x;
  x.points.push_back({"p", r, w1, w2});
  x.validate();
  return x;
}

orbi::cyclo::RepClass rep_from_list(const orbi::cyclo::GroupData& g,
                                    const std::vector<long>& mults) {
  if (static_cast<long>(mults.size()) != g.irrep_count())
    throw orbi::Error("cli", "--rep: expected " + std::to_string(g.irrep_count()) +
                                 " multiplicities, got " + std::to_string(mults.size()));
  orbi::cyclo::RepClass rep = orbi::cyclo::zero_rep(g);
  for (std::size_t i = 0; i < mults.size(); ++i) rep.mult[i] = mults[i];
  return rep;
}

orbi::orbclass::KClassN class_from_alpha(const orbi::orbclass::OrbSurface& x,
                                         const std::vector<long>& alpha) {
  long r = x.points.at(0).r;
  if (static_cast<long>(alpha.size()) != r)
    throw orbi::Error("cli", "--alpha: expected " + std::to_string(r) +
                                 " coefficients (n0 then rho_1..rho_" + std::to_string(r - 1) +
                                 "), got " + std::to_string(alpha.size()));
  orbi::orbclass::KClassN a;
  a.n0 = alpha[0];
  a.coeffs[x.points.at(0).label] = std::vector<long>(alpha.begin() + 1, alpha.end());
  return a;
}

int run(int argc, char** argv) {
  CLI::App app{"exact invariants of orbifold surfaces"};
  app.require_subcommand(1);

  // resolve
  std::string res_type;
  CLI::App* resolve = app.add_subcommand("resolve", "Hirzebruch-Jung resolution of 1/r(1,a)");
  resolve->add_option("--type", res_type, "singularity as r,a")->required();

  // chern
  long ch_group = 0;
  std::string ch_weights, ch_rep, ch_alpha;
  CLI::App* chern = app.add_subcommand("chern", "orbifold Chern character at a stacky point");
  chern->add_option("--group", ch_group, "order of the cyclic stabilizer")->required();
  chern->add_option("--weights", ch_weights, "cotangent weights w1,w2")->required();
  chern->add_option("--rep", ch_rep, "skyscraper O_p (x) rep, as irrep multiplicities");
  chern->add_option("--alpha", ch_alpha, "lattice class n0,n1,...");

  // euler-pairing
  std::string ep_surface, ep_a, ep_b;
  CLI::App* pairing = app.add_subcommand("euler-pairing", "Euler form on extended classes");
  pairing->add_option("--surface", ep_surface, "surface JSON (inline or file)")->required();
  pairing->add_option("--a", ep_a, "first class, JSON")->required();
  pairing->add_option("--b", ep_b, "second class, JSON")->required();

  // hilb-dim
  long hd_group = 0;
  std::string hd_weights, hd_alpha;
  CLI::App* hilb = app.add_subcommand("hilb-dim", "expected Hilbert-scheme dimension");
  hilb->add_option("--group", hd_group, "order of the cyclic stabilizer")->required();
  hilb->add_option("--weights", hd_weights, "cotangent weights w1,w2")->required();
  hilb->add_option("--alpha", hd_alpha, "class n0,n1,... over [O_q], rho_1..")->required();

  // oracle
  long or_group = 0, or_trunc = -1;
  std::string or_weights, or_ideal;
  CLI::App* oracle = app.add_subcommand("oracle", "equivariant tangent dimension of a monomial ideal");
  oracle->add_option("--group", or_group, "order of the cyclic stabilizer")->required();
  oracle->add_option("--weights", or_weights, "action weights w1,w2")->required();
  oracle->add_option("--ideal", or_ideal, "monomial generators as a,b;c,d;...")->required();
  oracle->add_option("--truncation", or_trunc, "degree bound (default colength+2)");

  // walls
  std::string wl_gram, wl_delta, wl_h1, wl_h2;
  long wl_r = 0;
  CLI::App* walls = app.add_subcommand("walls", "walls of type (r, Delta) met by a segment");
  walls->add_option("--gram", wl_gram, "lattice JSON (inline or file)")->required();
  walls->add_option("--r", wl_r, "rank of the Chern spec")->required();
  walls->add_option("--delta", wl_delta, "discriminant, rational")->required();
  walls->add_option("--h1", wl_h1, "segment start, comma-separated")->required();
  walls->add_option("--h2", wl_h2, "segment end, comma-separated")->required();

  // classify-fiber
  std::string cf_config, cf_emit = "json";
  CLI::App* classify = app.add_subcommand("classify-fiber", "Kodaira type of a fiber configuration");
  classify->add_option("--config", cf_config, "configuration JSON (inline or file)")->required();
  classify->add_option("--emit", cf_emit, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  // scenario
  std::string sc_case, sc_emit = "json";
  CLI::App* scenario = app.add_subcommand("scenario", "one of the four quotient case studies");
  scenario->add_option("--case", sc_case, "D4, E6, E7, E8 or all")->required();
  scenario->add_option("--emit", sc_emit, "json or dot")->check(CLI::IsMember({"json", "dot"}));

  // table1
  CLI::App* table1 = app.add_subcommand("table1", "diff all four case studies against fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  if (resolve->parsed()) {
    auto [r, a] = parse_pair(res_type, "--type");
    orbi::hj::SingType t = orbi::hj::validated(r, a);
    orbi::hj::SingType td = orbi::hj::dual(t);
    auto selfs = [](const orbi::hj::HJChain& c) {
      json arr = json::array();
      for (long b : c.b) arr.push_back(-b);
      return arr;
    };
    json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = {{"r", t.r}, {"a", t.a}};
    j["chain"] = selfs(orbi::hj::hj_chain(t));
    j["dual"] = {{"type", {{"r", td.r}, {"a", td.a}}}, {"chain", selfs(orbi::hj::hj_chain(td))}};
    emit(j);
    return 0;
  }

  if (chern->parsed()) {
    orbi::orbclass::OrbSurface x = point_surface(ch_group, ch_weights);
    if (ch_rep.empty() == ch_alpha.empty())
      throw orbi::Error("cli", "chern: give exactly one of --rep and --alpha");
    orbi::orbclass::OrbChern c;
    if (!ch_rep.empty()) {
      orbi::cyclo::GroupData g = orbi::cyclo::char_table_cyclic(ch_group);
      c = orbi::orbclass::orb_chern_skyscraper(x.points.at(0),
                                               rep_from_list(g, parse_longs(ch_rep, "--rep")));
    } else {
      c = orbi::orbclass::orb_chern(x, class_from_alpha(x, parse_longs(ch_alpha, "--alpha")));
    }
    json j = orbi::orbclass::chern_to_json(c);
    j["schema_version"] = kSchemaVersion;
    emit(j);
    return 0;
  }

  if (pairing->parsed()) {
    orbi::orbclass::OrbSurface x =
        orbi::orbclass::surface_from_json(load_json_arg(ep_surface, "--surface"));
    orbi::orbclass::ExtClass a = orbi::orbclass::extclass_from_json(load_json_arg(ep_a, "--a"));
    orbi::orbclass::ExtClass b = orbi::orbclass::extclass_from_json(load_json_arg(ep_b, "--b"));
    json j;
    j["schema_version"] = kSchemaVersion;
    j["pairing"] = orbi::checked_long(orbi::orbclass::euler_pairing(x, a, b), "pairing");
    emit(j);
    return 0;
  }

  if (hilb->parsed()) {
    orbi::orbclass::OrbSurface x = point_surface(hd_group, hd_weights);
    orbi::orbclass::KClassN a = class_from_alpha(x, parse_longs(hd_alpha, "--alpha"));
    orbi::orbclass::HilbResult res = orbi::orbclass::hilb_dim(x, a);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = res.dim;
    j["emptiness_consistent"] = res.emptiness_consistent;
    emit(j);
    return 0;
  }

  if (oracle->parsed()) {
    auto [w1, w2] = parse_pair(or_weights, "--weights");
    std::vector<std::array<long, 2>> gens;
    std::stringstream ss(or_ideal);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      auto [a, b] = parse_pair(tok, "--ideal");
      gens.push_back({a, b});
    }
    orbi::orbclass::OracleResult res =
        orbi::orbclass::oracle_tangent_dim(or_group, w1, w2, gens, or_trunc);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["dim"] = res.dim;
    j["colength"] = res.colength;
    j["truncation"] = res.truncation;
    emit(j);
    return 0;
  }

  if (walls->parsed()) {
    orbi::walls::NumLattice lat =
        orbi::walls::numlattice_from_json(load_json_arg(wl_gram, "--gram"));
    orbi::Rat delta = parse_rat(wl_delta, "--delta");
    if (wl_r < 1) throw orbi::Error("cli", "--r must be at least 1");
    orbi::walls::ChernSpec spec;
    spec.r = wl_r;
    spec.c1 = orbi::walls::Vec(lat.rank(), 0);
    spec.c2 = delta / orbi::make_rat(2 * wl_r);  // so that 2 r c2 - (r-1) c1^2 = delta
    orbi::walls::Vec h1 = parse_vec(wl_h1, "--h1");
    orbi::walls::Vec h2 = parse_vec(wl_h2, "--h2");
    std::vector<orbi::walls::Wall> found = orbi::walls::enumerate_walls(lat, spec, h1, h2);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["r"] = wl_r;
    j["delta"] = orbi::cyclo::rat_to_json(delta);
    j["radius"] =
        orbi::checked_long(orbi::walls::certified_box_radius(lat, spec, h1, h2), "radius");
    j["walls"] = orbi::walls::walls_to_json(found);
    emit(j);
    return 0;
  }

  if (classify->parsed()) {
    orbi::kodaira::CurveConfig cfg =
        orbi::kodaira::config_from_json(load_json_arg(cf_config, "--config"));
    if (cf_emit == "dot") {
      std::cout << orbi::kodaira::emit_dot(cfg, "fiber");
      return 0;
    }
    orbi::kodaira::FiberType t = orbi::kodaira::classify(cfg);
    std::vector<orbi::Int> mults = orbi::kodaira::fiber_multiplicities(cfg);
    json marr = json::array();
    for (const orbi::Int& m : mults) marr.push_back(orbi::checked_long(m, "multiplicity"));
    json j;
    j["schema_version"] = kSchemaVersion;
    j["type"] = t.name();
    j["dynkin"] = t.dynkin();
    j["euler"] = t.euler();
    j["multiplicities"] = marr;
    emit(j);
    return 0;
  }

  if (scenario->parsed()) {
    std::vector<orbi::scenarios::CaseId> ids;
    if (sc_case == "all")
      ids = {orbi::scenarios::CaseId::D4, orbi::scenarios::CaseId::E6,
             orbi::scenarios::CaseId::E7, orbi::scenarios::CaseId::E8};
    else
      ids = {orbi::scenarios::case_from_string(sc_case)};
    if (sc_emit == "dot") {
      for (orbi::scenarios::CaseId id : ids)
        std::cout << orbi::scenarios::report_to_dot(orbi::scenarios::run_case(id));
      return 0;
    }
    if (ids.size() == 1) {
      emit(orbi::scenarios::report_to_json(orbi::scenarios::run_case(ids[0])));
    } else {
      json cases = json::array();
      for (orbi::scenarios::CaseId id : ids)
        cases.push_back(orbi::scenarios::report_to_json(orbi::scenarios::run_case(id)));
      json j;
      j["schema_version"] = kSchemaVersion;
      j["cases"] = cases;
      emit(j);
    }
    return 0;
  }

  if (table1->parsed()) {
    json cases = json::object();
    bool ok = true;
    for (orbi::scenarios::CaseId id :
         {orbi::scenarios::CaseId::D4, orbi::scenarios::CaseId::E6, orbi::scenarios::CaseId::E7,
          orbi::scenarios::CaseId::E8}) {
      std::vector<std::string> diff = orbi::scenarios::compare_table1(id);
      ok = ok && diff.empty();
      cases[orbi::scenarios::case_name(id)] = {{"diff", diff}};
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["cases"] = cases;
    j["ok"] = ok;
    emit(j);
    return ok ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const orbi::Error& e) {
    json err{{"error", e.what()}, {"module", e.module()}, {"detail", e.detail()}};
    std::cerr << err.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", e.what()}, {"module", "cli"}, {"detail", e.what()}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
}
