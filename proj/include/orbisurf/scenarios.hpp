#pragma once

// The four rational elliptic surfaces obtained by resolving (E x P^1)/mu_i
// for i = 2, 3, 4, 6: their curve configurations are rebuilt from scratch
// (Hirzebruch-Jung chains at the fixed points, fiber multiplicities and
// self-intersections solved from fiber.C = 0 and adjunction, never copied
// in), then pushed through fiber classification, relative minimal models,
// reduction to a Hirzebruch surface, Euler-number ledgers and boundary
// counts. Expected outcomes are embedded as fixtures and compared
// mechanically, dual graphs up to attributed isomorphism.

#include <orbisurf/common.hpp>
#include <orbisurf/divlat.hpp>
#include <orbisurf/hj.hpp>
#include <orbisurf/kodaira.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace orbi::scenarios {

enum class CaseId { D4, E6, E7, E8 };

std::string case_name(CaseId id);
CaseId case_from_string(const std::string& s);

// A fiber of one of the two fibrations, as labels into the surface model
// plus the multiplicities of the fiber class.
struct FiberRef {
  std::string name;
  std::vector<std::string> comps;
  std::vector<Int> mults;
};

struct BuiltCase {
  CaseId id = CaseId::D4;
  long i = 2;                 // order of the acting group
  std::vector<long> orders;   // stabilizer order at each marked base point
  divlat::SurfaceModel model;
  std::vector<FiberRef> ruling;  // singular ruling fibers, one per marked point
  FiberRef ell_zero, ell_inf;
  divlat::SignatureReport sig;
};

// Constructs the resolved surface: sections D_0, D_inf, vertical quotient
// fibers D_j, Hirzebruch-Jung chains E{j}.t at the 0-end and F{j} at the
// infinity-end. All multiplicities and undetermined self-intersections are
// solved from the fiber equations; K.(ruling fiber) = -2, K.(elliptic
// fiber) = 0, genus 0 adjunction and the Zariski kernel are then checked.
BuiltCase build_case(CaseId id);

// The fiber as a standalone curve configuration: points restricted to the
// fiber's own components.
kodaira::CurveConfig fiber_config(const BuiltCase& c, const FiberRef& f);

struct FiberTypes {
  kodaira::FiberType over_zero;
  std::optional<kodaira::FiberType> over_inf;  // empty: not relatively minimal
};

FiberTypes fibers_and_types(const BuiltCase& c);

struct EulerLedger {
  long ruling_total = 0;    // 4 + sum of (e(fiber) - 2) over singular ruling fibers
  long elliptic_total = 0;  // e(f_0) + e(f_inf)
};

// Computes both and requires them to agree.
EulerLedger euler_ledger(const BuiltCase& c);

struct ContractionStep {
  std::string contracted;
  long e_after = 0;  // Euler number via the surviving fibration's ledger
};

struct MinimalModelResult {
  BuiltCase surface;  // ruling refs dropped: those fibers do not survive
  std::vector<ContractionStep> stages;
  kodaira::FiberType final_type;  // of the fiber over infinity
};

// Contracts vertical (-1)-curves of the infinity fiber until none remain,
// checking the Euler ledger after every step.
MinimalModelResult relative_minimal_model(const BuiltCase& c);

struct HirzebruchResult {
  BuiltCase surface;  // elliptic refs dropped
  std::vector<ContractionStep> stages;
  Int d0_self = 0, dinf_self = 0;
  Int k_sq = 0;  // via Noether: (12 - e_0) + number of contractions
};

// Contracts vertical ruling (-1)-curves, preferring ones disjoint from D_0,
// until every ruling fiber is irreducible; the result is a minimal ruled
// surface carrying D_0 with self-intersection -2.
HirzebruchResult hirzebruch_reduction(const BuiltCase& c);

struct Boundary {
  long count = 0;
  std::vector<std::string> components;  // reduced support of the infinity fiber
};

Boundary boundary_components(const BuiltCase& c);

// Expected data for one case, embedded for mechanical comparison.
struct FixtureGraph {
  std::vector<std::array<long, 2>> nodes;  // (multiplicity, self-intersection)
  std::vector<std::array<long, 2>> edges;  // node index pairs
  std::string type;                        // "" when the fiber is not classified
  std::string dynkin;
};

struct CaseFixture {
  std::string name;
  long i = 0;
  std::vector<long> orders;
  FixtureGraph over_zero, over_inf;
  long minimal_contractions = 0;
  std::string final_type;
  std::vector<std::array<long, 2>> final_nodes;  // (mult, self) after minimal model
  long hirzebruch_contractions = 0;
  long boundary_count = 0;
  long euler = 0;
};

const CaseFixture& fixture(CaseId id);

// Attributed-graph isomorphism for the small dual graphs involved.
bool graphs_isomorphic(const std::vector<std::array<long, 2>>& nodes_a,
                       const std::vector<std::array<long, 2>>& edges_a,
                       const std::vector<std::array<long, 2>>& nodes_b,
                       const std::vector<std::array<long, 2>>& edges_b);

// Runs the whole pipeline and diffs every computed outcome against the
// fixture. Empty result = exact match.
std::vector<std::string> compare_table1(CaseId id);

struct ScenarioReport {
  BuiltCase built;
  FiberTypes types;
  EulerLedger ledger;
  MinimalModelResult minimal;
  HirzebruchResult hirzebruch;
  Boundary boundary;
  std::vector<std::string> diff;
};

ScenarioReport run_case(CaseId id);

nlohmann::json report_to_json(const ScenarioReport& r);
std::string report_to_dot(const ScenarioReport& r);

}  // namespace orbi::scenarios
