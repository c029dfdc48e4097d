#pragma once

// Divisor lattices for surface curve configurations: labeled components,
// symmetric intersection Gram matrix, the canonical class as a linear
// functional (K.C per component), plus genus metadata. A companion point
// model records where components actually meet, branch by branch; it is the
// authority for multi-branch and tangency questions, while the Gram matrix
// is the authority for numerical intersection values.

#include <orbisurf/common.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace orbi::divlat {

struct SignatureReport {
  long n_plus = 0;
  long n_minus = 0;
  long n_zero = 0;

  bool operator==(const SignatureReport& o) const {
    return n_plus == o.n_plus && n_minus == o.n_minus && n_zero == o.n_zero;
  }
};

using Gram = std::vector<std::vector<Int>>;

struct DivLattice {
  std::vector<std::string> labels;
  Gram gram;                 // symmetric
  std::vector<Int> kdeg;     // K.C per component
  std::vector<long> genus;   // geometric genus metadata
  std::vector<Int> mult;     // optional multiplicity metadata (0 = unset)

  long size() const { return static_cast<long>(labels.size()); }
  long index_of(const std::string& label) const;  // -1 if absent
  long require(const std::string& label) const;   // throws if absent
  void add_component(const std::string& label, const Int& self, const Int& k,
                     long g = 0);
  void set_pairing(const std::string& a, const std::string& b, const Int& v);
  Int pairing(const std::string& a, const std::string& b) const;
  void validate() const;  // symmetry, label uniqueness
};

// Exact inertia (n_plus, n_minus, n_zero) of a symmetric integer matrix.
SignatureReport signature(const Gram& g);

// Arithmetic genus from adjunction: (C^2 + K.C)/2 + 1.
Rat adjunction_genus(const Int& self, const Int& kc);

// One marked point of the configuration. branches[c] = number of local
// branches of component c at the point; curve_mult[c] = local multiplicity
// of c there (>= 2 means c is singular at the point); pair_local[{a,b}]
// (keys stored with a < b) = local intersection number of a and b at the
// point. Sum over points of pair_local equals the Gram entry.
struct IncidencePoint {
  std::map<std::string, long> branches;
  std::map<std::string, Int> curve_mult;
  std::map<std::pair<std::string, std::string>, Int> pair_local;

  long total_branches() const;
  bool involves(const std::string& label) const { return branches.count(label) > 0; }
};

struct PointModel {
  std::vector<IncidencePoint> points;

  // Convenience: transverse intersection of a and b at a new point.
  void add_simple_crossing(const std::string& a, const std::string& b);
};

struct SurfaceModel {
  DivLattice lat;
  PointModel pts;
};

// Checks that point-model local intersections sum to the Gram entries.
void validate_incidence(const SurfaceModel& m);

// Appends a fresh exceptional component E with E^2 = -1, K.E = -1, E
// orthogonal to everything present (blow-up at a point away from the
// configuration).
DivLattice blow_up(const DivLattice& lat, const std::string& new_label);

// Blows up the configuration at an existing marked point: components through
// the point are separated, a new exceptional E records their multiplicities
// there. Inverse of contract() on the Gram/K data.
void blow_up_at(SurfaceModel& m, std::size_t point_index, const std::string& new_label);

// Contracts a (-1)-curve E (E^2 = -1, K.E = -1, genus 0): for all C, C',
// C^2 += (C.E)^2, C.C' += (C.E)(C'.E), K.C -= C.E so that the blown-down
// surface satisfies adjunction. All points on E merge into one image point;
// each incident C picks up branch count = its branch total along E and
// local multiplicity C.E there.
void contract(SurfaceModel& m, const std::string& e_label);

// Multiplicities of a fiber supported on the given Gram block: requires the
// block to be negative semidefinite of corank exactly 1 and the kernel to be
// spanned by a strictly positive primitive integer vector, which is returned.
std::vector<Int> zariski_fiber_solver(const Gram& g);

nlohmann::json lattice_to_json(const DivLattice& lat);
DivLattice lattice_from_json(const nlohmann::json& j);

}  // namespace orbi::divlat
