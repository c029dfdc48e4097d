#pragma once

// Numerical K-theory of a smooth rational orbifold surface with isolated
// cyclic stacky points: skyscraper classes twisted by irreducibles, orbifold
// Chern characters with twisted sectors, the Euler pairing, canonical
// twists, and the expected dimension of punctual Hilbert scheme strata.
//
// The working lattice N is spanned by the class of a free-orbit point O_q
// together with [O_p (x) rho_i] for every stacky point p and every
// nontrivial irreducible rho_i. The trivially-twisted skyscraper is not a
// basis member: [O_p (x) rho_0] = [O_q] - sum_i deg(rho_i) [O_p (x) rho_i],
// an identity this module asserts through Chern characters before using it.
// Extended classes add an integer multiple of [O_X].

#include <orbisurf/common.hpp>
#include <orbisurf/cyclo.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orbi::orbclass {

struct StackyPoint {
  std::string label;
  long r = 1;   // local group mu_r
  long w1 = 0;  // cotangent weights, units mod r
  long w2 = 0;

  void validate() const;
};

struct OrbSurface {
  std::vector<StackyPoint> points;
  std::optional<long> chi_structure;  // chi(O_X), needed only for rank-rank pairings

  const StackyPoint& point(const std::string& label) const;
  void validate() const;
};

// Element of N: n0 [O_q] + sum over points of coeffs[label][i-1] [O_p rho_i].
struct KClassN {
  long n0 = 0;
  std::map<std::string, std::vector<long>> coeffs;

  bool operator==(const KClassN& o) const { return n0 == o.n0 && coeffs == o.coeffs; }
};

struct ExtClass {
  long m = 0;  // multiple of [O_X]
  KClassN part;
};

// Orbifold Chern character. Untwisted sector (rank, deg, ch2); twisted
// sector values, one per nontrivial group element g^k per stacky point.
struct OrbChern {
  Rat rank = 0, deg = 0, ch2 = 0;
  std::map<std::string, std::vector<cyclo::CycloNum>> twisted;

  bool operator==(const OrbChern& o) const;
};

// ch(O_p (x) rep): untwisted (0, 0, deg(rep)/r); at g^k the value
// (1 - zeta^{w1 k})(1 - zeta^{w2 k}) * chi_rep(g^k).
OrbChern orb_chern_skyscraper(const StackyPoint& p, const cyclo::RepClass& rep);

OrbChern orb_chern(const OrbSurface& x, const KClassN& a);

// Class of O_Z for an invariant quotient with representation content v
// (v.mult[i] = multiplicity of rho_i in H^0(O_Z)), rewritten into N via the
// trivial-twist elimination identity.
KClassN kclass_of_quotient(const OrbSurface& x, const std::string& point_label,
                           const cyclo::RepClass& v);

// Euler pairing chi(a, b) on extended classes. Orthogonality of distinct
// points and chi(O_q, O_q) = 0 are built in; chi(O_X, O_X) must be supplied
// on the surface when both arguments have nonzero rank.
Int euler_pairing(const OrbSurface& x, const ExtClass& a, const ExtClass& b);

// a (x) K_X on the skyscraper lattice. Twisting permutes the irreducibles
// by the canonical weight w1 + w2; components landing on the trivial twist
// are rewritten back into N.
KClassN twist_by_K(const OrbSurface& x, const KClassN& a);

struct HilbResult {
  long dim = 0;
  // Set when dim < 0: a negative expected dimension is consistent with the
  // stratum being empty, so the value is reported rather than an error.
  bool emptiness_consistent = false;
};

// Expected dimension 2 n0 - sum over points of the Euler-form quadratic in
// the twisted coefficients (plus the rank-one linear correction).
HilbResult hilb_dim(const OrbSurface& x, const KClassN& a);

struct OracleResult {
  long dim = 0;        // dim Hom_R(I, R/I)^G
  long colength = 0;   // dim_C R/I
  long truncation = 0; // degree bound used for validation
};

// Independent check for hilb_dim on monomial ideals: the invariant part of
// Hom(I, R/I) for I generated by the given (a, b) exponent pairs in C[x,y],
// under the mu_r action with the given weights, by exact linear algebra on
// generator images modulo consecutive-lcm syzygies. truncation < 0 picks
// colength + 2; anything below that is rejected as too small to determine
// the answer.
OracleResult oracle_tangent_dim(long r, long w1, long w2,
                                const std::vector<std::array<long, 2>>& monomial_gens,
                                long truncation = -1);

// Representation content of R/I for I restricted to degrees < r.
struct ClusterSample {
  long a = 0, b = 0;           // section a x + b y
  std::vector<long> rep;       // multiplicity of each rho_i in R/I
  bool regular = false;        // rep equals the regular representation
};

struct ClusterReport {
  long r = 1;
  bool all_regular = false;
  std::vector<ClusterSample> samples;
};

// Checks that I = (a x + b y) + (x, y)^r at a 1/r(1,1) point cuts out a
// cluster with regular-representation content, section by section. Empty
// sections select a default sample set.
ClusterReport verify_cluster_family(long r,
                                    const std::vector<std::array<long, 2>>& sections = {});

nlohmann::json surface_to_json(const OrbSurface& x);
OrbSurface surface_from_json(const nlohmann::json& j);
nlohmann::json kclass_to_json(const KClassN& a);
KClassN kclass_from_json(const nlohmann::json& j);
nlohmann::json extclass_to_json(const ExtClass& a);
ExtClass extclass_from_json(const nlohmann::json& j);
nlohmann::json chern_to_json(const OrbChern& c);

}  // namespace orbi::orbclass
