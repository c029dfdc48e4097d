#pragma once

// Classification of degenerate elliptic-fibration fibers from a curve
// configuration: labeled components with self-intersection, canonical
// degree, geometric genus and fiber multiplicity, plus the shared point
// model that distinguishes, say, two components meeting twice transversally
// from two components meeting once with contact order two.

#include <orbisurf/common.hpp>
#include <orbisurf/divlat.hpp>

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace orbi::kodaira {

struct FiberComponent {
  std::string label;
  Int self = 0;
  Int kdeg = 0;
  long genus = 0;  // geometric genus of the component
  Int mult = 0;    // multiplicity in the fiber class, 0 = unset
};

struct CurveConfig {
  std::vector<FiberComponent> components;
  std::vector<divlat::IncidencePoint> points;

  long size() const { return static_cast<long>(components.size()); }
  long index_of(const std::string& label) const;
};

// Intersection matrix implied by the configuration: self-intersections on
// the diagonal, summed local intersection numbers off it.
divlat::Gram gram_of(const CurveConfig& config);

// Topological Euler number: sum of 2 - 2g over components minus, at every
// marked point, (number of local branches there - 1).
long euler_number(const CurveConfig& config);

// Fiber multiplicities (primitive positive kernel of the Gram matrix).
std::vector<Int> fiber_multiplicities(const CurveConfig& config);

enum class FiberKind { Smooth, In, InStar, II, III, IV, IVStar, IIIStar, IIStar };

struct FiberType {
  FiberKind kind = FiberKind::Smooth;
  long n = 0;  // the n of I_n / I_n*

  std::string name() const;    // "I_0", "I_5", "I_2*", "II", ..., "II*"
  long euler() const;          // e(I_n) = n, e(I_n*) = n + 6, ...
  std::string dynkin() const;  // "A~1", "D~6", "E~8", "" when none

  bool operator==(const FiberType& o) const { return kind == o.kind && n == o.n; }
};

// Recognizes an affine ADE diagram from an adjacency matrix (off-diagonal
// entries = edge multiplicities; the diagonal is ignored). Returns "A~n",
// "D~n", "E~6", "E~7" or "E~8"; throws if the graph is none of these.
std::string dynkin_recognize(const divlat::Gram& adjacency);

// Kodaira type of a complete fiber. Preconditions checked: K.f = 0, no
// vertical (-1)-component (throws "fiber is not relatively minimal"), the
// Gram block negative semidefinite of corank 1 with positive primitive
// kernel, declared multiplicities (when set) matching that kernel, and the
// Euler number of the configuration matching the type recognized.
FiberType classify(const CurveConfig& config);

// Deterministic Graphviz rendering: one node per component labeled
// "mult*label (self)", one edge per local intersection.
std::string emit_dot(const CurveConfig& config, const std::string& graph_name);

nlohmann::json config_to_json(const CurveConfig& config);
CurveConfig config_from_json(const nlohmann::json& j);

}  // namespace orbi::kodaira
