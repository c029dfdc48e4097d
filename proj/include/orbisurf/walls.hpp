#pragma once

// Polarization walls for sheaves of fixed rank and Chern data on a surface
// with Picard lattice of signature (1, n-1). A wall between two ample
// classes H1, H2 is the locus where some potential destabilizer xi (an
// integral class with xi.H = 0 somewhere on the segment and bounded
// negative square) changes the sign of xi.H_t. Enumeration is exact: the
// positive-definite quadratic forms N_t majorizing the candidates are
// bounded below by a certified rational eigenvalue bound, turning the
// search into a finite box scan.

#include <orbisurf/common.hpp>
#include <orbisurf/divlat.hpp>

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace orbi::walls {

using Vec = std::vector<Int>;

struct NumLattice {
  divlat::Gram gram;

  long rank() const { return static_cast<long>(gram.size()); }
  // Symmetric, nondegenerate, signature (1, n-1).
  void validate() const;
};

Int pair(const NumLattice& lat, const Vec& a, const Vec& b);

struct ChernSpec {
  long r = 1;  // rank, >= 1
  Vec c1;
  Rat c2 = 0;
};

// (c1.H) / r.
Rat slope(const NumLattice& lat, const ChernSpec& spec, const Vec& h);

// 2 r c2 - (r - 1) c1^2.
Rat discriminant(const NumLattice& lat, const ChernSpec& spec);

// Wall class of a subobject: r c1' - r' c1 for 0 < r' < r.
Vec subobject_wall_class(const ChernSpec& spec, long rp, const Vec& c1p);

// xi.H = 0 together with -r^2 Delta / 4 <= xi^2 < 0.
bool is_on_wall(const NumLattice& lat, const ChernSpec& spec, const Vec& xi, const Vec& h);

enum class WallKind { crosses, touches, contains_segment };

std::string wall_kind_name(WallKind k);

struct Wall {
  Vec xi;  // primitive, first nonzero coordinate positive
  WallKind kind = WallKind::crosses;
  Int xi_sq = 0;
  Int dot_h1 = 0;
  Int dot_h2 = 0;
};

// All wall classes met along the segment [H1, H2] in the ample cone:
// primitive canonical-sign xi with (xi.H1)(xi.H2) <= 0 and xi^2 in
// [-r^2 Delta / 4, 0), tagged by how they meet the segment. Output is
// lexicographically sorted and duplicate-free.
std::vector<Wall> enumerate_walls(const NumLattice& lat, const ChernSpec& spec,
                                  const Vec& h1, const Vec& h2);

// The certified coordinate bound used by enumerate_walls: every candidate
// satisfies |xi_i| <= radius, via a rational lower bound on the smallest
// eigenvalue of N_t over the whole segment.
Int certified_box_radius(const NumLattice& lat, const ChernSpec& spec, const Vec& h1,
                         const Vec& h2);

// Reference enumeration over an explicit box; enumerate_walls equals this
// at the certified radius, and testing against a larger box checks that the
// bound lost nothing.
std::vector<Wall> enumerate_walls_in_box(const NumLattice& lat, const ChernSpec& spec,
                                         const Vec& h1, const Vec& h2, const Int& radius);

// True when no wall passes through H (degenerate segment [H, H]).
bool generic_check(const NumLattice& lat, const ChernSpec& spec, const Vec& h);

// (H.H')^2 / (H^2 H'^2), the squared hyperbolic cosine of the distance
// between two ample rays.
Rat cosh_distance_sq(const NumLattice& lat, const Vec& h, const Vec& hp);

NumLattice numlattice_from_json(const nlohmann::json& j);
nlohmann::json walls_to_json(const std::vector<Wall>& walls);

}  // namespace orbi::walls
