#include <orbisurf/walls.hpp>

#include <algorithm>
#include <numeric>

namespace orbi::walls {

namespace {

using Mat = std::vector<std::vector<Rat>>;

void check_vec(const NumLattice& lat, const Vec& v, const char* what) {
  if (static_cast<long>(v.size()) != lat.rank())
    throw Error("walls", std::string(what) + " has wrong dimension");
}

// Exact positive-semidefiniteness of a symmetric rational matrix.
bool is_psd(Mat a) {
  const long n = static_cast<long>(a.size());
  for (long k = 0; k < n; ++k) {
    if (a[k][k] < 0) return false;
    if (a[k][k] == 0) {
      for (long j = k + 1; j < n; ++j)
        if (a[k][j] != 0) return false;
      continue;
    }
    for (long i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat f = a[i][k] / a[k][k];
      for (long j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

// Rational lower bound for the least eigenvalue of a symmetric matrix,
// by bisection on exact PSD tests. Assumes the matrix is positive definite.
Rat min_eigen_lower_bound(const Mat& m) {
  const long n = static_cast<long>(m.size());
  Rat hi = m[0][0];
  for (long i = 1; i < n; ++i) hi = std::min(hi, m[i][i]);
  if (hi <= 0) return 0;
  auto shifted_psd = [&](const Rat& lambda) {
    Mat s = m;
    for (long i = 0; i < n; ++i) s[i][i] -= lambda;
    return is_psd(std::move(s));
  };
  Rat lo = 0;
  for (int iter = 0; iter < 40 && lo == 0; ++iter) {
    if (shifted_psd(hi)) { lo = hi; break; }
    hi /= 2;
  }
  if (lo == 0) return 0;
  // lo is feasible; sharpen upward a little (not required for soundness).
  return lo;
}

// Upper bound on sqrt(q) for a nonnegative rational.
Rat sqrt_upper_bound(const Rat& q) {
  if (q < 0) throw Error("walls", "sqrt of negative rational");
  if (q == 0) return 0;
  Int n = q.get_num(), d = q.get_den();
  Int s;
  mpz_sqrt(s.get_mpz_t(), Int(n * d).get_mpz_t());
  Rat out(s + 1, d);
  out.canonicalize();
  return out;
}

// abs for rationals
Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

struct SegmentForms {
  // (G H_t)_i = u_i + t v_i; H_t^2 = c0 + c1 t + c2 t^2.
  std::vector<Rat> u, v;
  Rat c0, c1, c2;
  const NumLattice* lat;
};

SegmentForms segment_forms(const NumLattice& lat, const Vec& h1, const Vec& h2) {
  const long n = lat.rank();
  SegmentForms f;
  f.lat = &lat;
  f.u.assign(n, Rat(0));
  f.v.assign(n, Rat(0));
  for (long i = 0; i < n; ++i) {
    Rat a = 0, b = 0;
    for (long j = 0; j < n; ++j) {
      a += Rat(lat.gram[i][j]) * Rat(h1[j]);
      b += Rat(lat.gram[i][j]) * Rat(h2[j]);
    }
    f.u[i] = a;
    f.v[i] = b - a;
  }
  Rat h11(pair(lat, h1, h1)), h12(pair(lat, h1, h2)), h22(pair(lat, h2, h2));
  f.c0 = h11;
  f.c1 = 2 * (h12 - h11);
  f.c2 = h11 - 2 * h12 + h22;
  return f;
}

Rat eval_quadratic(const Rat& a, const Rat& b, const Rat& c, const Rat& t) {
  return (a * t + b) * t + c;
}

// M_t = 2 (G H_t)(G H_t)^T / H_t^2 - G at a rational parameter.
Mat m_at(const SegmentForms& f, const Rat& t) {
  const long n = static_cast<long>(f.u.size());
  Rat h2 = eval_quadratic(f.c2, f.c1, f.c0, t);
  Mat m(n, std::vector<Rat>(n));
  for (long i = 0; i < n; ++i) {
    Rat gi = f.u[i] + t * f.v[i];
    for (long j = 0; j < n; ++j) {
      Rat gj = f.u[j] + t * f.v[j];
      m[i][j] = 2 * gi * gj / h2 - Rat(f.lat->gram[i][j]);
    }
  }
  return m;
}

// Certifies M_t - lambda I >= 0 for all t in [a, b], by comparing an exact
// eigenvalue bound at the midpoint of S_t = H_t^2 (M_t - lambda I) against
// a Frobenius bound on how far the quadratic entries of S_t wander over the
// subinterval. Subdivides on failure.
bool certify_on(const SegmentForms& f, const Rat& lambda, const Rat& a, const Rat& b,
                int depth) {
  const long n = static_cast<long>(f.u.size());
  Rat c = (a + b) / 2;

  // Entry polynomials S_ij(t) = alpha t^2 + beta t + gamma.
  Mat alpha(n, std::vector<Rat>(n)), beta(n, std::vector<Rat>(n)), gamma(n, std::vector<Rat>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Rat gtil = Rat(f.lat->gram[i][j]) + (i == j ? lambda : Rat(0));
      alpha[i][j] = 2 * f.v[i] * f.v[j] - f.c2 * gtil;
      beta[i][j] = 2 * (f.u[i] * f.v[j] + f.u[j] * f.v[i]) - f.c1 * gtil;
      gamma[i][j] = 2 * f.u[i] * f.u[j] - f.c0 * gtil;
    }

  Mat s_mid(n, std::vector<Rat>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      s_mid[i][j] = eval_quadratic(alpha[i][j], beta[i][j], gamma[i][j], c);
  Rat nu = min_eigen_lower_bound(s_mid);

  Rat fro2 = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Rat at_c = s_mid[i][j];
      Rat w = rat_abs(eval_quadratic(alpha[i][j], beta[i][j], gamma[i][j], a) - at_c);
      w = std::max(w, rat_abs(eval_quadratic(alpha[i][j], beta[i][j], gamma[i][j], b) - at_c));
      if (alpha[i][j] != 0) {
        Rat vx = -beta[i][j] / (2 * alpha[i][j]);
        if (a <= vx && vx <= b)
          w = std::max(w, rat_abs(eval_quadratic(alpha[i][j], beta[i][j], gamma[i][j], vx) - at_c));
      }
      fro2 += w * w;
    }
  if (fro2 == 0) {
    // The entries are constant on [a, b]; test the matrix itself, since nu
    // may undershoot the true least eigenvalue. A lower bound of 0 from the
    // bisection is inconclusive, not a PSD certificate.
    if (nu > 0 || is_psd(s_mid)) return true;
  } else if (nu >= sqrt_upper_bound(fro2)) {
    return true;
  }
  if (depth <= 0) return false;
  return certify_on(f, lambda, a, c, depth - 1) && certify_on(f, lambda, c, b, depth - 1);
}

// Certified rational lambda with M_t >= lambda I on the whole segment.
Rat lambda_lower_bound(const NumLattice& lat, const Vec& h1, const Vec& h2) {
  SegmentForms f = segment_forms(lat, h1, h2);
  Rat cand;
  for (int k = 0; k <= 4; ++k) {
    Rat t(k, 4);
    t.canonicalize();
    Rat b = min_eigen_lower_bound(m_at(f, t));
    if (k == 0 || b < cand) cand = b;
  }
  if (cand <= 0) throw Error("walls", "could not bound the segment forms below");
  cand /= 2;
  for (int attempt = 0; attempt < 12; ++attempt) {
    if (certify_on(f, cand, Rat(0), Rat(1), 26)) return cand;
    cand /= 2;
  }
  throw Error("walls", "eigenvalue certification failed");
}

}  // namespace

void NumLattice::validate() const {
  const long n = rank();
  if (n == 0) throw Error("walls", "empty lattice");
  divlat::SignatureReport sig = divlat::signature(gram);
  if (sig.n_zero != 0) throw Error("walls", "lattice is degenerate");
  if (sig.n_plus != 1)
    throw Error("walls", "lattice signature must be (1, n-1), got (" +
                             std::to_string(sig.n_plus) + ", " + std::to_string(sig.n_minus) +
                             ")");
}

Int pair(const NumLattice& lat, const Vec& a, const Vec& b) {
  check_vec(lat, a, "vector");
  check_vec(lat, b, "vector");
  Int total = 0;
  for (long i = 0; i < lat.rank(); ++i)
    for (long j = 0; j < lat.rank(); ++j) total += a[i] * lat.gram[i][j] * b[j];
  return total;
}

Rat slope(const NumLattice& lat, const ChernSpec& spec, const Vec& h) {
  if (spec.r < 1) throw Error("walls", "rank must be positive");
  if (pair(lat, h, h) <= 0) throw Error("walls", "polarization must have positive square");
  Rat s(pair(lat, spec.c1, h), Int(spec.r));
  s.canonicalize();
  return s;
}

Rat discriminant(const NumLattice& lat, const ChernSpec& spec) {
  if (spec.r < 1) throw Error("walls", "rank must be positive");
  Rat d = 2 * make_rat(spec.r) * spec.c2 - make_rat(spec.r - 1) * Rat(pair(lat, spec.c1, spec.c1));
  d.canonicalize();
  return d;
}

Vec subobject_wall_class(const ChernSpec& spec, long rp, const Vec& c1p) {
  if (!(0 < rp && rp < spec.r))
    throw Error("walls", "subobject rank must satisfy 0 < r' < r");
  if (c1p.size() != spec.c1.size()) throw Error("walls", "c1' has wrong dimension");
  Vec xi(spec.c1.size());
  for (std::size_t i = 0; i < xi.size(); ++i)
    xi[i] = Int(spec.r) * c1p[i] - Int(rp) * spec.c1[i];
  return xi;
}

bool is_on_wall(const NumLattice& lat, const ChernSpec& spec, const Vec& xi, const Vec& h) {
  lat.validate();
  if (pair(lat, h, h) <= 0) throw Error("walls", "polarization must have positive square");
  if (pair(lat, xi, h) != 0) return false;
  Rat xi2(pair(lat, xi, xi));
  Rat bound = make_rat(spec.r) * make_rat(spec.r) * discriminant(lat, spec) / 4;
  return xi2 < 0 && -bound <= xi2;
}

std::string wall_kind_name(WallKind k) {
  switch (k) {
    case WallKind::crosses: return "crosses";
    case WallKind::touches: return "touches";
    case WallKind::contains_segment: return "contains_segment";
  }
  throw Error("walls", "unreachable wall kind");
}

std::vector<Wall> enumerate_walls_in_box(const NumLattice& lat, const ChernSpec& spec,
                                         const Vec& h1, const Vec& h2, const Int& radius) {
  lat.validate();
  check_vec(lat, h1, "H1");
  check_vec(lat, h2, "H2");
  check_vec(lat, spec.c1, "c1");
  if (pair(lat, h1, h1) <= 0 || pair(lat, h2, h2) <= 0 || pair(lat, h1, h2) <= 0)
    throw Error("walls", "polarizations must be in one positive cone");
  Rat bound = make_rat(spec.r) * make_rat(spec.r) * discriminant(lat, spec) / 4;
  std::vector<Wall> out;
  if (bound <= 0 || radius <= 0) return out;

  const long n = lat.rank();
  const long rbox = checked_long(radius, "box radius");
  std::vector<long> xi(n, -rbox);
  xi[n - 1] -= 1;  // pre-advance
  while (true) {
    long pos = n - 1;
    while (pos >= 0 && xi[pos] == rbox) {
      xi[pos] = -rbox;
      --pos;
    }
    if (pos < 0) break;
    xi[pos] += 1;

    long first_nonzero = -1;
    long g = 0;
    for (long i = 0; i < n; ++i) {
      if (xi[i] != 0 && first_nonzero < 0) first_nonzero = i;
      g = std::gcd(g, std::abs(xi[i]));
    }
    if (first_nonzero < 0 || xi[first_nonzero] < 0 || g != 1) continue;

    Vec zi(n);
    for (long i = 0; i < n; ++i) zi[i] = xi[i];
    Int du = pair(lat, zi, h1);
    Int dv = pair(lat, zi, h2);
    if (du * dv > 0) continue;
    Int xi2 = pair(lat, zi, zi);
    if (xi2 >= 0)
      throw Error("walls",
                  "signature violation: class orthogonal to an ample ray with xi^2 >= 0");
    if (Rat(xi2) < -bound) continue;
    Wall w;
    w.xi = std::move(zi);
    w.xi_sq = xi2;
    w.dot_h1 = du;
    w.dot_h2 = dv;
    if (du == 0 && dv == 0)
      w.kind = WallKind::contains_segment;
    else if (du == 0 || dv == 0)
      w.kind = WallKind::touches;
    else
      w.kind = WallKind::crosses;
    out.push_back(std::move(w));
  }
  return out;
}

Int certified_box_radius(const NumLattice& lat, const ChernSpec& spec, const Vec& h1,
                         const Vec& h2) {
  lat.validate();
  check_vec(lat, h1, "H1");
  check_vec(lat, h2, "H2");
  check_vec(lat, spec.c1, "c1");
  if (pair(lat, h1, h1) <= 0 || pair(lat, h2, h2) <= 0 || pair(lat, h1, h2) <= 0)
    throw Error("walls", "polarizations must be in one positive cone");
  Rat bound = make_rat(spec.r) * make_rat(spec.r) * discriminant(lat, spec) / 4;
  if (bound <= 0) return 0;
  Rat lambda = lambda_lower_bound(lat, h1, h2);
  return isqrt_floor(bound / lambda);
}

std::vector<Wall> enumerate_walls(const NumLattice& lat, const ChernSpec& spec, const Vec& h1,
                                  const Vec& h2) {
  Int radius = certified_box_radius(lat, spec, h1, h2);
  return enumerate_walls_in_box(lat, spec, h1, h2, radius);
}

bool generic_check(const NumLattice& lat, const ChernSpec& spec, const Vec& h) {
  return enumerate_walls(lat, spec, h, h).empty();
}

Rat cosh_distance_sq(const NumLattice& lat, const Vec& h, const Vec& hp) {
  lat.validate();
  Int h2 = pair(lat, h, h), hp2 = pair(lat, hp, hp), dot = pair(lat, h, hp);
  if (h2 <= 0 || hp2 <= 0 || dot <= 0)
    throw Error("walls", "rays must lie in one positive cone");
  Rat out(dot * dot, h2 * hp2);
  out.canonicalize();
  return out;
}

NumLattice numlattice_from_json(const nlohmann::json& j) {
  NumLattice lat;
  const auto& g = j.is_object() ? j.at("gram") : j;
  for (const auto& row : g) {
    std::vector<Int> r;
    for (const auto& v : row) r.emplace_back(v.get<long>());
    lat.gram.push_back(std::move(r));
  }
  lat.validate();
  return lat;
}

nlohmann::json walls_to_json(const std::vector<Wall>& walls) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : walls) {
    nlohmann::json xi = nlohmann::json::array();
    for (const Int& x : w.xi) xi.push_back(checked_long(x, "xi entry"));
    arr.push_back({{"xi", xi},
                   {"kind", wall_kind_name(w.kind)},
                   {"xi_sq", checked_long(w.xi_sq, "xi^2")},
                   {"dot_h1", checked_long(w.dot_h1, "xi.H1")},
                   {"dot_h2", checked_long(w.dot_h2, "xi.H2")}});
  }
  return arr;
}

}  // namespace orbi::walls
