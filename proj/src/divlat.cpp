#include <orbisurf/divlat.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace orbi::divlat {

long DivLattice::index_of(const std::string& label) const {
  for (long i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

long DivLattice::require(const std::string& label) const {
  long i = index_of(label);
  if (i < 0) throw Error("divlat", "unknown component label: " + label);
  return i;
}

void DivLattice::add_component(const std::string& label, const Int& self, const Int& k,
                               long g) {
  if (index_of(label) >= 0) throw Error("divlat", "duplicate component label: " + label);
  const long n = size();
  labels.push_back(label);
  for (long i = 0; i < n; ++i) gram[i].push_back(0);
  gram.emplace_back(n + 1, Int(0));
  gram[n][n] = self;
  kdeg.push_back(k);
  genus.push_back(g);
  mult.push_back(0);
}

void DivLattice::set_pairing(const std::string& a, const std::string& b, const Int& v) {
  long i = require(a), j = require(b);
  gram[i][j] = v;
  gram[j][i] = v;
}

Int DivLattice::pairing(const std::string& a, const std::string& b) const {
  return gram[require(a)][require(b)];
}

void DivLattice::validate() const {
  const long n = size();
  if (static_cast<long>(gram.size()) != n || static_cast<long>(kdeg.size()) != n)
    throw Error("divlat", "lattice field sizes disagree");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<long>(seen.size()) != n) throw Error("divlat", "duplicate labels");
  for (long i = 0; i < n; ++i) {
    if (static_cast<long>(gram[i].size()) != n) throw Error("divlat", "gram is not square");
    for (long j = 0; j < n; ++j)
      if (gram[i][j] != gram[j][i]) throw Error("divlat", "gram is not symmetric");
  }
}

SignatureReport signature(const Gram& g) {
  const long n = static_cast<long>(g.size());
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (long i = 0; i < n; ++i) {
    if (static_cast<long>(g[i].size()) != n) throw Error("divlat", "gram is not square");
    for (long j = 0; j < n; ++j) {
      if (g[i][j] != g[j][i]) throw Error("divlat", "gram is not symmetric");
      a[i][j] = Rat(g[i][j]);
    }
  }
  // Symmetric congruence diagonalization, exact over Q.
  SignatureReport rep;
  for (long k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      long pivot = -1;
      for (long j = k + 1; j < n; ++j)
        if (a[j][j] != 0) { pivot = j; break; }
      if (pivot >= 0) {
        std::swap(a[k], a[pivot]);
        for (long i = 0; i < n; ++i) std::swap(a[i][k], a[i][pivot]);
      } else {
        long off = -1;
        for (long j = k + 1; j < n; ++j)
          if (a[k][j] != 0) { off = j; break; }
        if (off < 0) {
          // Row k is zero on the remaining block; it contributes a zero.
          bool all_zero = true;
          for (long j = k; j < n; ++j)
            if (a[k][j] != 0) all_zero = false;
          if (!all_zero) throw Error("divlat", "signature reduction failed");
          ++rep.n_zero;
          continue;
        }
        // a[k][k] = a[off][off] = 0, a[k][off] != 0: add row/col off to k,
        // making a[k][k] = 2 a[k][off] != 0.
        for (long j = 0; j < n; ++j) a[k][j] += a[off][j];
        for (long i = 0; i < n; ++i) a[i][k] += a[i][off];
      }
    }
    if (a[k][k] == 0) { ++rep.n_zero; continue; }
    for (long i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat f = a[i][k] / a[k][k];
      for (long j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
      for (long j = 0; j < n; ++j) a[j][i] -= f * a[j][k];
    }
    if (a[k][k] > 0)
      ++rep.n_plus;
    else
      ++rep.n_minus;
  }
  return rep;
}

Rat adjunction_genus(const Int& self, const Int& kc) {
  Rat g(self + kc, 2);
  g.canonicalize();
  return g + 1;
}

long IncidencePoint::total_branches() const {
  long total = 0;
  for (const auto& [label, b] : branches) total += b;
  return total;
}

void PointModel::add_simple_crossing(const std::string& a, const std::string& b) {
  IncidencePoint p;
  p.branches[a] = 1;
  p.branches[b] = 1;
  p.curve_mult[a] = 1;
  p.curve_mult[b] = 1;
  p.pair_local[std::minmax(a, b)] = 1;
  points.push_back(std::move(p));
}

void validate_incidence(const SurfaceModel& m) {
  m.lat.validate();
  std::map<std::pair<std::string, std::string>, Int> totals;
  for (const auto& p : m.pts.points) {
    for (const auto& [label, b] : p.branches) {
      if (m.lat.index_of(label) < 0)
        throw Error("divlat", "point references unknown component: " + label);
      if (b < 1) throw Error("divlat", "branch count must be positive");
      auto it = p.curve_mult.find(label);
      if (it == p.curve_mult.end() || it->second < b)
        throw Error("divlat", "local multiplicity below branch count at " + label);
    }
    for (const auto& [key, v] : p.pair_local) {
      if (!p.involves(key.first) || !p.involves(key.second))
        throw Error("divlat", "pair entry for curves not at the point");
      totals[key] += v;
    }
  }
  for (long i = 0; i < m.lat.size(); ++i)
    for (long j = i + 1; j < m.lat.size(); ++j) {
      auto key = std::minmax(m.lat.labels[i], m.lat.labels[j]);
      Int have = totals.count(key) ? totals[key] : Int(0);
      if (have != m.lat.gram[i][j])
        throw Error("divlat", "point model disagrees with gram at " + key.first + "." +
                                  key.second);
    }
}

DivLattice blow_up(const DivLattice& lat, const std::string& new_label) {
  DivLattice out = lat;
  out.add_component(new_label, -1, -1, 0);
  return out;
}

void blow_up_at(SurfaceModel& m, std::size_t point_index, const std::string& new_label) {
  if (point_index >= m.pts.points.size()) throw Error("divlat", "point index out of range");
  IncidencePoint p = m.pts.points[point_index];
  for (const auto& [label, b] : p.branches) {
    if (b != 1 || p.curve_mult.at(label) != 1)
      throw Error("divlat", "blow_up_at supports transverse points only");
  }
  for (const auto& [key, v] : p.pair_local)
    if (v != 1) throw Error("divlat", "blow_up_at supports transverse points only");

  m.pts.points.erase(m.pts.points.begin() + static_cast<long>(point_index));
  DivLattice& lat = m.lat;
  std::vector<std::string> at_point;
  for (const auto& [label, b] : p.branches) at_point.push_back(label);

  for (const std::string& c : at_point) {
    long ic = lat.require(c);
    lat.gram[ic][ic] -= 1;  // multiplicity 1 at the point
    lat.kdeg[ic] += 1;
  }
  for (std::size_t x = 0; x < at_point.size(); ++x)
    for (std::size_t y = x + 1; y < at_point.size(); ++y) {
      long ix = lat.require(at_point[x]), iy = lat.require(at_point[y]);
      lat.gram[ix][iy] -= 1;
      lat.gram[iy][ix] -= 1;
    }
  lat.add_component(new_label, -1, -1, 0);
  for (const std::string& c : at_point) {
    lat.set_pairing(new_label, c, 1);
    m.pts.add_simple_crossing(new_label, c);
  }
}

void contract(SurfaceModel& m, const std::string& e_label) {
  DivLattice& lat = m.lat;
  const long e = lat.require(e_label);
  if (lat.gram[e][e] != -1 || lat.kdeg[e] != -1 || lat.genus[e] != 0)
    throw Error("divlat", "contraction target is not a (-1)-curve: " + e_label);

  const long n = lat.size();
  std::vector<Int> meet(n);
  for (long i = 0; i < n; ++i) meet[i] = lat.gram[i][e];

  // Merge all points on E into one image point.
  IncidencePoint image;
  std::vector<IncidencePoint> kept;
  for (const auto& p : m.pts.points) {
    if (!p.involves(e_label)) {
      kept.push_back(p);
      continue;
    }
    for (const auto& [label, b] : p.branches) {
      if (label == e_label) continue;
      image.branches[label] += b;
    }
    for (const auto& [key, v] : p.pair_local) {
      if (key.first == e_label || key.second == e_label) continue;
      image.pair_local[key] += v;
    }
  }
  for (long i = 0; i < n; ++i) {
    if (i == e || meet[i] == 0) continue;
    const std::string& ci = lat.labels[i];
    if (image.branches.find(ci) == image.branches.end()) image.branches[ci] = 0;
    if (image.branches[ci] == 0)
      throw Error("divlat", "gram meets E but point model has no crossing: " + ci);
    image.curve_mult[ci] = meet[i];
    for (long j = i + 1; j < n; ++j) {
      if (j == e || meet[j] == 0) continue;
      image.pair_local[std::minmax(ci, lat.labels[j])] += meet[i] * meet[j];
    }
  }
  if (!image.branches.empty()) kept.push_back(std::move(image));
  m.pts.points = std::move(kept);

  // Gram and canonical-class update.
  for (long i = 0; i < n; ++i) {
    if (i == e) continue;
    for (long j = 0; j < n; ++j) {
      if (j == e) continue;
      lat.gram[i][j] += meet[i] * meet[j];
    }
    lat.kdeg[i] -= meet[i];
  }
  lat.labels.erase(lat.labels.begin() + e);
  lat.kdeg.erase(lat.kdeg.begin() + e);
  lat.genus.erase(lat.genus.begin() + e);
  lat.mult.erase(lat.mult.begin() + e);
  lat.gram.erase(lat.gram.begin() + e);
  for (auto& row : lat.gram) row.erase(row.begin() + e);
}

std::vector<Int> zariski_fiber_solver(const Gram& g) {
  const long n = static_cast<long>(g.size());
  if (n == 0) throw Error("divlat", "empty gram");
  SignatureReport sig = signature(g);
  if (sig.n_plus != 0 || sig.n_zero != 1)
    throw Error("divlat",
                "gram is not negative semidefinite of corank 1 (signature " +
                    std::to_string(sig.n_plus) + "," + std::to_string(sig.n_minus) + "," +
                    std::to_string(sig.n_zero) + ")");

  // Kernel via exact Gaussian elimination.
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) a[i][j] = Rat(g[i][j]);
  std::vector<long> pivot_col(n, -1);
  long rank = 0;
  for (long col = 0; col < n && rank < n; ++col) {
    long piv = -1;
    for (long row = rank; row < n; ++row)
      if (a[row][col] != 0) { piv = row; break; }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    Rat d = a[rank][col];
    for (long j = 0; j < n; ++j) a[rank][j] /= d;
    for (long row = 0; row < n; ++row) {
      if (row == rank || a[row][col] == 0) continue;
      Rat f = a[row][col];
      for (long j = 0; j < n; ++j) a[row][j] -= f * a[rank][j];
    }
    pivot_col[rank] = col;
    ++rank;
  }
  if (rank != n - 1) throw Error("divlat", "kernel is not one-dimensional");
  std::vector<bool> is_pivot(n, false);
  for (long r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  long free_col = -1;
  for (long c = 0; c < n; ++c)
    if (!is_pivot[c]) { free_col = c; break; }
  std::vector<Rat> v(n, Rat(0));
  v[free_col] = 1;
  for (long r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][free_col];

  // Scale to a primitive integer vector.
  Int lcm_den = 1;
  for (const Rat& q : v) lcm_den = lcm(lcm_den, Int(q.get_den()));
  std::vector<Int> w(n);
  Int gcd_all = 0;
  for (long i = 0; i < n; ++i) {
    Rat scaled = v[i] * Rat(lcm_den);
    w[i] = scaled.get_num();
    gcd_all = gcd(gcd_all, w[i]);
  }
  for (Int& x : w) x /= gcd_all;
  bool all_pos = std::all_of(w.begin(), w.end(), [](const Int& x) { return x > 0; });
  bool all_neg = std::all_of(w.begin(), w.end(), [](const Int& x) { return x < 0; });
  if (all_neg)
    for (Int& x : w) x = -x;
  else if (!all_pos)
    throw Error("divlat", "kernel vector has mixed signs or zeros: not a fiber class");
  return w;
}

nlohmann::json lattice_to_json(const DivLattice& lat) {
  nlohmann::json gram = nlohmann::json::array();
  for (const auto& row : lat.gram) {
    nlohmann::json r = nlohmann::json::array();
    for (const Int& v : row) r.push_back(checked_long(v, "gram entry"));
    gram.push_back(std::move(r));
  }
  nlohmann::json kdeg = nlohmann::json::array();
  for (const Int& v : lat.kdeg) kdeg.push_back(checked_long(v, "kdeg entry"));
  return nlohmann::json{{"labels", lat.labels}, {"gram", gram}, {"kdeg", kdeg}};
}

DivLattice lattice_from_json(const nlohmann::json& j) {
  DivLattice lat;
  lat.labels = j.at("labels").get<std::vector<std::string>>();
  for (const auto& row : j.at("gram")) {
    std::vector<Int> r;
    for (const auto& v : row) r.emplace_back(v.get<long>());
    lat.gram.push_back(std::move(r));
  }
  if (j.contains("kdeg"))
    for (const auto& v : j.at("kdeg")) lat.kdeg.emplace_back(v.get<long>());
  else
    lat.kdeg.assign(lat.labels.size(), Int(0));
  lat.genus.assign(lat.labels.size(), 0);
  lat.mult.assign(lat.labels.size(), Int(0));
  lat.validate();
  return lat;
}

}  // namespace orbi::divlat
