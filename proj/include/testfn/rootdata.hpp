#pragma once
// Integer root data for the split groups GL_n and GSp_2n.
//
// Conventions:
//   GL_n:    X_* = X^* = Z^n, roots a_ij = eps_i - eps_j (i < j positive),
//            coroot of a_ij is the same vector; d = n.
//   GSp_2n:  X_* = <e_0,...,e_n>, X^* = <c_0,...,c_n>, <e_i, c_j> = delta_ij,
//            positive roots c_i - c_j, c_i + c_j - c_0 (1 <= i < j <= n) and
//            2c_i - c_0 (1 <= i <= n), with coroots e_i - e_j, e_i + e_j, e_i;
//            d = n + 1.  Coordinate 0 is the similitude coordinate.
// The canonical positive-root order is lexicographic in (i, j) for GL and a
// fixed documented order for GSp (see build_root_datum).
//
// Coweights are printed in the tuple convention of the tables this library
// reproduces: GL uses the plain d-tuple, GSp uses the 2n-tuple
// (a_1, ..., a_n, a_0 - a_n, ..., a_0 - a_1).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "testfn/ints.hpp"

namespace testfn {

enum class Family { GL, GSp };

struct RootDatum {
  Family family = Family::GL;
  int n = 0;  // GL_n or GSp_2n
  int d = 0;  // rank of the (co)character lattice
  std::vector<IVec> roots;    // positive roots, canonical order, character coords
  std::vector<IVec> coroots;  // coroots[k] is the coroot of roots[k]
  std::vector<int> simples;   // root indices of the simple roots, Dynkin order
  std::map<IVec, int> root_index;  // positive root vector -> index

  int num_pos_roots() const { return static_cast<int>(roots.size()); }
  int num_simples() const { return static_cast<int>(simples.size()); }

  // Index of +-root vector v among positive roots; sign -1 when -v is positive.
  std::pair<int, int> locate_root(const IVec& v) const {
    auto it = root_index.find(v);
    if (it != root_index.end()) return {it->second, +1};
    IVec neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    it = root_index.find(neg);
    if (it == root_index.end()) throw std::logic_error("not a root vector");
    return {it->second, -1};
  }
};

// <coweight, root>: the canonical pairing is the dot product in both families.
inline Int pairing(const IVec& coweight, const IVec& root) {
  return dot(coweight, root);
}

inline IVec reflect_coweight(const RootDatum& rd, int root_idx, const IVec& v) {
  Int c = pairing(v, rd.roots[root_idx]);
  IVec r = v;
  for (int i = 0; i < rd.d; ++i) r[i] -= c * rd.coroots[root_idx][i];
  return r;
}

inline IVec reflect_weight(const RootDatum& rd, int root_idx, const IVec& x) {
  Int c = pairing(rd.coroots[root_idx], x);
  IVec r = x;
  for (int i = 0; i < rd.d; ++i) r[i] -= c * rd.roots[root_idx][i];
  return r;
}

namespace detail {

inline IVec unit_diff(int d, int i, int j) {  // e_i - e_j
  IVec v(d, 0);
  v[i] = 1;
  v[j] = -1;
  return v;
}

inline void push_root(RootDatum& rd, IVec root, IVec coroot) {
  rd.root_index[root] = static_cast<int>(rd.roots.size());
  rd.roots.push_back(std::move(root));
  rd.coroots.push_back(std::move(coroot));
}

// GSp positive roots in a deterministic order. For n = 2 and n = 3 the order
// matches the numbering a_1..a_4 / a_1..a_9 used by the reference tables; for
// larger n the simples come first and the rest are sorted by height.
inline void build_gsp_roots(RootDatum& rd) {
  const int n = rd.n;
  const int d = rd.d;
  auto short_root = [&](int i, int j) {  // c_i - c_j, coroot e_i - e_j
    return std::pair<IVec, IVec>(unit_diff(d, i, j), unit_diff(d, i, j));
  };
  auto sum_root = [&](int i, int j) {  // c_i + c_j - c_0, coroot e_i + e_j
    IVec r(d, 0), c(d, 0);
    r[i] = 1;
    r[j] = 1;
    r[0] = -1;
    c[i] = 1;
    c[j] = 1;
    return std::pair<IVec, IVec>(r, c);
  };
  auto long_root = [&](int i) {  // 2c_i - c_0, coroot e_i
    IVec r(d, 0), c(d, 0);
    r[i] = 2;
    r[0] = -1;
    c[i] = 1;
    return std::pair<IVec, IVec>(r, c);
  };
  std::vector<std::pair<IVec, IVec>> order;
  if (n == 2) {
    order = {short_root(1, 2), long_root(2), sum_root(1, 2), long_root(1)};
  } else if (n == 3) {
    order = {short_root(1, 2), short_root(2, 3), long_root(3),
             short_root(1, 3), long_root(1),    sum_root(1, 2),
             sum_root(1, 3),   long_root(2),    sum_root(2, 3)};
  } else {
    for (int i = 1; i < n; ++i) order.push_back(short_root(i, i + 1));
    order.push_back(long_root(n));
    std::vector<std::pair<IVec, IVec>> rest;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        rest.push_back(short_root(i, j));
        rest.push_back(sum_root(i, j));
      }
    for (int i = 1; i < n; ++i) rest.push_back(long_root(i));
    std::sort(rest.begin(), rest.end(),
              [](const std::pair<IVec, IVec>& a, const std::pair<IVec, IVec>& b) {
                return a.first < b.first;
              });
    std::vector<std::pair<IVec, IVec>> dedup;
    std::set<IVec> seen;
    for (auto& pr : order) seen.insert(pr.first);
    for (auto& pr : rest)
      if (seen.insert(pr.first).second) dedup.push_back(pr);
    for (auto& pr : dedup) order.push_back(pr);
  }
  for (auto& pr : order) push_root(rd, pr.first, pr.second);
  for (int i = 1; i < n; ++i) {
    auto [idx, sign] = rd.locate_root(unit_diff(d, i, i + 1));
    (void)sign;
    rd.simples.push_back(idx);
  }
  IVec last(d, 0);
  last[n] = 2;
  last[0] = -1;
  rd.simples.push_back(rd.locate_root(last).first);
}

}  // namespace detail

inline RootDatum build_root_datum(Family family, int n) {
  RootDatum rd;
  rd.family = family;
  rd.n = n;
  if (family == Family::GL) {
    if (n < 2) throw std::invalid_argument("GL_n needs n >= 2");
    rd.d = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        detail::push_root(rd, detail::unit_diff(n, i, j), detail::unit_diff(n, i, j));
    for (int i = 0; i + 1 < n; ++i)
      rd.simples.push_back(rd.locate_root(detail::unit_diff(n, i, i + 1)).first);
  } else {
    if (n < 2) throw std::invalid_argument("GSp_2n needs n >= 2");
    rd.d = n + 1;
    detail::build_gsp_roots(rd);
  }
  return rd;
}

struct CoweightClass {
  bool dominant = false;
  bool minuscule = false;  // <lam, a> in {-1, 0, 1} for every root a
};

inline CoweightClass classify_coweight(const RootDatum& rd, const IVec& lam) {
  CoweightClass c;
  c.dominant = true;
  c.minuscule = true;
  for (int k = 0; k < rd.num_pos_roots(); ++k) {
    Int p = pairing(lam, rd.roots[k]);
    if (p < -1 || p > 1) c.minuscule = false;
  }
  for (int s : rd.simples)
    if (pairing(lam, rd.roots[s]) < 0) c.dominant = false;
  return c;
}

// Orbit of lam under the Weyl group, sorted for determinism.
inline std::vector<IVec> weyl_orbit(const RootDatum& rd, const IVec& lam) {
  std::set<IVec> seen{lam};
  std::vector<IVec> queue{lam};
  while (!queue.empty()) {
    IVec v = queue.back();
    queue.pop_back();
    for (int s : rd.simples) {
      IVec w = reflect_coweight(rd, s, v);
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  return std::vector<IVec>(seen.begin(), seen.end());
}

// Printed tuple for a coweight: GL identity, GSp epsilon-coordinates.
inline std::vector<Int> coweight_to_tuple(const RootDatum& rd, const IVec& lam) {
  if (rd.family == Family::GL) return lam;
  const int n = rd.n;
  std::vector<Int> t(2 * n);
  for (int i = 1; i <= n; ++i) t[i - 1] = lam[i];
  for (int i = 1; i <= n; ++i) t[2 * n - i] = lam[0] - lam[i];
  return t;
}

inline IVec coweight_from_tuple(const RootDatum& rd, const std::vector<Int>& t) {
  if (rd.family == Family::GL) {
    if (static_cast<int>(t.size()) != rd.d)
      throw std::invalid_argument("coweight tuple has wrong length");
    return t;
  }
  const int n = rd.n;
  if (static_cast<int>(t.size()) != 2 * n)
    throw std::invalid_argument("GSp coweight tuple must have 2n entries");
  IVec lam(rd.d);
  Int c = t[0] + t[2 * n - 1];
  for (int i = 1; i <= n; ++i) {
    if (t[i - 1] + t[2 * n - i] != c)
      throw std::invalid_argument("GSp coweight tuple is not similitude-balanced");
    lam[i] = t[i - 1];
  }
  lam[0] = c;
  return lam;
}

}  // namespace testfn
