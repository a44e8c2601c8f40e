#pragma once
// R-polynomials of finite Bruhat intervals, two independent ways:
//
//   1. the defining recursion in the Hecke algebra (variable q):
//        R_{u,v} = 0 unless u <= v;  R_{u,u} = 1;  for vs < v:
//        R_{u,v} = R_{us,vs}                 when us < u,
//        R_{u,v} = q R_{us,vs} + (q-1) R_{u,vs}   otherwise;
//
//   2. the increasing-path count (variable Q = q^{-1/2} - q^{1/2}):
//        Rtilde_{u,v}(Q) = sum over order-increasing paths of Q^{len(path)}.
//
// The two are related by the change of basis
//   R_{u,v}(q) = sum_k a_k q^{(L-k)/2} (q-1)^k,   L = l(v) - l(u),
//   Rtilde_{u,v}(Q) = sum_k a_k Q^k,
// where k runs over the parity class of L.  Cross-validation of 1 and 2 is
// the correctness anchor for the path machinery.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "testfn/bruhatpaths.hpp"

namespace testfn {

using ZPoly = std::vector<Int>;  // coefficient i belongs to degree i

inline void poly_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline ZPoly poly_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

inline ZPoly poly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

inline ZPoly poly_scale(ZPoly p, const Int& c) {
  for (auto& x : p) x *= c;
  poly_trim(p);
  return p;
}

inline ZPoly poly_pow(const ZPoly& p, int e) {
  ZPoly r{Int(1)};
  for (int i = 0; i < e; ++i) r = poly_mul(r, p);
  return r;
}

inline Int poly_eval(const ZPoly& p, const Int& x) {
  Int acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// Remainder of p modulo a monic divisor.
inline ZPoly poly_mod(ZPoly p, const ZPoly& monic) {
  if (monic.empty() || monic.back() != 1)
    throw std::invalid_argument("poly_mod requires a monic divisor");
  poly_trim(p);
  size_t m = monic.size();
  while (p.size() >= m) {
    Int lead = p.back();
    size_t shift = p.size() - m;
    if (lead != 0)
      for (size_t i = 0; i < m; ++i) p[shift + i] -= lead * monic[i];
    p.pop_back();
    poly_trim(p);
  }
  return p;
}

// Exact quotient by a monic divisor; throws when the division leaves a remainder.
inline ZPoly poly_divexact(ZPoly p, const ZPoly& monic) {
  if (monic.empty() || monic.back() != 1)
    throw std::invalid_argument("poly_divexact requires a monic divisor");
  poly_trim(p);
  if (p.empty()) return {};
  if (p.size() < monic.size()) throw std::logic_error("poly_divexact: inexact division");
  ZPoly q(p.size() - monic.size() + 1, Int(0));
  for (size_t k = q.size(); k-- > 0;) {
    Int lead = p[k + monic.size() - 1];
    q[k] = lead;
    if (lead != 0)
      for (size_t i = 0; i < monic.size(); ++i) p[k + i] -= lead * monic[i];
  }
  for (const Int& c : p)
    if (c != 0) throw std::logic_error("poly_divexact: inexact division");
  return q;
}

// n-th cyclotomic polynomial: (x^n - 1) divided by all lower-level factors.
inline ZPoly cyclotomic_polynomial(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial requires n >= 1");
  ZPoly p(static_cast<size_t>(n) + 1, Int(0));
  p[0] = -1;
  p[static_cast<size_t>(n)] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divexact(p, cyclotomic_polynomial(d));
  return p;
}

class RPolyTable {
 public:
  explicit RPolyTable(const WeylGroup& W) : W_(W) {}

  const ZPoly& r_poly(int u, int v) {
    auto key = std::make_pair(u, v);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ZPoly val;
    if (u == v) {
      val = {Int(1)};
    } else if (!W_.bruhat_leq(u, v)) {
      val = {};
    } else {
      int s = W_.word(v).back();  // right descent of v
      int vs = W_.rmul(v, s);
      int us = W_.rmul(u, s);
      if (W_.length(us) < W_.length(u)) {
        val = r_poly(us, vs);
      } else {
        static const ZPoly q{Int(0), Int(1)};
        static const ZPoly qm1{Int(-1), Int(1)};
        val = poly_add(poly_mul(q, r_poly(us, vs)), poly_mul(qm1, r_poly(u, vs)));
      }
    }
    return memo_.emplace(key, std::move(val)).first->second;
  }

 private:
  const WeylGroup& W_;
  std::map<std::pair<int, int>, ZPoly> memo_;
};

// Change of basis from R(q) to Rtilde(Q); L is the length of the interval.
// Peels off a_k for k = L, L-2, ... by matching the top remaining degree
// (L+k)/2; the residual must vanish exactly.
inline ZPoly rtilde_from_r(ZPoly R, int L) {
  poly_trim(R);
  ZPoly out(L + 1, Int(0));
  static const ZPoly qm1{Int(-1), Int(1)};
  for (int k = L; k >= 0; k -= 2) {
    int deg = (L + k) / 2;
    Int a = static_cast<int>(R.size()) > deg ? R[deg] : Int(0);
    if (a == 0) continue;
    out[k] = a;
    ZPoly term = poly_pow(qm1, k);
    term.insert(term.begin(), (L - k) / 2, Int(0));  // multiply by q^{(L-k)/2}
    R = poly_add(R, poly_scale(term, -a));
  }
  if (!R.empty()) throw std::logic_error("R-polynomial has no Q-expansion");
  poly_trim(out);
  return out;
}

inline ZPoly rtilde_via_recursion(RPolyTable& table, const WeylGroup& W, int u, int v) {
  if (!W.bruhat_leq(u, v)) return {};
  return rtilde_from_r(table.r_poly(u, v), W.length(v) - W.length(u));
}

inline ZPoly rtilde_via_paths(const WeylGroup& W, int u, int v,
                              const std::vector<int>& order) {
  ZPoly out;
  for (const auto& p : increasing_paths(W, u, v, order)) {
    if (out.size() <= p.size()) out.resize(p.size() + 1, Int(0));
    out[p.size()] += 1;
  }
  poly_trim(out);
  return out;
}

}  // namespace testfn
