#pragma once
// Extended affine Weyl group W~ = X_*(T) x| W.  Elements are pairs
// (translation coweight, finite element).  Lengths use the standard formula
//   len(t_lam wbar) = sum_{a > 0, wbar^{-1}a > 0} |<lam, a>|
//                   + sum_{a > 0, wbar^{-1}a < 0} |<lam, a> - 1|.
//
// Admissibility of w = t_lam wbar (lam in the orbit of a dominant minuscule
// mu) reduces to finite Bruhat order: with w_lam the unique minimal-length
// x in W such that len(t_lam x) is minimal,
//   w <= t_lam   iff   w_lam^{-1} wbar <= w_lam^{-1}  in W.
// The same coset lemma identifies paths from w to t_lam with paths from
// w_lam^{-1} wbar to w_lam^{-1} in the finite Bruhat graph, edge for edge.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "testfn/weylgroup.hpp"

namespace testfn {

struct AffElt {
  IVec lam;  // translation part
  int fin;   // finite Weyl group element index

  friend bool operator==(const AffElt& a, const AffElt& b) {
    return a.fin == b.fin && a.lam == b.lam;
  }
  friend bool operator<(const AffElt& a, const AffElt& b) {
    if (a.lam != b.lam) return a.lam < b.lam;
    return a.fin < b.fin;
  }
};

class AffineWeyl {
 public:
  explicit AffineWeyl(const WeylGroup& W) : W_(W) {}

  const WeylGroup& finite() const { return W_; }
  const RootDatum& datum() const { return W_.datum(); }

  AffElt identity() const { return {IVec(datum().d, 0), W_.identity()}; }
  AffElt translation(IVec lam) const { return {std::move(lam), W_.identity()}; }
  AffElt from_finite(int f) const { return {IVec(datum().d, 0), f}; }

  AffElt mult(const AffElt& a, const AffElt& b) const {
    IVec lam = a.lam;
    IVec moved = W_.act_on_coweight(a.fin, b.lam);
    for (int i = 0; i < datum().d; ++i) lam[i] += moved[i];
    return {std::move(lam), W_.mult(a.fin, b.fin)};
  }

  AffElt inverse(const AffElt& a) const {
    int f = W_.inverse(a.fin);
    IVec lam = W_.act_on_coweight(f, a.lam);
    for (auto& x : lam) x = -x;
    return {std::move(lam), f};
  }

  long length(const AffElt& a) const {
    const RootDatum& rd = datum();
    int finv = W_.inverse(a.fin);
    Int total = 0;
    for (int k = 0; k < rd.num_pos_roots(); ++k) {
      Int p = pairing(a.lam, rd.roots[k]);
      if (W_.act_on_root(finv, k).second < 0) p -= 1;
      total += abs(p);
    }
    return total.get_si();
  }

  // t_{k a^vee} s_a for a positive root a and integer k.
  bool is_affine_reflection(const AffElt& a) const {
    int k = W_.reflection_root(a.fin);
    if (k < 0) return false;
    const IVec& cv = datum().coroots[k];
    // a.lam must be an integer multiple of the coroot
    int pivot = -1;
    for (int i = 0; i < datum().d; ++i)
      if (cv[i] != 0) {
        pivot = i;
        break;
      }
    Int num = a.lam[pivot];
    if (num % cv[pivot] != 0) return false;
    Int c = num / cv[pivot];
    for (int i = 0; i < datum().d; ++i)
      if (a.lam[i] != c * cv[i]) return false;
    return true;
  }

  // Unique x in W minimizing len(t_lam x).
  int minimal_coset_rep(const IVec& lam) const {
    auto it = coset_rep_cache_.find(lam);
    if (it != coset_rep_cache_.end()) return it->second;
    int best = -1;
    long best_len = 0;
    int ties = 0;
    for (int x = 0; x < W_.size(); ++x) {
      long l = length({lam, x});
      if (best < 0 || l < best_len) {
        best = x;
        best_len = l;
        ties = 1;
      } else if (l == best_len) {
        ++ties;
      }
    }
    if (ties != 1) throw std::logic_error("minimal coset representative not unique");
    coset_rep_cache_.emplace(lam, best);
    return best;
  }

  // Finite-order test of w <= t_{lam(w)}.
  bool leq_own_translation(const AffElt& w) const {
    int wl = minimal_coset_rep(w.lam);
    int wli = W_.inverse(wl);
    return W_.bruhat_leq(W_.mult(wli, w.fin), wli);
  }

  // Endpoints (u, v) of the finite Bruhat interval carrying the paths from
  // an admissible w up to its translation part: u = w_lam^{-1} wbar,
  // v = w_lam^{-1}.
  std::pair<int, int> finite_interval(const AffElt& w) const {
    int wli = W_.inverse(minimal_coset_rep(w.lam));
    return {W_.mult(wli, w.fin), wli};
  }

  // All w = t_lam wbar with lam in the orbit of mu and w <= t_lam, sorted by
  // (length, printed lam tuple, shortlex word of wbar).
  std::vector<AffElt> admissible_set(const IVec& mu) const {
    std::vector<AffElt> out;
    for (const IVec& lam : weyl_orbit(datum(), mu))
      for (int f = 0; f < W_.size(); ++f) {
        AffElt w{lam, f};
        if (leq_own_translation(w)) out.push_back(std::move(w));
      }
    std::sort(out.begin(), out.end(), [&](const AffElt& a, const AffElt& b) {
      long la = length(a), lb = length(b);
      if (la != lb) return la < lb;
      auto ta = coweight_to_tuple(datum(), a.lam);
      auto tb = coweight_to_tuple(datum(), b.lam);
      if (ta != tb) return ta < tb;
      const auto& wa = W_.word(a.fin);
      const auto& wb = W_.word(b.fin);
      if (wa.size() != wb.size()) return wa.size() < wb.size();
      return wa < wb;
    });
    return out;
  }

  // Bruhat comparison w <= v by upward cover chains.  Valid whenever every
  // element of the interval [w, v] belongs to `closed` (e.g. `closed` is an
  // admissible set containing v).  Covers raise length by exactly 1 and
  // differ by right multiplication with an affine reflection.
  bool leq_within(const AffElt& w, const AffElt& v,
                  const std::vector<AffElt>& closed) const {
    if (w == v) return true;
    long lv = length(v);
    std::vector<AffElt> layer{w};
    long cur = length(w);
    while (cur < lv && !layer.empty()) {
      std::vector<AffElt> next;
      for (const AffElt& x : closed) {
        if (length(x) != cur + 1) continue;
        for (const AffElt& y : layer) {
          AffElt step = mult(inverse(y), x);
          if (is_affine_reflection(step)) {
            next.push_back(x);
            break;
          }
        }
      }
      layer = std::move(next);
      ++cur;
      for (const AffElt& x : layer)
        if (x == v) return true;
    }
    return false;
  }

 private:
  const WeylGroup& W_;
  mutable std::map<IVec, int> coset_rep_cache_;
};

}  // namespace testfn
