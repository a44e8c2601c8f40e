#pragma once
// Finite Weyl group of a RootDatum, enumerated once and stored as signed
// permutations of the positive roots.  Element 0 is the identity; every
// element carries its shortlex-minimal reduced word over the simple
// reflections.  Bruhat order is computed by descent recursion with a memo
// table.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "testfn/rootdata.hpp"

namespace testfn {

class WeylGroup {
 public:
  explicit WeylGroup(RootDatum rd) : rd_(std::move(rd)) { build(); }

  const RootDatum& datum() const { return rd_; }
  int size() const { return static_cast<int>(perm_.size()); }
  int num_simples() const { return rd_.num_simples(); }
  int identity() const { return 0; }
  int length(int e) const { return length_[e]; }
  const std::vector<int>& word(int e) const { return words_[e]; }

  int simple(int s) const { return simple_elt_[s]; }
  int rmul(int e, int s) const { return rmul_[e * num_simples() + s]; }
  int lmul(int s, int e) const { return lmul_[e * num_simples() + s]; }
  int inverse(int e) const { return inv_[e]; }
  int reflection(int root_idx) const { return refl_[root_idx]; }
  int reflection_root(int e) const { return refl_root_[e]; }

  int mult(int a, int b) const {
    int r = a;
    for (int s : words_[b]) r = rmul(r, s);
    return r;
  }

  // Image of positive root root_idx under element e: (root index, sign).
  std::pair<int, int> act_on_root(int e, int root_idx) const {
    int j = perm_[e][root_idx];
    return j > 0 ? std::pair<int, int>(j - 1, +1) : std::pair<int, int>(-j - 1, -1);
  }

  IVec act_on_coweight(int e, IVec v) const {
    const auto& w = words_[e];
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      v = reflect_coweight(rd_, rd_.simples[*it], v);
    return v;
  }

  IVec act_on_weight(int e, IVec x) const {
    const auto& w = words_[e];
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      x = reflect_weight(rd_, rd_.simples[*it], x);
    return x;
  }

  bool right_descent(int e, int s) const {
    return perm_[e][rd_.simples[s]] < 0;
  }
  bool left_descent(int s, int e) const {
    return perm_[inv_[e]][rd_.simples[s]] < 0;
  }

  bool bruhat_leq(int u, int v) const {
    if (u == v) return true;
    if (length_[u] >= length_[v]) return false;
    uint8_t& m = leq_memo_[static_cast<size_t>(u) * size() + v];
    if (m != 0) return m == 2;
    int s = words_[v][0];  // left descent of v since the word is reduced
    int sv = lmul(s, v);
    int su = lmul(s, u);
    bool res = (length_[su] < length_[u]) ? bruhat_leq(su, sv) : bruhat_leq(u, sv);
    m = res ? 2 : 1;
    return res;
  }

  // Subgroup generated by the reflections of the given positive roots,
  // as a sorted list of element indices.
  std::vector<int> subgroup(const std::vector<int>& root_indices) const {
    std::vector<char> in(size(), 0);
    in[0] = 1;
    std::vector<int> queue{0}, out{0};
    while (!queue.empty()) {
      int e = queue.back();
      queue.pop_back();
      for (int k : root_indices) {
        int f = mult(e, refl_[k]);
        if (!in[f]) {
          in[f] = 1;
          queue.push_back(f);
          out.push_back(f);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  int longest() const { return longest_; }

  // Reduced-word display with 1-based letters, e.g. "2132"; identity is "e".
  std::string word_string(int e) const {
    if (e == 0) return "e";
    std::string s;
    for (int l : words_[e]) s += std::to_string(l + 1);
    return s;
  }

 private:
  using Perm = std::vector<int>;  // signed images +-(idx+1) of positive roots

  static Perm compose(const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (size_t k = 0; k < a.size(); ++k) {
      int j = b[k];
      r[k] = j > 0 ? a[j - 1] : -a[-j - 1];
    }
    return r;
  }

  Perm reflection_perm(int root_idx) const {
    const int np = rd_.num_pos_roots();
    Perm p(np);
    for (int k = 0; k < np; ++k) {
      auto [idx, sign] = rd_.locate_root(reflect_weight(rd_, root_idx, rd_.roots[k]));
      p[k] = sign * (idx + 1);
    }
    return p;
  }

  void build() {
    const int np = rd_.num_pos_roots();
    const int ns = rd_.num_simples();
    std::vector<Perm> gens(ns);
    for (int s = 0; s < ns; ++s) gens[s] = reflection_perm(rd_.simples[s]);

    Perm id(np);
    for (int k = 0; k < np; ++k) id[k] = k + 1;
    std::map<Perm, int> index;
    index[id] = 0;
    perm_.push_back(id);
    length_.push_back(0);
    words_.push_back({});
    // FIFO breadth-first walk with ascending generators yields shortlex words.
    for (size_t head = 0; head < perm_.size(); ++head) {
      for (int s = 0; s < ns; ++s) {
        Perm p = compose(perm_[head], gens[s]);
        auto [it, inserted] = index.emplace(p, static_cast<int>(perm_.size()));
        if (inserted) {
          perm_.push_back(std::move(p));
          length_.push_back(length_[head] + 1);
          words_.push_back(words_[head]);
          words_.back().push_back(s);
        }
      }
    }
    const int N = size();

    simple_elt_.resize(ns);
    rmul_.resize(static_cast<size_t>(N) * ns);
    lmul_.resize(static_cast<size_t>(N) * ns);
    for (int e = 0; e < N; ++e)
      for (int s = 0; s < ns; ++s) {
        rmul_[e * ns + s] = index.at(compose(perm_[e], gens[s]));
        lmul_[e * ns + s] = index.at(compose(gens[s], perm_[e]));
      }
    for (int s = 0; s < ns; ++s) simple_elt_[s] = rmul_[0 * ns + s];

    inv_.resize(N);
    for (int e = 0; e < N; ++e) {
      Perm p(np);
      for (int k = 0; k < np; ++k) {
        int j = perm_[e][k];
        if (j > 0)
          p[j - 1] = k + 1;
        else
          p[-j - 1] = -(k + 1);
      }
      inv_[e] = index.at(p);
    }

    refl_.resize(np);
    refl_root_.assign(N, -1);
    for (int k = 0; k < np; ++k) {
      refl_[k] = index.at(reflection_perm(k));
      refl_root_[refl_[k]] = k;
    }

    longest_ = 0;
    for (int e = 1; e < N; ++e)
      if (length_[e] > length_[longest_]) longest_ = e;

    leq_memo_.assign(static_cast<size_t>(N) * N, 0);
  }

  RootDatum rd_;
  std::vector<Perm> perm_;
  std::vector<int> length_;
  std::vector<std::vector<int>> words_;
  std::vector<int> simple_elt_;
  std::vector<int> rmul_, lmul_;
  std::vector<int> inv_;
  std::vector<int> refl_;
  std::vector<int> refl_root_;
  int longest_ = 0;
  mutable std::vector<uint8_t> leq_memo_;
};

}  // namespace testfn
