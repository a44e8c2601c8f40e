#pragma once
// Reflection orderings on the positive roots and enumeration of the
// strictly increasing paths in the finite Bruhat graph.
//
// An ordering is stored as a permutation of root indices: order[r] is the
// root in position r.  A reduced word s_{i_1} ... s_{i_N} of the longest
// element induces the ordering
//   beta_r = s_{i_1} ... s_{i_{r-1}} (alpha_{i_r}),
// and every reflection ordering arises this way.  A path from u to v is a
// sequence of reflections t_1, ..., t_k with
//   u < u t_1 < u t_1 t_2 < ... < v   (Bruhat order, lengths strictly rise)
// and it is kept when the edge roots are strictly increasing in the
// ordering.  Paths are produced in lexicographic order of their edge ranks.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "testfn/weylgroup.hpp"

namespace testfn {

inline std::vector<int> ordering_from_word(const WeylGroup& W,
                                           const std::vector<int>& word) {
  const RootDatum& rd = W.datum();
  const int np = rd.num_pos_roots();
  if (static_cast<int>(word.size()) != np)
    throw std::invalid_argument("ordering word must have one letter per positive root");
  std::vector<int> order(np);
  std::vector<char> seen(np, 0);
  int u = W.identity();
  for (int r = 0; r < np; ++r) {
    auto [idx, sign] = W.act_on_root(u, rd.simples[word[r]]);
    if (sign < 0 || seen[idx])
      throw std::invalid_argument("ordering word is not reduced");
    order[r] = idx;
    seen[idx] = 1;
    u = W.rmul(u, word[r]);
  }
  if (u != W.longest())
    throw std::invalid_argument("ordering word is not a longest-element word");
  return order;
}

inline std::vector<int> word_from_letters(const std::string& letters) {
  std::vector<int> w;
  for (char c : letters) {
    if (c < '1' || c > '9') throw std::invalid_argument("bad ordering letter");
    w.push_back(c - '1');
  }
  return w;
}

// Named ordering presets.  "paper" is the fixed choice used by the reference
// tables; "lex" is the shortlex-minimal longest-element word; "rev" reverses
// the "paper" word (also reduced, since w0 is an involution).
inline std::vector<int> preset_ordering_word(const WeylGroup& W,
                                             const std::string& name) {
  const RootDatum& rd = W.datum();
  if (name == "lex") return W.word(W.longest());
  std::string letters;
  if (rd.family == Family::GL) {
    for (int len = rd.n - 1; len >= 1; --len)
      for (int i = 1; i <= len; ++i) letters += static_cast<char>('0' + i);
  } else if (rd.n == 2) {
    letters = "2121";
  } else if (rd.n == 3) {
    letters = "323123121";
  } else {
    throw std::invalid_argument("no ordering preset for this group");
  }
  std::vector<int> w = word_from_letters(letters);
  if (name == "paper") return w;
  if (name == "rev") {
    std::reverse(w.begin(), w.end());
    return w;
  }
  throw std::invalid_argument("unknown ordering preset: " + name);
}

// Betweenness test: a total order on the positive roots is a reflection
// ordering iff whenever gamma = a*alpha + b*beta with a, b > 0 rational,
// gamma sits strictly between alpha and beta in the order.
inline bool is_reflection_ordering(const RootDatum& rd,
                                   const std::vector<int>& order) {
  const int np = rd.num_pos_roots();
  std::vector<int> rank(np, -1);
  for (int r = 0; r < np; ++r) rank[order[r]] = r;
  for (int i = 0; i < np; ++i)
    if (rank[i] < 0) throw std::logic_error("order not a permutation");

  const int d = rd.d;
  auto solve2 = [&](const IVec& A, const IVec& B, const IVec& C,
                    Rat& a, Rat& b) -> bool {
    // solve a*A + b*B = C if A, B independent
    int p = -1, s = -1;
    for (int r0 = 0; r0 < d && p < 0; ++r0)
      for (int r1 = r0 + 1; r1 < d; ++r1) {
        if (A[r0] * B[r1] - A[r1] * B[r0] != 0) {
          p = r0;
          s = r1;
          break;
        }
      }
    if (p < 0) return false;  // A, B dependent
    Int det = A[p] * B[s] - A[s] * B[p];
    a = Rat(C[p] * B[s] - C[s] * B[p]) / Rat(det);
    b = Rat(A[p] * C[s] - A[s] * C[p]) / Rat(det);
    for (int r = 0; r < d; ++r)
      if (Rat(A[r]) * a + Rat(B[r]) * b != Rat(C[r])) return false;
    return true;
  };

  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) {
      if (i == j || rank[i] >= rank[j]) continue;
      for (int k = 0; k < np; ++k) {
        if (k == i || k == j) continue;
        Rat a, b;
        if (!solve2(rd.roots[i], rd.roots[j], rd.roots[k], a, b)) continue;
        if (a > 0 && b > 0) {
          if (!(rank[i] < rank[k] && rank[k] < rank[j])) return false;
        }
      }
    }
  return true;
}

namespace detail {
inline void extend_paths(const WeylGroup& W, int x, int v,
                         const std::vector<int>& order, int next_rank,
                         bool prune, std::vector<int>& edges,
                         std::vector<std::vector<int>>& out) {
  if (x == v) {
    out.push_back(edges);
    // longer paths through v itself are impossible: later vertices would
    // exceed v in length, so stop here
    return;
  }
  const int np = static_cast<int>(order.size());
  for (int r = next_rank; r < np; ++r) {
    int t = order[r];
    int y = W.mult(x, W.reflection(t));
    if (W.length(y) <= W.length(x)) continue;
    if (prune && !W.bruhat_leq(y, v)) continue;
    edges.push_back(t);
    extend_paths(W, y, v, order, r + 1, prune, edges, out);
    edges.pop_back();
  }
}
}  // namespace detail

// All order-increasing Bruhat paths from u to v; each path is its sequence
// of edge roots.  With prune=false the search walks blind (test use only).
inline std::vector<std::vector<int>> increasing_paths(const WeylGroup& W, int u, int v,
                                                      const std::vector<int>& order,
                                                      bool prune = true) {
  std::vector<std::vector<int>> out;
  if (!W.bruhat_leq(u, v)) return out;
  std::vector<int> edges;
  detail::extend_paths(W, u, v, order, 0, prune, edges, out);
  return out;
}

// All reduced words of an element (DFS over right descents, lexicographic).
inline std::vector<std::vector<int>> all_reduced_words(const WeylGroup& W, int e) {
  std::vector<std::vector<int>> out;
  std::vector<int> word(W.length(e));
  struct Rec {
    const WeylGroup& W;
    std::vector<std::vector<int>>& out;
    std::vector<int>& word;
    void go(int x, int pos) {
      if (x == W.identity()) {
        out.push_back(word);
        return;
      }
      for (int s = 0; s < W.num_simples(); ++s)
        if (W.right_descent(x, s)) {
          word[pos] = s;
          go(W.rmul(x, s), pos - 1);
        }
    }
  } rec{W, out, word};
  rec.go(e, static_cast<int>(word.size()) - 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testfn
