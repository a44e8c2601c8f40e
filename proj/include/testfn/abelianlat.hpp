#pragma once
// Integer lattices L inside Z^d given by generating rows, Smith normal form
// with transform tracking, and the structure of the quotient Z^d / L as a
// finitely generated abelian group.
//
// For the diagonalization U * M * V = D (U, V unimodular):
//   - membership v in L:   solve y D = v V over Z (divisibility checks);
//   - quotient structure:  Z^d / L = Z^(d - r) + sum_i Z / d_i Z;
//   - the m-torsion of the diagonalizable dual group has order
//       m^(free rank) * prod_i gcd(d_i, m).

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "testfn/ints.hpp"

namespace testfn {

using Mat = std::vector<IVec>;

inline Mat identity_matrix(int n) {
  Mat I(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

struct SmithDecomp {
  Mat U, V, D;            // U * M * V = D
  std::vector<Int> diag;  // nonzero diagonal entries d_1 | d_2 | ...
  int rows = 0, cols = 0;
  int rank() const { return static_cast<int>(diag.size()); }
};

inline SmithDecomp smith_normal_form(Mat A) {
  const int r = static_cast<int>(A.size());
  const int c = r == 0 ? 0 : static_cast<int>(A[0].size());
  SmithDecomp out;
  out.rows = r;
  out.cols = c;
  out.U = identity_matrix(r);
  out.V = identity_matrix(c);

  auto row_axpy = [&](int dst, int src, const Int& k) {  // row dst += k * row src
    for (int j = 0; j < c; ++j) A[dst][j] += k * A[src][j];
    for (int j = 0; j < r; ++j) out.U[dst][j] += k * out.U[src][j];
  };
  auto col_axpy = [&](int dst, int src, const Int& k) {
    for (int i = 0; i < r; ++i) A[i][dst] += k * A[i][src];
    for (int i = 0; i < c; ++i) out.V[i][dst] += k * out.V[i][src];
  };
  auto row_swap = [&](int a, int b) {
    std::swap(A[a], A[b]);
    std::swap(out.U[a], out.U[b]);
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < r; ++i) std::swap(A[i][a], A[i][b]);
    for (int i = 0; i < c; ++i) std::swap(out.V[i][a], out.V[i][b]);
  };
  auto row_negate = [&](int a) {
    for (int j = 0; j < c; ++j) A[a][j] = -A[a][j];
    for (int j = 0; j < r; ++j) out.U[a][j] = -out.U[a][j];
  };

  int t = 0;
  while (t < r && t < c) {
    // locate a nonzero pivot of smallest magnitude
    int pi = -1, pj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (A[i][j] != 0 &&
            (pi < 0 || abs(A[i][j]) < abs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    if (A[t][t] < 0) row_negate(t);

    bool dirty = false;
    for (int i = t + 1; i < r; ++i)
      if (A[i][t] != 0) {
        Int k;
        mpz_fdiv_q(k.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
        row_axpy(i, t, -k);
        if (A[i][t] != 0) dirty = true;  // remainder smaller than pivot
      }
    for (int j = t + 1; j < c; ++j)
      if (A[t][j] != 0) {
        Int k;
        mpz_fdiv_q(k.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
        col_axpy(j, t, -k);
        if (A[t][j] != 0) dirty = true;
      }
    if (dirty) continue;  // re-pick a smaller pivot

    // divisibility: fold in any entry the pivot does not divide
    int bi = -1, bj = -1;
    for (int i = t + 1; i < r && bi < 0; ++i)
      for (int j = t + 1; j < c; ++j)
        if (A[i][j] % A[t][t] != 0) {
          bi = i;
          bj = j;
          break;
        }
    if (bi >= 0) {
      row_axpy(t, bi, 1);
      continue;
    }
    ++t;
  }
  out.D = A;
  for (int i = 0; i < std::min(r, c); ++i)
    if (A[i][i] != 0) out.diag.push_back(A[i][i]);
  return out;
}

struct AbelianStructure {
  int free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1, in divisibility order

  bool trivial() const { return free_rank == 0 && torsion.empty(); }

  // e.g. "{1}", "Z", "Z^2", "Z/2Z", "Z x Z/6Z"
  std::string to_string() const {
    if (trivial()) return "{1}";
    std::string s;
    if (free_rank == 1) s = "Z";
    if (free_rank >= 2) s = "Z^" + std::to_string(free_rank);
    for (const Int& c : torsion) {
      if (!s.empty()) s += " x ";
      s += "Z/" + c.get_str() + "Z";
    }
    return s;
  }

  friend bool operator==(const AbelianStructure& a, const AbelianStructure& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

// Size of the m-torsion subgroup of the dual diagonalizable group, i.e. of
// Hom(Z^d / L, mu_m).
inline Int dual_torsion_count(const AbelianStructure& s, const Int& m) {
  Int n = ipow(m, s.free_rank);
  for (const Int& c : s.torsion) n *= igcd(c, m);
  return n;
}

class Lattice {
 public:
  Lattice(int d, Mat gens) : d_(d), gens_(std::move(gens)) {
    for (const IVec& g : gens_)
      if (static_cast<int>(g.size()) != d_)
        throw std::invalid_argument("generator has wrong dimension");
    snf_ = smith_normal_form(gens_.empty() ? Mat{IVec(d_, 0)} : gens_);
  }

  int dim() const { return d_; }
  const Mat& generators() const { return gens_; }
  const SmithDecomp& snf() const { return snf_; }
  int rank() const { return snf_.rank(); }

  AbelianStructure quotient() const {
    AbelianStructure s;
    s.free_rank = d_ - rank();
    for (const Int& x : snf_.diag)
      if (x > 1) s.torsion.push_back(x);
    return s;
  }

  bool contains(const IVec& v) const {
    if (static_cast<int>(v.size()) != d_)
      throw std::invalid_argument("vector has wrong dimension");
    // y D = v V must be solvable over Z
    for (int j = 0; j < d_; ++j) {
      Int vj = 0;
      for (int i = 0; i < d_; ++i) vj += v[i] * snf_.V[i][j];
      if (j < rank()) {
        if (vj % snf_.diag[j] != 0) return false;
      } else {
        if (vj != 0) return false;
      }
    }
    return true;
  }

  // L + m Z^d
  Lattice sum_with_scaled_identity(const Int& m) const {
    Mat g = gens_;
    for (int i = 0; i < d_; ++i) {
      IVec row(d_, 0);
      row[i] = m;
      g.push_back(std::move(row));
    }
    return Lattice(d_, std::move(g));
  }

  bool contains_mod(const IVec& v, const Int& m) const {
    return sum_with_scaled_identity(m).contains(v);
  }

  bool includes(const Lattice& other) const {
    for (const IVec& g : other.gens_)
      if (!contains(g)) return false;
    return true;
  }

  bool equals(const Lattice& other) const {
    return includes(other) && other.includes(*this);
  }

 private:
  int d_;
  Mat gens_;
  SmithDecomp snf_;
};

}  // namespace testfn
