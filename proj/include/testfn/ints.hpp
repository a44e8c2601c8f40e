#pragma once
// Arbitrary-precision integers and rationals used throughout the library.
// All lattice, polynomial and value arithmetic is exact; machine ints appear
// only as indices.

#include <gmpxx.h>

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace testfn {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;

inline Int ipow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// base^e for possibly negative e; base must be nonzero when e < 0.
inline Rat rpow(const Rat& base, long e) {
  if (e >= 0) {
    Rat r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()),
               static_cast<unsigned long>(e));
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()),
               static_cast<unsigned long>(e));
    r.canonicalize();
    return r;
  }
  assert(base != 0);
  Rat inv = 1 / base;
  return rpow(inv, -e);
}

inline Int igcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Euclidean remainder in [0, m) for m > 0.
inline Int imod(const Int& a, const Int& m) {
  assert(m > 0);
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int dot(const IVec& a, const IVec& b) {
  assert(a.size() == b.size());
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::string ivec_to_string(const IVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  s += ")";
  return s;
}

}  // namespace testfn
