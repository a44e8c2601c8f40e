#pragma once
// Coefficient engine for the pro-p-Iwahori test function.
//
// For an extended affine element w = t_lam wbar with lam in the orbit of a
// dominant minuscule coweight mu, every order-increasing path Delta from
// w_lam^{-1} wbar to w_lam^{-1} contributes one term
//
//     gcd-torsion * (q-1)^A * q^{rB} * (1-q^r)^C,
//
// gated by a congruence condition on the exponent vector n = r*s mod (q-1):
// the term fires exactly when n lies in the image mod (q-1) of the lattice
// L = <lam> + <coroots of the path's root subsystem>.  The coefficient is
// (-1)^d times the sum of firing terms.  Statistics per path:
//
//     A = d - rank(J) - 1,  B = [l(t_lam) - l(w) - l(Delta)]/2,  C = l(Delta) - d,
//
// with J the additive closure of the edge roots.  The engine also provides
// an independent character-sum cross-check evaluated exactly in the
// cyclotomic quotient ring Z[x]/(Phi_{q-1}(x)), the Iwahori-level path sum,
// and the rank-one (single-entry coweight) closed form.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "testfn/abelianlat.hpp"
#include "testfn/affine.hpp"
#include "testfn/bruhatpaths.hpp"
#include "testfn/rpoly.hpp"

namespace testfn {

// Smallest symmetric subset of the root system that contains the given
// positive roots and is closed under addition whenever the sum is a root.
// Returned as the sorted list of positive-root indices.
inline std::vector<int> root_closure(const RootDatum& rd, const std::vector<int>& pos_roots) {
  std::set<IVec> members;
  auto insert_signed = [&](const IVec& v) {
    IVec neg(v.size());
    for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    members.insert(v);
    members.insert(std::move(neg));
  };
  for (int k : pos_roots) insert_signed(rd.roots[static_cast<size_t>(k)]);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<IVec> snapshot(members.begin(), members.end());
    for (size_t i = 0; i < snapshot.size(); ++i)
      for (size_t j = i + 1; j < snapshot.size(); ++j) {
        IVec sum = snapshot[i];
        for (size_t k = 0; k < sum.size(); ++k) sum[k] += snapshot[j][k];
        bool is_root = members.count(sum) == 0 && [&] {
          if (rd.root_index.count(sum)) return true;
          IVec neg(sum.size());
          for (size_t k = 0; k < sum.size(); ++k) neg[k] = -sum[k];
          return rd.root_index.count(neg) != 0;
        }();
        if (is_root) {
          insert_signed(sum);
          grew = true;
        }
      }
  }
  std::vector<int> out;
  for (const IVec& v : members) {
    auto it = rd.root_index.find(v);
    if (it != rd.root_index.end()) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct PathTerm {
  std::vector<int> edges;      // positive-root indices, increasing in the ordering
  long length = 0;             // number of edges
  std::vector<int> subsystem;  // closure of the edges, sorted positive-root indices
  long subsystem_rank = 0;     // rank of the coroot span of the closure
  Lattice lattice;             // <lam> + coroots of the closure
  AbelianStructure structure;  // Z^d modulo the lattice
  long a_exp = 0;              // exponent of (q-1): d - subsystem_rank - 1
  long b_exp = 0;              // exponent of q^r
  long c_exp = 0;              // exponent of (1-q^r): length - d
  std::vector<Int> torsion;    // invariant factors > 1 of the quotient
};

struct CoefficientReport {
  AffElt w{};
  bool admissible = false;
  long length = 0;
  long codim = 0;  // l(t_lam) - l(w)
  std::vector<PathTerm> terms;
  // Distinct congruence lattices among the terms, in first-appearance order,
  // with the full inclusion relation between them.
  std::vector<int> term_class;              // per term: index into class_lattices
  std::vector<Lattice> class_lattices;
  std::vector<std::vector<char>> class_includes;  // [i][j]: lattice i inside lattice j
};

// One observed congruence region at a concrete q: which distinct lattices
// contain the exponent vector, plus the lexicographically least witness.
struct EmpiricalRegion {
  std::vector<char> membership;
  IVec witness;
};

// One symbolic case: the exponent vector lies in class `cls` and in no
// strictly smaller class (cls = -1: outside every class).  The guaranteed
// active terms are those whose lattice contains the case's lattice.
struct FormalCase {
  int cls = -1;
  std::vector<int> active_terms;
};

class Engine {
 public:
  Engine(Family family, int n, IVec mu, const std::string& ordering_spec = "paper")
      : W_(build_root_datum(family, n)),
        aff_(W_),
        mu_(std::move(mu)),
        ordering_spec_(ordering_spec) {
    const RootDatum& rd = W_.datum();
    if (static_cast<int>(mu_.size()) != rd.d)
      throw std::invalid_argument("coweight has the wrong number of coordinates");
    CoweightClass cls = classify_coweight(rd, mu_);
    if (!cls.dominant || !cls.minuscule)
      throw std::invalid_argument("engine requires a dominant minuscule coweight");
    bool digits = !ordering_spec.empty() &&
                  std::all_of(ordering_spec.begin(), ordering_spec.end(),
                              [](char c) { return c >= '0' && c <= '9'; });
    std::vector<int> word = digits ? word_from_letters(ordering_spec)
                                   : preset_ordering_word(W_, ordering_spec);
    order_ = ordering_from_word(W_, word);
    lt_mu_ = aff_.length(aff_.translation(mu_));
    adm_ = aff_.admissible_set(mu_);
    adm_index_.insert(adm_.begin(), adm_.end());
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const WeylGroup& weyl() const { return W_; }
  const AffineWeyl& affine() const { return aff_; }
  const RootDatum& datum() const { return W_.datum(); }
  const IVec& mu() const { return mu_; }
  const std::string& ordering_spec() const { return ordering_spec_; }
  const std::vector<int>& ordering() const { return order_; }
  long translation_length() const { return lt_mu_; }
  int rank_d() const { return datum().d; }

  const std::vector<AffElt>& admissibles() const { return adm_; }
  bool is_admissible(const AffElt& w) const { return adm_index_.count(w) != 0; }

  // Every t_lam wbar with lam in the orbit of mu: a strict superset of the
  // admissible set, used for support checks.
  std::vector<AffElt> orbit_candidates() const {
    std::vector<AffElt> out;
    for (const IVec& lam : weyl_orbit(datum(), mu_))
      for (int f = 0; f < W_.size(); ++f) out.push_back(AffElt{lam, f});
    return out;
  }

  const CoefficientReport& report(const AffElt& w) const {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(w, build_report(w)).first->second;
  }

  // Exact value of the main combinatorial formula at numeric q, r.
  Rat coefficient(const AffElt& w, const IVec& s, const Int& q, long r) const {
    validate_args(s, q, r);
    if (!is_admissible(w)) return Rat(0);
    const CoefficientReport& rep = report(w);
    const Int m = q - 1;
    const Int qr = ipow(q, static_cast<unsigned long>(r));
    IVec n = exponent_vector(s, q, r);
    Rat total = 0;
    for (const PathTerm& t : rep.terms) {
      if (!t.lattice.contains_mod(n, m)) continue;
      Rat term = 1;
      for (const Int& c : t.torsion) term *= Rat(igcd(c, m));
      term *= rpow(Rat(m), t.a_exp);
      term *= rpow(Rat(qr), t.b_exp);
      term *= rpow(Rat(1 - qr), t.c_exp);
      total += term;
    }
    return rank_d() % 2 ? -total : total;
  }

  // Independent cross-check: the character sum over all exponent vectors
  // m in (Z/(q-1))^d, evaluated exactly in Z[x]/(Phi_{q-1}(x)) with
  // polynomial coefficients in t = q^r.  The reduced result must be a
  // rational constant.
  Rat bruteforce(const AffElt& w, const IVec& s, const Int& q, long r) const {
    validate_args(s, q, r);
    const int d = rank_d();
    const Int big = q - 1;
    Int space = 1;
    for (int i = 0; i < d; ++i) space *= big;
    if (space > 10000000)
      throw std::invalid_argument("character enumeration guard exceeded");
    if (!is_admissible(w)) return Rat(0);
    const CoefficientReport& rep = report(w);
    const long m = big.get_si();

    const ZPoly phi = cyclotomic_polynomial(m);
    std::vector<ZPoly> xpow(static_cast<size_t>(m));
    xpow[0] = poly_mod(ZPoly{Int(1)}, phi);
    for (long j = 1; j < m; ++j) {
      ZPoly shifted = xpow[static_cast<size_t>(j - 1)];
      shifted.insert(shifted.begin(), Int(0));
      xpow[static_cast<size_t>(j)] = poly_mod(std::move(shifted), phi);
    }

    // Finite-part transpose columns: col[i] = wbar(e_i).
    std::vector<IVec> col(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      IVec e(d, 0);
      e[i] = 1;
      col[static_cast<size_t>(i)] = W_.act_on_coweight(rep.w.fin, e);
    }
    // Per term: the inner polynomial t^B (1-t)^len and the edge coroots.
    std::vector<ZPoly> term_poly;
    std::vector<std::vector<const IVec*>> term_coroots;
    const RootDatum& rd = datum();
    for (const PathTerm& t : rep.terms) {
      ZPoly p = poly_pow(ZPoly{Int(1), Int(-1)}, static_cast<int>(t.length));
      p.insert(p.begin(), static_cast<size_t>(t.b_exp), Int(0));
      term_poly.push_back(std::move(p));
      std::vector<const IVec*> cr;
      for (int k : t.edges) cr.push_back(&rd.coroots[static_cast<size_t>(k)]);
      term_coroots.push_back(std::move(cr));
    }

    std::vector<ZPoly> acc(static_cast<size_t>(lt_mu_) + 1);
    IVec mvec(d, 0);
    while (true) {
      bool relevant = imod(dot(rep.w.lam, mvec), big) == 0;
      for (int i = 0; relevant && i < d; ++i)
        if (imod(dot(col[static_cast<size_t>(i)], mvec) - mvec[static_cast<size_t>(i)], big) != 0)
          relevant = false;
      if (relevant) {
        ZPoly inner;
        for (size_t ti = 0; ti < term_poly.size(); ++ti) {
          bool inside = true;
          for (const IVec* cr : term_coroots[ti])
            if (imod(dot(*cr, mvec), big) != 0) {
              inside = false;
              break;
            }
          if (inside) inner = poly_add(inner, term_poly[ti]);
        }
        if (!inner.empty()) {
          long e = imod(-Int(r) * dot(s, mvec), big).get_si();
          const ZPoly& ze = xpow[static_cast<size_t>(e)];
          for (size_t k = 0; k < inner.size(); ++k)
            if (inner[k] != 0)
              acc[k] = poly_add(acc[k], poly_scale(ze, inner[k]));
        }
      }
      int pos = 0;
      while (pos < d && mvec[static_cast<size_t>(pos)] == big - 1) {
        mvec[static_cast<size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == d) break;
      mvec[static_cast<size_t>(pos)] += 1;
    }

    ZPoly P(acc.size(), Int(0));
    for (size_t k = 0; k < acc.size(); ++k) {
      poly_trim(acc[k]);
      if (acc[k].size() > 1)
        throw std::logic_error("non-constant cyclotomic residue");
      if (!acc[k].empty()) P[k] = acc[k][0];
    }
    const Int t0 = ipow(q, static_cast<unsigned long>(r));
    return Rat(poly_eval(P, t0)) * rpow(Rat(t0 - 1), -rank_d());
  }

  // Iwahori-level path sum: no congruence gate, no torsion, no (q-1) powers.
  // Vanishes exactly when w has no increasing path to its own translation.
  Rat iwahori(const AffElt& w, const Int& q, long r) const {
    if (q < 2 || r < 1) throw std::invalid_argument("requires q >= 2, r >= 1");
    const CoefficientReport& rep = report(w);
    const Int qr = ipow(q, static_cast<unsigned long>(r));
    Rat total = 0;
    for (const PathTerm& t : rep.terms)
      total += rpow(Rat(qr), t.b_exp) * rpow(Rat(1 - qr), t.length);
    return total;
  }

  // Classify every exponent vector in (Z/(q0-1))^d by its membership pattern
  // across the distinct lattices; regions ordered outside-first (fewest
  // memberships, then pattern), each with its lex-least witness.
  std::vector<EmpiricalRegion> scan_regions(const AffElt& w, const Int& q0) const {
    if (q0 < 2) throw std::invalid_argument("scan requires q0 >= 2");
    const CoefficientReport& rep = report(w);
    const int d = rank_d();
    const Int m = q0 - 1;
    Int space = 1;
    for (int i = 0; i < d; ++i) space *= m;
    if (space > 1000000) throw std::invalid_argument("region scan guard exceeded");
    std::map<std::vector<char>, IVec> first_seen;
    IVec n(d, 0);
    while (true) {
      std::vector<char> key(rep.class_lattices.size());
      for (size_t c = 0; c < rep.class_lattices.size(); ++c)
        key[c] = rep.class_lattices[c].contains_mod(n, m) ? 1 : 0;
      first_seen.emplace(std::move(key), n);
      int pos = 0;
      while (pos < d && n[static_cast<size_t>(pos)] == m - 1) {
        n[static_cast<size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == d) break;
      n[static_cast<size_t>(pos)] += 1;
    }
    std::vector<EmpiricalRegion> out;
    for (auto& [key, witness] : first_seen) out.push_back({key, witness});
    std::sort(out.begin(), out.end(), [](const EmpiricalRegion& a, const EmpiricalRegion& b) {
      int ca = std::count(a.membership.begin(), a.membership.end(), char(1));
      int cb = std::count(b.membership.begin(), b.membership.end(), char(1));
      if (ca != cb) return ca < cb;
      return a.membership < b.membership;
    });
    return out;
  }

  // Symbolic case list: the outside case first, then one case per distinct
  // lattice from the largest down (by how many classes it contains, then by
  // first appearance).  Active terms are those whose lattice contains the
  // case's lattice; terms of incomparable or smaller lattices are treated as
  // inactive, which matches the table displays whenever the exponent vector
  // lies in a unique minimal class.
  std::vector<FormalCase> formal_cases(const AffElt& w) const {
    const CoefficientReport& rep = report(w);
    const size_t nc = rep.class_lattices.size();
    std::vector<int> below(nc, 0);
    for (size_t i = 0; i < nc; ++i)
      for (size_t j = 0; j < nc; ++j)
        if (rep.class_includes[j][i]) ++below[i];
    std::vector<int> ids(nc);
    for (size_t i = 0; i < nc; ++i) ids[static_cast<size_t>(i)] = static_cast<int>(i);
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      if (below[static_cast<size_t>(a)] != below[static_cast<size_t>(b)])
        return below[static_cast<size_t>(a)] > below[static_cast<size_t>(b)];
      return a < b;
    });
    std::vector<FormalCase> out;
    out.push_back(FormalCase{-1, {}});
    for (int id : ids) {
      FormalCase fc;
      fc.cls = id;
      for (size_t t = 0; t < rep.terms.size(); ++t)
        if (rep.class_includes[static_cast<size_t>(id)][static_cast<size_t>(rep.term_class[t])])
          fc.active_terms.push_back(static_cast<int>(t));
      out.push_back(std::move(fc));
    }
    return out;
  }

  // Exponent vector of the norm of s: n = r*s reduced mod q-1.
  IVec exponent_vector(const IVec& s, const Int& q, long r) const {
    IVec n(s.size());
    for (size_t i = 0; i < s.size(); ++i) n[i] = imod(Int(r) * s[i], q - 1);
    return n;
  }

 private:
  void validate_args(const IVec& s, const Int& q, long r) const {
    if (q < 2 || r < 1) throw std::invalid_argument("requires q >= 2, r >= 1");
    if (static_cast<int>(s.size()) != rank_d())
      throw std::invalid_argument("exponent vector has the wrong number of coordinates");
  }

  CoefficientReport build_report(const AffElt& w) const {
    CoefficientReport rep;
    rep.w = w;
    rep.admissible = is_admissible(w);
    rep.length = aff_.length(w);
    rep.codim = lt_mu_ - rep.length;
    auto [u, v] = aff_.finite_interval(w);
    const RootDatum& rd = datum();
    const int d = rd.d;
    for (std::vector<int>& edges : increasing_paths(W_, u, v, order_)) {
      const long len = static_cast<long>(edges.size());
      std::vector<int> sub = root_closure(rd, edges);
      Mat coroot_rows;
      for (int k : sub) coroot_rows.push_back(rd.coroots[static_cast<size_t>(k)]);
      const long rank_j = coroot_rows.empty() ? 0 : Lattice(d, coroot_rows).rank();
      Mat gens;
      gens.push_back(w.lam);
      for (int k : sub) gens.push_back(rd.coroots[static_cast<size_t>(k)]);
      Lattice lat(d, gens);
      // The finite part moves every coweight within the lattice, so adding the
      // displacement generators wbar(e_i) - e_i must not enlarge it.
      Mat wide = gens;
      for (int i = 0; i < d; ++i) {
        IVec e(d, 0);
        e[i] = 1;
        IVec moved = W_.act_on_coweight(w.fin, e);
        for (int j = 0; j < d; ++j) moved[j] -= e[j];
        wide.push_back(std::move(moved));
      }
      if (!lat.equals(Lattice(d, wide)))
        throw std::logic_error("displacement generators escape the path lattice");
      AbelianStructure st = lat.quotient();
      const long diff = rep.codim - len;
      if (diff < 0 || diff % 2 != 0)
        throw std::logic_error("path length parity violates the codimension");
      PathTerm term{std::move(edges), len,      std::move(sub),
                    rank_j,           std::move(lat), st,
                    d - rank_j - 1,   diff / 2,  len - d,
                    st.torsion};
      rep.terms.push_back(std::move(term));
    }
    // Canonical term order: by path length, then by the search order (which is
    // lexicographic in the ordering positions of the edges).  This matches the
    // path indexing of the reference tables.
    std::stable_sort(rep.terms.begin(), rep.terms.end(),
                     [](const PathTerm& a, const PathTerm& b) { return a.length < b.length; });
    for (const PathTerm& t : rep.terms) {
      int cls = -1;
      for (size_t c = 0; c < rep.class_lattices.size(); ++c)
        if (rep.class_lattices[c].equals(t.lattice)) {
          cls = static_cast<int>(c);
          break;
        }
      if (cls < 0) {
        cls = static_cast<int>(rep.class_lattices.size());
        rep.class_lattices.push_back(t.lattice);
      }
      rep.term_class.push_back(cls);
    }
    const size_t nc = rep.class_lattices.size();
    rep.class_includes.assign(nc, std::vector<char>(nc, 0));
    for (size_t i = 0; i < nc; ++i)
      for (size_t j = 0; j < nc; ++j)
        rep.class_includes[i][j] = rep.class_lattices[j].includes(rep.class_lattices[i]) ? 1 : 0;
    return rep;
  }

  WeylGroup W_;
  AffineWeyl aff_;
  IVec mu_;
  std::string ordering_spec_;
  std::vector<int> order_;
  long lt_mu_ = 0;
  std::vector<AffElt> adm_;
  std::set<AffElt> adm_index_;
  mutable std::map<AffElt, CoefficientReport> cache_;
};

// Closed form for GL_d with the single-entry coweight: the value depends only
// on the set of translations above w and a coordinate congruence on s.
inline Rat drinfeld_coefficient(const Engine& eng, const AffElt& w, const IVec& s,
                                const Int& q, long r) {
  const RootDatum& rd = eng.datum();
  IVec e1(rd.d, 0);
  if (rd.d > 0) e1[0] = 1;
  if (rd.family != Family::GL || eng.mu() != e1)
    throw std::invalid_argument("closed form requires GL_d with a single-entry coweight");
  if (q < 2 || r < 1) throw std::invalid_argument("requires q >= 2, r >= 1");
  if (!eng.is_admissible(w)) return Rat(0);
  const int d = rd.d;
  std::set<int> critical;
  for (int j = 0; j < d; ++j) {
    IVec ej(d, 0);
    ej[j] = 1;
    if (w.lam == ej || eng.affine().leq_within(w, eng.affine().translation(ej), eng.admissibles()))
      critical.insert(j);
  }
  const Int m = q - 1;
  for (int i = 0; i < d; ++i)
    if (!critical.count(i) && imod(Int(r) * s[static_cast<size_t>(i)], m) != 0) return Rat(0);
  const long k = static_cast<long>(critical.size());
  Rat val = rpow(Rat(m), d - k) *
            rpow(Rat(1 - ipow(q, static_cast<unsigned long>(r))), k - d - 1);
  return d % 2 ? -val : val;
}

}  // namespace testfn
