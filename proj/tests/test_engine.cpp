// Acceptance anchors for the coefficient engine: path statistics of the
// reference worked cases, exact values, equality of the main formula with the
// exhaustive character-sum cross-check, the Iwahori-level support, the
// rank-one closed form, region scans, and the structural invariants shared by
// every shipped family.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "testfn/coeffengine.hpp"

using namespace testfn;

namespace {

std::vector<AffElt> of_length(const Engine& eng, long len) {
  std::vector<AffElt> out;
  for (const AffElt& w : eng.admissibles())
    if (eng.affine().length(w) == len) out.push_back(w);
  return out;
}

std::vector<IVec> all_vectors(int d, long m) {
  std::vector<IVec> out;
  IVec v(d, 0);
  while (true) {
    out.push_back(v);
    int pos = 0;
    while (pos < d && v[static_cast<size_t>(pos)] == m - 1) {
      v[static_cast<size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == d) break;
    v[static_cast<size_t>(pos)] += 1;
  }
  return out;
}

}  // namespace

TEST_CASE("root closure: orthogonal pairs and full-system generation") {
  RootDatum a3 = build_root_datum(Family::GL, 4);
  // a13 and a24 sum to nothing: the pair is already closed.
  CHECK(root_closure(a3, {1, 4}) == std::vector<int>{1, 4});
  // the four edges of the long length-0 path generate everything
  CHECK(root_closure(a3, {0, 1, 3, 4}) == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(root_closure(a3, {}).empty());

  RootDatum c2 = build_root_datum(Family::GSp, 2);
  // two orthogonal short roots whose sum is a long root close up to all of C2
  CHECK(root_closure(c2, {0, 2}) == std::vector<int>{0, 1, 2, 3});
  // two long roots stay a closed A1 x A1
  CHECK(root_closure(c2, {1, 3}) == std::vector<int>{1, 3});
}

TEST_CASE("GL4 path statistics match the reference tables") {
  Engine eng(Family::GL, 4, IVec{1, 1, 0, 0});
  CHECK(eng.admissibles().size() == 33);
  CHECK(eng.translation_length() == 4);

  std::map<long, int> by_len;
  for (const AffElt& w : eng.admissibles()) ++by_len[eng.affine().length(w)];
  CHECK(by_len == std::map<long, int>{{0, 1}, {1, 4}, {2, 10}, {3, 12}, {4, 6}});

  SUBCASE("length 0: two paths") {
    auto l0 = of_length(eng, 0);
    REQUIRE(l0.size() == 1);
    const CoefficientReport& rep = eng.report(l0[0]);
    REQUIRE(rep.terms.size() == 2);
    const PathTerm& d1 = rep.terms[0];
    CHECK(d1.length == 2);
    CHECK(d1.edges == std::vector<int>{1, 4});  // a13 then a24
    CHECK(d1.subsystem_rank == 2);
    CHECK(d1.structure.to_string() == "Z");
    CHECK(d1.a_exp == 1);
    CHECK(d1.b_exp == 1);
    CHECK(d1.c_exp == -2);
    const PathTerm& d2 = rep.terms[1];
    CHECK(d2.length == 4);
    CHECK(d2.edges == std::vector<int>{0, 1, 3, 4});  // a12, a13, a23, a24
    CHECK(d2.subsystem_rank == 3);
    CHECK(d2.subsystem == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(d2.structure.to_string() == "Z/2Z");
    CHECK(d2.a_exp == 0);
    CHECK(d2.b_exp == 0);
    CHECK(d2.c_exp == 0);
    CHECK(d2.torsion == std::vector<Int>{Int(2)});
    // two distinct lattices, strictly nested
    REQUIRE(rep.class_lattices.size() == 2);
    CHECK(rep.term_class == std::vector<int>{0, 1});
    CHECK(rep.class_includes[0][1] == 1);
    CHECK(rep.class_includes[1][0] == 0);
  }

  SUBCASE("length 1: single full-system path") {
    for (const AffElt& w : of_length(eng, 1)) {
      const CoefficientReport& rep = eng.report(w);
      REQUIRE(rep.terms.size() == 1);
      CHECK(rep.terms[0].length == 3);
      CHECK(rep.terms[0].subsystem_rank == 3);
      CHECK(rep.terms[0].structure.to_string() == "Z/2Z");
      CHECK(rep.terms[0].a_exp == 0);
      CHECK(rep.terms[0].b_exp == 0);
      CHECK(rep.terms[0].c_exp == -1);
      // value on the member side: 2 (1-q^r)^{-1}
      CHECK(eng.coefficient(w, IVec{0, 0, 0, 0}, 3, 1) == Rat(-1));
    }
  }

  SUBCASE("length 2: two shapes, 4 + 6") {
    int with_torsion = 0, torus = 0;
    for (const AffElt& w : of_length(eng, 2)) {
      const CoefficientReport& rep = eng.report(w);
      REQUIRE(rep.terms.size() == 1);
      const PathTerm& t = rep.terms[0];
      CHECK(t.length == 2);
      CHECK(t.subsystem_rank == 2);
      CHECK(t.a_exp == 1);
      CHECK(t.b_exp == 0);
      CHECK(t.c_exp == -2);
      if (t.structure.to_string() == "Z x Z/2Z")
        ++with_torsion;
      else if (t.structure.to_string() == "Z")
        ++torus;
    }
    CHECK(with_torsion == 4);
    CHECK(torus == 6);
  }

  SUBCASE("length 3: codimension-one closed form") {
    for (const AffElt& w : of_length(eng, 3)) {
      const CoefficientReport& rep = eng.report(w);
      REQUIRE(rep.terms.size() == 1);
      CHECK(rep.terms[0].length == 1);
      CHECK(rep.terms[0].subsystem_rank == 1);
      CHECK(rep.terms[0].structure.to_string() == "Z^2");
      CHECK(rep.terms[0].a_exp == 2);
      CHECK(rep.terms[0].b_exp == 0);
      CHECK(rep.terms[0].c_exp == -3);
    }
  }

  SUBCASE("length 4: translations, empty path") {
    for (const AffElt& w : of_length(eng, 4)) {
      const CoefficientReport& rep = eng.report(w);
      REQUIRE(rep.terms.size() == 1);
      CHECK(rep.terms[0].length == 0);
      CHECK(rep.terms[0].edges.empty());
      CHECK(rep.terms[0].structure.to_string() == "Z^3");
      CHECK(rep.terms[0].a_exp == 3);
      CHECK(rep.terms[0].b_exp == 0);
      CHECK(rep.terms[0].c_exp == -4);
    }
  }
}

TEST_CASE("GL4 exact values and regions") {
  Engine eng(Family::GL, 4, IVec{1, 1, 0, 0});
  AffElt tmu{IVec{1, 1, 0, 0}, eng.weyl().identity()};
  REQUIRE(eng.is_admissible(tmu));

  SUBCASE("translation value 1/2 at q=3") {
    CHECK(eng.coefficient(tmu, IVec{0, 0, 0, 0}, 3, 1) == Rat(1, 2));
    CHECK(eng.bruteforce(tmu, IVec{0, 0, 0, 0}, 3, 1) == Rat(1, 2));
  }

  SUBCASE("non-admissible candidate gives zero everywhere") {
    AffElt bad{};
    bool found = false;
    for (const AffElt& c : eng.orbit_candidates())
      if (!eng.is_admissible(c)) {
        bad = c;
        found = true;
        break;
      }
    REQUIRE(found);
    CHECK(eng.coefficient(bad, IVec{0, 0, 0, 0}, 3, 1) == Rat(0));
    CHECK(eng.bruteforce(bad, IVec{0, 0, 0, 0}, 3, 1) == Rat(0));
    CHECK(eng.iwahori(bad, 3, 1) == Rat(0));
    CHECK(eng.report(bad).terms.empty());
  }

  AffElt l0 = of_length(eng, 0).at(0);

  SUBCASE("length 0 at q=3: the two critical groups coincide") {
    auto regions = eng.scan_regions(l0, 3);
    REQUIRE(regions.size() == 2);
    CHECK(regions[0].membership == std::vector<char>{0, 0});
    CHECK(regions[1].membership == std::vector<char>{1, 1});
    int zero = 0, inner = 0;
    for (const IVec& s : all_vectors(4, 2)) {
      Rat val = eng.coefficient(l0, s, 3, 1);
      if (val == Rat(0))
        ++zero;
      else if (val == Rat(7, 2))
        ++inner;
      CHECK(val != Rat(2));  // the strict middle region is empty at q=3
    }
    CHECK(zero == 8);
    CHECK(inner == 8);
  }

  SUBCASE("length 0 at q=5: middle region appears with value 2") {
    auto regions = eng.scan_regions(l0, 5);
    REQUIRE(regions.size() == 3);
    CHECK(regions[0].membership == std::vector<char>{0, 0});
    CHECK(regions[1].membership == std::vector<char>{0, 1});
    CHECK(regions[2].membership == std::vector<char>{1, 1});
    const IVec& mid = regions[1].witness;
    CHECK(eng.coefficient(l0, mid, 5, 1) == Rat(2));
    CHECK(eng.bruteforce(l0, mid, 5, 1) == Rat(2));
    // a hand-picked middle vector: n = (2,0,0,0) is sum-even but outside the
    // smaller lattice; reachable at r=2 from s = (1,0,0,0)
    CHECK(eng.coefficient(l0, IVec{2, 0, 0, 0}, 5, 1) == Rat(2));
    CHECK(eng.coefficient(l0, IVec{1, 0, 0, 0}, 5, 2) == Rat(2));
    // innermost witness value (q-1) q^r (1-q^r)^{-2} + 2 at q=5, r=1
    CHECK(eng.coefficient(l0, regions[2].witness, 5, 1) == Rat(13, 4));
  }

  SUBCASE("formal cases: outside, larger class, smaller class") {
    auto cases = eng.formal_cases(l0);
    REQUIRE(cases.size() == 3);
    CHECK(cases[0].cls == -1);
    CHECK(cases[0].active_terms.empty());
    CHECK(cases[1].cls == 1);  // the full-system lattice contains the other
    CHECK(cases[1].active_terms == std::vector<int>{1});
    CHECK(cases[2].cls == 0);
    CHECK(cases[2].active_terms == std::vector<int>{0, 1});

    auto tcases = eng.formal_cases(tmu);
    REQUIRE(tcases.size() == 2);
    CHECK(tcases[0].cls == -1);
    CHECK(tcases[1].active_terms == std::vector<int>{0});
  }

  SUBCASE("ordering invariance of values") {
    Engine lex(Family::GL, 4, IVec{1, 1, 0, 0}, "lex");
    Engine rev(Family::GL, 4, IVec{1, 1, 0, 0}, "rev");
    std::vector<IVec> sample{{0, 0, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 0, 1}};
    for (const AffElt& w : eng.admissibles())
      for (const IVec& s : sample) {
        Rat val = eng.coefficient(w, s, 3, 1);
        CHECK(val == lex.coefficient(w, s, 3, 1));
        CHECK(val == rev.coefficient(w, s, 3, 1));
      }
  }
}

TEST_CASE("main formula equals the character-sum cross-check") {
  SUBCASE("GL3, every element, every vector, r in {1,2}, plus q=2") {
    Engine eng(Family::GL, 3, IVec{1, 0, 0});
    REQUIRE(eng.admissibles().size() == 7);
    for (const AffElt& w : eng.admissibles()) {
      for (const IVec& s : all_vectors(3, 2)) {
        CHECK(eng.coefficient(w, s, 3, 1) == eng.bruteforce(w, s, 3, 1));
        CHECK(eng.coefficient(w, s, 3, 2) == eng.bruteforce(w, s, 3, 2));
      }
      CHECK(eng.coefficient(w, IVec{0, 0, 0}, 2, 1) == eng.bruteforce(w, IVec{0, 0, 0}, 2, 1));
    }
  }

  SUBCASE("GL4 at q=3, every element and vector") {
    Engine eng(Family::GL, 4, IVec{1, 1, 0, 0});
    for (const AffElt& w : eng.admissibles())
      for (const IVec& s : all_vectors(4, 2))
        CHECK(eng.coefficient(w, s, 3, 1) == eng.bruteforce(w, s, 3, 1));
  }

  SUBCASE("GL4 at q=5, sampled vectors") {
    Engine eng(Family::GL, 4, IVec{1, 1, 0, 0});
    std::vector<AffElt> ws{of_length(eng, 0).at(0), of_length(eng, 2).at(0),
                           AffElt{IVec{1, 1, 0, 0}, eng.weyl().identity()}};
    std::vector<IVec> sample{{0, 0, 0, 0}, {1, 0, 0, 0}, {1, 1, 1, 1}, {1, 2, 3, 0}, {3, 1, 0, 2}};
    for (const AffElt& w : ws)
      for (const IVec& s : sample)
        CHECK(eng.coefficient(w, s, 5, 1) == eng.bruteforce(w, s, 5, 1));
  }

  SUBCASE("GSp4 at q=3, every element and vector") {
    Engine eng(Family::GSp, 2, IVec{1, 1, 1});
    REQUIRE(eng.admissibles().size() == 13);
    for (const AffElt& w : eng.admissibles())
      for (const IVec& s : all_vectors(3, 2)) {
        CHECK(eng.coefficient(w, s, 3, 1) == eng.bruteforce(w, s, 3, 1));
        CHECK(eng.coefficient(w, s, 3, 2) == eng.bruteforce(w, s, 3, 2));
      }
  }

  SUBCASE("enumeration guard") {
    Engine eng(Family::GL, 4, IVec{1, 1, 0, 0});
    AffElt tmu{IVec{1, 1, 0, 0}, eng.weyl().identity()};
    CHECK_THROWS_AS(eng.bruteforce(tmu, IVec{0, 0, 0, 0}, 101, 1), std::invalid_argument);
  }
}

TEST_CASE("GSp4 statistics, values, and regions") {
  Engine eng(Family::GSp, 2, IVec{1, 1, 1});
  CHECK(eng.translation_length() == 3);

  AffElt l0 = of_length(eng, 0).at(0);
  const CoefficientReport& rep = eng.report(l0);
  REQUIRE(rep.terms.size() == 2);
  CHECK(rep.terms[0].length == 1);
  CHECK(rep.terms[0].subsystem_rank == 1);
  CHECK(rep.terms[0].structure.to_string() == "Z");
  CHECK(rep.terms[0].a_exp == 1);
  CHECK(rep.terms[0].b_exp == 1);
  CHECK(rep.terms[0].c_exp == -2);
  CHECK(rep.terms[1].length == 3);
  CHECK(rep.terms[1].subsystem_rank == 2);
  CHECK(rep.terms[1].structure.to_string() == "{1}");
  CHECK(rep.terms[1].a_exp == 0);
  CHECK(rep.terms[1].b_exp == 0);
  CHECK(rep.terms[1].c_exp == 0);
  CHECK(rep.class_includes[0][1] == 1);

  // the larger lattice is everything: the outside region never occurs
  auto regions = eng.scan_regions(l0, 3);
  REQUIRE(regions.size() == 2);
  CHECK(regions[0].membership == std::vector<char>{0, 1});
  CHECK(regions[1].membership == std::vector<char>{1, 1});
  // global sign (-1)^d = -1 for d = 3
  CHECK(eng.coefficient(l0, regions[0].witness, 3, 1) == Rat(-1));
  CHECK(eng.coefficient(l0, IVec{0, 0, 0}, 3, 1) == Rat(-5, 2));

  for (const AffElt& w : of_length(eng, 3)) {
    const CoefficientReport& r3 = eng.report(w);
    REQUIRE(r3.terms.size() == 1);
    CHECK(r3.terms[0].length == 0);
    CHECK(r3.terms[0].structure.to_string() == "Z^2");
    CHECK(r3.terms[0].a_exp == 2);
    CHECK(r3.terms[0].b_exp == 0);
    CHECK(r3.terms[0].c_exp == -3);
  }
}

TEST_CASE("Iwahori-level path sums and support") {
  Engine eng(Family::GL, 4, IVec{1, 1, 0, 0});
  for (const AffElt& w : of_length(eng, 4)) CHECK(eng.iwahori(w, 3, 1) == Rat(1));
  CHECK(eng.iwahori(of_length(eng, 0).at(0), 3, 1) == Rat(28));

  int nonzero = 0;
  for (const AffElt& c : eng.orbit_candidates()) {
    bool in = eng.is_admissible(c);
    Rat val = eng.iwahori(c, 3, 1);
    CHECK((val != Rat(0)) == in);
    if (val != Rat(0)) ++nonzero;
  }
  CHECK(nonzero == 33);
}

TEST_CASE("rank-one closed form agrees with the engine") {
  SUBCASE("GL3") {
    Engine eng(Family::GL, 3, IVec{1, 0, 0});
    AffElt t1{IVec{1, 0, 0}, eng.weyl().identity()};
    // |S(w)| = 1: (-1)^3 (q-1)^2 (1-q^r)^{-3} = -4/(-8) = 1/2 at q=3, r=1
    CHECK(drinfeld_coefficient(eng, t1, IVec{0, 0, 0}, 3, 1) == Rat(1, 2));
    for (const AffElt& w : eng.admissibles())
      for (const IVec& s : all_vectors(3, 2))
        CHECK(drinfeld_coefficient(eng, w, s, 3, 1) == eng.coefficient(w, s, 3, 1));
  }
  SUBCASE("GL4") {
    Engine eng(Family::GL, 4, IVec{1, 0, 0, 0});
    REQUIRE(eng.admissibles().size() == 15);
    for (const AffElt& w : eng.admissibles())
      for (const IVec& s : all_vectors(4, 2))
        CHECK(drinfeld_coefficient(eng, w, s, 3, 1) == eng.coefficient(w, s, 3, 1));
    // non-admissible orbit candidate
    for (const AffElt& c : eng.orbit_candidates())
      if (!eng.is_admissible(c)) {
        CHECK(drinfeld_coefficient(eng, c, IVec{0, 0, 0, 0}, 3, 1) == Rat(0));
        break;
      }
  }
  SUBCASE("rejects other coweights") {
    Engine eng(Family::GL, 4, IVec{1, 1, 0, 0});
    AffElt tmu{IVec{1, 1, 0, 0}, eng.weyl().identity()};
    CHECK_THROWS_AS(drinfeld_coefficient(eng, tmu, IVec{0, 0, 0, 0}, 3, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("structural invariants across the shipped families") {
  auto check_engine = [](Engine& eng) {
    const int d = eng.rank_d();
    for (const AffElt& w : eng.admissibles()) {
      const CoefficientReport& rep = eng.report(w);
      long codim = eng.translation_length() - eng.affine().length(w);
      if (codim == 0) {
        REQUIRE(rep.terms.size() == 1);
        CHECK(rep.terms[0].length == 0);
        CHECK(rep.terms[0].a_exp == d - 1);
        CHECK(rep.terms[0].torsion.empty());
      }
      if (codim == 1) {
        REQUIRE(rep.terms.size() == 1);
        CHECK(rep.terms[0].length == 1);
        CHECK(rep.terms[0].a_exp == d - 2);
        CHECK(rep.terms[0].subsystem_rank == 1);
      }
      for (const PathTerm& t : rep.terms) {
        CHECK(t.b_exp >= 0);
        CHECK(t.c_exp >= -d);
        CHECK(t.a_exp >= 0);
        // quotient rank identity and the single-invariant-factor property
        CHECK(t.structure.free_rank == d - t.subsystem_rank - 1);
        CHECK(t.torsion.size() <= 1);
      }
    }
  };
  Engine gl4(Family::GL, 4, IVec{1, 1, 0, 0});
  Engine gl5(Family::GL, 5, IVec{1, 1, 0, 0, 0});
  Engine gsp4(Family::GSp, 2, IVec{1, 1, 1});
  check_engine(gl4);
  check_engine(gl5);
  check_engine(gsp4);
}

TEST_CASE("engine argument validation") {
  CHECK_THROWS_AS(Engine(Family::GL, 4, IVec{2, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Engine(Family::GL, 4, IVec{1, 1, 0}), std::invalid_argument);
  Engine eng(Family::GL, 3, IVec{1, 0, 0});
  AffElt t1{IVec{1, 0, 0}, eng.weyl().identity()};
  CHECK_THROWS_AS(eng.coefficient(t1, IVec{0, 0, 0}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(eng.coefficient(t1, IVec{0, 0}, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(eng.coefficient(t1, IVec{0, 0, 0}, 3, 0), std::invalid_argument);
}
