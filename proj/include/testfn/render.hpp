#pragma once
// Presentation layer for coefficient reports: canonical reduced words,
// deterministic element ordering, per-length table blocks with path
// statistics and inclusion rows, cluster labels for elements sharing a
// report shape, symbolic piecewise-case displays, empirical region scans,
// and a versioned JSON form that re-renders to identical text.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "coeffengine.hpp"
#include "json.hpp"

namespace testfn {

// ---------------------------------------------------------------------------
// Canonical words and element display.
// ---------------------------------------------------------------------------

// Canonical reduced word: repeatedly strip the smallest right descent and
// reverse the collected letters.  Equivalently the reverse of the shortlex
// least reduced word of the inverse; it reproduces the reference tables'
// subscripts for every finite part that appears there.
inline std::vector<int> canonical_word(const WeylGroup& W, int e) {
  std::vector<int> stripped;
  int cur = e;
  while (cur != W.identity()) {
    int s = 0;
    while (!W.right_descent(cur, s)) ++s;
    stripped.push_back(s);
    cur = W.rmul(cur, s);
  }
  std::reverse(stripped.begin(), stripped.end());
  return stripped;
}

// One-based digit string for a word in the simple generators; empty word
// gives the empty string.
inline std::string word_string(const std::vector<int>& word) {
  std::string s;
  for (int c : word) s += static_cast<char>('1' + c);
  return s;
}

inline std::string tuple_string(const std::vector<Int>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += t[i].get_str();
  }
  s += ")";
  return s;
}

inline std::string element_display(const std::vector<Int>& tuple,
                                   const std::vector<int>& word) {
  std::string s = "t_" + tuple_string(tuple);
  if (!word.empty()) s += " s_" + word_string(word);
  return s;
}

inline std::string element_string(const Engine& eng, const AffElt& w) {
  return element_display(coweight_to_tuple(eng.datum(), w.lam),
                         canonical_word(eng.weyl(), w.fin));
}

// Listing order: translation tuple lexicographically, then the canonical
// word letter by letter with end-of-word sorting last, so a word precedes
// every proper prefix of itself.
inline bool word_less_end_last(const std::vector<int>& a,
                               const std::vector<int>& b) {
  const size_t k = std::min(a.size(), b.size());
  for (size_t i = 0; i < k; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() > b.size();
}

inline bool display_less(const std::vector<Int>& ta, const std::vector<int>& wa,
                         const std::vector<Int>& tb,
                         const std::vector<int>& wb) {
  if (ta != tb) return ta < tb;
  return word_less_end_last(wa, wb);
}

inline std::string group_name(const RootDatum& rd) {
  return rd.family == Family::GL ? "gl" + std::to_string(rd.n)
                                 : "gsp" + std::to_string(2 * rd.n);
}

// ---------------------------------------------------------------------------
// Neutral table data, buildable from an engine or parsed back from JSON.
// ---------------------------------------------------------------------------

struct TermRow {
  long len = 0;             // number of edges in the path
  long rank = 0;            // rank of the path's root subsystem
  long free = 0;            // free rank of the quotient group
  std::vector<long> tors;   // invariant factors > 1
  long a = 0;               // exponent of (q-1)
  long b = 0;               // exponent of q^r
  long c = 0;               // exponent of (1-q^r)
  int cls = 0;              // congruence-class index within the element
};

struct ElemData {
  std::vector<Int> tuple;   // translation part, display coordinates
  std::vector<int> word;    // canonical word of the finite part
  long length = 0;
  std::vector<TermRow> terms;
  std::vector<std::vector<char>> includes;  // class containment matrix
};

struct TableData {
  std::string group;
  std::vector<Int> mu_tuple;
  long lt_mu_length = 0;
  int d = 0;
  std::vector<ElemData> elements;  // listing order
};

inline std::string structure_display(long free, const std::vector<long>& tors) {
  if (free == 0 && tors.empty()) return "{1}";
  std::vector<std::string> parts;
  for (long i = 0; i < free; ++i) parts.emplace_back("Z");
  for (long t : tors) parts.push_back("Z/" + std::to_string(t) + "Z");
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += " x ";
    s += parts[i];
  }
  return s;
}

inline ElemData collect_element(const Engine& eng, const AffElt& w) {
  const CoefficientReport& rep = eng.report(w);
  ElemData e;
  e.tuple = coweight_to_tuple(eng.datum(), w.lam);
  e.word = canonical_word(eng.weyl(), w.fin);
  e.length = rep.length;
  for (size_t t = 0; t < rep.terms.size(); ++t) {
    const PathTerm& pt = rep.terms[t];
    TermRow row;
    row.len = pt.length;
    row.rank = pt.subsystem_rank;
    row.free = pt.structure.free_rank;
    for (const Int& f : pt.structure.torsion) row.tors.push_back(f.get_si());
    row.a = pt.a_exp;
    row.b = pt.b_exp;
    row.c = pt.c_exp;
    row.cls = rep.term_class[t];
    e.terms.push_back(std::move(row));
  }
  e.includes = rep.class_includes;
  return e;
}

// Builds the full table for every admissible element.  jobs > 1 shards the
// report computations across that many independent engine instances; the
// result is identical for every job count.
inline TableData collect_table(const Engine& eng, int jobs = 1) {
  TableData td;
  const RootDatum& rd = eng.datum();
  td.group = group_name(rd);
  td.mu_tuple = coweight_to_tuple(rd, eng.mu());
  td.lt_mu_length = eng.translation_length();
  td.d = rd.d;

  const std::vector<AffElt>& adm = eng.admissibles();
  td.elements.resize(adm.size());
  if (jobs <= 1 || adm.size() < 2) {
    for (size_t i = 0; i < adm.size(); ++i)
      td.elements[i] = collect_element(eng, adm[i]);
  } else {
    const int workers =
        std::min<int>(jobs, static_cast<int>(adm.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t]() {
        Engine local(rd.family, rd.n, eng.mu(), eng.ordering_spec());
        for (size_t i = static_cast<size_t>(t); i < adm.size();
             i += static_cast<size_t>(workers))
          td.elements[i] = collect_element(local, adm[i]);
      });
    for (std::thread& th : pool) th.join();
  }
  std::sort(td.elements.begin(), td.elements.end(),
            [](const ElemData& x, const ElemData& y) {
              return display_less(x.tuple, x.word, y.tuple, y.word);
            });
  return td;
}

// ---------------------------------------------------------------------------
// Block rendering: path statistic rows plus inclusion lines.
// ---------------------------------------------------------------------------

inline std::string path_label(const ElemData& e, size_t idx) {
  if (e.terms[idx].len == 0) return "E";
  return "D" + std::to_string(idx + 1);
}

// Equality chains (one per multi-member congruence class) followed by the
// cover relations of the strict-inclusion order, each endpoint shown as the
// smallest path carrying that class.
inline std::vector<std::string> inclusion_lines(const ElemData& e) {
  const size_t nc = e.includes.size();
  std::vector<std::vector<size_t>> members(nc);
  for (size_t t = 0; t < e.terms.size(); ++t)
    members[static_cast<size_t>(e.terms[t].cls)].push_back(t);

  std::vector<std::string> out;
  std::vector<std::pair<size_t, std::string>> eqs;
  for (size_t c = 0; c < nc; ++c) {
    if (members[c].size() < 2) continue;
    std::string line;
    for (size_t i = 0; i < members[c].size(); ++i) {
      if (i) line += " = ";
      line += "A(" + path_label(e, members[c][i]) + ")";
    }
    eqs.emplace_back(members[c].front(), line);
  }
  std::sort(eqs.begin(), eqs.end());
  for (auto& p : eqs) out.push_back(std::move(p.second));

  auto strictly_less = [&](size_t a, size_t b) {
    return a != b && e.includes[a][b];
  };
  std::vector<std::pair<size_t, size_t>> covers;
  for (size_t a = 0; a < nc; ++a)
    for (size_t b = 0; b < nc; ++b) {
      if (!strictly_less(a, b)) continue;
      bool direct = true;
      for (size_t c = 0; c < nc && direct; ++c)
        if (strictly_less(a, c) && strictly_less(c, b)) direct = false;
      if (direct) covers.emplace_back(members[a].front(), members[b].front());
    }
  std::sort(covers.begin(), covers.end());
  for (auto& [lo, hi] : covers)
    out.push_back("A(" + path_label(e, lo) + ") < A(" + path_label(e, hi) +
                  ")");
  return out;
}

// The shape of one element's report: statistic rows and inclusion lines.
// Elements of equal length and equal block text form one display cluster.
inline std::string report_block(const ElemData& e) {
  std::ostringstream o;
  for (size_t t = 0; t < e.terms.size(); ++t) {
    const TermRow& r = e.terms[t];
    o << path_label(e, t) << " | " << r.len << " | " << r.rank << " | "
      << structure_display(r.free, r.tors) << " | " << r.a << " | " << r.b
      << " | " << r.c << "\n";
  }
  for (const std::string& line : inclusion_lines(e)) o << line << "\n";
  return o.str();
}

struct Cluster {
  std::string block;
  std::vector<size_t> members;  // indices into TableData::elements
};

// Clusters at one length, in order of first (smallest) representative.
inline std::map<long, std::vector<Cluster>> cluster_by_length(
    const TableData& td) {
  std::map<long, std::vector<Cluster>> out;
  for (size_t i = 0; i < td.elements.size(); ++i) {
    const ElemData& e = td.elements[i];
    std::string block = report_block(e);
    std::vector<Cluster>& row = out[e.length];
    bool placed = false;
    for (Cluster& c : row)
      if (c.block == block) {
        c.members.push_back(i);
        placed = true;
        break;
      }
    if (!placed) row.push_back(Cluster{std::move(block), {i}});
  }
  return out;
}

// Subset labels X1, X2, ... run through the whole table: the counter advances
// only at lengths where the reports split into more than one shape, matching
// the numbering convention of the shipped reference tables.
inline std::string block_header(long length, size_t subset_number) {
  std::string h = "[l(w) = " + std::to_string(length);
  if (subset_number > 0) h += ", X" + std::to_string(subset_number);
  return h + "]";
}

inline std::string render_table_text(const TableData& td) {
  if (td.elements.empty()) return "";
  std::ostringstream o;
  o << "table " << td.group << " mu=" << tuple_string(td.mu_tuple) << "\n";
  size_t subset = 0;
  for (const auto& [length, clusters] : cluster_by_length(td))
    for (size_t c = 0; c < clusters.size(); ++c) {
      size_t number = clusters.size() > 1 ? ++subset : 0;
      o << "\n" << block_header(length, number) << "\n";
      o << clusters[c].block;
    }
  return o.str();
}

inline std::string render_adm_text(const TableData& td) {
  if (td.elements.empty()) return "";
  std::ostringstream o;
  o << "adm " << td.group << " mu=" << tuple_string(td.mu_tuple) << "\n";
  o << "count " << td.elements.size() << "\n";
  size_t subset = 0;
  for (const auto& [length, clusters] : cluster_by_length(td))
    for (size_t c = 0; c < clusters.size(); ++c) {
      size_t number = clusters.size() > 1 ? ++subset : 0;
      o << "\n" << block_header(length, number) << "\n";
      for (size_t i : clusters[c].members) {
        const ElemData& e = td.elements[i];
        o << element_display(e.tuple, e.word) << "\n";
      }
    }
  return o.str();
}

// ---------------------------------------------------------------------------
// JSON schema v1.
// ---------------------------------------------------------------------------

inline std::string render_json(const TableData& td) {
  nlohmann::ordered_json j;
  j["schema"] = "v1";
  j["group"] = td.group;
  j["mu"] = nlohmann::ordered_json::array();
  for (const Int& x : td.mu_tuple) j["mu"].push_back(x.get_si());
  j["lt_mu_length"] = td.lt_mu_length;
  j["d"] = td.d;
  j["elements"] = nlohmann::ordered_json::array();
  for (const ElemData& e : td.elements) {
    nlohmann::ordered_json je;
    je["t"] = nlohmann::ordered_json::array();
    for (const Int& x : e.tuple) je["t"].push_back(x.get_si());
    je["word"] = word_string(e.word);
    je["length"] = e.length;
    je["terms"] = nlohmann::ordered_json::array();
    for (const TermRow& r : e.terms) {
      nlohmann::ordered_json jt;
      jt["len"] = r.len;
      jt["rank"] = r.rank;
      jt["free"] = r.free;
      jt["tors"] = r.tors;
      jt["a"] = r.a;
      jt["b"] = r.b;
      jt["c"] = r.c;
      jt["cls"] = r.cls;
      je["terms"].push_back(std::move(jt));
    }
    je["includes"] = nlohmann::ordered_json::array();
    for (const auto& row : e.includes) {
      nlohmann::ordered_json jr = nlohmann::ordered_json::array();
      for (char v : row) jr.push_back(v ? 1 : 0);
      je["includes"].push_back(std::move(jr));
    }
    j["elements"].push_back(std::move(je));
  }
  return j.dump() + "\n";
}

inline TableData parse_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema").get<std::string>() != "v1")
    throw std::invalid_argument("unsupported table schema");
  TableData td;
  td.group = j.at("group").get<std::string>();
  for (const auto& x : j.at("mu")) td.mu_tuple.emplace_back(x.get<long>());
  td.lt_mu_length = j.at("lt_mu_length").get<long>();
  td.d = j.at("d").get<int>();
  for (const auto& je : j.at("elements")) {
    ElemData e;
    for (const auto& x : je.at("t")) e.tuple.emplace_back(x.get<long>());
    for (char c : je.at("word").get<std::string>()) e.word.push_back(c - '1');
    e.length = je.at("length").get<long>();
    for (const auto& jt : je.at("terms")) {
      TermRow r;
      r.len = jt.at("len").get<long>();
      r.rank = jt.at("rank").get<long>();
      r.free = jt.at("free").get<long>();
      for (const auto& f : jt.at("tors")) r.tors.push_back(f.get<long>());
      r.a = jt.at("a").get<long>();
      r.b = jt.at("b").get<long>();
      r.c = jt.at("c").get<long>();
      r.cls = jt.at("cls").get<int>();
      e.terms.push_back(std::move(r));
    }
    for (const auto& jr : je.at("includes")) {
      std::vector<char> row;
      for (const auto& v : jr) row.push_back(v.get<int>() ? 1 : 0);
      e.includes.push_back(std::move(row));
    }
    td.elements.push_back(std::move(e));
  }
  return td;
}

// ---------------------------------------------------------------------------
// Symbolic piecewise-case displays.
// ---------------------------------------------------------------------------

// One displayed summand: count copies of a statistic triple, each carrying
// the listed invariant factors as gcd(f, q-1) multipliers.
struct CaseTerm {
  long count = 1;
  std::vector<long> tors;
  long a = 0, b = 0, c = 0;
};

// assume_mod m > 0 encodes the hypothesis q = 1 mod m, under which
// gcd(f, q-1) = f whenever f divides m.
inline std::string case_term_string(const CaseTerm& t, long assume_mod) {
  long k = t.count;
  std::string gcds;
  for (long f : t.tors) {
    if (assume_mod > 0 && assume_mod % f == 0)
      k *= f;
    else
      gcds += "gcd(" + std::to_string(f) + ",q-1)";
  }
  std::string s;
  if (k != 1) s += std::to_string(k);
  s += gcds;
  if (t.a == 1)
    s += "(q-1)";
  else if (t.a != 0)
    s += "(q-1)^" + std::to_string(t.a);
  if (t.b == 1)
    s += "q^r";
  else if (t.b != 0)
    s += "q^(" + std::to_string(t.b) + "r)";
  if (t.c == 1)
    s += "(1-q^r)";
  else if (t.c > 1)
    s += "(1-q^r)^" + std::to_string(t.c);
  else if (t.c < 0)
    s += "(1-q^r)^(-" + std::to_string(-t.c) + ")";
  if (s.empty()) s = "1";
  return s;
}

// Sum of the active terms, grouped and ordered by ascending path length
// (equivalently ascending exponent of (1-q^r)), with the global sign for
// odd rank folded in.
inline std::string case_value_string(const ElemData& e,
                                     const std::vector<int>& active,
                                     int d, long assume_mod) {
  if (active.empty()) return "0";
  std::vector<CaseTerm> groups;
  for (int t : active) {
    const TermRow& r = e.terms[static_cast<size_t>(t)];
    bool merged = false;
    for (CaseTerm& g : groups)
      if (g.tors == r.tors && g.a == r.a && g.b == r.b && g.c == r.c) {
        ++g.count;
        merged = true;
        break;
      }
    if (!merged) groups.push_back(CaseTerm{1, r.tors, r.a, r.b, r.c});
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const CaseTerm& x, const CaseTerm& y) {
                     if (x.c != y.c) return x.c < y.c;
                     if (x.a != y.a) return x.a > y.a;
                     return x.b > y.b;
                   });
  std::string s;
  for (size_t i = 0; i < groups.size(); ++i) {
    if (i) s += " + ";
    s += case_term_string(groups[i], assume_mod);
  }
  if (d % 2 == 0) return s;
  return groups.size() == 1 ? "-" + s : "-(" + s + ")";
}

// Internal description of one symbolic case before text assembly.
struct CaseLine {
  std::vector<int> classes;    // merged classes sharing this line (-1: outside)
  std::string subtracted;      // rendered lower boundary, may be empty
  std::string value;
  int depth = 0;               // number of classes weakly below, for merging
};

inline std::string class_label(const ElemData& e, int cls) {
  size_t first = e.terms.size();
  for (size_t t = 0; t < e.terms.size(); ++t)
    if (e.terms[t].cls == cls) {
      first = t;
      break;
    }
  return path_label(e, first);
}

// One rendered case: the display line and, for empirical matching, the class
// membership vector each merged class would produce.
struct SymbolicCase {
  std::string text;
  std::vector<std::vector<char>> expects;
};

inline std::vector<SymbolicCase> symbolic_cases(const ElemData& e, int d,
                                                long assume_mod) {
  const size_t nc = e.includes.size();
  auto strictly_less = [&](size_t x, size_t y) {
    return x != y && e.includes[x][y];
  };

  // Engine case order: outside first, then classes from the top of the
  // inclusion order down to the bottom.
  std::vector<int> below(nc, 0);
  for (size_t i = 0; i < nc; ++i)
    for (size_t j = 0; j < nc; ++j)
      if (e.includes[j][i]) ++below[i];
  std::vector<int> ids(nc);
  for (size_t i = 0; i < nc; ++i) ids[i] = static_cast<int>(i);
  std::sort(ids.begin(), ids.end(), [&](int x, int y) {
    if (below[static_cast<size_t>(x)] != below[static_cast<size_t>(y)])
      return below[static_cast<size_t>(x)] > below[static_cast<size_t>(y)];
    return x < y;
  });

  auto boundary_string = [&](const std::vector<int>& classes) {
    std::vector<std::string> labels;
    for (int c : classes) labels.push_back("A(" + class_label(e, c) + ")");
    std::sort(labels.begin(), labels.end());
    if (labels.empty()) return std::string();
    if (labels.size() == 1) return labels[0];
    std::string s = "(";
    for (size_t i = 0; i < labels.size(); ++i) {
      if (i) s += " u ";
      s += labels[i];
    }
    return s + ")";
  };

  std::vector<CaseLine> lines;
  {
    CaseLine outside;
    outside.classes = {-1};
    std::vector<int> tops;
    for (size_t c = 0; c < nc; ++c) {
      bool maximal = true;
      for (size_t o = 0; o < nc && maximal; ++o)
        if (strictly_less(c, o)) maximal = false;
      if (maximal) tops.push_back(static_cast<int>(c));
    }
    outside.subtracted = boundary_string(tops);
    outside.value = "0";
    outside.depth = -1;
    lines.push_back(std::move(outside));
  }
  for (int id : ids) {
    CaseLine line;
    line.classes = {id};
    std::vector<int> lower;
    for (size_t c = 0; c < nc; ++c) {
      if (!strictly_less(c, static_cast<size_t>(id))) continue;
      bool maximal_below = true;
      for (size_t o = 0; o < nc && maximal_below; ++o)
        if (strictly_less(c, o) && strictly_less(o, static_cast<size_t>(id)))
          maximal_below = false;
      if (maximal_below) lower.push_back(static_cast<int>(c));
    }
    line.subtracted = boundary_string(lower);
    std::vector<int> active;
    for (size_t t = 0; t < e.terms.size(); ++t)
      if (e.includes[static_cast<size_t>(id)]
                    [static_cast<size_t>(e.terms[t].cls)])
        active.push_back(static_cast<int>(t));
    line.value = case_value_string(e, active, d, assume_mod);
    line.depth = below[static_cast<size_t>(id)];
    lines.push_back(std::move(line));
  }

  // Merge consecutive single-class cases at equal depth with equal value and
  // equal lower boundary; they are images of one another under a symmetry.
  std::vector<CaseLine> merged;
  for (CaseLine& line : lines) {
    if (!merged.empty()) {
      CaseLine& prev = merged.back();
      if (prev.classes.front() >= 0 && line.classes.front() >= 0 &&
          prev.depth == line.depth && prev.value == line.value &&
          prev.subtracted == line.subtracted) {
        prev.classes.push_back(line.classes.front());
        continue;
      }
    }
    merged.push_back(std::move(line));
  }

  std::vector<SymbolicCase> out;
  for (const CaseLine& line : merged) {
    std::string cond;
    if (line.classes.front() < 0) {
      cond = "N outside " + line.subtracted;
    } else if (line.classes.size() == 1) {
      cond = "N in A(" + class_label(e, line.classes.front()) + ")";
      if (!line.subtracted.empty()) cond += " minus " + line.subtracted;
    } else {
      cond = "N in A(Di)";
      if (!line.subtracted.empty()) cond += " minus " + line.subtracted;
      std::string list;
      for (size_t i = 0; i < line.classes.size(); ++i) {
        if (i) list += ",";
        std::string lbl = class_label(e, line.classes[i]);
        list += lbl.substr(1);
      }
      cond += " for i in {" + list + "}";
    }
    SymbolicCase sc;
    sc.text = cond + ": " + line.value;
    // Membership vector per merged class: outside is all-zero; a class case
    // contains exactly the classes weakly above it.
    for (int cls : line.classes) {
      std::vector<char> expect(nc, 0);
      if (cls >= 0)
        for (size_t c = 0; c < nc; ++c)
          expect[c] = e.includes[static_cast<size_t>(cls)][c] ? 1 : 0;
      sc.expects.push_back(std::move(expect));
    }
    out.push_back(std::move(sc));
  }
  return out;
}

inline std::string assumption_string(long assume_mod) {
  if (assume_mod <= 0) return "none";
  return "q=1mod" + std::to_string(assume_mod);
}

inline std::string render_cases(const Engine& eng, const AffElt& w,
                                long assume_mod = 0) {
  ElemData e = collect_element(eng, w);
  std::ostringstream o;
  o << "cases " << group_name(eng.datum())
    << " mu=" << tuple_string(coweight_to_tuple(eng.datum(), eng.mu()))
    << "\n";
  o << "w = " << element_display(e.tuple, e.word) << "\n";
  o << "assume " << assumption_string(assume_mod) << "\n";
  for (const SymbolicCase& sc : symbolic_cases(e, eng.rank_d(), assume_mod))
    o << "case " << sc.text << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Empirical region scan at a concrete q.
// ---------------------------------------------------------------------------

inline Rat value_for_membership(const Engine& eng, const AffElt& w,
                                const std::vector<char>& membership,
                                const Int& q, long r) {
  const CoefficientReport& rep = eng.report(w);
  const Int m = q - 1;
  const Int qr = ipow(q, static_cast<unsigned long>(r));
  Rat total = 0;
  for (size_t t = 0; t < rep.terms.size(); ++t) {
    if (!membership[static_cast<size_t>(rep.term_class[t])]) continue;
    const PathTerm& pt = rep.terms[t];
    Rat term = 1;
    for (const Int& f : pt.torsion) term *= Rat(igcd(f, m));
    term *= rpow(Rat(m), pt.a_exp);
    term *= rpow(Rat(qr), pt.b_exp);
    term *= rpow(Rat(1 - qr), pt.c_exp);
    total += term;
  }
  return eng.rank_d() % 2 ? -total : total;
}

inline std::string render_scan(const Engine& eng, const AffElt& w,
                               const Int& q, long r) {
  ElemData e = collect_element(eng, w);
  auto cases = symbolic_cases(e, eng.rank_d(), 0);
  std::ostringstream o;
  o << "scan " << group_name(eng.datum())
    << " mu=" << tuple_string(coweight_to_tuple(eng.datum(), eng.mu()))
    << " w=" << element_display(e.tuple, e.word) << " q=" << q.get_str()
    << " r=" << r << "\n";
  for (const EmpiricalRegion& reg : eng.scan_regions(w, q)) {
    std::string cond;
    for (const SymbolicCase& sc : cases) {
      bool hit = false;
      for (const std::vector<char>& expect : sc.expects)
        if (expect == reg.membership) {
          hit = true;
          break;
        }
      if (hit) {
        cond = sc.text.substr(0, sc.text.rfind(": "));
        break;
      }
    }
    if (cond.empty()) {
      std::string in;
      for (size_t c = 0; c < reg.membership.size(); ++c)
        if (reg.membership[c]) {
          if (!in.empty()) in += ", ";
          in += "A(" + class_label(e, static_cast<int>(c)) + ")";
        }
      cond = "mixed(in " + (in.empty() ? std::string("-") : in) + ")";
    }
    o << "region " << cond << ": n=" << tuple_string(reg.witness) << " value "
      << value_for_membership(eng, w, reg.membership, q, r).get_str() << "\n";
  }
  return o.str();
}

}  // namespace testfn
