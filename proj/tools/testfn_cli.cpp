// Command-line front end: group and coweight selection, listing of the
// admissible set, per-element path reports, coefficient evaluation in exact
// arithmetic (numeric, region-scan, or symbolic-case form), full table
// rendering in text or JSON, and the brute-force verification sweep.
//
// Exit codes: 0 success, 1 validation error, 2 verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "testfn/render.hpp"

namespace {

using namespace testfn;

struct GroupSpec {
  Family family = Family::GL;
  int n = 0;
};

GroupSpec parse_group(const std::string& name) {
  auto fail = [&]() -> GroupSpec {
    throw std::invalid_argument("unknown group: " + name +
                                " (expected glN or gspN with N even)");
  };
  if (name.rfind("gsp", 0) == 0) {
    int total = 0;
    try {
      total = std::stoi(name.substr(3));
    } catch (...) {
      return fail();
    }
    if (total < 2 || total % 2 != 0) return fail();
    return GroupSpec{Family::GSp, total / 2};
  }
  if (name.rfind("gl", 0) == 0) {
    int total = 0;
    try {
      total = std::stoi(name.substr(2));
    } catch (...) {
      return fail();
    }
    if (total < 1) return fail();
    return GroupSpec{Family::GL, total};
  }
  return fail();
}

std::vector<Int> parse_tuple(const std::string& text) {
  std::vector<Int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty tuple entry");
    try {
      out.emplace_back(std::stol(item));
    } catch (...) {
      throw std::invalid_argument("bad tuple entry: " + item);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty tuple");
  return out;
}

std::vector<long> parse_r_list(const std::string& text) {
  std::vector<long> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    long r = 0;
    try {
      r = std::stol(item);
    } catch (...) {
      throw std::invalid_argument("bad power: " + item);
    }
    if (r < 1) throw std::invalid_argument("powers must be >= 1");
    out.push_back(r);
  }
  if (out.empty()) throw std::invalid_argument("empty power list");
  return out;
}

long parse_assume(const std::string& text) {
  const std::string prefix = "q=1mod";
  if (text.rfind(prefix, 0) != 0)
    throw std::invalid_argument("assumption must look like q=1modM");
  long m = 0;
  try {
    m = std::stol(text.substr(prefix.size()));
  } catch (...) {
    throw std::invalid_argument("assumption must look like q=1modM");
  }
  if (m < 1) throw std::invalid_argument("assumption modulus must be >= 1");
  return m;
}

AffElt element_from_input(const Engine& eng, const std::string& lam_text,
                          const std::string& word_text) {
  IVec lam = coweight_from_tuple(eng.datum(), parse_tuple(lam_text));
  int fin = eng.weyl().identity();
  for (char c : word_text) {
    int letter = c - '1';
    if (letter < 0 || letter >= eng.weyl().num_simples())
      throw std::invalid_argument("bad word letter: " + std::string(1, c));
    fin = eng.weyl().rmul(fin, letter);
  }
  return AffElt{std::move(lam), fin};
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    stream = &file;
  }
  std::ostream& out() { return *stream; }
};

int run_adm(const Engine& eng, bool clusters, Output& output) {
  TableData td = collect_table(eng);
  if (clusters) {
    output.out() << render_adm_text(td);
    return 0;
  }
  output.out() << td.elements.size() << " elements\n";
  for (const ElemData& e : td.elements)
    output.out() << element_display(e.tuple, e.word) << "\n";
  return 0;
}

int run_paths(const Engine& eng, const AffElt& w, Output& output) {
  ElemData e = collect_element(eng, w);
  const CoefficientReport& rep = eng.report(w);
  output.out() << "paths " << group_name(eng.datum())
               << " mu=" << tuple_string(coweight_to_tuple(eng.datum(), eng.mu()))
               << "\n";
  output.out() << "w = " << element_display(e.tuple, e.word) << "\n";
  output.out() << "admissible " << (rep.admissible ? "yes" : "no") << "\n";
  output.out() << "length " << rep.length << "\n";
  output.out() << "codim " << rep.codim << "\n";
  output.out() << report_block(e);
  return 0;
}

int run_coeff(const Engine& eng, const AffElt& w, std::optional<long> q,
              std::optional<long> r, const std::string& s_text,
              long assume_mod, Output& output) {
  if (q && r && !s_text.empty()) {
    IVec s = parse_tuple(s_text);
    Rat value = eng.coefficient(w, s, Int(*q), *r);
    output.out() << "coeff " << group_name(eng.datum())
                 << " mu=" << tuple_string(coweight_to_tuple(eng.datum(), eng.mu()))
                 << " w=" << element_string(eng, w) << " q=" << *q
                 << " r=" << *r << " s=" << tuple_string(s) << "\n";
    output.out() << "value " << value.get_str() << "\n";
    return 0;
  }
  if (q && r) {
    output.out() << render_scan(eng, w, Int(*q), *r);
    return 0;
  }
  if (q || r || !s_text.empty())
    throw std::invalid_argument(
        "coeff needs --q, --r and --s for a value, --q and --r for a region "
        "scan, or none of them for the symbolic cases");
  output.out() << render_cases(eng, w, assume_mod);
  return 0;
}

int run_table(const Engine& eng, const std::string& format, int jobs,
              Output& output) {
  if (format != "text" && format != "json")
    throw std::invalid_argument("format must be text or json");
  TableData td = collect_table(eng, jobs);
  output.out() << (format == "json" ? render_json(td) : render_table_text(td));
  return 0;
}

int run_verify(const Engine& eng, long q, const std::vector<long>& rs,
               int jobs, Output& output) {
  const int d = eng.rank_d();
  const Int m = Int(q) - 1;
  Int space = 1;
  for (int i = 0; i < d; ++i) space *= m;
  const std::vector<AffElt>& adm = eng.admissibles();

  auto sweep_element = [&](const Engine& local, const AffElt& w,
                           std::string& mismatches) -> long {
    long checked = 0;
    IVec s(d, 0);
    while (true) {
      for (long r : rs) {
        Rat lhs = local.coefficient(w, s, Int(q), r);
        Rat rhs = local.bruteforce(w, s, Int(q), r);
        ++checked;
        if (lhs != rhs) {
          mismatches += "mismatch w=" + element_string(local, w) +
                        " s=" + tuple_string(s) + " r=" + std::to_string(r) +
                        " formula=" + lhs.get_str() +
                        " bruteforce=" + rhs.get_str() + "\n";
        }
      }
      int pos = 0;
      while (pos < d && s[static_cast<size_t>(pos)] == m - 1) {
        s[static_cast<size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == d) break;
      s[static_cast<size_t>(pos)] += 1;
    }
    return checked;
  };

  std::vector<std::string> mismatch_by_elt(adm.size());
  std::vector<long> checked_by_elt(adm.size(), 0);
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(adm.size())));
  if (workers <= 1) {
    for (size_t i = 0; i < adm.size(); ++i)
      checked_by_elt[i] = sweep_element(eng, adm[i], mismatch_by_elt[i]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    const RootDatum& rd = eng.datum();
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t]() {
        Engine local(rd.family, rd.n, eng.mu(), eng.ordering_spec());
        for (size_t i = static_cast<size_t>(t); i < adm.size();
             i += static_cast<size_t>(workers))
          checked_by_elt[i] = sweep_element(local, adm[i], mismatch_by_elt[i]);
      });
    for (std::thread& th : pool) th.join();
  }

  long total = 0;
  std::string mismatches;
  for (size_t i = 0; i < adm.size(); ++i) {
    total += checked_by_elt[i];
    mismatches += mismatch_by_elt[i];
  }
  std::string r_list;
  for (size_t i = 0; i < rs.size(); ++i)
    r_list += (i ? "," : "") + std::to_string(rs[i]);
  output.out() << "verify " << group_name(eng.datum())
               << " mu=" << tuple_string(coweight_to_tuple(eng.datum(), eng.mu()))
               << " q=" << q << " r={" << r_list << "}\n";
  output.out() << mismatches;
  if (!mismatches.empty()) {
    output.out() << "FAILED\n";
    return 2;
  }
  output.out() << "checked " << adm.size() << " elements x "
               << space.get_str() << " exponent vectors x " << rs.size()
               << " powers: " << total << " comparisons, all equal\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact coefficients of the depth-r test function"};
  app.require_subcommand(1);

  std::string group, mu_text, ordering = "paper", out_path;
  std::string lam_text, word_text, s_text, format = "text", assume_text;
  std::string r_text = "1,2";
  std::optional<long> q_opt, r_opt;
  long q_verify = 0;
  int jobs = 1;
  bool clusters = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--group", group, "gl2..gl6 or gsp4, gsp6")->required();
    cmd->add_option("--mu", mu_text,
                    "dominant minuscule coweight, comma separated (epsilon "
                    "coordinates for gsp)")
        ->required();
    cmd->add_option("--ordering", ordering,
                    "reflection ordering preset (paper, lex, rev) or an "
                    "explicit longest-element word");
    cmd->add_option("--out", out_path, "write output to this file");
  };

  CLI::App* adm = app.add_subcommand("adm", "list the admissible set");
  add_common(adm);
  adm->add_flag("--clusters", clusters,
                "group the listing by length and report shape");

  CLI::App* paths =
      app.add_subcommand("paths", "path statistics for one element");
  add_common(paths);
  paths->add_option("--lam", lam_text, "translation part of the element")
      ->required();
  paths->add_option("--word", word_text,
                    "word in the simple reflections (default empty)");

  CLI::App* coeff = app.add_subcommand(
      "coeff", "coefficient of one element: value, scan, or symbolic cases");
  add_common(coeff);
  coeff->add_option("--lam", lam_text, "translation part of the element")
      ->required();
  coeff->add_option("--word", word_text,
                    "word in the simple reflections (default empty)");
  coeff->add_option("--q", q_opt, "residue field size");
  coeff->add_option("--r", r_opt, "norm power");
  coeff->add_option("--s", s_text, "exponent residues, comma separated");
  coeff->add_option("--assume", assume_text,
                    "congruence hypothesis q=1modM for symbolic output");

  CLI::App* table =
      app.add_subcommand("table", "full coefficient table for the group");
  add_common(table);
  table->add_option("--format", format, "text or json");
  table->add_option("--jobs", jobs, "parallel workers")
      ->check(CLI::Range(1, 1024));
  table->add_option("--assume", assume_text,
                    "accepted for symmetry with coeff; tables are exact");

  CLI::App* verify = app.add_subcommand(
      "verify", "compare the formula against the character-sum cross-check");
  add_common(verify);
  verify->add_option("--q", q_verify, "residue field size")->required();
  verify->add_option("--r", r_text, "norm powers to sweep (default 1,2)");
  verify->add_option("--jobs", jobs, "parallel workers")
      ->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    GroupSpec gs = parse_group(group);
    IVec mu = coweight_from_tuple(build_root_datum(gs.family, gs.n),
                                  parse_tuple(mu_text));
    Engine eng(gs.family, gs.n, std::move(mu), ordering);
    Output output(out_path);

    if (app.got_subcommand(adm)) return run_adm(eng, clusters, output);
    if (app.got_subcommand(paths))
      return run_paths(eng, element_from_input(eng, lam_text, word_text),
                       output);
    if (app.got_subcommand(coeff)) {
      long assume_mod = assume_text.empty() ? 0 : parse_assume(assume_text);
      return run_coeff(eng, element_from_input(eng, lam_text, word_text),
                       q_opt, r_opt, s_text, assume_mod, output);
    }
    if (app.got_subcommand(table)) {
      if (!assume_text.empty()) parse_assume(assume_text);
      return run_table(eng, format, jobs, output);
    }
    if (app.got_subcommand(verify))
      return run_verify(eng, q_verify, parse_r_list(r_text), jobs, output);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
