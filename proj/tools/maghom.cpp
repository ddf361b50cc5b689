// maghom: magnitude homology of finite graphs from the command line.
//
// Exit codes: 0 success/pass, 1 check failure, 2 inapplicable hypothesis,
// 3 usage error, 4 resource guard, 5 internal error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maghom/dsl.hpp"
#include "maghom/render.hpp"
#include "maghom/verify.hpp"

namespace fs = std::filesystem;
using namespace maghom;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFail = 1;
constexpr int kExitInapplicable = 2;
constexpr int kExitUsage = 3;
constexpr int kExitResource = 4;
constexpr int kExitInternal = 5;

struct EngineFlags {
  int lmax = 6;
  bool torsion = false;
  std::string method = "auto";
  long torsion_limit = 5000;
  long max_trails = 10'000'000;
  int jobs = 0;
  std::uint64_t seed = HomologyOptions{}.seed;
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f, bool with_torsion) {
  cmd->add_option("--lmax", f.lmax, "largest level l to compute")
      ->capture_default_str();
  if (with_torsion) {
    cmd->add_flag("--torsion", f.torsion,
                  "compute torsion via the Smith normal form");
    cmd->add_option("--torsion-limit", f.torsion_limit,
                    "Smith form guard on min(rows, cols); above it the "
                    "torsion cell is reported as not computed (cap 20000)")
        ->capture_default_str();
  }
  cmd->add_option("--method", f.method,
                  "rank method: auto (two-prime modular with exact "
                  "escalation), exact, or modular")
      ->check(CLI::IsMember({"auto", "exact", "modular"}))
      ->capture_default_str();
  cmd->add_option("--max-trails", f.max_trails,
                  "budget on materialized trails across all levels")
      ->capture_default_str();
  cmd->add_option("--jobs", f.jobs, "worker threads, 0 = hardware")
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "seed for modular prime selection")
      ->capture_default_str();
}

HomologyOptions to_options(const EngineFlags& f) {
  HomologyOptions o;
  o.lmax = f.lmax;
  o.torsion = f.torsion;
  o.method = f.method == "exact"     ? RankMethod::exact
             : f.method == "modular" ? RankMethod::modular
                                     : RankMethod::automatic;
  o.torsion_limit = f.torsion_limit;
  o.max_trails = f.max_trails;
  o.jobs = f.jobs;
  o.seed = f.seed;
  return o;
}

struct CacheFlags {
  bool no_cache = false;
  std::string dir;
};

void add_cache_flags(CLI::App* cmd, CacheFlags& c) {
  cmd->add_flag("--no-cache", c.no_cache, "skip the on-disk result cache");
  cmd->add_option("--cache-dir", c.dir,
                  "cache directory (default $MAGHOM_CACHE_DIR, else "
                  "$XDG_CACHE_HOME/maghom, else ~/.cache/maghom)");
}

std::optional<ResultCache> resolve_cache(const CacheFlags& c) {
  if (c.no_cache) return std::nullopt;
  if (!c.dir.empty()) return ResultCache(c.dir);
  return ResultCache::from_environment();
}

void add_format_flag(CLI::App* cmd, std::string& format,
                     bool with_csv = true) {
  auto values = with_csv ? std::vector<std::string>{"pretty", "csv", "json"}
                         : std::vector<std::string>{"pretty", "json"};
  cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember(values))
      ->capture_default_str();
}

std::string graph_summary(const std::string& spec, const Graph& g) {
  return spec + "  (n=" + std::to_string(g.vertex_count()) +
         ", m=" + std::to_string(g.edge_count()) + ")";
}

// Remediation messages for partially computed tables; returns the exit code.
int finish_table_exit(const BigradedGroup& h, bool torsion_requested) {
  if (!h.ranks_complete()) {
    std::cerr << "maghom: some levels exceeded the trail budget and were "
                 "skipped; raise --max-trails to compute them\n";
    return kExitResource;
  }
  if (torsion_requested && h.has_torsion_gaps()) {
    std::cerr << "maghom: some torsion cells exceeded the Smith form guard; "
                 "raise --torsion-limit (hard cap 20000) to compute them\n";
    return kExitResource;
  }
  return kExitPass;
}

int run_homology(const std::string& spec, const EngineFlags& f,
                 const CacheFlags& cf, const std::string& format) {
  Graph g = resolve_graph_spec(spec);
  HomologyOptions opt = to_options(f);
  std::optional<ResultCache> cache = resolve_cache(cf);
  std::optional<BigradedGroup> h;
  if (cache) h = cache->load(g, opt);
  bool cached = h.has_value();
  if (!h) {
    h = compute_homology(g, opt);
    if (cache) cache->store(g, opt, *h);
  }

  if (format == "json") {
    std::cout << homology_document(g, *h).dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << homology_table_csv(*h);
  } else {
    std::cout << "graph: " << graph_summary(spec, g) << '\n'
              << "lmax " << opt.lmax << ", method " << f.method
              << ", torsion " << (opt.torsion ? "on" : "off")
              << (cached ? ", cached" : "") << "\n\n"
              << homology_table_text(*h);
    if (!h->ranks_complete())
      std::cout << "\n? = rank not computed (trail budget)\n";
    if (opt.torsion && h->has_torsion_gaps())
      std::cout << "\n+? = torsion not computed (Smith form guard)\n";
  }
  return finish_table_exit(*h, opt.torsion);
}

int run_chains(const std::string& spec, int lmax, const std::string& format) {
  Graph g = resolve_graph_spec(spec);
  if (lmax < 0) throw std::invalid_argument("--lmax must be nonnegative");
  auto counts = chain_count_table(g, DistMatrix(g), lmax);
  if (format == "json")
    std::cout << chains_document(g, counts).dump(2) << '\n';
  else if (format == "csv")
    std::cout << chain_table_csv(counts);
  else
    std::cout << "graph: " << graph_summary(spec, g) << '\n'
              << "chain group sizes |MC_{k,l}|, lmax " << lmax << "\n\n"
              << chain_table_text(counts);
  return kExitPass;
}

int run_magnitude(const std::string& spec, const EngineFlags& f,
                  const std::string& by, const std::string& format) {
  Graph g = resolve_graph_spec(spec);
  int lmax = f.lmax;
  std::vector<std::pair<std::string, PowerSeries>> series;
  if (by == "counting" || by == "all")
    series.emplace_back("counting", magnitude_by_counting(g, lmax));
  if (by == "inverse" || by == "all")
    series.emplace_back("inverse", magnitude_by_inverse_series(g, lmax));
  if (by == "euler" || by == "all") {
    HomologyOptions opt = to_options(f);
    opt.torsion = false;
    BigradedGroup h = compute_homology(g, opt);
    if (!h.ranks_complete()) {
      std::cerr << "maghom: homology ranks needed for the Euler series were "
                   "skipped; raise --max-trails\n";
      return kExitResource;
    }
    series.emplace_back("euler", magnitude_by_euler(h));
  }

  bool agree = true;
  for (std::size_t i = 1; i < series.size(); ++i)
    agree = agree && series[i].second == series[0].second;

  if (format == "json") {
    nlohmann::json doc = {{"schema", "maghom/1"},
                          {"kind", "magnitude"},
                          {"graph", graph_json(g)},
                          {"lmax", lmax}};
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [name, ps] : series) s[name] = series_json(ps);
    doc["series"] = s;
    doc["agree"] = series.size() > 1 ? nlohmann::json(agree) : nullptr;
    std::cout << doc.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "l";
    for (const auto& [name, ps] : series) std::cout << ',' << name;
    std::cout << '\n';
    for (int l = 0; l <= lmax; ++l) {
      std::cout << l;
      for (const auto& [name, ps] : series) std::cout << ',' << ps.coeffs[l];
      std::cout << '\n';
    }
  } else {
    std::cout << "graph: " << graph_summary(spec, g) << '\n';
    for (const auto& [name, ps] : series) {
      std::cout << name << ':' << std::string(9 - name.size(), ' ');
      for (int l = 0; l <= lmax; ++l)
        std::cout << (l ? ", " : "") << ps.coeffs[l].str();
      std::cout << '\n';
    }
    if (series.size() > 1)
      std::cout << "agreement: " << (agree ? "yes" : "NO") << '\n';
  }
  if (!agree) {
    std::cerr << "maghom: magnitude series methods disagree; this is an "
                 "internal error, please report it\n";
    return kExitInternal;
  }
  return kExitPass;
}

int finish_report(const CheckReport& rep, const std::string& format,
                  bool verbose) {
  if (format == "json")
    std::cout << report_json(rep).dump(2) << '\n';
  else
    std::cout << report_text(rep, verbose);
  switch (rep.verdict) {
    case CheckReport::Verdict::pass: return kExitPass;
    case CheckReport::Verdict::fail: return kExitCheckFail;
    case CheckReport::Verdict::inapplicable: return kExitInapplicable;
  }
  return kExitInternal;
}

// Sweep over the built-in corpus (plus an optional directory of edge-list
// files), reporting torsion finds or diagonality. Informational: exit 0.
int run_sweep(const std::string& corpus_dir, int max_vertices,
              const EngineFlags& f, const std::string& report,
              const std::string& format) {
  std::vector<std::pair<std::string, Graph>> graphs;
  for (const auto& [name, g] : builtin_corpus())
    if (g.vertex_count() <= max_vertices) graphs.emplace_back(name, g);
  if (!corpus_dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus_dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const fs::path& p : files) {
      Graph g = resolve_graph_spec(p.string());
      if (g.vertex_count() <= max_vertices)
        graphs.emplace_back(p.filename().string(), g);
    }
  }

  nlohmann::json jgraphs = nlohmann::json::array();
  bool any_torsion_found = false;
  for (const auto& [name, g] : graphs) {
    nlohmann::json row = {{"name", name},
                          {"n", g.vertex_count()},
                          {"m", g.edge_count()}};
    if (report == "torsion") {
      EngineFlags ef = f;
      ef.torsion = true;
      BigradedGroup h = compute_homology(g, to_options(ef));
      nlohmann::json finds = nlohmann::json::array();
      for (int l = 0; l <= h.lmax(); ++l)
        for (int k = 0; k <= l; ++k) {
          const CellGroup& c = h.cell(k, l);
          if (c.torsion && !c.torsion->empty()) {
            nlohmann::json factors = nlohmann::json::array();
            for (const Int& d : *c.torsion) factors.push_back(int_json(d));
            finds.push_back({{"k", k}, {"l", l}, {"factors", factors}});
          }
        }
      row["torsion_found"] = finds;
      row["complete"] = h.ranks_complete() && !h.has_torsion_gaps();
      if (!finds.empty()) any_torsion_found = true;
      if (format == "pretty") {
        std::cout << name << ": "
                  << (finds.empty() ? "no torsion" : finds.dump());
        if (!row["complete"].get<bool>())
          std::cout << "  (incomplete: resource guard)";
        std::cout << '\n';
      }
    } else {
      CheckReport rep = check_diagonal(g, f.lmax, to_options(f));
      row["diagonal"] = rep.passed();
      if (!rep.passed()) {
        for (const CellComparison& c : rep.cells)
          if (!c.equal && c.k >= 0) {
            row["first_off_diagonal"] = {{"k", c.k}, {"l", c.l},
                                         {"group", c.rhs}};
            break;
          }
      }
      if (format == "pretty") {
        std::cout << name << ": "
                  << (rep.passed() ? "diagonal" : "non-diagonal");
        if (!rep.passed() && row.contains("first_off_diagonal"))
          std::cout << "  (first off-diagonal cell MH_{"
                    << row["first_off_diagonal"]["k"] << ","
                    << row["first_off_diagonal"]["l"] << "} = "
                    << row["first_off_diagonal"]["group"]
                           .get<std::string>() << ")";
        std::cout << '\n';
      }
    }
    jgraphs.push_back(std::move(row));
  }

  if (format == "json") {
    std::cout << nlohmann::json{{"schema", "maghom/1"},
                                {"kind", "sweep"},
                                {"report", report},
                                {"lmax", f.lmax},
                                {"graphs", jgraphs}}
                     .dump(2)
              << '\n';
  } else if (report == "torsion") {
    std::cout << (any_torsion_found
                      ? "torsion found; see the rows above"
                      : "no torsion found in " +
                            std::to_string(graphs.size()) +
                            " graphs at lmax " + std::to_string(f.lmax))
              << '\n';
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"magnitude homology of finite graphs"};
  app.require_subcommand(1);

  // homology -------------------------------------------------------------
  auto* cmd_hom = app.add_subcommand(
      "homology", "bigraded homology table MH_{k,l} (ranks, torsion)");
  std::string hom_spec;
  EngineFlags hom_flags;
  CacheFlags hom_cache;
  std::string hom_format = "pretty";
  cmd_hom->add_option("graph", hom_spec,
                      "graph expression, LCF code, or edge-list file")
      ->required();
  add_engine_flags(cmd_hom, hom_flags, true);
  add_cache_flags(cmd_hom, hom_cache);
  add_format_flag(cmd_hom, hom_format);

  // chains ---------------------------------------------------------------
  auto* cmd_ch = app.add_subcommand(
      "chains", "chain group sizes |MC_{k,l}| (fast, counts only)");
  std::string ch_spec;
  int ch_lmax = 6;
  std::string ch_format = "pretty";
  cmd_ch->add_option("graph", ch_spec,
                     "graph expression, LCF code, or edge-list file")
      ->required();
  cmd_ch->add_option("--lmax", ch_lmax, "largest level l")
      ->capture_default_str();
  add_format_flag(cmd_ch, ch_format);

  // magnitude ------------------------------------------------------------
  auto* cmd_mag = app.add_subcommand(
      "magnitude", "magnitude power series coefficients");
  std::string mag_spec, mag_by = "all", mag_format = "pretty";
  EngineFlags mag_flags;
  cmd_mag->add_option("graph", mag_spec,
                      "graph expression, LCF code, or edge-list file")
      ->required();
  cmd_mag->add_option("--by", mag_by,
                      "series derivation: counting (alternating chain "
                      "counts), inverse (inverse similarity matrix), euler "
                      "(homology ranks), or all with an agreement verdict")
      ->check(CLI::IsMember({"counting", "inverse", "euler", "all"}))
      ->capture_default_str();
  add_engine_flags(cmd_mag, mag_flags, false);
  add_format_flag(cmd_mag, mag_format);

  // verify ---------------------------------------------------------------
  auto* cmd_ver = app.add_subcommand(
      "verify", "machine-check a structural theorem on given inputs");
  cmd_ver->require_subcommand(1);
  struct VerifyCommon {
    EngineFlags flags;
    std::string format = "pretty";
    bool verbose = false;
  };
  auto add_common = [](CLI::App* c, VerifyCommon& v, bool with_torsion) {
    add_engine_flags(c, v.flags, with_torsion);
    add_format_flag(c, v.format, false);
    c->add_flag("--verbose", v.verbose, "list passing comparisons too");
  };

  std::string vg1, vg2;
  VerifyCommon vc_diag, vc_add, vc_kun, vc_mv, vc_tree, vc_join, vc_cyc,
      vc_sup;
  auto* v_diag = cmd_ver->add_subcommand(
      "diagonal", "off-diagonal cells vanish; Euler series matches the "
                  "alternating diagonal");
  std::string diag_spec;
  v_diag->add_option("graph", diag_spec, "graph to check")->required();
  add_common(v_diag, vc_diag, true);

  auto* v_add = cmd_ver->add_subcommand(
      "disjoint-additivity", "MH(G + H) = MH(G) ⊕ MH(H) cellwise");
  std::string add_g, add_h;
  v_add->add_option("G", add_g, "first summand")->required();
  v_add->add_option("H", add_h, "second summand")->required();
  add_common(v_add, vc_add, false);

  auto* v_kun = cmd_ver->add_subcommand(
      "kunneth", "box-product table equals the convolution of the factors");
  std::string kun_g, kun_h;
  v_kun->add_option("G", kun_g, "first factor")->required();
  v_kun->add_option("H", kun_h, "second factor")->required();
  add_common(v_kun, vc_kun, false);

  auto* v_mv = cmd_ver->add_subcommand(
      "mayer-vietoris",
      "MH(G) ⊕ MH(H) = MH(X) ⊕ MH(G∩H) for a projecting decomposition");
  std::string mv_spec;
  std::vector<int> mv_gset, mv_hset;
  v_mv->add_option("graph", mv_spec, "ambient graph X")->required();
  v_mv->add_option("--gset", mv_gset, "vertex list of G (comma separated)")
      ->required()
      ->delimiter(',');
  v_mv->add_option("--hset", mv_hset, "vertex list of H (comma separated)")
      ->required()
      ->delimiter(',');
  add_common(v_mv, vc_mv, false);

  auto* v_tree = cmd_ver->add_subcommand(
      "tree", "MH_{0,0} = n, MH_{l,l} = 2(n-1), zero elsewhere, no torsion");
  std::string tree_spec;
  v_tree->add_option("graph", tree_spec, "tree to check")->required();
  add_common(v_tree, vc_tree, false);

  auto* v_join = cmd_ver->add_subcommand(
      "join-diagonal", "the join of two nonempty graphs is diagonal");
  std::string join_g, join_h;
  v_join->add_option("G", join_g, "first factor")->required();
  v_join->add_option("H", join_h, "second factor")->required();
  add_common(v_join, vc_join, true);

  auto* v_cyc = cmd_ver->add_subcommand(
      "cyclic", "rank table of C_n against the conjectured diagonal pattern");
  int cyc_n = 5;
  v_cyc->add_option("n", cyc_n, "cycle length (n >= 3)")->required();
  add_common(v_cyc, vc_cyc, false);

  auto* v_sup = cmd_ver->add_subcommand(
      "support-bounds", "cells outside the diameter support bounds vanish");
  std::string sup_spec;
  v_sup->add_option("graph", sup_spec, "graph to check")->required();
  add_common(v_sup, vc_sup, true);

  // sweep ------------------------------------------------------------------
  auto* cmd_sw = app.add_subcommand(
      "sweep", "corpus survey: torsion finds or diagonality (informational)");
  std::string sw_corpus, sw_report = "torsion", sw_format = "pretty";
  int sw_max_vertices = 8;
  EngineFlags sw_flags;
  sw_flags.lmax = 4;
  cmd_sw->add_option("--corpus", sw_corpus,
                     "directory of edge-list files to add to the built-in "
                     "corpus");
  cmd_sw->add_option("--max-vertices", sw_max_vertices,
                     "skip graphs with more vertices")
      ->capture_default_str();
  cmd_sw->add_option("--lmax", sw_flags.lmax, "largest level l")
      ->capture_default_str();
  cmd_sw->add_option("--report", sw_report, "what to survey")
      ->check(CLI::IsMember({"torsion", "diagonal"}))
      ->capture_default_str();
  add_format_flag(cmd_sw, sw_format, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_hom->parsed())
      return run_homology(hom_spec, hom_flags, hom_cache, hom_format);
    if (cmd_ch->parsed()) return run_chains(ch_spec, ch_lmax, ch_format);
    if (cmd_mag->parsed())
      return run_magnitude(mag_spec, mag_flags, mag_by, mag_format);
    if (cmd_ver->parsed()) {
      if (v_diag->parsed())
        return finish_report(check_diagonal(resolve_graph_spec(diag_spec),
                                            vc_diag.flags.lmax,
                                            to_options(vc_diag.flags)),
                             vc_diag.format, vc_diag.verbose);
      if (v_add->parsed())
        return finish_report(
            check_disjoint_additivity(resolve_graph_spec(add_g),
                                      resolve_graph_spec(add_h),
                                      vc_add.flags.lmax,
                                      to_options(vc_add.flags)),
            vc_add.format, vc_add.verbose);
      if (v_kun->parsed())
        return finish_report(
            check_kunneth(resolve_graph_spec(kun_g), resolve_graph_spec(kun_h),
                          vc_kun.flags.lmax, to_options(vc_kun.flags)),
            vc_kun.format, vc_kun.verbose);
      if (v_mv->parsed())
        return finish_report(
            check_mayer_vietoris(resolve_graph_spec(mv_spec), mv_gset, mv_hset,
                                 vc_mv.flags.lmax, to_options(vc_mv.flags)),
            vc_mv.format, vc_mv.verbose);
      if (v_tree->parsed())
        return finish_report(check_tree_formula(resolve_graph_spec(tree_spec),
                                                vc_tree.flags.lmax,
                                                to_options(vc_tree.flags)),
                             vc_tree.format, vc_tree.verbose);
      if (v_join->parsed())
        return finish_report(
            check_join_diagonal(resolve_graph_spec(join_g),
                                resolve_graph_spec(join_h),
                                vc_join.flags.lmax, to_options(vc_join.flags)),
            vc_join.format, vc_join.verbose);
      if (v_cyc->parsed())
        return finish_report(check_cyclic_patterns(cyc_n, vc_cyc.flags.lmax,
                                                   to_options(vc_cyc.flags)),
                             vc_cyc.format, vc_cyc.verbose);
      if (v_sup->parsed())
        return finish_report(check_support_bounds(resolve_graph_spec(sup_spec),
                                                  vc_sup.flags.lmax,
                                                  to_options(vc_sup.flags)),
                             vc_sup.format, vc_sup.verbose);
    }
    if (cmd_sw->parsed())
      return run_sweep(sw_corpus, sw_max_vertices, sw_flags, sw_report,
                       sw_format);
    std::cerr << "maghom: no subcommand\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "maghom: parse error at line " << e.line << ", column "
              << e.col << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "maghom: resource guard: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "maghom: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "maghom: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "maghom: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
