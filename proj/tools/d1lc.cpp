// d1lc: a desk-scale lab for randomized (deg+1)-list-coloring.
//
// Subcommands: gen (build an instance file), run (seeded algorithm trials to
// CSV), verify (validate an instance and optionally a coloring), acd
// (decompose and report node classes), sparsify (palette sparsification
// trials), probe (structural Monte-Carlo probes).
//
// Exit codes: 0 all checks passed, 1 statistical failure, 2 invariant or
// protocol violation (including bad inputs).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "d1lc/acd.hpp"
#include "d1lc/coloring.hpp"
#include "d1lc/engine.hpp"
#include "d1lc/experiment.hpp"
#include "d1lc/gen.hpp"
#include "d1lc/graph.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/ledger.hpp"
#include "d1lc/oracle.hpp"
#include "d1lc/probes.hpp"
#include "d1lc/rng.hpp"
#include "d1lc/sparsify.hpp"

namespace {

using namespace d1lc;

constexpr int kExitOk = 0;
constexpr int kExitStatistical = 1;
constexpr int kExitViolation = 2;

// Output sink: --out file or stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

// "3/4" or "3" as an exact rational
Rat parse_rat(const std::string& s) {
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s));
    return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("expected an integer or num/den rational: " + s);
  }
}

// --- instance sources --------------------------------------------------------

// Options shared by every subcommand that needs an instance: either a file
// or a named generator family with its parameters.
struct SourceOpts {
  std::string in_file;
  std::string family = "gnp";
  std::string scheme = "random";
  int64_t space = 0;  // palette scheme parameter; 0 picks a safe default
  int32_t n = 2000;
  double avg_degree = 60;
  int32_t degree = 400;
  int32_t mid_degree = 20;
  int32_t partner_degree = 8;
  int32_t k = 50;
  int32_t count = 2;
  int32_t big = 600;
  int32_t small = 40;
  int32_t boosted = 120;
  int32_t apex = 400;
  int32_t baits = 150;
  int32_t mids = 60;
  int32_t sats = 4;
  int32_t sat_n = 30;
  double nb_prob = 0.75;
  uint64_t seed = 1;
};

void add_source_options(CLI::App* cmd, SourceOpts& src, bool with_in) {
  if (with_in) {
    cmd->add_option("--in", src.in_file, "instance file (overrides --family)");
  }
  cmd->add_option("--family", src.family,
                  "generator family: gnp, regular, cliques, apex-cliques, "
                  "clique-pair, heavy-apex, tough-apex, perturbed-cliques, "
                  "clique-satellites, planted-balanced");
  cmd->add_option("--scheme", src.scheme,
                  "palette scheme for plain graph families: identical, "
                  "disjoint, shifted, random");
  cmd->add_option("--space", src.space,
                  "palette scheme parameter (block size, shift step, or color "
                  "space size; 0 = safe default)");
  cmd->add_option("--n", src.n, "node count (gnp, regular, clique-satellites)");
  cmd->add_option("--avg-degree", src.avg_degree, "gnp average degree");
  cmd->add_option("--degree", src.degree,
                  "apex degree (heavy-apex, tough-apex, planted-balanced) or "
                  "regular degree");
  cmd->add_option("--mid-degree", src.mid_degree,
                  "middle-layer degree (heavy-apex, tough-apex)");
  cmd->add_option("--partner-degree", src.partner_degree,
                  "tough-apex middle-to-middle degree");
  cmd->add_option("--k", src.k, "clique size (cliques, apex-cliques, "
                  "perturbed-cliques)");
  cmd->add_option("--count", src.count, "clique count for those families");
  cmd->add_option("--big", src.big, "clique-pair big clique size");
  cmd->add_option("--small", src.small, "clique-pair satellite clique size");
  cmd->add_option("--boosted", src.boosted,
                  "clique-pair members carrying a satellite clique");
  cmd->add_option("--apex", src.apex,
                  "clique-pair member carrying the private clique");
  cmd->add_option("--baits", src.baits, "clique-satellites two-edge members");
  cmd->add_option("--mids", src.mids, "clique-satellites one-edge members");
  cmd->add_option("--sats", src.sats, "clique-satellites satellite count");
  cmd->add_option("--sat-n", src.sat_n, "clique-satellites satellite size");
  cmd->add_option("--nb-prob", src.nb_prob,
                  "planted-balanced neighborhood edge probability");
  cmd->add_option("--seed", src.seed, "instance seed");
}

PaletteScheme scheme_from_name(const std::string& name) {
  if (name == "identical") return PaletteScheme::Identical;
  if (name == "disjoint") return PaletteScheme::DisjointBlocks;
  if (name == "shifted") return PaletteScheme::Shifted;
  if (name == "random") return PaletteScheme::RandomFromSpace;
  throw std::runtime_error("unknown palette scheme: " + name);
}

D1lcInstance instance_for_graph(Graph g, const SourceOpts& src) {
  PaletteScheme scheme = scheme_from_name(src.scheme);
  int64_t param = src.space;
  if (param == 0) {
    // safe defaults: random sampling needs room above every palette size,
    // shifting needs a positive step, identical blocks auto-size at 0
    if (scheme == PaletteScheme::RandomFromSpace)
      param = 2 * (int64_t(g.max_degree()) + 1);
    else if (scheme == PaletteScheme::Shifted)
      param = 1;
  }
  auto pals = make_palettes(g, scheme, param, hash_combine(src.seed, 0x9a));
  return make_instance(std::move(g), std::move(pals));
}

D1lcInstance build_instance(const SourceOpts& src) {
  if (!src.in_file.empty()) return load_instance_file(src.in_file);
  const std::string& f = src.family;
  if (f == "gnp")
    return instance_for_graph(gnp(src.n, src.avg_degree, src.seed), src);
  if (f == "regular")
    return instance_for_graph(random_regular(src.n, src.degree, src.seed), src);
  if (f == "cliques")
    return instance_for_graph(union_of_cliques(src.k, src.count), src);
  if (f == "apex-cliques") return apex_cliques(src.k, src.count);
  if (f == "clique-pair")
    return clique_pair(src.big, src.small, src.boosted, src.apex);
  if (f == "heavy-apex") return heavy_apex(src.degree, src.mid_degree);
  if (f == "tough-apex")
    return tough_apex(src.degree, src.mid_degree, src.partner_degree, src.seed);
  if (f == "perturbed-cliques") return perturbed_cliques(src.k, src.count);
  if (f == "clique-satellites")
    return clique_satellites(src.n, src.baits, src.mids, src.sats, src.sat_n);
  if (f == "planted-balanced")
    return planted_balanced(src.degree, src.nb_prob, src.seed);
  throw std::runtime_error("unknown generator family: " + f);
}

// --- ledger options ----------------------------------------------------------

struct LedgerOpts {
  std::string profile = "desk";
  std::string eps_acd, eps_spa, eps_ub, eps_hat, eps_hc;
  double ell_exponent = 0;  // 0 = keep profile value
  int64_t d_min = 0;        // 0 = keep profile value
};

void add_ledger_options(CLI::App* cmd, LedgerOpts& led) {
  cmd->add_option("--profile", led.profile, "epsilon profile: desk, faithful");
  cmd->add_option("--eps-acd", led.eps_acd, "override eps_acd (num/den)");
  cmd->add_option("--eps-spa", led.eps_spa, "override eps_spa (num/den)");
  cmd->add_option("--eps-ub", led.eps_ub, "override eps_ub (num/den)");
  cmd->add_option("--eps-hat", led.eps_hat, "override eps_hat (num/den)");
  cmd->add_option("--eps-hc", led.eps_hc, "override eps_hc (num/den)");
  cmd->add_option("--ell-exponent", led.ell_exponent,
                  "override the ell(Delta) exponent");
  cmd->add_option("--d-min", led.d_min,
                  "override the smallest head-on degree class");
}

EpsilonLedger build_ledger(const LedgerOpts& led) {
  EpsilonLedger eps;
  if (led.profile == "desk") eps = EpsilonLedger::desk();
  else if (led.profile == "faithful") eps = EpsilonLedger::faithful();
  else throw std::runtime_error("unknown profile: " + led.profile);
  if (!led.eps_acd.empty()) eps.eps_acd = parse_rat(led.eps_acd);
  if (!led.eps_spa.empty()) eps.eps_spa = parse_rat(led.eps_spa);
  if (!led.eps_ub.empty()) eps.eps_ub = parse_rat(led.eps_ub);
  if (!led.eps_hat.empty()) eps.eps_hat = parse_rat(led.eps_hat);
  if (!led.eps_hc.empty()) eps.eps_hc = parse_rat(led.eps_hc);
  if (led.ell_exponent > 0) eps.ell_exponent = led.ell_exponent;
  if (led.d_min > 0) eps.degree_floor = led.d_min;
  return eps;
}

// --- subcommand bodies -------------------------------------------------------

int cmd_gen(const SourceOpts& src, const std::string& out) {
  D1lcInstance inst = build_instance(src);
  emit(out, instance_to_string(inst));
  return kExitOk;
}

int cmd_run(const SourceOpts& src, const LedgerOpts& led,
            const std::string& algo, const std::string& variant, double c_s,
            int64_t trials, int threads, uint64_t run_seed,
            const std::string& out) {
  D1lcInstance inst = build_instance(src);
  ExperimentConfig cfg;
  cfg.algo = algo_from_name(algo);
  cfg.eps = build_ledger(led);
  cfg.seed = run_seed;
  cfg.trials = trials;
  cfg.threads = threads;
  cfg.sparsify_c = c_s;
  if (variant == "unevenness")
    cfg.pipeline.variant = ClassifierVariant::Unevenness;
  else if (variant != "discrepancy")
    throw std::runtime_error("unknown classifier variant: " + variant);
  ExperimentResult res = run_experiment(inst, cfg);
  emit(out, experiment_csv(res));
  if (res.conflicts != 0) {
    std::cerr << "conflicts detected: " << res.conflicts << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_verify(const std::string& in_file, const std::string& colors_file,
               bool allow_thin, bool partial, const std::string& out) {
  D1lcInstance inst = load_instance_file(in_file, !allow_thin);
  std::string why;
  bool d1 = inst.deg_plus_one(&why);
  std::ostringstream csv;
  csv << "n,m,max_degree,deg_plus_one\n"
      << inst.graph.n() << "," << inst.graph.m() << ","
      << inst.graph.max_degree() << "," << (d1 ? 1 : 0) << "\n";
  emit(out, csv.str());
  if (!d1 && !allow_thin) {
    std::cerr << why << "\n";
    return kExitViolation;
  }
  if (colors_file.empty()) return kExitOk;

  std::ifstream cf(colors_file);
  if (!cf) throw std::runtime_error("cannot open colors file: " + colors_file);
  std::vector<int32_t> colors;
  for (int64_t c; cf >> c;) colors.push_back(int32_t(c));
  if (colors.size() != size_t(inst.graph.n())) {
    std::cerr << "colors file lists " << colors.size() << " entries for "
              << inst.graph.n() << " nodes\n";
    return kExitViolation;
  }
  if (!verify_coloring(inst, colors, partial, &why)) {
    std::cerr << why << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

const char* class_name(NodeClass c) {
  switch (c) {
    case NodeClass::Sparse: return "sparse";
    case NodeClass::Uneven: return "uneven";
    case NodeClass::Dense: return "dense";
  }
  return "?";
}

const char* wave_name(SparseWave w) {
  switch (w) {
    case SparseWave::NotSparse: return "";
    case SparseWave::Easy: return "easy";
    case SparseWave::Heavy: return "heavy";
    case SparseWave::Start: return "start";
    case SparseWave::Tough: return "tough";
  }
  return "?";
}

int cmd_acd(const SourceOpts& src, const LedgerOpts& led,
            const std::string& variant, const std::string& out) {
  D1lcInstance inst = build_instance(src);
  EpsilonLedger eps = build_ledger(led);
  CommonNeighbors cn(inst.graph);
  AcdPartition part = compute_acd(inst.graph, eps, &cn);

  std::vector<std::string> bad = verify_acd(inst.graph, part, &cn);
  ClassifierVariant var = variant == "unevenness"
                              ? ClassifierVariant::Unevenness
                              : ClassifierVariant::Discrepancy;
  SparseClassification cls = classify_sparse(inst, part, eps, var);
  DenseStructure ds = build_dense_structure(inst, part, &cn);
  for (auto& v : check_anti_neighbor_bound(ds, part)) bad.push_back(v);
  for (auto& v : check_inlier_bounds(inst.graph, ds, part)) bad.push_back(v);
  for (auto& v : check_external_zero_case(ds, part)) bad.push_back(v);

  std::ostringstream csv;
  csv << "node,class,clique,wave,external,slackability\n";
  for (int32_t v = 0; v < inst.graph.n(); ++v) {
    csv << v << "," << class_name(part.cls[v]) << ",";
    if (part.is_dense(v)) csv << part.clique_id[v];
    csv << "," << wave_name(cls.wave[v]) << ",";
    if (part.is_dense(v)) {
      csv << ds.external[v] << "," << ds.slackability[v].str();
    } else {
      csv << ",";
    }
    csv << "\n";
  }
  emit(out, csv.str());

  std::cerr << part.cliques.size() << " cliques, attempts " << part.attempts
            << "\n";
  for (size_t c = 0; c < part.cliques.size(); ++c) {
    std::cerr << "clique " << c << ": size " << part.cliques[c].size()
              << ", leader " << ds.roles[c].leader << ", inliers "
              << ds.roles[c].inliers.size() << ", slackability "
              << ds.clique_slackability[c].str() << "\n";
  }
  if (!bad.empty()) {
    for (const auto& v : bad) std::cerr << v << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_sparsify(const SourceOpts& src, const LedgerOpts& led, double c_s,
                 double low_degree_c, int64_t trials, uint64_t run_seed,
                 const std::string& out) {
  D1lcInstance inst = build_instance(src);
  SparsifyOptions opt;
  opt.eps = build_ledger(led);
  opt.low_degree_c = low_degree_c;

  std::ostringstream csv;
  csv << "trial,success,conflict_edges,stuck,rounds,conflicts\n";
  int64_t ok = 0, conflicts = 0;
  for (int64_t t = 0; t < trials; ++t) {
    uint64_t ts = hash_combine(run_seed, uint64_t(t));
    SampledLists lists = sample_lists(inst, c_s, ts);
    SparsifyReport rep =
        color_from_samples(inst, lists, opt, hash_combine(ts, 1));
    ok += rep.success;
    conflicts += rep.conflicts;
    csv << t << "," << (rep.success ? 1 : 0) << "," << rep.conflict_edges
        << "," << rep.stuck.size() << "," << rep.rounds << ","
        << rep.conflicts << "\n";
  }
  csv << "# success_rate " << ok << "/" << trials << "\n";
  emit(out, csv.str());
  if (conflicts != 0) {
    std::cerr << "conflicts detected: " << conflicts << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_probe(const std::string& name, int64_t trials, uint64_t seed,
              bool list_only, const std::string& out) {
  if (list_only) {
    std::ostringstream csv;
    csv << "probe,default_trials,claim\n";
    for (const auto& spec : probe_registry()) {
      csv << spec.name << "," << spec.default_trials << ",\"" << spec.claim
          << "\"\n";
    }
    emit(out, csv.str());
    return kExitOk;
  }

  std::vector<std::string> names;
  if (name == "all") {
    for (const auto& spec : probe_registry()) names.push_back(spec.name);
  } else {
    names.push_back(name);
  }

  std::ostringstream csv;
  csv << "probe,trials,failures,theta,p_value,pass,runs,conflicts,notes\n";
  bool all_pass = true;
  int64_t conflicts = 0;
  for (const auto& nm : names) {
    ProbeOutcome o = run_probe(nm, trials, seed);
    all_pass = all_pass && o.pass;
    conflicts += o.conflicts;
    char pbuf[32];
    std::snprintf(pbuf, sizeof pbuf, "%.6g", o.p_value);
    char tbuf[32];
    std::snprintf(tbuf, sizeof tbuf, "%g", o.theta);
    csv << o.name << "," << o.trials << "," << o.failures << "," << tbuf
        << "," << pbuf << "," << (o.pass ? 1 : 0) << "," << o.runs << ","
        << o.conflicts << ",\"" << o.notes << "\"\n";
    std::cerr << (o.pass ? "pass " : "FAIL ") << o.name << " (" << o.failures
              << "/" << o.trials << " failures, p=" << pbuf << ")\n";
  }
  emit(out, csv.str());
  if (conflicts != 0) {
    std::cerr << "conflicts detected: " << conflicts << "\n";
    return kExitViolation;
  }
  return all_pass ? kExitOk : kExitStatistical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale (deg+1)-list-coloring lab"};
  app.require_subcommand(1);

  SourceOpts src;
  LedgerOpts led;
  std::string out;
  std::string algo = "full";
  std::string variant = "discrepancy";
  std::string colors_file;
  std::string probe_name = "all";
  bool allow_thin = false, partial = false, list_probes = false;
  double c_s = 4.0, low_degree_c = 1.0;
  int64_t trials = 1;
  int threads = 1;
  uint64_t run_seed = 1;

  CLI::App* gen = app.add_subcommand("gen", "build an instance and write it");
  add_source_options(gen, src, false);
  gen->add_option("--out", out, "output file (default stdout)");

  CLI::App* run = app.add_subcommand("run", "seeded algorithm trials to CSV");
  add_source_options(run, src, true);
  add_ledger_options(run, led);
  run->add_option("--algo", algo,
                  "full, combined, sparse, dense, slackcolor, sparsify");
  run->add_option("--variant", variant,
                  "classifier variant: discrepancy, unevenness");
  run->add_option("--c-s", c_s, "sparsify list-size constant");
  run->add_option("--trials", trials, "trial count");
  run->add_option("--threads", threads, "worker threads");
  run->add_option("--run-seed", run_seed, "master seed for the trials");
  run->add_option("--out", out, "report CSV (default stdout)");

  CLI::App* verify =
      app.add_subcommand("verify", "validate an instance file and coloring");
  verify->add_option("--in", src.in_file, "instance file")->required();
  verify->add_option("--colors", colors_file,
                     "whitespace-separated colors, one per node");
  verify->add_flag("--allow-thin", allow_thin,
                   "accept palettes smaller than degree+1");
  verify->add_flag("--partial", partial, "allow -1 (uncolored) entries");
  verify->add_option("--seed", run_seed, "unused; accepted for uniformity");
  verify->add_option("--out", out, "summary CSV (default stdout)");

  CLI::App* acd = app.add_subcommand("acd", "decompose and classify");
  add_source_options(acd, src, true);
  add_ledger_options(acd, led);
  acd->add_option("--variant", variant,
                  "classifier variant: discrepancy, unevenness");
  acd->add_option("--out", out, "per-node CSV (default stdout)");

  CLI::App* sparsify =
      app.add_subcommand("sparsify", "palette sparsification trials");
  add_source_options(sparsify, src, true);
  add_ledger_options(sparsify, led);
  sparsify->add_option("--c-s", c_s, "list-size constant");
  sparsify->add_option("--low-degree-c", low_degree_c,
                       "low-degree threshold constant");
  sparsify->add_option("--trials", trials, "trial count");
  sparsify->add_option("--run-seed", run_seed, "master seed for the trials");
  sparsify->add_option("--out", out, "per-trial CSV (default stdout)");

  CLI::App* probe = app.add_subcommand("probe", "structural Monte-Carlo probe");
  probe->add_option("name", probe_name, "probe name, or 'all'");
  probe->add_flag("--list", list_probes, "list registered probes and exit");
  probe->add_option("--trials", trials, "trials per probe (0 = default)")
      ->default_val(int64_t{0});
  probe->add_option("--seed", run_seed, "probe seed");
  probe->add_option("--out", out, "result CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(src, out);
    if (run->parsed())
      return cmd_run(src, led, algo, variant, c_s, trials, threads, run_seed,
                     out);
    if (verify->parsed())
      return cmd_verify(src.in_file, colors_file, allow_thin, partial, out);
    if (acd->parsed()) return cmd_acd(src, led, variant, out);
    if (sparsify->parsed())
      return cmd_sparsify(src, led, c_s, low_degree_c, trials, run_seed, out);
    if (probe->parsed())
      return cmd_probe(probe_name, trials, run_seed, list_probes, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitOk;
}
