#include "d1lc/experiment.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "d1lc/acd.hpp"
#include "d1lc/engine.hpp"
#include "d1lc/sparsify.hpp"

namespace d1lc {

Algo algo_from_name(const std::string& name) {
  if (name == "full") return Algo::Full;
  if (name == "combined") return Algo::Combined;
  if (name == "sparse") return Algo::Sparse;
  if (name == "dense") return Algo::Dense;
  if (name == "slackcolor") return Algo::SlackColor;
  if (name == "sparsify") return Algo::Sparsify;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::Full: return "full";
    case Algo::Combined: return "combined";
    case Algo::Sparse: return "sparse";
    case Algo::Dense: return "dense";
    case Algo::SlackColor: return "slackcolor";
    case Algo::Sparsify: return "sparsify";
  }
  return "?";
}

int64_t max_bad_component(const SimState& s) {
  const Graph& g = s.instance().graph;
  std::vector<char> seen(g.n(), 0);
  std::vector<int32_t> stack;
  int64_t best = 0;
  for (int32_t v = 0; v < g.n(); ++v) {
    if (seen[v] || s.status(v) != NodeStatus::Bad) continue;
    int64_t size = 0;
    stack.assign(1, v);
    seen[v] = 1;
    while (!stack.empty()) {
      int32_t u = stack.back();
      stack.pop_back();
      ++size;
      for (int32_t w : g.neighbors(u))
        if (!seen[w] && s.status(w) == NodeStatus::Bad) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    best = std::max(best, size);
  }
  return best;
}

namespace {

void push_phase_rows(std::vector<TrialRow>& rows, int64_t trial,
                     const PipelineReport& rep) {
  for (const auto& ph : rep.phases)
    rows.push_back({trial, ph.phase, ph.rounds, ph.colored, ph.bad, 0, 0});
}

TrialRow total_row(int64_t trial, const SimState& s, int64_t rounds) {
  int64_t colored = 0, bad = 0;
  for (int32_t v = 0; v < s.n(); ++v) {
    if (s.status(v) == NodeStatus::Colored) ++colored;
    if (s.status(v) == NodeStatus::Bad) ++bad;
  }
  return {trial,   "total", rounds, colored, bad, max_bad_component(s),
          s.conflicts_detected()};
}

}  // namespace

ExperimentResult run_experiment(const D1lcInstance& inst,
                                const ExperimentConfig& cfg) {
  ExperimentResult out;
  for (int64_t t = 0; t < cfg.trials; ++t) {
    uint64_t trial_seed = hash_combine(cfg.seed, uint64_t(t));
    ++out.runs;
    if (cfg.algo == Algo::Sparsify) {
      auto lists = sample_lists(inst, cfg.sparsify_c, trial_seed);
      SparsifyOptions opt;
      opt.eps = cfg.eps;
      opt.pipeline = cfg.pipeline;
      auto rep = color_from_samples(inst, lists, opt, trial_seed);
      out.rows.push_back({t, "sparsify", rep.rounds,
                          inst.graph.n() - int64_t(rep.stuck.size()),
                          int64_t(rep.stuck.size()), 0, rep.conflicts});
      continue;
    }

    SimState s(inst, trial_seed);
    s.threads = cfg.threads;
    switch (cfg.algo) {
      case Algo::Full: {
        auto rep = full_coloring(s, cfg.eps, cfg.pipeline);
        for (const auto& cs : rep.classes)
          out.rows.push_back({t, "class" + std::to_string(cs.degree_bound),
                              cs.rounds, cs.nodes - cs.bad_after_pipeline,
                              cs.bad_after_pipeline, cs.max_bad_component, 0});
        int64_t class_nodes = 0;
        for (const auto& cs : rep.classes) class_nodes += cs.nodes;
        out.rows.push_back({t, "final", rep.final_stage_rounds,
                            s.n() - class_nodes, rep.greedy_fallback_nodes, 0,
                            0});
        out.rows.push_back(total_row(t, s, rep.rounds));
        break;
      }
      case Algo::Combined: {
        auto rep = combined_coloring(s, cfg.eps, cfg.pipeline);
        push_phase_rows(out.rows, t, rep);
        out.rows.push_back(total_row(t, s, rep.rounds));
        break;
      }
      case Algo::Sparse: {
        auto part = compute_acd(inst.graph, cfg.eps);
        auto cls = classify_sparse(inst, part, cfg.eps, cfg.pipeline.variant);
        auto rep = sparse_pipeline(s, part, cls, cfg.pipeline);
        push_phase_rows(out.rows, t, rep);
        out.rows.push_back(total_row(t, s, rep.rounds));
        break;
      }
      case Algo::Dense: {
        auto part = compute_acd(inst.graph, cfg.eps);
        auto ds = build_dense_structure(inst, part);
        auto rep = dense_pipeline(s, part, ds, cfg.eps, cfg.pipeline);
        push_phase_rows(out.rows, t, rep);
        out.rows.push_back(total_row(t, s, rep.rounds));
        break;
      }
      case Algo::SlackColor: {
        std::vector<int32_t> all(inst.graph.n());
        std::iota(all.begin(), all.end(), 0);
        auto rep = slack_color(s, std::move(all), cfg.pipeline.slack);
        out.rows.push_back(
            {t, "slackcolor", rep.rounds, rep.colored, rep.failed, 0, 0});
        out.rows.push_back(total_row(t, s, rep.rounds));
        break;
      }
      case Algo::Sparsify: break;  // handled above
    }
  }
  for (const auto& r : out.rows) out.conflicts += r.conflicts;
  return out;
}

std::string experiment_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << "trial,phase,rounds,colored,bad,max_bad_component,conflicts\n";
  for (const auto& row : r.rows)
    out << row.trial << ',' << row.phase << ',' << row.rounds << ','
        << row.colored << ',' << row.bad << ',' << row.max_bad_component << ','
        << row.conflicts << '\n';
  return out.str();
}

}  // namespace d1lc
