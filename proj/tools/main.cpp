#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"
#include "streamlat/version.hpp"

namespace {

void print_warnings(const streamlat::WarningCounters& w) {
  if (w.tau_fallbacks)
    std::cerr << "warning: tau fallback (g never reaches |x|) applied for "
              << w.tau_fallbacks << " sentence(s)\n";
  if (w.negative_local_delays)
    std::cerr << "warning: " << w.negative_local_delays
              << " target position(s) with non-positive local delay\n";
  if (w.empty_segments)
    std::cerr << "warning: " << w.empty_segments << " empty segment(s) skipped\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency evaluation for simultaneous translation over continuous streams"};
  app.set_version_flag("--version", std::string(streamlat::kVersion));
  app.require_subcommand(1);

  streamlat::cli::EvaluateConfig ev;
  std::string mode_str = "stream";
  auto* evaluate = app.add_subcommand("evaluate", "Score a read/write trace");
  evaluate->add_option("--trace", ev.trace_path, "Trace JSONL file")->required();
  evaluate->add_option("--src-refs", ev.src_refs_path, "Source reference sentences, one per line");
  evaluate->add_option("--tgt-refs", ev.tgt_refs_path, "Target reference sentences, one per line");
  evaluate->add_option("--src-seg", ev.src_seg_path, "Source segmentation file");
  evaluate->add_option("--hyp-seg", ev.hyp_seg_path, "Hypothesis segmentation file");
  evaluate->add_option("--mode", mode_str, "stream, concat1 or sentence")
      ->check(CLI::IsMember({"stream", "concat1", "sentence"}))
      ->capture_default_str();
  evaluate->add_option("--metrics", ev.metrics, "Metrics subset")
      ->delimiter(',')->capture_default_str();
  evaluate->add_option("--s", ev.s_values, "DAL write-cost scales")
      ->delimiter(',')->capture_default_str();
  evaluate->add_option("--decimals", ev.decimals, "Report rounding")->capture_default_str();
  evaluate->add_flag("--per-sentence", ev.per_sentence, "Include per-sentence values");
  evaluate->add_flag("--skip-empty", ev.skip_empty,
                     "Skip empty segments with a warning instead of rejecting");
  evaluate->add_flag("--micro", ev.micro, "Micro (normalizer-weighted) aggregation");
  evaluate->add_flag("--case-sensitive", ev.case_sensitive,
                     "Case-sensitive token comparison during re-segmentation");
  evaluate->add_flag("--tsv", ev.tsv, "TSV report instead of JSON");

  streamlat::cli::SimulateConfig sim;
  std::string gamma_mode_str = "per-sentence";
  auto* simulate = app.add_subcommand("simulate", "Generate a wait-k read/write trace");
  auto* corpus_opt = simulate->add_option("--corpus", sim.corpus_path,
                                          "Corpus file (lengths or tab-separated text)");
  auto* random_opt = simulate->add_option("--random", sim.random_sentences,
                                          "Generate N random sentences");
  corpus_opt->excludes(random_opt);
  random_opt->excludes(corpus_opt);
  simulate->add_option("--k", sim.k, "wait-k lag in source tokens")->required();
  simulate->add_option("--gamma-mode", gamma_mode_str, "per-sentence or global")
      ->check(CLI::IsMember({"per-sentence", "global"}))
      ->capture_default_str();
  simulate->add_option("--gamma", sim.gamma, "Global writing rate (global mode)");
  simulate->add_option("--seed", sim.seed, "Corpus / perturbation seed")->capture_default_str();
  simulate->add_option("--perturb-src", sim.perturb_src,
                       "Also emit a source segmentation with boundaries shifted by up to N");
  simulate->add_option("--perturb-hyp", sim.perturb_hyp,
                       "Also emit a hypothesis segmentation with boundaries shifted by up to N");
  simulate->add_option("--out-prefix", sim.out_prefix, "Output file prefix")->required();

  streamlat::cli::ResegmentConfig rs;
  auto* resegment = app.add_subcommand("resegment",
                                       "Cut a hypothesis stream against reference sentences");
  resegment->add_option("--hyp", rs.hyp_path, "Hypothesis stream file")->required();
  resegment->add_option("--refs", rs.refs_path, "Reference sentences, one per line")->required();
  resegment->add_option("--out-prefix", rs.out_prefix, "Output file prefix")->required();
  resegment->add_flag("--case-sensitive", rs.case_sensitive, "Case-sensitive comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (evaluate->parsed()) {
      static const std::map<std::string, streamlat::EvalMode> modes = {
          {"stream", streamlat::EvalMode::stream},
          {"concat1", streamlat::EvalMode::concat1},
          {"sentence", streamlat::EvalMode::sentence}};
      ev.mode = modes.at(mode_str);
      auto report = streamlat::cli::run_evaluate(ev);
      std::cout << report.rendered;
      print_warnings(report.warnings);
    } else if (simulate->parsed()) {
      sim.gamma_mode = gamma_mode_str == "global" ? streamlat::GammaMode::global
                                                  : streamlat::GammaMode::per_sentence;
      if (sim.gamma_mode == streamlat::GammaMode::global && simulate->count("--gamma") == 0)
        throw streamlat::ValidationError("--gamma-mode global requires --gamma");
      auto out = streamlat::cli::run_simulate(sim);
      std::cout << out.summary;
    } else if (resegment->parsed()) {
      auto out = streamlat::cli::run_resegment(rs);
      std::cout << out.summary;
    }
  } catch (const streamlat::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const streamlat::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
