#ifndef STREAMLAT_CLI_HPP
#define STREAMLAT_CLI_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "streamlat/simulate.hpp"
#include "streamlat/stream_metrics.hpp"

namespace streamlat::cli {

struct EvaluateConfig {
  std::string trace_path;
  std::string src_refs_path;  // optional
  std::string tgt_refs_path;  // optional
  std::string src_seg_path;   // optional
  std::string hyp_seg_path;   // optional
  EvalMode mode = EvalMode::stream;
  std::vector<std::string> metrics = {"ap", "al", "dal"};
  std::vector<double> s_values = {1.0, 0.95};
  int decimals = 4;
  bool per_sentence = false;
  bool skip_empty = false;    // empty segments: warn and skip instead of reject
  bool micro = false;
  bool case_sensitive = false;
  bool tsv = false;
};

struct Report {
  std::string rendered;  // JSON (default) or TSV
  WarningCounters warnings;
};

// Loads the trace, derives or loads segmentations (re-segmenting against
// references when no explicit segmentation is given), evaluates every
// stream and pools the result.
Report run_evaluate(const EvaluateConfig& cfg);

struct SimulateConfig {
  std::string corpus_path;   // exclusive with random_sentences
  int random_sentences = 0;
  std::uint64_t seed = 0;
  int k = 1;
  GammaMode gamma_mode = GammaMode::per_sentence;
  double gamma = 1.0;        // gamma_hat for global mode
  int perturb_src = 0;       // max boundary shift; 0 disables
  int perturb_hyp = 0;
  std::string out_prefix;
};

struct FileOutputs {
  std::vector<std::string> files;
  std::string summary;  // JSON echo printed to stdout
};

FileOutputs run_simulate(const SimulateConfig& cfg);

struct ResegmentConfig {
  std::string hyp_path;   // whole file is one hypothesis stream
  std::string refs_path;  // one reference sentence per line
  std::string out_prefix;
  bool case_sensitive = false;
};

FileOutputs run_resegment(const ResegmentConfig& cfg);

}  // namespace streamlat::cli

#endif  // STREAMLAT_CLI_HPP
