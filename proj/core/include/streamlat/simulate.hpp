#ifndef STREAMLAT_SIMULATE_HPP
#define STREAMLAT_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "streamlat/corpus.hpp"

namespace streamlat {

// One corpus sentence: lengths always present, token streams optionally
// (length-only corpora get synthetic tokens when a trace is emitted).
struct SimSentence {
  int src_len = 0;
  int tgt_len = 0;
  TokenStream src;  // empty => synthetic
  TokenStream tgt;
};

struct SimCorpus {
  std::vector<SimSentence> sentences;
};

enum class GammaMode { per_sentence, global };

// wait-k with catch-up; in global mode every sentence is decoded with the
// same assumed writing rate gamma_hat regardless of its true ratio.
struct PolicySpec {
  int k = 1;
  GammaMode gamma_mode = GammaMode::per_sentence;
  double global_gamma = 1.0;  // gamma_hat, used when gamma_mode == global
};

// g(i) = min(floor(k + (i-1)/gamma), src_len) for i = 1..tgt_len.
std::vector<int> waitk_delays(int k, double gamma, int src_len, int tgt_len);

struct SimResult {
  StreamRecord record;  // concatenated source/hypothesis + global trace
  Segmentation src_seg;
  Segmentation hyp_seg;
};

// Simulates the whole corpus as one continuous stream: per-sentence wait-k
// delays are globalized by prefix sums. The emitted hypothesis is the
// reference translation (the oracle writes the reference at the policy's
// rate); length-only sentences get synthetic tokens.
SimResult simulate_stream(const SimCorpus& corpus, const PolicySpec& policy);

// Moves each internal boundary by a uniform integer in [-max_shift,
// +max_shift], clamped left-to-right so boundaries stay strictly
// increasing. Deterministic for a given seed (std::mt19937_64 with modulo
// reduction).
Segmentation perturb_segmentation(const Segmentation& seg, int max_shift,
                                  std::uint64_t seed);

// Seeded corpus: source lengths uniform on [3,30], gamma_n uniform on
// [0.5,2.0], target length = round(src_len*gamma_n) clamped to >= 1.
// Deterministic across platforms (std::mt19937_64, modulo draw for
// integers, 53-bit mantissa draw for reals).
SimCorpus random_corpus(int sentences, std::uint64_t seed);

// Corpus file: one sentence per line, either "SRC_LEN TGT_LEN" (two
// integers) or "source tokens<TAB>target tokens".
SimCorpus load_corpus_file(const std::string& path);

}  // namespace streamlat

#endif  // STREAMLAT_SIMULATE_HPP
