#include "streamlat/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "streamlat/metrics.hpp"

namespace streamlat {

namespace {

// Deterministic draws on top of std::mt19937_64: the standard distributions
// are implementation-defined, so we reduce the raw 64-bit output ourselves.
int bounded_int(std::mt19937_64& rng, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

TokenStream synthetic_tokens(char side, std::size_t sentence, int count) {
  TokenStream out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i)
    out.push_back(std::string(1, side) + std::to_string(sentence) + "_" + std::to_string(i));
  return out;
}

}  // namespace

std::vector<int> waitk_delays(int k, double gamma, int src_len, int tgt_len) {
  if (k < 1) throw ValidationError("wait-k requires k >= 1");
  if (!(gamma > 0.0)) throw ValidationError("wait-k requires gamma > 0");
  if (src_len < 1 || tgt_len < 1)
    throw ValidationError("wait-k requires positive sentence lengths");
  std::vector<int> g;
  g.reserve(static_cast<std::size_t>(tgt_len));
  for (int i = 1; i <= tgt_len; ++i) {
    int read = k + static_cast<int>(std::floor((i - 1) / gamma));
    g.push_back(std::min(read, src_len));
  }
  return g;
}

SimResult simulate_stream(const SimCorpus& corpus, const PolicySpec& policy) {
  if (corpus.sentences.empty())
    throw ValidationError("simulation corpus is empty");
  if (policy.gamma_mode == GammaMode::global && !(policy.global_gamma > 0.0))
    throw ValidationError("global gamma mode requires gamma > 0");

  SimResult out;
  std::vector<std::size_t> src_lens, hyp_lens;
  int x_off = 0;
  for (std::size_t n = 0; n < corpus.sentences.size(); ++n) {
    const SimSentence& sent = corpus.sentences[n];
    double gamma = policy.gamma_mode == GammaMode::per_sentence
                       ? gamma_ratio(sent.src_len, sent.tgt_len)
                       : policy.global_gamma;
    std::vector<int> g = waitk_delays(policy.k, gamma, sent.src_len, sent.tgt_len);
    for (int v : g) out.record.trace.G.push_back(v + x_off);

    TokenStream src = sent.src.empty() ? synthetic_tokens('x', n + 1, sent.src_len) : sent.src;
    TokenStream tgt = sent.tgt.empty() ? synthetic_tokens('y', n + 1, sent.tgt_len) : sent.tgt;
    out.record.source.insert(out.record.source.end(), src.begin(), src.end());
    out.record.hypothesis.insert(out.record.hypothesis.end(), tgt.begin(), tgt.end());

    src_lens.push_back(static_cast<std::size_t>(sent.src_len));
    hyp_lens.push_back(static_cast<std::size_t>(sent.tgt_len));
    x_off += sent.src_len;
  }
  out.record.trace.src_len = x_off;
  out.record.trace.validate();
  out.src_seg = Segmentation::from_lengths(src_lens);
  out.hyp_seg = Segmentation::from_lengths(hyp_lens);
  return out;
}

Segmentation perturb_segmentation(const Segmentation& seg, int max_shift,
                                  std::uint64_t seed) {
  if (max_shift < 0) throw ValidationError("max_shift must be >= 0");
  if (seg.boundaries.empty())
    throw ValidationError("segmentation must contain at least one boundary");
  const std::size_t total = seg.boundaries.back();
  seg.validate(total, /*allow_empty=*/false);

  std::mt19937_64 rng(seed);
  Segmentation out;
  out.boundaries.reserve(seg.boundaries.size());
  const std::size_t n = seg.boundaries.size();
  long long prev = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    long long shift = bounded_int(rng, -max_shift, max_shift);
    long long cand = static_cast<long long>(seg.boundaries[i]) + shift;
    long long lo = prev + 1;
    // Leave room for the remaining internal boundaries below the final one.
    long long hi = static_cast<long long>(total) - static_cast<long long>(n - 1 - i);
    cand = std::clamp(cand, lo, hi);
    out.boundaries.push_back(static_cast<std::size_t>(cand));
    prev = cand;
  }
  out.boundaries.push_back(total);
  return out;
}

SimCorpus random_corpus(int sentences, std::uint64_t seed) {
  if (sentences < 1) throw ValidationError("corpus needs at least one sentence");
  std::mt19937_64 rng(seed);
  SimCorpus corpus;
  corpus.sentences.reserve(static_cast<std::size_t>(sentences));
  for (int n = 0; n < sentences; ++n) {
    SimSentence s;
    s.src_len = bounded_int(rng, 3, 30);
    double gamma = 0.5 + 1.5 * unit_double(rng);
    s.tgt_len = std::max(1, static_cast<int>(std::llround(s.src_len * gamma)));
    corpus.sentences.push_back(std::move(s));
  }
  return corpus;
}

SimCorpus load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);
  SimCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    SimSentence s;
    auto tab = line.find('\t');
    if (tab != std::string::npos) {
      s.src = tokenize(std::string_view(line).substr(0, tab));
      s.tgt = tokenize(std::string_view(line).substr(tab + 1));
      if (s.src.empty() || s.tgt.empty())
        throw ValidationError(where + "both sides of a text corpus line must be non-empty");
      s.src_len = static_cast<int>(s.src.size());
      s.tgt_len = static_cast<int>(s.tgt.size());
    } else {
      std::istringstream ss(line);
      if (!(ss >> s.src_len >> s.tgt_len))
        throw ValidationError(where + "expected 'SRC_LEN TGT_LEN' or tab-separated text");
      std::string extra;
      if (ss >> extra)
        throw ValidationError(where + "trailing content after lengths");
      if (s.src_len < 1 || s.tgt_len < 1)
        throw ValidationError(where + "lengths must be >= 1");
    }
    corpus.sentences.push_back(std::move(s));
  }
  if (corpus.sentences.empty())
    throw ValidationError(path + ": corpus file is empty");
  return corpus;
}

}  // namespace streamlat
