#ifndef STREAMLAT_METRICS_HPP
#define STREAMLAT_METRICS_HPP

#include <optional>
#include <span>
#include <vector>

#include "streamlat/error.hpp"

namespace streamlat {

// One sentence in local coordinates: |x| source tokens, |y| target tokens,
// and g(i) = source tokens read when target token i was written. After
// stream localization g may legitimately drop to <= 0 or exceed src_len;
// the metrics consume it unclipped.
struct SentenceView {
  int src_len = 0;
  int tgt_len = 0;
  std::vector<int> g;
  double gamma = 0.0;  // tgt_len / src_len

  bool empty() const { return src_len == 0 || tgt_len == 0; }
};

// Builds a view and fills the derived fields; src_len must be >= 1.
SentenceView make_view(int src_len, std::vector<int> g);

// Target-to-source length ratio |y|/|x|.
double gamma_ratio(int src_len, int tgt_len);

// First target position at which the whole source has been read. When g
// never reaches src_len (possible after re-segmentation) the fallback is the
// sentence length, flagged so callers can count it.
struct TauResult {
  int tau = 0;
  bool fallback = false;
};
TauResult tau_position(std::span<const int> g, int src_len);

// Per-sentence latency score: value = sum of counted costs / normalizer.
// costs holds C_i for every target position; for AL only the first
// `normalizer` positions are counted.
struct SentenceScore {
  double value = 0.0;
  std::vector<double> costs;
  double normalizer = 0.0;
};

// AP: C_i = g(i), Z = |x|*|y|.
SentenceScore ap_sentence(const SentenceView& v);

// AL: C_i = g(i) - (i-1)/gamma, summed up to tau, Z = tau.
struct AlScore {
  SentenceScore score;
  bool tau_fallback = false;
};
AlScore al_sentence(const SentenceView& v);

// DAL: C_i = g'(i) - (i-1)/gamma with the ratcheted delay
//   g'(i) = max(g(i), g'(i-1) + s/gamma),   g'(1) = max(g(1), carry_in)
// and Z = |y|. The write cost is scaled by s in [0,1]; carry_in, when
// present, is the previous sentence's final g' already converted into this
// sentence's local frame (see evaluate_stream). carry_out is this
// sentence's final g' in its own frame.
struct DalScore {
  SentenceScore score;
  double carry_out = 0.0;
};
DalScore dal_sentence(const SentenceView& v, double s = 1.0,
                      std::optional<double> carry_in = std::nullopt);

}  // namespace streamlat

#endif  // STREAMLAT_METRICS_HPP
