#ifndef STREAMLAT_STREAM_METRICS_HPP
#define STREAMLAT_STREAM_METRICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "streamlat/corpus.hpp"
#include "streamlat/metrics.hpp"

namespace streamlat {

enum class EvalMode { stream, concat1, sentence };

// What to do with empty source/hypothesis segments: reject the stream or
// skip the sentence and count a warning.
enum class EmptySegmentPolicy { reject, skip };

enum class Aggregation { macro, micro };

struct EvalOptions {
  bool ap = true;
  bool al = true;
  bool dal = true;
  std::vector<double> s_values = {1.0, 0.95};
  EmptySegmentPolicy empty_segments = EmptySegmentPolicy::reject;
  Aggregation aggregation = Aggregation::macro;
};

struct MetricSeries {
  std::vector<double> per_sentence;
  std::vector<double> normalizers;  // Z per sentence, used for micro averaging
  double aggregate = 0.0;
};

struct WarningCounters {
  std::size_t tau_fallbacks = 0;
  std::size_t negative_local_delays = 0;  // positions with g(i) <= 0
  std::size_t empty_segments = 0;

  WarningCounters& operator+=(const WarningCounters& o);
  bool any() const;
};

struct StreamEvaluation {
  EvalMode mode = EvalMode::stream;
  std::size_t sentences = 0;  // sentences actually scored
  std::optional<MetricSeries> ap;
  std::optional<MetricSeries> al;
  std::vector<std::pair<double, MetricSeries>> dal;  // one series per s
  WarningCounters warnings;
};

// Converts the global delay function to per-sentence local views:
//   g_n(i) = G(i + |y_1..n-1|) - |x_1..n-1|
// src_seg and hyp_seg must have the same segment count and cover the trace
// exactly. Views for empty segments are produced as-is; evaluation applies
// the empty-segment policy.
std::vector<SentenceView> localize_delays(const ReadWriteTrace& trace,
                                          const Segmentation& src_seg,
                                          const Segmentation& hyp_seg);

// Stream-level evaluation: AP/AL per sentence on localized views, DAL with
// the carry threaded across sentence boundaries,
//   carry into n = g'_{n-1}(|y_{n-1}|) - |x_{n-1}| + s/gamma_{n-1}
// compared via max against g_n(1). Aggregate is the macro mean by default.
StreamEvaluation evaluate_stream(const ReadWriteTrace& trace,
                                 const Segmentation& src_seg,
                                 const Segmentation& hyp_seg,
                                 const EvalOptions& opts = {});

// Concat-1 baseline: the whole stream is one sentence pair with a single
// global gamma.
StreamEvaluation evaluate_concat1(const ReadWriteTrace& trace,
                                  const EvalOptions& opts = {});

// Conventional independent-sentence evaluation: the DAL carry is reset at
// every sentence.
StreamEvaluation evaluate_sentences(std::span<const SentenceView> views,
                                    const EvalOptions& opts = {});

// Pools evaluations of independent streams (documents) into one: sentences
// are concatenated in input order and the aggregate recomputed, so every
// sentence weighs equally regardless of its document.
StreamEvaluation pool_evaluations(std::span<const StreamEvaluation> evals,
                                  const EvalOptions& opts = {});

}  // namespace streamlat

#endif  // STREAMLAT_STREAM_METRICS_HPP
