#include "streamlat/stream_metrics.hpp"

#include <string>

namespace streamlat {

WarningCounters& WarningCounters::operator+=(const WarningCounters& o) {
  tau_fallbacks += o.tau_fallbacks;
  negative_local_delays += o.negative_local_delays;
  empty_segments += o.empty_segments;
  return *this;
}

bool WarningCounters::any() const {
  return tau_fallbacks || negative_local_delays || empty_segments;
}

std::vector<SentenceView> localize_delays(const ReadWriteTrace& trace,
                                          const Segmentation& src_seg,
                                          const Segmentation& hyp_seg) {
  src_seg.validate(static_cast<std::size_t>(trace.src_len), /*allow_empty=*/true);
  hyp_seg.validate(trace.G.size(), /*allow_empty=*/true);
  if (src_seg.segment_count() != hyp_seg.segment_count())
    throw ValidationError("source segmentation has " +
                          std::to_string(src_seg.segment_count()) +
                          " segments but hypothesis segmentation has " +
                          std::to_string(hyp_seg.segment_count()));

  std::vector<SentenceView> views;
  views.reserve(src_seg.segment_count());
  std::size_t x_off = 0, y_off = 0;
  auto src_lens = src_seg.lengths();
  auto hyp_lens = hyp_seg.lengths();
  for (std::size_t n = 0; n < src_lens.size(); ++n) {
    SentenceView v;
    v.src_len = static_cast<int>(src_lens[n]);
    v.tgt_len = static_cast<int>(hyp_lens[n]);
    v.g.reserve(hyp_lens[n]);
    for (std::size_t i = 0; i < hyp_lens[n]; ++i)
      v.g.push_back(trace.G[y_off + i] - static_cast<int>(x_off));
    v.gamma = (v.src_len > 0 && v.tgt_len > 0)
                  ? gamma_ratio(v.src_len, v.tgt_len)
                  : 0.0;
    views.push_back(std::move(v));
    x_off += src_lens[n];
    y_off += hyp_lens[n];
  }
  return views;
}

namespace {

void append(MetricSeries& series, double value, double normalizer) {
  series.per_sentence.push_back(value);
  series.normalizers.push_back(normalizer);
}

void finalize(MetricSeries& series, Aggregation agg) {
  double sum = 0.0;
  if (agg == Aggregation::macro) {
    for (double v : series.per_sentence) sum += v;
    series.aggregate = series.per_sentence.empty()
                           ? 0.0
                           : sum / static_cast<double>(series.per_sentence.size());
  } else {
    double z = 0.0;
    for (std::size_t i = 0; i < series.per_sentence.size(); ++i) {
      sum += series.per_sentence[i] * series.normalizers[i];
      z += series.normalizers[i];
    }
    series.aggregate = z > 0.0 ? sum / z : 0.0;
  }
}

// Shared core of the three evaluation modes. When carry_across is set the
// DAL ratchet survives sentence boundaries; skipped (empty) sentences shift
// the pending carry into the next local frame without adding a write cost.
StreamEvaluation evaluate_views(std::span<const SentenceView> views, EvalMode mode,
                                bool carry_across, const EvalOptions& opts) {
  StreamEvaluation out;
  out.mode = mode;
  if (opts.ap) out.ap.emplace();
  if (opts.al) out.al.emplace();
  if (opts.dal) {
    for (double s : opts.s_values) out.dal.emplace_back(s, MetricSeries{});
  }

  struct CarryState {
    std::optional<double> carry;  // already converted to the next local frame
  };
  std::vector<CarryState> dal_state(out.dal.size());

  for (std::size_t n = 0; n < views.size(); ++n) {
    const SentenceView& v = views[n];
    if (v.empty()) {
      if (opts.empty_segments == EmptySegmentPolicy::reject)
        throw ValidationError("segment " + std::to_string(n + 1) +
                              " is empty (source or hypothesis side)");
      ++out.warnings.empty_segments;
      // No writes happen here; the carry just moves past this source span.
      for (auto& st : dal_state)
        if (st.carry) *st.carry -= v.src_len;
      continue;
    }
    for (int gi : v.g)
      if (gi <= 0) ++out.warnings.negative_local_delays;

    if (out.ap) {
      SentenceScore s = ap_sentence(v);
      append(*out.ap, s.value, s.normalizer);
    }
    if (out.al) {
      AlScore s = al_sentence(v);
      if (s.tau_fallback) ++out.warnings.tau_fallbacks;
      append(*out.al, s.score.value, s.score.normalizer);
    }
    for (std::size_t si = 0; si < out.dal.size(); ++si) {
      double s_value = out.dal[si].first;
      DalScore d = dal_sentence(v, s_value,
                                carry_across ? dal_state[si].carry : std::nullopt);
      append(out.dal[si].second, d.score.value, d.score.normalizer);
      dal_state[si].carry = d.carry_out - v.src_len + s_value / v.gamma;
    }
    ++out.sentences;
  }

  if (out.ap) finalize(*out.ap, opts.aggregation);
  if (out.al) finalize(*out.al, opts.aggregation);
  for (auto& [s, series] : out.dal) finalize(series, opts.aggregation);
  return out;
}

}  // namespace

StreamEvaluation evaluate_stream(const ReadWriteTrace& trace,
                                 const Segmentation& src_seg,
                                 const Segmentation& hyp_seg,
                                 const EvalOptions& opts) {
  auto views = localize_delays(trace, src_seg, hyp_seg);
  return evaluate_views(views, EvalMode::stream, /*carry_across=*/true, opts);
}

StreamEvaluation evaluate_concat1(const ReadWriteTrace& trace, const EvalOptions& opts) {
  trace.validate();
  if (trace.G.empty() || trace.src_len < 1)
    throw ValidationError("concat-1 evaluation needs a non-empty stream");
  SentenceView whole = make_view(trace.src_len, trace.G);
  return evaluate_views(std::span<const SentenceView>(&whole, 1), EvalMode::concat1,
                        /*carry_across=*/false, opts);
}

StreamEvaluation evaluate_sentences(std::span<const SentenceView> views,
                                    const EvalOptions& opts) {
  return evaluate_views(views, EvalMode::sentence, /*carry_across=*/false, opts);
}

StreamEvaluation pool_evaluations(std::span<const StreamEvaluation> evals,
                                  const EvalOptions& opts) {
  StreamEvaluation out;
  if (opts.ap) out.ap.emplace();
  if (opts.al) out.al.emplace();
  if (opts.dal)
    for (double s : opts.s_values) out.dal.emplace_back(s, MetricSeries{});

  auto extend = [](MetricSeries& dst, const MetricSeries& src) {
    dst.per_sentence.insert(dst.per_sentence.end(), src.per_sentence.begin(),
                            src.per_sentence.end());
    dst.normalizers.insert(dst.normalizers.end(), src.normalizers.begin(),
                           src.normalizers.end());
  };

  for (const auto& e : evals) {
    out.mode = e.mode;
    out.sentences += e.sentences;
    out.warnings += e.warnings;
    if (out.ap && e.ap) extend(*out.ap, *e.ap);
    if (out.al && e.al) extend(*out.al, *e.al);
    for (std::size_t si = 0; si < out.dal.size() && si < e.dal.size(); ++si)
      extend(out.dal[si].second, e.dal[si].second);
  }
  if (out.ap) finalize(*out.ap, opts.aggregation);
  if (out.al) finalize(*out.al, opts.aggregation);
  for (auto& [s, series] : out.dal) finalize(series, opts.aggregation);
  return out;
}

}  // namespace streamlat
