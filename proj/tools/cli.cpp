#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "streamlat/resegment.hpp"
#include "streamlat/version.hpp"

namespace streamlat::cli {

namespace {

using ojson = nlohmann::ordered_json;

double round_to(double v, int decimals) {
  double p = std::pow(10.0, decimals);
  double r = std::round(v * p) / p;
  return r == 0.0 ? 0.0 : r;  // normalize -0
}

ojson path_or_null(const std::string& p) {
  if (p.empty()) return nullptr;
  return p;
}

const char* mode_name(EvalMode m) {
  switch (m) {
    case EvalMode::stream: return "stream";
    case EvalMode::concat1: return "concat1";
    case EvalMode::sentence: return "sentence";
  }
  return "?";
}

EvalOptions make_options(const EvaluateConfig& cfg) {
  EvalOptions opts;
  opts.ap = opts.al = opts.dal = false;
  for (const auto& m : cfg.metrics) {
    if (m == "ap") opts.ap = true;
    else if (m == "al") opts.al = true;
    else if (m == "dal") opts.dal = true;
    else throw ValidationError("unknown metric '" + m + "' (expected ap, al, dal)");
  }
  if (!opts.ap && !opts.al && !opts.dal)
    throw ValidationError("no metrics selected");
  opts.s_values = cfg.s_values;
  for (double s : opts.s_values)
    if (s < 0.0 || s > 1.0) throw ValidationError("s values must lie in [0,1]");
  if (opts.dal && opts.s_values.empty())
    throw ValidationError("dal requires at least one s value");
  opts.empty_segments = cfg.skip_empty ? EmptySegmentPolicy::skip : EmptySegmentPolicy::reject;
  opts.aggregation = cfg.micro ? Aggregation::micro : Aggregation::macro;
  return opts;
}

// Per-record segmentation sources resolved from files or references.
struct SegmentationPlan {
  Segmentation src_seg;
  Segmentation hyp_seg;
  long long src_edit_cost = -1;  // >= 0 when re-segmentation ran
  long long hyp_edit_cost = -1;
};

bool tokens_equal(const TokenStream& a, std::size_t a_off, const TokenStream& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (a[a_off + i] != b[i]) return false;
  return true;
}

// Consumes reference sentences whose total token count matches the stream
// exactly; the tokens themselves must match too, otherwise segmentations
// cannot be inferred per stream.
std::vector<TokenStream> take_refs_by_count(const std::vector<TokenStream>& refs,
                                            std::size_t& cursor,
                                            const TokenStream& stream,
                                            const std::string& what) {
  std::vector<TokenStream> group;
  std::size_t total = 0;
  while (total < stream.size()) {
    if (cursor >= refs.size())
      throw ValidationError("ran out of " + what + " reference sentences while "
                            "covering a stream of " + std::to_string(stream.size()) +
                            " tokens");
    if (total + refs[cursor].size() > stream.size())
      throw ValidationError(what + " reference sentence lengths do not add up to "
                            "the stream length; provide an explicit segmentation");
    if (!tokens_equal(stream, total, refs[cursor]))
      throw ValidationError(what + " reference tokens differ from the stream; "
                            "provide an explicit segmentation for multi-stream traces");
    total += refs[cursor].size();
    group.push_back(refs[cursor]);
    ++cursor;
  }
  return group;
}

Segmentation seg_from_group(const std::vector<TokenStream>& group) {
  std::vector<std::size_t> lens;
  lens.reserve(group.size());
  for (const auto& g : group) lens.push_back(g.size());
  return Segmentation::from_lengths(lens);
}

bool concat_matches(const std::vector<TokenStream>& group, const TokenStream& stream) {
  std::size_t total = 0;
  for (const auto& g : group) total += g.size();
  if (total != stream.size()) return false;
  std::size_t off = 0;
  for (const auto& g : group) {
    if (!tokens_equal(stream, off, g)) return false;
    off += g.size();
  }
  return true;
}

}  // namespace

Report run_evaluate(const EvaluateConfig& cfg) {
  if (cfg.trace_path.empty()) throw ValidationError("evaluate requires --trace");
  if (cfg.decimals < 0 || cfg.decimals > 12)
    throw ValidationError("--decimals must lie in [0,12]");
  EvalOptions opts = make_options(cfg);

  auto records = load_trace_file(cfg.trace_path);
  if (records.empty())
    throw ValidationError(cfg.trace_path + ": trace file contains no streams");

  if (cfg.mode != EvalMode::concat1) {
    if (cfg.src_seg_path.empty() && cfg.src_refs_path.empty())
      throw ValidationError("mode " + std::string(mode_name(cfg.mode)) +
                            " requires --src-seg or --src-refs");
    if (cfg.hyp_seg_path.empty() && cfg.tgt_refs_path.empty())
      throw ValidationError("mode " + std::string(mode_name(cfg.mode)) +
                            " requires --hyp-seg or --tgt-refs for re-segmentation");
  }

  std::optional<std::vector<Segmentation>> src_segs, hyp_segs;
  if (!cfg.src_seg_path.empty()) {
    src_segs = load_segmentation_file(cfg.src_seg_path);
    if (src_segs->size() != records.size())
      throw ValidationError(cfg.src_seg_path + ": " + std::to_string(src_segs->size()) +
                            " segmentation lines for " + std::to_string(records.size()) +
                            " trace streams");
  }
  if (!cfg.hyp_seg_path.empty()) {
    hyp_segs = load_segmentation_file(cfg.hyp_seg_path);
    if (hyp_segs->size() != records.size())
      throw ValidationError(cfg.hyp_seg_path + ": " + std::to_string(hyp_segs->size()) +
                            " segmentation lines for " + std::to_string(records.size()) +
                            " trace streams");
  }
  std::vector<TokenStream> src_refs, tgt_refs;
  if (!cfg.src_refs_path.empty()) src_refs = load_reference_file(cfg.src_refs_path);
  if (!cfg.tgt_refs_path.empty()) tgt_refs = load_reference_file(cfg.tgt_refs_path);

  ResegmentOptions reseg_opts{cfg.case_sensitive};
  const bool single = records.size() == 1;

  std::vector<StreamEvaluation> evals;
  long long src_edit_total = -1, hyp_edit_total = -1;
  std::size_t src_cursor = 0, tgt_cursor = 0;
  bool used_src_refs = false, used_tgt_refs = false;

  for (std::size_t ri = 0; ri < records.size(); ++ri) {
    const StreamRecord& rec = records[ri];
    if (cfg.mode == EvalMode::concat1) {
      evals.push_back(evaluate_concat1(rec.trace, opts));
      continue;
    }

    SegmentationPlan plan;
    std::size_t n_sentences = 0;
    std::size_t tgt_group_begin = 0, tgt_group_count = 0;

    if (src_segs) {
      plan.src_seg = (*src_segs)[ri];
      n_sentences = plan.src_seg.segment_count();
      tgt_group_begin = tgt_cursor;
      tgt_group_count = n_sentences;
      tgt_cursor += n_sentences;
    } else {
      used_src_refs = true;
      if (single) {
        std::vector<TokenStream> group(src_refs.begin(), src_refs.end());
        src_cursor = src_refs.size();
        if (group.empty()) throw ValidationError("source reference file is empty");
        if (concat_matches(group, rec.source)) {
          plan.src_seg = seg_from_group(group);
        } else {
          AlignmentResult ar = resegment(rec.source, group, reseg_opts);
          plan.src_seg = ar.segmentation;
          plan.src_edit_cost = ar.total_cost;
        }
        n_sentences = group.size();
      } else {
        auto group = take_refs_by_count(src_refs, src_cursor, rec.source, "source");
        plan.src_seg = seg_from_group(group);
        n_sentences = group.size();
      }
      tgt_group_begin = tgt_cursor;
      tgt_group_count = n_sentences;
      tgt_cursor += n_sentences;
    }

    if (hyp_segs) {
      plan.hyp_seg = (*hyp_segs)[ri];
    } else {
      used_tgt_refs = true;
      if (tgt_group_begin + tgt_group_count > tgt_refs.size())
        throw ValidationError("ran out of target reference sentences (need " +
                              std::to_string(tgt_group_begin + tgt_group_count) +
                              ", have " + std::to_string(tgt_refs.size()) + ")");
      std::vector<TokenStream> group(
          tgt_refs.begin() + static_cast<std::ptrdiff_t>(tgt_group_begin),
          tgt_refs.begin() + static_cast<std::ptrdiff_t>(tgt_group_begin + tgt_group_count));
      if (concat_matches(group, rec.hypothesis)) {
        plan.hyp_seg = seg_from_group(group);
      } else {
        AlignmentResult ar = resegment(rec.hypothesis, group, reseg_opts);
        plan.hyp_seg = ar.segmentation;
        plan.hyp_edit_cost = ar.total_cost;
      }
    }

    if (plan.src_edit_cost >= 0)
      src_edit_total = (src_edit_total < 0 ? 0 : src_edit_total) + plan.src_edit_cost;
    if (plan.hyp_edit_cost >= 0)
      hyp_edit_total = (hyp_edit_total < 0 ? 0 : hyp_edit_total) + plan.hyp_edit_cost;

    if (cfg.mode == EvalMode::stream) {
      evals.push_back(evaluate_stream(rec.trace, plan.src_seg, plan.hyp_seg, opts));
    } else {
      auto views = localize_delays(rec.trace, plan.src_seg, plan.hyp_seg);
      evals.push_back(evaluate_sentences(views, opts));
    }
  }

  if (used_src_refs && !single && src_cursor != src_refs.size())
    throw ValidationError("unused source reference sentences: consumed " +
                          std::to_string(src_cursor) + " of " +
                          std::to_string(src_refs.size()));
  if (used_tgt_refs && tgt_cursor != 0 && tgt_cursor != tgt_refs.size())
    throw ValidationError("unused target reference sentences: consumed " +
                          std::to_string(tgt_cursor) + " of " +
                          std::to_string(tgt_refs.size()));

  StreamEvaluation pooled = pool_evaluations(evals, opts);
  pooled.mode = cfg.mode;

  ojson doc;
  doc["tool"] = {{"name", "streamlat"}, {"version", kVersion}};
  ojson conf;
  conf["subcommand"] = "evaluate";
  conf["trace"] = cfg.trace_path;
  conf["src_refs"] = path_or_null(cfg.src_refs_path);
  conf["tgt_refs"] = path_or_null(cfg.tgt_refs_path);
  conf["src_seg"] = path_or_null(cfg.src_seg_path);
  conf["hyp_seg"] = path_or_null(cfg.hyp_seg_path);
  conf["mode"] = mode_name(cfg.mode);
  conf["metrics"] = cfg.metrics;
  conf["s"] = cfg.s_values;
  conf["decimals"] = cfg.decimals;
  conf["per_sentence"] = cfg.per_sentence;
  conf["empty_segments"] = cfg.skip_empty ? "skip" : "reject";
  conf["aggregation"] = cfg.micro ? "micro" : "macro";
  conf["case_sensitive"] = cfg.case_sensitive;
  doc["config"] = conf;
  doc["streams"] = records.size();
  doc["sentences"] = pooled.sentences;

  auto series_json = [&](const MetricSeries& series) {
    ojson m;
    m["aggregate"] = round_to(series.aggregate, cfg.decimals);
    if (cfg.per_sentence) {
      ojson arr = ojson::array();
      for (double v : series.per_sentence) arr.push_back(round_to(v, cfg.decimals));
      m["per_sentence"] = arr;
    }
    return m;
  };

  ojson metrics;
  if (pooled.ap) metrics["ap"] = series_json(*pooled.ap);
  if (pooled.al) metrics["al"] = series_json(*pooled.al);
  if (!pooled.dal.empty()) {
    ojson arr = ojson::array();
    for (const auto& [s, series] : pooled.dal) {
      ojson entry;
      entry["s"] = s;
      entry.update(series_json(series));
      arr.push_back(entry);
    }
    metrics["dal"] = arr;
  }
  doc["metrics"] = metrics;

  if (src_edit_total >= 0 || hyp_edit_total >= 0) {
    ojson rs;
    if (src_edit_total >= 0) rs["source_edit_cost"] = src_edit_total;
    if (hyp_edit_total >= 0) rs["hypothesis_edit_cost"] = hyp_edit_total;
    doc["resegmentation"] = rs;
  }

  doc["warnings"] = {{"tau_fallback", pooled.warnings.tau_fallbacks},
                     {"negative_local_delay", pooled.warnings.negative_local_delays},
                     {"empty_segment", pooled.warnings.empty_segments}};

  Report report;
  report.warnings = pooled.warnings;
  if (!cfg.tsv) {
    report.rendered = doc.dump(2) + "\n";
    return report;
  }

  // TSV rendering: metric, s, scope (aggregate or 1-based sentence), value.
  std::ostringstream tsv;
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.*f", cfg.decimals, round_to(v, cfg.decimals));
    return std::string(buf);
  };
  tsv << "metric\ts\tscope\tvalue\n";
  auto emit = [&](const std::string& name, const std::string& s,
                  const MetricSeries& series) {
    tsv << name << '\t' << s << "\taggregate\t" << fmt(series.aggregate) << '\n';
    if (cfg.per_sentence)
      for (std::size_t i = 0; i < series.per_sentence.size(); ++i)
        tsv << name << '\t' << s << '\t' << (i + 1) << '\t'
            << fmt(series.per_sentence[i]) << '\n';
  };
  if (pooled.ap) emit("ap", "-", *pooled.ap);
  if (pooled.al) emit("al", "-", *pooled.al);
  for (const auto& [s, series] : pooled.dal) {
    std::snprintf(buf, sizeof buf, "%g", s);
    emit("dal", buf, series);
  }
  report.rendered = tsv.str();
  return report;
}

namespace {

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& files) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("error while writing " + path);
  files.push_back(path);
}

}  // namespace

FileOutputs run_simulate(const SimulateConfig& cfg) {
  if (cfg.out_prefix.empty()) throw ValidationError("simulate requires --out-prefix");
  if (cfg.corpus_path.empty() == (cfg.random_sentences == 0))
    throw ValidationError("simulate requires exactly one of --corpus or --random");

  SimCorpus corpus = cfg.corpus_path.empty()
                         ? random_corpus(cfg.random_sentences, cfg.seed)
                         : load_corpus_file(cfg.corpus_path);
  PolicySpec policy;
  policy.k = cfg.k;
  policy.gamma_mode = cfg.gamma_mode;
  policy.global_gamma = cfg.gamma;
  SimResult sim = simulate_stream(corpus, policy);

  FileOutputs out;
  {
    std::ostringstream ss;
    save_trace(ss, {sim.record});
    write_file(cfg.out_prefix + ".trace.jsonl", ss.str(), out.files);
  }
  {
    std::ostringstream ss;
    save_segmentation(ss, sim.src_seg);
    write_file(cfg.out_prefix + ".src.seg", ss.str(), out.files);
  }
  {
    std::ostringstream ss;
    save_segmentation(ss, sim.hyp_seg);
    write_file(cfg.out_prefix + ".hyp.seg", ss.str(), out.files);
  }
  {
    std::ostringstream ss;
    for (const auto& sent : apply_segmentation(sim.record.source, sim.src_seg))
      ss << join_tokens(sent) << '\n';
    write_file(cfg.out_prefix + ".src.refs", ss.str(), out.files);
  }
  {
    std::ostringstream ss;
    for (const auto& sent : apply_segmentation(sim.record.hypothesis, sim.hyp_seg))
      ss << join_tokens(sent) << '\n';
    write_file(cfg.out_prefix + ".tgt.refs", ss.str(), out.files);
  }
  if (cfg.perturb_src > 0) {
    std::ostringstream ss;
    save_segmentation(ss, perturb_segmentation(sim.src_seg, cfg.perturb_src, cfg.seed + 1));
    write_file(cfg.out_prefix + ".src.perturbed.seg", ss.str(), out.files);
  }
  if (cfg.perturb_hyp > 0) {
    std::ostringstream ss;
    save_segmentation(ss, perturb_segmentation(sim.hyp_seg, cfg.perturb_hyp, cfg.seed + 2));
    write_file(cfg.out_prefix + ".hyp.perturbed.seg", ss.str(), out.files);
  }

  ojson doc;
  doc["tool"] = {{"name", "streamlat"}, {"version", kVersion}};
  ojson conf;
  conf["subcommand"] = "simulate";
  conf["corpus"] = path_or_null(cfg.corpus_path);
  conf["random"] = cfg.random_sentences;
  conf["seed"] = cfg.seed;
  conf["k"] = cfg.k;
  conf["gamma_mode"] = cfg.gamma_mode == GammaMode::global ? "global" : "per-sentence";
  if (cfg.gamma_mode == GammaMode::global) conf["gamma"] = cfg.gamma;
  conf["perturb_src"] = cfg.perturb_src;
  conf["perturb_hyp"] = cfg.perturb_hyp;
  conf["out_prefix"] = cfg.out_prefix;
  doc["config"] = conf;
  doc["stream"] = {{"sentences", corpus.sentences.size()},
                   {"source_tokens", sim.record.source.size()},
                   {"hypothesis_tokens", sim.record.hypothesis.size()}};
  doc["files"] = out.files;
  out.summary = doc.dump(2) + "\n";
  return out;
}

FileOutputs run_resegment(const ResegmentConfig& cfg) {
  if (cfg.hyp_path.empty() || cfg.refs_path.empty() || cfg.out_prefix.empty())
    throw ValidationError("resegment requires --hyp, --refs and --out-prefix");

  std::ifstream in(cfg.hyp_path);
  if (!in) throw IoError("cannot open hypothesis file: " + cfg.hyp_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  TokenStream hyp = tokenize(buffer.str());
  std::vector<TokenStream> refs = load_reference_file(cfg.refs_path);

  AlignmentResult result = resegment(hyp, refs, ResegmentOptions{cfg.case_sensitive});

  FileOutputs out;
  {
    std::ostringstream ss;
    save_segmentation(ss, result.segmentation);
    write_file(cfg.out_prefix + ".seg", ss.str(), out.files);
  }
  {
    ojson cost;
    cost["total_cost"] = result.total_cost;
    cost["per_segment_cost"] = result.per_segment_cost;
    write_file(cfg.out_prefix + ".cost.json", cost.dump(2) + "\n", out.files);
  }

  ojson doc;
  doc["tool"] = {{"name", "streamlat"}, {"version", kVersion}};
  doc["config"] = {{"subcommand", "resegment"},
                   {"hyp", cfg.hyp_path},
                   {"refs", cfg.refs_path},
                   {"out_prefix", cfg.out_prefix},
                   {"case_sensitive", cfg.case_sensitive}};
  doc["segments"] = result.per_segment_cost.size();
  doc["total_cost"] = result.total_cost;
  doc["files"] = out.files;
  out.summary = doc.dump(2) + "\n";
  return out;
}

}  // namespace streamlat::cli
