#include "streamlat/metrics.hpp"

#include <algorithm>

namespace streamlat {

double gamma_ratio(int src_len, int tgt_len) {
  if (src_len < 1 || tgt_len < 1)
    throw ValidationError("gamma requires positive source and target lengths");
  return static_cast<double>(tgt_len) / static_cast<double>(src_len);
}

SentenceView make_view(int src_len, std::vector<int> g) {
  if (src_len < 1) throw ValidationError("sentence view requires src_len >= 1");
  SentenceView v;
  v.src_len = src_len;
  v.tgt_len = static_cast<int>(g.size());
  v.g = std::move(g);
  v.gamma = v.tgt_len > 0 ? gamma_ratio(src_len, v.tgt_len) : 0.0;
  return v;
}

TauResult tau_position(std::span<const int> g, int src_len) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] >= src_len) return {static_cast<int>(i + 1), false};
  }
  return {static_cast<int>(g.size()), true};
}

namespace {

void require_nonempty(const SentenceView& v) {
  if (v.empty())
    throw ValidationError("sentence metrics require a non-empty sentence view");
}

}  // namespace

SentenceScore ap_sentence(const SentenceView& v) {
  require_nonempty(v);
  SentenceScore s;
  s.normalizer = static_cast<double>(v.src_len) * static_cast<double>(v.tgt_len);
  s.costs.reserve(v.g.size());
  double sum = 0.0;
  for (int gi : v.g) {
    s.costs.push_back(gi);
    sum += gi;
  }
  s.value = sum / s.normalizer;
  return s;
}

AlScore al_sentence(const SentenceView& v) {
  require_nonempty(v);
  AlScore out;
  TauResult t = tau_position(v.g, v.src_len);
  out.tau_fallback = t.fallback;
  out.score.normalizer = t.tau;
  out.score.costs.reserve(v.g.size());
  double sum = 0.0;
  for (int i = 1; i <= v.tgt_len; ++i) {
    double cost = v.g[i - 1] - (i - 1) / v.gamma;
    out.score.costs.push_back(cost);
    if (i <= t.tau) sum += cost;
  }
  out.score.value = sum / t.tau;
  return out;
}

DalScore dal_sentence(const SentenceView& v, double s, std::optional<double> carry_in) {
  require_nonempty(v);
  if (s < 0.0 || s > 1.0)
    throw ValidationError("DAL write-cost scale must lie in [0,1]");
  DalScore out;
  out.score.normalizer = v.tgt_len;
  out.score.costs.reserve(v.g.size());
  double write_cost = s / v.gamma;
  double gp = 0.0;
  double sum = 0.0;
  for (int i = 1; i <= v.tgt_len; ++i) {
    if (i == 1) {
      gp = carry_in ? std::max<double>(v.g[0], *carry_in) : v.g[0];
    } else {
      gp = std::max<double>(v.g[i - 1], gp + write_cost);
    }
    double cost = gp - (i - 1) / v.gamma;
    out.score.costs.push_back(cost);
    sum += cost;
  }
  out.score.value = sum / v.tgt_len;
  out.carry_out = gp;
  return out;
}

}  // namespace streamlat
