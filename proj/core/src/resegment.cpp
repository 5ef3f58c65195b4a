#include "streamlat/resegment.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace streamlat {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 2;

std::string fold_case(const std::string& token) {
  std::string out = token;
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// Interns tokens to dense ids so the DP compares ints.
class TokenIds {
 public:
  explicit TokenIds(bool case_sensitive) : case_sensitive_(case_sensitive) {}

  int id(const std::string& token) {
    const std::string key = case_sensitive_ ? token : fold_case(token);
    auto [it, inserted] = map_.emplace(key, static_cast<int>(map_.size()));
    return it->second;
  }

  std::vector<int> ids(std::span<const std::string> tokens) {
    std::vector<int> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(id(t));
    return out;
  }

 private:
  bool case_sensitive_;
  std::unordered_map<std::string, int> map_;
};

int lev(std::span<const int> a, std::span<const int> b) {
  const std::size_t m = a.size(), n = b.size();
  std::vector<int> prev(n + 1), cur(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= n; ++j) {
      int diag = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

std::vector<int> per_segment_costs(const std::vector<int>& hyp,
                                   const std::vector<std::vector<int>>& refs,
                                   const Segmentation& seg) {
  std::vector<int> out;
  out.reserve(refs.size());
  std::size_t prev = 0;
  for (std::size_t n = 0; n < refs.size(); ++n) {
    std::span<const int> segment(hyp.data() + prev, seg.boundaries[n] - prev);
    out.push_back(lev(segment, refs[n]));
    prev = seg.boundaries[n];
  }
  return out;
}

}  // namespace

int edit_distance(std::span<const std::string> a, std::span<const std::string> b,
                  const ResegmentOptions& opts) {
  TokenIds ids(opts.case_sensitive);
  return lev(ids.ids(a), ids.ids(b));
}

AlignmentResult resegment(const TokenStream& hyp, const std::vector<TokenStream>& refs,
                          const ResegmentOptions& opts) {
  if (refs.empty()) throw ValidationError("resegment needs at least one reference sentence");
  for (const auto& r : refs)
    if (r.empty()) throw ValidationError("resegment references must be non-empty");

  TokenIds ids(opts.case_sensitive);
  std::vector<int> h = ids.ids(hyp);
  std::vector<std::vector<int>> r;
  r.reserve(refs.size());
  for (const auto& ref : refs) r.push_back(ids.ids(ref));

  const std::size_t H = h.size();
  const std::size_t N = r.size();

  // D[h'] = minimal cost of aligning the references consumed so far to the
  // hypothesis prefix of length h'. Every hypothesis token belongs to some
  // segment, so only the empty prefix is free initially.
  std::vector<int> cost(H + 1, kInf), next_cost(H + 1);
  std::vector<std::uint32_t> start(H + 1), next_start(H + 1);
  cost[0] = 0;

  // One row of segment-start columns per reference, for boundary recovery.
  std::vector<std::vector<std::uint32_t>> starts_at_end;
  starts_at_end.reserve(N);

  for (std::size_t n = 0; n < N; ++n) {
    const std::vector<int>& ref = r[n];
    // Row j=0: segment n may start at any column; ties prefer the earliest
    // start, which the (cost, start) order below encodes.
    next_cost[0] = cost[0];
    next_start[0] = 0;
    for (std::size_t col = 1; col <= H; ++col) {
      int c_open = cost[col];                 // open segment n at col
      std::uint32_t s_open = static_cast<std::uint32_t>(col);
      int c_ext = next_cost[col - 1] + 1;     // unmatched hypothesis token
      std::uint32_t s_ext = next_start[col - 1];
      if (c_ext < c_open || (c_ext == c_open && s_ext < s_open)) {
        next_cost[col] = c_ext;
        next_start[col] = s_ext;
      } else {
        next_cost[col] = c_open;
        next_start[col] = s_open;
      }
    }
    std::swap(cost, next_cost);
    std::swap(start, next_start);

    for (std::size_t j = 1; j <= ref.size(); ++j) {
      next_cost[0] = cost[0] + 1;  // reference token with no hypothesis left
      next_start[0] = start[0];
      for (std::size_t col = 1; col <= H; ++col) {
        // Candidates in preference order: match/substitute, reference token
        // unmatched, hypothesis token unmatched.
        int best = cost[col - 1] + (ref[j - 1] == h[col - 1] ? 0 : 1);
        std::uint32_t best_start = start[col - 1];
        int c = cost[col] + 1;
        if (c < best || (c == best && start[col] < best_start)) {
          best = c;
          best_start = start[col];
        }
        c = next_cost[col - 1] + 1;
        if (c < best || (c == best && next_start[col - 1] < best_start)) {
          best = c;
          best_start = next_start[col - 1];
        }
        next_cost[col] = best;
        next_start[col] = best_start;
      }
      std::swap(cost, next_cost);
      std::swap(start, next_start);
    }
    starts_at_end.push_back(start);
  }

  AlignmentResult out;
  out.total_cost = cost[H];
  out.segmentation.boundaries.resize(N);
  std::size_t end = H;
  for (std::size_t n = N; n-- > 0;) {
    out.segmentation.boundaries[n] = end;
    end = starts_at_end[n][end];
  }
  out.per_segment_cost = per_segment_costs(h, r, out.segmentation);
#ifndef NDEBUG
  long long check = 0;
  for (int c : out.per_segment_cost) check += c;
  assert(check == out.total_cost);
#endif
  return out;
}

AlignmentResult resegment_bruteforce(const TokenStream& hyp,
                                     const std::vector<TokenStream>& refs,
                                     const ResegmentOptions& opts) {
  if (hyp.size() > 14 || refs.size() > 4)
    throw ValidationError("resegment_bruteforce guard: |hyp| <= 14 and <= 4 references");
  if (refs.empty()) throw ValidationError("resegment needs at least one reference sentence");
  for (const auto& r : refs)
    if (r.empty()) throw ValidationError("resegment references must be non-empty");

  TokenIds ids(opts.case_sensitive);
  std::vector<int> h = ids.ids(hyp);
  std::vector<std::vector<int>> r;
  for (const auto& ref : refs) r.push_back(ids.ids(ref));

  const std::size_t H = h.size();
  const std::size_t N = r.size();

  std::vector<std::size_t> cuts(N, 0);
  cuts[N - 1] = H;
  std::vector<std::size_t> best_bounds;
  long long best_cost = -1;

  // Enumerates all non-decreasing cut tuples; the tie-break minimizes the
  // boundary tuple compared from the last segment backwards, matching the
  // DP's backward reconstruction.
  auto better = [&](long long cost, const std::vector<std::size_t>& bounds) {
    if (best_cost < 0 || cost < best_cost) return true;
    if (cost > best_cost) return false;
    for (std::size_t i = bounds.size(); i-- > 0;) {
      if (bounds[i] != best_bounds[i]) return bounds[i] < best_bounds[i];
    }
    return false;
  };

  auto evaluate = [&](const std::vector<std::size_t>& bounds) {
    long long cost = 0;
    std::size_t prev = 0;
    for (std::size_t n = 0; n < N; ++n) {
      std::span<const int> segment(h.data() + prev, bounds[n] - prev);
      cost += lev(segment, r[n]);
      prev = bounds[n];
    }
    if (better(cost, bounds)) {
      best_cost = cost;
      best_bounds = bounds;
    }
  };

  // Recursive enumeration of the N-1 free cuts.
  auto enumerate = [&](auto&& self, std::size_t idx, std::size_t lo) -> void {
    if (idx == N - 1) {
      evaluate(cuts);
      return;
    }
    for (std::size_t c = lo; c <= H; ++c) {
      cuts[idx] = c;
      self(self, idx + 1, c);
    }
  };
  enumerate(enumerate, 0, 0);

  AlignmentResult out;
  out.segmentation.boundaries = best_bounds;
  out.total_cost = best_cost;
  out.per_segment_cost = per_segment_costs(h, r, out.segmentation);
  return out;
}

}  // namespace streamlat
