#ifndef STREAMLAT_RESEGMENT_HPP
#define STREAMLAT_RESEGMENT_HPP

#include <span>
#include <string>
#include <vector>

#include "streamlat/corpus.hpp"

namespace streamlat {

struct ResegmentOptions {
  // Tokens are compared after ASCII case folding by default.
  bool case_sensitive = false;
};

// Token-level Levenshtein distance with unit insertion/deletion/substitution
// costs.
int edit_distance(std::span<const std::string> a, std::span<const std::string> b,
                  const ResegmentOptions& opts = {});

// A cut of a hypothesis stream into one segment per reference sentence.
// Empty segments are permitted (a system may drop a sentence entirely).
struct AlignmentResult {
  Segmentation segmentation;
  long long total_cost = 0;
  std::vector<int> per_segment_cost;
};

// Cuts hyp into refs.size() contiguous (possibly empty) segments minimizing
// the summed edit distance to the references. Runs one banded Levenshtein
// pass per reference over the full hypothesis, seeded from the previous
// reference's prefix costs with free segment starts; time
// O(|hyp| * sum |ref_n|), memory O(|hyp|) per reference row plus one stored
// start column row per reference for boundary recovery.
//
// Ties are broken deterministically: minimal cost first, then the earliest
// segment start, resolved from the last segment backwards.
AlignmentResult resegment(const TokenStream& hyp,
                          const std::vector<TokenStream>& refs,
                          const ResegmentOptions& opts = {});

// Exhaustive oracle for tests: enumerates every boundary placement and
// applies the same tie-break. Guarded to |hyp| <= 14 and refs.size() <= 4.
AlignmentResult resegment_bruteforce(const TokenStream& hyp,
                                     const std::vector<TokenStream>& refs,
                                     const ResegmentOptions& opts = {});

}  // namespace streamlat

#endif  // STREAMLAT_RESEGMENT_HPP
