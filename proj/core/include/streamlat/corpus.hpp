#ifndef STREAMLAT_CORPUS_HPP
#define STREAMLAT_CORPUS_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "streamlat/error.hpp"

namespace streamlat {

// A token stream is an ordered list of whitespace-free, non-empty tokens.
using TokenStream = std::vector<std::string>;

// Splits on runs of Unicode whitespace. Empty input yields an empty stream.
TokenStream tokenize(std::string_view text);

// Space-joined rendering, the inverse of tokenize for valid streams.
std::string join_tokens(const TokenStream& tokens);

// Sentence boundaries over a token stream, stored as exclusive segment ends.
// The last boundary always equals the stream length, so N boundaries define
// N segments that reconstruct the stream by concatenation. Segments must be
// non-empty (strictly increasing boundaries) unless a caller explicitly
// permits empty segments, as re-segmentation output does.
struct Segmentation {
  std::vector<std::size_t> boundaries;

  std::size_t segment_count() const { return boundaries.size(); }
  std::vector<std::size_t> lengths() const;
  static Segmentation from_lengths(const std::vector<std::size_t>& lengths);

  // Throws ValidationError unless boundaries are valid for a stream of
  // `stream_length` tokens.
  void validate(std::size_t stream_length, bool allow_empty = false) const;
};

std::vector<TokenStream> apply_segmentation(const TokenStream& stream,
                                            const Segmentation& seg,
                                            bool allow_empty = false);

// Raw record of a simultaneous decode: G[j] is the number of source tokens
// that had been read when hypothesis token j was written, over the whole
// stream. G is non-decreasing and 1 <= G[j] <= src_len.
struct ReadWriteTrace {
  std::vector<int> G;
  int src_len = 0;

  void validate() const;
};

// One line of a trace file: a full stream (e.g. one talk).
struct StreamRecord {
  TokenStream source;
  TokenStream hypothesis;
  ReadWriteTrace trace;
};

// Trace JSONL: one object per line with keys "source_stream",
// "hypothesis_stream" (space-joined tokens) and "delays" (one integer per
// hypothesis token). Parse and validation errors carry <name>:<line> context.
std::vector<StreamRecord> load_trace(std::istream& in, std::string_view name = "<trace>");
std::vector<StreamRecord> load_trace_file(const std::string& path);
void save_trace(std::ostream& out, const std::vector<StreamRecord>& records);

// Reference files: UTF-8 text, one sentence per line, tokenized on load.
// Blank lines are rejected.
std::vector<TokenStream> load_reference_file(const std::string& path);

// Segmentation files: one line per stream, space-separated boundaries.
std::vector<Segmentation> load_segmentation_file(const std::string& path);
void save_segmentation(std::ostream& out, const Segmentation& seg);

}  // namespace streamlat

#endif  // STREAMLAT_CORPUS_HPP
