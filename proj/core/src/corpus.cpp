#include "streamlat/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace streamlat {

namespace {

// Unicode whitespace code points beyond ASCII.
bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x0085: case 0x00A0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return (cp >= 0x2000 && cp <= 0x200A);
  }
}

bool is_ascii_space(unsigned char c) {
  return c == ' ' || (c >= 0x09 && c <= 0x0D);
}

// Decodes one UTF-8 sequence at text[pos]; on malformed input the byte is
// consumed as an opaque (non-whitespace) character.
char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  unsigned char b0 = static_cast<unsigned char>(text[pos]);
  int len = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    pos += 1;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    pos += 1;
    return 0xFFFD;
  }
  if (pos + len > text.size()) {
    pos += 1;
    return 0xFFFD;
  }
  for (int i = 1; i < len; ++i) {
    unsigned char b = static_cast<unsigned char>(text[pos + i]);
    if ((b & 0xC0) != 0x80) {
      pos += 1;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

}  // namespace

TokenStream tokenize(std::string_view text) {
  TokenStream out;
  std::size_t pos = 0;
  std::size_t token_begin = 0;
  bool in_token = false;
  while (pos < text.size()) {
    std::size_t here = pos;
    unsigned char b = static_cast<unsigned char>(text[pos]);
    bool space;
    if (b < 0x80) {
      space = is_ascii_space(b);
      ++pos;
    } else {
      space = is_unicode_space(decode_utf8(text, pos));
    }
    if (space) {
      if (in_token) {
        out.emplace_back(text.substr(token_begin, here - token_begin));
        in_token = false;
      }
    } else if (!in_token) {
      token_begin = here;
      in_token = true;
    }
  }
  if (in_token) out.emplace_back(text.substr(token_begin));
  return out;
}

std::string join_tokens(const TokenStream& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::size_t> Segmentation::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(boundaries.size());
  std::size_t prev = 0;
  for (std::size_t b : boundaries) {
    out.push_back(b - prev);
    prev = b;
  }
  return out;
}

Segmentation Segmentation::from_lengths(const std::vector<std::size_t>& lengths) {
  Segmentation seg;
  seg.boundaries.reserve(lengths.size());
  std::size_t acc = 0;
  for (std::size_t len : lengths) {
    acc += len;
    seg.boundaries.push_back(acc);
  }
  return seg;
}

void Segmentation::validate(std::size_t stream_length, bool allow_empty) const {
  if (boundaries.empty())
    throw ValidationError("segmentation must contain at least one boundary");
  std::size_t prev = 0;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    std::size_t b = boundaries[i];
    if (b > stream_length)
      throw ValidationError("segmentation boundary " + std::to_string(b) +
                            " exceeds stream length " + std::to_string(stream_length));
    bool ok = allow_empty ? (b >= prev) : (b > prev);
    if (!ok)
      throw ValidationError("segmentation boundaries must be " +
                            std::string(allow_empty ? "non-decreasing" : "strictly increasing"));
    prev = b;
  }
  if (boundaries.back() != stream_length)
    throw ValidationError("last segmentation boundary " + std::to_string(boundaries.back()) +
                          " does not equal stream length " + std::to_string(stream_length));
}

std::vector<TokenStream> apply_segmentation(const TokenStream& stream,
                                            const Segmentation& seg,
                                            bool allow_empty) {
  seg.validate(stream.size(), allow_empty);
  std::vector<TokenStream> out;
  out.reserve(seg.segment_count());
  std::size_t prev = 0;
  for (std::size_t b : seg.boundaries) {
    out.emplace_back(stream.begin() + static_cast<std::ptrdiff_t>(prev),
                     stream.begin() + static_cast<std::ptrdiff_t>(b));
    prev = b;
  }
  return out;
}

void ReadWriteTrace::validate() const {
  int prev = 1;
  for (std::size_t j = 0; j < G.size(); ++j) {
    if (G[j] < 1)
      throw ValidationError("delay at position " + std::to_string(j + 1) +
                            " is " + std::to_string(G[j]) +
                            "; at least one source token must be read before writing");
    if (G[j] < prev)
      throw ValidationError("delays must be non-decreasing (position " +
                            std::to_string(j + 1) + ")");
    if (G[j] > src_len)
      throw ValidationError("delay " + std::to_string(G[j]) + " at position " +
                            std::to_string(j + 1) + " exceeds source length " +
                            std::to_string(src_len));
    prev = G[j];
  }
}

namespace {

using json = nlohmann::json;

std::string context(std::string_view name, std::size_t line) {
  return std::string(name) + ":" + std::to_string(line) + ": ";
}

}  // namespace

std::vector<StreamRecord> load_trace(std::istream& in, std::string_view name) {
  std::vector<StreamRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError(context(name, line_no) + "malformed JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("source_stream") ||
        !doc.contains("hypothesis_stream") || !doc.contains("delays"))
      throw ValidationError(context(name, line_no) +
                            "record needs source_stream, hypothesis_stream and delays");
    if (!doc["source_stream"].is_string() || !doc["hypothesis_stream"].is_string() ||
        !doc["delays"].is_array())
      throw ValidationError(context(name, line_no) + "record field has the wrong type");

    StreamRecord rec;
    rec.source = tokenize(doc["source_stream"].get<std::string>());
    rec.hypothesis = tokenize(doc["hypothesis_stream"].get<std::string>());
    rec.trace.src_len = static_cast<int>(rec.source.size());
    rec.trace.G.reserve(doc["delays"].size());
    for (const auto& d : doc["delays"]) {
      if (!d.is_number_integer())
        throw ValidationError(context(name, line_no) + "delays must be integers");
      rec.trace.G.push_back(d.get<int>());
    }
    if (rec.trace.G.size() != rec.hypothesis.size())
      throw ValidationError(context(name, line_no) + "got " +
                            std::to_string(rec.trace.G.size()) + " delays for " +
                            std::to_string(rec.hypothesis.size()) + " hypothesis tokens");
    try {
      rec.trace.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(context(name, line_no) + e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<StreamRecord> load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file: " + path);
  return load_trace(in, path);
}

void save_trace(std::ostream& out, const std::vector<StreamRecord>& records) {
  for (const auto& rec : records) {
    nlohmann::ordered_json doc;
    doc["source_stream"] = join_tokens(rec.source);
    doc["hypothesis_stream"] = join_tokens(rec.hypothesis);
    doc["delays"] = rec.trace.G;
    out << doc.dump() << '\n';
  }
}

std::vector<TokenStream> load_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open reference file: " + path);
  std::vector<TokenStream> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    TokenStream tokens = tokenize(line);
    if (tokens.empty())
      throw ValidationError(context(path, line_no) + "empty reference sentence");
    out.push_back(std::move(tokens));
  }
  return out;
}

std::vector<Segmentation> load_segmentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open segmentation file: " + path);
  std::vector<Segmentation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Segmentation seg;
    std::istringstream ss(line);
    long long b;
    while (ss >> b) {
      if (b < 0)
        throw ValidationError(context(path, line_no) + "negative boundary");
      seg.boundaries.push_back(static_cast<std::size_t>(b));
    }
    if (!ss.eof())
      throw ValidationError(context(path, line_no) + "non-numeric boundary");
    if (seg.boundaries.empty())
      throw ValidationError(context(path, line_no) + "no boundaries on line");
    out.push_back(std::move(seg));
  }
  return out;
}

void save_segmentation(std::ostream& out, const Segmentation& seg) {
  for (std::size_t i = 0; i < seg.boundaries.size(); ++i) {
    if (i) out << ' ';
    out << seg.boundaries[i];
  }
  out << '\n';
}

}  // namespace streamlat
