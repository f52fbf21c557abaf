#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "channelbench/error.hpp"
#include "channelbench/graph.hpp"

namespace channelbench {

namespace {

constexpr std::array<char, 4> kCsrMagic = {'C', 'B', 'C', 'S'};
constexpr std::uint32_t kCsrVersion = 1;
constexpr std::size_t kCsrHeaderBytes = 4 + 4 + 4 + 8 + 8;
// Largest admissible id; the all-ones pattern is the gap sentinel.
constexpr std::uint64_t kMaxVertexId = std::numeric_limits<vertex_t>::max() - 1;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw Error(Errc::parse, "line " + std::to_string(line_no) + ": " + what);
}

std::uint64_t parse_u64(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    parse_error(line_no, "expected non-negative integer, got '" + std::string(tok) + "'");
  }
  return value;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    fn(line, line_no);
    pos = end + 1;
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <class UInt>
void put_le(std::vector<std::uint8_t>& out, UInt value) {
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <class UInt>
UInt get_le(std::span<const std::uint8_t> bytes, std::size_t at) {
  UInt value = 0;
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    value |= static_cast<UInt>(bytes[at + i]) << (8 * i);
  }
  return value;
}

}  // namespace

EdgeList parse_edge_list(std::string_view text) {
  EdgeList el;
  std::uint64_t max_id = 0;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto toks = split_ws(line);
    if (toks.empty()) return;
    if (toks.front().front() == '#' || toks.front().front() == '%') return;
    if (toks.size() != 2) {
      parse_error(line_no, "expected 2 vertex ids, got " + std::to_string(toks.size()) + " tokens");
    }
    const std::uint64_t u = parse_u64(toks[0], line_no);
    const std::uint64_t v = parse_u64(toks[1], line_no);
    if (u > kMaxVertexId || v > kMaxVertexId) parse_error(line_no, "vertex id exceeds 32-bit range");
    max_id = std::max({max_id, u, v});
    el.edges.push_back({static_cast<vertex_t>(u), static_cast<vertex_t>(v)});
  });
  if (el.edges.empty()) throw Error(Errc::empty_graph, "edge list contains no edges");
  el.nv_hint = max_id + 1;
  return el;
}

EdgeList parse_matrix_market(std::string_view text) {
  EdgeList el;
  bool saw_header = false;
  bool saw_size = false;
  std::uint64_t rows = 0, cols = 0, nnz = 0;
  std::uint64_t expected_tokens = 2;

  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (!saw_header) {
      const auto toks = split_ws(line);
      if (toks.size() < 5 || toks[0] != "%%MatrixMarket" || lower(toks[1]) != "matrix") {
        parse_error(line_no, "missing '%%MatrixMarket matrix' header");
      }
      const std::string layout = lower(toks[2]);
      const std::string field = lower(toks[3]);
      const std::string symmetry = lower(toks[4]);
      if (layout != "coordinate") parse_error(line_no, "unsupported layout '" + layout + "'");
      if (field == "pattern") {
        expected_tokens = 2;
      } else if (field == "real" || field == "integer") {
        expected_tokens = 3;
      } else {
        parse_error(line_no, "unsupported field '" + field + "'");
      }
      if (symmetry != "general" && symmetry != "symmetric" && symmetry != "skew-symmetric") {
        parse_error(line_no, "unsupported symmetry '" + symmetry + "'");
      }
      saw_header = true;
      return;
    }
    const auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '%') return;
    if (!saw_size) {
      if (toks.size() != 3) parse_error(line_no, "expected 'rows cols nnz' size line");
      rows = parse_u64(toks[0], line_no);
      cols = parse_u64(toks[1], line_no);
      nnz = parse_u64(toks[2], line_no);
      if (std::max(rows, cols) > kMaxVertexId + 1) parse_error(line_no, "dimension exceeds 32-bit ids");
      el.edges.reserve(nnz);
      saw_size = true;
      return;
    }
    if (toks.size() != expected_tokens) {
      parse_error(line_no, "expected " + std::to_string(expected_tokens) + " tokens per entry");
    }
    const std::uint64_t r = parse_u64(toks[0], line_no);
    const std::uint64_t c = parse_u64(toks[1], line_no);
    if (r == 0 || c == 0 || r > rows || c > cols) {
      throw Error(Errc::range, "line " + std::to_string(line_no) + ": index (" + std::to_string(r) +
                                   "," + std::to_string(c) + ") outside declared " +
                                   std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (el.edges.size() == nnz) parse_error(line_no, "more entries than declared nnz");
    el.edges.push_back({static_cast<vertex_t>(r - 1), static_cast<vertex_t>(c - 1)});
  });

  if (!saw_header) throw Error(Errc::parse, "line 1: missing '%%MatrixMarket matrix' header");
  if (!saw_size) throw Error(Errc::parse, "missing size line");
  if (el.edges.size() != nnz) {
    throw Error(Errc::parse, "declared " + std::to_string(nnz) + " entries, found " +
                                 std::to_string(el.edges.size()));
  }
  if (el.edges.empty()) throw Error(Errc::empty_graph, "matrix contains no entries");
  el.nv_hint = std::max(rows, cols);
  return el;
}

EdgeList load_edge_list(const std::filesystem::path& path) { return parse_edge_list(read_file(path)); }

EdgeList load_matrix_market(const std::filesystem::path& path) {
  return parse_matrix_market(read_file(path));
}

std::vector<std::uint8_t> encode_csr_binary(const Csr& g) {
  std::vector<std::uint8_t> out;
  out.reserve(kCsrHeaderBytes + g.offsets().size() * 8 + g.adjacency().size() * 4);
  out.insert(out.end(), kCsrMagic.begin(), kCsrMagic.end());
  put_le<std::uint32_t>(out, kCsrVersion);
  put_le<std::uint32_t>(out, 0);
  put_le<std::uint64_t>(out, g.num_vertices());
  put_le<std::uint64_t>(out, g.num_edges());
  for (offset_t o : g.offsets()) put_le<std::uint64_t>(out, o);
  for (vertex_t a : g.adjacency()) put_le<std::uint32_t>(out, a);
  return out;
}

Csr decode_csr_binary(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kCsrHeaderBytes) throw Error(Errc::format, "csr file truncated in header");
  if (!std::equal(kCsrMagic.begin(), kCsrMagic.end(), bytes.begin())) {
    throw Error(Errc::format, "bad magic, expected 'CBCS'");
  }
  const auto version = get_le<std::uint32_t>(bytes, 4);
  if (version != kCsrVersion) {
    throw Error(Errc::format, "unsupported csr version " + std::to_string(version));
  }
  if (get_le<std::uint32_t>(bytes, 8) != 0) throw Error(Errc::format, "reserved field is nonzero");
  const auto nv = get_le<std::uint64_t>(bytes, 12);
  const auto ne = get_le<std::uint64_t>(bytes, 20);
  if (nv > std::numeric_limits<vertex_t>::max() || ne > (bytes.size() / 4)) {
    throw Error(Errc::format, "csr file truncated: header counts exceed payload");
  }
  const std::uint64_t expected = kCsrHeaderBytes + (nv + 1) * 8 + ne * 4;
  if (bytes.size() < expected) throw Error(Errc::format, "csr file truncated");
  if (bytes.size() > expected) throw Error(Errc::format, "trailing bytes after csr payload");

  std::vector<offset_t> offsets(nv + 1);
  std::size_t at = kCsrHeaderBytes;
  for (auto& o : offsets) {
    o = get_le<std::uint64_t>(bytes, at);
    at += 8;
  }
  std::vector<vertex_t> adjacency(ne);
  for (auto& a : adjacency) {
    a = get_le<std::uint32_t>(bytes, at);
    at += 4;
  }
  return Csr::from_parts(std::move(offsets), std::move(adjacency));
}

void write_csr_binary(const Csr& g, const std::filesystem::path& path) {
  const auto bytes = encode_csr_binary(g);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

Csr read_csr_binary(const std::filesystem::path& path) {
  const std::string raw = read_file(path);
  return decode_csr_binary(
      {reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()});
}

}  // namespace channelbench
