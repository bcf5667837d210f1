#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <utility>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gsp/clustering.hpp"
#include "gsp/design.hpp"
#include "gsp/error.hpp"
#include "gsp/graph.hpp"
#include "gsp/spectral.hpp"
#include "gsp/synth.hpp"

namespace gsp::io {

/// Shortest-round-trip-safe text form: 17 significant digits.
inline std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

inline double parse_real(std::string_view text, std::size_t line) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    parse_fail(line, "expected a real number, got '" + std::string(text) + "'");
  }
  return v;
}

inline std::size_t parse_index(std::string_view text, std::size_t line) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    parse_fail(line, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

// Reads CSV data rows after checking the header. Blank lines are skipped.
template <typename RowFn>
void read_csv(std::istream& in, std::string_view expected_header, RowFn&& on_row) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (!header_seen) {
      if (text != expected_header) {
        parse_fail(line_no, "expected header '" + std::string(expected_header) + "', got '" +
                                std::string(text) + "'");
      }
      header_seen = true;
      continue;
    }
    on_row(split(text, ','), line_no);
  }
  if (!header_seen) parse_fail(line_no, "missing header '" + std::string(expected_header) + "'");
}

inline void expect_fields(const std::vector<std::string_view>& fields, std::size_t count, std::size_t line) {
  if (fields.size() != count) {
    parse_fail(line, "expected " + std::to_string(count) + " fields, got " + std::to_string(fields.size()));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Edge-list format:
//   n <count>
//   e <u> <v> <w>
// '#' starts a comment. Vertices are 0-based.
// ---------------------------------------------------------------------------

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.vertex_count() << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << format_real(e.weight) << '\n';
}

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  bool have_n = false;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    const auto tok = detail::tokens(text);
    if (tok.empty()) continue;
    if (!have_n) {
      if (tok[0] != "n" || tok.size() != 2) detail::parse_fail(line_no, "expected 'n <count>' before any edges");
      n = detail::parse_index(tok[1], line_no);
      if (n == 0) detail::parse_fail(line_no, "vertex count must be positive");
      have_n = true;
      continue;
    }
    if (tok[0] == "e") {
      if (tok.size() != 4) detail::parse_fail(line_no, "expected 'e <u> <v> <w>'");
      edges.push_back({detail::parse_index(tok[1], line_no), detail::parse_index(tok[2], line_no),
                       detail::parse_real(tok[3], line_no)});
      edge_lines.push_back(line_no);
      continue;
    }
    detail::parse_fail(line_no, "unknown directive '" + std::string(tok[0]) + "'");
  }
  if (!have_n) detail::parse_fail(line_no, "missing 'n <count>' line");

  // Validate edge by edge so structural errors can name their source line.
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    try {
      (void)build_graph(n, {edges[i]});
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(edge_lines[i]) + ": " + e.what());
    }
    const auto key = std::minmax(edges[i].u, edges[i].v);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicateEdge,
                  "line " + std::to_string(edge_lines[i]) + ": edge " + describe(edges[i]) + " repeats an earlier edge");
    }
  }
  return build_graph(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// CSV surfaces
// ---------------------------------------------------------------------------

inline void write_signal_csv(std::ostream& out, std::span<const double> x) {
  out << "vertex,value\n";
  for (std::size_t i = 0; i < x.size(); ++i) out << i << ',' << format_real(x[i]) << '\n';
}

inline GraphSignal read_signal_csv(std::istream& in) {
  GraphSignal x;
  detail::read_csv(in, "vertex,value", [&](const auto& f, std::size_t line) {
    detail::expect_fields(f, 2, line);
    if (detail::parse_index(f[0], line) != x.size()) {
      detail::parse_fail(line, "vertices must be listed in order starting at 0");
    }
    x.push_back(detail::parse_real(f[1], line));
  });
  return x;
}

inline void write_eigenvalues_csv(std::ostream& out, std::span<const double> eigenvalues) {
  out << "k,lambda\n";
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) out << k << ',' << format_real(eigenvalues[k]) << '\n';
}

inline void write_spectrum_csv(std::ostream& out, std::span<const double> eigenvalues, const Spectrum& spectrum) {
  gsp::detail::require_same_length(eigenvalues.size(), spectrum.coefficients.size(), "spectrum CSV");
  out << "k,lambda,X\n";
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    out << k << ',' << format_real(eigenvalues[k]) << ',' << format_real(spectrum.coefficients[k]) << '\n';
  }
}

struct SpectrumTable {
  std::vector<double> eigenvalues;
  Spectrum spectrum;
};

inline SpectrumTable read_spectrum_csv(std::istream& in) {
  SpectrumTable t;
  detail::read_csv(in, "k,lambda,X", [&](const auto& f, std::size_t line) {
    detail::expect_fields(f, 3, line);
    if (detail::parse_index(f[0], line) != t.eigenvalues.size()) {
      detail::parse_fail(line, "spectral indices must be listed in order starting at 0");
    }
    t.eigenvalues.push_back(detail::parse_real(f[1], line));
    t.spectrum.coefficients.push_back(detail::parse_real(f[2], line));
  });
  return t;
}

/// Two sections separated by a blank line: `m,h` coefficients, then
/// `k,lambda,target,realized` gains.
inline void write_design_csv(std::ostream& out, std::span<const double> eigenvalues, const DesignResult& r) {
  out << "m,h\n";
  const auto& h = r.filter.coefficients();
  for (std::size_t m = 0; m < h.size(); ++m) out << m << ',' << format_real(h[m]) << '\n';
  out << "\nk,lambda,target,realized\n";
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    out << k << ',' << format_real(eigenvalues[k]) << ',' << format_real(r.target_gains[k]) << ','
        << format_real(r.realized_gains[k]) << '\n';
  }
}

/// Reads the coefficient section of a design CSV.
inline PolynomialFilter read_design_coefficients(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> h;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (!header_seen) {
      if (text.empty()) continue;
      if (text != "m,h") detail::parse_fail(line_no, "expected header 'm,h'");
      header_seen = true;
      continue;
    }
    if (text.empty()) break;
    const auto f = detail::split(text, ',');
    detail::expect_fields(f, 2, line_no);
    if (detail::parse_index(f[0], line_no) != h.size()) {
      detail::parse_fail(line_no, "coefficient indices must be listed in order starting at 0");
    }
    h.push_back(detail::parse_real(f[1], line_no));
  }
  if (!header_seen) detail::parse_fail(line_no, "missing header 'm,h'");
  if (h.empty()) detail::parse_fail(line_no, "no filter coefficients");
  return PolynomialFilter(std::move(h));
}

inline void write_partition_csv(std::ostream& out, const Partition& p) {
  out << "vertex,label\n";
  for (std::size_t i = 0; i < p.labels.size(); ++i) out << i << ',' << p.labels[i] << '\n';
}

inline void write_coordinates_csv(std::ostream& out, std::span<const Point> points) {
  out << "vertex,x,y\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << i << ',' << format_real(points[i].x) << ',' << format_real(points[i].y) << '\n';
  }
}

inline void write_report_csv(std::ostream& out, const ExperimentReport& r) {
  out << "method,snr_input_db,snr_output_db,improvement_db\n";
  out << r.method << ',' << format_real(r.snr_input_db) << ',' << format_real(r.snr_output_db) << ','
      << format_real(r.improvement_db) << '\n';
}

inline void write_report_summary(std::ostream& out, const ExperimentReport& r) {
  char buf[64];
  auto fixed = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  out << "method:          " << r.method << '\n'
      << "input SNR:       " << fixed(r.snr_input_db) << " dB\n"
      << "output SNR:      " << fixed(r.snr_output_db) << " dB\n"
      << "improvement:     " << fixed(r.improvement_db) << " dB\n";
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

/// Writes to `<path>.tmp` and renames over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot rename onto '" + path.string() + "': " + ec.message());
}

template <typename WriteFn>
void write_atomic(const std::filesystem::path& path, WriteFn&& write) {
  std::ostringstream buffer;
  write(buffer);
  write_file_atomic(path, buffer.str());
}

template <typename ReadFn>
auto read_file(const std::filesystem::path& path, ReadFn&& read) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read(in);
}

}  // namespace gsp::io
