// SPDX-License-Identifier: Apache-2.0
#include "omx/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "omx/errors.hpp"

namespace omx {

namespace {

constexpr const char* kKindNames[] = {"reflection", "phase",      "complex_response", "psd",
                                      "linewidth",  "efficiency", "voltage"};

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s, std::size_t line) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("trace CSV line " + std::to_string(line) + ": bad number '" +
                                std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

const char* to_string(TraceKind kind) noexcept { return kKindNames[static_cast<int>(kind)]; }

TraceKind trace_kind_from_string(const std::string& name) {
  for (int i = 0; i < static_cast<int>(std::size(kKindNames)); ++i) {
    if (name == kKindNames[i]) return static_cast<TraceKind>(i);
  }
  throw std::invalid_argument("unknown trace kind '" + name + "'");
}

Trace::Trace(std::vector<double> x, std::vector<double> y_re, std::vector<double> y_im,
             TraceKind kind, std::string x_unit, std::map<std::string, std::string> meta)
    : x_(std::move(x)),
      y_re_(std::move(y_re)),
      y_im_(std::move(y_im)),
      kind_(kind),
      x_unit_(std::move(x_unit)),
      meta_(std::move(meta)) {
  if (y_re_.size() != x_.size()) throw std::invalid_argument("trace x and y lengths differ");
  if (!y_im_.empty() && y_im_.size() != x_.size()) {
    throw std::invalid_argument("trace x and imaginary y lengths differ");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) throw std::invalid_argument("trace x contains a non-finite value");
    if (i > 0 && !(x_[i] > x_[i - 1])) throw std::invalid_argument("trace x is not strictly increasing");
  }
}

Trace Trace::real(std::vector<double> x, std::vector<double> y, TraceKind kind,
                  std::string x_unit) {
  return Trace(std::move(x), std::move(y), {}, kind, std::move(x_unit));
}

Trace Trace::with_meta(std::string key, std::string value) const {
  Trace copy = *this;
  copy.meta_[std::move(key)] = std::move(value);
  return copy;
}

void write_csv(std::ostream& os, const Trace& trace) {
  os << "# meta: kind=" << to_string(trace.kind()) << '\n';
  os << "# meta: x_unit=" << trace.x_unit() << '\n';
  for (const auto& [k, v] : trace.meta()) {
    if (k == "kind" || k == "x_unit") continue;
    os << "# meta: " << k << '=' << v << '\n';
  }
  os << (trace.is_complex() ? "x,y_re,y_im\n" : "x,y_re\n");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << format_double(trace.x()[i]) << ',' << format_double(trace.y()[i]);
    if (trace.is_complex()) os << ',' << format_double(trace.y_im()[i]);
    os << '\n';
  }
}

Trace read_csv(std::istream& is) {
  std::map<std::string, std::string> meta;
  std::vector<double> x, re, im;
  std::string line;
  std::size_t line_no = 0;
  int columns = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("# meta:", 0) == 0) {
      std::string body = line.substr(7);
      const auto start = body.find_first_not_of(' ');
      body = start == std::string::npos ? "" : body.substr(start);
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("trace CSV line " + std::to_string(line_no) +
                                    ": meta entry without '='");
      }
      meta[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    if (line.front() == '#') continue;
    if (columns == 0) {
      if (line == "x,y_re") {
        columns = 2;
      } else if (line == "x,y_re,y_im") {
        columns = 3;
      } else {
        throw std::invalid_argument("trace CSV line " + std::to_string(line_no) +
                                    ": expected header 'x,y_re[,y_im]'");
      }
      continue;
    }
    const auto cells = split(line);
    if (static_cast<int>(cells.size()) != columns) {
      throw std::invalid_argument("trace CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(columns) + " columns");
    }
    x.push_back(parse_double(cells[0], line_no));
    re.push_back(parse_double(cells[1], line_no));
    if (columns == 3) im.push_back(parse_double(cells[2], line_no));
  }
  if (columns == 0) throw std::invalid_argument("trace CSV has no header");

  TraceKind kind = columns == 3 ? TraceKind::complex_response : TraceKind::reflection;
  std::string x_unit = "Hz";
  if (auto it = meta.find("kind"); it != meta.end()) {
    kind = trace_kind_from_string(it->second);
    meta.erase(it);
  }
  if (auto it = meta.find("x_unit"); it != meta.end()) {
    x_unit = it->second;
    meta.erase(it);
  }
  return Trace(std::move(x), std::move(re), std::move(im), kind, std::move(x_unit),
               std::move(meta));
}

void write_csv(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(os, trace);
  if (!os) throw std::runtime_error("write to " + path.string() + " failed");
}

Trace read_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_csv(is);
}

}  // namespace omx
