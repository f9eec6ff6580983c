// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace omx {

enum class TraceKind { reflection, phase, complex_response, psd, linewidth, efficiency, voltage };

const char* to_string(TraceKind kind) noexcept;
TraceKind trace_kind_from_string(const std::string& name);

/// A sampled measurement curve. x is strictly increasing; y is real unless
/// y_im is non-empty. Values are immutable once constructed.
class Trace {
 public:
  Trace(std::vector<double> x, std::vector<double> y_re, std::vector<double> y_im,
        TraceKind kind, std::string x_unit = "Hz",
        std::map<std::string, std::string> meta = {});

  static Trace real(std::vector<double> x, std::vector<double> y, TraceKind kind,
                    std::string x_unit = "Hz");

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_re_; }
  const std::vector<double>& y_im() const noexcept { return y_im_; }
  bool is_complex() const noexcept { return !y_im_.empty(); }
  std::size_t size() const noexcept { return x_.size(); }
  TraceKind kind() const noexcept { return kind_; }
  const std::string& x_unit() const noexcept { return x_unit_; }
  const std::map<std::string, std::string>& meta() const noexcept { return meta_; }

  Trace with_meta(std::string key, std::string value) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_re_;
  std::vector<double> y_im_;
  TraceKind kind_;
  std::string x_unit_;
  std::map<std::string, std::string> meta_;
};

// CSV layout:
//   # meta: kind=reflection
//   # meta: x_unit=Hz
//   # meta: <key>=<value>        (free-form provenance, one per line)
//   x,y_re[,y_im]
//   <rows>
void write_csv(std::ostream& os, const Trace& trace);
Trace read_csv(std::istream& is);
void write_csv(const std::filesystem::path& path, const Trace& trace);
Trace read_csv(const std::filesystem::path& path);

}  // namespace omx
