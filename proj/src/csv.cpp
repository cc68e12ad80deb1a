#include "smap/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace smap::csv {

const std::vector<std::string>& diagnostics_header() {
  static const std::vector<std::string> header = {
      "t",      "energy",           "l2_dist_q",     "critical_norm", "unit_violation",
      "div_a",  "res_compatibility", "res_curvature", "res_psi0"};
  return header;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw std::runtime_error("format_number failed");
  return std::string(buf, res.ptr);
}

namespace {

void write_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << format_number(values[i]);
  }
  out << '\n';
}

void write_header(std::ostream& out, const std::vector<std::string>& header) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out << ',';
    out << header[i];
  }
  out << '\n';
}

}  // namespace

void write_diagnostics(std::ostream& out, std::span<const diagnostics::DiagnosticsRow> rows) {
  write_header(out, diagnostics_header());
  for (const auto& r : rows) {
    const double values[] = {r.t,     r.energy,           r.l2_dist_q,     r.critical_norm,
                             r.unit_violation, r.div_a, r.res_compatibility, r.res_curvature,
                             r.res_psi0};
    write_row(out, values);
  }
}

void emit_diagnostics_csv(std::span<const diagnostics::DiagnosticsRow> rows,
                          const std::filesystem::path& path) {
  std::ostringstream out;
  write_diagnostics(out, rows);
  write_file_atomic(path, out.str());
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  write_header(out, header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("write_table: ragged row");
    write_row(out, row);
  }
  write_file_atomic(path, out.str());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                             ec.message());
  }
}

}  // namespace smap::csv
