#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "smap/diagnostics.hpp"

namespace smap::csv {

/// Column names, in order, of the diagnostics table.
const std::vector<std::string>& diagnostics_header();

/// 17 significant digits via std::to_chars, independent of the locale.
std::string format_number(double value);

void write_diagnostics(std::ostream& out, std::span<const diagnostics::DiagnosticsRow> rows);

/// Header plus one line per row, written atomically.
void emit_diagnostics_csv(std::span<const diagnostics::DiagnosticsRow> rows,
                          const std::filesystem::path& path);

/// Generic table writer used by the sweep and norms commands.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

/// Writes `contents` to path via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace smap::csv
