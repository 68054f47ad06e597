#pragma once

#include <map>
#include <string>
#include <vector>

#include "qclab/core/pointset.hpp"

namespace qclab::cli {

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

/// Comma-separated table with a header row. Cells are kept as text.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 if absent
  std::vector<double> numbers(const std::string& name) const;
};

/// Throws InputError on ragged rows or an empty file.
Table parse_csv(const std::string& text);

/// Reads columns x[, y[, z]] (or x1[, x2[, x3]]) and an optional integer column `type`.
PointSet points_from_csv(const std::string& text);
std::string points_to_csv(const PointSet& points);

enum class PlotStyle { Line, LogLog, Bands };

/// Deterministic SVG of columns (x, y) as a polyline, or of (lo, hi) rows as
/// interval strips; rows sharing a value of `group` share a strip.
std::string render_svg(const Table& table, PlotStyle style, const std::string& x, const std::string& y,
                       const std::string& group, const std::string& title);

}  // namespace qclab::cli
