#pragma once

// Tabular output (CSV with a '#' metadata header, JSON, minimal SVG plots) and
// headerless CSV dataset input.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geodepth/dataset.hpp"

namespace geodepth {

using Cell = std::variant<double, std::int64_t, std::string>;

struct TableMetadata {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::string version = GEODEPTH_VERSION;
  std::string manifold;
  std::vector<std::pair<std::string, std::string>> extra;
};

class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
  /// Numeric column as doubles; throws if the column is missing or textual.
  std::vector<double> numeric_column(const std::string& name) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

/// Doubles are written with 17 significant digits so they round-trip.
std::string to_csv(const Table& table, const TableMetadata& meta);
/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}.
std::string to_json(const Table& table, const TableMetadata& meta);

struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool line = false;
  std::string color = "#1f77b4";
};

std::string to_svg(const std::vector<SvgSeries>& series, const std::string& title, const std::string& x_label,
                   const std::string& y_label);

/// Headerless CSV, one point per line; blank lines and lines starting with
/// '#' are skipped. Every row is validated on `spec`; failures throw an Error
/// whose message starts with "line L:".
Dataset read_dataset_csv(const std::string& path, const ManifoldSpec& spec);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace geodepth
