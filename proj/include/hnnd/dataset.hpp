#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hnnd/errors.hpp"

namespace hnnd {

enum class DataKind { numeric, categorical };

enum class Delimiter { automatic, comma, whitespace };

/// N rows of d cells, either reals or single-token symbols, with optional
/// ground-truth class labels. Row i keeps node id i (source order).
///
/// Categorical cells are interned per column, so two cells in the same
/// column compare equal exactly when their codes do.
class Dataset {
 public:
  using Labels = std::vector<std::string>;

  static Dataset numeric(std::vector<double> values, std::size_t dim,
                         std::optional<Labels> truth = std::nullopt) {
    Dataset ds(DataKind::numeric, dim, values.size(), std::move(truth));
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!std::isfinite(values[k])) {
        throw ParseError("row " + std::to_string(k / dim) +
                         ": non-finite value");
      }
    }
    ds.values_ = std::move(values);
    return ds;
  }

  static Dataset categorical(const std::vector<std::string>& cells,
                             std::size_t dim,
                             std::optional<Labels> truth = std::nullopt) {
    Dataset ds(DataKind::categorical, dim, cells.size(), std::move(truth));
    ds.dictionary_.resize(dim);
    std::vector<std::unordered_map<std::string, std::uint32_t>> lookup(dim);
    ds.codes_.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const std::size_t col = k % dim;
      if (cells[k].empty()) {
        throw ParseError("row " + std::to_string(k / dim) + ": empty cell in column " +
                         std::to_string(col));
      }
      auto [it, inserted] = lookup[col].try_emplace(
          cells[k], static_cast<std::uint32_t>(ds.dictionary_[col].size()));
      if (inserted) ds.dictionary_[col].push_back(cells[k]);
      ds.codes_.push_back(it->second);
    }
    return ds;
  }

  std::size_t size() const { return rows_; }
  std::size_t dim() const { return dim_; }
  DataKind kind() const { return kind_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const std::uint32_t> codes(std::size_t i) const {
    return {codes_.data() + i * dim_, dim_};
  }
  const std::string& token(std::size_t i, std::size_t col) const {
    return dictionary_[col][codes_[i * dim_ + col]];
  }
  double value(std::size_t i, std::size_t col) const { return values_[i * dim_ + col]; }

  bool has_truth() const { return truth_.has_value(); }
  const Labels& truth() const {
    if (!truth_) throw UsageError("dataset has no ground-truth labels");
    return *truth_;
  }
  void set_truth(Labels truth) {
    if (truth.size() != rows_) {
      throw UsageError("truth has " + std::to_string(truth.size()) +
                       " entries, dataset has " + std::to_string(rows_));
    }
    truth_ = std::move(truth);
  }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    if (a.kind_ != b.kind_ || a.dim_ != b.dim_ || a.rows_ != b.rows_ || a.truth_ != b.truth_) {
      return false;
    }
    if (a.kind_ == DataKind::numeric) return a.values_ == b.values_;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t c = 0; c < a.dim_; ++c) {
        if (a.token(i, c) != b.token(i, c)) return false;
      }
    }
    return true;
  }

 private:
  Dataset(DataKind kind, std::size_t dim, std::size_t cells, std::optional<Labels> truth)
      : kind_(kind), dim_(dim), truth_(std::move(truth)) {
    if (dim == 0) throw ParseError("dataset rows must have at least one column");
    if (cells == 0) throw ParseError("dataset is empty");
    if (cells % dim != 0) throw ParseError("cell count is not a multiple of the row width");
    rows_ = cells / dim;
    if (truth_ && truth_->size() != rows_) {
      throw ParseError("truth has " + std::to_string(truth_->size()) + " entries, expected " +
                       std::to_string(rows_));
    }
  }

  DataKind kind_;
  std::size_t dim_ = 0;
  std::size_t rows_ = 0;
  std::vector<double> values_;
  std::vector<std::uint32_t> codes_;
  std::vector<std::vector<std::string>> dictionary_;
  std::optional<Labels> truth_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_cells(std::string_view line, Delimiter delim) {
  std::vector<std::string_view> cells;
  if (delim == Delimiter::comma) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cells;
  }
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(" \t\r", pos);
    if (pos == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", pos);
    if (end == std::string_view::npos) end = line.size();
    cells.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return cells;
}

// Rows of raw cells. Blank lines and lines starting with '#' are skipped;
// row numbers in diagnostics count data rows from 0.
inline std::vector<std::vector<std::string>> read_rows(std::istream& in, Delimiter delim) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::optional<std::size_t> width;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (delim == Delimiter::automatic) {
      delim = body.find(',') != std::string_view::npos ? Delimiter::comma : Delimiter::whitespace;
    }
    auto cells = split_cells(body, delim);
    if (width && cells.size() != *width) {
      throw ParseError("ragged row " + std::to_string(rows.size()) + ": expected " +
                       std::to_string(*width) + " cells, found " + std::to_string(cells.size()));
    }
    width = cells.size();
    rows.emplace_back(cells.begin(), cells.end());
  }
  if (rows.empty()) throw ParseError("dataset is empty");
  return rows;
}

inline std::optional<Dataset::Labels> split_truth(std::vector<std::vector<std::string>>& rows,
                                                  std::optional<std::size_t> truth_column) {
  if (!truth_column) return std::nullopt;
  if (*truth_column >= rows.front().size()) {
    throw UsageError("truth column " + std::to_string(*truth_column) + " is outside row width " +
                     std::to_string(rows.front().size()));
  }
  if (rows.front().size() < 2) throw UsageError("truth column would leave no feature columns");
  Dataset::Labels truth;
  truth.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto& row = rows[r];
    if (row[*truth_column].empty()) {
      throw ParseError("row " + std::to_string(r) + ": empty truth label");
    }
    truth.push_back(std::move(row[*truth_column]));
    row.erase(row.begin() + static_cast<std::ptrdiff_t>(*truth_column));
  }
  return truth;
}

inline double parse_real(std::string_view cell, std::size_t row) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("row " + std::to_string(row) + ": '" + std::string(cell) +
                     "' is not a finite real number");
  }
  return v;
}

inline std::string format_real(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline Dataset load_numeric(std::istream& in, std::optional<std::size_t> truth_column = std::nullopt,
                            Delimiter delim = Delimiter::automatic) {
  auto rows = detail::read_rows(in, delim);
  auto truth = detail::split_truth(rows, truth_column);
  const std::size_t dim = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& cell : rows[r]) values.push_back(detail::parse_real(cell, r));
  }
  return Dataset::numeric(std::move(values), dim, std::move(truth));
}

inline Dataset load_categorical(std::istream& in,
                                std::optional<std::size_t> truth_column = std::nullopt,
                                Delimiter delim = Delimiter::automatic) {
  auto rows = detail::read_rows(in, delim);
  auto truth = detail::split_truth(rows, truth_column);
  const std::size_t dim = rows.front().size();
  std::vector<std::string> cells;
  cells.reserve(rows.size() * dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto& cell : rows[r]) {
      if (cell.empty()) throw ParseError("row " + std::to_string(r) + ": empty cell");
      cells.push_back(std::move(cell));
    }
  }
  return Dataset::categorical(cells, dim, std::move(truth));
}

inline Dataset load_file(const std::string& path, DataKind kind,
                         std::optional<std::size_t> truth_column = std::nullopt,
                         Delimiter delim = Delimiter::automatic) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  return kind == DataKind::numeric ? load_numeric(in, truth_column, delim)
                                   : load_categorical(in, truth_column, delim);
}

/// Comma-separated rows; truth, when present, becomes the last column so
/// that reloading with truth_column = dim() restores the same dataset.
inline void save_delimited(const Dataset& ds, std::ostream& out) {
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t c = 0; c < ds.dim(); ++c) {
      if (c) out << ',';
      if (ds.kind() == DataKind::numeric) {
        out << detail::format_real(ds.value(i, c));
      } else {
        out << ds.token(i, c);
      }
    }
    if (ds.has_truth()) out << ',' << ds.truth()[i];
    out << '\n';
  }
}

/// Per-column min-max rescaling to [0, 1]; constant columns map to 0.
inline Dataset normalize_min_max(const Dataset& ds) {
  if (ds.kind() != DataKind::numeric) throw UsageError("min-max scaling needs numeric data");
  std::vector<double> lo(ds.dim(), 0.0), hi(ds.dim(), 0.0);
  for (std::size_t c = 0; c < ds.dim(); ++c) {
    lo[c] = hi[c] = ds.value(0, c);
    for (std::size_t i = 1; i < ds.size(); ++i) {
      lo[c] = std::min(lo[c], ds.value(i, c));
      hi[c] = std::max(hi[c], ds.value(i, c));
    }
  }
  std::vector<double> values;
  values.reserve(ds.size() * ds.dim());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t c = 0; c < ds.dim(); ++c) {
      const double span = hi[c] - lo[c];
      values.push_back(span > 0.0 ? (ds.value(i, c) - lo[c]) / span : 0.0);
    }
  }
  std::optional<Dataset::Labels> truth;
  if (ds.has_truth()) truth = ds.truth();
  return Dataset::numeric(std::move(values), ds.dim(), std::move(truth));
}

/// Reads one label per line. Lines that are not a single token are skipped,
/// which lets partition files with textual headers load directly; when more
/// than `expected` labels remain the trailing `expected` are kept.
inline Dataset::Labels load_labels(std::istream& in, std::size_t expected) {
  Dataset::Labels labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto cells = detail::split_cells(detail::trim(line), Delimiter::whitespace);
    if (cells.size() == 1 && cells.front().front() != '#') labels.emplace_back(cells.front());
  }
  if (labels.size() < expected) {
    throw ParseError("label file has " + std::to_string(labels.size()) + " labels, expected " +
                     std::to_string(expected));
  }
  labels.erase(labels.begin(), labels.end() - static_cast<std::ptrdiff_t>(expected));
  return labels;
}

}  // namespace hnnd
