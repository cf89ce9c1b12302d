#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hnnd/dataset.hpp"
#include "hnnd/errors.hpp"

namespace hnnd {

enum class Metric { euclidean, cosine, mismatch };

inline Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "cosine") return Metric::cosine;
  if (name == "mismatch") return Metric::mismatch;
  throw UsageError("unknown metric '" + std::string(name) + "'");
}

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::cosine: return "cosine";
    case Metric::mismatch: return "mismatch";
  }
  return "?";
}

inline bool metric_accepts(Metric m, DataKind kind) {
  return (m == Metric::mismatch) == (kind == DataKind::categorical);
}

inline double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = x[k] - y[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) sum += x[k] * y[k];
  return sum;
}

// 1 - cos(x, y). A zero vector has no direction: distance is 1 against a
// nonzero vector and 0 against another zero vector. Clamped to [0, 2].
inline double cosine_distance_from(double xy, double norm_x, double norm_y) {
  if (norm_x == 0.0 || norm_y == 0.0) return (norm_x == 0.0 && norm_y == 0.0) ? 0.0 : 1.0;
  const double d = 1.0 - xy / (norm_x * norm_y);
  return d < 0.0 ? 0.0 : (d > 2.0 ? 2.0 : d);
}

inline double cosine_distance(std::span<const double> x, std::span<const double> y) {
  return cosine_distance_from(dot(x, y), std::sqrt(dot(x, x)), std::sqrt(dot(y, y)));
}

inline std::size_t mismatch_count(std::span<const std::uint32_t> x,
                                  std::span<const std::uint32_t> y) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < x.size(); ++k) n += x[k] != y[k];
  return n;
}

inline double distance(std::span<const double> x, std::span<const double> y, Metric m) {
  if (x.size() != y.size()) throw UsageError("rows differ in width");
  switch (m) {
    case Metric::euclidean: return euclidean_distance(x, y);
    case Metric::cosine: return cosine_distance(x, y);
    case Metric::mismatch: break;
  }
  throw UsageError("mismatch count needs categorical rows");
}

inline double distance(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                       Metric m) {
  if (x.size() != y.size()) throw UsageError("rows differ in width");
  if (m != Metric::mismatch) throw UsageError("euclidean and cosine need numeric rows");
  return static_cast<double>(mismatch_count(x, y));
}

/// Pairwise dissimilarity between rows of one dataset.
///
/// Symmetric bit-for-bit: distance(i, j) == distance(j, i) and
/// distance(i, i) == 0 for every metric. When `cache_limit` admits the
/// dataset size, materialize() stores the condensed upper triangle and
/// later lookups read from it.
class Distances {
 public:
  static constexpr std::size_t default_cache_limit = 20000;

  Distances(const Dataset& ds, Metric metric, std::size_t cache_limit = default_cache_limit)
      : ds_(&ds), metric_(metric), cache_limit_(cache_limit) {
    if (!metric_accepts(metric, ds.kind())) {
      throw UsageError("metric '" + std::string(to_string(metric)) + "' does not apply to " +
                       (ds.kind() == DataKind::numeric ? "numeric" : "categorical") + " data");
    }
    if (metric == Metric::cosine) {
      norms_.resize(ds.size());
      for (std::size_t i = 0; i < ds.size(); ++i) norms_[i] = std::sqrt(dot(ds.row(i), ds.row(i)));
    }
  }

  const Dataset& dataset() const { return *ds_; }
  Metric metric() const { return metric_; }
  std::size_t size() const { return ds_->size(); }

  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (!cache_.empty()) return cache_[condensed_index(i, j)];
    return compute(i, j);
  }

  bool materialized() const { return !cache_.empty() || size() < 2; }

  /// Fills the cache when N is within the limit; returns whether it did.
  bool materialize() {
    const std::size_t n = size();
    if (n > cache_limit_ || n < 2 || !cache_.empty()) return !cache_.empty();
    cache_.resize(n * (n - 1) / 2);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) cache_[k++] = compute(i, j);
    }
    return true;
  }

 private:
  double compute(std::size_t i, std::size_t j) const {
    // Evaluate with the lower index first so both argument orders agree.
    if (j < i) std::swap(i, j);
    switch (metric_) {
      case Metric::euclidean: return euclidean_distance(ds_->row(i), ds_->row(j));
      case Metric::cosine:
        return cosine_distance_from(dot(ds_->row(i), ds_->row(j)), norms_[i], norms_[j]);
      case Metric::mismatch: return static_cast<double>(mismatch_count(ds_->codes(i), ds_->codes(j)));
    }
    return 0.0;
  }

  std::size_t condensed_index(std::size_t i, std::size_t j) const {
    if (j < i) std::swap(i, j);
    const std::size_t n = size();
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }

  const Dataset* ds_;
  Metric metric_;
  std::size_t cache_limit_;
  std::vector<double> norms_;
  std::vector<double> cache_;
};

}  // namespace hnnd
