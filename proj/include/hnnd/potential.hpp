#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hnnd/dataset.hpp"
#include "hnnd/errors.hpp"
#include "hnnd/metric.hpp"
#include "hnnd/neighbor_graph.hpp"

namespace hnnd {

enum class PotentialMethod { kernel, local };

inline std::string_view to_string(PotentialMethod m) {
  return m == PotentialMethod::kernel ? "kernel" : "local";
}

inline PotentialMethod parse_potential_method(std::string_view name) {
  if (name == "kernel") return PotentialMethod::kernel;
  if (name == "local") return PotentialMethod::local;
  throw UsageError("unknown potential method '" + std::string(name) + "'");
}

/// Per-node potential; lower values mark denser regions.
struct PotentialField {
  std::vector<double> values;
  PotentialMethod method = PotentialMethod::kernel;
  double sigma = 0.0;  // kernel only

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  operator std::span<const double>() const { return values; }
};

/// P_i = -sum_j exp(-d(i, j) / sigma) over every j including i itself.
/// Terms are added in ascending j so results are reproducible bit for bit.
inline PotentialField kernel_potential(const Distances& dist, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw UsageError("sigma must be a positive finite number");
  }
  const std::size_t n = dist.size();
  PotentialField field{std::vector<double>(n), PotentialMethod::kernel, sigma};
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += std::exp(-dist(i, j) / sigma);
    field.values[i] = -sum;
  }
  return field;
}

/// Parameter-free stand-in estimator: mean distance from a node to its
/// graph neighbors. Tight neighborhoods get low potential.
inline PotentialField local_potential(const Distances& dist, const NeighborGraph& graph) {
  const std::size_t n = dist.size();
  if (graph.size() != n) throw UsageError("graph and dataset sizes differ");
  PotentialField field{std::vector<double>(n), PotentialMethod::local, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.degree(i) == 0) {
      throw UsageError("node " + std::to_string(i) + " has no neighbors; local potential undefined");
    }
    double sum = 0.0;
    for (std::size_t j : graph.neighbors(i)) sum += dist(i, j);
    field.values[i] = sum / static_cast<double>(graph.degree(i));
  }
  return field;
}

inline void write_potential(const PotentialField& field, std::ostream& out) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    out << i << ' ' << detail::format_real(field.values[i]) << '\n';
  }
}

}  // namespace hnnd
