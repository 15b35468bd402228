#pragma once

#include "symvol/body.hpp"
#include "symvol/common.hpp"
#include "symvol/exact.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace symvol {

struct MCConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t batch = 16384;
  int workers = 1;

  void validate() const;
};

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  MomentSpec spec;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
};

/// Test hook: replaces the body's uniform sampler point for point.
using SampleOverride = std::function<void(RandomStream&, double*)>;

/// Monte Carlo estimate of E V_{K,N}^p (symmetric) or E U_{K,N}^p. The
/// result is a deterministic function of (seed, samples, batch): replication
/// i draws from the counter-based stream keyed (seed, i div batch), and
/// batch statistics are merged in index order, so the worker count changes
/// wall-clock time only. Every sampled normalized volume is checked against
/// [0, 1]; a violation aborts with a diagnostic rather than biasing the
/// estimate.
MomentEstimate estimate_moment(const Body& body, const MomentSpec& spec, const MCConfig& cfg,
                               const SampleOverride& sample_override = nullptr);

/// Empirical CDF of the normalized volume at the given sorted grid points;
/// same determinism contract as estimate_moment.
std::vector<std::pair<double, double>> empirical_cdf(const Body& body, const MomentSpec& spec,
                                                     const MCConfig& cfg,
                                                     std::span<const double> grid);

struct CompareRow {
  std::string name;
  MomentEstimate estimate;
};

struct CompareReport {
  /// Ranked by increasing estimated moment.
  std::vector<CompareRow> rows;
  /// z(i, j) = (mean_i - mean_j) / sqrt(se_i^2 + se_j^2) over the ranked rows.
  Eigen::MatrixXd z_scores;
};

/// Estimates every body with the same seed (common random numbers) and ranks
/// them.
CompareReport compare_bodies(const std::vector<std::pair<std::string, const Body*>>& bodies,
                             const MomentSpec& spec, const MCConfig& cfg);

/// JSON-line serialization of an estimate. elapsed_seconds is optional so
/// that callers needing byte-reproducible output can omit the one
/// non-deterministic field.
std::string estimate_json_line(const std::string& body_name, const MomentEstimate& estimate,
                               bool include_elapsed);

}  // namespace symvol
