#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace hedonic {

struct Split {
  std::vector<int> train;  // ascending row indices
  std::vector<int> test;
};

/// Uniform shuffle by seed; the first floor(ratio * n) shuffled rows train.
/// Throws when either side would be empty.
Split train_test_split(int n_rows, double ratio, std::uint64_t seed);

struct BootstrapResult {
  std::vector<int> indices;   // resampled rows, size == input size
  bool merged_strata = false; // fewer distinct targets than requested strata
  int n_strata_used = 0;
};

/// Bins rows into target-quantile strata and resamples with replacement
/// within each stratum, preserving stratum sizes. Deterministic per seed.
BootstrapResult stratified_bootstrap(const Eigen::VectorXd& targets, int n_strata,
                                     std::uint64_t seed);

}  // namespace hedonic
