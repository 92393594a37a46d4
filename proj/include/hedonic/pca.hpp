#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

namespace hedonic {

/// Principal component analysis of row-wise observations.
struct PcaModel {
  Eigen::VectorXd mean;                       // length D
  Eigen::MatrixXd components;                 // n_components x D, orthonormal rows
  Eigen::VectorXd explained_variance_ratio;   // non-increasing, sums to <= 1

  Eigen::Index dimension() const { return mean.size(); }
  Eigen::Index n_components() const { return components.rows(); }
};

/// Either a fixed component count or the smallest count reaching a
/// cumulative explained-variance fraction.
struct PcaTarget {
  std::optional<int> component_count;
  std::optional<double> variance_fraction;

  static PcaTarget components(int n) { return {n, std::nullopt}; }
  static PcaTarget variance(double fraction) { return {std::nullopt, fraction}; }
};

/// Centers the data and keeps the leading principal directions of its
/// covariance. Component signs are fixed so the largest-magnitude coordinate
/// of each row is positive. Requires n >= 2 rows; a fixed component count
/// must not exceed min(n-1, D).
PcaModel pca_fit(const Eigen::MatrixXd& data, const PcaTarget& target);

/// scores = components * (vector - mean). Throws on a length mismatch.
Eigen::VectorXd pca_transform(const PcaModel& model, const Eigen::VectorXd& vector);

/// Row-wise batch transform.
Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& rows);

void save_pca(const std::string& path, const PcaModel& model);
PcaModel load_pca(const std::string& path);

}  // namespace hedonic
