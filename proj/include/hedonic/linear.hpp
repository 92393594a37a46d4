#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hedonic/feature_table.hpp"

namespace hedonic {

enum class LinearKind { ols, ridge };

struct LinearModel {
  LinearKind kind = LinearKind::ols;
  double lambda = 0;
  double intercept = 0;
  Eigen::VectorXd coefficients;
  std::vector<std::string> feature_names;
  Eigen::VectorXd impute_means;  // training means; fill-in for missing cells
  std::string target;            // "price" or "dom"
  std::uint64_t schema_hash = 0;
};

/// Least-squares fit on a dense design. Rank-deficient systems take the
/// minimal-norm pseudo-inverse solution.
LinearModel ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// Minimizes RSS + lambda * ||standardized coefficients||^2 with an
/// unpenalized intercept; features are standardized internally and the
/// coefficients mapped back.
LinearModel ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda);

Eigen::VectorXd predict(const LinearModel& model, const Eigen::MatrixXd& X);

/// Table-level fit: applies the linear missing-value policy (impute the
/// column training mean, recorded in the model) before the dense solve.
LinearModel fit_linear(const DesignMatrix& X, const Eigen::VectorXd& y, LinearKind kind,
                       double lambda = 0);

/// Aligns columns by name, imputes stored means into missing cells.
Eigen::VectorXd predict(const LinearModel& model, const DesignMatrix& X);

void save_linear(const std::string& path, const LinearModel& model);
LinearModel load_linear(const std::string& path);

}  // namespace hedonic
