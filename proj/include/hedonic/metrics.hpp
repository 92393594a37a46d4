#pragma once

#include <Eigen/Core>
#include <cmath>

#include "hedonic/common.hpp"

namespace hedonic {

/// Natural log of a positive price.
inline double log_transform_price(double price) {
  if (!(price > 0)) throw DomainError("log_transform_price: price must be positive");
  return std::log(price);
}

inline double inverse_log_price(double log_price) { return std::exp(log_price); }

/// log(1 + dom); dom = 0 is a legal same-day sale.
inline double log_transform_dom(double dom) {
  if (dom < 0) throw DomainError("log_transform_dom: dom must be non-negative");
  return std::log1p(dom);
}

inline double inverse_log_dom(double log_dom) { return std::expm1(log_dom); }

inline double mae(const Eigen::VectorXd& targets, const Eigen::VectorXd& predictions) {
  if (targets.size() != predictions.size()) throw DomainError("mae: length mismatch");
  if (targets.size() == 0) throw DomainError("mae: empty input");
  return (targets - predictions).cwiseAbs().mean();
}

inline double r_squared(const Eigen::VectorXd& targets, const Eigen::VectorXd& predictions) {
  if (targets.size() != predictions.size()) throw DomainError("r_squared: length mismatch");
  if (targets.size() == 0) throw DomainError("r_squared: empty input");
  const double mean = targets.mean();
  const double sst = (targets.array() - mean).square().sum();
  if (sst <= 0) throw DomainError("r_squared: target variance is zero");
  const double sse = (targets - predictions).squaredNorm();
  return 1.0 - sse / sst;
}

}  // namespace hedonic
