#pragma once

// Shared helpers and independent oracle implementations. Everything here is
// deliberately written as plain double loops so the production paths are
// checked against a second route, not against themselves.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "hedonic/color.hpp"
#include "hedonic/entropy.hpp"
#include "hedonic/image.hpp"
#include "hedonic/rng.hpp"

namespace testutil {

inline hedonic::GrayImage random_gray(hedonic::Rng& rng, int h, int w) {
  hedonic::GrayImage img(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img(y, x) = static_cast<std::uint8_t>(rng.uniform_index(256));
    }
  }
  return img;
}

inline hedonic::RgbImage random_rgb(hedonic::Rng& rng, int h, int w) {
  hedonic::RgbImage img;
  img.r = random_gray(rng, h, w);
  img.g = random_gray(rng, h, w);
  img.b = random_gray(rng, h, w);
  return img;
}

// Brute-force per-window histogram recomputation of the local entropy map,
// clamp-to-edge, straight from the definition.
inline Eigen::ArrayXXd entropy_map_oracle(const hedonic::GrayImage& img, int window) {
  const int h = static_cast<int>(img.rows());
  const int w = static_cast<int>(img.cols());
  const int r = window / 2;
  Eigen::ArrayXXd out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::array<int, 256> hist{};
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int yy = std::clamp(y + dy, 0, h - 1);
          const int xx = std::clamp(x + dx, 0, w - 1);
          ++hist[img(yy, xx)];
        }
      }
      const double total = static_cast<double>(window) * window;
      double entropy = 0;
      for (int b = 0; b < 256; ++b) {
        if (hist[b] > 0) {
          const double p = hist[b] / total;
          entropy -= p * std::log2(p);
        }
      }
      out(y, x) = entropy;
    }
  }
  return out;
}

// Double-loop weighted centroid.
struct CentroidOracle {
  double x, y;
};

inline CentroidOracle centroid_oracle(const Eigen::ArrayXXd& map) {
  double total = 0, sx = 0, sy = 0;
  for (Eigen::Index y = 0; y < map.rows(); ++y) {
    for (Eigen::Index x = 0; x < map.cols(); ++x) {
      total += map(y, x);
      sx += map(y, x) * static_cast<double>(x);
      sy += map(y, x) * static_cast<double>(y);
    }
  }
  return {sx / total, sy / total};
}

// Reference Lloyd k-means in the same hue-circular embedding, written
// independently of the production code; shares only the Rng type so the
// seeding draws line up.
struct LloydOracleResult {
  std::vector<std::array<double, 3>> centers;
  double sse = 0;
};

inline std::array<double, 3> embed_hsv(const hedonic::Hsv& p) {
  const double rad = p.h * 3.14159265358979323846 / 180.0;
  return {p.s * std::cos(rad), p.s * std::sin(rad), p.v};
}

inline LloydOracleResult lloyd_oracle(const std::vector<hedonic::Hsv>& pixels, int k,
                                      std::uint64_t seed) {
  const std::size_t n = pixels.size();
  std::vector<std::array<double, 3>> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = embed_hsv(pixels[i]);
  auto d2 = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
           (a[2] - b[2]) * (a[2] - b[2]);
  };

  hedonic::Rng rng(seed);
  std::vector<std::array<double, 3>> centers;
  centers.push_back(pts[rng.uniform_index(n)]);
  std::vector<double> dist(n);
  for (int c = 1; c < k; ++c) {
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = d2(pts[i], centers[0]);
      for (std::size_t j = 1; j < centers.size(); ++j) best = std::min(best, d2(pts[i], centers[j]));
      dist[i] = best;
      total += best;
    }
    std::size_t pick = n - 1;
    if (total > 0) {
      const double r = rng.uniform01() * total;
      double acc = 0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += dist[i];
        if (acc > r) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.uniform_index(n);
    }
    centers.push_back(pts[pick]);
  }

  std::vector<int> assign(n, 0);
  double sse = 0;
  for (int iter = 0; iter < 100; ++iter) {
    sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double bd = d2(pts[i], centers[0]);
      for (int j = 1; j < k; ++j) {
        const double d = d2(pts[i], centers[j]);
        if (d < bd) {
          bd = d;
          best = j;
        }
      }
      assign[i] = best;
      sse += bd;
    }
    std::vector<std::array<double, 3>> next(k, {0, 0, 0});
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (int d = 0; d < 3; ++d) next[assign[i]][d] += pts[i][d];
      ++counts[assign[i]];
    }
    double shift = 0;
    for (int j = 0; j < k; ++j) {
      if (counts[j] == 0) {
        next[j] = centers[j];
      } else {
        for (int d = 0; d < 3; ++d) next[j][d] /= counts[j];
      }
      shift = std::max(shift, std::sqrt(d2(next[j], centers[j])));
    }
    centers = next;
    if (shift < 1e-6) break;
  }
  // SSE against the converged centers.
  sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double bd = d2(pts[i], centers[0]);
    for (int j = 1; j < k; ++j) bd = std::min(bd, d2(pts[i], centers[j]));
    sse += bd;
  }
  return {centers, sse};
}

// Power iteration with deflation on the sample covariance.
struct PowerIterationPca {
  Eigen::MatrixXd components;  // k x D
  Eigen::VectorXd ratios;
};

inline PowerIterationPca power_iteration_pca(const Eigen::MatrixXd& data, int k) {
  const Eigen::Index n = data.rows();
  const Eigen::VectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  const double total = cov.trace();

  PowerIterationPca out;
  out.components.resize(k, data.cols());
  out.ratios.resize(k);
  Eigen::MatrixXd deflated = cov;
  for (int c = 0; c < k; ++c) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(data.cols()).normalized();
    // A fixed, generous iteration budget; convergence is geometric.
    for (int it = 0; it < 10000; ++it) {
      Eigen::VectorXd next = deflated * v;
      const double norm = next.norm();
      if (norm < 1e-300) break;
      next /= norm;
      if ((next - v).norm() < 1e-13 || (next + v).norm() < 1e-13) {
        v = next;
        break;
      }
      v = next;
    }
    const double lambda = v.dot(deflated * v);
    out.components.row(c) = v.transpose();
    out.ratios(c) = total > 0 ? lambda / total : 0.0;
    deflated -= lambda * v * v.transpose();
  }
  return out;
}

// Moore-Penrose pseudo-inverse solve via SVD (for the OLS oracle).
inline Eigen::VectorXd pinv_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double tol = std::max(A.rows(), A.cols()) * sv(0) * 1e-14;
  Eigen::VectorXd inv_sv(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) inv_sv(i) = sv(i) > tol ? 1.0 / sv(i) : 0.0;
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose() * b;
}

}  // namespace testutil
