#include "hedonic/linear.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hedonic/common.hpp"

namespace hedonic {

LinearModel ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const Eigen::Index n = X.rows();
  if (n == 0) throw DomainError("ols_fit: empty design");
  if (y.size() != n) throw DomainError("ols_fit: target length mismatch");

  Eigen::MatrixXd design(n, X.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(X.cols()) = X;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd beta = svd.solve(y);

  LinearModel model;
  model.kind = LinearKind::ols;
  model.intercept = beta(0);
  model.coefficients = beta.tail(X.cols());
  return model;
}

LinearModel ridge_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda) {
  if (lambda < 0) throw DomainError("ridge_fit: lambda must be non-negative");
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (n == 0) throw DomainError("ridge_fit: empty design");
  if (y.size() != n) throw DomainError("ridge_fit: target length mismatch");

  const Eigen::RowVectorXd mu = X.colwise().mean();
  Eigen::RowVectorXd sd(p);
  Eigen::MatrixXd Xs = X.rowwise() - mu;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double var = n > 1 ? Xs.col(j).squaredNorm() / static_cast<double>(n - 1) : 0.0;
    sd(j) = std::sqrt(var);
    if (sd(j) > 1e-12) {
      Xs.col(j) /= sd(j);
    } else {
      Xs.col(j).setZero();  // constant column carries no signal
      sd(j) = 0;
    }
  }

  const double y_mean = y.mean();
  const Eigen::VectorXd yc = y.array() - y_mean;

  Eigen::MatrixXd gram = Xs.transpose() * Xs;
  gram.diagonal().array() += lambda;
  const Eigen::VectorXd beta_std = gram.ldlt().solve(Xs.transpose() * yc);

  LinearModel model;
  model.kind = LinearKind::ridge;
  model.lambda = lambda;
  model.coefficients.resize(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    model.coefficients(j) = sd(j) > 0 ? beta_std(j) / sd(j) : 0.0;
  }
  model.intercept = y_mean - model.coefficients.dot(mu.transpose());
  return model;
}

Eigen::VectorXd predict(const LinearModel& model, const Eigen::MatrixXd& X) {
  if (X.cols() != model.coefficients.size()) {
    throw DomainError("linear predict: column count mismatch");
  }
  return (X * model.coefficients).array() + model.intercept;
}

namespace {

Eigen::MatrixXd imputed(const DesignMatrix& X, const Eigen::VectorXd& means) {
  Eigen::MatrixXd out = X.values;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      if (!X.present(i, j)) out(i, j) = means(j);
    }
  }
  return out;
}

}  // namespace

LinearModel fit_linear(const DesignMatrix& X, const Eigen::VectorXd& y, LinearKind kind,
                       double lambda) {
  Eigen::VectorXd means(X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    double sum = 0;
    Eigen::Index count = 0;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      if (X.present(i, j)) {
        sum += X.values(i, j);
        ++count;
      }
    }
    means(j) = count > 0 ? sum / static_cast<double>(count) : 0.0;
  }
  const Eigen::MatrixXd dense = imputed(X, means);
  LinearModel model = kind == LinearKind::ols ? ols_fit(dense, y) : ridge_fit(dense, y, lambda);
  model.feature_names = X.names;
  model.impute_means = std::move(means);
  return model;
}

Eigen::VectorXd predict(const LinearModel& model, const DesignMatrix& X) {
  if (X.names != model.feature_names) {
    throw SchemaError("linear predict: design columns do not match the training schema");
  }
  return predict(model, imputed(X, model.impute_means));
}

namespace {

nlohmann::json vec_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vec_from(const nlohmann::json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

constexpr int kLinearFormatVersion = 1;

}  // namespace

void save_linear(const std::string& path, const LinearModel& model) {
  nlohmann::json j;
  j["format_version"] = kLinearFormatVersion;
  j["kind"] = model.kind == LinearKind::ols ? "ols" : "ridge";
  j["lambda"] = model.lambda;
  j["intercept"] = model.intercept;
  j["coefficients"] = vec_json(model.coefficients);
  j["feature_names"] = model.feature_names;
  j["impute_means"] = vec_json(model.impute_means);
  j["target"] = model.target;
  j["schema_hash"] = model.schema_hash;
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write linear model to " + path);
  out << j.dump(1) << "\n";
}

LinearModel load_linear(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open linear model " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("format_version") || j["format_version"].get<int>() != kLinearFormatVersion) {
    throw FormatError("unsupported linear model version in " + path);
  }
  LinearModel model;
  model.kind = j["kind"].get<std::string>() == "ols" ? LinearKind::ols : LinearKind::ridge;
  model.lambda = j["lambda"].get<double>();
  model.intercept = j["intercept"].get<double>();
  model.coefficients = vec_from(j["coefficients"]);
  model.feature_names = j["feature_names"].get<std::vector<std::string>>();
  model.impute_means = vec_from(j["impute_means"]);
  model.target = j["target"].get<std::string>();
  model.schema_hash = j["schema_hash"].get<std::uint64_t>();
  return model;
}

}  // namespace hedonic
