#include "hedonic/pca.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hedonic/common.hpp"

namespace hedonic {

namespace {
constexpr int kPcaFormatVersion = 1;
}

PcaModel pca_fit(const Eigen::MatrixXd& data, const PcaTarget& target) {
  const Eigen::Index n = data.rows();
  const Eigen::Index dim = data.cols();
  if (n < 2) throw DomainError("pca_fit: need at least 2 rows");
  if (dim < 1) throw DomainError("pca_fit: need at least 1 column");
  const Eigen::Index max_components = std::min<Eigen::Index>(n - 1, dim);

  PcaModel model;
  model.mean = data.colwise().mean();
  Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();

  // Thin SVD of the centered data; eigenvalues of the covariance are
  // sigma^2 / (n - 1) and V's columns are the principal directions.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  Eigen::VectorXd variances = sigma.array().square() / static_cast<double>(n - 1);
  const double total_var = variances.sum();

  Eigen::Index keep;
  if (target.component_count) {
    keep = *target.component_count;
    if (keep < 1 || keep > max_components) {
      throw DomainError("pca_fit: component count " + std::to_string(*target.component_count) +
                        " outside [1, " + std::to_string(max_components) + "]");
    }
  } else if (target.variance_fraction) {
    const double fraction = *target.variance_fraction;
    if (fraction <= 0 || fraction > 1) {
      throw DomainError("pca_fit: variance fraction must lie in (0, 1]");
    }
    if (total_var <= 0) {
      keep = 0;  // constant data spans nothing
    } else {
      keep = max_components;
      double acc = 0;
      for (Eigen::Index i = 0; i < max_components; ++i) {
        acc += variances(i) / total_var;
        if (acc >= fraction) {
          keep = i + 1;
          break;
        }
      }
    }
  } else {
    throw DomainError("pca_fit: target must set a component count or variance fraction");
  }

  model.components.resize(keep, dim);
  model.explained_variance_ratio.resize(keep);
  for (Eigen::Index i = 0; i < keep; ++i) {
    Eigen::VectorXd component = svd.matrixV().col(i);
    // Deterministic sign: the largest-magnitude coordinate points positive.
    Eigen::Index arg = 0;
    component.cwiseAbs().maxCoeff(&arg);
    if (component(arg) < 0) component = -component;
    model.components.row(i) = component.transpose();
    const double ratio = total_var > 0 ? variances(i) / total_var : 0.0;
    model.explained_variance_ratio(i) = std::max(0.0, ratio);
  }
  return model;
}

Eigen::VectorXd pca_transform(const PcaModel& model, const Eigen::VectorXd& vector) {
  if (vector.size() != model.dimension()) {
    throw DomainError("pca_transform: vector length " + std::to_string(vector.size()) +
                      " does not match model dimension " + std::to_string(model.dimension()));
  }
  return model.components * (vector - model.mean);
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& rows) {
  if (rows.cols() != model.dimension()) {
    throw DomainError("pca_transform: row length " + std::to_string(rows.cols()) +
                      " does not match model dimension " + std::to_string(model.dimension()));
  }
  return (rows.rowwise() - model.mean.transpose()) * model.components.transpose();
}

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  return v;
}

}  // namespace

void save_pca(const std::string& path, const PcaModel& model) {
  nlohmann::json j;
  j["format_version"] = kPcaFormatVersion;
  j["mean"] = vector_to_json(model.mean);
  j["explained_variance_ratio"] = vector_to_json(model.explained_variance_ratio);
  nlohmann::json comps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < model.components.rows(); ++i) {
    comps.push_back(vector_to_json(model.components.row(i)));
  }
  j["components"] = comps;
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write PCA model to " + path);
  out << j.dump(1) << "\n";
}

PcaModel load_pca(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open PCA model " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("format_version") || j["format_version"].get<int>() != kPcaFormatVersion) {
    throw FormatError("unsupported PCA model version in " + path);
  }
  PcaModel model;
  model.mean = vector_from_json(j["mean"]);
  model.explained_variance_ratio = vector_from_json(j["explained_variance_ratio"]);
  const auto& comps = j["components"];
  model.components.resize(comps.size(), model.mean.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    model.components.row(static_cast<Eigen::Index>(i)) = vector_from_json(comps[i]).transpose();
  }
  return model;
}

}  // namespace hedonic
