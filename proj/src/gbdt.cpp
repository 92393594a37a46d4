#include "hedonic/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "hedonic/common.hpp"

namespace hedonic {

namespace {

constexpr std::uint8_t kMissingBin = 255;
constexpr double kMinGain = 1e-12;

struct BinStats {
  double sum = 0;
  std::uint32_t count = 0;
};

struct SplitChoice {
  bool found = false;
  int feature = -1;
  int edge = -1;  // bins 0..edge go left
  bool missing_left = false;
  double gain = 0;
};

}  // namespace

void GbdtParams::validate() const {
  if (n_trees < 0) throw DomainError("gbdt: n_trees must be >= 0");
  if (!(learning_rate > 0) || learning_rate > 1) {
    throw DomainError("gbdt: learning_rate must lie in (0, 1]");
  }
  if (max_depth < 1) throw DomainError("gbdt: max_depth must be >= 1");
  if (min_samples_leaf < 1) throw DomainError("gbdt: min_samples_leaf must be >= 1");
  if (n_bins < 2 || n_bins > 254) throw DomainError("gbdt: n_bins must lie in [2, 254]");
}

double Tree::predict_row(const DesignMatrix& X, Eigen::Index row) const {
  int node = 0;
  while (nodes[node].feature >= 0) {
    const TreeNode& nd = nodes[node];
    const Eigen::Index j = nd.feature;
    bool go_left;
    if (!X.present(row, j)) {
      go_left = nd.missing_left;
    } else {
      go_left = X.values(row, j) <= nd.threshold;
    }
    node = go_left ? nd.left : nd.right;
  }
  return nodes[node].value;
}

namespace {

// Quantile bin edges over the present values of one feature. Edges are data
// values, so binning is a pure rank statistic: any strictly monotone
// transform of the feature leaves training-row routing unchanged.
std::vector<double> quantile_edges(const DesignMatrix& X, Eigen::Index j, int n_bins) {
  std::vector<double> vals;
  vals.reserve(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    if (X.present(i, j)) vals.push_back(X.values(i, j));
  }
  std::vector<double> edges;
  if (vals.empty()) return edges;
  std::sort(vals.begin(), vals.end());
  const std::size_t m = vals.size();
  for (int b = 1; b < n_bins; ++b) {
    const std::size_t pos = static_cast<std::size_t>(b) * m / n_bins;
    if (pos >= m) break;
    const double edge = vals[pos];
    if (edge >= vals.back()) continue;  // nothing would land right of it
    if (edges.empty() || edge > edges.back()) edges.push_back(edge);
  }
  return edges;
}

std::uint8_t bin_of(double v, const std::vector<double>& edges) {
  // First bin whose edge is >= v; values above every edge take the last bin.
  const auto it = std::lower_bound(edges.begin(), edges.end(), v);
  return static_cast<std::uint8_t>(it - edges.begin());
}

struct TreeBuilder {
  const Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>& bins;
  const std::vector<std::vector<double>>& edges;
  const Eigen::VectorXd& residuals;
  const GbdtParams& params;
  Eigen::VectorXd& gain_accumulator;

  Tree tree;
  std::vector<int> rows;  // permuted in place as nodes partition

  // Builds the node covering rows [begin, end); returns its index.
  int build(int begin, int end, int depth) {
    const int node_index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    double sum = 0;
    for (int i = begin; i < end; ++i) sum += residuals(rows[i]);
    const int count = end - begin;

    SplitChoice split;
    if (depth < params.max_depth && count >= 2 * params.min_samples_leaf) {
      split = best_split(begin, end, sum, count);
    }
    if (!split.found) {
      tree.nodes[node_index].value = sum / count;
      return node_index;
    }

    // Stable partition keeps row order deterministic for the children.
    std::vector<int> left_rows, right_rows;
    left_rows.reserve(count);
    for (int i = begin; i < end; ++i) {
      const int row = rows[i];
      const std::uint8_t b = bins(row, split.feature);
      const bool go_left = b == kMissingBin ? split.missing_left : b <= split.edge;
      (go_left ? left_rows : right_rows).push_back(row);
    }
    std::copy(left_rows.begin(), left_rows.end(), rows.begin() + begin);
    std::copy(right_rows.begin(), right_rows.end(), rows.begin() + begin + left_rows.size());
    const int mid = begin + static_cast<int>(left_rows.size());

    gain_accumulator(split.feature) += split.gain;
    TreeNode& node = tree.nodes[node_index];
    node.feature = split.feature;
    node.threshold = edges[split.feature][split.edge];
    node.missing_left = split.missing_left;
    const int left = build(begin, mid, depth + 1);
    const int right = build(mid, end, depth + 1);
    tree.nodes[node_index].left = left;
    tree.nodes[node_index].right = right;
    return node_index;
  }

  SplitChoice best_split(int begin, int end, double total_sum, int total_count) {
    SplitChoice best;
    const double parent_score = total_sum * total_sum / total_count;
    const Eigen::Index p = bins.cols();

    std::vector<BinStats> hist;
    for (Eigen::Index j = 0; j < p; ++j) {
      const auto& feature_edges = edges[j];
      if (feature_edges.empty()) continue;
      const int n_regular = static_cast<int>(feature_edges.size()) + 1;

      hist.assign(n_regular, BinStats{});
      BinStats missing;
      for (int i = begin; i < end; ++i) {
        const int row = rows[i];
        const std::uint8_t b = bins(row, j);
        if (b == kMissingBin) {
          missing.sum += residuals(row);
          ++missing.count;
        } else {
          hist[b].sum += residuals(row);
          ++hist[b].count;
        }
      }

      double left_sum = 0;
      std::uint32_t left_count = 0;
      for (int e = 0; e + 1 < n_regular; ++e) {
        left_sum += hist[e].sum;
        left_count += hist[e].count;
        // Route the missing bucket to each side in turn.
        for (int side = 0; side < 2; ++side) {
          const bool missing_left = side == 0;
          const double ls = left_sum + (missing_left ? missing.sum : 0.0);
          const std::uint32_t lc = left_count + (missing_left ? missing.count : 0);
          const std::uint32_t rc = static_cast<std::uint32_t>(total_count) - lc;
          if (lc < static_cast<std::uint32_t>(params.min_samples_leaf)) continue;
          if (rc < static_cast<std::uint32_t>(params.min_samples_leaf)) continue;
          const double rs = total_sum - ls;
          const double gain = ls * ls / lc + rs * rs / rc - parent_score;
          if (gain > best.gain + kMinGain || (!best.found && gain > kMinGain)) {
            best.found = true;
            best.feature = static_cast<int>(j);
            best.edge = e;
            best.missing_left = missing_left;
            best.gain = gain;
          }
        }
      }
    }
    return best;
  }
};

}  // namespace

GbdtModel gbdt_fit(const DesignMatrix& X, const Eigen::VectorXd& y, const GbdtParams& params) {
  params.validate();
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (y.size() != n) throw DomainError("gbdt_fit: target length mismatch");
  if (n < 2 * params.min_samples_leaf) {
    throw DomainError("gbdt_fit: need at least 2 * min_samples_leaf rows");
  }

  GbdtModel model;
  model.feature_names = X.names;
  model.learning_rate = params.learning_rate;
  model.params = params;
  model.initial = y.mean();
  model.feature_gain = Eigen::VectorXd::Zero(p);

  model.bin_edges.resize(p);
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> bins(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    model.bin_edges[j] = quantile_edges(X, j, params.n_bins);
    for (Eigen::Index i = 0; i < n; ++i) {
      bins(i, j) = X.present(i, j) ? bin_of(X.values(i, j), model.bin_edges[j]) : kMissingBin;
    }
  }

  Eigen::VectorXd residuals = y.array() - model.initial;
  std::vector<int> all_rows(n);
  for (Eigen::Index i = 0; i < n; ++i) all_rows[i] = static_cast<int>(i);

  for (int stage = 0; stage < params.n_trees; ++stage) {
    TreeBuilder builder{bins, model.bin_edges, residuals, params, model.feature_gain, {}, all_rows};
    builder.build(0, static_cast<int>(n), 0);
    if (builder.tree.nodes.size() == 1) {
      // No usable split left; further stages would only re-add the same leaf.
      if (stage == 0) model.constant_prediction = true;
      break;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      // Route through bins, mirroring predict() on the raw values.
      int node = 0;
      while (builder.tree.nodes[node].feature >= 0) {
        const TreeNode& nd = builder.tree.nodes[node];
        const std::uint8_t b = bins(i, nd.feature);
        bool go_left;
        if (b == kMissingBin) {
          go_left = nd.missing_left;
        } else {
          go_left = X.values(i, nd.feature) <= nd.threshold;
        }
        node = go_left ? nd.left : nd.right;
      }
      residuals(i) -= params.learning_rate * builder.tree.nodes[node].value;
    }
    model.trees.push_back(std::move(builder.tree));
  }
  if (params.n_trees == 0) model.constant_prediction = true;
  return model;
}

Eigen::VectorXd predict(const GbdtModel& model, const DesignMatrix& X) {
  if (X.names != model.feature_names) {
    std::string msg = "gbdt predict: design columns do not match the training schema;";
    for (const auto& name : model.feature_names) {
      if (std::find(X.names.begin(), X.names.end(), name) == X.names.end()) {
        msg += " missing " + name;
      }
    }
    throw SchemaError(msg);
  }
  Eigen::VectorXd out = Eigen::VectorXd::Constant(X.rows(), model.initial);
  for (const auto& tree : model.trees) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      out(i) += model.learning_rate * tree.predict_row(X, i);
    }
  }
  return out;
}

std::map<std::string, double> feature_importance(const GbdtModel& model) {
  std::map<std::string, double> importances;
  for (std::size_t j = 0; j < model.feature_names.size(); ++j) {
    importances[model.feature_names[j]] = model.feature_gain(static_cast<Eigen::Index>(j));
  }
  return importances;
}

std::vector<std::string> select_top_n(const std::map<std::string, double>& importances,
                                      std::size_t n) {
  if (n > importances.size()) {
    throw DomainError("select_top_n: n exceeds the feature count");
  }
  std::vector<std::pair<std::string, double>> ranked(importances.begin(), importances.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(ranked[i].first);
  return out;
}

namespace {
constexpr int kGbdtFormatVersion = 1;
}

void save_gbdt(const std::string& path, const GbdtModel& model) {
  nlohmann::json j;
  j["format_version"] = kGbdtFormatVersion;
  j["kind"] = "gbdt";
  j["initial"] = model.initial;
  j["learning_rate"] = model.learning_rate;
  j["feature_names"] = model.feature_names;
  j["target"] = model.target;
  j["schema_hash"] = model.schema_hash;
  j["constant_prediction"] = model.constant_prediction;
  j["params"] = {{"n_trees", model.params.n_trees},
                 {"learning_rate", model.params.learning_rate},
                 {"max_depth", model.params.max_depth},
                 {"min_samples_leaf", model.params.min_samples_leaf},
                 {"n_bins", model.params.n_bins},
                 {"seed", model.params.seed}};
  nlohmann::json gains = nlohmann::json::array();
  for (Eigen::Index i = 0; i < model.feature_gain.size(); ++i) gains.push_back(model.feature_gain(i));
  j["feature_gain"] = gains;
  j["bin_edges"] = model.bin_edges;
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& tree : model.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : tree.nodes) {
      nodes.push_back({nd.feature, nd.threshold, nd.missing_left, nd.left, nd.right, nd.value});
    }
    trees.push_back(nodes);
  }
  j["trees"] = trees;
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write model to " + path);
  out << j.dump(1) << "\n";
}

GbdtModel load_gbdt(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open model " + path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("format_version") || j["format_version"].get<int>() != kGbdtFormatVersion) {
    throw FormatError("unsupported model version in " + path);
  }
  GbdtModel model;
  model.initial = j["initial"].get<double>();
  model.learning_rate = j["learning_rate"].get<double>();
  model.feature_names = j["feature_names"].get<std::vector<std::string>>();
  model.target = j["target"].get<std::string>();
  model.schema_hash = j["schema_hash"].get<std::uint64_t>();
  model.constant_prediction = j["constant_prediction"].get<bool>();
  const auto& pj = j["params"];
  model.params.n_trees = pj["n_trees"].get<int>();
  model.params.learning_rate = pj["learning_rate"].get<double>();
  model.params.max_depth = pj["max_depth"].get<int>();
  model.params.min_samples_leaf = pj["min_samples_leaf"].get<int>();
  model.params.n_bins = pj["n_bins"].get<int>();
  model.params.seed = pj["seed"].get<std::uint64_t>();
  const auto& gains = j["feature_gain"];
  model.feature_gain.resize(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i) {
    model.feature_gain(static_cast<Eigen::Index>(i)) = gains[i].get<double>();
  }
  model.bin_edges = j["bin_edges"].get<std::vector<std::vector<double>>>();
  for (const auto& tj : j["trees"]) {
    Tree tree;
    for (const auto& nj : tj) {
      TreeNode nd;
      nd.feature = nj[0].get<int>();
      nd.threshold = nj[1].get<double>();
      nd.missing_left = nj[2].get<bool>();
      nd.left = nj[3].get<int>();
      nd.right = nj[4].get<int>();
      nd.value = nj[5].get<double>();
      tree.nodes.push_back(nd);
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

}  // namespace hedonic
