// Acceptance gate: every criterion below runs at its stated tolerance and
// prints exactly one PASS/FAIL line. The binary exits nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "hedonic/color.hpp"
#include "hedonic/config.hpp"
#include "hedonic/entropy.hpp"
#include "hedonic/experiment.hpp"
#include "hedonic/feature_table.hpp"
#include "hedonic/gbdt.hpp"
#include "hedonic/linear.hpp"
#include "hedonic/metrics.hpp"
#include "hedonic/pca.hpp"
#include "hedonic/pipeline.hpp"
#include "hedonic/rng.hpp"
#include "synthcorpus.hpp"
#include "testutil.hpp"

using namespace hedonic;
namespace fs = std::filesystem;

namespace {

struct Harness {
  int failures = 0;

  void run(int id, const std::string& name, const std::function<void(std::string&)>& body) {
    std::string detail;
    bool ok = true;
    try {
      body(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    if (!detail.empty() && detail.rfind("FAIL", 0) == 0) ok = false;
    if (ok) {
      std::cout << "PASS criterion " << id << ": " << name;
      if (!detail.empty()) std::cout << " [" << detail << "]";
      std::cout << "\n";
    } else {
      std::cout << "FAIL criterion " << id << ": " << name << " [" << detail << "]\n";
      ++failures;
    }
  }
};

void require(bool cond, const std::string& why, std::string& detail) {
  if (!cond && detail.rfind("FAIL", 0) != 0) detail = "FAIL " + why;
}

DesignMatrix dense_design(const Eigen::MatrixXd& X) {
  DesignMatrix dm;
  for (Eigen::Index j = 0; j < X.cols(); ++j) dm.names.push_back("f" + std::to_string(j));
  dm.values = X;
  dm.present.resize(X.rows(), X.cols());
  dm.present.setConstant(true);
  return dm;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --------------------------------------------------------------------------

void criterion_entropy_oracle(std::string& detail) {
  Rng rng(101);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int h = 3 + static_cast<int>(rng.uniform_index(30));
    const int w = 3 + static_cast<int>(rng.uniform_index(30));
    const GrayImage img = testutil::random_gray(rng, h, w);
    const EntropyMap map = local_entropy_map(img, 9);
    const Eigen::ArrayXXd oracle = testutil::entropy_map_oracle(img, 9);
    worst = std::max(worst, (map - oracle).abs().maxCoeff());
  }
  require(worst < 1e-9, "oracle deviation " + format_double(worst), detail);

  const GrayImage big = testutil::random_gray(rng, 1024, 1024);
  const auto start = std::chrono::steady_clock::now();
  const EntropyMap map = local_entropy_map(big, 9);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  require(map.rows() == 1024 && map.cols() == 1024, "map shape", detail);
  require(seconds <= 5.0, "1024x1024 map took " + format_double(seconds) + " s", detail);
  if (detail.empty()) {
    detail = "max dev " + format_double(worst) + ", 1024x1024 in " + format_double(seconds) + " s";
  }
}

void criterion_analytic_anchors(std::string& detail) {
  std::vector<double> uniform(81, 1.0 / 81.0);
  require(std::abs(shannon_entropy(uniform) - std::log2(81.0)) <= 1e-9, "uniform-81 entropy",
          detail);
  require(std::abs(std::log2(81.0) - 6.33985) < 1e-5, "log2(81) anchor value", detail);

  const GrayImage constant = GrayImage::Constant(20, 20, 140);
  require(local_entropy_map(constant, 9).abs().maxCoeff() == 0.0, "constant image map", detail);

  const CenterOfGravity symmetric = center_of_gravity(EntropyMap::Constant(15, 11, 2.0));
  require(symmetric.distance_norm <= 1e-9, "symmetric map CG", detail);

  EntropyMap corner = EntropyMap::Zero(9, 9);
  corner(0, 0) = 3.0;
  const CenterOfGravity cg = center_of_gravity(corner);
  require(std::abs(cg.distance_norm - 1.0) <= 1e-9, "corner-mass CG", detail);
}

void criterion_segmentation(std::string& detail) {
  const GreenMaskSpec spec = default_green_mask();
  require(green_fraction(RgbImage::constant(16, 16, 0, 255, 0), spec) == 1.0, "all-green", detail);
  require(green_fraction(RgbImage::constant(16, 16, 128, 128, 128), spec) == 0.0, "all-gray",
          detail);
  RgbImage half = RgbImage::constant(16, 16, 200, 30, 30);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 16; ++x) {
      half.r(y, x) = 40;
      half.g(y, x) = 190;
      half.b(y, x) = 40;
    }
  }
  require(green_fraction(half, spec) == 0.5, "half/half must be exactly 0.5", detail);

  Rng rng(103);
  for (int instance = 0; instance < 100; ++instance) {
    const int n = 20 + static_cast<int>(rng.uniform_index(60));
    std::vector<Hsv> pixels;
    for (int i = 0; i < n; ++i) {
      pixels.push_back({rng.uniform(0, 360), rng.uniform01(), rng.uniform01()});
    }
    const int k = 2 + static_cast<int>(rng.uniform_index(4));
    const ColorPalette palette = kmeans_palette(pixels, k, instance);
    for (std::size_t i = 1; i < palette.sse_history.size(); ++i) {
      require(palette.sse_history[i] <= palette.sse_history[i - 1] + 1e-12,
              "SSE increased on instance " + std::to_string(instance), detail);
    }
  }

  std::vector<Hsv> pixels;
  for (int i = 0; i < 200; ++i) {
    pixels.push_back({rng.uniform(0, 360), rng.uniform01(), rng.uniform01()});
  }
  const ColorPalette first = kmeans_palette(pixels, 5, 777);
  for (int run = 0; run < 2; ++run) {
    const ColorPalette again = kmeans_palette(pixels, 5, 777);
    require(again.counts == first.counts, "palette counts changed across runs", detail);
    for (std::size_t i = 0; i < first.centroids.size(); ++i) {
      require(again.centroids[i].h == first.centroids[i].h &&
                  again.centroids[i].s == first.centroids[i].s &&
                  again.centroids[i].v == first.centroids[i].v,
              "palette centroid changed across runs", detail);
    }
  }
}

void criterion_pca(std::string& detail) {
  Rng rng(104);

  Eigen::MatrixXd line(8, 2);
  for (int i = 0; i < 8; ++i) {
    const double x = i - 3.5;
    line(i, 0) = x;
    line(i, 1) = 2.0 * x;
  }
  const PcaModel rank1 = pca_fit(line, PcaTarget::components(1));
  require(std::abs(rank1.explained_variance_ratio(0) - 1.0) <= 1e-9, "rank-1 ratio", detail);

  double worst_component = 0, worst_ratio = 0, worst_ortho = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd data(50, 10);
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 10; ++j) data(i, j) = rng.gaussian() * (1.0 + (j % 4));
    }
    const PcaModel model = pca_fit(data, PcaTarget::components(5));
    const Eigen::MatrixXd gram = model.components * model.components.transpose();
    worst_ortho = std::max(
        worst_ortho, (gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff());

    const auto oracle = testutil::power_iteration_pca(data, 5);
    for (int c = 0; c < 5; ++c) {
      const Eigen::VectorXd got = model.components.row(c);
      const Eigen::VectorXd want = oracle.components.row(c);
      worst_component =
          std::max(worst_component, std::min((got - want).norm(), (got + want).norm()));
      worst_ratio = std::max(
          worst_ratio, std::abs(model.explained_variance_ratio(c) - oracle.ratios(c)));
    }
  }
  require(worst_ortho <= 1e-8, "orthonormality deviation " + format_double(worst_ortho), detail);
  require(worst_component <= 1e-6, "component deviation " + format_double(worst_component), detail);
  require(worst_ratio <= 1e-6, "ratio deviation " + format_double(worst_ratio), detail);
}

void criterion_gbdt(std::string& detail) {
  Rng rng(105);
  for (int instance = 0; instance < 50; ++instance) {
    const int n = 40 + static_cast<int>(rng.uniform_index(80));
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 3; ++j) X(i, j) = rng.gaussian();
      y(i) = std::sin(2 * X(i, 0)) + 0.4 * X(i, 1) * X(i, 1) + 0.3 * rng.gaussian();
    }
    GbdtParams params;
    params.n_trees = 20;
    params.learning_rate = instance % 2 == 0 ? 1.0 : 0.2;
    params.max_depth = 3;
    params.min_samples_leaf = 4;
    params.n_bins = 24;
    const DesignMatrix dm = dense_design(X);
    const GbdtModel model = gbdt_fit(dm, y, params);

    Eigen::VectorXd pred = Eigen::VectorXd::Constant(n, model.initial);
    double prev = (y - pred).squaredNorm() / n;
    for (const auto& tree : model.trees) {
      for (int i = 0; i < n; ++i) pred(i) += params.learning_rate * tree.predict_row(dm, i);
      const double mse = (y - pred).squaredNorm() / n;
      require(mse <= prev + 1e-9, "MSE increased on instance " + std::to_string(instance), detail);
      prev = mse;
    }

    double total = 0;
    for (const auto& [name, gain] : feature_importance(model)) total += gain;
    const double expected = model.feature_gain.sum();
    if (expected > 0) {
      require(std::abs(total - expected) <= 1e-6 * expected, "importance sum mismatch", detail);
    }
  }

  // Step data: one depth-1 stump at unit learning rate fits exactly.
  Eigen::MatrixXd X(30, 2);
  Eigen::VectorXd y(30);
  Rng step_rng(7);
  for (int i = 0; i < 30; ++i) {
    X(i, 0) = i < 15 ? -2.0 - 0.1 * i : 1.0 + 0.1 * i;
    X(i, 1) = step_rng.gaussian();  // never split (noise uncorrelated with y)
    y(i) = X(i, 0) < 0 ? 0.0 : 1.0;
  }
  GbdtParams stump;
  stump.n_trees = 1;
  stump.learning_rate = 1.0;
  stump.max_depth = 1;
  stump.min_samples_leaf = 1;
  stump.n_bins = 64;
  const DesignMatrix dm = dense_design(X);
  const GbdtModel model = gbdt_fit(dm, y, stump);
  const Eigen::VectorXd pred = predict(model, dm);
  require((pred - y).squaredNorm() == 0.0, "step fit MSE must be exactly 0", detail);
  const auto importances = feature_importance(model);
  require(importances.at("f1") == 0.0, "never-split feature must score 0", detail);
  require(importances.at("f0") > 0.0, "split feature must carry the gain", detail);
}

void criterion_baseline_ordering(std::string& detail) {
  Rng rng(106);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 20 + static_cast<int>(rng.uniform_index(40));
    const int p = 1 + static_cast<int>(rng.uniform_index(6));
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < p; ++j) X(i, j) = rng.gaussian() * (1 + j);
      y(i) = rng.gaussian() * 2 + (p > 1 ? X(i, 1) : X(i, 0));
    }
    const LinearModel ols = ols_fit(X, y);
    const LinearModel ridge1 = ridge_fit(X, y, 1.0);
    const double ols_rss = (y - predict(ols, X)).squaredNorm();
    const double ridge_rss = (y - predict(ridge1, X)).squaredNorm();
    require(ols_rss <= ridge_rss + 1e-9, "OLS RSS exceeded ridge RSS", detail);

    const LinearModel ridge0 = ridge_fit(X, y, 1e-8);
    require((ols.coefficients - ridge0.coefficients).cwiseAbs().maxCoeff() <= 1e-6,
            "ridge(1e-8) vs OLS coefficients", detail);
    require(std::abs(ols.intercept - ridge0.intercept) <= 1e-6, "ridge(1e-8) vs OLS intercept",
            detail);
  }
}

void criterion_metric_oracles(std::string& detail) {
  Rng rng(107);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(60));
    Eigen::VectorXd t(n), p(n);
    for (int i = 0; i < n; ++i) {
      t(i) = rng.gaussian() * 5;
      p(i) = rng.gaussian() * 5;
    }
    t(0) += 1.0;  // non-degenerate variance
    double abs_sum = 0, sse = 0, sst = 0;
    const double mean = t.sum() / n;
    for (int i = 0; i < n; ++i) {
      abs_sum += std::abs(t(i) - p(i));
      sse += (t(i) - p(i)) * (t(i) - p(i));
      sst += (t(i) - mean) * (t(i) - mean);
    }
    worst = std::max(worst, std::abs(mae(t, p) - abs_sum / n));
    worst = std::max(worst, std::abs(r_squared(t, p) - (1.0 - sse / sst)));
  }
  require(worst <= 1e-12, "metric oracle deviation " + format_double(worst), detail);

  Eigen::VectorXd t(5);
  t << 1, 2, 3, 4, 10;
  const Eigen::VectorXd mean_pred = Eigen::VectorXd::Constant(5, t.mean());
  require(std::abs(r_squared(t, mean_pred)) <= 1e-12, "mean predictor R^2", detail);
}

struct EndToEnd {
  fs::path root;
  synth::CorpusPaths corpus;
  std::string config_path;
  double elapsed_seconds = 0;
  MetricReport report;
};

EndToEnd g_e2e;

void criterion_end_to_end(std::string& detail) {
  const auto started = std::chrono::steady_clock::now();
  g_e2e.root = fs::temp_directory_path() / "hedonic_acceptance";
  fs::remove_all(g_e2e.root);
  synth::CorpusOptions options;
  options.n_listings = 500;
  options.seed = 424242;
  g_e2e.corpus = synth::generate_corpus(g_e2e.root / "corpus", options);
  g_e2e.config_path = synth::write_corpus_config(g_e2e.corpus, g_e2e.root / "out", 20260810);

  RunConfig cfg = load_config(g_e2e.config_path);
  require(cmd_embed(cfg) == 0, "embed failed", detail);
  require(cmd_extract(cfg) == 0, "extract failed", detail);
  require(cmd_fit(cfg) == 0, "fit failed", detail);
  require(cmd_experiment(cfg) == 0, "experiment failed", detail);
  if (!detail.empty()) return;

  std::ifstream report_in(g_e2e.root / "out" / "experiment.csv");
  g_e2e.report = load_report_csv(report_in);

  auto best_r2 = [&](const std::string& combination, const std::string& target) {
    double best = -1e300;
    for (const auto& row : g_e2e.report.rows) {
      if (row.combination == combination && row.target == target) best = std::max(best, row.r2);
    }
    return best;
  };
  auto model_r2 = [&](const std::string& combination, const std::string& target,
                      const std::string& model) {
    for (const auto& row : g_e2e.report.rows) {
      if (row.combination == combination && row.target == target && row.model == model) {
        return row.r2;
      }
    }
    return -1e300;
  };

  const double base2_price = best_r2("base_2", "price");
  const double images_price = best_r2("base_2+images", "price");
  require(base2_price > -1e299 && images_price > -1e299, "missing report rows", detail);
  require(images_price >= base2_price + 0.05,
          "image features lifted price R^2 by " + format_double(images_price - base2_price) +
              " only (base " + format_double(base2_price) + ")",
          detail);

  const double dom_lgb = model_r2("base_2+images", "dom", "gbdt:lgb");
  const double dom_ols = model_r2("base_2+images", "dom", "ols");
  require(dom_lgb > -1e299 && dom_ols > -1e299, "missing dom rows", detail);
  require(dom_lgb > dom_ols, "lgb preset (" + format_double(dom_lgb) + ") did not beat ols (" +
                                 format_double(dom_ols) + ") on dom",
          detail);

  g_e2e.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  require(g_e2e.elapsed_seconds <= 300.0,
          "end-to-end took " + format_double(g_e2e.elapsed_seconds) + " s", detail);
  if (detail.empty()) {
    detail = "price R^2 " + format_double(base2_price) + " -> " + format_double(images_price) +
             "; dom R^2 ols " + format_double(dom_ols) + " vs lgb " + format_double(dom_lgb) +
             "; " + format_double(g_e2e.elapsed_seconds) + " s";
  }
}

void criterion_determinism(std::string& detail) {
  require(!g_e2e.config_path.empty(), "end-to-end corpus unavailable", detail);
  if (!detail.empty()) return;

  auto run_all = [&](const fs::path& out) {
    RunConfig cfg = load_config(g_e2e.config_path);
    cfg.output_dir = out.string();
    if (cmd_embed(cfg) != 0) return false;
    if (cmd_extract(cfg) != 0) return false;
    if (cmd_fit(cfg) != 0) return false;
    if (cmd_experiment(cfg) != 0) return false;
    return true;
  };
  const fs::path out_a = g_e2e.root / "det_a";
  const fs::path out_b = g_e2e.root / "det_b";
  require(run_all(out_a), "first pipeline run failed", detail);
  require(run_all(out_b), "second pipeline run failed", detail);
  if (!detail.empty()) return;

  for (const auto& name :
       {"embeddings.csv", "features.csv", "model.json", "experiment.csv", "pca_model.json"}) {
    const std::string a = slurp(out_a / name);
    const std::string b = slurp(out_b / name);
    require(!a.empty(), std::string(name) + " missing", detail);
    require(a == b, std::string(name) + " differs between runs", detail);
  }
  fs::remove_all(g_e2e.root);
}

}  // namespace

int main() {
  Harness harness;
  harness.run(1, "entropy oracle suite (100 random maps + 1024x1024 under 5 s)",
              criterion_entropy_oracle);
  harness.run(2, "analytic anchors (uniform-81, constant map, symmetric and corner CG)",
              criterion_analytic_anchors);
  harness.run(3, "segmentation suite (exact fractions, monotone k-means, seeded determinism)",
              criterion_segmentation);
  harness.run(4, "pca suite (orthonormality, rank-1 ratio, power-iteration oracle)",
              criterion_pca);
  harness.run(5, "gbdt suite (monotone MSE, exact step fit, importance accounting)",
              criterion_gbdt);
  harness.run(6, "baseline ordering (OLS vs ridge RSS, ridge(1e-8) = OLS)",
              criterion_baseline_ordering);
  harness.run(7, "metric oracles (1000 random vectors at 1e-12, mean predictor R^2 = 0)",
              criterion_metric_oracles);
  harness.run(8, "synthetic end-to-end (image features lift R^2, lgb beats ols on dom)",
              criterion_end_to_end);
  harness.run(9, "determinism (byte-identical tables, models, and reports)",
              criterion_determinism);

  if (harness.failures == 0) {
    std::cout << "acceptance: all 9 criteria passed\n";
    return 0;
  }
  std::cout << "acceptance: " << harness.failures << " criterion(s) failed\n";
  return 1;
}
