#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "hedonic/experiment.hpp"
#include "hedonic/metrics.hpp"
#include "hedonic/rng.hpp"
#include "hedonic/sampling.hpp"

using namespace hedonic;

TEST_CASE("price log transform and its inverse") {
  CHECK(log_transform_price(1000.0) == doctest::Approx(6.9077552790).epsilon(1e-9));
  CHECK(log_transform_price(1.0) == 0.0);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(0.5, 2e6);
    CHECK(inverse_log_price(log_transform_price(x)) == doctest::Approx(x).epsilon(1e-12));
  }
  CHECK_THROWS_AS(log_transform_price(0.0), DomainError);
  CHECK_THROWS_AS(log_transform_price(-5.0), DomainError);
}

TEST_CASE("dom log transform handles zero and matches ln(1+x)") {
  CHECK(log_transform_dom(0.0) == 0.0);
  CHECK(log_transform_dom(std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_transform_dom(999.0) == doctest::Approx(std::log(1000.0)).epsilon(1e-12));
  CHECK_THROWS_AS(log_transform_dom(-1.0), DomainError);
}

TEST_CASE("mae matches its definition") {
  Eigen::VectorXd t(3), p(3);
  t << 1, 2, 3;
  p << 2, 2, 2;
  CHECK(mae(t, t) == 0.0);
  CHECK(mae(t, p) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  // Translation invariance.
  const Eigen::VectorXd shift = Eigen::VectorXd::Constant(3, 17.5);
  CHECK(mae(t + shift, p + shift) == doctest::Approx(mae(t, p)).epsilon(1e-15));

  Eigen::VectorXd wrong(2);
  wrong.setZero();
  CHECK_THROWS_AS(mae(t, wrong), DomainError);
}

TEST_CASE("r_squared matches the hand oracle") {
  Eigen::VectorXd t(3), p(3);
  t << 1, 2, 3;
  p << 2, 2, 3;
  // SSE = 1, SST = 2.
  CHECK(r_squared(t, p) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r_squared(t, t) == 1.0);
  const Eigen::VectorXd mean_pred = Eigen::VectorXd::Constant(3, 2.0);
  CHECK(r_squared(t, mean_pred) == doctest::Approx(0.0).epsilon(1e-15));

  const Eigen::VectorXd constant = Eigen::VectorXd::Constant(3, 4.0);
  CHECK_THROWS_AS(r_squared(constant, p), DomainError);
}

TEST_CASE("metrics agree with independent two-line oracles on random vectors") {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(40));
    Eigen::VectorXd t(n), p(n);
    for (int i = 0; i < n; ++i) {
      t(i) = rng.gaussian() * 10;
      p(i) = rng.gaussian() * 10;
    }
    t(0) += 1e-3;  // guarantees target variance for n >= 2
    double abs_sum = 0;
    for (int i = 0; i < n; ++i) abs_sum += std::abs(t(i) - p(i));
    const double mean = t.sum() / n;
    double sse = 0, sst = 0;
    for (int i = 0; i < n; ++i) {
      sse += (t(i) - p(i)) * (t(i) - p(i));
      sst += (t(i) - mean) * (t(i) - mean);
    }
    CHECK(mae(t, p) == doctest::Approx(abs_sum / n).epsilon(1e-12));
    CHECK(r_squared(t, p) == doctest::Approx(1.0 - sse / sst).epsilon(1e-12));
  }
}

TEST_CASE("train_test_split honors the ratio arithmetic") {
  const Split split = train_test_split(20, 0.7, 99);
  CHECK(split.train.size() == 14);
  CHECK(split.test.size() == 6);

  // Union is everything, intersection empty.
  std::set<int> all(split.train.begin(), split.train.end());
  for (int i : split.test) CHECK(all.insert(i).second);
  CHECK(all.size() == 20);

  // Same seed, same membership.
  const Split again = train_test_split(20, 0.7, 99);
  CHECK(again.train == split.train);
  CHECK(again.test == split.test);
  const Split other = train_test_split(20, 0.7, 100);
  CHECK(other.train != split.train);

  CHECK_THROWS_AS(train_test_split(1, 0.7, 1), DomainError);
  CHECK_THROWS_AS(train_test_split(10, 0.01, 1), DomainError);  // empty train side
}

TEST_CASE("stratified_bootstrap with one stratum is a plain bootstrap") {
  Eigen::VectorXd targets(10);
  for (int i = 0; i < 10; ++i) targets(i) = i;
  const BootstrapResult boot = stratified_bootstrap(targets, 1, 7);
  CHECK(boot.indices.size() == 10);
  CHECK(boot.n_strata_used == 1);
  CHECK_FALSE(boot.merged_strata);
  for (int idx : boot.indices) {
    CHECK(idx >= 0);
    CHECK(idx < 10);
  }
}

TEST_CASE("stratified_bootstrap preserves stratum proportions exactly") {
  Rng rng(3);
  Eigen::VectorXd targets(40);
  for (int i = 0; i < 40; ++i) targets(i) = rng.uniform01() * 100;
  const int k = 4;
  const BootstrapResult boot = stratified_bootstrap(targets, k, 11);
  CHECK(boot.indices.size() == 40);

  // Sort rows by target; each quantile block must be hit exactly 10 times.
  std::vector<int> order(40);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return targets(a) < targets(b); });
  std::map<int, int> stratum_of;
  for (int pos = 0; pos < 40; ++pos) stratum_of[order[pos]] = pos / 10;
  std::array<int, 4> hits{};
  for (int idx : boot.indices) ++hits[stratum_of[idx]];
  for (int s = 0; s < k; ++s) CHECK(hits[s] == 10);
}

TEST_CASE("stratified_bootstrap is deterministic and merges thin strata") {
  Eigen::VectorXd targets(12);
  for (int i = 0; i < 12; ++i) targets(i) = i % 3;  // 3 distinct values
  const BootstrapResult a = stratified_bootstrap(targets, 10, 5);
  const BootstrapResult b = stratified_bootstrap(targets, 10, 5);
  CHECK(a.indices == b.indices);
  CHECK(a.merged_strata);
  CHECK(a.n_strata_used == 3);

  CHECK_THROWS_AS(stratified_bootstrap(Eigen::VectorXd(), 2, 1), DomainError);
  CHECK_THROWS_AS(stratified_bootstrap(targets, 0, 1), DomainError);
}

namespace {

// Synthetic corpus with a known functional form: log-price depends on sqft
// and greenness; greenness reaches the table only through GREEN_mask.
FeatureTable greenness_corpus(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ListingRecord> listings;
  std::vector<ListingAggregate> aggregates;
  for (int i = 0; i < n; ++i) {
    ListingRecord rec;
    rec.mls_num = "S" + std::to_string(i);
    const double green = rng.uniform01();
    rec.sqft = 900 + rng.uniform01() * 2200;
    rec.zip = 2100 + static_cast<long long>(rng.uniform_index(5));
    rec.beds = 2 + static_cast<int>(rng.uniform_index(4));
    rec.baths = 1 + static_cast<int>(rng.uniform_index(3));
    rec.lotsize = 2000 + rng.uniform01() * 8000;
    rec.garage = static_cast<int>(rng.uniform_index(2));
    rec.age = static_cast<int>(rng.uniform_index(80));
    const double log_price = 11.0 + 0.5 * std::log(rec.sqft / 1500.0) + 1.2 * green +
                             0.05 * rng.gaussian();
    rec.price = std::exp(log_price);
    rec.dom = static_cast<int>(std::round(20 + 40 * (1.0 - green) + 3 * rng.gaussian()));
    if (rec.dom < 0) rec.dom = 0;
    listings.push_back(rec);

    aggregates.push_back({rec.mls_num, {{"GREEN_mask", green}}});
  }
  return assemble_features(listings, {}, aggregates);
}

}  // namespace

TEST_CASE("run_experiment emits one row per combination, model, and target") {
  const FeatureTable table = greenness_corpus(120, 77);
  ExperimentSpec spec;
  spec.seed = 9;
  FeatureCombination base;
  base.name = "base_1";
  base.features = {"LOTSIZE", "AGE", "SQFT", "ZIP", "BATHS"};
  base.models = {"ols"};
  spec.combinations = {base};

  const MetricReport report = run_experiment(spec, table);
  REQUIRE(report.rows.size() == 2);  // price and dom
  std::set<std::string> targets;
  for (const auto& row : report.rows) {
    CHECK(row.combination == "base_1");
    CHECK(row.model == "ols");
    CHECK(row.mae >= 0.0);
    CHECK(row.r2 <= 1.0);
    targets.insert(row.target);
  }
  CHECK(targets == std::set<std::string>{"price", "dom"});
}

TEST_CASE("identical combinations produce identical metrics") {
  const FeatureTable table = greenness_corpus(90, 3);
  ExperimentSpec spec;
  spec.seed = 4;
  FeatureCombination combo;
  combo.name = "base_2";
  combo.features = {"LOTSIZE", "AGE", "SQFT", "ZIP", "BATHS", "BEDS", "GARAGE"};
  combo.models = {"ridge"};
  FeatureCombination twin = combo;
  twin.name = "base_2_again";
  spec.combinations = {combo, twin};

  const MetricReport report = run_experiment(spec, table);
  REQUIRE(report.rows.size() == 4);
  std::map<std::string, std::pair<double, double>> by_target_first, by_target_second;
  for (const auto& row : report.rows) {
    auto& dest = row.combination == "base_2" ? by_target_first : by_target_second;
    dest[row.target] = {row.mae, row.r2};
  }
  for (const auto& target : {"price", "dom"}) {
    CHECK(by_target_first.at(target).first == by_target_second.at(target).first);
    CHECK(by_target_first.at(target).second == by_target_second.at(target).second);
  }
}

TEST_CASE("greenness features strictly improve R2 when price depends on greenness") {
  const FeatureTable table = greenness_corpus(400, 123);
  ExperimentSpec spec;
  spec.seed = 21;
  FeatureCombination base;
  base.name = "base_2";
  base.features = {"LOTSIZE", "AGE", "SQFT", "ZIP", "BATHS", "BEDS", "GARAGE"};
  base.models = {"gbdt:lgb"};
  FeatureCombination outdoor = base;
  outdoor.name = "base_2+outdoor";
  outdoor.features.push_back("GREEN_*");
  spec.combinations = {base, outdoor};

  const MetricReport report = run_experiment(spec, table);
  double base_r2 = -1, outdoor_r2 = -1;
  for (const auto& row : report.rows) {
    if (row.target != "price") continue;
    if (row.combination == "base_2") base_r2 = row.r2;
    if (row.combination == "base_2+outdoor") outdoor_r2 = row.r2;
  }
  CHECK(outdoor_r2 > base_r2);
  CHECK(outdoor_r2 - base_r2 > 0.05);
}

TEST_CASE("unresolvable feature names name every offender") {
  const FeatureTable table = greenness_corpus(30, 5);
  ExperimentSpec spec;
  spec.seed = 1;
  FeatureCombination combo;
  combo.name = "broken";
  combo.features = {"SQFT", "NOT_A_COLUMN", "pca_*"};
  combo.models = {"ols"};
  spec.combinations = {combo};
  CHECK_THROWS_WITH_AS(run_experiment(spec, table), doctest::Contains("NOT_A_COLUMN"),
                       SchemaError);
}

TEST_CASE("report CSV round-trips and documents the target scale") {
  const FeatureTable table = greenness_corpus(60, 8);
  ExperimentSpec spec;
  spec.seed = 2;
  FeatureCombination combo;
  combo.name = "base_1";
  combo.features = {"SQFT", "ZIP"};
  combo.models = {"ols", "ridge"};
  spec.combinations = {combo};
  const MetricReport report = run_experiment(spec, table);

  std::stringstream buffer;
  write_report_csv(buffer, report);
  const std::string text = buffer.str();
  CHECK(text.find("# metrics on transformed target scale") != std::string::npos);
  CHECK(text.find("ln(1 + DOM)") != std::string::npos);

  std::stringstream reread(text);
  const MetricReport loaded = load_report_csv(reread);
  REQUIRE(loaded.rows.size() == report.rows.size());
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    CHECK(loaded.rows[i].combination == report.rows[i].combination);
    CHECK(loaded.rows[i].mae == report.rows[i].mae);
    CHECK(loaded.rows[i].r2 == report.rows[i].r2);
  }
}

TEST_CASE("reports are bit-identical under a fixed seed") {
  const FeatureTable table = greenness_corpus(200, 17);
  ExperimentSpec spec;
  spec.seed = 31;
  FeatureCombination combo;
  combo.name = "mix";
  combo.features = {"SQFT", "ZIP", "GREEN_mask"};
  combo.models = {"ols", "gbdt:cat"};
  spec.combinations = {combo};

  std::stringstream a, b;
  write_report_csv(a, run_experiment(spec, table));
  write_report_csv(b, run_experiment(spec, table));
  CHECK(a.str() == b.str());
}

TEST_CASE("glob expansion resolves against table columns deterministically") {
  const FeatureTable table = greenness_corpus(30, 6);
  FeatureCombination combo;
  combo.name = "globs";
  combo.features = {"GREEN_*", "SQ*"};
  combo.models = {"ols"};
  const auto resolved = resolve_features(combo, table.feature_names());
  CHECK(resolved == std::vector<std::string>{"GREEN_mask", "SQFT"});
}
