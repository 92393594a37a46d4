#include "hedonic/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include "hedonic/common.hpp"
#include "hedonic/csv.hpp"
#include "hedonic/linear.hpp"
#include "hedonic/metrics.hpp"
#include "hedonic/rng.hpp"
#include "hedonic/sampling.hpp"

namespace hedonic {

std::map<std::string, GbdtParams> builtin_gbdt_presets() {
  std::map<std::string, GbdtParams> presets;
  presets["default"] = GbdtParams{};
  GbdtParams xgb;
  xgb.n_trees = 400;
  xgb.learning_rate = 0.1;
  xgb.max_depth = 6;
  xgb.min_samples_leaf = 10;
  xgb.n_bins = 64;
  presets["xgb"] = xgb;
  GbdtParams lgb;
  lgb.n_trees = 500;
  lgb.learning_rate = 0.05;
  lgb.max_depth = 8;
  lgb.min_samples_leaf = 20;
  lgb.n_bins = 64;
  presets["lgb"] = lgb;
  GbdtParams cat;
  cat.n_trees = 300;
  cat.learning_rate = 0.03;
  cat.max_depth = 4;
  cat.min_samples_leaf = 30;
  cat.n_bins = 32;
  presets["cat"] = cat;
  return presets;
}

namespace {

bool glob_match(const std::string& pattern, const std::string& name) {
  // '*' only; classic two-pointer scan.
  std::size_t p = 0, s = 0, star = std::string::npos, mark = 0;
  while (s < name.size()) {
    if (p < pattern.size() && (pattern[p] == name[s])) {
      ++p;
      ++s;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = s;
    } else if (star != std::string::npos) {
      p = star + 1;
      s = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

}  // namespace

std::vector<std::string> resolve_features(const FeatureCombination& combo,
                                          const std::vector<std::string>& table_columns) {
  std::vector<std::string> entries = combo.features;
  if (combo.selection_file) {
    std::ifstream in(*combo.selection_file);
    if (!in) throw SchemaError("combination " + combo.name + ": cannot open selection file " +
                               *combo.selection_file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) entries.push_back(line);
    }
  }

  std::set<std::string> resolved;
  std::vector<std::string> offenders;
  for (const auto& entry : entries) {
    if (entry.find('*') != std::string::npos) {
      bool any = false;
      for (const auto& col : table_columns) {
        if (glob_match(entry, col)) {
          resolved.insert(col);
          any = true;
        }
      }
      if (!any) offenders.push_back(entry);
    } else if (std::find(table_columns.begin(), table_columns.end(), entry) !=
               table_columns.end()) {
      resolved.insert(entry);
    } else {
      offenders.push_back(entry);
    }
  }
  if (!offenders.empty()) {
    std::string msg = "combination " + combo.name + ": unresolvable feature(s):";
    for (const auto& o : offenders) msg += " " + o;
    throw SchemaError(msg);
  }
  if (resolved.empty()) {
    throw SchemaError("combination " + combo.name + " resolves to no features");
  }
  return {resolved.begin(), resolved.end()};
}

namespace {

struct PreparedTarget {
  Eigen::VectorXd train_y;        // transformed, bootstrap applied for dom
  Eigen::VectorXd test_y;         // transformed
  std::vector<int> train_rows;    // table rows backing train_y
  std::vector<int> test_rows;
};

PreparedTarget prepare_target(const FeatureTable& table, const Split& split,
                              const std::string& target, int strata, std::uint64_t seed) {
  const Eigen::VectorXd& raw = target == "price" ? table.price() : table.dom();
  auto transform = [&](double v) {
    return target == "price" ? log_transform_price(v) : log_transform_dom(v);
  };

  PreparedTarget out;
  out.test_rows = split.test;
  Eigen::VectorXd train_raw(split.train.size());
  for (std::size_t i = 0; i < split.train.size(); ++i) train_raw(i) = raw(split.train[i]);

  if (target == "dom") {
    // The lifespan target is heavily right-skewed: rebalance the training
    // side only, never the test side.
    const auto boot =
        stratified_bootstrap(train_raw, strata, Rng::derive(seed, "dom-bootstrap"));
    out.train_rows.reserve(boot.indices.size());
    for (int local : boot.indices) out.train_rows.push_back(split.train[local]);
  } else {
    out.train_rows = split.train;
  }

  out.train_y.resize(out.train_rows.size());
  for (std::size_t i = 0; i < out.train_rows.size(); ++i) {
    out.train_y(i) = transform(raw(out.train_rows[i]));
  }
  out.test_y.resize(split.test.size());
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    out.test_y(i) = transform(raw(split.test[i]));
  }
  return out;
}

}  // namespace

MetricReport run_experiment(const ExperimentSpec& spec, const FeatureTable& table) {
  if (spec.combinations.empty()) throw DomainError("run_experiment: no combinations");
  const int n = static_cast<int>(table.n_rows());
  const Split split = train_test_split(n, spec.split_ratio, spec.seed);

  std::map<std::string, GbdtParams> presets = builtin_gbdt_presets();
  for (const auto& [name, params] : spec.gbdt_presets) presets[name] = params;

  const std::vector<std::string> targets = {"price", "dom"};
  std::map<std::string, PreparedTarget> prepared;
  for (const auto& target : targets) {
    prepared[target] = prepare_target(table, split, target, spec.bootstrap_strata, spec.seed);
  }

  MetricReport report;
  for (const auto& combo : spec.combinations) {
    const auto features = resolve_features(combo, table.feature_names());
    const DesignMatrix full = table.design(features);
    if (combo.models.empty()) {
      throw SchemaError("combination " + combo.name + " names no models");
    }
    for (const auto& target : targets) {
      const PreparedTarget& prep = prepared.at(target);
      const DesignMatrix train_X = full.select_rows(prep.train_rows);
      const DesignMatrix test_X = full.select_rows(prep.test_rows);
      for (const auto& model_name : combo.models) {
        const auto start = std::chrono::steady_clock::now();
        Eigen::VectorXd predictions;
        if (model_name == "ols") {
          const LinearModel m = fit_linear(train_X, prep.train_y, LinearKind::ols);
          predictions = predict(m, test_X);
        } else if (model_name == "ridge") {
          const LinearModel m =
              fit_linear(train_X, prep.train_y, LinearKind::ridge, spec.ridge_lambda);
          predictions = predict(m, test_X);
        } else if (model_name.rfind("gbdt:", 0) == 0) {
          const std::string preset = model_name.substr(5);
          auto it = presets.find(preset);
          if (it == presets.end()) {
            throw SchemaError("combination " + combo.name + ": unknown gbdt preset " + preset);
          }
          const GbdtModel m = gbdt_fit(train_X, prep.train_y, it->second);
          predictions = predict(m, test_X);
        } else {
          throw SchemaError("combination " + combo.name + ": unknown model " + model_name);
        }
        const auto stop = std::chrono::steady_clock::now();

        MetricRow row;
        row.combination = combo.name;
        row.model = model_name;
        row.target = target;
        row.mae = mae(prep.test_y, predictions);
        row.r2 = r_squared(prep.test_y, predictions);
        row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        report.rows.push_back(std::move(row));
      }
    }
  }

  std::stable_sort(report.rows.begin(), report.rows.end(), [](const MetricRow& a, const MetricRow& b) {
    if (a.target != b.target) return a.target < b.target;  // dom before price, both blocks whole
    if (a.r2 != b.r2) return a.r2 > b.r2;
    if (a.mae != b.mae) return a.mae < b.mae;
    if (a.combination != b.combination) return a.combination < b.combination;
    return a.model < b.model;
  });
  return report;
}

void write_report_csv(std::ostream& out, const MetricReport& report) {
  out << "# metrics on transformed target scale: price = ln(SOLDPRICE), dom = ln(1 + DOM)\n";
  out << "combination,model,target,mae,r2\n";
  for (const auto& row : report.rows) {
    out << join_csv({row.combination, row.model, row.target, format_double(row.mae),
                     format_double(row.r2)})
        << "\n";
  }
}

MetricReport load_report_csv(std::istream& in) {
  MetricReport report;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) throw FormatError("report row with " + std::to_string(fields.size()) + " fields");
    MetricRow row;
    row.combination = fields[0];
    row.model = fields[1];
    row.target = fields[2];
    if (!parse_double(fields[3], row.mae) || !parse_double(fields[4], row.r2)) {
      throw FormatError("report row with non-numeric metrics: " + line);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace hedonic
