#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hedonic/feature_table.hpp"
#include "hedonic/gbdt.hpp"

namespace hedonic {

/// One named feature set to evaluate. Entries may be literal column names
/// or globs with '*'; an optional selection file contributes one name per
/// line (the cmd_select output).
struct FeatureCombination {
  std::string name;
  std::vector<std::string> features;
  std::vector<std::string> models;  // "ols", "ridge", "gbdt:<preset>"
  std::optional<std::string> selection_file;
};

struct ExperimentSpec {
  std::vector<FeatureCombination> combinations;
  double split_ratio = 0.7;
  std::uint64_t seed = 0;
  int bootstrap_strata = 10;
  double ridge_lambda = 1.0;
  std::map<std::string, GbdtParams> gbdt_presets;  // merged over built-ins
};

/// Single-engine stand-ins for the boosting-library presets compared in the
/// reports: "xgb", "lgb", "cat", plus "default".
std::map<std::string, GbdtParams> builtin_gbdt_presets();

struct MetricRow {
  std::string combination;
  std::string model;
  std::string target;  // "price" or "dom"
  double mae = 0;
  double r2 = 0;
  double wall_ms = 0;  // in-memory only; the persisted report omits it
};

struct MetricReport {
  std::vector<MetricRow> rows;  // ranked per target by descending R^2
};

/// Expands a combination against the table columns; throws SchemaError
/// listing every unresolvable entry.
std::vector<std::string> resolve_features(const FeatureCombination& combo,
                                          const std::vector<std::string>& table_columns);

/// Fits and scores every combination x model x target on one shared
/// train/test partition. Targets are transformed (ln price, log1p dom) and
/// the dom training partition is stratified-bootstrap resampled; metrics
/// are reported on the transformed scale.
MetricReport run_experiment(const ExperimentSpec& spec, const FeatureTable& table);

/// CSV: combination,model,target,mae,r2 with a header comment naming the
/// target scale. Byte-stable for a fixed seed.
void write_report_csv(std::ostream& out, const MetricReport& report);
MetricReport load_report_csv(std::istream& in);

}  // namespace hedonic
