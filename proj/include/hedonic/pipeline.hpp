#pragma once

#include <string>

#include "hedonic/config.hpp"

namespace hedonic {

/// Command entry points used by the CLI and by tests. Each one reads and
/// writes only persisted files under the config paths, so commands compose
/// with no hidden state. All return a process exit code.

/// Runs the per-listing extractors and writes <out>/features.csv plus an
/// error log; exits nonzero only when no listing could be processed.
int cmd_extract(const RunConfig& cfg);

/// Toy-embeds every manifest image into the embeddings file.
int cmd_embed(const RunConfig& cfg);

/// Fits the configured model on the train partition; writes <out>/model.json.
int cmd_fit(const RunConfig& cfg);

/// Scores the persisted model on the test partition; refuses on a schema
/// hash mismatch between table and model.
int cmd_evaluate(const RunConfig& cfg);

/// Writes gain importances as CSV and an SVG bar chart with the MLS numeric
/// columns outlined.
int cmd_importance(const RunConfig& cfg);

/// Writes the top-n feature names, one per line.
int cmd_select(const RunConfig& cfg);

/// Runs the configured feature-combination experiment; writes the report
/// CSV and grouped bar chart.
int cmd_experiment(const RunConfig& cfg);

/// The seven metadata predictor columns (highlighted in importance charts).
const std::vector<std::string>& mls_numeric_columns();

}  // namespace hedonic
