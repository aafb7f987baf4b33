//===--- harness.hpp - scenario runner, metrics comparison, reports -------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "refweave/pipeline.hpp"

namespace refweave {

struct LayoutError : std::runtime_error {
  explicit LayoutError(const std::string& m) : std::runtime_error("layout error: " + m) {}
};

struct IOFailure : std::runtime_error {
  explicit IOFailure(const std::string& m) : std::runtime_error("io failure: " + m) {}
};

/// Reads every regular file under `dir` into a tree keyed by relative path.
FileTree load_tree(const std::string& dir);
void write_tree(const std::string& dir, const FileTree& tree);

/// Loads `dir/{manifest.txt,base,left,right[,left_commits,right_commits,
/// expected]}`. manifest.txt (`key=value` lines) is optional; the id
/// defaults to the directory name. Missing base/left/right is a LayoutError.
MergeScenario load_scenario(const std::string& dir);

enum class ScenarioStatus { Baseline, Resolved, Changed, Unchanged, Timeout };
std::string statusName(ScenarioStatus s);

struct GranularityDelta {
  std::string direction;     // "reduced" | "increased" | "equal"
  std::optional<double> pct; // |baseline - candidate| / baseline * 100
};

struct ScenarioReport {
  std::string id;
  std::string tool; // "plain" | "refweave"
  ConflictMetrics metrics;
  int refConflictCount = 0;
  ScenarioStatus status = ScenarioStatus::Baseline;
  GranularityDelta files, blocks, loc;
  /// Files differing from the scenario's optional developer merge; reported
  /// for context only, never used as ground truth.
  std::optional<int> expectedDiffFiles;
};

/// Classifies a candidate against the plain baseline: Unchanged when all
/// three metrics are equal, Resolved when the candidate is fully
/// conflict-free, Changed otherwise; per-granularity reduction/increase
/// percentages per the (baseline - candidate) / baseline rule.
void compare(const ScenarioReport& baseline, ScenarioReport& candidate);

ScenarioReport run_scenario(const MergeScenario& scenario, const std::string& tool,
                            const MergeOptions& opts = {});
ScenarioReport run_scenario_dir(const std::string& dir, const std::string& tool,
                                const MergeOptions& opts = {});

struct BenchResult {
  std::vector<std::pair<ScenarioReport, ScenarioReport>> rows; // (plain, refweave)
  std::string table;
  std::string jsonl; // one record per scenario
};

/// Runs the requested tools over every scenario directory in the corpus; a
/// worker pool processes scenarios, report assembly is ordered by id.
BenchResult bench(const std::string& corpusDir, const std::vector<std::string>& tools,
                  const MergeOptions& opts = {}, int jobs = 0);

} // namespace refweave
