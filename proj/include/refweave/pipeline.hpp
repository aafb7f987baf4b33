//===--- pipeline.hpp - the merge pipeline ----------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "refweave/apply.hpp"
#include "refweave/interaction.hpp"
#include "refweave/tree_merge.hpp"

namespace refweave {

struct MergeScenario {
  std::string id;
  FileTree base, left, right;
  std::vector<FileTree> leftCommits, rightCommits; // intermediate trees
  std::optional<FileTree> expected;                // developer merge, reporting only
};

struct ScenarioError : std::runtime_error {
  explicit ScenarioError(const std::string& m) : std::runtime_error("scenario error: " + m) {}
};

struct TimeoutError : std::runtime_error {
  explicit TimeoutError(const std::string& m) : std::runtime_error("timeout: " + m) {}
};

struct MergeOptions {
  bool plain = false;        // skip refactoring handling entirely
  double timeoutSecs = 900;  // per-scenario wall-clock budget
};

struct MergeOutcome {
  MergedTree mergedTree;
  std::vector<InteractionVerdict> refConflicts;
  std::vector<Refactoring> leftRefs, rightRefs; // simplified per-branch lists
  InversionLog leftInversion, rightInversion;
  ReplayLog replay;
  std::vector<std::string> notes;
  ConflictMetrics textualMetrics;

  bool clean() const {
    return textualMetrics.conflictBlocks == 0 && textualMetrics.conflictingFiles == 0 &&
           refConflicts.empty();
  }
};

/// Runs the merge pipeline on one scenario: detect and simplify per branch, invert
/// both parents, textually merge the refactoring-free trees (files invert
/// touched merge from canonical prints, untouched files from their original
/// bytes), detect cross-branch refactoring conflicts, and replay the
/// non-conflicting refactorings. Per-refactoring failures degrade to the
/// plain merge for the affected elements.
MergeOutcome merge_scenario(const MergeScenario& scenario, const MergeOptions& opts = {});

/// The scenario's plain (diff3-only) merge over raw bytes.
MergedTree plain_merge(const MergeScenario& scenario);

std::string renderReport(const MergeOutcome& outcome);

} // namespace refweave
