//===--- apply.hpp - refactoring engine: apply, invert, replay ------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "refweave/parse.hpp"
#include "refweave/program.hpp"
#include "refweave/refactoring.hpp"
#include "refweave/simplify.hpp"
#include "refweave/tree_merge.hpp"

namespace refweave {

struct ApplyError : std::runtime_error {
  enum class Kind { ElementMissing, Collision, BadRange };
  Kind kind;
  ApplyError(Kind kind, const std::string& detail);
};

struct ApplyResult {
  Program program;
  std::set<std::string> changedPaths; // created, modified, or deleted
  std::vector<std::string> warnings;  // ambiguous references left unrewritten
};

/// Performs one refactoring: the element is transformed and every reference
/// to it is rewritten (call sites, type slots, imports; file paths follow
/// the package/first-class rule). Throws ApplyError when the source element
/// is missing, the target collides, or an extract range is invalid.
ApplyResult applyRefactoring(const Program& program, const Refactoring& r);

inline Program apply(const Program& program, const Refactoring& r) {
  return applyRefactoring(program, r).program;
}

struct InversionRecord {
  Refactoring ref;   // descriptor at its inversion turn
  bool applied = false;
  std::string error; // failure reason when not applied
};

struct InversionLog {
  std::vector<InversionRecord> records;
  std::vector<std::string> notes;
  bool anyApplied() const {
    for (const auto& r : records)
      if (r.applied) return true;
    return false;
  }
};

/// Line span that an inverted extract's statements occupy in the printed
/// refactoring-free parent; the replay anchor.
struct ExtractAnchor {
  int seq = 0; // detection sequence of the ExtractMethod record
  std::string path;
  int startLine = 0, endLine = 0; // 1-based, inclusive
};

struct InversionOutcome {
  Program program; // the refactoring-free parent
  InversionLog log;
  /// Successfully inverted refactorings, each snapshotted at its inversion
  /// turn (containers expressed in base-side coordinates). This is the
  /// branch's replay candidate list.
  std::vector<Refactoring> replayReady;
  std::vector<ExtractAnchor> anchors;
  std::set<std::string> touchedPaths;
};

/// Folds apply(inverse(r)) over a TopDown list, rewriting the remaining
/// descriptors through each applied inversion. Failures (element deleted in
/// a later commit, collisions) are logged and skipped, never fatal.
InversionOutcome invert_all(const Program& parent, const ProcessedRefList& topdown);

struct ReplayRecord {
  Refactoring ref;
  bool applied = false;
  std::string error;
};

struct ReplayLog {
  std::vector<ReplayRecord> records;
  std::vector<std::string> notes;
};

struct ReplayInputs {
  /// Alignment of the merged files (chunk tables + conflict flags).
  const std::map<std::string, MergedFileInfo>* mergedFiles = nullptr;
  /// Extract anchors per branch, keyed by detection seq.
  std::map<std::pair<int, int>, ExtractAnchor> anchors; // (branch, seq) -> anchor
  /// Statement line spans of the parsed merged files (pre-replay).
  std::map<std::string, LineIndex> mergedLineIndex;
};

struct ReplayOutcome {
  Program program;
  ReplayLog log;
  std::set<std::string> touchedPaths;
};

/// Replays a conflict-free BottomUp list onto the merged program. Extract
/// replays locate their statement run through the merged-line provenance of
/// their inversion anchor, so edits merged into that span travel into the
/// re-extracted method; an anchor overlapping a conflict block skips the
/// refactoring (the inlined form stays). Descriptors are rewritten through
/// each applied replay, mirroring inversion.
ReplayOutcome replay_all(const Program& merged, const ProcessedRefList& bottomup,
                         const ReplayInputs& inputs);

} // namespace refweave
