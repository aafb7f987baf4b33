//===--- pipeline.cpp - the merge pipeline ----------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/pipeline.hpp"

#include <chrono>

#include "refweave/detect.hpp"
#include "refweave/parse.hpp"
#include "refweave/print.hpp"

namespace refweave {

namespace {

bool isMjPath(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".mj") == 0;
}

Program parseTree(const FileTree& tree, const std::string& label) {
  std::vector<SourceFile> files;
  for (const auto& [path, text] : tree) {
    if (!isMjPath(path)) continue;
    try {
      files.push_back(parse_file(path, text));
    } catch (const SyntaxError& e) {
      throw ScenarioError(label + "/" + path + ": " + e.what());
    }
  }
  try {
    return Program::build(std::move(files));
  } catch (const BuildError& e) {
    throw ScenarioError(label + ": " + e.what());
  }
}

struct Deadline {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double budgetSecs; // non-positive budgets expire at the first checkpoint
  void check(const std::string& step) const {
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budgetSecs) throw TimeoutError(step);
  }
};

} // namespace

MergedTree plain_merge(const MergeScenario& scenario) {
  return merge_trees(scenario.base, scenario.left, scenario.right);
}

MergeOutcome merge_scenario(const MergeScenario& scenario, const MergeOptions& opts) {
  Deadline deadline{std::chrono::steady_clock::now(), opts.timeoutSecs};
  MergeOutcome out;

  if (opts.plain) {
    out.mergedTree = plain_merge(scenario);
    out.textualMetrics = metrics(out.mergedTree);
    return out;
  }

  // step 0: parse the scenario
  Program base = parseTree(scenario.base, "base");
  Program left = parseTree(scenario.left, "left");
  Program right = parseTree(scenario.right, "right");
  deadline.check("parse");

  // step 1: detect and simplify per branch
  auto detectBranch = [&](const Program& parent, const std::vector<FileTree>& commits,
                          Branch branch) {
    std::vector<Program> seq;
    seq.push_back(base);
    int i = 0;
    for (const FileTree& t : commits)
      seq.push_back(parseTree(t, branch == Branch::Left ? "left_commits/" + std::to_string(i++)
                                                        : "right_commits/" + std::to_string(i++)));
    seq.push_back(parent);
    return simplify(detect_along(seq, branch));
  };
  ProcessedRefList leftList = detectBranch(left, scenario.leftCommits, Branch::Left);
  ProcessedRefList rightList = detectBranch(right, scenario.rightCommits, Branch::Right);
  out.leftRefs = leftList.refs;
  out.rightRefs = rightList.refs;
  deadline.check("detect");

  // step 2: invert both parents
  InversionOutcome leftInv = invert_all(left, leftList);
  InversionOutcome rightInv = invert_all(right, rightList);
  out.leftInversion = leftInv.log;
  out.rightInversion = rightInv.log;
  deadline.check("invert");

  // step 3: textual merge. Paths touched by a successful inversion on either
  // branch merge from canonical prints of all three sides; everything else
  // merges from the original bytes (the fallback contract).
  std::set<std::string> touched = leftInv.touchedPaths;
  touched.insert(rightInv.touchedPaths.begin(), rightInv.touchedPaths.end());

  FileTree baseIn = scenario.base, leftIn = scenario.left, rightIn = scenario.right;
  auto canonicalize = [&](FileTree& tree, const Program& source) {
    for (const auto& p : touched) {
      tree.erase(p);
      if (const SourceFile* f = source.fileAt(p)) tree[p] = print_unit(f->unit);
    }
  };
  canonicalize(baseIn, base);
  canonicalize(leftIn, leftInv.program);
  canonicalize(rightIn, rightInv.program);
  out.mergedTree = merge_trees(baseIn, leftIn, rightIn);
  deadline.check("merge");

  // step 4: cross-branch interaction
  CombineResult combined = combine(base, leftInv.replayReady, rightInv.replayReady);
  out.refConflicts = combined.conflictPairs;
  deadline.check("interact");

  // step 5: replay onto the conflict-free portion
  std::vector<SourceFile> mergedFiles;
  ReplayInputs inputs;
  inputs.mergedFiles = &out.mergedTree.files;
  bool parseable = true;
  for (const auto& [path, info] : out.mergedTree.files) {
    if (!isMjPath(path) || info.conflicted || hasConflictMarkers(info.text)) continue;
    LineIndex idx;
    try {
      mergedFiles.push_back(parse_file(path, info.text, &idx));
      inputs.mergedLineIndex[path] = std::move(idx);
    } catch (const SyntaxError& e) {
      out.notes.push_back("merged file " + path + " not parseable: " + e.what());
    }
  }
  Program mergedProgram;
  try {
    mergedProgram = Program::build(std::move(mergedFiles));
  } catch (const BuildError& e) {
    out.notes.push_back(std::string("merged tree does not form a program: ") + e.what());
    parseable = false;
  }
  if (parseable && !combined.replayList.refs.empty()) {
    for (const ExtractAnchor& a : leftInv.anchors)
      inputs.anchors[{(int)Branch::Left, a.seq}] = a;
    for (const ExtractAnchor& a : rightInv.anchors)
      inputs.anchors[{(int)Branch::Right, a.seq}] = a;
    ReplayOutcome replayed = replay_all(mergedProgram, combined.replayList, inputs);
    out.replay = replayed.log;
    // splice replay-touched files back into the merged tree
    for (const auto& p : replayed.touchedPaths) out.mergedTree.files.erase(p);
    for (const auto& p : replayed.touchedPaths)
      if (const SourceFile* f = replayed.program.fileAt(p))
        out.mergedTree.files[p] = MergedFileInfo{print_unit(f->unit), {}, {}, false};
  }
  deadline.check("replay");

  out.textualMetrics = metrics(out.mergedTree);
  return out;
}

std::string renderReport(const MergeOutcome& outcome) {
  std::string s;
  s += "== refactorings (left)\n";
  for (const auto& r : outcome.leftRefs) s += serialize(r) + "\n";
  s += "== refactorings (right)\n";
  for (const auto& r : outcome.rightRefs) s += serialize(r) + "\n";
  s += "== inversion (left)\n";
  for (const auto& rec : outcome.leftInversion.records)
    s += std::string(rec.applied ? "ok   " : "skip ") + serialize(rec.ref) +
         (rec.applied ? "" : "  [" + rec.error + "]") + "\n";
  s += "== inversion (right)\n";
  for (const auto& rec : outcome.rightInversion.records)
    s += std::string(rec.applied ? "ok   " : "skip ") + serialize(rec.ref) +
         (rec.applied ? "" : "  [" + rec.error + "]") + "\n";
  s += "== refactoring conflicts\n";
  for (const auto& v : outcome.refConflicts) s += serializeVerdict(v) + "\n";
  s += "== replay\n";
  for (const auto& rec : outcome.replay.records)
    s += std::string(rec.applied ? "ok   " : "skip ") + serialize(rec.ref) +
         (rec.applied ? "" : "  [" + rec.error + "]") + "\n";
  for (const auto& n : outcome.notes) s += "note: " + n + "\n";
  s += "== metrics\n";
  s += "conflicting_files=" + std::to_string(outcome.textualMetrics.conflictingFiles) +
       " conflict_blocks=" + std::to_string(outcome.textualMetrics.conflictBlocks) +
       " conflicting_loc=" + std::to_string(outcome.textualMetrics.conflictingLOC) +
       " ref_conflicts=" + std::to_string(outcome.refConflicts.size()) + "\n";
  return s;
}

} // namespace refweave
