//===--- tree_merge.hpp - tree-level three-way merge and metrics ----------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <map>
#include <string>
#include <vector>

#include "refweave/diff3.hpp"
#include "refweave/refactoring.hpp"

namespace refweave {

using FileTree = std::map<std::string, std::string>; // path -> contents

struct DeleteModify {
  std::string path;
  Branch deletedBy;
  friend bool operator==(const DeleteModify&, const DeleteModify&) = default;
};

struct MergedFileInfo {
  std::string text;
  std::vector<AlignChunk> chunks;      // empty for files adopted wholesale
  std::vector<LineOrigin> provenance;
  bool conflicted = false;
};

struct MergedTree {
  std::map<std::string, MergedFileInfo> files;
  std::vector<ConflictBlock> conflicts;
  std::vector<DeleteModify> deleteModify; // kept files, no internal merge

  FileTree texts() const;
};

/// Per path: present in all three -> line merge; added on one side ->
/// adopted; added on both with different content -> one full-file conflict
/// block; deleted on one side while modified on the other -> delete/modify
/// entry keeping the modified content with no internal merge; deleted while
/// unmodified -> deleted.
MergedTree merge_trees(const FileTree& base, const FileTree& left, const FileTree& right);

struct ConflictMetrics {
  int conflictingFiles = 0;
  int conflictBlocks = 0;
  int conflictingLOC = 0; // lines between markers, both sides, markers excluded
  friend bool operator==(const ConflictMetrics&, const ConflictMetrics&) = default;
};

/// Delete/modify entries count as one conflicting file and one block with
/// zero LOC.
ConflictMetrics metrics(const MergedTree& tree);

} // namespace refweave
