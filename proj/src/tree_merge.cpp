//===--- tree_merge.cpp - tree-level three-way merge and metrics ----------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/tree_merge.hpp"

#include <set>

namespace refweave {

FileTree MergedTree::texts() const {
  FileTree t;
  for (const auto& [path, info] : files) t[path] = info.text;
  return t;
}

MergedTree merge_trees(const FileTree& base, const FileTree& left, const FileTree& right) {
  MergedTree out;
  std::set<std::string> paths;
  for (const auto& [p, _] : base) paths.insert(p);
  for (const auto& [p, _] : left) paths.insert(p);
  for (const auto& [p, _] : right) paths.insert(p);

  for (const auto& path : paths) {
    auto bi = base.find(path), li = left.find(path), ri = right.find(path);
    bool inB = bi != base.end(), inL = li != left.end(), inR = ri != right.end();

    if (inB && inL && inR) {
      Diff3Result r = diff3_merge(bi->second, li->second, ri->second);
      MergedFileInfo info{r.merged, std::move(r.chunks), std::move(r.provenance),
                          !r.blocks.empty()};
      for (ConflictBlock& blk : r.blocks) {
        blk.file = path;
        out.conflicts.push_back(std::move(blk));
      }
      out.files.emplace(path, std::move(info));
      continue;
    }
    if (!inB) {
      if (inL && inR) {
        if (li->second == ri->second) {
          out.files.emplace(path, MergedFileInfo{li->second, {}, {}, false});
        } else {
          // both added the path with different content: one full-file block
          ConflictBlock blk;
          blk.file = path;
          blk.leftLines = splitLines(li->second);
          blk.rightLines = splitLines(ri->second);
          blk.startLine = 1;
          std::vector<std::string> lines;
          lines.push_back(kLeftMarker);
          for (const auto& l : blk.leftLines) lines.push_back(l);
          lines.push_back(kSepMarker);
          for (const auto& l : blk.rightLines) lines.push_back(l);
          lines.push_back(kRightMarker);
          out.files.emplace(path, MergedFileInfo{joinLines(lines), {}, {}, true});
          out.conflicts.push_back(std::move(blk));
        }
      } else if (inL) {
        out.files.emplace(path, MergedFileInfo{li->second, {}, {}, false});
      } else if (inR) {
        out.files.emplace(path, MergedFileInfo{ri->second, {}, {}, false});
      }
      continue;
    }
    // present in base, deleted somewhere
    if (inL && !inR) {
      if (li->second == bi->second) continue; // right deleted, left untouched
      out.files.emplace(path, MergedFileInfo{li->second, {}, {}, true});
      out.deleteModify.push_back({path, Branch::Right});
      continue;
    }
    if (!inL && inR) {
      if (ri->second == bi->second) continue;
      out.files.emplace(path, MergedFileInfo{ri->second, {}, {}, true});
      out.deleteModify.push_back({path, Branch::Left});
      continue;
    }
    // deleted on both sides: gone
  }
  return out;
}

ConflictMetrics metrics(const MergedTree& tree) {
  ConflictMetrics m;
  std::set<std::string> conflictFiles;
  for (const ConflictBlock& b : tree.conflicts) {
    conflictFiles.insert(b.file);
    m.conflictBlocks += 1;
    m.conflictingLOC += (int)(b.leftLines.size() + b.rightLines.size());
  }
  for (const DeleteModify& dm : tree.deleteModify) {
    conflictFiles.insert(dm.path);
    m.conflictBlocks += 1;
  }
  m.conflictingFiles = (int)conflictFiles.size();
  return m;
}

} // namespace refweave
