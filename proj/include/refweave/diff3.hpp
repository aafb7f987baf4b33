//===--- diff3.hpp - three-way line merge ---------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace refweave {

struct ConflictBlock {
  std::string file;
  std::vector<std::string> leftLines;
  std::vector<std::string> rightLines;
  int startLine = 0; // 1-based merged-file line of the opening marker
  friend bool operator==(const ConflictBlock&, const ConflictBlock&) = default;
};

enum class ChunkKind { Stable, TakeLeft, TakeRight, SameChange, Conflict };

/// Alignment of one merged region against all three inputs. Spans are
/// 0-based half-open line ranges; the merged span of a conflict includes its
/// three marker lines.
struct AlignChunk {
  ChunkKind kind = ChunkKind::Stable;
  int baseBegin = 0, baseEnd = 0;
  int leftBegin = 0, leftEnd = 0;
  int rightBegin = 0, rightEnd = 0;
  int mergedBegin = 0, mergedEnd = 0;
};

enum class LineSrc { Base, Left, Right, Both };

struct LineOrigin {
  LineSrc src = LineSrc::Base;
  int sourceLine = 0; // 1-based in the origin text; 0 for marker lines
  bool marker = false;
};

struct Diff3Result {
  std::string merged;
  std::vector<ConflictBlock> blocks; // file field left empty
  std::vector<AlignChunk> chunks;
  std::vector<LineOrigin> provenance; // one entry per merged line
};

/// Three-way merge with diff3 semantics over whole lines: left and right are
/// aligned to base with LCS diffs; a region changed on one side takes that
/// side, identical changes merge silently, diverging changes become a
/// `<<<<<<< LEFT / ======= / >>>>>>> RIGHT` block. Output uses LF endings; a
/// missing final newline is normalized away.
///
/// The diff is pinned so independent implementations agree byte-for-byte:
/// lines are matched greedily when equal (always LCS-optimal), otherwise the
/// base-side cursor advances when lcs(i+1,j) >= lcs(i,j+1).
Diff3Result diff3_merge(const std::string& base, const std::string& left,
                        const std::string& right);

struct MarkerError : std::runtime_error {
  explicit MarkerError(const std::string& m) : std::runtime_error("marker error: " + m) {}
};

/// Recovers conflict blocks from marked-up text; malformed marker nesting
/// throws MarkerError.
std::vector<ConflictBlock> parse_conflicts(const std::string& text);

bool hasConflictMarkers(const std::string& text);

std::vector<std::string> splitLines(const std::string& text);
std::string joinLines(const std::vector<std::string>& lines);

extern const char* const kLeftMarker;   // "<<<<<<< LEFT"
extern const char* const kSepMarker;    // "======="
extern const char* const kRightMarker;  // ">>>>>>> RIGHT"

} // namespace refweave
