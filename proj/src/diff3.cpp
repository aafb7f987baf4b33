//===--- diff3.cpp - three-way line merge ---------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/diff3.hpp"

#include <map>

namespace refweave {

const char* const kLeftMarker = "<<<<<<< LEFT";
const char* const kSepMarker = "=======";
const char* const kRightMarker = ">>>>>>> RIGHT";

std::vector<std::string> splitLines(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string joinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

namespace {

// Interns lines so the DP compares ints.
std::vector<int> internLines(const std::vector<std::string>& lines,
                             std::map<std::string, int>& pool) {
  std::vector<int> ids;
  ids.reserve(lines.size());
  for (const auto& l : lines) {
    auto [it, _] = pool.emplace(l, (int)pool.size());
    ids.push_back(it->second);
  }
  return ids;
}

// Pinned LCS matching base -> other: returns for each base line the matched
// other line or -1. Common prefix/suffix are matched first; the middle runs
// a full LCS table with the deterministic reconstruction described in the
// header.
std::vector<int> matchLines(const std::vector<int>& base, const std::vector<int>& other) {
  std::vector<int> match(base.size(), -1);
  size_t lo = 0;
  size_t bn = base.size(), on = other.size();
  while (lo < bn && lo < on && base[lo] == other[lo]) {
    match[lo] = (int)lo;
    ++lo;
  }
  size_t tail = 0;
  while (lo + tail < bn && lo + tail < on && base[bn - 1 - tail] == other[on - 1 - tail]) {
    match[bn - 1 - tail] = (int)(on - 1 - tail);
    ++tail;
  }
  size_t bm = bn - lo - tail, om = on - lo - tail;
  if (bm == 0 || om == 0) return match;
  // suffix LCS lengths over the middle window
  std::vector<std::vector<int>> L(bm + 1, std::vector<int>(om + 1, 0));
  for (size_t i = bm; i-- > 0;)
    for (size_t j = om; j-- > 0;)
      L[i][j] = base[lo + i] == other[lo + j] ? L[i + 1][j + 1] + 1
                                              : std::max(L[i + 1][j], L[i][j + 1]);
  size_t i = 0, j = 0;
  while (i < bm && j < om) {
    if (base[lo + i] == other[lo + j]) {
      match[lo + i] = (int)(lo + j);
      ++i;
      ++j;
    } else if (L[i + 1][j] >= L[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  return match;
}

} // namespace

Diff3Result diff3_merge(const std::string& base, const std::string& left,
                        const std::string& right) {
  std::vector<std::string> B = splitLines(base), Lf = splitLines(left), R = splitLines(right);
  std::map<std::string, int> pool;
  std::vector<int> bi = internLines(B, pool), li = internLines(Lf, pool),
                   ri = internLines(R, pool);
  std::vector<int> ML = matchLines(bi, li), MR = matchLines(bi, ri);

  Diff3Result res;
  std::vector<std::string> merged;

  auto sliceEq = [](const std::vector<int>& a, int ab, int ae, const std::vector<int>& b,
                    int bb, int be) {
    if (ae - ab != be - bb) return false;
    for (int k = 0; k < ae - ab; ++k)
      if (a[ab + k] != b[bb + k]) return false;
    return true;
  };

  auto emitChunk = [&](int ob, int oe, int ab, int ae, int bb, int be) {
    if (ob == oe && ab == ae && bb == be) return;
    AlignChunk c;
    c.baseBegin = ob; c.baseEnd = oe;
    c.leftBegin = ab; c.leftEnd = ae;
    c.rightBegin = bb; c.rightEnd = be;
    c.mergedBegin = (int)merged.size();
    bool leftSame = sliceEq(bi, ob, oe, li, ab, ae);
    bool rightSame = sliceEq(bi, ob, oe, ri, bb, be);
    if (leftSame && rightSame) {
      c.kind = ChunkKind::Stable; // unchanged region between anchors
      for (int k = ob; k < oe; ++k) {
        merged.push_back(B[k]);
        res.provenance.push_back({LineSrc::Base, k + 1, false});
      }
    } else if (leftSame) {
      c.kind = ChunkKind::TakeRight;
      for (int k = bb; k < be; ++k) {
        merged.push_back(R[k]);
        res.provenance.push_back({LineSrc::Right, k + 1, false});
      }
    } else if (rightSame) {
      c.kind = ChunkKind::TakeLeft;
      for (int k = ab; k < ae; ++k) {
        merged.push_back(Lf[k]);
        res.provenance.push_back({LineSrc::Left, k + 1, false});
      }
    } else if (sliceEq(li, ab, ae, ri, bb, be)) {
      c.kind = ChunkKind::SameChange;
      for (int k = ab; k < ae; ++k) {
        merged.push_back(Lf[k]);
        res.provenance.push_back({LineSrc::Both, k + 1, false});
      }
    } else {
      c.kind = ChunkKind::Conflict;
      ConflictBlock blk;
      blk.startLine = (int)merged.size() + 1;
      merged.push_back(kLeftMarker);
      res.provenance.push_back({LineSrc::Base, 0, true});
      for (int k = ab; k < ae; ++k) {
        blk.leftLines.push_back(Lf[k]);
        merged.push_back(Lf[k]);
        res.provenance.push_back({LineSrc::Left, k + 1, false});
      }
      merged.push_back(kSepMarker);
      res.provenance.push_back({LineSrc::Base, 0, true});
      for (int k = bb; k < be; ++k) {
        blk.rightLines.push_back(R[k]);
        merged.push_back(R[k]);
        res.provenance.push_back({LineSrc::Right, k + 1, false});
      }
      merged.push_back(kRightMarker);
      res.provenance.push_back({LineSrc::Base, 0, true});
      res.blocks.push_back(std::move(blk));
    }
    c.mergedEnd = (int)merged.size();
    res.chunks.push_back(c);
  };

  const int bn = (int)B.size(), ln = (int)Lf.size(), rn = (int)R.size();
  int o = 0, a = 0, b = 0;
  while (o < bn || a < ln || b < rn) {
    // next base line matched on both sides
    int j = o;
    while (j < bn && (ML[j] < 0 || MR[j] < 0)) ++j;
    if (j == bn) {
      emitChunk(o, bn, a, ln, b, rn);
      o = bn; a = ln; b = rn;
      break;
    }
    if (j == o && ML[o] == a && MR[o] == b) {
      // stable run
      AlignChunk c;
      c.kind = ChunkKind::Stable;
      c.baseBegin = o; c.leftBegin = a; c.rightBegin = b;
      c.mergedBegin = (int)merged.size();
      while (o < bn && ML[o] == a && MR[o] == b) {
        merged.push_back(B[o]);
        res.provenance.push_back({LineSrc::Both, o + 1, false});
        ++o; ++a; ++b;
      }
      c.baseEnd = o; c.leftEnd = a; c.rightEnd = b;
      c.mergedEnd = (int)merged.size();
      res.chunks.push_back(c);
      continue;
    }
    emitChunk(o, j, a, ML[j], b, MR[j]);
    o = j; a = ML[j]; b = MR[j];
  }
  res.merged = joinLines(merged);
  return res;
}

namespace {
bool startsWith(const std::string& s, const char* prefix) {
  return s.rfind(prefix, 0) == 0;
}
} // namespace

bool hasConflictMarkers(const std::string& text) {
  for (const auto& l : splitLines(text))
    if (startsWith(l, "<<<<<<<") || startsWith(l, "=======") || startsWith(l, ">>>>>>>"))
      return true;
  return false;
}

std::vector<ConflictBlock> parse_conflicts(const std::string& text) {
  std::vector<ConflictBlock> blocks;
  auto lines = splitLines(text);
  size_t i = 0;
  while (i < lines.size()) {
    if (startsWith(lines[i], "<<<<<<<")) {
      ConflictBlock blk;
      blk.startLine = (int)i + 1;
      ++i;
      while (i < lines.size() && !startsWith(lines[i], "=======")) {
        if (startsWith(lines[i], "<<<<<<<") || startsWith(lines[i], ">>>>>>>"))
          throw MarkerError("nested or unordered marker at line " + std::to_string(i + 1));
        blk.leftLines.push_back(lines[i]);
        ++i;
      }
      if (i >= lines.size()) throw MarkerError("missing ======= marker");
      ++i;
      while (i < lines.size() && !startsWith(lines[i], ">>>>>>>")) {
        if (startsWith(lines[i], "<<<<<<<") || startsWith(lines[i], "======="))
          throw MarkerError("nested or unordered marker at line " + std::to_string(i + 1));
        blk.rightLines.push_back(lines[i]);
        ++i;
      }
      if (i >= lines.size()) throw MarkerError("missing >>>>>>> marker");
      ++i;
      blocks.push_back(std::move(blk));
      continue;
    }
    if (startsWith(lines[i], "=======") || startsWith(lines[i], ">>>>>>>"))
      throw MarkerError("marker outside a conflict block at line " + std::to_string(i + 1));
    ++i;
  }
  return blocks;
}

} // namespace refweave
