//===--- interaction.cpp - cross-branch refactoring interaction -----------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/interaction.hpp"

#include <algorithm>

namespace refweave {

std::string reasonName(ConflictReason r) {
  switch (r) {
  case ConflictReason::SameSourceDiffTarget: return "SameSourceDiffTarget";
  case ConflictReason::DiffSourceSameTarget: return "DiffSourceSameTarget";
  case ConflictReason::AccidentalOverride: return "AccidentalOverride";
  case ConflictReason::AccidentalOverload: return "AccidentalOverload";
  }
  return "?";
}

bool overrides(const Program& program, const ElementId& m1, const ElementId& m2) {
  if (m1.kind != ElementKind::Method || m2.kind != ElementKind::Method) return false;
  if (!m1.signature || !m2.signature) return false;
  if (m1.signature->name != m2.signature->name) return false;
  if (m1.signature->paramTypes != m2.signature->paramTypes) return false;
  std::string c1 = containerOf(m1.qualifiedName), c2 = containerOf(m2.qualifiedName);
  if (c1 == c2) return false;
  return program.inherits(c1, c2) || program.inherits(c2, c1);
}

bool overloads(const Program& program, const ElementId& m1, const ElementId& m2) {
  (void)program;
  if (m1.kind != ElementKind::Method || m2.kind != ElementKind::Method) return false;
  if (!m1.signature || !m2.signature) return false;
  if (containerOf(m1.qualifiedName) != containerOf(m2.qualifiedName)) return false;
  if (m1.signature->name != m2.signature->name) return false;
  return m1.signature->paramTypes != m2.signature->paramTypes;
}

namespace {

/// The move + rename pairs whose aspects are disjoint; Eq.-2 commutative
/// candidates, exempt from the same-source conflict rule.
bool disjointAspects(RefactoringKind a, RefactoringKind b) {
  auto pairOf = [](RefactoringKind x, RefactoringKind y, RefactoringKind p,
                   RefactoringKind q) { return (x == p && y == q) || (x == q && y == p); };
  return pairOf(a, b, RefactoringKind::MoveMethod, RefactoringKind::RenameMethod) ||
         pairOf(a, b, RefactoringKind::MoveClass, RefactoringKind::RenameClass) ||
         pairOf(a, b, RefactoringKind::MoveField, RefactoringKind::RenameField);
}

/// The element a refactoring brings into existence under a new identity.
/// Inline creates nothing (its after is the pre-existing host).
std::optional<ElementId> producedElement(const Refactoring& r) {
  if (r.kind == RefactoringKind::InlineMethod) return std::nullopt;
  return r.after;
}

bool producesMethod(const Refactoring& r) {
  auto p = producedElement(r);
  return p && p->kind == ElementKind::Method;
}

} // namespace

std::optional<ConflictReason> has_conflict(const Program& base, const Refactoring& r1,
                                           const Refactoring& r2) {
  if (sameOperation(r1, r2)) return std::nullopt; // one copy is kept instead

  // (a) same source element, diverging outcomes
  if (r1.before == r2.before && !disjointAspects(r1.kind, r2.kind))
    return ConflictReason::SameSourceDiffTarget;

  auto p1 = producedElement(r1), p2 = producedElement(r2);
  // (b) different sources, same produced element
  if (p1 && p2 && *p1 == *p2 && r1.before != r2.before)
    return ConflictReason::DiffSourceSameTarget;

  if (producesMethod(r1) && producesMethod(r2)) {
    // (c) the outcomes override each other although the sources did not
    if (overrides(base, *p1, *p2) && !overrides(base, r1.before, r2.before))
      return ConflictReason::AccidentalOverride;
    // (d) the outcomes overload each other although the sources did not
    if (overloads(base, *p1, *p2) && !overloads(base, r1.before, r2.before))
      return ConflictReason::AccidentalOverload;
  }
  return std::nullopt;
}

bool is_commutative(const Refactoring& r1, const Refactoring& r2) {
  return r1.kind != r2.kind && r1.before == r2.before && r1.after != r2.after;
}

namespace {

Refactoring fuseMoveRename(const Refactoring& a, const Refactoring& b) {
  auto isMove = [](RefactoringKind k) {
    return k == RefactoringKind::MoveMethod || k == RefactoringKind::MoveClass ||
           k == RefactoringKind::MoveField;
  };
  const Refactoring& mv = isMove(a.kind) ? a : b;
  const Refactoring& rn = isMove(a.kind) ? b : a;
  Refactoring fused = a; // keeps the left record's branch and seq
  switch (mv.kind) {
  case RefactoringKind::MoveMethod: fused.kind = RefactoringKind::MoveAndRenameMethod; break;
  case RefactoringKind::MoveField: fused.kind = RefactoringKind::MoveAndRenameField; break;
  default: fused.kind = RefactoringKind::MoveAndRenameClass; break;
  }
  fused.before = a.before;
  std::string container = containerOf(mv.after.qualifiedName);
  std::string leaf = leafName(rn.after.qualifiedName);
  fused.after = mv.after;
  fused.after.qualifiedName = container + "." + leaf;
  if (fused.after.signature) fused.after.signature = rn.after.signature;
  return fused;
}

} // namespace

CombineResult combine(const Program& base, const std::vector<Refactoring>& leftList,
                      const std::vector<Refactoring>& rightList) {
  CombineResult out;
  std::vector<bool> conflictedL(leftList.size(), false), conflictedR(rightList.size(), false);
  std::vector<bool> fusedL(leftList.size(), false), fusedR(rightList.size(), false);
  std::vector<bool> dupR(rightList.size(), false);
  std::vector<std::pair<size_t, size_t>> commutative;

  for (size_t i = 0; i < leftList.size(); ++i) {
    for (size_t j = 0; j < rightList.size(); ++j) {
      const Refactoring& l = leftList[i];
      const Refactoring& r = rightList[j];
      if (sameOperation(l, r)) {
        dupR[j] = true; // both branches performed it; keep the left copy
        continue;
      }
      if (auto reason = has_conflict(base, l, r)) {
        out.conflictPairs.push_back({l, r, InteractionVerdict::Kind::Conflict, reason});
        conflictedL[i] = conflictedR[j] = true;
        continue;
      }
      if (is_commutative(l, r)) commutative.push_back({i, j});
    }
  }

  std::vector<Refactoring> fusedRecords;
  for (auto [i, j] : commutative) {
    if (conflictedL[i] || conflictedR[j] || fusedL[i] || fusedR[j] || dupR[j]) continue;
    fusedRecords.push_back(fuseMoveRename(leftList[i], rightList[j]));
    fusedL[i] = fusedR[j] = true;
  }

  std::vector<Refactoring> survivors;
  for (size_t i = 0; i < leftList.size(); ++i)
    if (!conflictedL[i] && !fusedL[i]) survivors.push_back(leftList[i]);
  for (size_t j = 0; j < rightList.size(); ++j)
    if (!conflictedR[j] && !fusedR[j] && !dupR[j]) survivors.push_back(rightList[j]);
  for (auto& f : fusedRecords) survivors.push_back(std::move(f));

  // deterministic cross-branch order before the granularity sort
  std::stable_sort(survivors.begin(), survivors.end(),
                   [](const Refactoring& a, const Refactoring& b) {
                     if (a.branch != b.branch) return (int)a.branch < (int)b.branch;
                     return a.seq < b.seq;
                   });
  out.replayList = order_bottomup(std::move(survivors));
  return out;
}

std::string serializeVerdict(const InteractionVerdict& v) {
  std::string s = "REF_CONFLICT ";
  s += v.reason ? reasonName(*v.reason) : "none";
  s += " L: " + serialize(v.left);
  s += " R: " + serialize(v.right);
  return s;
}

} // namespace refweave
