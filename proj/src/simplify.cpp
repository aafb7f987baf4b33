//===--- simplify.cpp - refactoring list simplification -------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/simplify.hpp"

#include <algorithm>

#include "refweave/program.hpp"

namespace refweave {

namespace {

enum class Family { Method, Field, Class, None };

Family renameMoveFamily(RefactoringKind k) {
  switch (k) {
  case RefactoringKind::RenameMethod:
  case RefactoringKind::MoveMethod:
  case RefactoringKind::MoveAndRenameMethod: return Family::Method;
  case RefactoringKind::RenameField:
  case RefactoringKind::MoveField:
  case RefactoringKind::MoveAndRenameField: return Family::Field;
  case RefactoringKind::RenameClass:
  case RefactoringKind::MoveClass:
  case RefactoringKind::MoveAndRenameClass: return Family::Class;
  default: return Family::None;
  }
}

RefactoringKind composedKind(Family fam, bool nameChanged, bool containerChanged) {
  int base = fam == Family::Method ? 0 : fam == Family::Class ? 3 : 10;
  // base indexes RenameMethod / RenameClass / RenameField blocks
  if (nameChanged && containerChanged) return (RefactoringKind)(base + 2);
  if (containerChanged) return (RefactoringKind)(base + 1);
  return (RefactoringKind)(base + 0);
}

} // namespace

std::optional<FoldResult> tryFold(const Refactoring& stored, const Refactoring& incoming) {
  // rename of an element created by a stored extract or pull-up: absorb
  if (incoming.kind == RefactoringKind::RenameMethod &&
      (stored.kind == RefactoringKind::ExtractMethod ||
       stored.kind == RefactoringKind::PullUpMethod) &&
      stored.after == incoming.before) {
    FoldResult r{stored, false};
    r.folded.after = incoming.after;
    return r;
  }
  if (incoming.kind == RefactoringKind::RenameField &&
      stored.kind == RefactoringKind::PullUpField && stored.after == incoming.before) {
    FoldResult r{stored, false};
    r.folded.after = incoming.after;
    return r;
  }

  Family fam = renameMoveFamily(stored.kind);
  bool sameFamily = fam != Family::None && renameMoveFamily(incoming.kind) == fam;
  bool paramPair = stored.kind == RefactoringKind::RenameParameter &&
                   incoming.kind == RefactoringKind::RenameParameter;
  bool packagePair = stored.kind == RefactoringKind::RenamePackage &&
                     incoming.kind == RefactoringKind::RenamePackage;
  if (!sameFamily && !paramPair && !packagePair) return std::nullopt;
  if (stored.after != incoming.before) return std::nullopt;

  FoldResult r{stored, false};
  r.folded.after = incoming.after;
  if (sameFamily) {
    bool nameChanged = leafName(stored.before.qualifiedName) != leafName(incoming.after.qualifiedName);
    bool containerChanged =
        containerOf(stored.before.qualifiedName) != containerOf(incoming.after.qualifiedName);
    if (!nameChanged && !containerChanged) {
      r.identity = true;
      return r;
    }
    r.folded.kind = composedKind(fam, nameChanged, containerChanged);
  } else if (r.folded.before == r.folded.after) {
    r.identity = true;
  }
  return r;
}

ProcessedRefList simplify(const std::vector<Refactoring>& raw) {
  std::vector<Refactoring> stored;
  for (const Refactoring& incoming : raw) {
    // chain update first: the incoming record renames elements that stored
    // descriptors may mention, except its own fold partner
    int partner = -1;
    for (size_t i = 0; i < stored.size(); ++i)
      if (tryFold(stored[i], incoming)) { partner = (int)i; break; }
    auto remaps = remapsOf(incoming);
    for (size_t i = 0; i < stored.size(); ++i)
      if ((int)i != partner) stored[i] = rewriteThroughRemaps(stored[i], remaps);
    if (partner >= 0) {
      auto fold = tryFold(stored[partner], incoming);
      if (fold->identity)
        stored.erase(stored.begin() + partner);
      else
        stored[partner] = fold->folded;
      continue;
    }
    stored.push_back(incoming);
  }
  return order_topdown(std::move(stored));
}

ProcessedRefList order_topdown(std::vector<Refactoring> refs) {
  std::stable_sort(refs.begin(), refs.end(), [](const Refactoring& a, const Refactoring& b) {
    if (granularity(a.kind) != granularity(b.kind))
      return granularity(a.kind) < granularity(b.kind);
    return a.seq < b.seq;
  });
  return {std::move(refs), ListOrder::TopDown};
}

ProcessedRefList order_bottomup(std::vector<Refactoring> refs) {
  std::stable_sort(refs.begin(), refs.end(), [](const Refactoring& a, const Refactoring& b) {
    if (granularity(a.kind) != granularity(b.kind))
      return granularity(a.kind) > granularity(b.kind);
    return a.seq < b.seq;
  });
  return {std::move(refs), ListOrder::BottomUp};
}

} // namespace refweave
