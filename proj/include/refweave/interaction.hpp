//===--- interaction.hpp - cross-branch refactoring interaction -----------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <vector>

#include "refweave/program.hpp"
#include "refweave/refactoring.hpp"
#include "refweave/simplify.hpp"

namespace refweave {

enum class ConflictReason {
  SameSourceDiffTarget,
  DiffSourceSameTarget,
  AccidentalOverride,
  AccidentalOverload,
};

std::string reasonName(ConflictReason r);

struct InteractionVerdict {
  Refactoring left, right;
  enum class Kind { Conflict, Commutative, Independent } kind = Kind::Independent;
  std::optional<ConflictReason> reason;
};

/// True when the enclosing classes are in a (strict, either-direction)
/// transitive extends relation and the ids carry the same name and
/// parameter-type list. The methods need not exist; only the classes do.
bool overrides(const Program& program, const ElementId& m1, const ElementId& m2);
/// Same class, same name, different parameter-type lists.
bool overloads(const Program& program, const ElementId& m1, const ElementId& m2);

/// Conflict check for a cross-branch pair (r1 from the left list, r2 from
/// the right). Identical operations never conflict. The four rules:
/// same source with diverging outcomes; different sources reaching the same
/// element; accidental override; accidental overload. Pairs whose kinds
/// change disjoint aspects of one element (move + rename) are exempt from
/// the first rule — those are the commutative candidates.
std::optional<ConflictReason> has_conflict(const Program& base, const Refactoring& r1,
                                           const Refactoring& r2);

/// Eq.-2 style commutativity: different kinds, same source element, and no
/// conflict. Callers must have checked has_conflict first.
bool is_commutative(const Refactoring& r1, const Refactoring& r2);

struct CombineResult {
  ProcessedRefList replayList; // BottomUp
  std::vector<InteractionVerdict> conflictPairs;
};

/// Evaluates all cross-branch pairs: any refactoring in a conflicting pair
/// is excluded from replay (both members); an identical refactoring on both
/// branches keeps one copy; commutative pairs on one element fuse into a
/// single MoveAndRename record. Remainder ordered BottomUp.
CombineResult combine(const Program& base, const std::vector<Refactoring>& leftList,
                      const std::vector<Refactoring>& rightList);

/// `REF_CONFLICT <reason> L: <ref> R: <ref>`
std::string serializeVerdict(const InteractionVerdict& v);

} // namespace refweave
