//===--- simplify.hpp - refactoring list simplification -------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <vector>

#include "refweave/refactoring.hpp"

namespace refweave {

enum class ListOrder { TopDown, BottomUp };

/// An ordered, simplified refactoring list for one branch: transitive
/// records folded, chained descriptors rewritten, granularity-ordered.
struct ProcessedRefList {
  std::vector<Refactoring> refs;
  ListOrder order = ListOrder::TopDown;
};

/// Processes raw detector output one record at a time: an incoming record
/// first rewrites the descriptors of stored records it renames or moves
/// (chain update), then folds with a stored record of its own family when
/// the stored after equals the incoming before (transitive update; folds
/// that reach identity delete the record). The result is TopDown ordered.
ProcessedRefList simplify(const std::vector<Refactoring>& raw);

/// Stable sort by granularity ascending (package, class, member, parameter),
/// then detection sequence.
ProcessedRefList order_topdown(std::vector<Refactoring> refs);
/// Stable sort by granularity descending, then detection sequence.
ProcessedRefList order_bottomup(std::vector<Refactoring> refs);

/// Composition of two same-element rename/move-family records (or parameter
/// / package renames, or a rename absorbed into the record that created the
/// element). nullopt when the pair does not fold; a folded record whose
/// before equals its after is signalled via the second member.
struct FoldResult {
  Refactoring folded;
  bool identity = false;
};
std::optional<FoldResult> tryFold(const Refactoring& stored, const Refactoring& incoming);

} // namespace refweave
