//===--- refactoring.hpp - refactoring vocabulary and inverses ------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "refweave/ast.hpp"

namespace refweave {

enum class RefactoringKind {
  RenameMethod,
  MoveMethod,
  MoveAndRenameMethod,
  RenameClass,
  MoveClass,
  MoveAndRenameClass,
  InlineMethod,
  ExtractMethod,
  PullUpMethod,
  PushDownMethod,
  RenameField,
  MoveField,
  MoveAndRenameField,
  PullUpField,
  PushDownField,
  RenamePackage,
  RenameParameter,
};

constexpr int kRefactoringKindCount = 17;

std::string kindName(RefactoringKind k);
std::optional<RefactoringKind> kindFromName(const std::string& name);

enum class Branch { Left, Right };

/// Extract/Inline record details. `range` is the inclusive span of
/// top-level statement indices the extracted statements occupy in the host
/// body in its inlined (pre-extract) state. `body` is the extracted method's
/// body in parameter form; binding maps each parameter to the argument
/// tokens of the call, in parameter order.
struct ExtractPayload {
  ElementId host;
  int rangeBegin = 0;
  int rangeEnd = 0;
  std::vector<std::pair<std::string, TokenSeq>> binding;
  std::vector<Param> params;
  std::string returnType = "void";
  bool isStatic = false;
  std::vector<Stmt> body;
  friend bool operator==(const ExtractPayload&, const ExtractPayload&) = default;
};

struct PullPushPayload {
  std::vector<std::string> classes; // sorted subclass qualified names
  friend bool operator==(const PullPushPayload&, const PullPushPayload&) = default;
};

struct Refactoring {
  RefactoringKind kind;
  ElementId before;
  ElementId after;
  std::optional<ExtractPayload> extract;
  std::optional<PullPushPayload> pullPush;
  Branch branch = Branch::Left;
  int seq = 0;

  friend bool operator==(const Refactoring&, const Refactoring&) = default;
};

/// True when the two records describe the same operation (branch and
/// detection order ignored).
bool sameOperation(const Refactoring& a, const Refactoring& b);

/// The inverse refactoring: renames/moves swap endpoints, Extract and Inline
/// swap into each other (host, range and binding preserved), PullUp and
/// PushDown swap (class set preserved). inverse(inverse(r)) == r.
Refactoring inverse(const Refactoring& r);

/// Granularity of the refactored element: Package=0, Class=1, Member=2,
/// Parameter=3. Inversion runs coarse-to-fine, replay fine-to-coarse.
int granularity(RefactoringKind k);

/// One report line: `KIND before=<id> after=<id> branch=<L|R> [range=a..b]`.
std::string serialize(const Refactoring& r);

/// Identifier mapping induced by a rename/move-style refactoring: the
/// before-element (and, for classes and packages, everything nested under
/// it) is known by its after-name once the refactoring has been performed.
struct IdRemap {
  ElementKind kind;
  std::string oldQName, newQName;
  std::optional<MethodSig> oldSig, newSig; // member remaps
};

/// Id remaps performed by `r` (empty for Extract/Inline).
std::vector<IdRemap> remapsOf(const Refactoring& r);

ElementId rewriteId(const ElementId& id, const std::vector<IdRemap>& remaps);

/// Rewrites every descriptor of `s` (before, after, payload hosts and class
/// sets) through the id mapping of `through` — the refactoring-chain update.
/// Statement ranges and bindings are untouched.
Refactoring rewriteThrough(const Refactoring& s, const Refactoring& through);

/// Same, but through the id mapping of an already-applied refactoring list.
Refactoring rewriteThroughRemaps(const Refactoring& s, const std::vector<IdRemap>& remaps);

} // namespace refweave
