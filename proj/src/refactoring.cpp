//===--- refactoring.cpp - refactoring vocabulary and inverses ------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/refactoring.hpp"

#include <array>

#include "refweave/program.hpp"

namespace refweave {

namespace {

const std::array<const char*, kRefactoringKindCount> kKindNames = {
    "RenameMethod",   "MoveMethod",       "MoveAndRenameMethod", "RenameClass",
    "MoveClass",      "MoveAndRenameClass", "InlineMethod",      "ExtractMethod",
    "PullUpMethod",   "PushDownMethod",   "RenameField",         "MoveField",
    "MoveAndRenameField", "PullUpField",  "PushDownField",       "RenamePackage",
    "RenameParameter",
};

} // namespace

std::string kindName(RefactoringKind k) { return kKindNames[(int)k]; }

std::optional<RefactoringKind> kindFromName(const std::string& name) {
  for (int i = 0; i < kRefactoringKindCount; ++i)
    if (name == kKindNames[i]) return (RefactoringKind)i;
  return std::nullopt;
}

bool sameOperation(const Refactoring& a, const Refactoring& b) {
  return a.kind == b.kind && a.before == b.before && a.after == b.after &&
         a.extract == b.extract && a.pullPush == b.pullPush;
}

Refactoring inverse(const Refactoring& r) {
  Refactoring inv = r;
  inv.before = r.after;
  inv.after = r.before;
  switch (r.kind) {
  case RefactoringKind::ExtractMethod: inv.kind = RefactoringKind::InlineMethod; break;
  case RefactoringKind::InlineMethod: inv.kind = RefactoringKind::ExtractMethod; break;
  case RefactoringKind::PullUpMethod: inv.kind = RefactoringKind::PushDownMethod; break;
  case RefactoringKind::PushDownMethod: inv.kind = RefactoringKind::PullUpMethod; break;
  case RefactoringKind::PullUpField: inv.kind = RefactoringKind::PushDownField; break;
  case RefactoringKind::PushDownField: inv.kind = RefactoringKind::PullUpField; break;
  default: break; // renames and moves keep their kind
  }
  return inv;
}

int granularity(RefactoringKind k) {
  switch (k) {
  case RefactoringKind::RenamePackage: return 0;
  case RefactoringKind::RenameClass:
  case RefactoringKind::MoveClass:
  case RefactoringKind::MoveAndRenameClass: return 1;
  case RefactoringKind::RenameParameter: return 3;
  default: return 2;
  }
}

std::string serialize(const Refactoring& r) {
  std::string s = kindName(r.kind) + " before=" + idString(r.before) +
                  " after=" + idString(r.after) +
                  " branch=" + (r.branch == Branch::Left ? "L" : "R");
  if (r.extract)
    s += " range=" + std::to_string(r.extract->rangeBegin) + ".." +
         std::to_string(r.extract->rangeEnd);
  return s;
}

std::vector<IdRemap> remapsOf(const Refactoring& r) {
  switch (r.kind) {
  case RefactoringKind::RenameMethod:
  case RefactoringKind::MoveMethod:
  case RefactoringKind::MoveAndRenameMethod:
  case RefactoringKind::RenameField:
  case RefactoringKind::MoveField:
  case RefactoringKind::MoveAndRenameField:
  case RefactoringKind::RenameParameter:
    return {{r.before.kind, r.before.qualifiedName, r.after.qualifiedName, r.before.signature,
             r.after.signature}};
  case RefactoringKind::RenameClass:
  case RefactoringKind::MoveClass:
  case RefactoringKind::MoveAndRenameClass:
  case RefactoringKind::RenamePackage:
    return {{r.before.kind, r.before.qualifiedName, r.after.qualifiedName, {}, {}}};
  case RefactoringKind::PullUpMethod:
  case RefactoringKind::PushDownMethod:
  case RefactoringKind::PullUpField:
  case RefactoringKind::PushDownField: {
    // every source copy maps to the destination member
    std::vector<IdRemap> maps;
    if (!r.pullPush) return maps;
    bool pull = r.kind == RefactoringKind::PullUpMethod || r.kind == RefactoringKind::PullUpField;
    std::string leaf = leafName(r.before.qualifiedName);
    if (pull) {
      for (const auto& cls : r.pullPush->classes)
        maps.push_back({r.before.kind, cls + "." + leaf, r.after.qualifiedName,
                        r.before.signature, r.after.signature});
    } else {
      maps.push_back({r.before.kind, r.before.qualifiedName, r.after.qualifiedName,
                      r.before.signature, r.after.signature});
    }
    return maps;
  }
  case RefactoringKind::ExtractMethod:
  case RefactoringKind::InlineMethod:
    return {};
  }
  return {};
}

ElementId rewriteId(const ElementId& id, const std::vector<IdRemap>& remaps) {
  ElementId out = id;
  for (const IdRemap& m : remaps) {
    if (m.kind == ElementKind::Class || m.kind == ElementKind::Package) {
      if (isQNamePrefix(m.oldQName, out.qualifiedName)) {
        out.qualifiedName =
            m.newQName + out.qualifiedName.substr(m.oldQName.size());
      }
      continue;
    }
    // member remap: exact hit, or a parameter of a remapped method
    if (out.kind == m.kind && out.qualifiedName == m.oldQName && out.signature == m.oldSig) {
      out.qualifiedName = m.newQName;
      out.signature = m.newSig;
    } else if (out.kind == ElementKind::Parameter && m.kind == ElementKind::Method &&
               containerOf(out.qualifiedName) == m.oldQName && out.signature == m.oldSig) {
      out.qualifiedName = m.newQName + "." + leafName(out.qualifiedName);
      out.signature = m.newSig;
    }
  }
  return out;
}

Refactoring rewriteThroughRemaps(const Refactoring& s, const std::vector<IdRemap>& remaps) {
  Refactoring out = s;
  out.before = rewriteId(s.before, remaps);
  out.after = rewriteId(s.after, remaps);
  if (out.extract) out.extract->host = rewriteId(out.extract->host, remaps);
  if (out.pullPush)
    for (auto& c : out.pullPush->classes)
      c = rewriteId(classId(c), remaps).qualifiedName;
  // keep the kind's shape: a rename's outcome follows its (possibly moved)
  // source container; a move's outcome keeps the (possibly renamed) name
  switch (out.kind) {
  case RefactoringKind::RenameMethod:
  case RefactoringKind::RenameField:
  case RefactoringKind::RenameClass:
  case RefactoringKind::RenameParameter:
    out.after.qualifiedName =
        containerOf(out.before.qualifiedName) + "." + leafName(out.after.qualifiedName);
    if (out.after.signature && out.kind == RefactoringKind::RenameMethod)
      out.after.signature = MethodSig{leafName(out.after.qualifiedName),
                                      out.before.signature->paramTypes};
    if (out.kind == RefactoringKind::RenameParameter) out.after.signature = out.before.signature;
    break;
  case RefactoringKind::MoveMethod:
  case RefactoringKind::MoveField:
  case RefactoringKind::MoveClass:
    out.after.qualifiedName =
        containerOf(out.after.qualifiedName) + "." + leafName(out.before.qualifiedName);
    if (out.after.signature) out.after.signature = out.before.signature;
    break;
  default: break;
  }
  return out;
}

Refactoring rewriteThrough(const Refactoring& s, const Refactoring& through) {
  return rewriteThroughRemaps(s, remapsOf(through));
}

} // namespace refweave
