//===--- references.hpp - symbol reference finding ------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "refweave/program.hpp"

namespace refweave {

struct UnknownElement : std::runtime_error {
  ElementId id;
  explicit UnknownElement(const ElementId& id)
      : std::runtime_error("unknown element: " + idString(id)), id(id) {}
};

/// Scope of one token sequence (a Line statement or a field initializer).
struct ScopeCtx {
  std::string filePath;
  std::string classQName;          // enclosing class
  const MethodDecl* method = nullptr; // enclosing method, if any
  std::string where;               // human-readable statement path
};

/// One classified reference inside a token sequence. `index..index+length-1`
/// covers the qualifier run plus the member name (bare references have
/// length 1 and no qualifier).
struct TokenRef {
  int index = 0;
  int length = 1;
  int nameIndex = 0; // member-name token; equals index for bare/class refs
  ElementId target;
  std::optional<ElementId> qualifier; // class the qualifier run resolves to
  int qualifierLen = 0;
};

/// Classifies identifiers of one token sequence against declared elements:
/// calls (bare or class-qualified, arity-checked), parameters (shadowing
/// fields), fields, and class references (including constructor-style
/// `Name(...)` and dotted runs). Tokens after a "." whose prefix does not
/// resolve are member accesses on unknown values and classify as nothing.
/// Ambiguous simple names stay unclassified (and unrewritten); when
/// `ambiguityLog` is given each such site adds a note.
std::vector<TokenRef> classifyTokens(const Program& program, const ScopeCtx& ctx,
                                     const TokenSeq& tokens,
                                     std::vector<std::string>* ambiguityLog = nullptr);

/// Walks every token sequence of a program (statement lines, nested blocks,
/// field initializers) with its scope.
void forEachTokenSeq(const Program& program,
                     const std::function<void(const ScopeCtx&, const TokenSeq&)>& fn);
void forEachTokenSeqMut(std::vector<SourceFile>& files,
                        const std::function<void(const ScopeCtx&, TokenSeq&)>& fn);

struct RefSite {
  std::string filePath;
  std::string where; // statement path or decl-slot description
  int tokenIndex = -1;
  int length = 0;
  friend bool operator==(const RefSite&, const RefSite&) = default;
};

/// Every site that resolves to `id`: token references for methods, fields
/// and parameters; token runs, type slots, extends clauses and imports for
/// classes. Declarations themselves are excluded.
std::vector<RefSite> find_references(const Program& program, const ElementId& id);

/// Nearest class in `classQName`'s chain (itself, then superclasses)
/// declaring a method called `name`: a unique method of that name matches any
/// call; overloads match by arity. Returns the method id.
std::optional<ElementId> resolveCall(const Program& program, const std::string& classQName,
                                     const std::string& name, int arity);
std::optional<ElementId> resolveFieldUse(const Program& program, const std::string& classQName,
                                         const std::string& name);

/// Number of top-level commas + 1 between the parens opening at openParen
/// (0 for an empty list); -1 when unbalanced.
int callArity(const TokenSeq& tokens, size_t openParen);

} // namespace refweave
