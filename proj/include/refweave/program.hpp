//===--- program.hpp - resolved MJ program --------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "refweave/ast.hpp"

namespace refweave {

struct BuildError : std::runtime_error {
  enum class Kind { DuplicateDeclaration, PathMismatch };
  Kind kind;
  std::string detail;
  BuildError(Kind kind, const std::string& detail);
};

struct DeclSite {
  std::string filePath;
  std::string classQName; // owning class for members; self for classes
};

using SymbolTable = std::map<ElementId, DeclSite>;

/// Expected file path for a unit: package dirs + first top-level class name.
std::string canonicalPath(const std::string& packageName, const std::string& firstClassName);

/// An immutable set of parsed source files with a resolved symbol table.
/// Construction validates path rules and duplicate declarations; afterwards
/// the program is safe to share across threads.
class Program {
public:
  Program() = default;
  static Program build(std::vector<SourceFile> files);

  const std::vector<SourceFile>& files() const { return files_; }
  const SymbolTable& symbols() const { return symbols_; }

  const SourceFile* fileAt(const std::string& path) const;
  bool hasClass(const std::string& qname) const;
  const ClassDecl* findClass(const std::string& qname) const;
  const SourceFile* fileOfClass(const std::string& qname) const;

  /// All class qualified names, including nested, sorted.
  std::vector<std::string> allClassQNames() const;
  /// All package names that have at least one file, sorted.
  std::vector<std::string> packages() const;

  const MethodDecl* findMethod(const ElementId& id) const;
  const FieldDecl* findField(const ElementId& id) const;

  /// Superclass chain of a class, innermost first, excluding the class
  /// itself. Unresolvable superclass names end the chain.
  std::vector<std::string> superChain(const std::string& classQName) const;
  /// True when `sub` transitively extends `super` (strict).
  bool inherits(const std::string& subQName, const std::string& superQName) const;

  friend bool operator==(const Program& a, const Program& b) { return a.files_ == b.files_; }

private:
  std::vector<SourceFile> files_; // sorted by path
  SymbolTable symbols_;
};

/// Resolves a simple or dotted class name from the scope of `fromFile`:
/// (1) exact qualified match; (2) unique import whose last segment matches a
/// simple name; (3) same-package match; (4) dotted names resolve their first
/// segment by (2)/(3) and descend. Ambiguous imports yield nullopt and add a
/// note to `ambiguityLog` when provided.
std::optional<ElementId> resolve(const Program& program, const std::string& fromFilePath,
                                 const std::string& name,
                                 std::vector<std::string>* ambiguityLog = nullptr);

} // namespace refweave
