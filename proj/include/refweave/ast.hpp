//===--- ast.hpp - MJ syntax tree -----------------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace refweave {

using Token = std::string;
using TokenSeq = std::vector<Token>;

/// One statement of a method body. A Line holds its tokens (no braces,
/// terminated by ";" in source) and may carry a fused trailing block per
/// grammar rule G7 ("if(x) { ... }" is one Line whose child is the block).
/// A bare "{ ... }" is a Block with empty tokens.
struct Stmt {
  enum class Kind { Line, Block };
  Kind kind = Kind::Line;
  TokenSeq tokens;                  // Line header tokens; empty for Block
  bool hasTrailingBlock = false;    // Line only
  std::vector<Stmt> children;       // Block body, or the fused block of a Line
  std::vector<std::string> comments; // leading // comments (text after "//")
  std::vector<std::string> trailingComments; // comments before the owned "}"

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

struct Param {
  std::string type; // dotted name
  std::string name;
  friend bool operator==(const Param&, const Param&) = default;
};

struct FieldDecl {
  bool isStatic = false;
  std::string type;   // dotted name
  std::string name;
  TokenSeq init;      // empty when absent
  std::vector<std::string> comments;
  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

struct MethodDecl {
  bool isStatic = false;
  std::string returnType; // dotted name
  std::string name;
  std::vector<Param> params;
  std::vector<Stmt> body;
  std::vector<std::string> comments;
  std::vector<std::string> bodyTrailingComments;

  std::vector<std::string> paramTypes() const {
    std::vector<std::string> ts;
    ts.reserve(params.size());
    for (const auto& p : params) ts.push_back(p.type);
    return ts;
  }
  friend bool operator==(const MethodDecl&, const MethodDecl&) = default;
};

struct Member; // field, method, or nested class (defined below)

struct ClassDecl {
  std::string name;
  std::optional<std::string> superclass; // dotted name
  std::vector<Member> members;
  std::vector<std::string> comments;
  std::vector<std::string> trailingComments; // comments at block end

  friend bool operator==(const ClassDecl&, const ClassDecl&);
};

struct Member {
  std::variant<FieldDecl, MethodDecl, ClassDecl> node;

  bool isField() const { return std::holds_alternative<FieldDecl>(node); }
  bool isMethod() const { return std::holds_alternative<MethodDecl>(node); }
  bool isClass() const { return std::holds_alternative<ClassDecl>(node); }
  FieldDecl& field() { return std::get<FieldDecl>(node); }
  const FieldDecl& field() const { return std::get<FieldDecl>(node); }
  MethodDecl& method() { return std::get<MethodDecl>(node); }
  const MethodDecl& method() const { return std::get<MethodDecl>(node); }
  ClassDecl& cls() { return std::get<ClassDecl>(node); }
  const ClassDecl& cls() const { return std::get<ClassDecl>(node); }

  friend bool operator==(const Member& a, const Member& b) { return a.node == b.node; }
};

inline bool operator==(const ClassDecl& a, const ClassDecl& b) {
  return a.name == b.name && a.superclass == b.superclass && a.members == b.members &&
         a.comments == b.comments && a.trailingComments == b.trailingComments;
}

struct CompilationUnit {
  std::string packageName;          // dotted
  std::vector<std::string> imports; // dotted, no duplicates
  std::vector<ClassDecl> classes;   // at least one
  std::vector<std::string> trailingComments;
  friend bool operator==(const CompilationUnit&, const CompilationUnit&) = default;
};

struct SourceFile {
  std::string path; // relative, ".mj", package dirs + first class name
  CompilationUnit unit;
  friend bool operator==(const SourceFile&, const SourceFile&) = default;
};

enum class ElementKind { Package, Class, Method, Field, Parameter };

struct MethodSig {
  std::string name;
  std::vector<std::string> paramTypes;
  friend bool operator==(const MethodSig&, const MethodSig&) = default;
  friend auto operator<=>(const MethodSig&, const MethodSig&) = default;
};

/// Identity of a declared program element. For methods the signature
/// disambiguates overloads; for parameters it names the owning method and
/// qualifiedName appends the parameter name to the method's qualified name.
struct ElementId {
  ElementKind kind = ElementKind::Class;
  std::string qualifiedName;
  std::optional<MethodSig> signature; // Method / Parameter only

  friend bool operator==(const ElementId&, const ElementId&) = default;
  friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

ElementId packageId(const std::string& dotted);
ElementId classId(const std::string& qname);
ElementId methodId(const std::string& classQName, const std::string& name,
                   std::vector<std::string> paramTypes);
ElementId fieldId(const std::string& classQName, const std::string& name);
ElementId parameterId(const ElementId& method, const std::string& paramName);

std::string idString(const ElementId& id);

/// "a.b.C" -> {"a","b","C"}
std::vector<std::string> splitDotted(const std::string& dotted);
std::string joinDotted(const std::vector<std::string>& segments);
/// Last dotted segment ("a.b.C" -> "C").
std::string leafName(const std::string& dotted);
/// Everything before the last segment ("a.b.C" -> "a.b", "C" -> "").
std::string containerOf(const std::string& dotted);
/// True if `prefix` equals `qname` or is a dotted-segment prefix of it.
bool isQNamePrefix(const std::string& prefix, const std::string& qname);

} // namespace refweave
