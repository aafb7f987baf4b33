//===--- print.cpp - canonical MJ printer ---------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/print.hpp"

#include <sstream>

namespace refweave {

namespace {

const std::string kIndent = "    ";

bool noSpaceBefore(const std::string& t) {
  return t == ";" || t == "," || t == "(" || t == ")" || t == ".";
}
bool noSpaceAfter(const std::string& t) { return t == "(" || t == "."; }

class Printer {
public:
  std::string out;

  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out += kIndent;
  }

  void comments(const std::vector<std::string>& cs, int depth) {
    for (const auto& c : cs) {
      indent(depth);
      out += "//" + c + "\n";
    }
  }

  void stmt(const Stmt& s, int depth) {
    comments(s.comments, depth);
    if (s.kind == Stmt::Kind::Block) {
      indent(depth);
      out += "{\n";
      block(s.children, s.trailingComments, depth + 1);
      indent(depth);
      out += "}\n";
      return;
    }
    indent(depth);
    out += joinTokens(s.tokens);
    if (s.hasTrailingBlock) {
      out += " {\n";
      block(s.children, s.trailingComments, depth + 1);
      indent(depth);
      out += "}\n";
    } else {
      out += ";\n";
    }
  }

  void block(const std::vector<Stmt>& body, const std::vector<std::string>& trailing, int depth) {
    for (const auto& s : body) stmt(s, depth);
    comments(trailing, depth);
  }

  void field(const FieldDecl& f, int depth) {
    comments(f.comments, depth);
    indent(depth);
    if (f.isStatic) out += "static ";
    out += f.type + " " + f.name;
    if (!f.init.empty()) out += " = " + joinTokens(f.init);
    out += ";\n";
  }

  void method(const MethodDecl& m, int depth) {
    comments(m.comments, depth);
    indent(depth);
    if (m.isStatic) out += "static ";
    out += m.returnType + " " + m.name + "(";
    for (size_t i = 0; i < m.params.size(); ++i) {
      if (i) out += ", ";
      out += m.params[i].type + " " + m.params[i].name;
    }
    out += ") {\n";
    block(m.body, m.bodyTrailingComments, depth + 1);
    indent(depth);
    out += "}\n";
  }

  void cls(const ClassDecl& c, int depth) {
    comments(c.comments, depth);
    indent(depth);
    out += "class " + c.name;
    if (c.superclass) out += " extends " + *c.superclass;
    out += " {\n";
    for (size_t i = 0; i < c.members.size(); ++i) {
      if (i) out += "\n";
      const Member& m = c.members[i];
      if (m.isField()) field(m.field(), depth + 1);
      else if (m.isMethod()) method(m.method(), depth + 1);
      else cls(m.cls(), depth + 1);
    }
    comments(c.trailingComments, depth + 1);
    indent(depth);
    out += "}\n";
  }
};

} // namespace

std::string joinTokens(const TokenSeq& tokens) {
  std::string s;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i && !noSpaceBefore(tokens[i]) && !noSpaceAfter(tokens[i - 1])) s += " ";
    s += tokens[i];
  }
  return s;
}

std::string print_unit(const CompilationUnit& unit) {
  Printer p;
  p.out += "package " + unit.packageName + ";\n";
  if (!unit.imports.empty()) {
    p.out += "\n";
    for (const auto& imp : unit.imports) p.out += "import " + imp + ";\n";
  }
  for (const auto& c : unit.classes) {
    p.out += "\n";
    p.cls(c, 0);
  }
  p.comments(unit.trailingComments, 0);
  return p.out;
}

} // namespace refweave
