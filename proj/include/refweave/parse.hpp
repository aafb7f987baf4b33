//===--- parse.hpp - MJ lexer and parser ----------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "refweave/ast.hpp"

namespace refweave {

struct SyntaxError : std::runtime_error {
  int line, col;
  SyntaxError(int line, int col, const std::string& message);
};

/// Maps a statement inside a parsed unit to the source lines it covered.
/// Key: (class qualified-name relative to the unit, i.e. without the package
/// prefix is NOT used — the full qualified name is built with the package),
/// method name + parameter types, top-level statement index.
struct StmtLineSpan {
  int startLine = 0; // 1-based, inclusive
  int endLine = 0;   // inclusive
};

struct LineIndex {
  // classQName -> method signature key ("name(t1,t2)") -> per top-level stmt
  std::map<std::string, std::map<std::string, std::vector<StmtLineSpan>>> bodySpans;
};

/// Parses one MJ source file. Rejects the whole file on any grammar
/// violation. Comments attach to the next declaration or statement; trailing
/// comments attach to the enclosing block (or unit) end.
/// When `lines` is non-null it receives the source line span of every
/// top-level body statement, used by replay anchoring.
SourceFile parse_file(const std::string& path, const std::string& text,
                      LineIndex* lines = nullptr);

std::string methodSigKey(const std::string& name, const std::vector<std::string>& paramTypes);

} // namespace refweave
