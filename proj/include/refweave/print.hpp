//===--- print.hpp - canonical MJ printer ---------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <string>

#include "refweave/ast.hpp"

namespace refweave {

/// Deterministic canonical form: one declaration header per line, one Line
/// statement per line, 4-space indent per nesting level, blank line between
/// members, single spaces between tokens except none before ";,()." / after
/// "(." — parse_file(print_unit(u)) is structurally equal to u.
std::string print_unit(const CompilationUnit& unit);

/// Joins statement tokens with the canonical spacing rules.
std::string joinTokens(const TokenSeq& tokens);

} // namespace refweave
