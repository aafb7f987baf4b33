//===--- detect.hpp - refactoring detection between program versions ------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <vector>

#include "refweave/program.hpp"
#include "refweave/refactoring.hpp"

namespace refweave {

/// Body-token multiset similarity threshold for matching candidates.
constexpr double kSimilarityThreshold = 0.5;

/// Jaccard similarity over token multisets; two empty multisets count as
/// identical (1.0).
double tokenJaccard(const std::map<std::string, int>& a, const std::map<std::string, int>& b);

/// Detects the refactorings performed between two program versions.
/// Rules run in a fixed order, each consuming the elements it matches:
/// package renames, class moves/renames, pull-up/push-down, member
/// moves/renames, extract/inline, parameter renames. Output is ordered by
/// (granularity, qualified name) and numbered from `firstSeq`. Undetected
/// changes yield no record.
std::vector<Refactoring> detect_between(const Program& v1, const Program& v2,
                                        Branch branch = Branch::Left, int firstSeq = 1);

/// Concatenation of detect_between over consecutive commits (commits[0] is
/// the base); seq numbers increase across the whole sequence. Output is raw,
/// unsimplified.
std::vector<Refactoring> detect_along(const std::vector<Program>& commits,
                                      Branch branch = Branch::Left);

} // namespace refweave
