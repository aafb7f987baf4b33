// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code = failure count.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "refweave/apply.hpp"
#include "refweave/detect.hpp"
#include "refweave/harness.hpp"
#include "refweave/interaction.hpp"
#include "refweave/pipeline.hpp"
#include "refweave/print.hpp"
#include "support/builders.hpp"
#include "support/generators.hpp"
#include "support/reference_merge.hpp"

using namespace refweave;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool pass, const std::string& detail = "") {
  std::string suffix = detail.empty() ? "" : "  (" + detail + ")";
  std::printf("[%s] criterion %d: %s%s\n", pass ? "PASS" : "FAIL", number, what.c_str(),
              suffix.c_str());
  if (!pass) ++failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

bool structurallyEqual(const FileTree& got, const FileTree& expected) {
  return test::progOf(got) == test::progOf(expected);
}

//--- criterion 1: the golden motivating scenario ---------------------------
void criterion1() {
  Timer timer;
  bool ok = true;
  std::string detail;
  try {
    MergeScenario s = load_scenario(test::corpusPath("fig1"));
    MergedTree plain = plain_merge(s);
    ConflictMetrics pm = metrics(plain);
    ok &= pm.conflictingFiles == 2 && pm.conflictBlocks == 2 && pm.conflictingLOC == 6;
    if (!ok)
      detail = "plain metrics " + std::to_string(pm.conflictingFiles) + "/" +
               std::to_string(pm.conflictBlocks) + "/" + std::to_string(pm.conflictingLOC);
    MergeOutcome out = merge_scenario(s);
    ok &= out.textualMetrics == ConflictMetrics{};
    ok &= out.refConflicts.size() == 1 &&
          out.refConflicts[0].reason == ConflictReason::AccidentalOverride &&
          out.refConflicts[0].left.kind == RefactoringKind::ExtractMethod &&
          out.refConflicts[0].right.kind == RefactoringKind::RenameMethod;
    ok &= s.expected && structurallyEqual(out.mergedTree.texts(), *s.expected);
    double el = timer.secs();
    ok &= el < 5.0;
    if (detail.empty())
      detail = "plain 2/2/6, refweave 0/0/0 + 1 AccidentalOverride, " +
               std::to_string(el).substr(0, 4) + "s";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(1,
         "golden scenario: plain 2 files / 2 blocks / 6 LOC; refweave clean with one "
         "override pair and the expected tree",
         ok, detail);
}

//--- criterion 2: inversion round-trip and detection soundness -------------
void criterion2() {
  Timer timer;
  int total = 0, good = 0;
  std::string firstBad;
  for (uint32_t seed = 0; seed < 100; ++seed) {
    for (int k = 0; k < kRefactoringKindCount; ++k) {
      auto kind = (RefactoringKind)k;
      ++total;
      try {
        test::Fixture fx = test::makeFixture(kind, seed);
        Program v2 = apply(fx.program, fx.ref);
        bool round = apply(v2, inverse(fx.ref)) == fx.program;
        auto detected = detect_between(fx.program, v2);
        bool sound = detected.size() == 1 && sameOperation(detected[0], fx.ref);
        if (round && sound) ++good;
        else if (firstBad.empty())
          firstBad = kindName(kind) + " seed " + std::to_string(seed) +
                     (round ? " (detection)" : " (round trip)");
      } catch (const std::exception& e) {
        if (firstBad.empty()) firstBad = kindName(kind) + ": " + e.what();
      }
    }
  }
  double el = timer.secs();
  bool ok = good == total && el < 60.0;
  report(2, "inversion round-trip and exact re-detection on 100 programs x 17 kinds", ok,
         std::to_string(good) + "/" + std::to_string(total) + " in " +
             std::to_string(el).substr(0, 4) + "s" +
             (firstBad.empty() ? "" : ", first failure: " + firstBad));
}

//--- criterion 3: commutativity and conflict oracles ------------------------
void criterion3() {
  int commutativeChecked = 0, conflictChecked = 0;
  bool ok = true;
  std::string detail;
  try {
    for (int which = 0; which < 3 && ok; ++which) {
      for (uint32_t seed = 0; seed < 70 && ok; ++seed) {
        test::PairFixture f = test::makeCommutativePair(which, seed);
        if (has_conflict(f.program, f.left, f.right) || !is_commutative(f.left, f.right)) {
          ok = false;
          detail = "pair not commutative";
          break;
        }
        Program lr = apply(apply(f.program, f.left), rewriteThrough(f.right, f.left));
        Program rl = apply(apply(f.program, f.right), rewriteThrough(f.left, f.right));
        if (!(lr == rl)) {
          ok = false;
          detail = "orders disagree (which " + std::to_string(which) + ", seed " +
                   std::to_string(seed) + ")";
          break;
        }
        ++commutativeChecked;
      }
    }
    for (int variant = 0; variant < 6 && ok; ++variant) {
      for (uint32_t seed = 0; seed < 40 && ok; ++seed) {
        test::PairFixture f = test::makeConflictPair(variant, seed);
        auto verdict = has_conflict(f.program, f.left, f.right);
        if (!verdict || (*verdict != ConflictReason::SameSourceDiffTarget &&
                         *verdict != ConflictReason::DiffSourceSameTarget)) {
          ok = false;
          detail = "pair not flagged";
          break;
        }
        bool lrFails = false, rlFails = false;
        try {
          apply(apply(f.program, f.left), f.right);
        } catch (const ApplyError&) {
          lrFails = true;
        }
        try {
          apply(apply(f.program, f.right), f.left);
        } catch (const ApplyError&) {
          rlFails = true;
        }
        if (!lrFails && !rlFails) {
          ok = false;
          detail = "both orders applied (variant " + std::to_string(variant) + ", seed " +
                   std::to_string(seed) + ")";
          break;
        }
        ++conflictChecked;
      }
    }
    ok &= commutativeChecked >= 200 && conflictChecked >= 200;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(3, "commutative pairs replay in either order; flagged conflicts fail a precondition",
         ok,
         std::to_string(commutativeChecked) + " commutative + " +
             std::to_string(conflictChecked) + " conflicting pairs" +
             (detail.empty() ? ", zero exceptions" : ", " + detail));
}

//--- criterion 4: the rename/rename conflict equation ------------------------
void criterion4() {
  bool ok = true;
  std::string detail;
  int combos = 0;
  try {
    Program p = test::prog({
        {"a/Sup.mj",
         "package a; class Sup { void sm(int x) { u(x); } void sn(int x) { u(x); } }"},
        {"a/Sub.mj",
         "package a; class Sub extends Sup { void bm(int x) { u(x); } void bn(int x) { u(x); } "
         "void bs(java.lang.String t) { u(t); } }"},
    });
    std::vector<ElementId> methods = {
        methodId("a.Sup", "sm", {"int"}), methodId("a.Sup", "sn", {"int"}),
        methodId("a.Sub", "bm", {"int"}), methodId("a.Sub", "bn", {"int"}),
        methodId("a.Sub", "bs", {"java.lang.String"})};
    std::vector<std::string> names = {"alpha", "beta", "gamma"};
    for (const auto& s1 : methods)
      for (const auto& s2 : methods)
        for (const auto& n1 : names)
          for (const auto& n2 : names) {
            Refactoring r1, r2;
            r1.kind = r2.kind = RefactoringKind::RenameMethod;
            r1.before = s1;
            r1.after = methodId(containerOf(s1.qualifiedName), n1, s1.signature->paramTypes);
            r2.before = s2;
            r2.after = methodId(containerOf(s2.qualifiedName), n2, s2.signature->paramTypes);
            if (sameOperation(r1, r2)) continue;
            bool direct = (r1.before == r2.before && !(r1.after == r2.after)) ||
                          (!(r1.before == r2.before) && r1.after == r2.after) ||
                          (!overrides(p, r1.before, r2.before) &&
                           overrides(p, r1.after, r2.after)) ||
                          (!overloads(p, r1.before, r2.before) &&
                           overloads(p, r1.after, r2.after));
            if (has_conflict(p, r1, r2).has_value() != direct) ok = false;
            ++combos;
          }
    // transcribed accidental-override fixture: fig1's extract vs rename
    MergeScenario fig1 = load_scenario(test::corpusPath("fig1"));
    MergeOutcome out = merge_scenario(fig1);
    ok &= out.refConflicts.size() == 1 &&
          out.refConflicts[0].reason == ConflictReason::AccidentalOverride;
    // transcribed accidental-overload fixture
    Program q = test::prog({{"a/A.mj",
                             "package a; class A { void foo(int x) { u(x); } "
                             "void goo(java.lang.String s) { u(s); } }"}});
    Refactoring l, r;
    l.kind = r.kind = RefactoringKind::RenameMethod;
    l.before = methodId("a.A", "foo", {"int"});
    l.after = methodId("a.A", "same", {"int"});
    r.before = methodId("a.A", "goo", {"java.lang.String"});
    r.after = methodId("a.A", "same", {"java.lang.String"});
    ok &= has_conflict(q, l, r) == std::optional(ConflictReason::AccidentalOverload);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, "rename/rename verdicts match the direct conflict-equation evaluation", ok,
         std::to_string(combos) + " combinations + override/overload fixtures" +
             (detail.empty() ? "" : ", " + detail));
}

//--- criterion 5: simplification fidelity -----------------------------------
void criterion5() {
  bool ok = true;
  std::string detail;
  try {
    auto rm = [](const std::string& cls, const std::string& a, const std::string& b, int seq) {
      Refactoring r;
      r.kind = RefactoringKind::RenameMethod;
      r.before = methodId(cls, a, {});
      r.after = methodId(cls, b, {});
      r.seq = seq;
      return r;
    };
    auto fold = simplify({rm("a.A", "foo", "bar", 1), rm("a.A", "bar", "foobar", 2)});
    ok &= fold.refs.size() == 1 && fold.refs[0].before == methodId("a.A", "foo", {}) &&
          fold.refs[0].after == methodId("a.A", "foobar", {});

    Refactoring rc;
    rc.kind = RefactoringKind::RenameClass;
    rc.before = classId("a.A");
    rc.after = classId("a.B");
    rc.seq = 2;
    auto chain = simplify({rm("a.A", "foo", "bar", 1), rc, rm("a.B", "bar", "foobar", 3)});
    ok &= chain.refs.size() == 2 && chain.refs[0].kind == RefactoringKind::RenameClass &&
          chain.refs[0].before == classId("a.A") && chain.refs[0].after == classId("a.B") &&
          chain.refs[1].kind == RefactoringKind::RenameMethod &&
          chain.refs[1].before == methodId("a.B", "foo", {}) &&
          chain.refs[1].after == methodId("a.B", "foobar", {});
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(5, "transitive fold and chain rewrite reproduce the worked examples", ok, detail);
}

//--- criterion 6: the fallback law -------------------------------------------
MergeScenario fallbackScenario(int variant) {
  MergeScenario s;
  s.id = "fallback" + std::to_string(variant);
  std::string tag = std::to_string(variant);
  std::string base =
      "package app;\n\nclass Tool" + tag + " {\n    int uses;\n\n    void run(int x) {\n"
      "        first(x);\n        second(x);\n    }\n\n    void stop() {\n        halt();\n"
      "    }\n}\n";
  std::string path = "app/Tool" + tag + ".mj";
  s.base = {{path, base}};
  std::string left = base, right = base;
  switch (variant % 7) {
  case 0: // a parameter was added: not a supported refactoring
    left.replace(left.find("void run(int x)"), 15, "void run(int x, int y)");
    right.replace(right.find("second(x);"), 10, "second(x + 1);");
    break;
  case 1: // body edits on both sides
    left.replace(left.find("first(x);"), 9, "first(x, debug);");
    right.replace(right.find("halt();"), 7, "haltNow();");
    break;
  case 2: // a brand-new method on the left, an init edit on the right
    left.insert(left.find("    void stop()"), "    void extra() {\n        more();\n    }\n\n");
    right.replace(right.find("int uses;"), 9, "int uses = 1;");
    break;
  case 3: // a method deleted on one side
    left.erase(left.find("\n    void stop() {\n        halt();\n    }"), 41);
    right.replace(right.find("first(x);"), 9, "primary(x);");
    break;
  case 4: // rename plus full rewrite: below the similarity threshold
    left.replace(left.find("void run(int x) {\n        first(x);\n        second(x);\n    }"),
                 60, "void drive(int x) {\n        totally(different, body);\n    }");
    right.replace(right.find("halt();"), 7, "halt(now);");
    break;
  case 5: // whitespace-only divergence (a formatting conflict in the raw merge)
    left.replace(left.find("first(x);"), 9, "first( x );");
    right.replace(right.find("first(x);"), 9, "first(x) ;");
    break;
  default: // a new class appears on one side
    s.left[std::string("app/Fresh") + tag + ".mj"] =
        "package app;\n\nclass Fresh" + tag + " {\n    int n;\n}\n";
    right.replace(right.find("second(x);"), 10, "second(x, extra);");
    break;
  }
  s.left[path] = left;
  s.right[path] = right;
  return s;
}

void criterion6() {
  bool ok = true;
  int count = 0;
  std::string detail;
  try {
    for (int variant = 0; variant < 21; ++variant) {
      MergeScenario s = fallbackScenario(variant);
      MergeOutcome out = merge_scenario(s);
      MergedTree plain = plain_merge(s);
      if (!out.leftRefs.empty() || !out.rightRefs.empty()) {
        ok = false;
        detail = "variant " + std::to_string(variant) + " detected a refactoring";
        break;
      }
      if (out.mergedTree.texts() != plain.texts()) {
        ok = false;
        detail = "variant " + std::to_string(variant) + " diverged from the plain merge";
        break;
      }
      ++count;
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(6, "unsupported-or-undetectable scenarios merge byte-identically to plain", ok,
         std::to_string(count) + " scenarios" + (detail.empty() ? "" : ", " + detail));
}

//--- criterion 7: three-way merge against the independent reference ----------
void criterion7() {
  bool ok = true;
  int count = 0;
  std::string detail;
  try {
    for (uint32_t seed = 0; seed < 600; ++seed) {
      test::TextTriple t = test::makeTextTriple(seed + 123456);
      Diff3Result mine = diff3_merge(t.base, t.left, t.right);
      if (mine.merged != test::referenceMerge3(t.base, t.left, t.right)) {
        ok = false;
        detail = "seed " + std::to_string(seed + 123456);
        break;
      }
      ++count;
    }
    // delete/modify tree semantics on the transcribed fixture
    FileTree base{{"t/TransmuteTablet.mj", "package t;\n\nclass TransmuteTablet {\n}\n"}};
    FileTree left; // deleted here
    FileTree right{
        {"t/TransmuteTablet.mj", "package t;\n\nclass TransmuteTablet {\n    int a;\n}\n"}};
    MergedTree t = merge_trees(base, left, right);
    ConflictMetrics m = metrics(t);
    ok &= t.deleteModify.size() == 1 && t.deleteModify[0].deletedBy == Branch::Left &&
          t.files.count("t/TransmuteTablet.mj") == 1 && m.conflictingFiles == 1 &&
          m.conflictBlocks == 1 && m.conflictingLOC == 0;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(7, "line merge matches the reference byte-for-byte; delete/modify keeps the file",
         ok, std::to_string(count) + " random triples" + (detail.empty() ? "" : ", " + detail));
}

//--- criterion 8: metrics arithmetic -----------------------------------------
void criterion8() {
  bool ok = true;
  ScenarioReport baseline;
  baseline.metrics = {4, 2, 10};
  {
    ScenarioReport cand;
    cand.metrics = {2, 2, 10};
    compare(baseline, cand);
    ok &= cand.files.direction == "reduced" && cand.files.pct && *cand.files.pct == 50.0 &&
          cand.status == ScenarioStatus::Changed;
  }
  {
    ScenarioReport cand;
    cand.metrics = {0, 0, 0};
    compare(baseline, cand);
    ok &= cand.status == ScenarioStatus::Resolved;
  }
  {
    ScenarioReport cand;
    cand.metrics = baseline.metrics;
    compare(baseline, cand);
    ok &= cand.status == ScenarioStatus::Unchanged;
  }
  {
    ScenarioReport cand;
    cand.metrics = {4, 5, 10};
    compare(baseline, cand);
    ok &= cand.blocks.direction == "increased" && cand.blocks.pct && *cand.blocks.pct == 150.0;
  }
  report(8, "metric comparison reproduces 4->2 = 50% and the status definitions", ok);
}

//--- criterion 9: known-weakness regressions (expected-fail-as-designed) ----
void criterion9() {
  bool ok = true;
  std::string detail;
  try {
    {
      MergeScenario s = load_scenario(test::corpusPath("move_field_ordering"));
      MergeOutcome out = merge_scenario(s);
      std::string text = out.mergedTree.files.at("esq/Index.mj").text;
      size_t version = text.find("VERSION");
      size_t type = text.find("ContextBuilder TYPE = newType();");
      bool ordering = out.textualMetrics.conflictBlocks >= 1 &&
                      version != std::string::npos && type != std::string::npos &&
                      type > version;
      if (!ordering) {
        ok = false;
        detail = "moved-member ordering conflict not reproduced";
      }
    }
    {
      MergeScenario s = load_scenario(test::corpusPath("extract_conflict_doubling"));
      ConflictMetrics plainM = metrics(plain_merge(s));
      MergeOutcome out = merge_scenario(s);
      bool doubled = out.textualMetrics.conflictBlocks == 1 &&
                     out.textualMetrics.conflictingLOC > plainM.conflictingLOC &&
                     out.mergedTree.conflicts[0].leftLines.size() == 2 &&
                     out.mergedTree.conflicts[0].rightLines.size() == 2;
      if (!doubled) {
        ok = false;
        detail = "inlined conflict region did not hold both full variants";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(9, "documented weaknesses reproduce: ordering conflict and doubled inline conflict",
         ok, detail);
}

} // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (failures == 0) std::printf("all acceptance criteria passed\n");
  else std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
