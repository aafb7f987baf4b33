#include "support/generators.hpp"

#include <random>

namespace refweave::test {

using namespace refweave;

namespace {

struct Rng {
  std::mt19937 eng;
  explicit Rng(uint32_t seed) : eng(seed) {}
  int pick(int n) { return (int)(eng() % (uint32_t)n); }
  bool chance(int pct) { return pick(100) < pct; }
};

Stmt line(TokenSeq tokens) {
  Stmt s;
  s.kind = Stmt::Kind::Line;
  s.tokens = std::move(tokens);
  return s;
}

MethodDecl method(const std::string& name, std::vector<Param> params,
                  std::vector<Stmt> body) {
  MethodDecl m;
  m.returnType = "void";
  m.name = name;
  m.params = std::move(params);
  m.body = std::move(body);
  return m;
}

FieldDecl field(const std::string& type, const std::string& name, TokenSeq init = {}) {
  FieldDecl f;
  f.type = type;
  f.name = name;
  f.init = std::move(init);
  return f;
}

SourceFile fileFor(const std::string& pkg, ClassDecl cls,
                   std::vector<std::string> imports = {}) {
  SourceFile f;
  f.unit.packageName = pkg;
  f.unit.imports = std::move(imports);
  f.path = canonicalPath(pkg, cls.name);
  f.unit.classes.push_back(std::move(cls));
  return f;
}

/// Unique-ish statement so bodies never collide across fixtures.
Stmt noiseLine(Rng& rng, int salt) {
  return line({"log", "(", "tag" + std::to_string(salt) + std::to_string(rng.pick(1000)),
               ")"});
}

ClassDecl noiseClass(Rng& rng, const std::string& name) {
  ClassDecl c;
  c.name = name;
  c.members.push_back(Member{field("int", "count" + std::to_string(rng.pick(100)))});
  c.members.push_back(
      Member{method("tick", {}, {noiseLine(rng, 1), noiseLine(rng, 2)})});
  return c;
}

struct Builder {
  Rng rng;
  int salt = 0;
  explicit Builder(uint32_t seed) : rng(seed) {}
  std::string fresh(const std::string& stem) { return stem + std::to_string(salt++); }
};

} // namespace

Fixture makeFixture(RefactoringKind kind, uint32_t seed) {
  Builder b(seed ^ (uint32_t)kind * 2654435761u);
  Rng& rng = b.rng;
  std::string pa = "pkga" + std::to_string(rng.pick(90));
  std::string pb = "pkgb" + std::to_string(rng.pick(90));

  switch (kind) {
  case RefactoringKind::RenameMethod:
  case RefactoringKind::MoveMethod:
  case RefactoringKind::MoveAndRenameMethod: {
    std::string mname = b.fresh("work");
    ClassDecl C;
    C.name = "Alpha";
    // moved members sit last: the engine reinserts moved members at the end,
    // so only a last-member move round-trips structurally
    C.members.push_back(
        Member{method("driver", {{"int", "v"}}, {line({mname, "(", "v", ")"})})});
    C.members.push_back(Member{method(mname, {{"int", "x"}},
                                      {line({"x", "=", "x", "+", "1"}), noiseLine(rng, 3)})});
    ClassDecl D;
    D.name = "Beta";
    D.members.push_back(Member{method("probe", {{"int", "w"}},
                                      {line({"Alpha", ".", mname, "(", "w", ")"})})});
    Program p = Program::build({fileFor(pa, C), fileFor(pa, D),
                                fileFor(pa, noiseClass(rng, "Zeta"))});
    Refactoring r;
    r.kind = kind;
    std::string newName = kind == RefactoringKind::MoveMethod ? mname : b.fresh("task");
    std::string dstClass = kind == RefactoringKind::RenameMethod ? pa + ".Alpha" : pa + ".Beta";
    r.before = methodId(pa + ".Alpha", mname, {"int"});
    r.after = methodId(dstClass, newName, {"int"});
    return {std::move(p), std::move(r)};
  }
  case RefactoringKind::RenameField:
  case RefactoringKind::MoveField:
  case RefactoringKind::MoveAndRenameField: {
    std::string fname = b.fresh("state");
    ClassDecl C;
    C.name = "Alpha";
    C.members.push_back(
        Member{method("bump", {}, {line({fname, "=", fname, "+", "1"})})});
    C.members.push_back(Member{field("int", fname, {"0"})});
    ClassDecl D;
    D.name = "Beta";
    D.members.push_back(
        Member{method("peek", {}, {line({"out", "(", "Alpha", ".", fname, ")"})})});
    Program p = Program::build({fileFor(pa, C), fileFor(pa, D),
                                fileFor(pa, noiseClass(rng, "Zeta"))});
    Refactoring r;
    r.kind = kind;
    std::string newName = kind == RefactoringKind::MoveField ? fname : b.fresh("cell");
    std::string dstClass = kind == RefactoringKind::RenameField ? pa + ".Alpha" : pa + ".Beta";
    r.before = fieldId(pa + ".Alpha", fname);
    r.after = fieldId(dstClass, newName);
    return {std::move(p), std::move(r)};
  }
  case RefactoringKind::RenameClass:
  case RefactoringKind::MoveClass:
  case RefactoringKind::MoveAndRenameClass: {
    std::string cname = "Widget" + std::to_string(rng.pick(50));
    ClassDecl C;
    C.name = cname;
    C.members.push_back(Member{field("int", "size")});
    C.members.push_back(Member{method("render", {}, {noiseLine(rng, 4)})});
    ClassDecl user;
    user.name = "Screen";
    user.members.push_back(Member{field(cname, "widget")});
    user.members.push_back(
        Member{method("rebuild", {}, {line({"widget", "=", cname, "(", ")"})})});
    ClassDecl anchor; // keeps the source package alive through class moves
    anchor.name = "Anchor";
    anchor.members.push_back(Member{method("noop", {}, {noiseLine(rng, 5)})});
    ClassDecl target;
    target.name = "Host";
    target.members.push_back(Member{method("hold", {}, {noiseLine(rng, 6)})});
    // the importing style survives class moves (the import itself is
    // rewritten), keeping simple-name references stable in round trips
    Program p = Program::build({fileFor(pa, C), fileFor(pa, user, {pa + "." + cname}),
                                fileFor(pa, anchor), fileFor(pb, target),
                                fileFor(pb, noiseClass(rng, "Zeta"))});
    Refactoring r;
    r.kind = kind;
    r.before = classId(pa + "." + cname);
    if (kind == RefactoringKind::RenameClass) {
      r.after = classId(pa + "." + b.fresh("Gadget"));
    } else if (kind == RefactoringKind::MoveClass) {
      bool inner = rng.chance(50);
      r.after = classId(inner ? pb + ".Host." + cname : pb + "." + cname);
    } else {
      r.after = classId(pb + ".Host." + b.fresh("Gadget"));
    }
    return {std::move(p), std::move(r)};
  }
  case RefactoringKind::ExtractMethod: {
    std::string hname = b.fresh("handle");
    std::string tagA = b.fresh("alpha"), tagB = b.fresh("beta");
    ClassDecl C;
    C.name = "Alpha";
    C.members.push_back(Member{method(
        hname, {{"int", "x"}},
        {line({"open", "(", tagA, ")"}), line({"check", "(", "x", ")"}),
         line({"emit", "(", "x", ",", tagB, ")"}), line({"close", "(", tagA, ")"})})});
    Program p =
        Program::build({fileFor(pa, C), fileFor(pa, noiseClass(rng, "Zeta"))});
    Refactoring r;
    r.kind = RefactoringKind::ExtractMethod;
    r.before = methodId(pa + ".Alpha", hname, {"int"});
    r.after = methodId(pa + ".Alpha", b.fresh("part"), {"int"});
    ExtractPayload pl;
    pl.host = r.before;
    pl.rangeBegin = 1;
    pl.rangeEnd = 2;
    pl.binding = {{"v", {"x"}}};
    pl.params = {{"int", "v"}};
    pl.returnType = "void";
    pl.body = {line({"check", "(", "v", ")"}), line({"emit", "(", "v", ",", tagB, ")"})};
    r.extract = std::move(pl);
    return {std::move(p), std::move(r)};
  }
  case RefactoringKind::InlineMethod: {
    std::string hname = b.fresh("handle");
    std::string helper = b.fresh("part");
    std::string tagB = b.fresh("beta");
    ClassDecl C;
    C.name = "Alpha";
    C.members.push_back(Member{method(hname, {{"int", "x"}},
                                      {line({"open", "(", "x", ")"}),
                                       line({helper, "(", "x", ")"}),
                                       line({"close", "(", "x", ")"})})});
    C.members.push_back(Member{method(helper, {{"int", "v"}},
                                      {line({"check", "(", "v", ")"}),
                                       line({"emit", "(", "v", ",", tagB, ")"})})});
    Program p =
        Program::build({fileFor(pa, C), fileFor(pa, noiseClass(rng, "Zeta"))});
    Refactoring r;
    r.kind = RefactoringKind::InlineMethod;
    r.before = methodId(pa + ".Alpha", helper, {"int"});
    r.after = methodId(pa + ".Alpha", hname, {"int"});
    ExtractPayload pl;
    pl.host = r.after;
    pl.rangeBegin = 1;
    pl.rangeEnd = 2;
    pl.binding = {{"v", {"x"}}};
    pl.params = {{"int", "v"}};
    pl.returnType = "void";
    pl.body = {line({"check", "(", "v", ")"}), line({"emit", "(", "v", ",", tagB, ")"})};
    r.extract = std::move(pl);
    return {std::move(p), std::move(r)};
  }
  case RefactoringKind::PullUpMethod:
  case RefactoringKind::PullUpField:
  case RefactoringKind::PushDownMethod:
  case RefactoringKind::PushDownField: {
    bool isMethod = kind == RefactoringKind::PullUpMethod ||
                    kind == RefactoringKind::PushDownMethod;
    bool pull = kind == RefactoringKind::PullUpMethod ||
                kind == RefactoringKind::PullUpField;
    std::string mname = b.fresh(isMethod ? "calc" : "limit");
    int subCount = 1 + rng.pick(2);
    std::vector<Stmt> mbody{line({"emit", "(", b.fresh("tag"), ")"})};
    ClassDecl S;
    S.name = "Base";
    S.members.push_back(Member{method("shared", {}, {noiseLine(rng, 7)})});
    std::vector<ClassDecl> subs;
    for (int i = 0; i < subCount; ++i) {
      ClassDecl c;
      c.name = "Leaf" + std::to_string(i);
      c.superclass = "Base";
      c.members.push_back(Member{method("own" + std::to_string(i), {}, {noiseLine(rng, 8 + i)})});
      subs.push_back(std::move(c));
    }
    auto addMember = [&](ClassDecl& c) {
      if (isMethod) c.members.push_back(Member{method(mname, {}, mbody)});
      else c.members.push_back(Member{field("int", mname, {"9"})});
    };
    if (pull)
      for (auto& c : subs) addMember(c);
    else
      addMember(S);
    std::vector<SourceFile> files{fileFor(pa, S)};
    std::vector<std::string> subQNames;
    for (auto& c : subs) {
      subQNames.push_back(pa + "." + c.name);
      files.push_back(fileFor(pa, c));
    }
    files.push_back(fileFor(pa, noiseClass(rng, "Zeta")));
    Program p = Program::build(std::move(files));
    Refactoring r;
    r.kind = kind;
    r.pullPush = PullPushPayload{subQNames};
    auto memberIdOf = [&](const std::string& cls) {
      return isMethod ? methodId(cls, mname, {}) : fieldId(cls, mname);
    };
    if (pull) {
      r.before = memberIdOf(subQNames.front());
      r.after = memberIdOf(pa + ".Base");
    } else {
      r.before = memberIdOf(pa + ".Base");
      r.after = memberIdOf(subQNames.front());
    }
    return {std::move(p), std::move(r)};
  }
  case RefactoringKind::RenamePackage: {
    std::string from = "old" + std::to_string(rng.pick(50));
    std::string to = "fresh" + std::to_string(rng.pick(50));
    ClassDecl C;
    C.name = "Core";
    C.members.push_back(Member{method("spin", {}, {noiseLine(rng, 9)})});
    ClassDecl D;
    D.name = "Shell";
    D.members.push_back(Member{field(from + ".Core", "core")});
    Program p = Program::build({fileFor(from, C), fileFor(pb, D, {from + ".Core"}),
                                fileFor(pb, noiseClass(rng, "Zeta"))});
    Refactoring r;
    r.kind = RefactoringKind::RenamePackage;
    r.before = packageId(from);
    r.after = packageId(to);
    return {std::move(p), std::move(r)};
  }
  case RefactoringKind::RenameParameter: {
    std::string pname = b.fresh("inp");
    ClassDecl C;
    C.name = "Alpha";
    C.members.push_back(Member{method("scale", {{"int", pname}},
                                      {line({pname, "=", pname, "*", "2"}),
                                       line({"emit", "(", pname, ")"})})});
    Program p =
        Program::build({fileFor(pa, C), fileFor(pa, noiseClass(rng, "Zeta"))});
    Refactoring r;
    r.kind = RefactoringKind::RenameParameter;
    ElementId mid = methodId(pa + ".Alpha", "scale", {"int"});
    r.before = parameterId(mid, pname);
    r.after = parameterId(mid, b.fresh("out"));
    return {std::move(p), std::move(r)};
  }
  }
  throw std::logic_error("unhandled kind");
}

PairFixture makeCommutativePair(int which, uint32_t seed) {
  Rng rng(seed * 31 + (uint32_t)which);
  std::string pa = "cpa" + std::to_string(rng.pick(40));
  std::string pb = "cpb" + std::to_string(rng.pick(40));
  int salt = rng.pick(900);
  if (which % 3 == 0) {
    // move method + rename method on one element
    std::string mname = "job" + std::to_string(salt);
    ClassDecl C;
    C.name = "Alpha";
    C.members.push_back(Member{method(mname, {{"int", "x"}}, {line({"use", "(", "x", ")"})})});
    ClassDecl D;
    D.name = "Beta";
    D.members.push_back(Member{method("other", {}, {line({"noop", "(", ")"})})});
    Program p = Program::build({fileFor(pa, C), fileFor(pa, D)});
    PairFixture f{std::move(p), {}, {}};
    f.left.kind = RefactoringKind::MoveMethod;
    f.left.before = methodId(pa + ".Alpha", mname, {"int"});
    f.left.after = methodId(pa + ".Beta", mname, {"int"});
    f.left.branch = Branch::Left;
    f.left.seq = 1;
    f.right.kind = RefactoringKind::RenameMethod;
    f.right.before = f.left.before;
    f.right.after = methodId(pa + ".Alpha", "job" + std::to_string(salt + 1), {"int"});
    f.right.branch = Branch::Right;
    f.right.seq = 1;
    return f;
  }
  if (which % 3 == 1) {
    // move class (to another package) + rename class
    std::string cname = "Node" + std::to_string(salt);
    ClassDecl C;
    C.name = cname;
    C.members.push_back(Member{field("int", "weight")});
    ClassDecl keep;
    keep.name = "Keeper";
    keep.members.push_back(Member{method("keep", {}, {line({"noop", "(", ")"})})});
    ClassDecl other;
    other.name = "Resident";
    other.members.push_back(Member{method("sit", {}, {line({"noop", "(", ")"})})});
    Program p =
        Program::build({fileFor(pa, C), fileFor(pa, keep), fileFor(pb, other)});
    PairFixture f{std::move(p), {}, {}};
    f.left.kind = RefactoringKind::MoveClass;
    f.left.before = classId(pa + "." + cname);
    f.left.after = classId(pb + "." + cname);
    f.left.branch = Branch::Left;
    f.left.seq = 1;
    f.right.kind = RefactoringKind::RenameClass;
    f.right.before = f.left.before;
    f.right.after = classId(pa + ".Node" + std::to_string(salt + 1));
    f.right.branch = Branch::Right;
    f.right.seq = 1;
    return f;
  }
  // move field + rename field
  std::string fname = "slot" + std::to_string(salt);
  ClassDecl C;
  C.name = "Alpha";
  C.members.push_back(Member{field("int", fname, {"4"})});
  ClassDecl D;
  D.name = "Beta";
  D.members.push_back(Member{method("other", {}, {line({"noop", "(", ")"})})});
  Program p = Program::build({fileFor(pa, C), fileFor(pa, D)});
  PairFixture f{std::move(p), {}, {}};
  f.left.kind = RefactoringKind::MoveField;
  f.left.before = fieldId(pa + ".Alpha", fname);
  f.left.after = fieldId(pa + ".Beta", fname);
  f.left.branch = Branch::Left;
  f.left.seq = 1;
  f.right.kind = RefactoringKind::RenameField;
  f.right.before = f.left.before;
  f.right.after = fieldId(pa + ".Alpha", "slot" + std::to_string(salt + 1));
  f.right.branch = Branch::Right;
  f.right.seq = 1;
  return f;
}

PairFixture makeConflictPair(int variant, uint32_t seed) {
  Rng rng(seed * 131 + (uint32_t)variant);
  std::string pa = "kpa" + std::to_string(rng.pick(40));
  int salt = rng.pick(900);
  bool sameSource = variant % 2 == 0;
  int elem = (variant / 2) % 3; // 0 method, 1 class, 2 field
  ClassDecl C;
  C.name = "Alpha";
  std::string mname = "act" + std::to_string(salt);
  std::string m2name = "ago" + std::to_string(salt);
  C.members.push_back(Member{method(mname, {{"int", "x"}}, {line({"use", "(", "x", ")"})})});
  C.members.push_back(Member{method(m2name, {{"int", "y"}}, {line({"go", "(", "y", ")"})})});
  C.members.push_back(Member{field("int", "f" + std::to_string(salt), {"1"})});
  C.members.push_back(Member{field("int", "g" + std::to_string(salt), {"2"})});
  ClassDecl N;
  N.name = "Inner" + std::to_string(salt);
  N.members.push_back(Member{field("int", "pad")});
  ClassDecl N2;
  N2.name = "Outer" + std::to_string(salt);
  N2.members.push_back(Member{field("int", "pad")});
  Program p = Program::build({fileFor(pa, C), fileFor(pa, N), fileFor(pa, N2)});
  PairFixture f{std::move(p), {}, {}};
  f.left.branch = Branch::Left;
  f.left.seq = 1;
  f.right.branch = Branch::Right;
  f.right.seq = 1;
  if (elem == 0) {
    f.left.kind = f.right.kind = RefactoringKind::RenameMethod;
    if (sameSource) {
      f.left.before = f.right.before = methodId(pa + ".Alpha", mname, {"int"});
      f.left.after = methodId(pa + ".Alpha", "lft" + std::to_string(salt), {"int"});
      f.right.after = methodId(pa + ".Alpha", "rgt" + std::to_string(salt), {"int"});
    } else {
      f.left.before = methodId(pa + ".Alpha", mname, {"int"});
      f.right.before = methodId(pa + ".Alpha", m2name, {"int"});
      f.left.after = f.right.after = methodId(pa + ".Alpha", "same" + std::to_string(salt), {"int"});
    }
  } else if (elem == 1) {
    f.left.kind = f.right.kind = RefactoringKind::RenameClass;
    if (sameSource) {
      f.left.before = f.right.before = classId(pa + ".Inner" + std::to_string(salt));
      f.left.after = classId(pa + ".Lft" + std::to_string(salt));
      f.right.after = classId(pa + ".Rgt" + std::to_string(salt));
    } else {
      f.left.before = classId(pa + ".Inner" + std::to_string(salt));
      f.right.before = classId(pa + ".Outer" + std::to_string(salt));
      f.left.after = f.right.after = classId(pa + ".Same" + std::to_string(salt));
    }
  } else {
    f.left.kind = f.right.kind = RefactoringKind::RenameField;
    if (sameSource) {
      f.left.before = f.right.before = fieldId(pa + ".Alpha", "f" + std::to_string(salt));
      f.left.after = fieldId(pa + ".Alpha", "lft" + std::to_string(salt));
      f.right.after = fieldId(pa + ".Alpha", "rgt" + std::to_string(salt));
    } else {
      f.left.before = fieldId(pa + ".Alpha", "f" + std::to_string(salt));
      f.right.before = fieldId(pa + ".Alpha", "g" + std::to_string(salt));
      f.left.after = f.right.after = fieldId(pa + ".Alpha", "same" + std::to_string(salt));
    }
  }
  return f;
}

TextTriple makeTextTriple(uint32_t seed) {
  Rng rng(seed * 2246822519u + 3u);
  int n = 1 + rng.pick(40);
  std::vector<std::string> base;
  for (int i = 0; i < n; ++i) {
    int kind = rng.pick(10);
    if (kind == 0) base.push_back("");
    else if (kind < 4) base.push_back("line " + std::to_string(rng.pick(6)));
    else base.push_back("stmt" + std::to_string(rng.pick(30)) + ";");
  }
  auto mutate = [&](std::vector<std::string> lines) {
    int edits = 1 + rng.pick(4);
    for (int e = 0; e < edits; ++e) {
      if (lines.empty()) {
        lines.push_back("added " + std::to_string(rng.pick(50)));
        continue;
      }
      int at = rng.pick((int)lines.size());
      switch (rng.pick(3)) {
      case 0: lines[at] = "edit " + std::to_string(rng.pick(50)); break;
      case 1: lines.erase(lines.begin() + at); break;
      default:
        lines.insert(lines.begin() + at, "ins " + std::to_string(rng.pick(50)));
        break;
      }
    }
    return lines;
  };
  auto join = [](const std::vector<std::string>& ls) {
    std::string s;
    for (const auto& l : ls) s += l + "\n";
    return s;
  };
  TextTriple t;
  t.base = join(base);
  t.left = join(mutate(base));
  t.right = join(mutate(base));
  return t;
}

} // namespace refweave::test
