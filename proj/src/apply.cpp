//===--- apply.cpp - refactoring engine: apply, invert, replay ------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/apply.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "refweave/parse.hpp"
#include "refweave/print.hpp"
#include "refweave/references.hpp"

namespace refweave {

ApplyError::ApplyError(Kind kind, const std::string& detail)
    : std::runtime_error(std::string(kind == Kind::ElementMissing ? "element missing: "
                                     : kind == Kind::Collision    ? "collision: "
                                                                  : "bad range: ") +
                         detail),
      kind(kind) {}

namespace {

using Files = std::vector<SourceFile>;

[[noreturn]] void missing(const std::string& what) {
  throw ApplyError(ApplyError::Kind::ElementMissing, what);
}
[[noreturn]] void collision(const std::string& what) {
  throw ApplyError(ApplyError::Kind::Collision, what);
}

//===----------------------------------------------------------------------===
// structural lookup over a mutable working copy
//===----------------------------------------------------------------------===

ClassDecl* findClassIn(ClassDecl& cls, const std::string& self, const std::string& qname) {
  if (self == qname) return &cls;
  if (!isQNamePrefix(self, qname)) return nullptr;
  for (Member& m : cls.members)
    if (m.isClass())
      if (ClassDecl* r = findClassIn(m.cls(), self + "." + m.cls().name, qname)) return r;
  return nullptr;
}

struct ClassLoc {
  SourceFile* file = nullptr;
  ClassDecl* cls = nullptr;
};

ClassLoc findClassMut(Files& files, const std::string& qname) {
  for (SourceFile& f : files)
    for (ClassDecl& c : f.unit.classes)
      if (ClassDecl* r = findClassIn(c, f.unit.packageName + "." + c.name, qname))
        return {&f, r};
  return {};
}

int findMethodIndex(const ClassDecl& cls, const MethodSig& sig) {
  for (size_t i = 0; i < cls.members.size(); ++i)
    if (cls.members[i].isMethod() && cls.members[i].method().name == sig.name &&
        cls.members[i].method().paramTypes() == sig.paramTypes)
      return (int)i;
  return -1;
}

int findFieldIndex(const ClassDecl& cls, const std::string& name) {
  for (size_t i = 0; i < cls.members.size(); ++i)
    if (cls.members[i].isField() && cls.members[i].field().name == name) return (int)i;
  return -1;
}

bool classHasMethod(const ClassDecl& cls, const std::string& name,
                    const std::vector<std::string>& types) {
  return findMethodIndex(cls, MethodSig{name, types}) >= 0;
}

/// Recomputes a file's path after its class list changed; deletes the file
/// when it became empty. Returns false if the file was removed.
void fixupFile(Files& files, SourceFile* file) {
  if (file->unit.classes.empty()) {
    files.erase(files.begin() + (file - files.data()));
    return;
  }
  file->path = canonicalPath(file->unit.packageName, file->unit.classes.front().name);
}

//===----------------------------------------------------------------------===
// post-state class name resolution (structure not yet mutated)
//===----------------------------------------------------------------------===

struct ResolveView {
  std::set<std::string> classes;
  struct FileScope {
    std::string package;
    std::vector<std::string> imports;
  };
  std::map<std::string, FileScope> files; // keyed by pre-mutation path

  std::optional<std::string> resolveClass(const std::string& fromPath,
                                          const std::string& name) const {
    if (classes.count(name)) return name;
    auto fit = files.find(fromPath);
    if (fit == files.end()) return std::nullopt;
    const FileScope& fs = fit->second;
    auto segs = splitDotted(name);
    if (segs.size() == 1) {
      std::vector<std::string> hits;
      for (const auto& imp : fs.imports)
        if (leafName(imp) == name) hits.push_back(imp);
      if (hits.size() > 1) return std::nullopt;
      if (hits.size() == 1 && classes.count(hits.front())) return hits.front();
      std::string pkgQName = fs.package + "." + name;
      if (classes.count(pkgQName)) return pkgQName;
      return std::nullopt;
    }
    auto head = resolveClass(fromPath, segs.front());
    if (!head) return std::nullopt;
    std::string qname = *head;
    for (size_t i = 1; i < segs.size(); ++i) qname += "." + segs[i];
    if (classes.count(qname)) return qname;
    return std::nullopt;
  }
};

ResolveView makeView(const Program& pre, const std::vector<IdRemap>& remaps) {
  ResolveView v;
  for (const auto& q : pre.allClassQNames())
    v.classes.insert(rewriteId(classId(q), remaps).qualifiedName);
  for (const SourceFile& f : pre.files()) {
    ResolveView::FileScope fs;
    fs.package = rewriteId(packageId(f.unit.packageName), remaps).qualifiedName;
    for (const auto& imp : f.unit.imports)
      fs.imports.push_back(rewriteId(classId(imp), remaps).qualifiedName);
    v.files[f.path] = fs;
  }
  return v;
}

/// Shortest form of `targetQName` that resolves from `fromPath` in the
/// post-state view, preferring `preferredLen` segments (keeps the author's
/// qualification style stable across rename cycles).
std::string canonicalSlot(const ResolveView& view, const std::string& fromPath,
                          size_t preferredLen, const std::string& targetQName) {
  auto target = splitDotted(targetQName);
  std::vector<size_t> lens;
  if (preferredLen >= 1 && preferredLen <= target.size()) lens.push_back(preferredLen);
  for (size_t k = 1; k <= target.size(); ++k)
    if (k != preferredLen) lens.push_back(k);
  for (size_t k : lens) {
    std::vector<std::string> tail(target.end() - k, target.end());
    std::string cand = joinDotted(tail);
    if (view.resolveClass(fromPath, cand) == std::optional<std::string>(targetQName))
      return cand;
  }
  return targetQName;
}

TokenSeq dottedToTokens(const std::string& dotted) {
  TokenSeq toks;
  auto segs = splitDotted(dotted);
  for (size_t i = 0; i < segs.size(); ++i) {
    if (i) toks.push_back(".");
    toks.push_back(segs[i]);
  }
  return toks;
}

//===----------------------------------------------------------------------===
// reference rewriting
//===----------------------------------------------------------------------===

struct Splice {
  int index, length;
  TokenSeq replacement;
};

void applySplices(TokenSeq& toks, std::vector<Splice> splices) {
  std::sort(splices.begin(), splices.end(),
            [](const Splice& a, const Splice& b) { return a.index > b.index; });
  for (const Splice& s : splices) {
    toks.erase(toks.begin() + s.index, toks.begin() + s.index + s.length);
    toks.insert(toks.begin() + s.index, s.replacement.begin(), s.replacement.end());
  }
}

/// Rewrites class references (token runs, qualifier runs, type slots,
/// extends clauses, imports) for a class or package remap. Runs before any
/// structural mutation; resolution of new names is answered by `view`.
void rewriteClassRefs(Files& files, const Program& pre, const std::vector<IdRemap>& remaps,
                      const ResolveView& view, std::vector<std::string>* warnings) {
  auto affected = [&](const std::string& qname) {
    return rewriteId(classId(qname), remaps).qualifiedName != qname;
  };
  forEachTokenSeqMut(files, [&](const ScopeCtx& ctx, TokenSeq& toks) {
    std::vector<Splice> splices;
    for (const TokenRef& ref : classifyTokens(pre, ctx, toks, warnings)) {
      const ElementId* clsRef = nullptr;
      int at = 0, len = 0;
      if (ref.target.kind == ElementKind::Class) {
        clsRef = &ref.target;
        at = ref.index;
        len = ref.length;
      } else if (ref.qualifier) {
        clsRef = &*ref.qualifier;
        at = ref.index;
        len = ref.qualifierLen;
      }
      if (!clsRef || !affected(clsRef->qualifiedName)) continue;
      std::string newQ = rewriteId(*clsRef, remaps).qualifiedName;
      size_t oldSegs = (size_t)(len + 1) / 2;
      std::string slot = canonicalSlot(view, ctx.filePath, oldSegs, newQ);
      splices.push_back({at, len, dottedToTokens(slot)});
    }
    applySplices(toks, std::move(splices));
  });

  for (SourceFile& f : files) {
    for (auto& imp : f.unit.imports)
      if (affected(imp)) imp = rewriteId(classId(imp), remaps).qualifiedName;
    std::function<void(ClassDecl&)> scan = [&](ClassDecl& cls) {
      auto fixSlot = [&](std::string& slot) {
        auto t = resolve(pre, f.path, slot);
        if (!t || t->kind != ElementKind::Class || !affected(t->qualifiedName)) return;
        std::string newQ = rewriteId(*t, remaps).qualifiedName;
        slot = canonicalSlot(view, f.path, splitDotted(slot).size(), newQ);
      };
      if (cls.superclass) fixSlot(*cls.superclass);
      for (Member& m : cls.members) {
        if (m.isField()) fixSlot(m.field().type);
        else if (m.isMethod()) {
          fixSlot(m.method().returnType);
          for (Param& p : m.method().params) fixSlot(p.type);
        } else {
          scan(m.cls());
        }
      }
    };
    for (ClassDecl& c : f.unit.classes) scan(c);
  }
}

/// Canonical reference tokens for a member that now lives in `targetClass`:
/// unqualified when the site's post-state unqualified lookup lands on it,
/// otherwise qualified with the shortest resolving class reference.
struct MemberTarget {
  std::string targetClass;
  std::string name;
  std::vector<std::string> paramTypes; // methods only
  bool isMethod = true;
};

/// Post-state unqualified lookup with the refactoring's effect overlaid:
/// `removed` members no longer count, `added` do.
struct MemberOverlay {
  // (classQName, memberName) removed; methods also keyed by types
  std::set<std::string> removedMethods; // classQName + "#" + sigkey
  std::set<std::string> removedFields;  // classQName + "#" + name
  std::map<std::string, std::vector<std::vector<std::string>>> addedMethods; // class#name -> types
  std::set<std::string> addedFields;
};

std::optional<std::string> ownerOfCallPost(const Program& pre, const MemberOverlay& ov,
                                           const std::string& fromClass,
                                           const std::string& name, int arity) {
  std::vector<std::string> chain{fromClass};
  for (const auto& s : pre.superChain(fromClass)) chain.push_back(s);
  for (const auto& cq : chain) {
    std::vector<std::vector<std::string>> sigs;
    if (const ClassDecl* cls = pre.findClass(cq))
      for (const Member& m : cls->members)
        if (m.isMethod() && m.method().name == name &&
            !ov.removedMethods.count(cq + "#" + methodSigKey(name, m.method().paramTypes())))
          sigs.push_back(m.method().paramTypes());
    auto added = ov.addedMethods.find(cq + "#" + name);
    if (added != ov.addedMethods.end())
      for (const auto& ts : added->second) sigs.push_back(ts);
    if (sigs.empty()) continue;
    if (sigs.size() == 1) return cq;
    for (const auto& ts : sigs)
      if ((int)ts.size() == arity) return cq;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<std::string> ownerOfFieldPost(const Program& pre, const MemberOverlay& ov,
                                            const std::string& fromClass,
                                            const std::string& name) {
  std::vector<std::string> chain{fromClass};
  for (const auto& s : pre.superChain(fromClass)) chain.push_back(s);
  for (const auto& cq : chain) {
    bool has = false;
    if (const ClassDecl* cls = pre.findClass(cq))
      for (const Member& m : cls->members)
        if (m.isField() && m.field().name == name && !ov.removedFields.count(cq + "#" + name))
          has = true;
    if (ov.addedFields.count(cq + "#" + name)) has = true;
    if (has) return cq;
  }
  return std::nullopt;
}

/// Rewrites every reference to a member (method or field) to its new
/// canonical form. `matches` selects the token refs to rewrite.
void rewriteMemberRefs(Files& files, const Program& pre,
                       const std::function<bool(const TokenRef&)>& matches,
                       const MemberTarget& to, const MemberOverlay& overlay,
                       const std::function<std::string(const ScopeCtx&)>& siteClassOf,
                       std::vector<std::string>* warnings) {
  ResolveView view = makeView(pre, {});
  forEachTokenSeqMut(files, [&](const ScopeCtx& ctx, TokenSeq& toks) {
    std::vector<Splice> splices;
    for (const TokenRef& ref : classifyTokens(pre, ctx, toks, warnings)) {
      if (!matches(ref)) continue;
      std::string siteClass = siteClassOf(ctx);
      bool unqualifiedOk;
      if (to.isMethod) {
        auto owner = ownerOfCallPost(pre, overlay, siteClass, to.name, (int)to.paramTypes.size());
        unqualifiedOk = owner == std::optional<std::string>(to.targetClass);
      } else {
        bool shadowed = false;
        if (ctx.method)
          for (const auto& p : ctx.method->params)
            if (p.name == to.name) shadowed = true;
        auto owner = ownerOfFieldPost(pre, overlay, siteClass, to.name);
        unqualifiedOk = !shadowed && owner == std::optional<std::string>(to.targetClass);
      }
      TokenSeq repl;
      if (unqualifiedOk) {
        repl = {to.name};
      } else {
        size_t preferred = ref.qualifierLen > 0 ? (size_t)(ref.qualifierLen + 1) / 2 : 1;
        std::string slot = canonicalSlot(view, ctx.filePath, preferred, to.targetClass);
        repl = dottedToTokens(slot);
        repl.push_back(".");
        repl.push_back(to.name);
      }
      splices.push_back({ref.index, ref.length, std::move(repl)});
    }
    applySplices(toks, std::move(splices));
  });
}

//===----------------------------------------------------------------------===
// statement substitution for extract / inline
//===----------------------------------------------------------------------===

bool isIdentTok(const std::string& t) {
  if (t.empty()) return false;
  if (!(std::isalpha((unsigned char)t[0]) || t[0] == '_')) return false;
  for (char c : t)
    if (!(std::isalnum((unsigned char)c) || c == '_')) return false;
  return true;
}

/// Replaces bare occurrences of `from` identifiers by token sequences.
void substituteTokens(TokenSeq& toks,
                      const std::vector<std::pair<std::string, TokenSeq>>& mapping) {
  std::vector<Splice> splices;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (!isIdentTok(toks[i])) continue;
    if (i > 0 && toks[i - 1] == ".") continue; // member suffix, not a use
    for (const auto& [from, to] : mapping) {
      if (toks[i] != from) continue;
      splices.push_back({(int)i, 1, to});
      break;
    }
  }
  applySplices(toks, std::move(splices));
}

void substituteStmt(Stmt& s, const std::vector<std::pair<std::string, TokenSeq>>& mapping) {
  substituteTokens(s.tokens, mapping);
  for (Stmt& c : s.children) substituteStmt(c, mapping);
}

std::vector<Stmt> substitutedBody(const std::vector<Stmt>& body,
                                  const std::vector<std::pair<std::string, TokenSeq>>& mapping) {
  std::vector<Stmt> out = body;
  for (Stmt& s : out) substituteStmt(s, mapping);
  return out;
}

/// Reverse of the call binding: single-identifier argument token sequences
/// are replaced back by the parameter name; longer sequences are replaced by
/// exact contiguous match.
std::vector<Stmt> unsubstitutedBody(const std::vector<Stmt>& stmts,
                                    const std::vector<std::pair<std::string, TokenSeq>>& binding) {
  std::vector<std::pair<std::string, TokenSeq>> singles;
  std::vector<std::pair<TokenSeq, std::string>> longer;
  for (const auto& [param, args] : binding) {
    if (args.size() == 1 && isIdentTok(args[0]))
      singles.push_back({args[0], {param}});
    else if (!args.empty())
      longer.push_back({args, param});
  }
  std::vector<Stmt> out = stmts;
  std::function<void(Stmt&)> walk = [&](Stmt& s) {
    substituteTokens(s.tokens, singles);
    for (const auto& [seq, param] : longer) {
      for (size_t i = 0; i + seq.size() <= s.tokens.size();) {
        if (std::equal(seq.begin(), seq.end(), s.tokens.begin() + i)) {
          s.tokens.erase(s.tokens.begin() + i, s.tokens.begin() + i + seq.size());
          s.tokens.insert(s.tokens.begin() + i, param);
          i += 1;
        } else {
          ++i;
        }
      }
    }
    for (Stmt& c : s.children) walk(c);
  };
  for (Stmt& s : out) walk(s);
  return out;
}

/// True when `line` is exactly `name ( ... ) ;`-shaped (a pure call).
bool isPureCall(const Stmt& s, const std::string& name) {
  if (s.kind != Stmt::Kind::Line || s.hasTrailingBlock) return false;
  const TokenSeq& t = s.tokens;
  if (t.size() < 3 || t[0] != name || t[1] != "(" || t.back() != ")") return false;
  int depth = 0;
  for (size_t i = 1; i < t.size(); ++i) {
    if (t[i] == "(") ++depth;
    else if (t[i] == ")") {
      --depth;
      if (depth == 0) return i + 1 == t.size();
    }
  }
  return false;
}

std::vector<TokenSeq> callArgs(const TokenSeq& t) {
  // t is a pure call: name ( args )
  std::vector<TokenSeq> args;
  TokenSeq cur;
  int depth = 0;
  for (size_t i = 1; i < t.size(); ++i) {
    if (t[i] == "(") {
      if (depth++ > 0) cur.push_back(t[i]);
      continue;
    }
    if (t[i] == ")") {
      if (--depth == 0) break;
      cur.push_back(t[i]);
      continue;
    }
    if (t[i] == "," && depth == 1) {
      args.push_back(cur);
      cur.clear();
      continue;
    }
    cur.push_back(t[i]);
  }
  if (!cur.empty()) args.push_back(cur);
  return args;
}

TokenSeq buildCallLine(const std::string& name,
                       const std::vector<std::pair<std::string, TokenSeq>>& binding) {
  TokenSeq t{name, "("};
  for (size_t i = 0; i < binding.size(); ++i) {
    if (i) t.push_back(",");
    for (const auto& tok : binding[i].second) t.push_back(tok);
  }
  t.push_back(")");
  return t;
}

//===----------------------------------------------------------------------===
// the per-kind apply implementations
//===----------------------------------------------------------------------===

struct Engine {
  const Program& pre;
  Files files;
  std::vector<std::string> warnings;

  explicit Engine(const Program& p) : pre(p), files(p.files()) {}

  Program finish() { return Program::build(std::move(files)); }

  void renameParameter(const Refactoring& r) {
    std::string methodQName = containerOf(r.before.qualifiedName);
    std::string oldName = leafName(r.before.qualifiedName);
    std::string newName = leafName(r.after.qualifiedName);
    ClassLoc loc = findClassMut(files, containerOf(methodQName));
    if (!loc.cls) missing(idString(r.before));
    int mi = findMethodIndex(*loc.cls, *r.before.signature);
    if (mi < 0) missing(idString(r.before));
    MethodDecl& md = loc.cls->members[mi].method();
    bool had = false;
    for (auto& p : md.params) {
      if (p.name == newName) collision(newName);
      if (p.name == oldName) had = true;
    }
    if (!had) missing(idString(r.before));
    ElementId target = parameterId(methodId(containerOf(methodQName), leafName(methodQName),
                                            r.before.signature->paramTypes),
                                   oldName);
    forEachTokenSeqMut(files, [&](const ScopeCtx& ctx, TokenSeq& toks) {
      std::vector<Splice> splices;
      for (const TokenRef& ref : classifyTokens(pre, ctx, toks))
        if (ref.target == target) splices.push_back({ref.index, 1, {newName}});
      applySplices(toks, std::move(splices));
    });
    for (auto& p : md.params)
      if (p.name == oldName) p.name = newName;
  }

  void renameOrMoveMethod(const Refactoring& r) {
    std::string srcClass = containerOf(r.before.qualifiedName);
    std::string dstClass = containerOf(r.after.qualifiedName);
    std::string newName = r.after.signature->name;
    ClassLoc src = findClassMut(files, srcClass);
    if (!src.cls) missing(srcClass);
    int mi = findMethodIndex(*src.cls, *r.before.signature);
    if (mi < 0) missing(idString(r.before));
    ClassLoc dst = srcClass == dstClass ? src : findClassMut(files, dstClass);
    if (!dst.cls) missing(dstClass);
    if (classHasMethod(*dst.cls, newName, r.after.signature->paramTypes))
      collision(idString(r.after));

    MemberOverlay ov;
    ov.removedMethods.insert(srcClass + "#" +
                             methodSigKey(r.before.signature->name,
                                          r.before.signature->paramTypes));
    ov.addedMethods[dstClass + "#" + newName].push_back(r.after.signature->paramTypes);
    MemberTarget to{dstClass, newName, r.after.signature->paramTypes, true};
    const MethodDecl* moved = &src.cls->members[mi].method();
    auto siteClassOf = [&](const ScopeCtx& ctx) {
      // sites inside the moved method itself end up in the destination class
      if (ctx.classQName == srcClass && ctx.method == moved) return dstClass;
      return ctx.classQName;
    };
    rewriteMemberRefs(
        files, pre, [&](const TokenRef& ref) { return ref.target == r.before; }, to, ov,
        siteClassOf, &warnings);

    Member m = std::move(src.cls->members[mi]);
    src.cls->members.erase(src.cls->members.begin() + mi);
    m.method().name = newName;
    if (srcClass == dstClass)
      src.cls->members.insert(src.cls->members.begin() + mi, std::move(m));
    else
      dst.cls->members.push_back(std::move(m));
  }

  void renameOrMoveField(const Refactoring& r) {
    std::string srcClass = containerOf(r.before.qualifiedName);
    std::string dstClass = containerOf(r.after.qualifiedName);
    std::string oldName = leafName(r.before.qualifiedName);
    std::string newName = leafName(r.after.qualifiedName);
    ClassLoc src = findClassMut(files, srcClass);
    if (!src.cls) missing(srcClass);
    int fi = findFieldIndex(*src.cls, oldName);
    if (fi < 0) missing(idString(r.before));
    ClassLoc dst = srcClass == dstClass ? src : findClassMut(files, dstClass);
    if (!dst.cls) missing(dstClass);
    if (findFieldIndex(*dst.cls, newName) >= 0) collision(idString(r.after));

    MemberOverlay ov;
    ov.removedFields.insert(srcClass + "#" + oldName);
    ov.addedFields.insert(dstClass + "#" + newName);
    MemberTarget to{dstClass, newName, {}, false};
    rewriteMemberRefs(
        files, pre, [&](const TokenRef& ref) { return ref.target == r.before; }, to, ov,
        [&](const ScopeCtx& ctx) { return ctx.classQName; }, &warnings);

    Member m = std::move(src.cls->members[fi]);
    src.cls->members.erase(src.cls->members.begin() + fi);
    m.field().name = newName;
    if (srcClass == dstClass)
      src.cls->members.insert(src.cls->members.begin() + fi, std::move(m));
    else
      dst.cls->members.push_back(std::move(m));
  }

  void renameOrMoveClass(const Refactoring& r) {
    if (!pre.hasClass(r.before.qualifiedName)) missing(idString(r.before));
    if (pre.hasClass(r.after.qualifiedName)) collision(idString(r.after));
    std::string dstContainer = containerOf(r.after.qualifiedName);
    bool dstIsClass = pre.hasClass(dstContainer);
    bool moved = dstContainer != containerOf(r.before.qualifiedName);
    if (moved && dstIsClass && isQNamePrefix(r.before.qualifiedName, dstContainer))
      collision("cannot move a class into itself");

    auto remaps = remapsOf(r);
    ResolveView view = makeView(pre, remaps);
    rewriteClassRefs(files, pre, remaps, view, &warnings);

    ClassLoc src = findClassMut(files, r.before.qualifiedName);
    SourceFile* srcFile = src.file;
    std::vector<std::string> srcImports = srcFile->unit.imports;

    if (!moved) {
      src.cls->name = leafName(r.after.qualifiedName);
      if (&srcFile->unit.classes.front() == src.cls) fixupFile(files, srcFile);
      return;
    }
    // detach
    ClassDecl detached;
    bool topLevel = false;
    for (size_t i = 0; i < srcFile->unit.classes.size(); ++i)
      if (&srcFile->unit.classes[i] == src.cls) {
        detached = std::move(srcFile->unit.classes[i]);
        srcFile->unit.classes.erase(srcFile->unit.classes.begin() + i);
        topLevel = true;
        break;
      }
    if (!topLevel) {
      ClassLoc outer = findClassMut(files, containerOf(r.before.qualifiedName));
      for (size_t i = 0; i < outer.cls->members.size(); ++i)
        if (outer.cls->members[i].isClass() && &outer.cls->members[i].cls() == src.cls) {
          detached = std::move(outer.cls->members[i].cls());
          outer.cls->members.erase(outer.cls->members.begin() + i);
          break;
        }
    } else {
      fixupFile(files, srcFile);
    }
    detached.name = leafName(r.after.qualifiedName);

    if (dstIsClass) {
      ClassLoc dst = findClassMut(files, dstContainer);
      if (!dst.cls) missing(dstContainer);
      dst.cls->members.push_back(Member{std::move(detached)});
      return;
    }
    // top level of a package: the class gets its own file
    std::string newPath = canonicalPath(dstContainer, detached.name);
    for (const SourceFile& f : files)
      if (f.path == newPath) collision(newPath);
    SourceFile nf;
    nf.path = newPath;
    nf.unit.packageName = dstContainer;
    nf.unit.imports = srcImports; // the class keeps its old file's scope
    nf.unit.classes.push_back(std::move(detached));
    files.push_back(std::move(nf));
  }

  void renamePackage(const Refactoring& r) {
    bool any = false;
    for (const SourceFile& f : files)
      if (f.unit.packageName == r.before.qualifiedName) any = true;
    if (!any) missing(idString(r.before));
    for (const SourceFile& f : files)
      if (f.unit.packageName == r.after.qualifiedName) collision(idString(r.after));

    auto remaps = remapsOf(r);
    ResolveView view = makeView(pre, remaps);
    rewriteClassRefs(files, pre, remaps, view, &warnings);
    for (SourceFile& f : files) {
      if (!isQNamePrefix(r.before.qualifiedName, f.unit.packageName)) continue;
      f.unit.packageName = r.after.qualifiedName +
                           f.unit.packageName.substr(r.before.qualifiedName.size());
      f.path = canonicalPath(f.unit.packageName, f.unit.classes.front().name);
    }
  }

  void pullUpOrPushDown(const Refactoring& r, bool pull, bool isMethod) {
    if (!r.pullPush || r.pullPush->classes.empty()) missing("subclass set");
    const auto& subs = r.pullPush->classes;
    std::string superClass = pull ? containerOf(r.after.qualifiedName)
                                  : containerOf(r.before.qualifiedName);
    std::string name = leafName(r.before.qualifiedName);
    std::string newName = leafName(r.after.qualifiedName);
    ClassLoc sup = findClassMut(files, superClass);
    if (!sup.cls) missing(superClass);
    for (const auto& sub : subs) {
      ClassLoc sc = findClassMut(files, sub);
      if (!sc.cls) missing(sub);
      auto chain = pre.superChain(sub);
      if (chain.empty() || chain.front() != superClass)
        missing(sub + " does not directly extend " + superClass);
    }

    if (pull) {
      Member copy{FieldDecl{}};
      bool first = true;
      for (const auto& sub : subs) {
        ClassLoc sc = findClassMut(files, sub);
        int idx = isMethod ? findMethodIndex(*sc.cls, *r.before.signature)
                           : findFieldIndex(*sc.cls, name);
        if (idx < 0) missing(sub + "." + name);
        if (first) copy = sc.cls->members[idx];
        first = false;
        sc.cls->members.erase(sc.cls->members.begin() + idx);
      }
      if (isMethod) {
        if (classHasMethod(*sup.cls, newName, r.after.signature->paramTypes))
          collision(idString(r.after));
        copy.method().name = newName;
      } else {
        if (findFieldIndex(*sup.cls, newName) >= 0) collision(idString(r.after));
        copy.field().name = newName;
      }
      sup.cls->members.push_back(std::move(copy));
      return;
    }
    // push down
    int idx = isMethod ? findMethodIndex(*sup.cls, *r.before.signature)
                       : findFieldIndex(*sup.cls, name);
    if (idx < 0) missing(idString(r.before));
    for (const auto& sub : subs) {
      ClassLoc sc = findClassMut(files, sub);
      if (isMethod ? classHasMethod(*sc.cls, newName, r.after.signature->paramTypes)
                   : findFieldIndex(*sc.cls, newName) >= 0)
        collision(sub + "." + newName);
    }
    // references that resolved to the super member and cannot reach a copy
    // re-qualify to the first target subclass
    MemberOverlay ov;
    std::vector<std::string> types = isMethod ? r.before.signature->paramTypes
                                              : std::vector<std::string>{};
    if (isMethod)
      ov.removedMethods.insert(superClass + "#" + methodSigKey(name, types));
    else
      ov.removedFields.insert(superClass + "#" + name);
    for (const auto& sub : subs) {
      if (isMethod)
        ov.addedMethods[sub + "#" + newName].push_back(types);
      else
        ov.addedFields.insert(sub + "#" + newName);
    }
    MemberTarget to{subs.front(), newName, types, isMethod};
    const ElementId beforeId = r.before;
    rewriteMemberRefs(
        files, pre, [&](const TokenRef& ref) { return ref.target == beforeId; }, to, ov,
        [&](const ScopeCtx& ctx) { return ctx.classQName; }, &warnings);

    Member tmpl = sup.cls->members[idx];
    sup.cls->members.erase(sup.cls->members.begin() + idx);
    for (const auto& sub : subs) {
      ClassLoc sc = findClassMut(files, sub);
      Member copy = tmpl;
      if (isMethod) copy.method().name = newName;
      else copy.field().name = newName;
      sc.cls->members.push_back(std::move(copy));
    }
  }

  void extractMethod(const Refactoring& r, bool strictContent) {
    const ExtractPayload& pl = *r.extract;
    std::string hostClass = containerOf(r.before.qualifiedName);
    ClassLoc loc = findClassMut(files, hostClass);
    if (!loc.cls) missing(hostClass);
    int mi = findMethodIndex(*loc.cls, *r.before.signature);
    if (mi < 0) missing(idString(r.before));
    MethodDecl& host = loc.cls->members[mi].method();
    if (pl.rangeBegin < 0 || pl.rangeEnd < pl.rangeBegin ||
        pl.rangeEnd >= (int)host.body.size())
      throw ApplyError(ApplyError::Kind::BadRange,
                       idString(r.before) + " range " + std::to_string(pl.rangeBegin) + ".." +
                           std::to_string(pl.rangeEnd));
    std::string newName = r.after.signature->name;
    if (classHasMethod(*loc.cls, newName, r.after.signature->paramTypes))
      collision(idString(r.after));
    std::vector<Stmt> range(host.body.begin() + pl.rangeBegin,
                            host.body.begin() + pl.rangeEnd + 1);
    if (strictContent) {
      std::vector<std::pair<std::string, TokenSeq>> sigma(pl.binding.begin(), pl.binding.end());
      if (substitutedBody(pl.body, sigma) != range)
        missing("extract range content drifted for " + idString(r.after));
    }
    MethodDecl extracted;
    extracted.isStatic = pl.isStatic;
    extracted.returnType = pl.returnType;
    extracted.name = newName;
    extracted.params = pl.params;
    extracted.body = strictContent ? pl.body : unsubstitutedBody(range, pl.binding);
    host.body.erase(host.body.begin() + pl.rangeBegin, host.body.begin() + pl.rangeEnd + 1);
    Stmt call;
    call.kind = Stmt::Kind::Line;
    call.tokens = buildCallLine(newName, pl.binding);
    host.body.insert(host.body.begin() + pl.rangeBegin, std::move(call));
    loc.cls->members.insert(loc.cls->members.begin() + mi + 1, Member{std::move(extracted)});
  }

  /// Returns the spliced statement count so callers can anchor the span.
  int inlineMethod(const Refactoring& r) {
    std::string mClass = containerOf(r.before.qualifiedName);
    ClassLoc mLoc = findClassMut(files, mClass);
    if (!mLoc.cls) missing(mClass);
    int mIdx = findMethodIndex(*mLoc.cls, *r.before.signature);
    if (mIdx < 0) missing(idString(r.before));
    MethodDecl inlined = mLoc.cls->members[mIdx].method(); // copy

    std::string hostClass = containerOf(r.after.qualifiedName);
    ClassLoc hLoc = findClassMut(files, hostClass);
    if (!hLoc.cls) missing(hostClass);
    int hi = findMethodIndex(*hLoc.cls, *r.after.signature);
    if (hi < 0) missing(idString(r.after));
    MethodDecl& host = hLoc.cls->members[hi].method();

    int callAt = -1;
    const int expected = r.extract ? r.extract->rangeBegin : -1;
    if (expected >= 0 && expected < (int)host.body.size() &&
        isPureCall(host.body[expected], inlined.name)) {
      callAt = expected;
    } else {
      for (size_t i = 0; i < host.body.size(); ++i)
        if (isPureCall(host.body[i], inlined.name)) {
          if (callAt >= 0) missing("multiple calls to " + idString(r.before));
          callAt = (int)i;
        }
    }
    if (callAt < 0) missing("no call to " + idString(r.before) + " in host body");
    auto args = callArgs(host.body[callAt].tokens);
    if (args.size() != inlined.params.size())
      missing("call arity mismatch for " + idString(r.before));
    std::vector<std::pair<std::string, TokenSeq>> sigma;
    for (size_t i = 0; i < args.size(); ++i)
      sigma.push_back({inlined.params[i].name, args[i]});
    std::vector<Stmt> spliced = substitutedBody(inlined.body, sigma);
    host.body.erase(host.body.begin() + callAt);
    host.body.insert(host.body.begin() + callAt, spliced.begin(), spliced.end());

    // the inlined method goes away
    ClassLoc again = findClassMut(files, mClass);
    int di = findMethodIndex(*again.cls, *r.before.signature);
    again.cls->members.erase(again.cls->members.begin() + di);
    return callAt;
  }
};

std::set<std::string> diffPaths(const Program& before, const Program& after) {
  std::set<std::string> changed;
  std::map<std::string, const SourceFile*> b, a;
  for (const auto& f : before.files()) b[f.path] = &f;
  for (const auto& f : after.files()) a[f.path] = &f;
  for (const auto& [p, f] : b) {
    auto it = a.find(p);
    if (it == a.end() || !(it->second->unit == f->unit)) changed.insert(p);
  }
  for (const auto& [p, f] : a)
    if (!b.count(p)) changed.insert(p);
  return changed;
}

} // namespace

ApplyResult applyRefactoring(const Program& program, const Refactoring& r) {
  if (r.before == r.after && !r.extract) return {program, {}, {}}; // identity no-op
  Engine e(program);
  switch (r.kind) {
  case RefactoringKind::RenameParameter: e.renameParameter(r); break;
  case RefactoringKind::RenameMethod:
  case RefactoringKind::MoveMethod:
  case RefactoringKind::MoveAndRenameMethod: e.renameOrMoveMethod(r); break;
  case RefactoringKind::RenameField:
  case RefactoringKind::MoveField:
  case RefactoringKind::MoveAndRenameField: e.renameOrMoveField(r); break;
  case RefactoringKind::RenameClass:
  case RefactoringKind::MoveClass:
  case RefactoringKind::MoveAndRenameClass: e.renameOrMoveClass(r); break;
  case RefactoringKind::RenamePackage: e.renamePackage(r); break;
  case RefactoringKind::PullUpMethod: e.pullUpOrPushDown(r, true, true); break;
  case RefactoringKind::PushDownMethod: e.pullUpOrPushDown(r, false, true); break;
  case RefactoringKind::PullUpField: e.pullUpOrPushDown(r, true, false); break;
  case RefactoringKind::PushDownField: e.pullUpOrPushDown(r, false, false); break;
  case RefactoringKind::ExtractMethod: e.extractMethod(r, /*strictContent=*/true); break;
  case RefactoringKind::InlineMethod: e.inlineMethod(r); break;
  }
  Program out = e.finish();
  std::set<std::string> changed = diffPaths(program, out);
  return {std::move(out), std::move(changed), std::move(e.warnings)};
}

//===----------------------------------------------------------------------===
// invert_all
//===----------------------------------------------------------------------===

InversionOutcome invert_all(const Program& parent, const ProcessedRefList& topdown) {
  InversionOutcome out;
  out.program = parent;
  std::vector<Refactoring> remaining = topdown.refs;
  struct PendingAnchor {
    int seq;
    ElementId host; // tracked through later inversions
    MethodSig hostSig;
    int rangeBegin;
    int bodyLen;
  };
  std::vector<PendingAnchor> pending;

  for (size_t i = 0; i < remaining.size(); ++i) {
    const Refactoring r = remaining[i];
    Refactoring rbar = inverse(r);
    try {
      int bodyLen = 0;
      if (r.kind == RefactoringKind::ExtractMethod) {
        const MethodDecl* m2 = out.program.findMethod(r.after);
        bodyLen = m2 ? (int)m2->body.size() : 0;
      }
      ApplyResult res = applyRefactoring(out.program, rbar);
      out.program = std::move(res.program);
      out.touchedPaths.insert(res.changedPaths.begin(), res.changedPaths.end());
      for (auto& w : res.warnings) out.log.notes.push_back(std::move(w));
      out.log.records.push_back({r, true, ""});
      out.replayReady.push_back(r);
      if (r.kind == RefactoringKind::ExtractMethod)
        pending.push_back({r.seq, r.before, *r.before.signature,
                           r.extract ? r.extract->rangeBegin : 0, bodyLen});
      auto remaps = remapsOf(rbar);
      if (!remaps.empty()) {
        for (size_t j = i + 1; j < remaining.size(); ++j)
          remaining[j] = rewriteThroughRemaps(remaining[j], remaps);
        for (PendingAnchor& pa : pending) {
          pa.host = rewriteId(pa.host, remaps);
          pa.hostSig = *pa.host.signature;
        }
      }
    } catch (const ApplyError& e) {
      out.log.records.push_back({r, false, e.what()});
    } catch (const BuildError& e) {
      out.log.records.push_back({r, false, e.what()});
    }
  }

  // anchor line spans in the final printed parent
  for (const PendingAnchor& pa : pending) {
    const SourceFile* f = out.program.fileOfClass(containerOf(pa.host.qualifiedName));
    if (!f) continue;
    LineIndex idx;
    std::string text = print_unit(f->unit);
    try {
      parse_file(f->path, text, &idx);
    } catch (const SyntaxError&) {
      continue;
    }
    auto ci = idx.bodySpans.find(containerOf(pa.host.qualifiedName));
    if (ci == idx.bodySpans.end()) continue;
    auto mi = ci->second.find(methodSigKey(pa.hostSig.name, pa.hostSig.paramTypes));
    if (mi == ci->second.end()) continue;
    const auto& spans = mi->second;
    int b = pa.rangeBegin, e = pa.rangeBegin + pa.bodyLen - 1;
    if (b < 0 || e < b || e >= (int)spans.size()) continue;
    out.anchors.push_back({pa.seq, f->path, spans[b].startLine, spans[e].endLine});
  }
  return out;
}

//===----------------------------------------------------------------------===
// replay_all
//===----------------------------------------------------------------------===

namespace {

/// Maps a side-file line span (1-based inclusive) to the merged-file span
/// through the chunk table. Returns false when the span touches a conflict
/// chunk or cannot be located.
bool mapSpanToMerged(const std::vector<AlignChunk>& chunks, Branch side, int s, int e,
                     int* mBegin, int* mEnd, bool* conflicted) {
  int s0 = s - 1, e0 = e; // 0-based half-open
  int lo = -1, hi = -1;
  bool any = false;
  for (const AlignChunk& c : chunks) {
    int sb = side == Branch::Left ? c.leftBegin : c.rightBegin;
    int se = side == Branch::Left ? c.leftEnd : c.rightEnd;
    int overlapB = std::max(s0, sb), overlapE = std::min(e0, se);
    if (overlapB >= overlapE) continue;
    any = true;
    if (c.kind == ChunkKind::Conflict) {
      *conflicted = true;
      return false;
    }
    int mb, me;
    bool oneToOne = c.kind == ChunkKind::Stable || c.kind == ChunkKind::SameChange ||
                    (c.kind == ChunkKind::TakeLeft && side == Branch::Left) ||
                    (c.kind == ChunkKind::TakeRight && side == Branch::Right);
    if (oneToOne) {
      mb = c.mergedBegin + (overlapB - sb);
      me = c.mergedBegin + (overlapE - sb);
    } else {
      // the side's lines were replaced wholesale; take the full chunk
      mb = c.mergedBegin;
      me = c.mergedEnd;
    }
    lo = lo < 0 ? mb : std::min(lo, mb);
    hi = std::max(hi, me);
  }
  if (!any || lo < 0 || hi <= lo) return false;
  *mBegin = lo + 1; // back to 1-based inclusive
  *mEnd = hi;
  return true;
}

} // namespace

ReplayOutcome replay_all(const Program& merged, const ProcessedRefList& bottomup,
                         const ReplayInputs& inputs) {
  ReplayOutcome out;
  out.program = merged;
  std::vector<Refactoring> remaining = bottomup.refs;
  const std::vector<Refactoring> original = bottomup.refs; // pre-threading descriptors

  for (size_t i = 0; i < remaining.size(); ++i) {
    const Refactoring r = remaining[i];
    try {
      ApplyResult res;
      if (r.kind == RefactoringKind::ExtractMethod) {
        res = [&] {
          auto ai = inputs.anchors.find({(int)r.branch, r.seq});
          if (ai == inputs.anchors.end()) missing("no inversion anchor for extract");
          const ExtractAnchor& anchor = ai->second;
          const MergedFileInfo* mf = nullptr;
          if (inputs.mergedFiles) {
            auto fi = inputs.mergedFiles->find(anchor.path);
            if (fi != inputs.mergedFiles->end()) mf = &fi->second;
          }
          if (!mf) missing("anchor file " + anchor.path + " not in merge");
          int mBegin = anchor.startLine, mEnd = anchor.endLine;
          if (!mf->chunks.empty()) {
            bool conflicted = false;
            if (!mapSpanToMerged(mf->chunks, r.branch, anchor.startLine, anchor.endLine,
                                 &mBegin, &mEnd, &conflicted)) {
              if (conflicted)
                missing("anchored span lies in a conflict block; extract left inlined");
              missing("anchored span not found in merged file");
            }
          } else if (mf->conflicted) {
            missing("anchor file carries conflict markers");
          }
          // merged lines -> host statement indices, via the pre-replay parse
          auto li = inputs.mergedLineIndex.find(anchor.path);
          if (li == inputs.mergedLineIndex.end()) missing("anchor file was not parsed");
          const Refactoring& orig = original[i];
          auto ci = li->second.bodySpans.find(containerOf(orig.before.qualifiedName));
          if (ci == li->second.bodySpans.end()) missing("host class not in merged parse");
          auto sit = ci->second.find(
              methodSigKey(orig.before.signature->name, orig.before.signature->paramTypes));
          if (sit == ci->second.end()) missing("host method not in merged parse");
          int i0 = -1, i1 = -1;
          for (size_t k = 0; k < sit->second.size(); ++k) {
            const StmtLineSpan& sp = sit->second[k];
            if (sp.endLine < mBegin || sp.startLine > mEnd) continue;
            if (i0 < 0) i0 = (int)k;
            i1 = (int)k;
          }
          if (i0 < 0) missing("anchored span covers no statements");
          Refactoring relaxed = r;
          relaxed.extract->rangeBegin = i0;
          relaxed.extract->rangeEnd = i1;
          Engine e(out.program);
          e.extractMethod(relaxed, /*strictContent=*/false);
          Program p = e.finish();
          std::set<std::string> changed = diffPaths(out.program, p);
          return ApplyResult{std::move(p), std::move(changed), {}};
        }();
      } else {
        res = applyRefactoring(out.program, r);
      }
      out.program = std::move(res.program);
      out.touchedPaths.insert(res.changedPaths.begin(), res.changedPaths.end());
      for (auto& w : res.warnings) out.log.notes.push_back(std::move(w));
      out.log.records.push_back({r, true, ""});
      auto remaps = remapsOf(r);
      if (!remaps.empty())
        for (size_t j = i + 1; j < remaining.size(); ++j)
          remaining[j] = rewriteThroughRemaps(remaining[j], remaps);
    } catch (const ApplyError& e) {
      out.log.records.push_back({r, false, e.what()});
    } catch (const BuildError& e) {
      out.log.records.push_back({r, false, e.what()});
    }
  }
  return out;
}

} // namespace refweave
