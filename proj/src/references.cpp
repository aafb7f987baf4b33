//===--- references.cpp - symbol reference finding ------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/references.hpp"

#include <cctype>

namespace refweave {

namespace {

bool isIdentToken(const std::string& t) {
  if (t.empty()) return false;
  if (!(std::isalpha((unsigned char)t[0]) || t[0] == '_')) return false;
  for (char c : t)
    if (!(std::isalnum((unsigned char)c) || c == '_')) return false;
  return true;
}

// maximal IDENT ("." IDENT)* run starting at i; returns one-past-the-end
size_t runEnd(const TokenSeq& toks, size_t i) {
  size_t j = i + 1;
  while (j + 1 < toks.size() && toks[j] == "." && isIdentToken(toks[j + 1])) j += 2;
  return j;
}

} // namespace

int callArity(const TokenSeq& tokens, size_t openParen) {
  if (openParen >= tokens.size() || tokens[openParen] != "(") return -1;
  int depth = 1;
  int commas = 0;
  bool any = false;
  for (size_t i = openParen + 1; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    if (t == "(") ++depth;
    else if (t == ")") {
      if (--depth == 0) return any ? commas + 1 : 0;
    } else if (t == "," && depth == 1) ++commas;
    if (depth >= 1 && t != ")") any = true;
  }
  return -1;
}

std::optional<ElementId> resolveCall(const Program& program, const std::string& classQName,
                                     const std::string& name, int arity) {
  std::vector<std::string> chain{classQName};
  for (const auto& s : program.superChain(classQName)) chain.push_back(s);
  for (const auto& cq : chain) {
    const ClassDecl* cls = program.findClass(cq);
    if (!cls) continue;
    std::vector<const MethodDecl*> named;
    for (const Member& m : cls->members)
      if (m.isMethod() && m.method().name == name) named.push_back(&m.method());
    if (named.empty()) continue;
    if (named.size() == 1) return methodId(cq, name, named.front()->paramTypes());
    for (const MethodDecl* md : named)
      if ((int)md->params.size() == arity) return methodId(cq, name, md->paramTypes());
    return std::nullopt; // overloads exist, none matches the arity
  }
  return std::nullopt;
}

std::optional<ElementId> resolveFieldUse(const Program& program, const std::string& classQName,
                                         const std::string& name) {
  std::vector<std::string> chain{classQName};
  for (const auto& s : program.superChain(classQName)) chain.push_back(s);
  for (const auto& cq : chain) {
    const ClassDecl* cls = program.findClass(cq);
    if (!cls) continue;
    for (const Member& m : cls->members)
      if (m.isField() && m.field().name == name) return fieldId(cq, name);
  }
  return std::nullopt;
}

std::vector<TokenRef> classifyTokens(const Program& program, const ScopeCtx& ctx,
                                     const TokenSeq& toks,
                                     std::vector<std::string>* ambiguityLog) {
  std::vector<TokenRef> refs;
  const size_t n = toks.size();
  auto isParam = [&](const std::string& t) {
    if (!ctx.method) return false;
    for (const auto& p : ctx.method->params)
      if (p.name == t) return true;
    return false;
  };
  auto resolveClassName = [&](const std::string& dotted) -> std::optional<ElementId> {
    auto id = resolve(program, ctx.filePath, dotted, ambiguityLog);
    if (id && id->kind == ElementKind::Class) return id;
    return std::nullopt;
  };

  size_t i = 0;
  while (i < n) {
    if (!isIdentToken(toks[i])) { ++i; continue; }
    if (i > 0 && toks[i - 1] == ".") { ++i; continue; } // member of unknown value
    size_t end = runEnd(toks, i);
    bool hasDot = end > i + 1;
    if (!hasDot) {
      const std::string& t = toks[i];
      bool call = i + 1 < n && toks[i + 1] == "(";
      if (call) {
        int arity = callArity(toks, i + 1);
        if (auto m = resolveCall(program, ctx.classQName, t, arity)) {
          refs.push_back({(int)i, 1, (int)i, *m, std::nullopt, 0});
        } else if (auto c = resolveClassName(t)) {
          refs.push_back({(int)i, 1, (int)i, *c, std::nullopt, 0}); // constructor-style
        }
      } else if (isParam(t)) {
        ElementId mid = methodId(ctx.classQName, ctx.method->name, ctx.method->paramTypes());
        refs.push_back({(int)i, 1, (int)i, parameterId(mid, t), std::nullopt, 0});
      } else if (auto f = resolveFieldUse(program, ctx.classQName, t)) {
        refs.push_back({(int)i, 1, (int)i, *f, std::nullopt, 0});
      } else if (auto c = resolveClassName(t)) {
        refs.push_back({(int)i, 1, (int)i, *c, std::nullopt, 0});
      }
      ++i;
      continue;
    }
    // dotted run: segments at i, i+2, i+4, ...
    std::vector<std::string> segs;
    for (size_t k = i; k < end; k += 2) segs.push_back(toks[k]);
    bool emitted = false;
    for (size_t len = segs.size(); len >= 1 && !emitted; --len) {
      std::string dotted = segs[0];
      for (size_t k = 1; k < len; ++k) dotted += "." + segs[k];
      auto K = resolveClassName(dotted);
      if (!K) continue;
      int qualLen = (int)(2 * len - 1);
      if (len == segs.size()) {
        refs.push_back({(int)i, qualLen, (int)i, *K, std::nullopt, 0});
      } else {
        size_t nameIdx = i + 2 * len; // segment just after the class prefix
        const std::string& member = toks[nameIdx];
        bool call = nameIdx + 1 < n && toks[nameIdx + 1] == "(";
        // anything past `member` in the run is an unresolved suffix
        if (call) {
          int arity = callArity(toks, nameIdx + 1);
          if (auto m = resolveCall(program, K->qualifiedName, member, arity))
            refs.push_back({(int)i, (int)(nameIdx - i + 1), (int)nameIdx, *m, K, qualLen});
          else
            refs.push_back({(int)i, qualLen, (int)i, *K, std::nullopt, 0});
        } else if (auto f = resolveFieldUse(program, K->qualifiedName, member)) {
          refs.push_back({(int)i, (int)(nameIdx - i + 1), (int)nameIdx, *f, K, qualLen});
        } else {
          refs.push_back({(int)i, qualLen, (int)i, *K, std::nullopt, 0});
        }
      }
      emitted = true;
    }
    if (!emitted) {
      // no class prefix; classify the head alone, skip the member suffix
      const std::string& t = toks[i];
      if (isParam(t)) {
        ElementId mid = methodId(ctx.classQName, ctx.method->name, ctx.method->paramTypes());
        refs.push_back({(int)i, 1, (int)i, parameterId(mid, t), std::nullopt, 0});
      } else if (auto f = resolveFieldUse(program, ctx.classQName, t)) {
        refs.push_back({(int)i, 1, (int)i, *f, std::nullopt, 0});
      }
    }
    i = end;
  }
  return refs;
}

namespace {

template <typename Files, typename Fn>
void walkStmts(Files& stmts, const ScopeCtx& ctx, const std::string& prefix, const Fn& fn) {
  int idx = 0;
  for (auto& s : stmts) {
    std::string where = prefix + "[" + std::to_string(idx) + "]";
    if (s.kind == Stmt::Kind::Line && !s.tokens.empty()) {
      ScopeCtx c = ctx;
      c.where = where;
      fn(c, s.tokens);
    }
    if (!s.children.empty()) walkStmts(s.children, ctx, where, fn);
    ++idx;
  }
}

template <typename ClassT, typename Fn>
void walkClass(ClassT& cls, const std::string& qname, const std::string& filePath, const Fn& fn) {
  for (auto& m : cls.members) {
    if (m.isField()) {
      auto& fd = m.field();
      if (!fd.init.empty()) {
        ScopeCtx c{filePath, qname, nullptr, qname + "." + fd.name + ".init"};
        fn(c, fd.init);
      }
    } else if (m.isMethod()) {
      auto& md = m.method();
      ScopeCtx c{filePath, qname, &md, ""};
      walkStmts(md.body, c, qname + "." + md.name + ".body", fn);
    } else {
      walkClass(m.cls(), qname + "." + m.cls().name, filePath, fn);
    }
  }
}

} // namespace

void forEachTokenSeq(const Program& program,
                     const std::function<void(const ScopeCtx&, const TokenSeq&)>& fn) {
  for (const SourceFile& f : program.files())
    for (const ClassDecl& c : f.unit.classes)
      walkClass(c, f.unit.packageName + "." + c.name, f.path,
                [&](const ScopeCtx& ctx, const TokenSeq& toks) { fn(ctx, toks); });
}

void forEachTokenSeqMut(std::vector<SourceFile>& files,
                        const std::function<void(const ScopeCtx&, TokenSeq&)>& fn) {
  for (SourceFile& f : files)
    for (ClassDecl& c : f.unit.classes)
      walkClass(c, f.unit.packageName + "." + c.name, f.path,
                [&](const ScopeCtx& ctx, TokenSeq& toks) { fn(ctx, toks); });
}

std::vector<RefSite> find_references(const Program& program, const ElementId& id) {
  if (!program.symbols().count(id)) throw UnknownElement(id);
  std::vector<RefSite> sites;
  forEachTokenSeq(program, [&](const ScopeCtx& ctx, const TokenSeq& toks) {
    for (const TokenRef& r : classifyTokens(program, ctx, toks)) {
      if (r.target == id)
        sites.push_back({ctx.filePath, ctx.where, r.index, r.length});
      else if (id.kind == ElementKind::Class && r.qualifier && *r.qualifier == id)
        sites.push_back({ctx.filePath, ctx.where, r.index, r.qualifierLen});
    }
  });
  if (id.kind != ElementKind::Class) return sites;
  // declaration slots reference classes too
  for (const SourceFile& f : program.files()) {
    for (size_t i = 0; i < f.unit.imports.size(); ++i)
      if (f.unit.imports[i] == id.qualifiedName)
        sites.push_back({f.path, "import[" + std::to_string(i) + "]", -1, 0});
    std::function<void(const ClassDecl&, const std::string&)> scan =
        [&](const ClassDecl& cls, const std::string& qname) {
          auto slotRefs = [&](const std::string& slot, const std::string& where) {
            auto t = resolve(program, f.path, slot);
            if (t && *t == id) sites.push_back({f.path, where, -1, 0});
          };
          if (cls.superclass) slotRefs(*cls.superclass, qname + ".extends");
          for (const Member& m : cls.members) {
            if (m.isField()) slotRefs(m.field().type, qname + "." + m.field().name + ".type");
            else if (m.isMethod()) {
              const MethodDecl& md = m.method();
              slotRefs(md.returnType, qname + "." + md.name + ".return");
              for (const Param& p : md.params)
                slotRefs(p.type, qname + "." + md.name + "." + p.name + ".type");
            } else {
              scan(m.cls(), qname + "." + m.cls().name);
            }
          }
        };
    for (const ClassDecl& c : f.unit.classes) scan(c, f.unit.packageName + "." + c.name);
  }
  return sites;
}

} // namespace refweave
