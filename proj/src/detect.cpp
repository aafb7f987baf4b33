//===--- detect.cpp - refactoring detection between program versions ------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/detect.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace refweave {

double tokenJaccard(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
  if (a.empty() && b.empty()) return 1.0;
  long inter = 0, uni = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      uni += ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      uni += ib->second;
      ++ib;
    } else {
      inter += std::min(ia->second, ib->second);
      uni += std::max(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return uni == 0 ? 1.0 : (double)inter / (double)uni;
}

namespace {

using TokenBag = std::map<std::string, int>;

void addStmtTokens(const Stmt& s, TokenBag& bag) {
  for (const auto& t : s.tokens) ++bag[t];
  for (const auto& c : s.children) addStmtTokens(c, bag);
}

TokenBag methodTokens(const MethodDecl& m) {
  TokenBag bag;
  ++bag[m.returnType];
  for (const auto& p : m.params) ++bag[p.type];
  for (const auto& s : m.body) addStmtTokens(s, bag);
  return bag;
}

TokenBag fieldTokens(const FieldDecl& f) {
  TokenBag bag;
  ++bag[f.type];
  for (const auto& t : f.init) ++bag[t];
  return bag;
}

void addClassTokens(const ClassDecl& c, TokenBag& bag) {
  if (c.superclass) ++bag[*c.superclass];
  for (const Member& m : c.members) {
    if (m.isField()) {
      ++bag[m.field().name];
      for (const auto& [t, n] : fieldTokens(m.field())) bag[t] += n;
    } else if (m.isMethod()) {
      ++bag[m.method().name];
      for (const auto& [t, n] : methodTokens(m.method())) bag[t] += n;
    } else {
      ++bag[m.cls().name];
      addClassTokens(m.cls(), bag);
    }
  }
}

TokenBag classTokens(const ClassDecl& c) {
  TokenBag bag;
  addClassTokens(c, bag);
  return bag;
}

struct MemberRef {
  std::string classQ; // qualified name in its own version
  std::string name;
  std::vector<std::string> types; // methods only
  bool isMethod = true;
  const MethodDecl* method = nullptr;
  const FieldDecl* field = nullptr;

  std::string key() const {
    std::string k = classQ + "#" + (isMethod ? "m:" : "f:") + name;
    for (const auto& t : types) k += "," + t;
    return k;
  }
  ElementId id() const {
    return isMethod ? methodId(classQ, name, types) : fieldId(classQ, name);
  }
  TokenBag tokens() const { return isMethod ? methodTokens(*method) : fieldTokens(*field); }
};

struct Detector {
  const Program& v1;
  const Program& v2;
  Branch branch;

  std::map<std::string, std::string> classMap; // v1 qname -> v2 qname
  std::set<std::string> matched2;              // v2 class qnames taken
  std::map<std::string, std::string> packageMap;
  std::vector<Refactoring> records;

  std::set<std::string> consumed1, consumed2; // member keys taken by a rule

  Detector(const Program& a, const Program& b, Branch br) : v1(a), v2(b), branch(br) {}

  void mapClasses(const std::string& q1, const std::string& q2) {
    classMap[q1] = q2;
    matched2.insert(q2);
    const ClassDecl* c1 = v1.findClass(q1);
    if (!c1) return;
    for (const Member& m : c1->members)
      if (m.isClass()) {
        std::string n1 = q1 + "." + m.cls().name;
        std::string n2 = q2 + "." + m.cls().name;
        if (!classMap.count(n1) && v2.hasClass(n2) && !matched2.count(n2))
          mapClasses(n1, n2);
      }
  }

  std::string imageOfContainer(const std::string& container) const {
    auto it = classMap.find(container);
    if (it != classMap.end()) return it->second;
    auto pit = packageMap.find(container);
    if (pit != packageMap.end()) return pit->second;
    return container;
  }

  std::vector<std::string> topLevelClasses(const Program& p, const std::string& pkg) const {
    std::vector<std::string> out;
    for (const SourceFile& f : p.files())
      if (f.unit.packageName == pkg)
        for (const ClassDecl& c : f.unit.classes) out.push_back(pkg + "." + c.name);
    std::sort(out.begin(), out.end());
    return out;
  }

  //--- rule 0: identical qualified names -------------------------------
  void trivialMatch() {
    for (const auto& q : v1.allClassQNames())
      if (v2.hasClass(q) && !classMap.count(q) && !matched2.count(q)) {
        classMap[q] = q;
        matched2.insert(q);
      }
  }

  //--- rule 1: package renames -----------------------------------------
  void packageRenames() {
    auto p1s = v1.packages();
    auto p2s = v2.packages();
    std::set<std::string> v2pkgs(p2s.begin(), p2s.end());
    std::set<std::string> v1pkgs(p1s.begin(), p1s.end());
    std::set<std::string> takenTargets;
    for (const auto& p1 : p1s) {
      if (v2pkgs.count(p1)) continue; // package still present
      std::string bestPkg;
      double bestSim = -1;
      for (const auto& p2 : p2s) {
        if (v1pkgs.count(p2) || takenTargets.count(p2)) continue;
        auto classes1 = topLevelClasses(v1, p1);
        if (classes1.empty()) continue;
        double total = 0;
        bool all = true;
        for (const auto& c1 : classes1) {
          std::string c2 = p2 + "." + leafName(c1);
          const ClassDecl* d2 = v2.findClass(c2);
          const ClassDecl* d1 = v1.findClass(c1);
          if (!d2 || matched2.count(c2)) { all = false; break; }
          double sim = tokenJaccard(classTokens(*d1), classTokens(*d2));
          if (sim < kSimilarityThreshold) { all = false; break; }
          total += sim;
        }
        if (!all) continue;
        double avg = total / (double)classes1.size();
        if (avg > bestSim || (avg == bestSim && p2 < bestPkg)) {
          bestSim = avg;
          bestPkg = p2;
        }
      }
      if (bestSim < 0) continue;
      takenTargets.insert(bestPkg);
      packageMap[p1] = bestPkg;
      Refactoring r;
      r.kind = RefactoringKind::RenamePackage;
      r.before = packageId(p1);
      r.after = packageId(bestPkg);
      records.push_back(r);
      for (const auto& c1 : topLevelClasses(v1, p1))
        mapClasses(c1, bestPkg + "." + leafName(c1));
    }
  }

  //--- rule 2: class moves and renames ----------------------------------
  void classMovesRenames() {
    std::vector<std::string> un1;
    for (const auto& q : v1.allClassQNames())
      if (!classMap.count(q)) un1.push_back(q);
    for (const auto& q1 : un1) {
      if (classMap.count(q1)) continue; // matched while recursing
      const ClassDecl* c1 = v1.findClass(q1);
      TokenBag b1 = classTokens(*c1);
      std::string best;
      double bestSim = -1;
      for (const auto& q2 : v2.allClassQNames()) {
        if (matched2.count(q2)) continue;
        const ClassDecl* c2 = v2.findClass(q2);
        double sim = tokenJaccard(b1, classTokens(*c2));
        if (sim < kSimilarityThreshold) continue;
        if (sim > bestSim || (sim == bestSim && q2 < best)) {
          bestSim = sim;
          best = q2;
        }
      }
      if (bestSim < 0) continue;
      bool sameName = leafName(q1) == leafName(best);
      bool sameContainer = imageOfContainer(containerOf(q1)) == containerOf(best);
      Refactoring r;
      r.before = classId(q1);
      r.after = classId(best);
      if (sameName && sameContainer) {
        // the class only moved with its container; no record
      } else {
        r.kind = sameName      ? RefactoringKind::MoveClass
                 : sameContainer ? RefactoringKind::RenameClass
                                 : RefactoringKind::MoveAndRenameClass;
        records.push_back(r);
      }
      mapClasses(q1, best);
    }
  }

  //--- member pools ------------------------------------------------------
  std::vector<MemberRef> membersOf(const Program& p, const std::string& classQ) const {
    std::vector<MemberRef> out;
    const ClassDecl* cls = p.findClass(classQ);
    if (!cls) return out;
    for (const Member& m : cls->members) {
      if (m.isMethod())
        out.push_back({classQ, m.method().name, m.method().paramTypes(), true, &m.method(), nullptr});
      else if (m.isField())
        out.push_back({classQ, m.field().name, {}, false, nullptr, &m.field()});
    }
    return out;
  }

  bool hasCounterpart(const Program& other, const std::string& otherClass,
                      const MemberRef& m) const {
    const ClassDecl* cls = other.findClass(otherClass);
    if (!cls) return false;
    for (const Member& mm : cls->members) {
      if (m.isMethod && mm.isMethod() && mm.method().name == m.name &&
          mm.method().paramTypes() == m.types)
        return true;
      if (!m.isMethod && mm.isField() && mm.field().name == m.name) return true;
    }
    return false;
  }

  std::vector<MemberRef> unmatched1() const {
    std::vector<MemberRef> out;
    for (const auto& q1 : sortedKeys())
      for (const MemberRef& m : membersOf(v1, q1))
        if (!consumed1.count(m.key()) && !hasCounterpart(v2, classMap.at(q1), m))
          out.push_back(m);
    // members of entirely unmatched v1 classes
    for (const auto& q1 : v1.allClassQNames())
      if (!classMap.count(q1))
        for (const MemberRef& m : membersOf(v1, q1))
          if (!consumed1.count(m.key())) out.push_back(m);
    return out;
  }

  std::vector<std::string> sortedKeys() const {
    std::vector<std::string> ks;
    for (const auto& [a, b] : classMap) ks.push_back(a);
    std::sort(ks.begin(), ks.end());
    return ks;
  }

  std::vector<MemberRef> unmatched2() const {
    std::vector<MemberRef> out;
    std::map<std::string, std::string> inverseMap;
    for (const auto& [a, b] : classMap) inverseMap[b] = a;
    for (const auto& q2 : v2.allClassQNames()) {
      auto it = inverseMap.find(q2);
      for (const MemberRef& m : membersOf(v2, q2)) {
        if (consumed2.count(m.key())) continue;
        if (it != inverseMap.end() && hasCounterpart(v1, it->second, m)) continue;
        out.push_back(m);
      }
    }
    return out;
  }

  //--- rule 3: pull up / push down ---------------------------------------
  std::string directSuper(const Program& p, const std::string& classQ) const {
    auto chain = p.superChain(classQ);
    return chain.empty() ? std::string() : chain.front();
  }

  void pullUpPushDown() {
    // pull up: a member appears in a superclass, copies vanish from
    // directly-extending subclasses
    for (const auto& q1 : sortedKeys()) {
      std::string q2 = classMap.at(q1);
      for (const MemberRef& m2 : membersOf(v2, q2)) {
        if (consumed2.count(m2.key())) continue;
        if (hasCounterpart(v1, q1, m2)) continue; // not new
        std::vector<MemberRef> copies;
        for (const auto& subQ1 : sortedKeys()) {
          if (directSuper(v1, subQ1) != q1) continue;
          for (const MemberRef& m1 : membersOf(v1, subQ1)) {
            if (consumed1.count(m1.key())) continue;
            if (m1.isMethod != m2.isMethod || m1.name != m2.name || m1.types != m2.types)
              continue;
            if (hasCounterpart(v2, classMap.at(subQ1), m1)) continue; // still there
            if (tokenJaccard(m1.tokens(), m2.tokens()) < kSimilarityThreshold) continue;
            copies.push_back(m1);
          }
        }
        if (copies.empty()) continue;
        std::vector<std::string> classes;
        for (const auto& c : copies) classes.push_back(imageOfContainer(c.classQ));
        std::sort(classes.begin(), classes.end());
        Refactoring r;
        r.kind = m2.isMethod ? RefactoringKind::PullUpMethod : RefactoringKind::PullUpField;
        r.before = copies.front().id();
        r.after = m2.id();
        r.pullPush = PullPushPayload{classes};
        records.push_back(r);
        for (const auto& c : copies) consumed1.insert(c.key());
        consumed2.insert(m2.key());
      }
    }
    // push down: a member vanishes from a superclass, copies appear in
    // directly-extending subclasses
    for (const auto& q1 : sortedKeys()) {
      std::string q2 = classMap.at(q1);
      for (const MemberRef& m1 : membersOf(v1, q1)) {
        if (consumed1.count(m1.key())) continue;
        if (hasCounterpart(v2, q2, m1)) continue; // still there
        std::vector<MemberRef> targets;
        for (const auto& q2sub : v2.allClassQNames()) {
          if (directSuper(v2, q2sub) != q2) continue;
          for (const MemberRef& m2 : membersOf(v2, q2sub)) {
            if (consumed2.count(m2.key())) continue;
            if (m1.isMethod != m2.isMethod || m1.name != m2.name || m1.types != m2.types)
              continue;
            std::map<std::string, std::string> inv;
            for (const auto& [a, b] : classMap) inv[b] = a;
            auto src = inv.find(q2sub);
            if (src != inv.end() && hasCounterpart(v1, src->second, m2)) continue;
            if (tokenJaccard(m1.tokens(), m2.tokens()) < kSimilarityThreshold) continue;
            targets.push_back(m2);
          }
        }
        if (targets.empty()) continue;
        std::sort(targets.begin(), targets.end(),
                  [](const MemberRef& a, const MemberRef& b) { return a.classQ < b.classQ; });
        std::vector<std::string> classes;
        for (const auto& t : targets) classes.push_back(t.classQ);
        Refactoring r;
        r.kind = m1.isMethod ? RefactoringKind::PushDownMethod : RefactoringKind::PushDownField;
        r.before = m1.id();
        r.after = targets.front().id();
        r.pullPush = PullPushPayload{classes};
        records.push_back(r);
        consumed1.insert(m1.key());
        for (const auto& t : targets) consumed2.insert(t.key());
      }
    }
  }

  //--- rule 4: member moves and renames ----------------------------------
  void memberMovesRenames() {
    auto pool2 = unmatched2();
    for (const MemberRef& m1 : unmatched1()) {
      if (consumed1.count(m1.key())) continue;
      const MemberRef* best = nullptr;
      double bestSim = -1;
      TokenBag b1 = m1.tokens();
      for (const MemberRef& m2 : pool2) {
        if (consumed2.count(m2.key())) continue;
        if (m2.isMethod != m1.isMethod) continue;
        if (m1.isMethod && m2.types != m1.types) continue;
        double sim = tokenJaccard(b1, m2.tokens());
        if (sim < kSimilarityThreshold) continue;
        if (sim > bestSim || (sim == bestSim && best && m2.classQ + "." + m2.name <
                                                            best->classQ + "." + best->name)) {
          bestSim = sim;
          best = &m2;
        }
      }
      if (!best) continue;
      bool sameName = m1.name == best->name;
      bool sameClass = imageOfContainer(m1.classQ) == best->classQ;
      if (sameName && sameClass) continue; // carried by its container
      Refactoring r;
      if (m1.isMethod)
        r.kind = sameName    ? RefactoringKind::MoveMethod
                 : sameClass ? RefactoringKind::RenameMethod
                             : RefactoringKind::MoveAndRenameMethod;
      else
        r.kind = sameName    ? RefactoringKind::MoveField
                 : sameClass ? RefactoringKind::RenameField
                             : RefactoringKind::MoveAndRenameField;
      r.before = m1.id();
      r.after = best->id();
      records.push_back(r);
      consumed1.insert(m1.key());
      consumed2.insert(best->key());
    }
  }

  //--- rule 5: extract / inline ------------------------------------------
  static int commonPrefix(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
    int n = 0;
    while (n < (int)a.size() && n < (int)b.size() && a[n] == b[n]) ++n;
    return n;
  }
  static int commonSuffix(const std::vector<Stmt>& a, const std::vector<Stmt>& b, int prefix) {
    int n = 0;
    while (n < (int)a.size() - prefix && n < (int)b.size() - prefix &&
           a[a.size() - 1 - n] == b[b.size() - 1 - n])
      ++n;
    return n;
  }

  static bool isPureCallLine(const Stmt& s, std::string* name, std::vector<TokenSeq>* args) {
    if (s.kind != Stmt::Kind::Line || s.hasTrailingBlock) return false;
    const TokenSeq& t = s.tokens;
    if (t.size() < 3 || t[1] != "(" || t.back() != ")") return false;
    if (t[0].empty() || !(std::isalpha((unsigned char)t[0][0]) || t[0][0] == '_')) return false;
    int depth = 0;
    TokenSeq cur;
    std::vector<TokenSeq> out;
    for (size_t i = 1; i < t.size(); ++i) {
      if (t[i] == "(") {
        if (depth++ > 0) cur.push_back(t[i]);
        continue;
      }
      if (t[i] == ")") {
        if (--depth == 0) {
          if (i + 1 != t.size()) return false;
          break;
        }
        cur.push_back(t[i]);
        continue;
      }
      if (t[i] == "," && depth == 1) {
        out.push_back(cur);
        cur.clear();
        continue;
      }
      cur.push_back(t[i]);
    }
    if (!cur.empty()) out.push_back(cur);
    *name = t[0];
    *args = out;
    return true;
  }

  static void substStmt(Stmt& s, const std::vector<std::pair<std::string, TokenSeq>>& sigma) {
    TokenSeq out;
    for (size_t i = 0; i < s.tokens.size(); ++i) {
      bool replaced = false;
      bool afterDot = i > 0 && s.tokens[i - 1] == ".";
      if (!afterDot) {
        for (const auto& [p, argToks] : sigma)
          if (s.tokens[i] == p) {
            out.insert(out.end(), argToks.begin(), argToks.end());
            replaced = true;
            break;
          }
      }
      if (!replaced) out.push_back(s.tokens[i]);
    }
    s.tokens = std::move(out);
    for (Stmt& c : s.children) substStmt(c, sigma);
  }

  static std::vector<Stmt> substituted(const std::vector<Stmt>& body,
                                       const std::vector<std::pair<std::string, TokenSeq>>& sigma) {
    std::vector<Stmt> out = body;
    for (Stmt& s : out) substStmt(s, sigma);
    return out;
  }

  void extractInline() {
    for (const auto& q1 : sortedKeys()) {
      std::string q2 = classMap.at(q1);
      const ClassDecl* c1 = v1.findClass(q1);
      const ClassDecl* c2 = v2.findClass(q2);
      if (!c1 || !c2) continue;
      for (const Member& mm : c1->members) {
        if (!mm.isMethod()) continue;
        const MethodDecl& h1 = mm.method();
        const MethodDecl* h2 = nullptr;
        for (const Member& m2 : c2->members)
          if (m2.isMethod() && m2.method().name == h1.name &&
              m2.method().paramTypes() == h1.paramTypes())
            h2 = &m2.method();
        if (!h2 || h1.body == h2->body) continue;
        int a = commonPrefix(h1.body, h2->body);
        int b = commonSuffix(h1.body, h2->body, a);
        int len1 = (int)h1.body.size(), len2 = (int)h2->body.size();
        // extract: v2 middle is exactly one call to a new method
        if (len2 - a - b == 1 && len1 - a - b >= 1) {
          std::string name;
          std::vector<TokenSeq> args;
          if (isPureCallLine(h2->body[a], &name, &args)) {
            const MethodDecl* m2 = nullptr;
            for (const Member& cand : c2->members)
              if (cand.isMethod() && cand.method().name == name &&
                  cand.method().params.size() == args.size())
                m2 = &cand.method();
            MemberRef m2ref{q2, name, m2 ? m2->paramTypes() : std::vector<std::string>{}, true,
                            m2, nullptr};
            if (m2 && !hasCounterpart(v1, q1, m2ref) && !consumed2.count(m2ref.key())) {
              std::vector<std::pair<std::string, TokenSeq>> sigma;
              for (size_t k = 0; k < args.size(); ++k)
                sigma.push_back({m2->params[k].name, args[k]});
              std::vector<Stmt> middle1(h1.body.begin() + a, h1.body.end() - b);
              if (substituted(m2->body, sigma) == middle1) {
                Refactoring r;
                r.kind = RefactoringKind::ExtractMethod;
                r.before = methodId(q1, h1.name, h1.paramTypes());
                r.after = methodId(q2, name, m2->paramTypes());
                ExtractPayload pl;
                pl.host = r.before;
                pl.rangeBegin = a;
                pl.rangeEnd = a + (int)middle1.size() - 1;
                pl.binding = sigma;
                pl.params = m2->params;
                pl.returnType = m2->returnType;
                pl.isStatic = m2->isStatic;
                pl.body = m2->body;
                r.extract = pl;
                records.push_back(r);
                consumed2.insert(m2ref.key());
                continue;
              }
            }
          }
        }
        // inline: v1 middle is exactly one call to a method that disappeared
        if (len1 - a - b == 1 && len2 - a - b >= 1) {
          std::string name;
          std::vector<TokenSeq> args;
          if (!isPureCallLine(h1.body[a], &name, &args)) continue;
          const MethodDecl* m1 = nullptr;
          for (const Member& cand : c1->members)
            if (cand.isMethod() && cand.method().name == name &&
                cand.method().params.size() == args.size())
              m1 = &cand.method();
          if (!m1) continue;
          MemberRef m1ref{q1, name, m1->paramTypes(), true, m1, nullptr};
          if (hasCounterpart(v2, q2, m1ref) || consumed1.count(m1ref.key())) continue;
          std::vector<std::pair<std::string, TokenSeq>> sigma;
          for (size_t k = 0; k < args.size(); ++k)
            sigma.push_back({m1->params[k].name, args[k]});
          std::vector<Stmt> middle2(h2->body.begin() + a, h2->body.end() - b);
          if (substituted(m1->body, sigma) != middle2) continue;
          Refactoring r;
          r.kind = RefactoringKind::InlineMethod;
          r.before = methodId(q1, name, m1->paramTypes());
          r.after = methodId(q2, h1.name, h1.paramTypes());
          ExtractPayload pl;
          pl.host = r.after;
          pl.rangeBegin = a;
          pl.rangeEnd = a + (int)middle2.size() - 1;
          pl.binding = sigma;
          pl.params = m1->params;
          pl.returnType = m1->returnType;
          pl.isStatic = m1->isStatic;
          pl.body = m1->body;
          r.extract = pl;
          records.push_back(r);
          consumed1.insert(m1ref.key());
        }
      }
    }
  }

  //--- rule 6: parameter renames ------------------------------------------
  void parameterRenames() {
    for (const auto& q1 : sortedKeys()) {
      std::string q2 = classMap.at(q1);
      const ClassDecl* c1 = v1.findClass(q1);
      const ClassDecl* c2 = v2.findClass(q2);
      if (!c1 || !c2) continue;
      for (const Member& mm : c1->members) {
        if (!mm.isMethod()) continue;
        const MethodDecl& m1 = mm.method();
        MemberRef ref1{q1, m1.name, m1.paramTypes(), true, &m1, nullptr};
        if (consumed1.count(ref1.key())) continue;
        const MethodDecl* m2 = nullptr;
        for (const Member& cand : c2->members)
          if (cand.isMethod() && cand.method().name == m1.name &&
              cand.method().paramTypes() == m1.paramTypes())
            m2 = &cand.method();
        if (!m2) continue;
        std::vector<std::pair<std::string, TokenSeq>> sigma;
        std::vector<std::pair<std::string, std::string>> renamed;
        for (size_t k = 0; k < m1.params.size(); ++k)
          if (m1.params[k].name != m2->params[k].name) {
            sigma.push_back({m1.params[k].name, {m2->params[k].name}});
            renamed.push_back({m1.params[k].name, m2->params[k].name});
          }
        if (renamed.empty()) continue;
        if (substituted(m1.body, sigma) != m2->body) continue;
        for (const auto& [oldN, newN] : renamed) {
          Refactoring r;
          r.kind = RefactoringKind::RenameParameter;
          ElementId mid1 = methodId(q1, m1.name, m1.paramTypes());
          ElementId mid2 = methodId(q2, m1.name, m1.paramTypes());
          r.before = parameterId(mid1, oldN);
          r.after = parameterId(mid2, newN);
          records.push_back(r);
        }
      }
    }
  }

  std::vector<Refactoring> run(int firstSeq) {
    trivialMatch();
    packageRenames();
    classMovesRenames();
    pullUpPushDown();
    memberMovesRenames();
    extractInline();
    parameterRenames();
    std::sort(records.begin(), records.end(), [](const Refactoring& a, const Refactoring& b) {
      if (granularity(a.kind) != granularity(b.kind))
        return granularity(a.kind) < granularity(b.kind);
      if (a.before.qualifiedName != b.before.qualifiedName)
        return a.before.qualifiedName < b.before.qualifiedName;
      if (a.kind != b.kind) return (int)a.kind < (int)b.kind;
      return a.after.qualifiedName < b.after.qualifiedName;
    });
    int seq = firstSeq;
    for (auto& r : records) {
      r.branch = branch;
      r.seq = seq++;
    }
    return std::move(records);
  }
};

} // namespace

std::vector<Refactoring> detect_between(const Program& v1, const Program& v2, Branch branch,
                                        int firstSeq) {
  Detector d(v1, v2, branch);
  return d.run(firstSeq);
}

std::vector<Refactoring> detect_along(const std::vector<Program>& commits, Branch branch) {
  std::vector<Refactoring> all;
  int seq = 1;
  for (size_t i = 1; i < commits.size(); ++i) {
    auto part = detect_between(commits[i - 1], commits[i], branch, seq);
    seq += (int)part.size();
    for (auto& r : part) all.push_back(std::move(r));
  }
  return all;
}

} // namespace refweave
