//===--- program.cpp - resolved MJ program --------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/program.hpp"

#include <algorithm>

namespace refweave {

BuildError::BuildError(Kind kind, const std::string& detail)
    : std::runtime_error(std::string(kind == Kind::DuplicateDeclaration
                                         ? "duplicate declaration: "
                                         : "path mismatch: ") +
                         detail),
      kind(kind), detail(detail) {}

ElementId packageId(const std::string& dotted) { return {ElementKind::Package, dotted, {}}; }
ElementId classId(const std::string& qname) { return {ElementKind::Class, qname, {}}; }

ElementId methodId(const std::string& classQName, const std::string& name,
                   std::vector<std::string> paramTypes) {
  return {ElementKind::Method, classQName + "." + name, MethodSig{name, std::move(paramTypes)}};
}

ElementId fieldId(const std::string& classQName, const std::string& name) {
  return {ElementKind::Field, classQName + "." + name, {}};
}

ElementId parameterId(const ElementId& method, const std::string& paramName) {
  return {ElementKind::Parameter, method.qualifiedName + "." + paramName, method.signature};
}

std::string idString(const ElementId& id) {
  auto sig = [&](const MethodSig& s) {
    std::string r = "(";
    for (size_t i = 0; i < s.paramTypes.size(); ++i) {
      if (i) r += ",";
      r += s.paramTypes[i];
    }
    return r + ")";
  };
  switch (id.kind) {
  case ElementKind::Package: return "Package:" + id.qualifiedName;
  case ElementKind::Class: return "Class:" + id.qualifiedName;
  case ElementKind::Field: return "Field:" + id.qualifiedName;
  case ElementKind::Method: return "Method:" + id.qualifiedName + sig(*id.signature);
  case ElementKind::Parameter: {
    std::string methodPart = containerOf(id.qualifiedName);
    return "Parameter:" + methodPart + sig(*id.signature) + "." + leafName(id.qualifiedName);
  }
  }
  return "?";
}

std::vector<std::string> splitDotted(const std::string& dotted) {
  std::vector<std::string> segs;
  size_t start = 0;
  while (true) {
    size_t dot = dotted.find('.', start);
    if (dot == std::string::npos) {
      segs.push_back(dotted.substr(start));
      return segs;
    }
    segs.push_back(dotted.substr(start, dot - start));
    start = dot + 1;
  }
}

std::string joinDotted(const std::vector<std::string>& segments) {
  std::string s;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (i) s += ".";
    s += segments[i];
  }
  return s;
}

std::string leafName(const std::string& dotted) {
  size_t dot = dotted.rfind('.');
  return dot == std::string::npos ? dotted : dotted.substr(dot + 1);
}

std::string containerOf(const std::string& dotted) {
  size_t dot = dotted.rfind('.');
  return dot == std::string::npos ? std::string() : dotted.substr(0, dot);
}

bool isQNamePrefix(const std::string& prefix, const std::string& qname) {
  if (qname.size() < prefix.size()) return false;
  if (qname.compare(0, prefix.size(), prefix) != 0) return false;
  return qname.size() == prefix.size() || qname[prefix.size()] == '.';
}

std::string canonicalPath(const std::string& packageName, const std::string& firstClassName) {
  std::string dir = packageName;
  std::replace(dir.begin(), dir.end(), '.', '/');
  return dir + "/" + firstClassName + ".mj";
}

namespace {

void indexClass(const std::string& filePath, const std::string& containerQName,
                const ClassDecl& cls, SymbolTable& table) {
  std::string qname = containerQName.empty() ? cls.name : containerQName + "." + cls.name;
  ElementId cid = classId(qname);
  if (table.count(cid))
    throw BuildError(BuildError::Kind::DuplicateDeclaration, idString(cid));
  table[cid] = {filePath, qname};
  for (const Member& m : cls.members) {
    if (m.isField()) {
      ElementId fid = fieldId(qname, m.field().name);
      if (table.count(fid))
        throw BuildError(BuildError::Kind::DuplicateDeclaration, idString(fid));
      table[fid] = {filePath, qname};
    } else if (m.isMethod()) {
      const MethodDecl& md = m.method();
      ElementId mid = methodId(qname, md.name, md.paramTypes());
      if (table.count(mid))
        throw BuildError(BuildError::Kind::DuplicateDeclaration, idString(mid));
      table[mid] = {filePath, qname};
      for (const Param& p : md.params) {
        ElementId pid = parameterId(mid, p.name);
        table[pid] = {filePath, qname};
      }
    } else {
      indexClass(filePath, qname, m.cls(), table);
    }
  }
}

} // namespace

Program Program::build(std::vector<SourceFile> files) {
  std::sort(files.begin(), files.end(),
            [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
  Program p;
  std::set<std::string> paths;
  for (const SourceFile& f : files) {
    if (!paths.insert(f.path).second)
      throw BuildError(BuildError::Kind::DuplicateDeclaration, "file " + f.path);
    if (f.unit.classes.empty())
      throw BuildError(BuildError::Kind::PathMismatch, f.path + " has no classes");
    std::string expected = canonicalPath(f.unit.packageName, f.unit.classes.front().name);
    if (f.path != expected)
      throw BuildError(BuildError::Kind::PathMismatch,
                       f.path + " (expected " + expected + ")");
  }
  for (const SourceFile& f : files) {
    ElementId pid = packageId(f.unit.packageName);
    p.symbols_[pid] = {f.path, ""};
    for (const ClassDecl& c : f.unit.classes)
      indexClass(f.path, f.unit.packageName, c, p.symbols_);
  }
  p.files_ = std::move(files);
  return p;
}

const SourceFile* Program::fileAt(const std::string& path) const {
  for (const auto& f : files_)
    if (f.path == path) return &f;
  return nullptr;
}

bool Program::hasClass(const std::string& qname) const {
  return symbols_.count(classId(qname)) != 0;
}

namespace {

const ClassDecl* findInClass(const ClassDecl& cls, const std::string& qname,
                             const std::string& selfQName) {
  if (selfQName == qname) return &cls;
  if (!isQNamePrefix(selfQName, qname)) return nullptr;
  for (const Member& m : cls.members)
    if (m.isClass())
      if (const ClassDecl* r = findInClass(m.cls(), qname, selfQName + "." + m.cls().name))
        return r;
  return nullptr;
}

} // namespace

const ClassDecl* Program::findClass(const std::string& qname) const {
  auto it = symbols_.find(classId(qname));
  if (it == symbols_.end()) return nullptr;
  const SourceFile* f = fileAt(it->second.filePath);
  if (!f) return nullptr;
  for (const ClassDecl& c : f->unit.classes)
    if (const ClassDecl* r = findInClass(c, qname, f->unit.packageName + "." + c.name))
      return r;
  return nullptr;
}

const SourceFile* Program::fileOfClass(const std::string& qname) const {
  auto it = symbols_.find(classId(qname));
  if (it == symbols_.end()) return nullptr;
  return fileAt(it->second.filePath);
}

std::vector<std::string> Program::allClassQNames() const {
  std::vector<std::string> names;
  for (const auto& [id, site] : symbols_)
    if (id.kind == ElementKind::Class) names.push_back(id.qualifiedName);
  return names;
}

std::vector<std::string> Program::packages() const {
  std::set<std::string> pkgs;
  for (const auto& f : files_) pkgs.insert(f.unit.packageName);
  return {pkgs.begin(), pkgs.end()};
}

const MethodDecl* Program::findMethod(const ElementId& id) const {
  if (id.kind != ElementKind::Method || !id.signature) return nullptr;
  const ClassDecl* cls = findClass(containerOf(id.qualifiedName));
  if (!cls) return nullptr;
  for (const Member& m : cls->members)
    if (m.isMethod() && m.method().name == id.signature->name &&
        m.method().paramTypes() == id.signature->paramTypes)
      return &m.method();
  return nullptr;
}

const FieldDecl* Program::findField(const ElementId& id) const {
  if (id.kind != ElementKind::Field) return nullptr;
  const ClassDecl* cls = findClass(containerOf(id.qualifiedName));
  if (!cls) return nullptr;
  for (const Member& m : cls->members)
    if (m.isField() && m.field().name == leafName(id.qualifiedName)) return &m.field();
  return nullptr;
}

std::vector<std::string> Program::superChain(const std::string& classQName) const {
  std::vector<std::string> chain;
  std::set<std::string> seen{classQName};
  std::string current = classQName;
  while (true) {
    const ClassDecl* cls = findClass(current);
    if (!cls || !cls->superclass) break;
    const SourceFile* f = fileOfClass(current);
    auto super = resolve(*this, f->path, *cls->superclass);
    if (!super || super->kind != ElementKind::Class) break;
    if (!seen.insert(super->qualifiedName).second) break; // cycle guard
    chain.push_back(super->qualifiedName);
    current = super->qualifiedName;
  }
  return chain;
}

bool Program::inherits(const std::string& subQName, const std::string& superQName) const {
  auto chain = superChain(subQName);
  return std::find(chain.begin(), chain.end(), superQName) != chain.end();
}

std::optional<ElementId> resolve(const Program& program, const std::string& fromFilePath,
                                 const std::string& name,
                                 std::vector<std::string>* ambiguityLog) {
  const SourceFile* file = program.fileAt(fromFilePath);
  if (!file) return std::nullopt;
  // (1) exact dotted match
  if (program.hasClass(name)) return classId(name);
  auto segs = splitDotted(name);
  if (segs.size() == 1) {
    // (2) unique import with matching last segment
    std::vector<std::string> hits;
    for (const auto& imp : file->unit.imports)
      if (leafName(imp) == name) hits.push_back(imp);
    if (hits.size() > 1) {
      if (ambiguityLog)
        ambiguityLog->push_back("ambiguous name " + name + " in " + fromFilePath);
      return std::nullopt;
    }
    if (hits.size() == 1 && program.hasClass(hits.front())) return classId(hits.front());
    // (3) same package
    std::string pkgQName = file->unit.packageName + "." + name;
    if (program.hasClass(pkgQName)) return classId(pkgQName);
    return std::nullopt;
  }
  // dotted: resolve the head, then descend
  auto head = resolve(program, fromFilePath, segs.front(), ambiguityLog);
  if (!head) return std::nullopt;
  std::string qname = head->qualifiedName;
  for (size_t i = 1; i < segs.size(); ++i) qname += "." + segs[i];
  if (program.hasClass(qname)) return classId(qname);
  return std::nullopt;
}

} // namespace refweave
