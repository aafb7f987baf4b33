//===--- parse.cpp - MJ lexer and parser ----------------------------------===//
//
// Part of the refweave project.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "refweave/parse.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace refweave {

SyntaxError::SyntaxError(int line, int col, const std::string& message)
    : std::runtime_error("syntax error at " + std::to_string(line) + ":" +
                         std::to_string(col) + ": " + message),
      line(line), col(col) {}

std::string methodSigKey(const std::string& name, const std::vector<std::string>& paramTypes) {
  std::string key = name + "(";
  for (size_t i = 0; i < paramTypes.size(); ++i) {
    if (i) key += ",";
    key += paramTypes[i];
  }
  return key + ")";
}

namespace {

struct Tok {
  std::string text;
  int line = 0, col = 0;
  bool isIdent = false;
  std::vector<std::string> leadingComments;
};

bool identStart(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool identChar(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

class Lexer {
public:
  Lexer(const std::string& text) : text_(text) {}

  std::vector<Tok> run(std::vector<std::string>& eofComments) {
    std::vector<Tok> toks;
    std::vector<std::string> pending;
    size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (text_[i] == '\n') { ++line; col = 1; } else { ++col; }
        ++i;
      }
    };
    while (i < text_.size()) {
      char c = text_[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
      if (c == '/' && i + 1 < text_.size() && text_[i + 1] == '/') {
        size_t end = text_.find('\n', i);
        if (end == std::string::npos) end = text_.size();
        pending.push_back(text_.substr(i + 2, end - i - 2));
        advance(end - i);
        continue;
      }
      Tok t;
      t.line = line;
      t.col = col;
      t.leadingComments = std::move(pending);
      pending.clear();
      if (identStart(c)) {
        size_t j = i;
        while (j < text_.size() && identChar(text_[j])) ++j;
        t.text = text_.substr(i, j - i);
        t.isIdent = true;
        advance(j - i);
      } else if (std::isdigit((unsigned char)c)) {
        size_t j = i;
        while (j < text_.size() && std::isdigit((unsigned char)text_[j])) ++j;
        t.text = text_.substr(i, j - i);
        advance(j - i);
      } else if (c == '"') {
        size_t j = i + 1;
        while (j < text_.size() && text_[j] != '"' && text_[j] != '\n') ++j;
        if (j >= text_.size() || text_[j] != '"')
          throw SyntaxError(line, col, "unterminated string literal");
        t.text = text_.substr(i, j - i + 1);
        advance(j - i + 1);
      } else {
        t.text = std::string(1, c);
        advance(1);
      }
      toks.push_back(std::move(t));
    }
    eofComments = std::move(pending);
    return toks;
  }

private:
  const std::string& text_;
};

class Parser {
public:
  Parser(const std::string& path, const std::string& text, LineIndex* lines)
      : path_(path), lines_(lines) {
    Lexer lex(text);
    toks_ = lex.run(eofComments_);
  }

  SourceFile parse() {
    CompilationUnit unit;
    expectIdent("package");
    unit.packageName = parseDotted();
    expect(";");
    while (peekIs("import")) {
      next();
      std::string imp = parseDotted();
      expect(";");
      if (std::find(unit.imports.begin(), unit.imports.end(), imp) != unit.imports.end())
        err("duplicate import " + imp);
      unit.imports.push_back(imp);
    }
    while (!atEnd()) unit.classes.push_back(parseClass(unit.packageName));
    if (unit.classes.empty()) err("expected at least one class");
    unit.trailingComments = eofComments_;
    return SourceFile{path_, std::move(unit)};
  }

private:
  std::string path_;
  std::vector<Tok> toks_;
  std::vector<std::string> eofComments_;
  size_t pos_ = 0;
  LineIndex* lines_;

  [[noreturn]] void err(const std::string& msg) {
    if (pos_ < toks_.size()) throw SyntaxError(toks_[pos_].line, toks_[pos_].col, msg);
    int l = toks_.empty() ? 1 : toks_.back().line;
    throw SyntaxError(l, 1, msg + " (at end of file)");
  }

  bool atEnd() const { return pos_ >= toks_.size(); }
  const Tok& peek(size_t ahead = 0) {
    if (pos_ + ahead >= toks_.size()) err("unexpected end of file");
    return toks_[pos_ + ahead];
  }
  bool peekIs(const std::string& s) { return !atEnd() && toks_[pos_].text == s; }
  Tok next() {
    if (atEnd()) err("unexpected end of file");
    return toks_[pos_++];
  }
  void expect(const std::string& s) {
    if (atEnd() || toks_[pos_].text != s) err("expected '" + s + "'");
    ++pos_;
  }
  Tok expectIdentTok() {
    if (atEnd() || !toks_[pos_].isIdent) err("expected identifier");
    return toks_[pos_++];
  }
  void expectIdent(const std::string& kw) {
    if (atEnd() || toks_[pos_].text != kw) err("expected '" + kw + "'");
    ++pos_;
  }

  std::string parseDotted() {
    std::string name = expectIdentTok().text;
    while (peekIs(".") && pos_ + 1 < toks_.size() && toks_[pos_ + 1].isIdent) {
      next();
      name += "." + next().text;
    }
    return name;
  }

  ClassDecl parseClass(const std::string& containerQName) {
    std::vector<std::string> comments = peek().leadingComments;
    expectIdent("class");
    ClassDecl cls;
    cls.comments = std::move(comments);
    cls.name = expectIdentTok().text;
    if (peekIs("extends")) {
      next();
      cls.superclass = parseDotted();
    }
    expect("{");
    std::string qname = containerQName.empty() ? cls.name : containerQName + "." + cls.name;
    std::set<std::string> fieldNames, innerNames;
    std::set<std::string> methodKeys;
    while (!peekIs("}")) {
      Member m = parseMember(qname);
      if (m.isField()) {
        if (!fieldNames.insert(m.field().name).second)
          err("duplicate field " + m.field().name + " in class " + cls.name);
      } else if (m.isMethod()) {
        const auto& md = m.method();
        if (!methodKeys.insert(methodSigKey(md.name, md.paramTypes())).second)
          err("duplicate method " + md.name + " in class " + cls.name);
      } else {
        if (!innerNames.insert(m.cls().name).second)
          err("duplicate inner class " + m.cls().name + " in class " + cls.name);
      }
      cls.members.push_back(std::move(m));
    }
    cls.trailingComments = peek().leadingComments;
    expect("}");
    return cls;
  }

  Member parseMember(const std::string& classQName) {
    if (peekIs("class")) return Member{parseClass(classQName)};
    std::vector<std::string> comments = peek().leadingComments;
    bool isStatic = false;
    if (peekIs("static")) {
      isStatic = true;
      next();
    }
    std::string type = parseDotted();
    std::string name = expectIdentTok().text;
    if (peekIs("(")) {
      MethodDecl md;
      md.isStatic = isStatic;
      md.returnType = type;
      md.name = name;
      md.comments = std::move(comments);
      next();
      if (!peekIs(")")) {
        while (true) {
          Param p;
          p.type = parseDotted();
          p.name = expectIdentTok().text;
          for (const auto& q : md.params)
            if (q.name == p.name) err("duplicate parameter " + p.name);
          md.params.push_back(std::move(p));
          if (peekIs(",")) { next(); continue; }
          break;
        }
      }
      expect(")");
      std::vector<StmtLineSpan> spans;
      md.body = parseBlock(&spans, &md.bodyTrailingComments);
      if (lines_)
        lines_->bodySpans[classQName][methodSigKey(md.name, md.paramTypes())] = std::move(spans);
      return Member{std::move(md)};
    }
    FieldDecl fd;
    fd.isStatic = isStatic;
    fd.type = type;
    fd.name = name;
    fd.comments = std::move(comments);
    if (peekIs("=")) {
      next();
      while (!peekIs(";")) {
        const Tok& t = peek();
        if (t.text == "{" || t.text == "}") err("brace in field initializer");
        fd.init.push_back(next().text);
      }
      if (fd.init.empty()) err("empty field initializer");
    }
    expect(";");
    return Member{std::move(fd)};
  }

  std::vector<Stmt> parseBlock(std::vector<StmtLineSpan>* spans,
                               std::vector<std::string>* trailing) {
    expect("{");
    std::vector<Stmt> body;
    while (!peekIs("}")) {
      int start = peek().line;
      Stmt s = parseStmt();
      if (spans) spans->push_back(StmtLineSpan{start, lastLine_});
      body.push_back(std::move(s));
    }
    if (trailing) *trailing = peek().leadingComments;
    lastLine_ = peek().line;
    expect("}");
    return body;
  }

  Stmt parseStmt() {
    Stmt s;
    s.comments = peek().leadingComments;
    if (peekIs("{")) {
      s.kind = Stmt::Kind::Block;
      s.children = parseBlock(nullptr, &s.trailingComments);
      return s;
    }
    s.kind = Stmt::Kind::Line;
    while (true) {
      if (peekIs(";")) {
        lastLine_ = peek().line;
        next();
        if (s.tokens.empty()) err("empty statement");
        return s;
      }
      if (peekIs("{")) {
        if (s.tokens.empty()) err("unexpected '{'");
        s.hasTrailingBlock = true;
        s.children = parseBlock(nullptr, &s.trailingComments);
        return s;
      }
      if (peekIs("}")) err("unterminated statement");
      s.tokens.push_back(next().text);
    }
  }

  int lastLine_ = 1;
};

} // namespace

SourceFile parse_file(const std::string& path, const std::string& text, LineIndex* lines) {
  Parser p(path, text, lines);
  return p.parse();
}

} // namespace refweave
