#include "fo2kc/errors.hpp"
#include "fo2kc/fol.hpp"

#include <cctype>

namespace fo2kc {
namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Slash,
  Number,
  End
};

struct Token {
  Tok kind;
  std::string text;
  int column;
};

std::vector<Token> lex(std::string_view line, int lineno) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) ||
              line[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
        ++j;
      out.push_back({Tok::Number, std::string(line.substr(i, j - i)), col});
      i = j;
      continue;
    }
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, c), col});
      ++i;
    };
    switch (c) {
    case '(':
      single(Tok::LParen);
      continue;
    case ')':
      single(Tok::RParen);
      continue;
    case '[':
      single(Tok::LBracket);
      continue;
    case ']':
      single(Tok::RBracket);
      continue;
    case ',':
      single(Tok::Comma);
      continue;
    case '.':
      single(Tok::Dot);
      continue;
    case '~':
    case '!':
      single(Tok::Not);
      continue;
    case '&':
      single(Tok::And);
      continue;
    case '|':
      single(Tok::Or);
      continue;
    case '/':
      single(Tok::Slash);
      continue;
    default:
      break;
    }
    if (line.substr(i, 2) == "->") {
      out.push_back({Tok::Implies, "->", col});
      i += 2;
      continue;
    }
    if (line.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, "<->", col});
      i += 3;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", lineno,
                     col);
  }
  out.push_back({Tok::End, "", static_cast<int>(line.size()) + 1});
  return out;
}

class LineParser {
public:
  LineParser(std::vector<Token> toks, int lineno, Vocabulary &vocab,
             bool declared)
      : toks_(std::move(toks)), line_(lineno), vocab_(vocab),
        declared_(declared) {}

  Formula conjunct() {
    std::vector<std::pair<Formula::Kind, Var>> prefix;
    while (peek().kind == Tok::Ident &&
           (peek().text == "forall" || peek().text == "exists")) {
      auto kind = next().text == "forall" ? Formula::Kind::Forall
                                          : Formula::Kind::Exists;
      const Token &vt = expect(Tok::Ident, "variable");
      Var v = variable(vt);
      for (const auto &q : prefix)
        if (q.second == v)
          fail("variable " + vt.text + " bound twice", vt);
      prefix.emplace_back(kind, v);
    }
    if (prefix.empty())
      fail("expected 'forall' or 'exists'", peek());
    expect(Tok::Dot, "'.'");
    Formula body = iff();
    if (peek().kind != Tok::End)
      fail("unexpected '" + peek().text + "'", peek());

    for (Var v : body.free_vars()) {
      bool bound = false;
      for (const auto &q : prefix)
        bound = bound || q.second == v;
      if (!bound)
        throw ParseError(std::string("free variable ") + var_name(v), line_,
                         1);
    }
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
      body = it->first == Formula::Kind::Forall
                 ? Formula::forall(it->second, std::move(body))
                 : Formula::exists(it->second, std::move(body));
    return body;
  }

  void declarations() {
    next(); // 'predicates'
    while (peek().kind != Tok::End) {
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      const Token &name = expect(Tok::Ident, "predicate name");
      expect(Tok::Slash, "'/'");
      const Token &ar = expect(Tok::Number, "arity");
      int arity = std::stoi(ar.text);
      if (arity < 1 || arity > 2)
        fail("arity " + ar.text + " not supported (1 or 2)", ar);
      if (vocab_.find(name.text))
        fail("predicate " + name.text + " declared twice", name);
      vocab_.add(name.text, arity);
    }
  }

private:
  const Token &peek() const { return toks_[pos_]; }
  const Token &next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string &msg, const Token &at) const {
    throw ParseError(msg, line_, at.column);
  }

  const Token &expect(Tok kind, const char *what) {
    if (peek().kind != kind)
      fail(std::string("expected ") + what, peek());
    return next();
  }

  Var variable(const Token &t) const {
    if (t.text == "x")
      return Var::X;
    if (t.text == "y")
      return Var::Y;
    fail("variable '" + t.text + "' is not x or y", t);
  }

  Formula iff() {
    Formula lhs = implication();
    while (peek().kind == Tok::Iff) {
      next();
      lhs = Formula::iff(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind != Tok::Implies)
      return lhs;
    next();
    return Formula::implies(std::move(lhs), implication());
  }

  Formula disjunction() {
    std::vector<Formula> parts;
    parts.push_back(conjunction());
    while (peek().kind == Tok::Or) {
      next();
      parts.push_back(conjunction());
    }
    return flat(Formula::Kind::Or, std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts;
    parts.push_back(unary());
    while (peek().kind == Tok::And) {
      next();
      parts.push_back(unary());
    }
    return flat(Formula::Kind::And, std::move(parts));
  }

  // Unlike Formula::conj, never collapses: callers guarantee >= 1 part and a
  // single part is returned as is.
  static Formula flat(Formula::Kind kind, std::vector<Formula> parts) {
    if (parts.size() == 1)
      return std::move(parts.front());
    Formula f;
    f.kind = kind;
    f.children = std::move(parts);
    return f;
  }

  Formula unary() {
    if (peek().kind == Tok::Not) {
      next();
      return Formula::negate(unary());
    }
    return primary();
  }

  Formula primary() {
    const Token &t = peek();
    if (t.kind == Tok::LParen) {
      next();
      Formula f = iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident)
      fail("expected formula", t);
    if (t.text == "true") {
      next();
      return Formula::truth();
    }
    if (t.text == "false") {
      next();
      return Formula::falsity();
    }
    if (t.text == "forall" || t.text == "exists")
      fail("quantifiers are only allowed as a conjunct prefix", t);
    if (t.text == "exactlyone")
      return exactly_one();
    return atom();
  }

  Formula exactly_one() {
    next();
    expect(Tok::LBracket, "'['");
    std::vector<Formula> atoms;
    atoms.push_back(atom());
    while (peek().kind == Tok::Comma) {
      next();
      atoms.push_back(atom());
    }
    expect(Tok::RBracket, "']'");
    if (atoms.size() == 1)
      return atoms.front();
    std::vector<Formula> parts;
    parts.push_back(flat(Formula::Kind::Or, atoms));
    for (size_t i = 0; i < atoms.size(); ++i)
      for (size_t j = i + 1; j < atoms.size(); ++j)
        parts.push_back(flat(Formula::Kind::Or, {Formula::negate(atoms[i]),
                                                 Formula::negate(atoms[j])}));
    return flat(Formula::Kind::And, std::move(parts));
  }

  Formula atom() {
    const Token &name = expect(Tok::Ident, "predicate name");
    expect(Tok::LParen, "'('");
    std::vector<Var> args;
    args.push_back(variable(expect(Tok::Ident, "variable")));
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(variable(expect(Tok::Ident, "variable")));
    }
    expect(Tok::RParen, "')'");
    int arity = static_cast<int>(args.size());
    if (arity > 2)
      fail("predicate " + name.text + " has arity " + std::to_string(arity) +
               "; at most 2 supported",
           name);
    auto idx = vocab_.find(name.text);
    if (!idx) {
      if (declared_)
        fail("undeclared predicate " + name.text, name);
      idx = vocab_.add(name.text, arity);
    } else if (vocab_[*idx].arity != arity) {
      fail("predicate " + name.text + " used with arity " +
               std::to_string(arity) + " but has arity " +
               std::to_string(vocab_[*idx].arity),
           name);
    }
    return Formula::atom(*idx, std::move(args));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  int line_;
  Vocabulary &vocab_;
  bool declared_;
};

} // namespace

Sentence parse_sentence(std::string_view text) {
  Sentence s;
  bool declared = false;
  int lineno = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto toks = lex(line, lineno);
    if (toks.front().kind == Tok::End)
      continue;
    if (toks.front().kind == Tok::Ident && toks.front().text == "predicates") {
      if (!s.conjuncts.empty())
        throw ParseError("declarations must precede conjuncts", lineno,
                         toks.front().column);
      LineParser(std::move(toks), lineno, s.vocab, false).declarations();
      declared = true;
      continue;
    }
    s.conjuncts.push_back(
        LineParser(std::move(toks), lineno, s.vocab, declared).conjunct());
  }
  if (s.conjuncts.empty() && s.vocab.size() == 0)
    throw ParseError("empty sentence");
  return s;
}

} // namespace fo2kc
