#include "fo2kc/fol.hpp"

#include "fo2kc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fo2kc {

int Vocabulary::add(std::string name, int arity) {
  if (arity < 1 || arity > 2)
    throw UnsupportedError("predicate " + name + " has arity " +
                           std::to_string(arity) + "; only 1 and 2 supported");
  if (find(name))
    throw Error("duplicate predicate " + name);
  preds_.push_back({std::move(name), arity});
  return size() - 1;
}

std::optional<int> Vocabulary::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (preds_[i].name == name)
      return i;
  return std::nullopt;
}

std::vector<int> Vocabulary::unary() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (preds_[i].arity == 1)
      out.push_back(i);
  return out;
}

std::vector<int> Vocabulary::binary() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (preds_[i].arity == 2)
      out.push_back(i);
  return out;
}

std::string Vocabulary::fresh_name(const std::string &base) const {
  if (!find(base))
    return base;
  for (int k = 1;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!find(cand))
      return cand;
  }
}

Formula Formula::atom(int pred, std::vector<Var> args) {
  Formula f;
  f.kind = Kind::Atom;
  f.pred = pred;
  f.args = std::move(args);
  return f;
}

Formula Formula::negate(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(g));
  return f;
}

static Formula nary(Formula::Kind kind, std::vector<Formula> parts) {
  if (parts.empty())
    return kind == Formula::Kind::And ? Formula::truth() : Formula::falsity();
  if (parts.size() == 1)
    return std::move(parts.front());
  Formula f;
  f.kind = kind;
  f.children = std::move(parts);
  return f;
}

Formula Formula::conj(std::vector<Formula> parts) {
  return nary(Kind::And, std::move(parts));
}

Formula Formula::disj(std::vector<Formula> parts) {
  return nary(Kind::Or, std::move(parts));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  Formula f;
  f.kind = Kind::Implies;
  f.children.push_back(std::move(lhs));
  f.children.push_back(std::move(rhs));
  return f;
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  Formula f = implies(std::move(lhs), std::move(rhs));
  f.kind = Kind::Iff;
  return f;
}

Formula Formula::forall(Var v, Formula body) {
  Formula f;
  f.kind = Kind::Forall;
  f.var = v;
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::exists(Var v, Formula body) {
  Formula f = forall(v, std::move(body));
  f.kind = Kind::Exists;
  return f;
}

bool Formula::quantifier_free() const {
  if (is_quantifier())
    return false;
  return std::all_of(children.begin(), children.end(),
                     [](const Formula &c) { return c.quantifier_free(); });
}

static void collect_free(const Formula &f, bool bound[2], bool seen[2]) {
  if (f.kind == Formula::Kind::Atom) {
    for (Var v : f.args)
      if (!bound[static_cast<int>(v)])
        seen[static_cast<int>(v)] = true;
    return;
  }
  if (f.is_quantifier()) {
    int v = static_cast<int>(f.var);
    bool saved = bound[v];
    bound[v] = true;
    collect_free(f.children[0], bound, seen);
    bound[v] = saved;
    return;
  }
  for (const auto &c : f.children)
    collect_free(c, bound, seen);
}

std::vector<Var> Formula::free_vars() const {
  bool bound[2] = {false, false};
  bool seen[2] = {false, false};
  collect_free(*this, bound, seen);
  std::vector<Var> out;
  if (seen[0])
    out.push_back(Var::X);
  if (seen[1])
    out.push_back(Var::Y);
  return out;
}

Formula Formula::swapped() const {
  Formula f = *this;
  for (Var &v : f.args)
    v = other(v);
  if (f.is_quantifier())
    f.var = other(f.var);
  for (auto &c : f.children)
    c = c.swapped();
  return f;
}

Formula Formula::substituted(Var from, Var to) const {
  Formula f = *this;
  for (Var &v : f.args)
    if (v == from)
      v = to;
  for (auto &c : f.children)
    c = c.substituted(from, to);
  return f;
}

// Printing. Higher precedence binds tighter.
namespace {

int precedence(const Formula &f) {
  switch (f.kind) {
  case Formula::Kind::Iff:
    return 1;
  case Formula::Kind::Implies:
    return 2;
  case Formula::Kind::Or:
    return 3;
  case Formula::Kind::And:
    return 4;
  case Formula::Kind::Not:
    return 5;
  case Formula::Kind::Forall:
  case Formula::Kind::Exists:
    return 0;
  default:
    return 6;
  }
}

void print(std::ostream &os, const Formula &f, const Vocabulary &vocab);

void print_child(std::ostream &os, const Formula &c, bool parens,
                 const Vocabulary &vocab) {
  if (parens)
    os << '(';
  print(os, c, vocab);
  if (parens)
    os << ')';
}

void print(std::ostream &os, const Formula &f, const Vocabulary &vocab) {
  using K = Formula::Kind;
  switch (f.kind) {
  case K::True:
    os << "true";
    return;
  case K::False:
    os << "false";
    return;
  case K::Atom:
    os << vocab[f.pred].name << '(';
    for (size_t i = 0; i < f.args.size(); ++i) {
      if (i)
        os << ',';
      os << var_name(f.args[i]);
    }
    os << ')';
    return;
  case K::Not:
    os << '~';
    print_child(os, f.children[0], precedence(f.children[0]) < 5, vocab);
    return;
  case K::And:
  case K::Or: {
    int p = precedence(f);
    const char *op = f.kind == K::And ? " & " : " | ";
    for (size_t i = 0; i < f.children.size(); ++i) {
      if (i)
        os << op;
      print_child(os, f.children[i], precedence(f.children[i]) <= p, vocab);
    }
    return;
  }
  case K::Implies:
    print_child(os, f.children[0], precedence(f.children[0]) <= 2, vocab);
    os << " -> ";
    print_child(os, f.children[1], precedence(f.children[1]) < 2, vocab);
    return;
  case K::Iff:
    print_child(os, f.children[0], precedence(f.children[0]) <= 1, vocab);
    os << " <-> ";
    print_child(os, f.children[1], precedence(f.children[1]) <= 1, vocab);
    return;
  case K::Forall:
  case K::Exists: {
    const Formula *cur = &f;
    bool first = true;
    while (cur->is_quantifier()) {
      if (!first)
        os << ' ';
      os << (cur->kind == K::Forall ? "forall " : "exists ")
         << var_name(cur->var);
      first = false;
      cur = &cur->children[0];
    }
    os << ". ";
    print(os, *cur, vocab);
    return;
  }
  }
}

} // namespace

std::string to_string(const Formula &f, const Vocabulary &vocab) {
  std::ostringstream os;
  print(os, f, vocab);
  return os.str();
}

std::string to_string(const Sentence &s) {
  std::ostringstream os;
  os << "predicates";
  for (const auto &p : s.vocab.predicates())
    os << ' ' << p.name << '/' << p.arity;
  os << '\n';
  for (const auto &c : s.conjuncts) {
    print(os, c, s.vocab);
    os << '\n';
  }
  return os.str();
}

} // namespace fo2kc
