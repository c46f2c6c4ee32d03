#pragma once

// Syntax of function-free, constant-free two-variable sentences.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fo2kc {

struct Predicate {
  std::string name;
  int arity = 1;

  bool operator==(const Predicate &) const = default;
};

/// Ordered predicate list; a predicate's index is its position.
class Vocabulary {
public:
  /// Appends a predicate and returns its index. Throws on duplicate name or
  /// arity outside {1, 2}.
  int add(std::string name, int arity);

  std::optional<int> find(std::string_view name) const;
  const Predicate &operator[](int index) const { return preds_[index]; }
  int size() const { return static_cast<int>(preds_.size()); }
  const std::vector<Predicate> &predicates() const { return preds_; }

  /// Indices of unary (resp. binary) predicates in vocabulary order.
  std::vector<int> unary() const;
  std::vector<int> binary() const;

  /// Returns `base` if unused, else `base` with the smallest numeric suffix
  /// that makes it unused.
  std::string fresh_name(const std::string &base) const;

  bool operator==(const Vocabulary &) const = default;

private:
  std::vector<Predicate> preds_;
};

enum class Var : std::uint8_t { X, Y };

inline Var other(Var v) { return v == Var::X ? Var::Y : Var::X; }
inline char var_name(Var v) { return v == Var::X ? 'x' : 'y'; }

struct Formula {
  enum class Kind : std::uint8_t {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Exists
  };

  Kind kind = Kind::True;
  int pred = -1;              // Atom
  std::vector<Var> args;      // Atom
  Var var = Var::X;           // Forall / Exists
  std::vector<Formula> children;

  static Formula truth() { return Formula{}; }
  static Formula falsity() {
    Formula f;
    f.kind = Kind::False;
    return f;
  }
  static Formula atom(int pred, std::vector<Var> args);
  static Formula negate(Formula f);
  /// n-ary connectives; a single operand is returned unchanged and an empty
  /// list yields the neutral constant.
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula forall(Var v, Formula body);
  static Formula exists(Var v, Formula body);

  bool is_quantifier() const {
    return kind == Kind::Forall || kind == Kind::Exists;
  }
  bool quantifier_free() const;
  /// Variables occurring free.
  std::vector<Var> free_vars() const;
  /// Renames x <-> y everywhere, including binders.
  Formula swapped() const;
  /// Replaces every occurrence of `from` with `to` (no binder handling).
  Formula substituted(Var from, Var to) const;

  bool operator==(const Formula &) const = default;
};

/// Conjunction of quantified conjuncts over a vocabulary.
struct Sentence {
  Vocabulary vocab;
  std::vector<Formula> conjuncts;

  bool operator==(const Sentence &) const = default;
};

/// Parses the line-oriented sentence syntax (see README). Throws ParseError.
Sentence parse_sentence(std::string_view text);

/// Renders a formula in the concrete syntax accepted by parse_sentence.
std::string to_string(const Formula &f, const Vocabulary &vocab);

/// Renders a full sentence, starting with a `predicates` declaration line so
/// that vocabulary order survives a round trip.
std::string to_string(const Sentence &s);

} // namespace fo2kc
