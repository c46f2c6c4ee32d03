#include "fo2kc/ground.hpp"

#include "fo2kc/errors.hpp"

namespace fo2kc {

AtomTable::AtomTable(const Vocabulary &vocab, int n) : vocab_(vocab), n_(n) {
  if (n < 0)
    throw Error("negative domain size");
  unary_slot_.assign(vocab.size(), -1);
  binary_rank_.assign(vocab.size(), -1);
  std::vector<int> slot_pred;
  for (int p : vocab.unary()) {
    unary_slot_[p] = static_cast<int>(slot_pred.size());
    slot_pred.push_back(p);
  }
  int rank = 0;
  std::vector<int> binaries = vocab.binary();
  for (int p : binaries) {
    unary_slot_[p] = static_cast<int>(slot_pred.size());
    slot_pred.push_back(p);
    binary_rank_[p] = rank++;
  }
  ublock_ = static_cast<int>(slot_pred.size());
  pblock_ = 2 * rank;

  for (int e = 0; e < n; ++e)
    for (int p : slot_pred)
      atoms_.push_back(vocab[p].arity == 1 ? GroundAtom{p, e, -1}
                                           : GroundAtom{p, e, e});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int p : binaries) {
        atoms_.push_back({p, i, j});
        atoms_.push_back({p, j, i});
      }
}

int AtomTable::pair_index(int i, int j) const {
  if (i >= j)
    throw Error("pair index requires i < j");
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

int AtomTable::var(int pred, int a, int b) const {
  if (a < 0 || a >= n_ || b >= n_)
    throw Error("element out of range");
  if (vocab_[pred].arity == 1 || a == b)
    return unary_block_start(a) + unary_slot_[pred];
  int r = binary_rank_[pred];
  if (a < b)
    return pair_block_start(pair_index(a, b)) + 2 * r;
  return pair_block_start(pair_index(b, a)) + 2 * r + 1;
}

std::string AtomTable::atom_name(int v) const {
  const GroundAtom &g = atom(v);
  std::string s = vocab_[g.pred].name + "(e" + std::to_string(g.first + 1);
  if (g.second >= 0)
    s += ",e" + std::to_string(g.second + 1);
  return s + ")";
}

int AtomTable::block_start(int block) const {
  return block < n_ ? unary_block_start(block) : pair_block_start(block - n_);
}

int AtomTable::block_of(int v) const {
  int k = v - 1;
  if (k < n_ * ublock_)
    return k / ublock_;
  return n_ + (k - n_ * ublock_) / pblock_;
}

GroundFormula GroundFormula::literal(int lit) {
  GroundFormula f;
  f.kind = Kind::Lit;
  f.lit = lit;
  return f;
}

namespace {

using GK = GroundFormula::Kind;

GroundFormula combine(GK kind, std::vector<GroundFormula> parts) {
  GK unit = kind == GK::And ? GK::True : GK::False;
  GK zero = kind == GK::And ? GK::False : GK::True;
  GroundFormula out;
  out.kind = kind;
  for (auto &p : parts) {
    if (p.kind == unit)
      continue;
    if (p.kind == zero) {
      GroundFormula z;
      z.kind = zero;
      return z;
    }
    if (p.kind == kind) {
      for (auto &c : p.children)
        out.children.push_back(std::move(c));
    } else {
      out.children.push_back(std::move(p));
    }
  }
  if (out.children.empty()) {
    GroundFormula u;
    u.kind = unit;
    return u;
  }
  if (out.children.size() == 1)
    return std::move(out.children.front());
  return out;
}

struct Grounder {
  const AtomTable &table;
  int n;

  GroundFormula go(const Formula &f, int env[2], bool positive) {
    using K = Formula::Kind;
    switch (f.kind) {
    case K::True:
    case K::False: {
      GroundFormula g;
      g.kind = (f.kind == K::True) == positive ? GK::True : GK::False;
      return g;
    }
    case K::Atom: {
      int a = env[static_cast<int>(f.args[0])];
      int b = f.args.size() > 1 ? env[static_cast<int>(f.args[1])] : -1;
      int v = table.var(f.pred, a, b);
      return GroundFormula::literal(positive ? v : -v);
    }
    case K::Not:
      return go(f.children[0], env, !positive);
    case K::And:
    case K::Or: {
      std::vector<GroundFormula> parts;
      for (const auto &c : f.children)
        parts.push_back(go(c, env, positive));
      bool conj = (f.kind == K::And) == positive;
      return combine(conj ? GK::And : GK::Or, std::move(parts));
    }
    case K::Implies: {
      // a -> b  ==  ~a | b
      auto a = go(f.children[0], env, !positive);
      auto b = go(f.children[1], env, positive);
      return combine(positive ? GK::Or : GK::And, {std::move(a), std::move(b)});
    }
    case K::Iff: {
      auto a = go(f.children[0], env, true);
      auto na = go(f.children[0], env, false);
      auto b = go(f.children[1], env, positive);
      auto nb = go(f.children[1], env, !positive);
      return combine(GK::Or,
                     {combine(GK::And, {std::move(a), std::move(b)}),
                      combine(GK::And, {std::move(na), std::move(nb)})});
    }
    case K::Forall:
    case K::Exists: {
      int v = static_cast<int>(f.var);
      int saved = env[v];
      std::vector<GroundFormula> parts;
      for (int e = 0; e < n; ++e) {
        env[v] = e;
        parts.push_back(go(f.children[0], env, positive));
      }
      env[v] = saved;
      bool conj = (f.kind == K::Forall) == positive;
      return combine(conj ? GK::And : GK::Or, std::move(parts));
    }
    }
    return {};
  }
};

} // namespace

GroundFormula GroundFormula::all(std::vector<GroundFormula> parts) {
  return combine(Kind::And, std::move(parts));
}

GroundFormula GroundFormula::any(std::vector<GroundFormula> parts) {
  return combine(Kind::Or, std::move(parts));
}

Grounding ground(const Sentence &sentence, int n) {
  Grounding g{GroundFormula{}, AtomTable(sentence.vocab, n)};
  if (n == 0)
    return g;
  Grounder gr{g.table, n};
  std::vector<GroundFormula> parts;
  for (const auto &c : sentence.conjuncts) {
    int env[2] = {-1, -1};
    parts.push_back(gr.go(c, env, true));
  }
  g.formula = GroundFormula::all(std::move(parts));
  return g;
}

bool eval_ground(const GroundFormula &f, const Assignment &a) {
  switch (f.kind) {
  case GK::True:
    return true;
  case GK::False:
    return false;
  case GK::Lit: {
    int v = f.lit < 0 ? -f.lit : f.lit;
    if (v >= static_cast<int>(a.size()) || a[v] < 0)
      throw Error("assignment is missing variable " + std::to_string(v));
    return (a[v] == 1) == (f.lit > 0);
  }
  case GK::And:
    for (const auto &c : f.children)
      if (!eval_ground(c, a))
        return false;
    return true;
  case GK::Or:
    for (const auto &c : f.children)
      if (eval_ground(c, a))
        return true;
    return false;
  }
  return false;
}

namespace {

// Flattened formula for repeated three-valued evaluation during search.
class FlatFormula {
public:
  explicit FlatFormula(const GroundFormula &f) { root_ = add(f); }

  // 1 true, 0 false, -1 undetermined.
  int eval(const Assignment &a) const {
    std::vector<std::int8_t> val(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) {
      const Node &nd = nodes_[i];
      switch (nd.kind) {
      case GK::True:
        val[i] = 1;
        break;
      case GK::False:
        val[i] = 0;
        break;
      case GK::Lit: {
        int v = nd.lit < 0 ? -nd.lit : nd.lit;
        val[i] = a[v] < 0 ? -1 : ((a[v] == 1) == (nd.lit > 0));
        break;
      }
      case GK::And:
      case GK::Or: {
        std::int8_t dominant = nd.kind == GK::And ? 0 : 1;
        std::int8_t r = 1 - dominant;
        for (int c : nd.children) {
          if (val[c] == dominant) {
            r = dominant;
            break;
          }
          if (val[c] < 0)
            r = -1;
        }
        val[i] = r;
        break;
      }
      }
    }
    return val[root_];
  }

private:
  struct Node {
    GK kind;
    int lit;
    std::vector<int> children;
  };

  int add(const GroundFormula &f) {
    std::vector<int> kids;
    for (const auto &c : f.children)
      kids.push_back(add(c));
    nodes_.push_back({f.kind, f.lit, std::move(kids)});
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
  int root_ = 0;
};

struct Searcher {
  const FlatFormula &flat;
  int num_vars;
  Assignment a;

  BigInt count(int v) {
    int r = flat.eval(a);
    if (r == 0)
      return 0;
    while (v <= num_vars && a[v] >= 0)
      ++v;
    if (r == 1) {
      int free = 0;
      for (int u = v; u <= num_vars; ++u)
        free += a[u] < 0;
      return pow2(free);
    }
    if (v > num_vars)
      return 0; // unreachable: a total assignment is never undetermined
    BigInt total = 0;
    for (std::int8_t b : {0, 1}) {
      a[v] = b;
      total += count(v + 1);
    }
    a[v] = -1;
    return total;
  }

  bool visit_all(int v, const std::function<bool(const Assignment &)> &visit) {
    int r = flat.eval(a);
    if (r == 0)
      return true;
    if (v > num_vars)
      return visit(a);
    for (std::int8_t b : {0, 1}) {
      a[v] = b;
      if (!visit_all(v + 1, visit)) {
        a[v] = -1;
        return false;
      }
    }
    a[v] = -1;
    return true;
  }
};

} // namespace

BigInt count_ground_models(const GroundFormula &f, int num_vars,
                           const Assignment *pinned) {
  FlatFormula flat(f);
  Searcher s{flat, num_vars, Assignment(num_vars + 1, -1)};
  if (pinned)
    for (int v = 1; v <= num_vars && v < static_cast<int>(pinned->size()); ++v)
      s.a[v] = (*pinned)[v];
  return s.count(1);
}

void for_each_ground_model(
    const GroundFormula &f, int num_vars,
    const std::function<bool(const Assignment &)> &visit) {
  FlatFormula flat(f);
  Searcher s{flat, num_vars, Assignment(num_vars + 1, -1)};
  s.visit_all(1, visit);
}

BigInt brute_force_count(const Sentence &sentence, int n, int cap) {
  AtomTable table(sentence.vocab, n);
  if (table.num_vars() > cap)
    throw ResourceError("grounding has " + std::to_string(table.num_vars()) +
                        " atoms, above the cap of " + std::to_string(cap));
  Grounding g = ground(sentence, n);
  return count_ground_models(g.formula, g.table.num_vars());
}

} // namespace fo2kc
