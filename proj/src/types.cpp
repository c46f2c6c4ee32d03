#include "fo2kc/types.hpp"

#include "fo2kc/errors.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace fo2kc {

namespace {

struct Layout {
  std::vector<int> uslot; // pred -> unary slot (diagonal slot for binary)
  std::vector<int> brank; // pred -> binary rank, -1 for unary
  int unary_slots = 0;
  int binary_preds = 0;
};

Layout layout_of(const Vocabulary &vocab) {
  Layout l;
  l.uslot.assign(vocab.size(), -1);
  l.brank.assign(vocab.size(), -1);
  for (int p : vocab.unary())
    l.uslot[p] = l.unary_slots++;
  for (int p : vocab.binary()) {
    l.uslot[p] = l.unary_slots++;
    l.brank[p] = l.binary_preds++;
  }
  return l;
}

} // namespace

TypeEvaluator::TypeEvaluator(const Vocabulary &vocab, const Formula &phi)
    : vocab_(&vocab) {
  Layout l = layout_of(vocab);
  uslot_ = std::move(l.uslot);
  brank_ = std::move(l.brank);
  root_ = add(phi);
}

int TypeEvaluator::add(const Formula &f) {
  using K = Formula::Kind;
  if (f.is_quantifier())
    throw Error("type evaluation needs a quantifier-free formula");
  Node nd{f.kind, Leaf::UX, 0, 0, {}};
  if (f.kind == K::Atom) {
    const Predicate &p = (*vocab_)[f.pred];
    nd.slot = uslot_[f.pred];
    if (p.arity == 1 || f.args[0] == f.args[1]) {
      nd.leaf = f.args[0] == Var::X ? Leaf::UX : Leaf::UY;
    } else {
      nd.leaf = Leaf::B;
      nd.bit = 2 * brank_[f.pred] + (f.args[0] == Var::X ? 0 : 1);
    }
  }
  for (const auto &c : f.children)
    nd.children.push_back(add(c));
  nodes_.push_back(std::move(nd));
  return static_cast<int>(nodes_.size()) - 1;
}

bool TypeEvaluator::run(int i, TypeMask ux, TypeMask uy, TypeMask b,
                        bool diag) const {
  using K = Formula::Kind;
  const Node &nd = nodes_[i];
  switch (nd.kind) {
  case K::True:
    return true;
  case K::False:
    return false;
  case K::Atom:
    if (nd.leaf == Leaf::UX)
      return (ux >> nd.slot) & 1;
    if (nd.leaf == Leaf::UY)
      return ((diag ? ux : uy) >> nd.slot) & 1;
    // With y := x, R(x,y) and R(y,x) are the diagonal atom.
    return diag ? (ux >> nd.slot) & 1 : (b >> nd.bit) & 1;
  case K::Not:
    return !run(nd.children[0], ux, uy, b, diag);
  case K::And:
    for (int c : nd.children)
      if (!run(c, ux, uy, b, diag))
        return false;
    return true;
  case K::Or:
    for (int c : nd.children)
      if (run(c, ux, uy, b, diag))
        return true;
    return false;
  case K::Implies:
    return !run(nd.children[0], ux, uy, b, diag) ||
           run(nd.children[1], ux, uy, b, diag);
  case K::Iff:
    return run(nd.children[0], ux, uy, b, diag) ==
           run(nd.children[1], ux, uy, b, diag);
  default:
    return false;
  }
}

bool TypeEvaluator::eval(TypeMask ux, TypeMask uy, TypeMask b) const {
  return run(root_, ux, uy, b, false);
}

bool TypeEvaluator::eval_diag(TypeMask u) const {
  return run(root_, u, u, 0, true);
}

TypeMask swap_binary(TypeMask b, int binary_preds) {
  TypeMask out = 0;
  for (int r = 0; r < binary_preds; ++r) {
    out |= ((b >> (2 * r)) & 1u) << (2 * r + 1);
    out |= ((b >> (2 * r + 1)) & 1u) << (2 * r);
  }
  return out;
}

std::uint32_t TypeTables::beta_forward(TypeMask b) const {
  std::uint32_t out = 0;
  for (int k = 0; k < m; ++k)
    if ((b >> (2 * beta_rank[k])) & 1)
      out |= 1u << k;
  return out;
}

std::uint32_t TypeTables::beta_backward(TypeMask b) const {
  std::uint32_t out = 0;
  for (int k = 0; k < m; ++k)
    if ((b >> (2 * beta_rank[k] + 1)) & 1)
      out |= 1u << k;
  return out;
}

int TypeTables::find_unary(TypeMask u) const {
  auto it = std::lower_bound(unary.begin(), unary.end(), u);
  if (it == unary.end() || *it != u)
    return -1;
  return static_cast<int>(it - unary.begin());
}

TypeTables build_type_tables(const SnfSentence &snf, int slot_cap) {
  Layout l = layout_of(snf.vocab);
  if (l.unary_slots > slot_cap || 2 * l.binary_preds > slot_cap)
    throw ResourceError("type enumeration needs " +
                        std::to_string(l.unary_slots) + " unary slots and " +
                        std::to_string(2 * l.binary_preds) +
                        " binary bits; cap is " + std::to_string(slot_cap));
  if (snf.m() > 32)
    throw ResourceError("more than 32 existential conjuncts");
  TypeEvaluator ev(snf.vocab, snf.phi);
  TypeTables t;
  t.unary_slots = l.unary_slots;
  t.binary_preds = l.binary_preds;
  t.m = snf.m();
  for (int b : snf.betas) {
    t.beta_slot.push_back(l.uslot[b]);
    t.beta_rank.push_back(l.brank[b]);
  }

  for (TypeMask u = 0; u < (TypeMask{1} << l.unary_slots); ++u)
    if (ev.eval_diag(u))
      t.unary.push_back(u);

  int q = t.q();
  TypeMask bcount = TypeMask{1} << (2 * l.binary_preds);
  t.binary.assign(q, std::vector<std::vector<TypeMask>>(q));
  for (int a = 0; a < q; ++a)
    for (int c = a; c < q; ++c) {
      std::vector<TypeMask> cell;
      for (TypeMask b = 0; b < bcount; ++b)
        if (ev.eval(t.unary[a], t.unary[c], b) &&
            ev.eval(t.unary[c], t.unary[a], swap_binary(b, l.binary_preds)))
          cell.push_back(b);
      if (c != a) {
        std::vector<TypeMask> rev;
        for (TypeMask b : cell)
          rev.push_back(swap_binary(b, l.binary_preds));
        std::sort(rev.begin(), rev.end());
        t.binary[c][a] = std::move(rev);
      }
      t.binary[a][c] = std::move(cell);
    }

  std::map<std::vector<TypeMask>, int> cells;
  std::map<std::vector<int>, int> rows;
  std::map<std::pair<std::uint32_t, int>, int> classes;
  t.cell_id.assign(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a) {
    for (int c = 0; c < q; ++c)
      t.cell_id[a][c] =
          cells.emplace(t.binary[a][c], static_cast<int>(cells.size()))
              .first->second;
    int row = rows.emplace(t.cell_id[a], static_cast<int>(rows.size()))
                  .first->second;
    t.row_id.push_back(row);
    std::uint32_t diag = 0;
    for (int k = 0; k < t.m; ++k)
      if ((t.unary[a] >> t.beta_slot[k]) & 1)
        diag |= 1u << k;
    t.beta_diag.push_back(diag);
    t.class_id.push_back(
        classes.emplace(std::make_pair(diag, row), static_cast<int>(classes.size()))
            .first->second);
  }
  return t;
}

std::string unary_type_string(const Vocabulary &vocab, TypeMask u) {
  Layout l = layout_of(vocab);
  std::string s;
  auto emit = [&](int p, const char *args) {
    if (!s.empty())
      s += ' ';
    if (!((u >> l.uslot[p]) & 1))
      s += '~';
    s += vocab[p].name + args;
  };
  for (int p : vocab.unary())
    emit(p, "(x)");
  for (int p : vocab.binary())
    emit(p, "(x,x)");
  return s;
}

std::string binary_type_string(const Vocabulary &vocab, TypeMask b) {
  Layout l = layout_of(vocab);
  std::string s;
  for (int p : vocab.binary()) {
    int r = l.brank[p];
    for (int dir = 0; dir < 2; ++dir) {
      if (!s.empty())
        s += ' ';
      if (!((b >> (2 * r + dir)) & 1))
        s += '~';
      s += vocab[p].name + (dir == 0 ? "(x,y)" : "(y,x)");
    }
  }
  return s;
}

void dump_type_tables(const TypeTables &t, const Vocabulary &vocab,
                      std::ostream &out) {
  out << "unary types: " << t.q() << '\n';
  for (int a = 0; a < t.q(); ++a)
    out << "  t" << a << ": " << unary_type_string(vocab, t.unary[a])
        << "  [class " << t.class_id[a] << ", row " << t.row_id[a] << "]\n";
  out << "binary types:\n";
  for (int a = 0; a < t.q(); ++a)
    for (int c = 0; c < t.q(); ++c) {
      out << "  (t" << a << ",t" << c << "): " << t.binary[a][c].size();
      for (TypeMask b : t.binary[a][c])
        out << " {" << binary_type_string(vocab, b) << '}';
      out << '\n';
    }
  out << "classes:";
  int nclass = 0;
  for (int c : t.class_id)
    nclass = std::max(nclass, c + 1);
  for (int c = 0; c < nclass; ++c) {
    out << " {";
    bool first = true;
    for (int a = 0; a < t.q(); ++a)
      if (t.class_id[a] == c) {
        out << (first ? "" : " ") << 't' << a;
        first = false;
      }
    out << '}';
  }
  out << '\n';
}

} // namespace fo2kc
