#include "fo2kc/circuit.hpp"

#include "fo2kc/errors.hpp"

#include <algorithm>
#include <functional>

namespace fo2kc {

Circuit::Circuit(int num_vars)
    : num_vars_(num_vars), literal_ids_(2 * (num_vars + 1), -1) {}

int Circuit::add_literal(int lit) {
  int v = lit < 0 ? -lit : lit;
  if (lit == 0 || v > num_vars_)
    throw Error("literal " + std::to_string(lit) + " out of range");
  int slot = 2 * v + (lit < 0);
  if (literal_ids_[slot] < 0) {
    Node nd;
    nd.kind = NodeKind::Literal;
    nd.literal = lit;
    nodes_.push_back(std::move(nd));
    literal_ids_[slot] = static_cast<int>(nodes_.size()) - 1;
  }
  return literal_ids_[slot];
}

int Circuit::add_and(std::vector<int> children) {
  Node nd;
  nd.kind = NodeKind::And;
  nd.children = std::move(children);
  nodes_.push_back(std::move(nd));
  return static_cast<int>(nodes_.size()) - 1;
}

int Circuit::add_or(std::vector<int> children, int decision) {
  Node nd;
  nd.kind = NodeKind::Or;
  nd.decision = decision;
  nd.children = std::move(children);
  nodes_.push_back(std::move(nd));
  return static_cast<int>(nodes_.size()) - 1;
}

std::vector<int> Circuit::topological() const {
  std::vector<int> order;
  if (root_ < 0)
    return order;
  std::vector<char> seen(nodes_.size(), 0);
  // Iterative post-order DFS.
  std::vector<std::pair<int, size_t>> stack{{root_, 0}};
  seen[root_] = 1;
  while (!stack.empty()) {
    auto &[id, next] = stack.back();
    const auto &kids = nodes_[id].children;
    if (next < kids.size()) {
      int c = kids[next++];
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back({c, 0});
      }
    } else {
      order.push_back(id);
      stack.pop_back();
    }
  }
  return order;
}

std::size_t Circuit::node_count() const { return topological().size(); }

std::size_t Circuit::edge_count() const {
  std::size_t e = 0;
  for (int id : topological())
    e += nodes_[id].children.size();
  return e;
}

namespace {

// Variable sets per node as bit words.
struct VarSets {
  int words;
  std::vector<std::vector<std::uint64_t>> sets;
  std::vector<int> size;

  VarSets(const Circuit &c, const std::vector<int> &order)
      : words((c.num_vars() + 64) / 64), sets(c.arena_size()),
        size(c.arena_size(), 0) {
    for (int id : order) {
      const Node &nd = c.node(id);
      auto &s = sets[id];
      s.assign(words, 0);
      if (nd.kind == NodeKind::Literal) {
        int v = std::abs(nd.literal);
        s[v / 64] |= std::uint64_t{1} << (v % 64);
      } else {
        for (int ch : nd.children)
          for (int w = 0; w < words; ++w)
            s[w] |= sets[ch][w];
      }
      int n = 0;
      for (auto w : s)
        n += __builtin_popcountll(w);
      size[id] = n;
    }
  }

  bool has(int id, int v) const { return (sets[id][v / 64] >> (v % 64)) & 1; }

  std::vector<int> list(int id, const Circuit &c) const {
    std::vector<int> out;
    for (int v = 1; v <= c.num_vars(); ++v)
      if (has(id, v))
        out.push_back(v);
    return out;
  }
};

std::vector<BigInt> node_counts(const Circuit &c, const std::vector<int> &order,
                                const VarSets &vs) {
  std::vector<BigInt> cnt(c.arena_size());
  for (int id : order) {
    const Node &nd = c.node(id);
    switch (nd.kind) {
    case NodeKind::Literal:
      cnt[id] = 1;
      break;
    case NodeKind::And: {
      BigInt p = 1;
      for (int ch : nd.children)
        p *= cnt[ch];
      cnt[id] = p;
      break;
    }
    case NodeKind::Or: {
      BigInt s = 0;
      for (int ch : nd.children)
        if (cnt[ch] != 0)
          s += cnt[ch] << (vs.size[id] - vs.size[ch]);
      cnt[id] = s;
      break;
    }
    }
  }
  return cnt;
}

int universe_size(const Circuit &c) {
  std::vector<int> vars;
  for (int l : c.conditioned())
    vars.push_back(std::abs(l));
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return c.num_vars() - static_cast<int>(vars.size());
}

} // namespace

BigInt model_count(const Circuit &c) {
  if (c.root() < 0)
    throw Error("circuit has no root");
  auto order = c.topological();
  VarSets vs(c, order);
  auto cnt = node_counts(c, order, vs);
  return cnt[c.root()] << (universe_size(c) - vs.size[c.root()]);
}

ModelStream::ModelStream(const Circuit &c, std::optional<BigInt> limit)
    : c_(c) {
  auto order = c.topological();
  VarSets vs(c, order);
  counts_ = node_counts(c, order, vs);
  vars_.resize(c.arena_size());
  for (int id : order)
    vars_[id] = vs.list(id, c);
  std::vector<char> fixed(c.num_vars() + 1, 0);
  for (int l : c.conditioned())
    fixed[std::abs(l)] = 1;
  for (int v = 1; v <= c.num_vars(); ++v)
    if (!fixed[v] && !vs.has(c.root(), v))
      outside_.push_back(v);
  total_ = counts_[c.root()] << outside_.size();
  end_ = limit && *limit < total_ ? *limit : total_;
}

void ModelStream::fill_gap(const std::vector<int> &vars, BigInt r,
                           Assignment &out) const {
  // Last variable is the least significant digit.
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    out[*it] = static_cast<std::int8_t>(static_cast<int>(r & 1));
    r >>= 1;
  }
}

void ModelStream::unrank(int id, BigInt r, Assignment &out) const {
  const Node &nd = c_.node(id);
  switch (nd.kind) {
  case NodeKind::Literal:
    out[std::abs(nd.literal)] = nd.literal > 0 ? 1 : 0;
    return;
  case NodeKind::And: {
    // First child varies slowest.
    for (size_t k = nd.children.size(); k-- > 0;) {
      const BigInt &ck = counts_[nd.children[k]];
      unrank(nd.children[k], r % ck, out);
      r /= ck;
    }
    return;
  }
  case NodeKind::Or:
    for (int ch : nd.children) {
      std::vector<int> gap;
      std::set_difference(vars_[id].begin(), vars_[id].end(),
                          vars_[ch].begin(), vars_[ch].end(),
                          std::back_inserter(gap));
      BigInt block = counts_[ch] << gap.size();
      if (r < block) {
        BigInt low = r & ((BigInt(1) << gap.size()) - 1);
        unrank(ch, r >> gap.size(), out);
        fill_gap(gap, low, out);
        return;
      }
      r -= block;
    }
    throw Error("model index out of range");
  }
}

std::optional<Assignment> ModelStream::next() {
  if (index_ >= end_)
    return std::nullopt;
  Assignment a(c_.num_vars() + 1, -1);
  for (int l : c_.conditioned())
    a[std::abs(l)] = l > 0 ? 1 : 0;
  BigInt low = index_ & ((BigInt(1) << outside_.size()) - 1);
  unrank(c_.root(), index_ >> outside_.size(), a);
  fill_gap(outside_, low, a);
  ++index_;
  return a;
}

std::vector<Assignment> enumerate_models(const Circuit &c,
                                         std::optional<BigInt> limit) {
  std::vector<Assignment> out;
  ModelStream s(c, limit);
  while (auto a = s.next())
    out.push_back(std::move(*a));
  return out;
}

namespace {

bool eval_nodes(const Circuit &c, const std::vector<int> &order,
                const Assignment &a, std::vector<char> &val) {
  for (int id : order) {
    const Node &nd = c.node(id);
    switch (nd.kind) {
    case NodeKind::Literal: {
      int v = std::abs(nd.literal);
      if (v >= static_cast<int>(a.size()) || a[v] < 0)
        throw Error("assignment is missing variable " + std::to_string(v));
      val[id] = (a[v] == 1) == (nd.literal > 0);
      break;
    }
    case NodeKind::And:
      val[id] = std::all_of(nd.children.begin(), nd.children.end(),
                            [&](int ch) { return val[ch] != 0; });
      break;
    case NodeKind::Or:
      val[id] = std::any_of(nd.children.begin(), nd.children.end(),
                            [&](int ch) { return val[ch] != 0; });
      break;
    }
  }
  return val[c.root()] != 0;
}

} // namespace

bool eval_circuit(const Circuit &c, const Assignment &a) {
  auto order = c.topological();
  std::vector<char> val(c.arena_size(), 0);
  return eval_nodes(c, order, a, val);
}

Circuit condition(const Circuit &c, const std::vector<int> &literals) {
  std::vector<std::int8_t> fixed(c.num_vars() + 1, -1);
  std::vector<int> all = c.conditioned();
  for (int l : c.conditioned())
    fixed[std::abs(l)] = l > 0;
  for (int l : literals) {
    int v = std::abs(l);
    if (v == 0 || v > c.num_vars())
      throw Error("conditioning on unknown variable " + std::to_string(l));
    std::int8_t val = l > 0;
    if (fixed[v] >= 0 && fixed[v] != val) {
      // Contradictory literals: nothing survives.
      Circuit out(c.num_vars());
      out.set_root(out.add_false());
      all.push_back(l);
      out.set_conditioned(all);
      return out;
    }
    if (fixed[v] < 0)
      all.push_back(l);
    fixed[v] = val;
  }

  constexpr int kFalse = -1, kTrue = -2;
  Circuit out(c.num_vars());
  std::vector<int> map(c.arena_size(), kFalse);
  for (int id : c.topological()) {
    const Node &nd = c.node(id);
    if (nd.kind == NodeKind::Literal) {
      int v = std::abs(nd.literal);
      if (fixed[v] < 0)
        map[id] = out.add_literal(nd.literal);
      else
        map[id] = (fixed[v] == 1) == (nd.literal > 0) ? kTrue : kFalse;
      continue;
    }
    bool is_and = nd.kind == NodeKind::And;
    int absorbing = is_and ? kFalse : kTrue;
    int neutral = is_and ? kTrue : kFalse;
    std::vector<int> kids;
    bool absorbed = false;
    for (int ch : nd.children) {
      int m = map[ch];
      if (m == absorbing) {
        absorbed = true;
        break;
      }
      if (m != neutral)
        kids.push_back(m);
    }
    if (absorbed)
      map[id] = absorbing;
    else if (kids.empty())
      map[id] = neutral;
    else if (kids.size() == 1)
      map[id] = kids[0];
    else
      map[id] = is_and ? out.add_and(std::move(kids)) : out.add_or(std::move(kids));
  }
  int r = map[c.root()];
  if (r == kTrue)
    r = out.add_true();
  else if (r == kFalse)
    r = out.add_false();
  out.set_root(r);
  out.set_conditioned(all);
  return out;
}

namespace {

// Literals forced by a node through AND-only paths.
void forced_literals(const Circuit &c, int id, std::vector<int> &out) {
  const Node &nd = c.node(id);
  if (nd.kind == NodeKind::Literal) {
    out.push_back(nd.literal);
  } else if (nd.kind == NodeKind::And) {
    for (int ch : nd.children)
      forced_literals(c, ch, out);
  }
}

bool conflicting(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  for (int l : b)
    if (std::binary_search(a.begin(), a.end(), -l))
      return true;
  return false;
}

} // namespace

DnnfReport verify_dnnf(const Circuit &c, int exhaustive_cap) {
  DnnfReport rep;
  auto order = c.topological();
  VarSets vs(c, order);
  for (int id : order) {
    const Node &nd = c.node(id);
    if (nd.kind == NodeKind::And) {
      std::vector<std::uint64_t> acc(vs.words, 0);
      for (int ch : nd.children) {
        for (int w = 0; w < vs.words; ++w) {
          if (acc[w] & vs.sets[ch][w]) {
            if (rep.decomposable)
              rep.problem = "AND node " + std::to_string(id) +
                            " has children sharing variables";
            rep.decomposable = false;
          }
          acc[w] |= vs.sets[ch][w];
        }
      }
      continue;
    }
    if (nd.kind != NodeKind::Or || nd.children.size() < 2)
      continue;
    bool ok = true;
    if (nd.decision != 0) {
      std::vector<std::vector<int>> lits(nd.children.size());
      for (size_t k = 0; k < nd.children.size(); ++k)
        forced_literals(c, nd.children[k], lits[k]);
      for (size_t a = 0; a < lits.size() && ok; ++a)
        for (size_t b = a + 1; b < lits.size() && ok; ++b)
          ok = conflicting(lits[a], lits[b]);
    } else if (vs.size[id] <= exhaustive_cap) {
      std::vector<int> vars = vs.list(id, c);
      Assignment a(c.num_vars() + 1, 0);
      std::vector<char> val(c.arena_size(), 0);
      std::vector<int> sub;
      {
        Circuit view = c;
        view.set_root(id);
        sub = view.topological();
      }
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << vars.size()) && ok;
           ++bits) {
        for (size_t k = 0; k < vars.size(); ++k)
          a[vars[k]] = (bits >> k) & 1;
        for (int s : sub) {
          const Node &sn = c.node(s);
          if (sn.kind == NodeKind::Literal)
            val[s] = (a[std::abs(sn.literal)] == 1) == (sn.literal > 0);
          else if (sn.kind == NodeKind::And)
            val[s] = std::all_of(sn.children.begin(), sn.children.end(),
                                 [&](int ch) { return val[ch] != 0; });
          else
            val[s] = std::any_of(sn.children.begin(), sn.children.end(),
                                 [&](int ch) { return val[ch] != 0; });
        }
        int true_kids = 0;
        for (int ch : nd.children)
          true_kids += val[ch] != 0;
        ok = true_kids <= 1;
      }
    } else {
      ++rep.unverified;
      continue;
    }
    if (!ok) {
      if (rep.deterministic)
        rep.problem = "OR node " + std::to_string(id) +
                      " has children that are not mutually exclusive";
      rep.deterministic = false;
    }
  }
  return rep;
}

} // namespace fo2kc
