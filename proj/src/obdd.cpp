#include "fo2kc/obdd.hpp"

#include "fo2kc/errors.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <tuple>

namespace fo2kc {

namespace {

std::vector<int> reachable(const Obdd &o) {
  std::vector<int> order;
  std::vector<char> seen(o.nodes.size(), 0);
  std::vector<std::pair<int, int>> stack;
  if (o.root > Obdd::kTrue) {
    stack.push_back({o.root, 0});
    seen[o.root] = 1;
  }
  while (!stack.empty()) {
    auto &[id, step] = stack.back();
    if (step < 2) {
      int ch = step++ == 0 ? o.nodes[id].lo : o.nodes[id].hi;
      if (ch > Obdd::kTrue && !seen[ch]) {
        seen[ch] = 1;
        stack.push_back({ch, 0});
      }
    } else {
      order.push_back(id);
      stack.pop_back();
    }
  }
  return order;
}

class Builder {
public:
  Builder(const Circuit &c, bool reduce) : c_(c), reduce_(reduce) {
    out_.num_vars = c.num_vars();
    out_.nodes.push_back({c.num_vars() + 1, 0, 0});
    out_.nodes.push_back({c.num_vars() + 1, 1, 1});
    memo_.assign(c.arena_size(), -1);
  }

  Obdd run() {
    if (!c_.conditioned().empty())
      throw UnsupportedError("conditioned circuits have no block structure");
    out_.root = convert(c_.root());
    if (!obdd_ordered(out_))
      throw UnsupportedError("circuit does not follow the block order");
    return std::move(out_);
  }

private:
  struct Item {
    std::vector<int> lits; // ascending by variable
    size_t pos = 0;
    int cont = -1; // circuit node, -1 for TRUE
  };

  int mk(int var, int lo, int hi) {
    if (reduce_) {
      if (lo == hi)
        return lo;
      auto key = std::make_tuple(var, lo, hi);
      auto it = unique_.find(key);
      if (it != unique_.end())
        return it->second;
      out_.nodes.push_back({var, lo, hi});
      int id = static_cast<int>(out_.nodes.size()) - 1;
      unique_.emplace(key, id);
      return id;
    }
    out_.nodes.push_back({var, lo, hi});
    return static_cast<int>(out_.nodes.size()) - 1;
  }

  Item item_of(int id) {
    const Node &nd = c_.node(id);
    Item it;
    if (nd.kind == NodeKind::Literal) {
      it.lits.push_back(nd.literal);
      return it;
    }
    if (nd.kind == NodeKind::Or) {
      it.cont = id;
      return it;
    }
    for (int ch : nd.children) {
      const Node &k = c_.node(ch);
      if (k.kind == NodeKind::Literal)
        it.lits.push_back(k.literal);
      else if (it.cont < 0)
        it.cont = ch;
      else
        throw UnsupportedError("AND node with several non-literal children");
    }
    std::sort(it.lits.begin(), it.lits.end(),
              [](int a, int b) { return std::abs(a) < std::abs(b); });
    return it;
  }

  int convert(int id) {
    if (memo_[id] >= 0)
      return memo_[id];
    const Node &nd = c_.node(id);
    int r;
    if (nd.kind == NodeKind::Or) {
      if (nd.children.size() > 1 && nd.decision == 0)
        throw UnsupportedError("OR node without a decision tag");
      std::vector<Item> items;
      for (int ch : nd.children)
        items.push_back(item_of(ch));
      r = split(std::move(items));
    } else {
      std::vector<Item> items{item_of(id)};
      r = split(std::move(items));
    }
    return memo_[id] = r;
  }

  // Tests the smallest pending variable and routes every branch that fixes it.
  int split(std::vector<Item> items) {
    if (items.empty())
      return Obdd::kFalse;
    int var = 0;
    bool exhausted = false;
    for (const Item &it : items) {
      if (it.pos == it.lits.size()) {
        exhausted = true;
        continue;
      }
      int v = std::abs(it.lits[it.pos]);
      if (var == 0 || v < var)
        var = v;
    }
    if (exhausted) {
      if (items.size() > 1)
        throw UnsupportedError("OR branches are not separated by a decision");
      return items[0].cont < 0 ? Obdd::kTrue : convert(items[0].cont);
    }
    std::vector<Item> lo, hi;
    for (Item &it : items) {
      int l = it.lits[it.pos];
      if (std::abs(l) != var) {
        lo.push_back(it);
        hi.push_back(std::move(it));
        continue;
      }
      ++it.pos;
      (l > 0 ? hi : lo).push_back(std::move(it));
    }
    int l = split(std::move(lo));
    int h = split(std::move(hi));
    return mk(var, l, h);
  }

  const Circuit &c_;
  bool reduce_;
  Obdd out_;
  std::vector<int> memo_;
  std::map<std::tuple<int, int, int>, int> unique_;
};

} // namespace

std::size_t Obdd::node_count() const { return reachable(*this).size(); }

std::size_t Obdd::edge_count() const { return 2 * node_count(); }

Obdd to_obdd(const Circuit &c, bool reduce) {
  if (c.root() < 0)
    throw Error("circuit has no root");
  return Builder(c, reduce).run();
}

bool obdd_ordered(const Obdd &o) {
  for (int id : reachable(o)) {
    const auto &nd = o.nodes[id];
    if (o.nodes[nd.lo].var <= nd.var || o.nodes[nd.hi].var <= nd.var)
      return false;
  }
  return true;
}

BigInt obdd_count(const Obdd &o) {
  if (!obdd_ordered(o))
    throw Error("OBDD violates the variable order");
  std::vector<BigInt> cnt(o.nodes.size());
  cnt[Obdd::kFalse] = 0;
  cnt[Obdd::kTrue] = 1;
  for (int id : reachable(o)) {
    const auto &nd = o.nodes[id];
    cnt[id] = (cnt[nd.lo] << (o.nodes[nd.lo].var - nd.var - 1)) +
              (cnt[nd.hi] << (o.nodes[nd.hi].var - nd.var - 1));
  }
  return cnt[o.root] << (o.nodes[o.root].var - 1);
}

bool obdd_eval(const Obdd &o, const Assignment &a) {
  int id = o.root;
  while (id > Obdd::kTrue) {
    const auto &nd = o.nodes[id];
    if (nd.var >= static_cast<int>(a.size()) || a[nd.var] < 0)
      throw Error("assignment is missing variable " + std::to_string(nd.var));
    id = a[nd.var] == 1 ? nd.hi : nd.lo;
  }
  return id == Obdd::kTrue;
}

void write_obdd(const Obdd &o, std::ostream &out) {
  auto order = reachable(o);
  std::vector<int> name(o.nodes.size(), -1);
  for (size_t k = 0; k < order.size(); ++k)
    name[order[k]] = static_cast<int>(k) + 2;
  auto ref = [&](int id) {
    return id == Obdd::kFalse  ? std::string("T0")
           : id == Obdd::kTrue ? std::string("T1")
                               : std::to_string(name[id]);
  };
  out << "obdd " << o.num_vars << ' ' << order.size() << ' ' << ref(o.root)
      << '\n';
  for (int id : order) {
    const auto &nd = o.nodes[id];
    out << name[id] << ' ' << nd.var << ' ' << ref(nd.lo) << ' ' << ref(nd.hi)
        << '\n';
  }
}

} // namespace fo2kc
