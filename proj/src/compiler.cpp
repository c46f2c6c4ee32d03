#include "fo2kc/compiler.hpp"

#include "fo2kc/errors.hpp"

#include <chrono>
#include <deque>
#include <map>
#include <ostream>

namespace fo2kc {

void write_stats(const CompileStats &s, std::ostream &out) {
  out << "stage1_calls=" << s.stage1_calls << '\n'
      << "stage2_calls=" << s.stage2_calls << '\n'
      << "expanded_calls=" << s.expanded() << '\n'
      << "stage1_lookups=" << s.stage1_lookups << '\n'
      << "stage1_hits=" << s.stage1_hits << '\n'
      << "stage2_lookups=" << s.stage2_lookups << '\n'
      << "stage2_hits=" << s.stage2_hits << '\n'
      << "stage1_checks=" << s.stage1_checks << '\n'
      << "stage1_failures=" << s.stage1_failures << '\n'
      << "stage2_checks=" << s.stage2_checks << '\n'
      << "stage2_failures=" << s.stage2_failures << '\n'
      << "nodes_before=" << s.nodes_before << '\n'
      << "edges_before=" << s.edges_before << '\n'
      << "nodes_after=" << s.nodes_after << '\n'
      << "edges_after=" << s.edges_after << '\n'
      << "seconds=" << s.seconds << '\n';
}

std::vector<int> cache_key_stage1(const CompileState &state,
                                  const TypeTables &tables, int i) {
  std::vector<int> key{i};
  for (int l = 0; l < i; ++l)
    key.push_back(tables.class_id[state.unary_choice[l]]);
  return key;
}

std::vector<std::uint32_t> cache_key_stage2(const CompileState &state,
                                            const TypeTables &tables, int p) {
  std::vector<std::uint32_t> key{static_cast<std::uint32_t>(p)};
  key.insert(key.end(), state.sat.begin(), state.sat.end());
  int idx = 0;
  for (int a = 0; a < state.n; ++a)
    for (int b = a + 1; b < state.n; ++b, ++idx)
      if (idx >= p)
        key.push_back(static_cast<std::uint32_t>(
            tables.cell_id[state.unary_choice[a]][state.unary_choice[b]]));
  return key;
}

Compiler::Compiler(SnfSentence snf, int slot_cap)
    : snf_(std::move(snf)), slot_cap_(slot_cap),
      tables_(build_type_tables(snf_, slot_cap)), store_(tables_) {}

AuxSentence &Compiler::aux() {
  if (!aux_)
    aux_ = std::make_unique<AuxSentence>(snf_, tables_, slot_cap_);
  return *aux_;
}

namespace {

class Run {
public:
  Run(Compiler &comp, int n, const CompileOptions &opts)
      : comp_(comp), t_(comp.tables()), opts_(opts),
        table_(comp.snf().vocab, n), circuit_(table_.num_vars()),
        state_(n, t_.q()) {
    pairs_.reserve(table_.num_pairs());
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        pairs_.push_back({i, j});
  }

  CompileResult run() {
    int root = state_.n == 0 ? circuit_.add_true() : stage1(0);
    circuit_.set_root(root);
    return {std::move(circuit_), std::move(table_), stats_};
  }

private:
  void expand() {
    if (opts_.max_expanded && stats_.expanded() >= *opts_.max_expanded)
      throw ResourceError("expanded-call budget of " +
                          std::to_string(*opts_.max_expanded) + " exhausted");
  }

  // AND of the type's literals over the block starting at `start`, with the
  // subcircuit appended unless it is TRUE.
  int branch(int start, int size, TypeMask mask, int sub) {
    std::vector<int> kids;
    for (int s = 0; s < size; ++s)
      kids.push_back(circuit_.add_literal((mask >> s) & 1 ? start + s
                                                          : -(start + s)));
    const Node &nd = circuit_.node(sub);
    if (!(nd.kind == NodeKind::And && nd.children.empty()))
      kids.push_back(sub);
    return circuit_.add_and(std::move(kids));
  }


  // A decision with a single surviving branch needs no OR node.
  int decide(std::vector<int> kids, int start) {
    if (kids.size() == 1)
      return kids[0];
    return circuit_.add_or(std::move(kids), start);
  }

  void report(int stage, int i, int j, bool verdict) {
    if (opts_.observer) {
      CheckEvent ev{stage, i, j, &state_, verdict};
      opts_.observer(ev);
    }
  }

  int stage1(int i) {
    if (i == state_.n)
      return stage2(0);
    std::vector<int> key;
    if (opts_.stage1_cache) {
      key = cache_key_stage1(state_, t_, i);
      ++stats_.stage1_lookups;
      auto it = cache1_.find(key);
      if (it != cache1_.end()) {
        ++stats_.stage1_hits;
        return it->second;
      }
    }
    expand();
    ++stats_.stage1_calls;
    int start = table_.unary_block_start(i);
    std::vector<int> kids;
    for (int t = 0; t < t_.q(); ++t) {
      state_.unary_choice[i] = t;
      ++state_.partial.counts[t];
      state_.sat[i] = t_.beta_diag[t];
      state_.position_i = i;
      ++stats_.stage1_checks;
      bool ok = extendable_stage1(state_, comp_.store());
      report(1, i, 0, ok);
      if (ok) {
        int sub = stage1(i + 1);
        kids.push_back(branch(start, table_.unary_block_size(), t_.unary[t], sub));
      } else {
        ++stats_.stage1_failures;
      }
      --state_.partial.counts[t];
    }
    state_.unary_choice[i] = -1;
    state_.sat[i] = 0;
    int node = decide(std::move(kids), start);
    if (opts_.stage1_cache)
      cache1_.emplace(std::move(key), node);
    return node;
  }

  int stage2(int p) {
    if (p == static_cast<int>(pairs_.size()))
      return circuit_.add_true();
    std::vector<std::uint32_t> key;
    if (opts_.stage2_cache) {
      key = cache_key_stage2(state_, t_, p);
      ++stats_.stage2_lookups;
      auto it = cache2_.find(key);
      if (it != cache2_.end()) {
        ++stats_.stage2_hits;
        return it->second;
      }
    }
    expand();
    ++stats_.stage2_calls;
    auto [i, j] = pairs_[p];
    int start = table_.pair_block_start(p);
    int ti = state_.unary_choice[i], tj = state_.unary_choice[j];
    const auto &cell = t_.binary[ti][tj];
    std::uint32_t si = state_.sat[i], sj = state_.sat[j];
    std::vector<int> kids;
    for (size_t c = 0; c < cell.size(); ++c) {
      TypeMask b = cell[c];
      state_.binary_choice[p] = static_cast<int>(c);
      state_.sat[i] = si | t_.beta_forward(b);
      state_.sat[j] = sj | t_.beta_backward(b);
      state_.position_i = i;
      state_.position_j = j;
      ++stats_.stage2_checks;
      bool ok = t_.m == 0 || extendable_stage2(state_, comp_.aux(), i, j);
      report(2, i, j, ok);
      if (ok) {
        int sub = stage2(p + 1);
        kids.push_back(branch(start, table_.pair_block_size(), b, sub));
      } else {
        ++stats_.stage2_failures;
      }
    }
    state_.binary_choice[p] = -1;
    state_.sat[i] = si;
    state_.sat[j] = sj;
    int node = decide(std::move(kids), table_.pair_block_size() > 0 ? start : 0);
    if (opts_.stage2_cache)
      cache2_.emplace(std::move(key), node);
    return node;
  }

  Compiler &comp_;
  const TypeTables &t_;
  const CompileOptions &opts_;
  AtomTable table_;
  Circuit circuit_;
  CompileState state_;
  CompileStats stats_;
  std::vector<std::pair<int, int>> pairs_;
  std::map<std::vector<int>, int> cache1_;
  std::map<std::vector<std::uint32_t>, int> cache2_;
};

} // namespace

CompileResult Compiler::compile(int n, const CompileOptions &opts) {
  if (n < 0)
    throw Error("domain size must be non-negative");
  auto t0 = std::chrono::steady_clock::now();
  Run run(*this, n, opts);
  CompileResult res = run.run();
  res.stats.nodes_before = res.circuit.node_count();
  res.stats.edges_before = res.circuit.edge_count();
  if (res.stats.expanded() > res.stats.edges_before + 1)
    throw Error("expanded calls " + std::to_string(res.stats.expanded()) +
                " exceed edge count + 1 = " +
                std::to_string(res.stats.edges_before + 1));
  if (opts.postprocess)
    res.circuit = postprocess(res.circuit);
  res.stats.nodes_after = res.circuit.node_count();
  res.stats.edges_after = res.circuit.edge_count();
  res.stats.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return res;
}

CompileResult compile(const SnfSentence &snf, int n, const CompileOptions &opts) {
  Compiler c(snf);
  return c.compile(n, opts);
}

Circuit postprocess(const Circuit &c) {
  std::vector<Node> nodes(c.arena_size());
  auto order = c.topological();
  std::vector<int> parents(c.arena_size(), 0);
  for (int id : order) {
    nodes[id] = c.node(id);
    for (int ch : nodes[id].children)
      ++parents[ch];
  }
  int root = c.root();

  std::deque<int> queue{root};
  std::vector<char> visited(c.arena_size(), 0);
  visited[root] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    Node &nu = nodes[u];
    if (nu.kind == NodeKind::Literal)
      continue;
    std::vector<int> merged;
    std::vector<int> work(nu.children.rbegin(), nu.children.rend());
    while (!work.empty()) {
      int ch = work.back();
      work.pop_back();
      const Node &nc = nodes[ch];
      if (ch != root && nc.kind == nu.kind && parents[ch] == 1) {
        if (nu.kind == NodeKind::Or && nc.decision != nu.decision)
          nu.decision = 0;
        for (auto it = nc.children.rbegin(); it != nc.children.rend(); ++it)
          work.push_back(*it);
        continue;
      }
      merged.push_back(ch);
    }
    // Splicing can give a grandchild a second edge from u.
    nu.children = std::move(merged);
    for (int ch : nu.children)
      if (!visited[ch]) {
        visited[ch] = 1;
        queue.push_back(ch);
      }
  }

  Circuit out(c.num_vars());
  std::vector<int> map(c.arena_size(), -1);
  auto build = [&](auto &&self, int id) -> int {
    if (map[id] >= 0)
      return map[id];
    const Node &nd = nodes[id];
    int r;
    if (nd.kind == NodeKind::Literal) {
      r = out.add_literal(nd.literal);
    } else {
      std::vector<int> kids;
      for (int ch : nd.children)
        kids.push_back(self(self, ch));
      r = nd.kind == NodeKind::And ? out.add_and(std::move(kids))
                                   : out.add_or(std::move(kids), nd.decision);
    }
    return map[id] = r;
  };
  out.set_root(build(build, root));
  out.set_conditioned(c.conditioned());
  return out;
}

} // namespace fo2kc
