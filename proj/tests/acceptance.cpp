// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "fo2kc/compiler.hpp"
#include "fo2kc/errors.hpp"
#include "fo2kc/obdd.hpp"
#include "support.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

using namespace fo2kc;
namespace ft = fo2kc::testing;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kBenchmarks{
    "rb",       "e",        "rbe",      "p",        "d",
    "u2-b2",    "u4-b1",    "u4-b2",    "u4-b2-ad", "u4-b2-so",
    "u4-b2-cc", "u4-b2-fd", "u4-b2-ao", "u4-b2-fo", "u6-b2"};

constexpr int kMaxN = 4;

struct Case {
  std::string name;
  int n;
  Sentence sentence;
  bool in_cap;     // original grounding within the brute-force cap
  BigInt oracle;   // brute force, when in_cap
  BigInt count;    // circuit count with default options
};

class Suite {
public:
  Suite() {
    for (const auto &name : kBenchmarks) {
      Sentence s = ft::bench(name);
      compilers_.emplace(name, std::make_unique<Compiler>(to_snf(s)));
      sentences_.emplace(name, s);
    }
  }

  Compiler &compiler(const std::string &name) { return *compilers_.at(name); }

  std::vector<Case> &cases() {
    if (cases_.empty())
      for (const auto &name : kBenchmarks)
        for (int n = 0; n <= kMaxN; ++n) {
          Case c{name, n, sentences_.at(name), false, 0, 0};
          c.in_cap = AtomTable(c.sentence.vocab, n).num_vars() <= kDefaultAtomCap;
          if (c.in_cap)
            c.oracle = brute_force_count(c.sentence, n);
          cases_.push_back(std::move(c));
        }
    return cases_;
  }

private:
  std::map<std::string, std::unique_ptr<Compiler>> compilers_;
  std::map<std::string, Sentence> sentences_;
  std::vector<Case> cases_;
};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string &what) {
    if (pass)
      detail << "first problem: " << what << "; ";
    pass = false;
  }
};

int failures = 0;

void report(int id, const std::string &title, Outcome &o, Clock::time_point t0) {
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << title << " -- "
            << o.detail.str() << "(" << secs << " s)" << std::endl;
  failures += !o.pass;
}

std::string where(const Case &c) { return c.name + " n=" + std::to_string(c.n); }

void oracle_counts(Suite &suite) {
  auto t0 = Clock::now();
  Outcome o;
  int compared = 0, compiled = 0;
  for (Case &c : suite.cases()) {
    c.count = model_count(suite.compiler(c.name).compile(c.n).circuit);
    ++compiled;
    if (!c.in_cap)
      continue;
    ++compared;
    if (c.count != c.oracle)
      o.fail(where(c) + " circuit " + c.count.str() + " oracle " + c.oracle.str());
  }
  struct Anchor {
    const char *name;
    int n;
    int value;
  };
  for (Anchor a : {Anchor{"rb", 2, 6}, {"e", 3, 4}, {"e", 4, 41}, {"p", 2, 7},
                   {"p", 3, 265}, {"rb", 4, 162}})
    for (const Case &c : suite.cases())
      if (c.name == a.name && c.n == a.n && (c.count != a.value || c.oracle != a.value))
        o.fail(where(c) + " anchored value " + std::to_string(a.value));
  o.detail << compared << " oracle comparisons, " << compiled - compared
           << " compiled beyond the grounding cap, 6 anchored values ";
  report(1, "oracle count equivalence", o, t0);
}

void structure_and_transparency(Suite &suite, Outcome &transparency) {
  auto t0 = Clock::now();
  Outcome o;
  int circuits = 0, skipped = 0;
  std::size_t bound_violations = 0;
  for (const Case &c : suite.cases())
    for (const auto &opts : ft::option_combos()) {
      // beyond the grounding cap an uncached Stage-II tree has one leaf per
      // model block (about 1.7e8 for u4-b2-fo at n=4); only cached runs there
      if (!c.in_cap && !opts.stage2_cache) {
        ++skipped;
        continue;
      }
      CompileResult res;
      try {
        res = suite.compiler(c.name).compile(c.n, opts);
      } catch (const Error &e) {
        // compile() enforces the expanded-call bound itself
        ++bound_violations;
        transparency.fail(where(c) + " " + e.what());
        continue;
      }
      ++circuits;
      DnnfReport r = verify_dnnf(res.circuit);
      if (!r.ok())
        o.fail(where(c) + " " + ft::describe(opts) + " " + r.problem +
               (r.unverified ? " (unverified ORs)" : ""));
      if (res.stats.expanded() > res.stats.edges_before + 1) {
        ++bound_violations;
        transparency.fail(where(c) + " expanded-call bound");
      }
      if (res.stats.edges_after > res.stats.edges_before)
        transparency.fail(where(c) + " postprocess grew the circuit");
      if (model_count(res.circuit) != c.count)
        transparency.fail(where(c) + " count changes under " + ft::describe(opts));
    }
  o.detail << circuits << " circuits verified (8 option combinations per grounding-capped case, "
           << skipped << " uncached runs beyond the cap skipped) ";
  transparency.detail << circuits << " runs with invariant counts and expanded <= edges+1; ";
  report(2, "structural d-DNNF", o, t0);
}

void enumeration(Suite &suite) {
  auto t0 = Clock::now();
  Outcome o;
  int checked = 0;
  std::size_t models_seen = 0;
  for (const Case &c : suite.cases()) {
    if (!c.in_cap || c.oracle > 10000)
      continue;
    Compiler &comp = suite.compiler(c.name);
    CompileResult res = comp.compile(c.n);
    Grounding orig = ground(c.sentence, c.n);
    Grounding snfg = ground(snf_to_sentence(comp.snf()), c.n);
    std::set<std::vector<int>> from_circuit;
    for (const Assignment &a : enumerate_models(res.circuit)) {
      if (!eval_ground(snfg.formula, a))
        o.fail(where(c) + " circuit model violates the grounding");
      Assignment p = project_model(a, snfg.table, orig.table);
      if (!eval_ground(orig.formula, p))
        o.fail(where(c) + " projected model violates the original grounding");
      from_circuit.insert(ft::as_literals(p, orig.table.num_vars()));
    }
    std::set<std::vector<int>> from_grounding;
    for (auto &m : ft::ground_models(orig))
      from_grounding.insert(std::move(m));
    for_each_ground_model(snfg.formula, snfg.table.num_vars(),
                          [&](const Assignment &a) {
                            if (!eval_circuit(res.circuit, a))
                              o.fail(where(c) + " grounding model rejected by circuit");
                            return true;
                          });
    if (from_circuit != from_grounding || BigInt(from_grounding.size()) != c.oracle)
      o.fail(where(c) + " model sets differ");
    models_seen += from_grounding.size();
    ++checked;
  }
  o.detail << checked << " cases, " << models_seen << " models matched both ways ";
  report(3, "enumeration cross-check", o, t0);
}

void extendability(Suite &suite) {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t checks = 0, disagreements = 0;
  for (const char *name : {"e", "d", "rb"})
    for (int n = 1; n <= kMaxN; ++n)
      for (bool caches : {false, true}) {
        Compiler &comp = suite.compiler(name);
        ft::SnfOracle oracle(comp.snf(), n);
        CompileOptions opts;
        opts.stage1_cache = opts.stage2_cache = caches;
        opts.observer = [&](const CheckEvent &ev) {
          ++checks;
          auto lits = ft::pinned_literals(*ev.state, comp.tables(),
                                          oracle.grounding.table);
          if (oracle.satisfiable(lits) != ev.verdict) {
            ++disagreements;
            o.fail(std::string(name) + " n=" + std::to_string(n) + " stage " +
                   std::to_string(ev.stage));
          }
        };
        comp.compile(n, opts);
      }
  o.detail << checks << " verdicts replayed, " << disagreements << " disagreements ";
  report(4, "extendability exactness", o, t0);
}

std::vector<Configuration> configs_up_to(int q, int total) {
  std::vector<Configuration> out;
  std::vector<std::uint32_t> c(q, 0);
  auto rec = [&](auto &&self, int k, int left) -> void {
    if (k == q) {
      out.push_back({c});
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[k] = v;
      self(self, k + 1, left - v);
    }
    c[k] = 0;
  };
  rec(rec, 0, total);
  return out;
}

void templates(Suite &suite) {
  auto t0 = Clock::now();
  Outcome o;
  std::size_t configs = 0, pairs = 0;
  for (const char *name : {"e", "rb"}) {
    const TypeTables &t = suite.compiler(name).tables();
    TemplateStore via_templates(t), exact(t);
    auto all = configs_up_to(t.q(), 5);
    std::vector<bool> sat;
    for (const auto &c : all) {
      sat.push_back(via_templates.config_satisfiable(c));
      if (sat.back() != exact.base_config_sat(c))
        o.fail(std::string(name) + " " + to_string(c));
    }
    for (size_t a = 0; a < all.size(); ++a)
      for (size_t b = 0; b < all.size(); ++b)
        if (preceq(all[a], all[b])) {
          ++pairs;
          if (sat[a] && !sat[b])
            o.fail(std::string(name) + " monotonicity " + to_string(all[a]) +
                   " " + to_string(all[b]));
        }
    configs += all.size();
  }
  o.detail << configs << " configurations, " << pairs << " ordered pairs ";
  report(5, "template characterization", o, t0);
}

void obdd(Suite &suite) {
  auto t0 = Clock::now();
  Outcome o;
  int converted = 0;
  for (const Case &c : suite.cases())
    for (bool pp : {false, true}) {
      CompileOptions opts;
      opts.postprocess = pp;
      CompileResult res = suite.compiler(c.name).compile(c.n, opts);
      Obdd b;
      try {
        b = to_obdd(res.circuit);
      } catch (const UnsupportedError &e) {
        if (!pp)
          o.fail(where(c) + " " + e.what());
        continue;
      }
      ++converted;
      if (!obdd_ordered(b))
        o.fail(where(c) + " order violated");
      if (obdd_count(b) != c.count)
        o.fail(where(c) + " obdd count " + obdd_count(b).str());
    }
  o.detail << converted << " OBDDs with matching counts and ordered paths ";
  report(6, "OBDD agreement", o, t0);
}

void scaling(Suite &suite, Outcome &o, Clock::time_point t0) {
  Compiler &comp = suite.compiler("e");
  auto start = Clock::now();
  CompileResult cached = comp.compile(10);
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 30)
    o.fail("cached compile of e at n=10 took " + std::to_string(secs) + " s");
  if (cached.stats.expanded() > cached.stats.edges_before + 1)
    o.fail("expanded-call bound at n=10");
  CompileOptions plain;
  plain.stage1_cache = plain.stage2_cache = false;
  plain.max_expanded = cached.stats.expanded();
  std::string uncached;
  try {
    CompileResult r = comp.compile(10, plain);
    uncached = std::to_string(r.stats.expanded());
    if (r.stats.expanded() <= cached.stats.expanded())
      o.fail("uncached compile expanded no more calls");
  } catch (const ResourceError &) {
    uncached = "more than " + std::to_string(cached.stats.expanded());
  }
  o.detail << "e n=10: " << secs << " s, count " << model_count(cached.circuit)
           << ", expanded " << cached.stats.expanded() << " cached vs "
           << uncached << " uncached ";
  report(7, "optimization transparency and expanded-call contract", o, t0);
}

void size_trend(Suite &suite) {
  auto t0 = Clock::now();
  Outcome o;
  const int paper[] = {214, 468, 1016, 2210, 4818};
  std::size_t prev = 0;
  for (int n = 4; n <= 8; ++n) {
    std::size_t edges = suite.compiler("rb").compile(n).circuit.edge_count();
    double ratio = static_cast<double>(edges) / paper[n - 4];
    o.detail << "n=" << n << ": " << edges << " vs " << paper[n - 4] << " ("
             << static_cast<int>(ratio * 100 + 0.5) / 100.0 << "x); ";
    if (ratio > 2.0 || ratio < 0.5)
      o.fail("n=" + std::to_string(n) + " outside 2x");
    if (edges <= prev)
      o.fail("not monotone at n=" + std::to_string(n));
    prev = edges;
  }
  report(8, "size trend for two-colored graphs", o, t0);
}

void determinism(Suite &suite) {
  auto t0 = Clock::now();
  Outcome o;
  int artifacts = 0;
  for (const char *name : {"rb", "d", "p", "u2-b2", "u4-b2-so"})
    for (int n = 1; n <= 4; ++n) {
      std::string out[2][3];
      for (int round = 0; round < 2; ++round) {
        // a fresh compiler each round so no state carries over
        Compiler comp(to_snf(ft::bench(name)));
        CompileResult res = comp.compile(n);
        std::ostringstream nnf, bdd, cnf;
        export_nnf(res.circuit, nnf);
        write_obdd(to_obdd(comp.compile(n, {.postprocess = false}).circuit), bdd);
        Grounding g = ground(ft::bench(name), n);
        export_dimacs(g.formula, g.table, cnf);
        out[round][0] = nnf.str();
        out[round][1] = bdd.str();
        out[round][2] = cnf.str();
      }
      for (int k = 0; k < 3; ++k) {
        ++artifacts;
        if (out[0][k] != out[1][k])
          o.fail(std::string(name) + " n=" + std::to_string(n) + " artifact " +
                 std::to_string(k));
      }
    }
  o.detail << artifacts << " artifact pairs byte-identical ";
  report(9, "determinism of artifacts", o, t0);
}

} // namespace

int main() {
  try {
    Suite suite;
    oracle_counts(suite);
    Outcome transparency;
    auto t7 = Clock::now();
    structure_and_transparency(suite, transparency);
    enumeration(suite);
    extendability(suite);
    templates(suite);
    obdd(suite);
    scaling(suite, transparency, t7);
    size_trend(suite);
    determinism(suite);
  } catch (const std::exception &e) {
    std::cout << "[FAIL] aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed"
                         : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
