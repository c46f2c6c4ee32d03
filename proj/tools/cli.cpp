#include "cli.hpp"

#include "fo2kc/benchgen.hpp"
#include "fo2kc/compiler.hpp"
#include "fo2kc/errors.hpp"
#include "fo2kc/obdd.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

namespace fo2kc {

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string sentence_file;
  std::string inline_text;
  std::string bench;
  int bench_i = 0;
  int bench_j = 0;
  std::string n_text = "3";
  bool no_stage1_cache = false;
  bool no_stage2_cache = false;
  bool no_postprocess = false;
  bool stats = false;
  std::string out_path;
  std::string format;
  long long limit = -1;
  int cap = kDefaultAtomCap;
  long long max_expanded = -1;
  std::string probe;
  std::vector<std::string> positional;
};

struct Loaded {
  Sentence sentence;
  std::string label;
};

Loaded load(const RunConfig &cfg) {
  int sources = !cfg.sentence_file.empty() + !cfg.inline_text.empty() +
                !cfg.bench.empty();
  if (sources != 1)
    throw UsageError("exactly one of --sentence, --inline, --bench is required");
  if (!cfg.sentence_file.empty()) {
    std::ifstream in(cfg.sentence_file);
    if (!in)
      throw UsageError("cannot read " + cfg.sentence_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {parse_sentence(ss.str()), cfg.sentence_file};
  }
  if (!cfg.inline_text.empty())
    return {parse_sentence(cfg.inline_text), "inline"};
  BenchmarkSpec spec = benchmark_spec(cfg.bench);
  if (cfg.bench_i > 0)
    spec.i = cfg.bench_i;
  if (cfg.bench_j > 0)
    spec.j = cfg.bench_j;
  if (spec.name != "ui-bj" && (cfg.bench_i > 0 || cfg.bench_j > 0))
    throw UsageError("--i/--j only apply to the ui-bj family");
  return {generate(spec), cfg.bench};
}

std::pair<int, int> parse_range(const std::string &text) {
  auto num = [&](const std::string &s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad domain size '" + text + "'");
    return std::stoi(s);
  };
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    int n = num(text);
    return {n, n};
  }
  int lo = num(text.substr(0, dots)), hi = num(text.substr(dots + 2));
  if (lo > hi)
    throw UsageError("empty domain range '" + text + "'");
  return {lo, hi};
}

CompileOptions options(const RunConfig &cfg) {
  CompileOptions o;
  o.stage1_cache = !cfg.no_stage1_cache;
  o.stage2_cache = !cfg.no_stage2_cache;
  o.postprocess = !cfg.no_postprocess;
  o.stats = cfg.stats;
  if (cfg.max_expanded >= 0)
    o.max_expanded = static_cast<std::uint64_t>(cfg.max_expanded);
  return o;
}

class Sink {
public:
  Sink(const std::string &path, std::ostream &fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw UsageError("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream &operator*() { return *out_; }
  bool redirected() const { return file_.is_open(); }

private:
  std::ofstream file_;
  std::ostream *out_;
};

int single_n(const RunConfig &cfg) {
  auto [lo, hi] = parse_range(cfg.n_text);
  if (lo != hi)
    throw UsageError("this command takes a single domain size");
  return lo;
}

std::string literal_set(const Assignment &a, const AtomTable &table) {
  std::string s;
  for (int v = 1; v <= table.num_vars(); ++v) {
    if (v > 1)
      s += ' ';
    if (a[v] == 0)
      s += '~';
    s += table.atom_name(v);
  }
  return s;
}

int cmd_compile(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  Loaded l = load(cfg);
  int n = single_n(cfg);
  Compiler comp(to_snf(l.sentence));
  CompileResult r = comp.compile(n, options(cfg));
  Sink sink(cfg.out_path, out);
  std::string fmt = cfg.format.empty() ? "nnf" : cfg.format;
  if (fmt == "nnf")
    export_nnf(r.circuit, *sink);
  else if (fmt == "dot")
    export_dot(r.circuit, &r.table, *sink);
  else if (fmt == "obdd")
    write_obdd(to_obdd(r.circuit), *sink);
  else
    throw UsageError("compile supports --format nnf, dot or obdd");
  if (cfg.stats)
    write_stats(r.stats, sink.redirected() ? out : err);
  return kExitOk;
}

int cmd_count(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  Loaded l = load(cfg);
  auto [lo, hi] = parse_range(cfg.n_text);
  Compiler comp(to_snf(l.sentence));
  for (int n = lo; n <= hi; ++n) {
    CompileResult r = comp.compile(n, options(cfg));
    if (lo != hi)
      out << n << ' ';
    out << model_count(r.circuit) << '\n';
    if (cfg.stats)
      write_stats(r.stats, err);
  }
  return kExitOk;
}

int cmd_enumerate(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  Loaded l = load(cfg);
  int n = single_n(cfg);
  SnfSentence snf = to_snf(l.sentence);
  Compiler comp(snf);
  CompileResult r = comp.compile(n, options(cfg));
  AtomTable orig(l.sentence.vocab, n);
  std::optional<BigInt> limit;
  if (cfg.limit >= 0)
    limit = BigInt(cfg.limit);
  Sink sink(cfg.out_path, out);
  ModelStream models(r.circuit, limit);
  while (auto a = models.next())
    *sink << literal_set(project_model(*a, r.table, orig), orig) << '\n';
  return kExitOk;
}

int cmd_ground(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  Loaded l = load(cfg);
  int n = single_n(cfg);
  if (!cfg.format.empty() && cfg.format != "dimacs")
    throw UsageError("ground only writes --format dimacs");
  Grounding g = ground(l.sentence, n);
  Sink sink(cfg.out_path, out);
  export_dimacs(g.formula, g.table, *sink);
  return kExitOk;
}

int cmd_obdd(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
  Loaded l = load(cfg);
  int n = single_n(cfg);
  // The OBDD is built from the circuit before post-processing.
  CompileOptions o = options(cfg);
  o.postprocess = false;
  Compiler comp(to_snf(l.sentence));
  CompileResult r = comp.compile(n, o);
  Obdd b = to_obdd(r.circuit);
  Sink sink(cfg.out_path, out);
  write_obdd(b, *sink);
  out << "count " << obdd_count(b) << '\n';
  if (cfg.stats)
    write_stats(r.stats, err);
  return kExitOk;
}

int cmd_bench(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  const auto &pos = cfg.positional;
  if (!pos.empty() && pos[0] == "list") {
    for (const auto &name : benchmark_names())
      out << name << '\n';
    return kExitOk;
  }
  if (!pos.empty() && pos[0] == "emit") {
    if (pos.size() != 2)
      throw UsageError("usage: bench emit <name> [--i I --j J]");
    BenchmarkSpec spec = benchmark_spec(pos[1]);
    if (cfg.bench_i > 0)
      spec.i = cfg.bench_i;
    if (cfg.bench_j > 0)
      spec.j = cfg.bench_j;
    out << to_string(generate(spec));
    return kExitOk;
  }
  if (!pos.empty())
    throw UsageError("unknown bench action '" + pos[0] + "'");
  Loaded l = load(cfg);
  auto [lo, hi] = parse_range(cfg.n_text);
  Compiler comp(to_snf(l.sentence));
  Sink sink(cfg.out_path, out);
  *sink << "n nodes edges nodes_pp edges_pp expanded seconds count\n";
  for (int n = lo; n <= hi; ++n) {
    CompileOptions o = options(cfg);
    o.postprocess = true;
    CompileResult r = comp.compile(n, o);
    *sink << n << ' ' << r.stats.nodes_before << ' ' << r.stats.edges_before
          << ' ' << r.stats.nodes_after << ' ' << r.stats.edges_after << ' '
          << r.stats.expanded() << ' ' << std::fixed << std::setprecision(4)
          << r.stats.seconds << ' ' << model_count(r.circuit) << '\n';
  }
  return kExitOk;
}

// Oracle count, circuit count, OBDD count, d-DNNF structure and both
// directions of the enumeration cross-check.
int cmd_check(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  Loaded l = load(cfg);
  auto [lo, hi] = parse_range(cfg.n_text);
  SnfSentence snf = to_snf(l.sentence);
  Compiler comp(snf);
  BigInt enum_cap = cfg.limit >= 0 ? BigInt(cfg.limit) : BigInt(10000);
  bool all_ok = true;
  for (int n = lo; n <= hi; ++n) {
    CompileOptions o = options(cfg);
    CompileResult r = comp.compile(n, o);
    BigInt circuit = model_count(r.circuit);
    Grounding g = ground(l.sentence, n);
    BigInt oracle;
    std::string oracle_kind = "brute";
    if (g.table.num_vars() <= cfg.cap) {
      oracle = brute_force_count(l.sentence, n, cfg.cap);
    } else {
      oracle = cnf_count(to_cnf(g.formula, g.table.num_vars()),
                         g.table.num_vars());
      oracle_kind = "dpll";
    }
    CompileOptions raw = o;
    raw.postprocess = false;
    BigInt obdd = obdd_count(to_obdd(comp.compile(n, raw).circuit));
    DnnfReport rep = verify_dnnf(r.circuit);

    std::string enum_status = "skipped";
    if (g.table.num_vars() <= cfg.cap && circuit <= enum_cap) {
      bool ok = true;
      std::set<Assignment> seen;
      ModelStream models(r.circuit);
      while (auto a = models.next()) {
        Assignment p = project_model(*a, r.table, g.table);
        ok = ok && eval_ground(g.formula, p) && seen.insert(p).second;
      }
      BigInt grounded = 0;
      for_each_ground_model(g.formula, g.table.num_vars(),
                            [&](const Assignment &a) {
                              ++grounded;
                              if (!seen.count(a))
                                ok = false;
                              return ok;
                            });
      ok = ok && grounded == BigInt(seen.size());
      enum_status = ok ? "ok" : "mismatch";
    }
    bool ok = oracle == circuit && obdd == circuit && rep.decomposable &&
              rep.deterministic && rep.unverified == 0 &&
              enum_status != "mismatch";
    all_ok = all_ok && ok;
    out << "n=" << n << ' ' << oracle_kind << '=' << oracle
        << " circuit=" << circuit << " obdd=" << obdd
        << " dnnf=" << (rep.ok() ? "ok" : "fail")
        << " enumeration=" << enum_status << (ok ? "" : "  MISMATCH") << '\n';
  }
  out << (all_ok ? "check passed" : "check failed") << '\n';
  return all_ok ? kExitOk : kExitMismatch;
}

int cmd_snf(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  Loaded l = load(cfg);
  out << to_string(snf_to_sentence(to_snf(l.sentence)));
  return kExitOk;
}

int cmd_types(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  Loaded l = load(cfg);
  SnfSentence snf = to_snf(l.sentence);
  dump_type_tables(build_type_tables(snf), snf.vocab, out);
  return kExitOk;
}

int cmd_config(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  Loaded l = load(cfg);
  SnfSentence snf = to_snf(l.sentence);
  TypeTables tables = build_type_tables(snf);
  TemplateStore store(tables);
  out << "types " << tables.q() << "\ndelta " << store.delta() << '\n';
  if (cfg.probe.empty())
    return kExitOk;
  Configuration c;
  std::stringstream ss(cfg.probe);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad configuration '" + cfg.probe + "'");
    c.counts.push_back(static_cast<std::uint32_t>(std::stoul(item)));
  }
  if (static_cast<int>(c.counts.size()) != tables.q())
    throw UsageError("configuration needs " + std::to_string(tables.q()) +
                     " entries");
  bool sat = store.config_satisfiable(c);
  out << "configuration " << to_string(c) << '\n';
  if (!sat)
    out << "unsat\n";
  else if (auto t = store.find_template(c))
    out << "template " << to_string(*t) << '\n';
  else
    out << "sat\n";
  return kExitOk;
}

int cmd_extend(const RunConfig &cfg, std::ostream &out, std::ostream &) {
  Loaded l = load(cfg);
  int n = single_n(cfg);
  SnfSentence snf = to_snf(l.sentence);
  Compiler comp(snf);
  const TypeTables &t = comp.tables();
  CompileOptions o = options(cfg);
  o.observer = [&](const CheckEvent &ev) {
    const CompileState &s = *ev.state;
    const char *verdict = ev.verdict ? "extendable" : "pruned";
    if (ev.stage == 1) {
      out << "stage1 e" << ev.i + 1 << " ["
          << unary_type_string(snf.vocab, t.unary[s.unary_choice[ev.i]])
          << "] " << verdict << '\n';
    } else {
      int p = CompileState::pair_index(s.n, ev.i, ev.j);
      TypeMask b = t.binary[s.unary_choice[ev.i]][s.unary_choice[ev.j]]
                           [s.binary_choice[p]];
      out << "stage2 (e" << ev.i + 1 << ",e" << ev.j + 1 << ") ["
          << binary_type_string(snf.vocab, b) << "] " << verdict << '\n';
    }
  };
  CompileResult r = comp.compile(n, o);
  out << "count " << model_count(r.circuit) << '\n';
  return kExitOk;
}

void add_source(CLI::App *sub, RunConfig &cfg) {
  sub->add_option("--sentence", cfg.sentence_file, "Sentence file");
  sub->add_option("--inline", cfg.inline_text, "Sentence text");
  sub->add_option("--bench", cfg.bench, "Built-in benchmark name");
  sub->add_option("--i", cfg.bench_i, "ui-bj: number of colors");
  sub->add_option("--j", cfg.bench_j, "ui-bj: number of edge predicates");
}

void add_compile_flags(CLI::App *sub, RunConfig &cfg) {
  sub->add_option("--n", cfg.n_text, "Domain size or range lo..hi");
  sub->add_flag("--no-stage1-cache", cfg.no_stage1_cache);
  sub->add_flag("--no-stage2-cache", cfg.no_stage2_cache);
  sub->add_flag("--no-postprocess", cfg.no_postprocess);
  sub->add_flag("--stats", cfg.stats, "Print compilation statistics");
  sub->add_option("--out", cfg.out_path, "Output file");
  sub->add_option("--max-expanded", cfg.max_expanded,
                  "Abort after this many expanded compile calls");
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Knowledge compiler for two-variable first-order sentences",
               "fo2kc"};
  app.require_subcommand(1);
  RunConfig cfg;
  using Handler = int (*)(const RunConfig &, std::ostream &, std::ostream &);
  std::vector<std::pair<CLI::App *, Handler>> commands;
  auto add = [&](const char *name, const char *desc, Handler h) {
    CLI::App *sub = app.add_subcommand(name, desc);
    add_source(sub, cfg);
    commands.push_back({sub, h});
    return sub;
  };

  auto *c = add("compile", "Compile to a d-DNNF circuit", cmd_compile);
  add_compile_flags(c, cfg);
  c->add_option("--format", cfg.format, "nnf, dot or obdd");
  add_compile_flags(add("count", "Model count via compilation", cmd_count), cfg);
  auto *e = add("enumerate", "List models", cmd_enumerate);
  add_compile_flags(e, cfg);
  e->add_option("--limit", cfg.limit, "Maximum number of models");
  auto *g = add("ground", "Export the grounding as DIMACS CNF", cmd_ground);
  g->add_option("--n", cfg.n_text, "Domain size");
  g->add_option("--out", cfg.out_path, "Output file");
  g->add_option("--format", cfg.format, "dimacs");
  add_compile_flags(add("obdd", "Compile to an OBDD", cmd_obdd), cfg);
  auto *b = add("bench", "Benchmarks: list, emit <name>, or sweep", cmd_bench);
  add_compile_flags(b, cfg);
  b->add_option("action", cfg.positional, "list | emit <name>");
  auto *k = add("check", "Validate compilation against oracles", cmd_check);
  add_compile_flags(k, cfg);
  k->add_option("--limit", cfg.limit, "Enumeration cross-check cap");
  k->add_option("--cap", cfg.cap, "Brute-force atom cap");
  auto *s = add("snf", "Scott normal form", cmd_snf);
  s->add_flag("--print", "Print the normal form (default)");
  auto *t = add("types", "Valid unary and binary types", cmd_types);
  t->add_flag("--dump", "Dump the type tables (default)");
  auto *f = add("config", "Configuration satisfiability", cmd_config);
  f->add_option("--probe", cfg.probe, "Comma-separated type counts");
  auto *x = add("extend", "Extendability trace during compilation", cmd_extend);
  add_compile_flags(x, cfg);
  x->add_flag("--trace", "Print every extendability verdict (default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &ex) {
    app.exit(ex, out, err);
    return ex.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    for (auto &[sub, handler] : commands)
      if (sub->parsed())
        return handler(cfg, out, err);
  } catch (const UsageError &ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const ParseError &ex) {
    err << "parse error: " << ex.what() << '\n';
    return kExitParse;
  } catch (const UnsupportedError &ex) {
    err << "unsupported: " << ex.what() << '\n';
    return kExitParse;
  } catch (const ResourceError &ex) {
    err << "resource limit: " << ex.what() << '\n';
    return kExitResource;
  } catch (const Error &ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace fo2kc
