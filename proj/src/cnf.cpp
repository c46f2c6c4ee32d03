#include "fo2kc/errors.hpp"
#include "fo2kc/ground.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace fo2kc {
namespace {

using GK = GroundFormula::Kind;
using Clause = std::vector<int>;

class CnfBuilder {
public:
  CnfBuilder(int num_atoms, int threshold)
      : next_var_(num_atoms + 1), threshold_(threshold) {
    cnf_.num_vars = num_atoms;
  }

  void add_root(const GroundFormula &f) {
    if (f.kind == GK::True)
      return;
    if (f.kind == GK::False) {
      emit({});
      return;
    }
    add(f);
  }

  Cnf finish() {
    cnf_.num_vars = std::max(cnf_.num_vars, next_var_ - 1);
    return std::move(cnf_);
  }

private:
  void add(const GroundFormula &f) {
    if (f.kind == GK::And) {
      for (const auto &c : f.children)
        add(c);
      return;
    }
    if (auto cs = distribute(f)) {
      for (auto &c : *cs)
        emit(std::move(c));
      return;
    }
    // Or node too large to distribute: name its compound children.
    Clause c;
    for (const auto &child : f.children)
      c.push_back(define(child));
    emit(std::move(c));
  }

  std::optional<std::vector<Clause>> distribute(const GroundFormula &f) {
    switch (f.kind) {
    case GK::Lit:
      return std::vector<Clause>{{f.lit}};
    case GK::And: {
      std::vector<Clause> out;
      size_t lits = 0;
      for (const auto &c : f.children) {
        auto cs = distribute(c);
        if (!cs)
          return std::nullopt;
        for (auto &cl : *cs) {
          lits += cl.size();
          out.push_back(std::move(cl));
        }
        if (lits > static_cast<size_t>(threshold_))
          return std::nullopt;
      }
      return out;
    }
    case GK::Or: {
      std::vector<Clause> acc{{}};
      for (const auto &c : f.children) {
        auto cs = distribute(c);
        if (!cs)
          return std::nullopt;
        std::vector<Clause> next;
        size_t lits = 0;
        for (const auto &a : acc)
          for (const auto &b : *cs) {
            Clause m = a;
            m.insert(m.end(), b.begin(), b.end());
            lits += m.size();
            next.push_back(std::move(m));
          }
        if (lits > static_cast<size_t>(threshold_))
          return std::nullopt;
        acc = std::move(next);
      }
      return acc;
    }
    default:
      return std::nullopt;
    }
  }

  // Returns a literal equivalent to f, adding definitional clauses.
  int define(const GroundFormula &f) {
    if (f.kind == GK::Lit)
      return f.lit;
    std::vector<int> kids;
    for (const auto &c : f.children)
      kids.push_back(define(c));
    int v = next_var_++;
    if (f.kind == GK::And) {
      Clause big{v};
      for (int k : kids) {
        emit({-v, k});
        big.push_back(-k);
      }
      emit(std::move(big));
    } else {
      Clause big{-v};
      for (int k : kids) {
        emit({v, -k});
        big.push_back(k);
      }
      emit(std::move(big));
    }
    return v;
  }

  void emit(Clause c) {
    Clause norm;
    for (int l : c) {
      if (std::find(norm.begin(), norm.end(), -l) != norm.end())
        return; // tautology
      if (std::find(norm.begin(), norm.end(), l) == norm.end())
        norm.push_back(l);
    }
    Clause key = norm;
    std::sort(key.begin(), key.end());
    if (!seen_.insert(key).second)
      return;
    cnf_.clauses.push_back(std::move(norm));
  }

  Cnf cnf_;
  int next_var_;
  int threshold_;
  std::set<Clause> seen_;
};

// Plain DPLL with unit propagation; assignment copies serve as the trail.
class Dpll {
public:
  Dpll(const Cnf &cnf, int projected)
      : cnf_(cnf), projected_(projected) {}

  BigInt count(Assignment a) {
    if (!propagate(a))
      return 0;
    int branch = 0;
    bool all_sat = true;
    for (const auto &c : cnf_.clauses) {
      if (satisfied(c, a))
        continue;
      all_sat = false;
      for (int l : c) {
        int v = std::abs(l);
        if (v <= projected_ && a[v] < 0 && (branch == 0 || v < branch))
          branch = v;
      }
    }
    int free = 0;
    for (int v = 1; v <= projected_; ++v)
      free += a[v] < 0;
    if (all_sat)
      return pow2(free);
    if (branch == 0)
      return sat(std::move(a)) ? pow2(free) : BigInt(0);
    Assignment b = a;
    a[branch] = 0;
    b[branch] = 1;
    return count(std::move(a)) + count(std::move(b));
  }

  bool sat(Assignment a) {
    if (!propagate(a))
      return false;
    int branch = 0;
    for (const auto &c : cnf_.clauses) {
      if (satisfied(c, a))
        continue;
      for (int l : c)
        if (a[std::abs(l)] < 0) {
          branch = std::abs(l);
          break;
        }
      break;
    }
    if (branch == 0)
      return true;
    Assignment b = a;
    a[branch] = 1;
    b[branch] = 0;
    return sat(std::move(a)) || sat(std::move(b));
  }

private:
  static bool satisfied(const Clause &c, const Assignment &a) {
    for (int l : c) {
      int v = std::abs(l);
      if (a[v] >= 0 && (a[v] == 1) == (l > 0))
        return true;
    }
    return false;
  }

  bool propagate(Assignment &a) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto &c : cnf_.clauses) {
        int unit = 0;
        int open = 0;
        bool sat = false;
        for (int l : c) {
          int v = std::abs(l);
          if (a[v] < 0) {
            ++open;
            unit = l;
          } else if ((a[v] == 1) == (l > 0)) {
            sat = true;
            break;
          }
        }
        if (sat)
          continue;
        if (open == 0)
          return false;
        if (open == 1) {
          a[std::abs(unit)] = unit > 0 ? 1 : 0;
          changed = true;
        }
      }
    }
    return true;
  }

  const Cnf &cnf_;
  int projected_;
};

} // namespace

Cnf to_cnf(const GroundFormula &f, int num_atoms, int threshold) {
  CnfBuilder b(num_atoms, threshold);
  b.add_root(f);
  return b.finish();
}

void write_dimacs(const Cnf &cnf, const AtomTable &table, std::ostream &out) {
  for (int v = 1; v <= table.num_vars(); ++v)
    out << "c atom " << v << ' ' << table.atom_name(v) << '\n';
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto &c : cnf.clauses) {
    for (int l : c)
      out << l << ' ';
    out << "0\n";
  }
}

void export_dimacs(const GroundFormula &f, const AtomTable &table,
                   std::ostream &out) {
  write_dimacs(to_cnf(f, table.num_vars()), table, out);
}

Cnf parse_dimacs(std::istream &in) {
  Cnf cnf;
  std::string line;
  int lineno = 0;
  long declared = -1;
  Clause cur;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == 'c')
      continue;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> cnf.num_vars >> declared) || fmt != "cnf" ||
          cnf.num_vars < 0 || declared < 0)
        throw ParseError("malformed problem line", lineno, 1);
      continue;
    }
    if (declared < 0)
      throw ParseError("clause before problem line", lineno, 1);
    ls.clear();
    ls.str(line);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(cur));
        cur.clear();
        continue;
      }
      if (std::abs(lit) > cnf.num_vars)
        throw ParseError("literal " + std::to_string(lit) + " out of range",
                         lineno, 1);
      cur.push_back(static_cast<int>(lit));
    }
    if (!ls.eof())
      throw ParseError("bad token in clause", lineno, 1);
  }
  if (declared < 0)
    throw ParseError("missing problem line");
  if (!cur.empty())
    cnf.clauses.push_back(std::move(cur));
  if (static_cast<long>(cnf.clauses.size()) != declared)
    throw ParseError("clause count " + std::to_string(cnf.clauses.size()) +
                     " does not match header " + std::to_string(declared));
  return cnf;
}

BigInt cnf_count(const Cnf &cnf, int projected) {
  if (projected < 0 || projected > cnf.num_vars)
    projected = cnf.num_vars;
  Dpll d(cnf, projected);
  return d.count(Assignment(cnf.num_vars + 1, -1));
}

bool cnf_satisfiable(const Cnf &cnf, const std::vector<int> &assumptions) {
  Assignment a(cnf.num_vars + 1, -1);
  for (int l : assumptions) {
    int v = std::abs(l);
    if (v > cnf.num_vars)
      throw Error("assumption on unknown variable");
    std::int8_t val = l > 0 ? 1 : 0;
    if (a[v] >= 0 && a[v] != val)
      return false;
    a[v] = val;
  }
  Dpll d(cnf, 0);
  return d.sat(std::move(a));
}

} // namespace fo2kc
