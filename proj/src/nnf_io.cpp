#include "fo2kc/circuit.hpp"

#include "fo2kc/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace fo2kc {

void export_nnf(const Circuit &c, std::ostream &out) {
  auto order = c.topological();
  std::vector<int> line(c.arena_size(), -1);
  std::size_t edges = 0;
  for (size_t k = 0; k < order.size(); ++k) {
    line[order[k]] = static_cast<int>(k);
    edges += c.node(order[k]).children.size();
  }
  out << "nnf " << order.size() << ' ' << edges << ' ' << c.num_vars() << '\n';
  for (int id : order) {
    const Node &nd = c.node(id);
    if (nd.kind == NodeKind::Literal) {
      out << "L " << nd.literal << '\n';
      continue;
    }
    if (nd.kind == NodeKind::And)
      out << 'A';
    else
      out << "O " << nd.decision;
    out << ' ' << nd.children.size();
    for (int ch : nd.children)
      out << ' ' << line[ch];
    out << '\n';
  }
}

Circuit import_nnf(std::istream &in) {
  std::string text;
  int lineno = 0;
  auto fail = [&](const std::string &msg) -> void {
    throw ParseError(msg, lineno, 1);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, text)) {
      ++lineno;
      if (!text.empty() && text[0] == 'c' && (text.size() == 1 || text[1] == ' '))
        continue;
      if (text.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      return true;
    }
    return false;
  };

  if (!next_line())
    fail("missing nnf header");
  std::istringstream hs(text);
  std::string tag;
  long long v = -1, e = -1, n = -1;
  if (!(hs >> tag >> v >> e >> n) || tag != "nnf" || v < 1 || e < 0 || n < 0)
    fail("bad nnf header");

  Circuit c(static_cast<int>(n));
  std::vector<int> ids;
  long long edges = 0;
  for (long long k = 0; k < v; ++k) {
    if (!next_line())
      fail("expected " + std::to_string(v) + " node lines");
    std::istringstream ls(text);
    std::string kind;
    ls >> kind;
    if (kind == "L") {
      long long lit = 0;
      if (!(ls >> lit) || lit == 0 || std::llabs(lit) > n)
        fail("bad literal");
      ids.push_back(c.add_literal(static_cast<int>(lit)));
    } else if (kind == "A" || kind == "O") {
      long long j = 0, cnt = 0;
      if (kind == "O" && (!(ls >> j) || j < 0 || j > n))
        fail("bad decision variable");
      if (!(ls >> cnt) || cnt < 0)
        fail("bad child count");
      std::vector<int> kids;
      for (long long i = 0; i < cnt; ++i) {
        long long ref = -1;
        if (!(ls >> ref))
          fail("missing child reference");
        if (ref < 0 || ref >= k)
          fail("child reference " + std::to_string(ref) + " is not backward");
        kids.push_back(ids[ref]);
      }
      edges += cnt;
      ids.push_back(kind == "A" ? c.add_and(std::move(kids))
                                : c.add_or(std::move(kids), static_cast<int>(j)));
    } else {
      fail("unknown node kind '" + kind + "'");
    }
    std::string extra;
    if (ls >> extra)
      fail("trailing data on node line");
  }
  if (edges != e)
    fail("edge count does not match header");
  if (next_line())
    fail("more node lines than declared");
  c.set_root(ids.back());
  return c;
}

void export_dot(const Circuit &c, const AtomTable *table, std::ostream &out) {
  out << "digraph circuit {\n";
  for (int id : c.topological()) {
    const Node &nd = c.node(id);
    out << "  n" << id << " [label=\"";
    if (nd.kind == NodeKind::Literal) {
      if (nd.literal < 0)
        out << '~';
      int var = std::abs(nd.literal);
      if (table)
        out << table->atom_name(var);
      else
        out << var;
      out << "\", shape=box];\n";
      continue;
    }
    if (nd.kind == NodeKind::And)
      out << (nd.children.empty() ? "TRUE" : "AND");
    else
      out << (nd.children.empty() ? "FALSE" : "OR");
    out << "\"];\n";
    for (int ch : nd.children)
      out << "  n" << id << " -> n" << ch << ";\n";
  }
  out << "}\n";
}

} // namespace fo2kc
