#include "fo2kc/benchgen.hpp"

#include "fo2kc/errors.hpp"

#include <regex>
#include <sstream>

namespace fo2kc {

namespace {

const char *const kVariants[] = {"ad", "so", "cc", "fd", "ao", "fo"};

std::string rb_lines() {
  return "forall x. (R(x) | B(x)) & (~R(x) | ~B(x))\n"
         "forall x forall y. (E(x,y) -> E(y,x)) & "
         "(E(x,y) -> (R(x) & B(y)) | (B(x) & R(y)))\n";
}

std::string e_lines() {
  return "forall x. ~E(x,x)\n"
         "forall x forall y. E(x,y) -> E(y,x)\n"
         "forall x exists y. E(x,y)\n";
}

std::string list(int count, const std::string &fmt_head,
                 const std::string &sep, const std::string &tail) {
  std::string s;
  for (int k = 1; k <= count; ++k) {
    if (k > 1)
      s += sep;
    s += fmt_head + std::to_string(k) + tail;
  }
  return s;
}

// ExactlyOne over the colors, color clash on every edge, and one outgoing
// edge per predicate.
std::string core_lines(int i, int j) {
  std::ostringstream out;
  out << "forall x. exactlyone[" << list(i, "C", ", ", "(x)") << "]\n";
  out << "forall x forall y. (" << list(j, "E", " | ", "(x,y)") << ") -> ";
  for (int l = 1; l <= i; ++l)
    out << (l > 1 ? " & " : "") << "(~C" << l << "(x) | ~C" << l << "(y))";
  out << '\n';
  return out.str();
}

std::string exists_lines(int j) {
  std::string s;
  for (int k = 1; k <= j; ++k)
    s += "forall x exists y. E" + std::to_string(k) + "(x,y)\n";
  return s;
}

std::string header(int i, int j) {
  return "predicates " + list(i, "C", " ", "/1") + " " + list(j, "E", " ", "/2") +
         "\n";
}

std::string symmetric() {
  return "forall x forall y. (E1(x,y) -> E1(y,x)) & (E2(x,y) -> E2(y,x))\n";
}

std::string asymmetric() {
  return "forall x forall y. (E1(x,y) -> ~E1(y,x)) & (E2(x,y) -> ~E2(y,x))\n";
}

std::string same_direction_disjoint() {
  return "forall x forall y. ~E1(x,y) | ~E2(x,y)\n";
}

} // namespace

BenchmarkSpec benchmark_spec(const std::string &name) {
  static const std::regex family(R"(u(\d+)-b(\d+))");
  std::smatch m;
  if (std::regex_match(name, m, family)) {
    BenchmarkSpec s{"ui-bj", std::stoi(m[1]), std::stoi(m[2])};
    if (s.i < 1 || s.j < 1)
      throw Error("benchmark parameters must be at least 1");
    return s;
  }
  for (const char *v : kVariants)
    if (name == std::string("u4-b2-") + v)
      return {name, 4, 2};
  for (const char *n : {"rb", "e", "rbe", "p", "d", "ui-bj"})
    if (name == n)
      return {name, 4, 2};
  throw Error("unknown benchmark '" + name + "'");
}

std::string benchmark_text(const BenchmarkSpec &spec) {
  const std::string &n = spec.name;
  if (n == "rb")
    return "predicates R/1 B/1 E/2\n" + rb_lines();
  if (n == "e")
    return "predicates E/2\n" + e_lines();
  if (n == "rbe")
    return "predicates R/1 B/1 E/2\n" + rb_lines() + e_lines();
  if (n == "p")
    return "predicates P/2\n"
           "forall x exists y. P(x,y)\n"
           "forall x exists y. P(y,x)\n";
  if (n == "d")
    return "predicates E/2 D/1\n"
           "forall x. ~E(x,x)\n"
           "forall x forall y. E(x,y) -> E(y,x)\n"
           "forall x exists y. ~D(x) -> E(x,y) & D(y)\n";
  if (n == "ui-bj") {
    if (spec.i < 1 || spec.j < 1)
      throw Error("benchmark parameters must be at least 1");
    std::ostringstream out;
    out << header(spec.i, spec.j);
    out << "forall x. exactlyone[" << list(spec.i, "C", ", ", "(x)") << "]\n";
    for (int k = 1; k <= spec.j; ++k) {
      out << "forall x forall y. E" << k << "(x,y) -> E" << k << "(y,x)\n";
      for (int k2 = 1; k2 <= spec.j; ++k2)
        if (k2 != k)
          out << "forall x forall y. E" << k << "(x,y) -> ~E" << k2
              << "(x,y)\n";
    }
    std::string core = core_lines(spec.i, spec.j);
    out << core.substr(core.find('\n') + 1);
    out << exists_lines(spec.j);
    return out.str();
  }
  std::string base = header(4, 2) + core_lines(4, 2) + exists_lines(2);
  if (n == "u4-b2-ad")
    return base + asymmetric() + same_direction_disjoint();
  if (n == "u4-b2-so")
    return base + symmetric();
  if (n == "u4-b2-cc")
    return base +
           "forall x forall y. E1(x,y) -> E2(y,x) & ~E1(y,x)\n"
           "forall x forall y. E2(x,y) -> E1(y,x) & ~E2(y,x)\n";
  if (n == "u4-b2-fd")
    return base +
           "forall x forall y. E1(x,y) -> ~E2(x,y) & ~E2(y,x)\n"
           "forall x forall y. E2(x,y) -> ~E1(x,y) & ~E1(y,x)\n";
  if (n == "u4-b2-ao")
    return base + asymmetric();
  if (n == "u4-b2-fo")
    return base;
  throw Error("unknown benchmark '" + n + "'");
}

Sentence generate(const BenchmarkSpec &spec) {
  return parse_sentence(benchmark_text(spec));
}

std::vector<std::string> benchmark_names() {
  std::vector<std::string> names{"rb",    "e",     "rbe",   "p",    "d",
                                 "u2-b2", "u4-b1", "u4-b2", "u4-b3", "u6-b2"};
  for (const char *v : kVariants)
    names.push_back(std::string("u4-b2-") + v);
  return names;
}

} // namespace fo2kc
