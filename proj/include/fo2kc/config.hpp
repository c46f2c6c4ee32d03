#pragma once

// Configurations (per-unary-type element counts) and their satisfiability.

#include "fo2kc/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fo2kc {

struct Configuration {
  std::vector<std::uint32_t> counts;

  std::uint64_t total() const;
  bool operator==(const Configuration &) const = default;
  bool operator<(const Configuration &o) const { return counts < o.counts; }
};

std::string to_string(const Configuration &c);

/// a ⪯ b: zero entries of a stay zero in b, positive entries of a are
/// bounded by b. Throws on length mismatch.
bool preceq(const Configuration &a, const Configuration &b);

/// Entry bound for templates: max{m(m+1), 2m+1}.
int template_delta(int m);

struct TemplateStats {
  std::uint64_t base_calls = 0;
  std::uint64_t search_states = 0;
  std::uint64_t sat_queries = 0;
  std::uint64_t sat_memo_hits = 0;
  std::uint64_t stage1_queries = 0;
  std::uint64_t stage1_memo_hits = 0;
};

/// Memoized configuration satisfiability for one sentence. The tables must
/// outlive the store.
class TemplateStore {
public:
  explicit TemplateStore(const TypeTables &tables);

  int delta() const { return delta_; }
  int q() const { return tables_->q(); }
  const TypeTables &tables() const { return *tables_; }

  /// Is there a model whose unary-type census is exactly cfg? Exact search;
  /// throws ResourceError when cfg.total() exceeds q*delta + 8.
  bool base_config_sat(const Configuration &cfg);

  /// Satisfiability of an arbitrary configuration through the bounded
  /// templates below it.
  bool config_satisfiable(const Configuration &cfg);

  /// Smallest-total satisfiable template n' ⪯ cfg with entries <= delta, if
  /// any (full scan; for inspection).
  std::optional<Configuration> find_template(const Configuration &cfg);

  /// Can a partial census `partial` be completed by `remaining` further
  /// elements into a satisfiable configuration?
  bool stage1_extendable(const Configuration &partial,
                         std::uint64_t remaining);

  const TemplateStats &stats() const { return stats_; }

private:
  struct Option {
    std::uint32_t fwd;
    std::uint32_t bwd;
  };
  // (type, unmet needs, count), sorted by (type, needs)
  using State = std::vector<std::uint32_t>;

  bool solve(const State &s);
  bool distribute(const State &s, std::size_t group, std::uint32_t cover,
                  std::uint32_t need, int current_type, State &next);
  static void normalize(State &s);
  bool template_search(Configuration &cur, const Configuration &partial,
                       int type, std::uint64_t budget, bool any_support);

  const TypeTables *tables_;
  int delta_;
  std::uint32_t full_need_;
  std::vector<std::vector<std::vector<Option>>> options_;
  std::map<State, bool> solved_;
  std::map<Configuration, bool> capped_;
  std::map<std::pair<Configuration, std::uint64_t>, bool> stage1_;
  TemplateStats stats_;
};

} // namespace fo2kc
