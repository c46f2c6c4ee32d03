#include "fo2kc/config.hpp"

#include "fo2kc/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace fo2kc {

std::uint64_t Configuration::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::string to_string(const Configuration &c) {
  std::string s = "(";
  for (size_t i = 0; i < c.counts.size(); ++i) {
    if (i)
      s += ',';
    s += std::to_string(c.counts[i]);
  }
  return s + ")";
}

bool preceq(const Configuration &a, const Configuration &b) {
  if (a.counts.size() != b.counts.size())
    throw Error("configuration length mismatch");
  for (size_t i = 0; i < a.counts.size(); ++i) {
    if (a.counts[i] == 0 && b.counts[i] != 0)
      return false;
    if (a.counts[i] > b.counts[i])
      return false;
  }
  return true;
}

int template_delta(int m) { return std::max(m * (m + 1), 2 * m + 1); }

TemplateStore::TemplateStore(const TypeTables &tables)
    : tables_(&tables), delta_(template_delta(tables.m)),
      full_need_(tables.m >= 32 ? ~0u : (1u << tables.m) - 1) {
  int q = tables.q();
  options_.assign(q, std::vector<std::vector<Option>>(q));
  for (int a = 0; a < q; ++a)
    for (int c = 0; c < q; ++c) {
      std::vector<Option> all;
      for (TypeMask b : tables.binary[a][c])
        all.push_back({tables.beta_forward(b), tables.beta_backward(b)});
      // Keep only witness patterns not dominated by another one.
      std::vector<Option> keep;
      for (const Option &o : all) {
        bool dominated = false;
        for (const Option &p : all) {
          bool covers = (o.fwd & ~p.fwd) == 0 && (o.bwd & ~p.bwd) == 0;
          bool strictly = p.fwd != o.fwd || p.bwd != o.bwd;
          if (covers && strictly) {
            dominated = true;
            break;
          }
        }
        bool dup = std::any_of(keep.begin(), keep.end(), [&](const Option &k) {
          return k.fwd == o.fwd && k.bwd == o.bwd;
        });
        if (!dominated && !dup)
          keep.push_back(o);
      }
      options_[a][c] = std::move(keep);
    }
}

void TemplateStore::normalize(State &s) {
  std::vector<std::array<std::uint32_t, 3>> groups;
  for (size_t i = 0; i + 2 < s.size(); i += 3)
    if (s[i + 2] > 0)
      groups.push_back({s[i], s[i + 1], s[i + 2]});
  std::sort(groups.begin(), groups.end());
  s.clear();
  for (const auto &g : groups) {
    size_t k = s.size();
    if (k >= 3 && s[k - 3] == g[0] && s[k - 2] == g[1])
      s[k - 1] += g[2];
    else
      s.insert(s.end(), g.begin(), g.end());
  }
}

bool TemplateStore::base_config_sat(const Configuration &cfg) {
  if (static_cast<int>(cfg.counts.size()) != q())
    throw Error("configuration length does not match the number of types");
  std::uint64_t bound = static_cast<std::uint64_t>(q()) * delta_ + 8;
  if (cfg.total() > bound)
    throw ResourceError("configuration of size " +
                        std::to_string(cfg.total()) +
                        " exceeds the template bound " + std::to_string(bound));
  ++stats_.base_calls;
  State s;
  for (int t = 0; t < q(); ++t)
    if (cfg.counts[t] > 0)
      s.insert(s.end(),
               {static_cast<std::uint32_t>(t),
                full_need_ & ~tables_->beta_diag[t], cfg.counts[t]});
  normalize(s);
  return solve(s);
}

// Removes one element of the first group and decides its binary types with
// every other element at once; elements of a group are interchangeable, so
// only the number of them taking each witness pattern matters.
bool TemplateStore::solve(const State &s) {
  if (s.empty())
    return true;
  auto it = solved_.find(s);
  if (it != solved_.end())
    return it->second;
  ++stats_.search_states;
  State rest = s;
  int t0 = static_cast<int>(rest[0]);
  std::uint32_t need = rest[1];
  rest[2] -= 1;
  State next;
  bool ok = distribute(rest, 0, 0, need, t0, next);
  solved_.emplace(s, ok);
  return ok;
}

bool TemplateStore::distribute(const State &s, std::size_t group,
                               std::uint32_t cover, std::uint32_t need,
                               int t0, State &next) {
  if (group * 3 >= s.size()) {
    if ((need & ~cover) != 0)
      return false;
    State n2 = next;
    normalize(n2);
    return solve(n2);
  }
  std::uint32_t t = s[group * 3], nd = s[group * 3 + 1], c = s[group * 3 + 2];
  if (c == 0)
    return distribute(s, group + 1, cover, need, t0, next);
  const auto &opts = options_[t0][t];
  if (opts.empty())
    return false;

  // Enumerate compositions of c over the options.
  std::vector<std::uint32_t> split(opts.size(), 0);
  auto rec = [&](auto &&self, size_t o, std::uint32_t left,
                 std::uint32_t cov) -> bool {
    if (o + 1 == opts.size()) {
      split[o] = left;
      size_t mark = next.size();
      std::uint32_t cv = cov;
      for (size_t k = 0; k < opts.size(); ++k)
        if (split[k] > 0) {
          next.insert(next.end(), {t, nd & ~opts[k].bwd, split[k]});
          cv |= opts[k].fwd;
        }
      bool ok = distribute(s, group + 1, cv, need, t0, next);
      next.resize(mark);
      return ok;
    }
    for (std::uint32_t x = left + 1; x-- > 0;) {
      split[o] = x;
      if (self(self, o + 1, left - x, cov))
        return true;
    }
    return false;
  };
  return rec(rec, 0, c, cover);
}

bool TemplateStore::config_satisfiable(const Configuration &cfg) {
  if (static_cast<int>(cfg.counts.size()) != q())
    throw Error("configuration length does not match the number of types");
  ++stats_.sat_queries;
  Configuration capped = cfg;
  for (auto &c : capped.counts)
    c = std::min<std::uint32_t>(c, delta_);
  auto it = capped_.find(capped);
  if (it != capped_.end()) {
    ++stats_.sat_memo_hits;
    return it->second;
  }
  // capped ⪯ cfg and every template below cfg is also below capped, so the
  // capped vector is satisfiable exactly when cfg is.
  bool ok = base_config_sat(capped);
  capped_.emplace(std::move(capped), ok);
  return ok;
}

std::optional<Configuration> TemplateStore::find_template(
    const Configuration &cfg) {
  if (static_cast<int>(cfg.counts.size()) != q())
    throw Error("configuration length does not match the number of types");
  std::vector<Configuration> all{Configuration{std::vector<std::uint32_t>(q(), 0)}};
  for (int t = 0; t < q(); ++t) {
    if (cfg.counts[t] == 0)
      continue;
    std::uint32_t hi = std::min<std::uint32_t>(cfg.counts[t], delta_);
    std::vector<Configuration> grown;
    for (const auto &c : all)
      for (std::uint32_t v = 1; v <= hi; ++v) {
        Configuration d = c;
        d.counts[t] = v;
        grown.push_back(std::move(d));
      }
    all = std::move(grown);
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Configuration &a, const Configuration &b) {
                     return a.total() < b.total();
                   });
  for (const auto &c : all)
    if (base_config_sat(c))
      return c;
  return std::nullopt;
}

bool TemplateStore::stage1_extendable(const Configuration &partial,
                                      std::uint64_t remaining) {
  if (static_cast<int>(partial.counts.size()) != q())
    throw Error("configuration length does not match the number of types");
  ++stats_.stage1_queries;
  Configuration capped = partial;
  for (auto &c : capped.counts)
    c = std::min<std::uint32_t>(c, delta_);
  std::uint64_t budget =
      std::min<std::uint64_t>(remaining, static_cast<std::uint64_t>(q()) * delta_);
  auto key = std::make_pair(capped, budget);
  auto it = stage1_.find(key);
  if (it != stage1_.end()) {
    ++stats_.stage1_memo_hits;
    return it->second;
  }
  Configuration cur{std::vector<std::uint32_t>(q(), 0)};
  bool ok = template_search(cur, capped, 0, budget, budget > 0);
  stage1_.emplace(std::move(key), ok);
  return ok;
}

// Templates n' with n'_i = 0 only where partial_i = 0 and total shortfall
// sum max(n'_i - partial_i, 0) within budget. When elements remain to be
// placed, the template must have non-empty support to absorb them.
bool TemplateStore::template_search(Configuration &cur,
                                    const Configuration &partial, int type,
                                    std::uint64_t budget, bool need_support) {
  if (type == q()) {
    if (need_support && cur.total() == 0)
      return false;
    return base_config_sat(cur);
  }
  std::uint32_t have = partial.counts[type];
  std::vector<std::uint32_t> values;
  if (have > 0) {
    values.push_back(std::min<std::uint32_t>(have, delta_));
    for (std::uint32_t v = have + 1; v <= static_cast<std::uint32_t>(delta_); ++v)
      values.push_back(v);
  } else {
    for (std::uint32_t v = 0; v <= static_cast<std::uint32_t>(delta_); ++v)
      values.push_back(v);
  }
  for (std::uint32_t v : values) {
    std::uint64_t cost = v > have ? v - have : 0;
    if (cost > budget)
      break;
    cur.counts[type] = v;
    if (template_search(cur, partial, type + 1, budget - cost, need_support))
      return true;
  }
  cur.counts[type] = 0;
  return false;
}

} // namespace fo2kc
