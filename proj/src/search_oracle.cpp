#include "compdof/search_oracle.hpp"

#include <bit>
#include <unordered_map>

namespace compdof {

namespace {

// Calls visit(subset) for every subset of `pool` with 1..max_size elements,
// by increasing size and lexicographically within a size. Stops early when
// visit returns true.
template <typename T, typename Visit>
bool for_each_combination(const std::vector<T>& pool, int max_size, Visit&& visit) {
  const int n = static_cast<int>(pool.size());
  for (int size = 1; size <= std::min(max_size, n); ++size) {
    std::vector<int> idx(size);
    for (int k = 0; k < size; ++k) idx[k] = k;
    while (true) {
      std::vector<T> subset(size);
      for (int k = 0; k < size; ++k) subset[k] = pool[idx[k]];
      if (visit(subset)) return true;
      int k = size - 1;
      while (k >= 0 && idx[k] == n - size + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int m = k + 1; m < size; ++m) idx[m] = idx[m - 1] + 1;
    }
  }
  return false;
}

IndexSet mask_to_set(std::uint64_t mask, int K) {
  IndexSet out;
  for (int v = 1; v <= K; ++v) {
    if (mask & (std::uint64_t{1} << (v - 1))) out.push_back(v);
  }
  return out;
}

std::uint64_t set_to_mask(const IndexSet& s) {
  std::uint64_t mask = 0;
  for (Index v : s) mask |= std::uint64_t{1} << (v - 1);
  return mask;
}

IndexSet interference_targets(const Network& net, const IndexSet& transmit_set,
                              const IndexSet& active, Index message) {
  return set_difference(set_intersection(active, net.receivers_reached(transmit_set)),
                        IndexSet{message});
}

// Lexicographic comparison of sorted index sets, used for tie-breaking.
bool lex_less(const IndexSet& a, const IndexSet& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SchemePlan assemble_plan(const Network& net, int M, const IndexSet& active,
                         const std::map<Index, IndexSet>& transmit_sets) {
  SchemePlan plan = empty_plan(net.K());
  plan.M = M;
  plan.active_users = active;
  for (const auto& [i, t] : transmit_sets) {
    plan.assignment.set_transmit_set(i, t);
    plan.cancellation_sets[i - 1] = interference_targets(net, t, active, i);
  }
  plan.deactivated_transmitters =
      set_difference(index_range(1, net.K()), plan.assignment.used_transmitters());
  return plan;
}

// Assembles a plan from per-message transmit sets, nulls every other
// active receiver each beam reaches and confirms it numerically.
SchemePlan assemble_witness(const Network& net, int M, const IndexSet& active,
                            const std::map<Index, IndexSet>& transmit_sets) {
  SchemePlan plan = assemble_plan(net, M, active, transmit_sets);
  const auto design = design_all(net, plan);
  const auto report = verify(net, plan, design, kWitnessTolerance);
  if (!report.pass) throw Error("search witness failed numerical verification");
  return plan;
}

// Per-message feasibility depends on the active set only through the
// receivers the message's candidate transmitters can reach, so results are
// memoised on that window.
class FeasibilityCache {
 public:
  FeasibilityCache(const Network& net, int M) : net_(net), M_(M), windows_(net.K() + 1), memo_(net.K() + 1) {
    for (Index i = 1; i <= net.K(); ++i) {
      windows_[i] = set_to_mask(net.receivers_reached(corollary_range(net, i, M)));
    }
  }

  bool feasible(Index message, std::uint64_t active_mask) {
    const std::uint64_t key = active_mask & windows_[message];
    auto& memo = memo_[message];
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const bool ok = message_feasible(net_, message, mask_to_set(key, net_.K()), M_);
    memo.emplace(key, ok);
    return ok;
  }

 private:
  const Network& net_;
  int M_;
  std::vector<std::uint64_t> windows_;
  std::vector<std::unordered_map<std::uint64_t, bool>> memo_;
};

}  // namespace

std::optional<IndexSet> find_transmit_set(const Network& net, Index message,
                                          const IndexSet& active, int M) {
  std::optional<IndexSet> found;
  for_each_combination(corollary_range(net, message, M), M, [&](const IndexSet& t) {
    if (beam_structurally_feasible(net, t, interference_targets(net, t, active, message), message)) {
      found = t;
      return true;
    }
    return false;
  });
  return found;
}

bool message_feasible(const Network& net, Index message, const IndexSet& active, int M) {
  return find_transmit_set(net, message, active, M).has_value();
}

SchemePlan feasible_plan(const Network& net, int M, IndexSet candidates) {
  IndexSet active = normalized(std::move(candidates));
  std::map<Index, IndexSet> chosen;
  bool changed = true;
  while (changed) {
    changed = false;
    chosen.clear();
    for (Index i : active) {
      auto t = find_transmit_set(net, i, active, M);
      if (!t) {
        active.erase(std::find(active.begin(), active.end(), i));
        changed = true;
        break;
      }
      chosen.emplace(i, std::move(*t));
    }
  }
  return assemble_plan(net, M, active, chosen);
}

SearchResult brute_force_eta_zf(const Network& net, int M) {
  const int K = net.K();
  if (K > kMaxOracleUsers || M > kMaxOracleOrder) {
    throw TooLarge("brute-force oracle is limited to K <= " + std::to_string(kMaxOracleUsers) +
                   " and M <= " + std::to_string(kMaxOracleOrder));
  }
  if (M < 1) throw InvalidDimensions("M must be at least 1");

  FeasibilityCache cache(net, M);
  SearchResult result;
  result.denominator = K;
  IndexSet best_set;
  const std::uint64_t total = std::uint64_t{1} << K;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const int count = std::popcount(mask);
    if (count < result.best_count) continue;
    ++result.explored;
    bool ok = true;
    for (std::uint64_t rest = mask; rest && ok; rest &= rest - 1) {
      ok = cache.feasible(std::countr_zero(rest) + 1, mask);
    }
    if (!ok) continue;
    IndexSet set = mask_to_set(mask, K);
    if (count > result.best_count || lex_less(set, best_set)) {
      result.best_count = count;
      best_set = std::move(set);
    }
  }

  std::map<Index, IndexSet> chosen;
  for (Index i : best_set) chosen.emplace(i, *find_transmit_set(net, i, best_set, M));
  result.witness_plan = assemble_witness(net, M, best_set, chosen);
  return result;
}

SearchResult restricted_eta(const Network& net, const Assignment& assignment) {
  const int K = net.K();
  if (assignment.K() != K) throw InvalidDimensions("assignment and network sizes differ");
  if (K > kMaxRestrictedUsers) {
    throw TooLarge("restricted oracle is limited to K <= " + std::to_string(kMaxRestrictedUsers));
  }

  const IndexSet served = assignment.served();
  std::vector<std::uint64_t> window(K + 1, 0);
  for (Index i : served) window[i] = set_to_mask(net.receivers_reached(assignment.transmit_set(i)));
  std::vector<std::unordered_map<std::uint64_t, bool>> memo(K + 1);
  auto feasible = [&](Index i, std::uint64_t mask) {
    const std::uint64_t key = mask & window[i];
    auto it = memo[i].find(key);
    if (it != memo[i].end()) return it->second;
    const IndexSet& t = assignment.transmit_set(i);
    const bool ok = beam_structurally_feasible(
        net, t, interference_targets(net, t, mask_to_set(key, K), i), i);
    memo[i].emplace(key, ok);
    return ok;
  };

  SearchResult result;
  result.restricted = true;
  result.denominator = K;
  IndexSet best_set;
  const int n = static_cast<int>(served.size());
  for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << n); ++sub) {
    const int count = std::popcount(sub);
    if (count < result.best_count) continue;
    ++result.explored;
    IndexSet set;
    for (int k = 0; k < n; ++k) {
      if (sub & (std::uint64_t{1} << k)) set.push_back(served[k]);
    }
    const std::uint64_t mask = set_to_mask(set);
    bool ok = true;
    for (auto it = set.begin(); it != set.end() && ok; ++it) ok = feasible(*it, mask);
    if (!ok) continue;
    if (count > result.best_count || lex_less(set, best_set)) {
      result.best_count = count;
      best_set = std::move(set);
    }
  }

  std::map<Index, IndexSet> chosen;
  for (Index i : best_set) chosen.emplace(i, assignment.transmit_set(i));
  result.witness_plan = assemble_witness(net, cooperation_order(assignment), best_set, chosen);
  return result;
}

SearchResult template_search(TopologyKind kind, int L, int M, int period, int copies,
                             std::uint64_t seed) {
  if (M < 1 || period < 1 || copies < 2) {
    throw InvalidDimensions("template search needs M >= 1, period >= 1 and copies >= 2");
  }
  if (static_cast<long long>(period) * copies > kMaxTemplateUsers) {
    throw TooLarge("template search is limited to period * copies <= " +
                   std::to_string(kMaxTemplateUsers));
  }
  const int K = period * copies;
  const Network net = Network::build(kind, K, L, false, seed);

  std::vector<IndexSet> ranges(K + 1);
  for (Index i = 1; i <= K; ++i) ranges[i] = corollary_range(net, i, M);

  // Transmit set of global user i under relative pattern `offsets`.
  auto placed = [&](Index i, const std::vector<int>& offsets) {
    IndexSet t;
    for (int d : offsets) {
      if (contains(ranges[i], i + d)) t.push_back(i + d);
    }
    return t;
  };

  // First relative pattern that works for local user u in every copy.
  auto find_pattern = [&](int u, const IndexSet& active) -> std::optional<std::vector<int>> {
    std::vector<int> pool;
    for (int c = 0; c < copies; ++c) {
      const Index i = c * period + u;
      for (Index j : ranges[i]) pool.push_back(j - i);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    std::optional<std::vector<int>> found;
    for_each_combination(pool, M, [&](const std::vector<int>& offsets) {
      for (int c = 0; c < copies; ++c) {
        const Index i = c * period + u;
        const IndexSet t = placed(i, offsets);
        if (!beam_structurally_feasible(net, t, interference_targets(net, t, active, i), i)) {
          return false;
        }
      }
      found = offsets;
      return true;
    });
    return found;
  };

  SearchResult result;
  result.denominator = period;
  IndexSet best_local;
  std::map<int, std::vector<int>> best_patterns;
  for (std::uint64_t local = 1; local < (std::uint64_t{1} << period); ++local) {
    const int count = std::popcount(local);
    if (count < result.best_count) continue;
    ++result.explored;
    const IndexSet local_set = mask_to_set(local, period);
    IndexSet active;
    for (int c = 0; c < copies; ++c) {
      for (Index u : local_set) active.push_back(c * period + u);
    }
    std::map<int, std::vector<int>> patterns;
    bool ok = true;
    for (Index u : local_set) {
      auto p = find_pattern(u, active);
      if (!p) {
        ok = false;
        break;
      }
      patterns.emplace(u, std::move(*p));
    }
    if (!ok) continue;
    if (count > result.best_count || lex_less(local_set, best_local)) {
      result.best_count = count;
      best_local = local_set;
      best_patterns = std::move(patterns);
    }
  }

  IndexSet active;
  std::map<Index, IndexSet> chosen;
  for (int c = 0; c < copies; ++c) {
    for (Index u : best_local) {
      const Index i = c * period + u;
      active.push_back(i);
      chosen.emplace(i, placed(i, best_patterns.at(u)));
    }
  }
  result.witness_plan = assemble_witness(net, M, active, chosen);
  return result;
}

}  // namespace compdof
