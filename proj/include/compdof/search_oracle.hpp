#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "compdof/assignment.hpp"
#include "compdof/network.hpp"
#include "compdof/zf_precoder.hpp"

namespace compdof {

struct SearchResult {
  // Active users found (per period for template searches).
  int best_count = 0;
  // K for whole-network searches, the period for template searches.
  int denominator = 1;
  SchemePlan witness_plan;
  // Number of candidate active patterns evaluated.
  std::uint64_t explored = 0;
  bool restricted = false;

  double ratio() const { return static_cast<double>(best_count) / denominator; }
};

inline constexpr int kMaxOracleUsers = 16;
inline constexpr int kMaxOracleOrder = 3;
inline constexpr int kMaxRestrictedUsers = 20;
inline constexpr int kMaxTemplateUsers = 24;
inline constexpr double kWitnessTolerance = 1e-9;

// Smallest (then lexicographically first) transmit set inside the
// corollary range, of size at most M, whose beam can null every other
// active receiver it reaches while still reaching `message`.
std::optional<IndexSet> find_transmit_set(const Network& net, Index message,
                                          const IndexSet& active, int M);

bool message_feasible(const Network& net, Index message, const IndexSet& active, int M);

// Largest active set whose every member is message_feasible; ties go to the
// lexicographically smallest set. Throws TooLarge past K = 16 or M = 3.
SearchResult brute_force_eta_zf(const Network& net, int M);

// Same maximisation with every transmit set fixed: a message may only be
// dropped. Throws TooLarge past K = 20.
SearchResult restricted_eta(const Network& net, const Assignment& assignment);

// Periodic plans on a network of period * copies users: one local active set
// and one relative transmit-set pattern per local user, repeated every
// period (clipped to each user's corollary range at the edges).
SearchResult template_search(TopologyKind kind, int L, int M, int period, int copies,
                             std::uint64_t seed = 0);

// Removes the smallest infeasible member of `candidates` until every
// remaining user is message_feasible, then assembles the plan (transmit
// sets from find_transmit_set, cancellation at every other active receiver
// reached). The plan is not verified here.
SchemePlan feasible_plan(const Network& net, int M, IndexSet candidates);

std::string serialize_search_result(const SearchResult& result);

}  // namespace compdof
