#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "compdof/assignment.hpp"
#include "compdof/network.hpp"

namespace compdof {

// Transmission strategy: who is served, by which transmitters, and at which
// receivers each message's beam is nulled.
struct SchemePlan {
  int K = 0;
  // Design parameter the plan was built for (cooperation order bound).
  int M = 0;
  Assignment assignment;
  IndexSet active_users;
  IndexSet deactivated_transmitters;
  // One per message; empty for inactive users.
  std::vector<IndexSet> cancellation_sets;

  const IndexSet& cancellation_set(Index message) const { return cancellation_sets.at(message - 1); }

  // Throws InvalidDimensions when a structural invariant is violated.
  void validate() const;
};

SchemePlan empty_plan(int K);

// Unit-norm complex weight vector per active message, ordered like the
// message's transmit set.
struct BeamDesign {
  std::map<Index, std::vector<Complex>> weights;
};

// Sum over j in T of h(r, j) * v[j]; zero if r hears no member of T.
Complex effective_gain(const Network& net, const IndexSet& transmit_set,
                       const std::vector<Complex>& weights, Index receiver);

// Singular-value cutoff for numerical rank: sigma_max * max(rows, cols) * 1e-12.
inline constexpr double kRankTolerance = 1e-12;
// Smallest usable intended-receiver gain magnitude.
inline constexpr double kMinGain = 1e-6;

// Zero-forcing beam for `message` over `transmit_set` that nulls every
// receiver in `cancel`. Picks, among an orthonormal basis of the constraint
// null space, the vector with the largest intended gain.
// Throws Disconnected or Infeasible.
std::vector<Complex> design_beam(const Network& net, const IndexSet& transmit_set,
                                 const IndexSet& cancel, Index message);

// Generic-channel feasibility of design_beam: the intended receiver's row
// must raise the structural rank (maximum bipartite matching) of the
// constraint rows. Exact for coefficients drawn from a continuous law.
bool beam_structurally_feasible(const Network& net, const IndexSet& transmit_set,
                                const IndexSet& cancel, Index message);

// Numerical rank of the constraint matrix rows `rows` x columns `transmit_set`.
int numerical_rank(const Network& net, const IndexSet& rows, const IndexSet& transmit_set);

// design_beam for every active user in ascending order. Throws Infeasible
// naming the first message that fails; no partial result is returned.
BeamDesign design_all(const Network& net, const SchemePlan& plan);

struct ReceiverReport {
  Index receiver = 0;
  double own_gain_abs = 0.0;
  double worst_leak_abs = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<ReceiverReport> receivers;
  bool pass = true;
  int dof = 0;
  double tol = 0.0;

  // Largest leak / own-gain ratio over active receivers.
  double worst_relative_leak() const;
};

// Checks every active receiver against leakage from every other active
// message, not only the declared cancellation sets.
VerificationReport verify(const Network& net, const SchemePlan& plan, const BeamDesign& design,
                          double tol);

int count_zf_dof(const Network& net, const SchemePlan& plan, const BeamDesign& design, double tol);

std::string serialize_plan(const SchemePlan& plan);
SchemePlan deserialize_plan(std::string_view text);
std::string serialize_report(const VerificationReport& report);

}  // namespace compdof
