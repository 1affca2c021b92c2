#include "compdof/zf_precoder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace compdof {

void SchemePlan::validate() const {
  if (assignment.K() != K) throw InvalidDimensions("plan assignment size differs from K");
  if (static_cast<int>(cancellation_sets.size()) != K) {
    throw InvalidDimensions("plan needs one cancellation set per user");
  }
  for (Index i : active_users) {
    if (i < 1 || i > K) throw InvalidDimensions("active user " + std::to_string(i) + " outside [1, K]");
  }
  for (Index j : deactivated_transmitters) {
    if (j < 1 || j > K) {
      throw InvalidDimensions("deactivated transmitter " + std::to_string(j) + " outside [1, K]");
    }
  }
  if (!set_intersection(deactivated_transmitters, assignment.used_transmitters()).empty()) {
    throw InvalidDimensions("a deactivated transmitter carries a message");
  }
  for (Index i = 1; i <= K; ++i) {
    const IndexSet& c = cancellation_sets[i - 1];
    if (!contains(active_users, i)) {
      if (!c.empty()) {
        throw InvalidDimensions("inactive user " + std::to_string(i) + " has a cancellation set");
      }
      continue;
    }
    if (contains(c, i)) {
      throw InvalidDimensions("user " + std::to_string(i) + " cancels at its own receiver");
    }
    if (!is_subset(c, active_users)) {
      throw InvalidDimensions("cancellation set of user " + std::to_string(i) +
                              " names an inactive receiver");
    }
  }
}

SchemePlan empty_plan(int K) {
  SchemePlan plan;
  plan.K = K;
  plan.assignment = Assignment(K);
  plan.cancellation_sets.assign(K, {});
  return plan;
}

Complex effective_gain(const Network& net, const IndexSet& transmit_set,
                       const std::vector<Complex>& weights, Index receiver) {
  Complex g{};
  for (std::size_t k = 0; k < transmit_set.size(); ++k) {
    g += net.gain(receiver, transmit_set[k]) * weights.at(k);
  }
  return g;
}

namespace {

Eigen::MatrixXcd constraint_matrix(const Network& net, const IndexSet& rows, const IndexSet& cols) {
  Eigen::MatrixXcd a(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) a(r, c) = net.gain(rows[r], cols[c]);
  }
  return a;
}

int rank_of(const Eigen::VectorXd& singular_values, Eigen::Index rows, Eigen::Index cols) {
  if (singular_values.size() == 0) return 0;
  const double cutoff = singular_values(0) * static_cast<double>(std::max(rows, cols)) * kRankTolerance;
  int rank = 0;
  for (Eigen::Index k = 0; k < singular_values.size(); ++k) {
    if (singular_values(k) > cutoff) ++rank;
  }
  return rank;
}

// Kuhn's augmenting-path matching between rows and columns over the links
// of the network.
int max_matching(const Network& net, const IndexSet& rows, const IndexSet& cols) {
  std::vector<int> col_match(cols.size(), -1);
  std::vector<bool> seen;
  auto augment = [&](auto&& self, std::size_t r) -> bool {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (seen[c] || !net.has_link(rows[r], cols[c])) continue;
      seen[c] = true;
      if (col_match[c] < 0 || self(self, static_cast<std::size_t>(col_match[c]))) {
        col_match[c] = static_cast<int>(r);
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    seen.assign(cols.size(), false);
    if (augment(augment, r)) ++size;
  }
  return size;
}

}  // namespace

int numerical_rank(const Network& net, const IndexSet& rows, const IndexSet& transmit_set) {
  if (rows.empty() || transmit_set.empty()) return 0;
  const Eigen::MatrixXcd a = constraint_matrix(net, rows, transmit_set);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return rank_of(svd.singularValues(), a.rows(), a.cols());
}

bool beam_structurally_feasible(const Network& net, const IndexSet& transmit_set,
                                const IndexSet& cancel, Index message) {
  const IndexSet t = normalized(transmit_set);
  const IndexSet c = normalized(cancel);
  if (t.empty() || contains(c, message)) return false;
  const IndexSet reached = net.receivers_reached(t);
  if (!contains(reached, message)) return false;
  const IndexSet rows = set_intersection(c, reached);
  const int base = max_matching(net, rows, t);
  return max_matching(net, normalized(set_union(rows, IndexSet{message})), t) == base + 1;
}

std::vector<Complex> design_beam(const Network& net, const IndexSet& transmit_set,
                                 const IndexSet& cancel, Index message) {
  const IndexSet t = normalized(transmit_set);
  const IndexSet c = normalized(cancel);
  if (t.empty()) throw Infeasible(message, "empty transmit set");
  const auto n = static_cast<Eigen::Index>(t.size());

  Eigen::RowVectorXcd intended(n);
  bool connected = false;
  for (Eigen::Index k = 0; k < n; ++k) {
    intended(k) = net.gain(message, t[k]);
    connected = connected || net.has_link(message, t[k]);
  }
  if (!connected) throw Disconnected(message);

  Eigen::MatrixXcd basis;
  if (c.empty()) {
    basis = Eigen::MatrixXcd::Identity(n, n);
  } else {
    const Eigen::MatrixXcd a = constraint_matrix(net, c, t);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const int rank = rank_of(svd.singularValues(), a.rows(), a.cols());
    if (rank >= n) throw Infeasible(message, "constraint null space is trivial");
    basis = svd.matrixV().rightCols(n - rank);
  }

  Eigen::Index best = 0;
  double best_gain = -1.0;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    const double g = std::abs((intended * basis.col(k))(0));
    if (g > best_gain) {
      best_gain = g;
      best = k;
    }
  }
  if (best_gain < kMinGain) throw Infeasible(message, "intended gain vanishes on the null space");

  const Eigen::VectorXcd v = basis.col(best).normalized();
  return {v.data(), v.data() + v.size()};
}

BeamDesign design_all(const Network& net, const SchemePlan& plan) {
  plan.validate();
  BeamDesign design;
  for (Index i : plan.active_users) {
    try {
      design.weights.emplace(
          i, design_beam(net, plan.assignment.transmit_set(i), plan.cancellation_set(i), i));
    } catch (const Disconnected&) {
      throw Infeasible(i, "intended receiver is not connected to the transmit set");
    }
  }
  return design;
}

double VerificationReport::worst_relative_leak() const {
  double worst = 0.0;
  for (const auto& r : receivers) {
    if (r.own_gain_abs <= 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, r.worst_leak_abs / r.own_gain_abs);
  }
  return worst;
}

VerificationReport verify(const Network& net, const SchemePlan& plan, const BeamDesign& design,
                          double tol) {
  VerificationReport report;
  report.tol = tol;
  auto gain_of = [&](Index message, Index receiver) -> double {
    auto it = design.weights.find(message);
    if (it == design.weights.end()) return 0.0;
    return std::abs(effective_gain(net, plan.assignment.transmit_set(message), it->second, receiver));
  };

  for (Index r : plan.active_users) {
    ReceiverReport rr;
    rr.receiver = r;
    rr.own_gain_abs = gain_of(r, r);
    for (Index i : plan.active_users) {
      if (i != r) rr.worst_leak_abs = std::max(rr.worst_leak_abs, gain_of(i, r));
    }
    rr.pass = rr.own_gain_abs > kMinGain && rr.worst_leak_abs / rr.own_gain_abs < tol;
    report.pass = report.pass && rr.pass;
    if (rr.pass) ++report.dof;
    report.receivers.push_back(rr);
  }
  return report;
}

int count_zf_dof(const Network& net, const SchemePlan& plan, const BeamDesign& design, double tol) {
  const auto report = verify(net, plan, design, tol);
  return report.pass ? static_cast<int>(plan.active_users.size()) : report.dof;
}

}  // namespace compdof
