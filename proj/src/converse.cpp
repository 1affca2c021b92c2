#include "compdof/converse.hpp"

#include <algorithm>

namespace compdof {

PropagationResult propagate(const Network& net, const IndexSet& receivers, const IndexSet& known,
                            const IndexSet& removed, std::span<const Index> priority) {
  const int K = net.K();
  const IndexSet A = normalized(receivers);
  for (Index r : A) {
    if (r < 1 || r > K) throw IndexOutOfRange("receiver " + std::to_string(r) + " outside [1, K]");
  }
  if (!set_intersection(normalized(known), normalized(removed)).empty()) {
    throw InvalidDimensions("known and removed transmitter sets overlap");
  }

  // Processing order over A: priority first, then the rest ascending.
  std::vector<Index> order;
  std::vector<bool> placed(K + 1, false);
  for (Index r : priority) {
    if (r >= 1 && r <= K && contains(A, r) && !placed[r]) {
      order.push_back(r);
      placed[r] = true;
    }
  }
  for (Index r : A) {
    if (!placed[r]) order.push_back(r);
  }

  std::vector<bool> resolved(K + 1, false);
  for (Index j : known) resolved.at(j) = true;
  for (Index j : removed) resolved.at(j) = true;

  PropagationResult result;
  bool progress = true;
  while (progress) {
    progress = false;
    for (Index r : order) {
      Index unknown = 0;
      int count = 0;
      for (Index j : net.transmitters_of(r)) {
        if (!resolved[j]) {
          unknown = j;
          ++count;
        }
      }
      if (count == 1) {
        resolved[unknown] = true;
        result.trace.push_back({unknown, r});
        progress = true;
        break;
      }
    }
  }

  const IndexSet removed_n = normalized(removed);
  for (Index j = 1; j <= K; ++j) {
    if (contains(removed_n, j)) continue;
    (resolved[j] ? result.known : result.residual).push_back(j);
  }
  result.success = result.residual.empty();
  return result;
}

CertificateSets certificate_A(int K, int M) {
  if (M < 1 || K < M + 1) {
    throw InvalidDimensions("certificate needs M >= 1 and K >= M + 1 (K = " + std::to_string(K) +
                            ", M = " + std::to_string(M) + ")");
  }
  CertificateSets sets;
  for (Index i = M + 1; i <= K; i += 2 * M + 1) sets.complement.push_back(i);
  sets.A = set_difference(index_range(1, K), sets.complement);
  return sets;
}

IndexSet guaranteed_free(const Network& net, const IndexSet& unserved, int M) {
  IndexSet covered;
  for (Index i : unserved) covered = set_union(covered, corollary_range(net, i, M));
  return set_difference(index_range(1, net.K()), covered);
}

Certificate build_certificate(const Network& net, int M) {
  const auto sets = certificate_A(net.K(), M);
  Certificate cert;
  cert.K = net.K();
  cert.M = M;
  cert.A = sets.A;
  cert.removed_tx = index_range(1, M);
  cert.free_tx = set_difference(guaranteed_free(net, sets.complement, M), cert.removed_tx);
  const auto result = propagate(net, cert.A, cert.free_tx, cert.removed_tx);
  cert.trace = result.trace;
  cert.success = result.success;
  cert.residual = result.residual;
  return cert;
}

std::optional<int> upper_bound(int K, int M) {
  const auto net = Network::build(TopologyKind::WynerAsymmetric, K, 1, false, 0);
  const auto cert = build_certificate(net, M);
  if (!cert.success) return std::nullopt;
  return cert.bound();
}

bool check_lemma2(const Network& net, const Assignment& assignment, const IndexSet& A) {
  const IndexSet a = normalized(A);
  IndexSet u;
  for (Index i = 1; i <= assignment.K(); ++i) {
    if (!contains(a, i)) u = set_union(u, assignment.transmit_set(i));
  }
  const IndexSet known = set_difference(index_range(1, net.K()), u);
  return propagate(net, a, known, {}).success;
}

}  // namespace compdof
