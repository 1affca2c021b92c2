#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "compdof/assignment.hpp"
#include "compdof/network.hpp"

namespace compdof {

// One reconstruction step: the transmit signal of `transmitter` is solved
// from the noise-free output of `via_receiver`.
struct TraceStep {
  Index transmitter = 0;
  Index via_receiver = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct PropagationResult {
  bool success = false;
  std::vector<TraceStep> trace;
  // Known transmitters at the fixpoint (initial knowledge included).
  IndexSet known;
  // [K] minus removed minus known; empty on success.
  IndexSet residual;
};

// Repeatedly solves receiver equations in A that contain exactly one
// transmitter outside known and removed. Succeeds iff every non-removed
// transmitter becomes known. When several receivers are eligible the one
// listed first in `priority` is used; receivers missing from `priority`
// come after it in ascending order. The default is ascending order.
PropagationResult propagate(const Network& net, const IndexSet& receivers, const IndexSet& known,
                            const IndexSet& removed, std::span<const Index> priority = {});

// Receivers left out of the certificate: local user M+1 of every cluster of
// 2M+1 users.
struct CertificateSets {
  IndexSet A;
  IndexSet complement;
};

// Throws InvalidDimensions when K < M + 1.
CertificateSets certificate_A(int K, int M);

// Transmitters outside the corollary range of every message in `unserved`,
// so no useful order-M assignment can place those messages there.
IndexSet guaranteed_free(const Network& net, const IndexSet& unserved, int M);

struct Certificate {
  int K = 0;
  int M = 0;
  IndexSet A;
  IndexSet removed_tx;
  IndexSet free_tx;
  std::vector<TraceStep> trace;
  bool success = false;
  IndexSet residual;

  int bound() const { return static_cast<int>(A.size()); }
};

// Canonical certificate on `net`: A from certificate_A, known = free set,
// removed = transmitters 1..M.
Certificate build_certificate(const Network& net, int M);

// |A| when the canonical certificate on the K-user asymmetric network
// reconstructs every remaining transmitter; nullopt otherwise.
std::optional<int> upper_bound(int K, int M);

// Reconstruction check for a fixed assignment: with U the union of transmit sets
// of messages outside A, every transmitter in U is recoverable from the
// outputs of A and the transmitters outside U.
bool check_lemma2(const Network& net, const Assignment& assignment, const IndexSet& A);

std::string serialize_certificate(const Certificate& cert);

}  // namespace compdof
