#include "compdof/cluster_scheme.hpp"

namespace compdof {

SchemePlan theorem1_scheme(int K, int M) {
  if (K < 1 || M < 1) throw InvalidDimensions("scheme needs K >= 1 and M >= 1");
  SchemePlan plan = empty_plan(K);
  plan.M = M;
  const int width = 2 * M + 1;

  for (int offset = 0; offset < K; offset += width) {
    const int size = std::min(width, K - offset);
    const int head = std::min(M, size);

    // Users 1..M, pushed towards transmitter M.
    for (int i = 1; i <= head; ++i) {
      const Index user = offset + i;
      plan.active_users.push_back(user);
      plan.assignment.set_transmit_set(user, index_range(offset + i, offset + head));
      plan.cancellation_sets[user - 1] = index_range(offset + i + 1, offset + head);
    }
    // Users M+2..2M+1, pulled back towards transmitter M+1.
    for (int i = M + 2; i <= size; ++i) {
      const Index user = offset + i;
      plan.active_users.push_back(user);
      plan.assignment.set_transmit_set(user, index_range(offset + M + 1, offset + i - 1));
      plan.cancellation_sets[user - 1] = index_range(offset + M + 2, offset + i - 1);
    }
    if (size == width) plan.deactivated_transmitters.push_back(offset + width);
  }
  return plan;
}

int scheme_dof(int K, int M) {
  return static_cast<int>(theorem1_scheme(K, M).active_users.size());
}

}  // namespace compdof
