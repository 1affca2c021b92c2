#pragma once

#include "compdof/zf_precoder.hpp"

namespace compdof {

// Clusters of 2M+1 consecutive users on the Wyner asymmetric network. In each
// full cluster the first M users are served by transmitters 1..M, the last M
// users by transmitters M+1..2M, the middle user is dropped and transmitter
// 2M+1 is switched off to isolate the cluster. A trailing partial cluster
// uses the same sets truncated to the users that exist.
SchemePlan theorem1_scheme(int K, int M);

// Active users of theorem1_scheme:
// 2M * floor(K / (2M+1)) + min(M, s) + max(0, s - M - 1), s = K mod (2M+1).
int scheme_dof(int K, int M);

}  // namespace compdof
