#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "compdof/network.hpp"

namespace compdof::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verification failed or no certificate
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitBadInput = 3;

struct RunConfig {
  std::string command;
  int K = 0;
  int M = 1;
  int L = 1;
  TopologyKind kind = TopologyKind::WynerAsymmetric;
  bool cyclic = false;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "json";
  std::string out;  // empty: stdout
};

struct SweepRow {
  int K = 0;
  int M = 0;
  int L = 0;
  int achievable = 0;
  std::optional<int> upper_bound;
  double ratio_achievable = 0.0;
  std::optional<double> ratio_bound;
  double limit = 0.0;
};

inline constexpr int kMaxSweepUsers = 200;

// One row per K in [k_min, k_max]. Wyner asymmetric rows use the cluster
// scheme and the reconstruction certificate; locally connected rows tile
// the best periodic template and report no bound.
std::vector<SweepRow> sweep_rows(TopologyKind kind, int L, int M, int k_min, int k_max,
                                 std::uint64_t seed, double tol);

// Header `K,M,L,achievable,upper_bound,ratio_achievable,ratio_bound,limit`,
// LF line endings, decimals with 15 significant digits.
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

// Entry point behind the `compdof` executable. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compdof::cli
