// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>

#include "compdof/assignment.hpp"
#include "compdof/cli.hpp"
#include "compdof/cluster_scheme.hpp"
#include "compdof/converse.hpp"
#include "compdof/search_oracle.hpp"
#include "compdof/zf_precoder.hpp"

using namespace compdof;
using nlohmann::json;

namespace {

constexpr double kLeakTol = 1e-9;

Network wyner(int K, std::uint64_t seed = 0) {
  return Network::build(TopologyKind::WynerAsymmetric, K, 1, false, seed);
}

json run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return json::parse(out.str());
}

// Each check fills `detail` and returns pass/fail.
struct Criterion {
  std::string id;
  double time_limit_s;  // <= 0: no limit
  std::function<bool(std::string&)> check;
};

bool c1(std::string& detail) {
  int scheme_code = 0, bound_code = 0;
  const json scheme = run_cli({"scheme", "--K", "7", "--M", "3", "--seed", "7"}, scheme_code);
  const json bound = run_cli({"bound", "--K", "7", "--M", "3"}, bound_code);
  double worst = 0.0;
  bool all_pass = true;
  const auto plan = theorem1_scheme(7, 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto net = wyner(7, seed);
    const auto report = verify(net, plan, design_all(net, plan), kLeakTol);
    all_pass = all_pass && report.pass && report.dof == 6;
    worst = std::max(worst, report.worst_relative_leak());
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "scheme dof=%d exit=%d, bound |A|=%d exit=%d, worst leak %.3g over 10 seeds",
                scheme["dof"].get<int>(), scheme_code, bound["A_size"].get<int>(), bound_code, worst);
  detail = buf;
  return scheme_code == 0 && bound_code == 0 && scheme["dof"] == 6 && scheme["verification"]["pass"] == true &&
         bound["A_size"] == 6 && all_pass && worst < kLeakTol;
}

bool c2(std::string& detail) {
  bool ok = true;
  for (int M = 1; M <= 4; ++M) {
    const int K = 4 * (2 * M + 1);
    const auto net = wyner(K);
    const auto plan = theorem1_scheme(K, M);
    const int achieved = count_zf_dof(net, plan, design_all(net, plan), kLeakTol);
    const auto bound = upper_bound(K, M);
    const bool row = scheme_dof(K, M) == 8 * M && achieved == 8 * M && bound == 8 * M &&
                     achieved * (2 * M + 1) == 2 * M * K;
    detail += "M=" + std::to_string(M) + " K=" + std::to_string(K) + ": " + std::to_string(achieved) + "/" +
              std::to_string(K) + " bound " + (bound ? std::to_string(*bound) : "none") + (M < 4 ? "; " : "");
    ok = ok && row;
  }
  return ok;
}

bool c3(std::string& detail) {
  const int k3 = brute_force_eta_zf(wyner(3), 1).best_count;
  const int k6 = brute_force_eta_zf(wyner(6), 1).best_count;
  const auto bound6 = upper_bound(6, 1);
  detail = "oracle(3,1)=" + std::to_string(k3) + ", oracle(6,1)=" + std::to_string(k6) + ", certificate(6,1)=" +
           (bound6 ? std::to_string(*bound6) : "none");
  return k3 == 2 && k6 == 4 && bound6 == 4;
}

bool c4(std::string& detail) {
  bool ok = true;
  std::string trend;
  for (int K = 2; K <= 12; ++K) {
    const int restricted = restricted_eta(wyner(K), baseline_assignment(K, 1)).best_count;
    const int flexible = brute_force_eta_zf(wyner(K), 1).best_count;
    const double rr = static_cast<double>(restricted) / K;
    const double fr = static_cast<double>(flexible) / K;
    ok = ok && flexible >= restricted && std::abs(rr - 0.5) <= 1.0 / K && std::abs(fr - 2.0 / 3.0) <= 1.0 / K;
    if (K == 6) ok = ok && restricted == 3 && flexible == 4;
    if (K == 12) {
      ok = ok && restricted == 6 && flexible == 8;
      char buf[96];
      std::snprintf(buf, sizeof buf, "; K=12 restricted %.4f flexible %.4f", rr, fr);
      trend = buf;
    }
  }
  detail = "restricted(6,1)=" + std::to_string(restricted_eta(wyner(6), baseline_assignment(6, 1)).best_count) +
           " < flexible(6,1)=" + std::to_string(brute_force_eta_zf(wyner(6), 1).best_count) + trend;
  return ok;
}

bool c5(std::string& detail) {
  const auto net5 = wyner(5);
  Assignment a(5);
  a.set_transmit_set(3, {2, 4, 5});
  const bool golden = prune_useless(net5, a).transmit_set(3) == IndexSet{2};

  std::mt19937 rng(5);
  int idempotent = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int K = 2 + static_cast<int>(rng() % 7);
    const int M = 1 + static_cast<int>(rng() % 3);
    const auto net = Network::build(trial % 2 ? TopologyKind::WynerAsymmetric : TopologyKind::LocallyConnected, K,
                                    1, false, trial);
    Assignment r(K);
    for (Index i = 1; i <= K; ++i) {
      IndexSet t;
      const int n = std::min(K, static_cast<int>(rng() % (M + 1)));
      while (static_cast<int>(t.size()) < n) t = normalized(set_union(t, IndexSet{1 + static_cast<Index>(rng() % K)}));
      r.set_transmit_set(i, t);
    }
    const auto once = prune_useless(net, r);
    idempotent += prune_useless(net, once) == once;
  }
  detail = std::string("K=5 T_3={2,4,5} -> ") + (golden ? "{2}" : "other") + ", idempotent on " +
           std::to_string(idempotent) + "/200";
  return golden && idempotent == 200;
}

bool c6(std::string& detail) {
  std::mt19937 rng(6);
  const auto net13 = wyner(13);
  const auto cert = build_certificate(net13, 3);
  const auto canonical = propagate(net13, cert.A, cert.free_tx, cert.removed_tx);
  int confluent = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Index> order = cert.A;
    std::shuffle(order.begin(), order.end(), rng);
    const auto r = propagate(net13, cert.A, cert.free_tx, cert.removed_tx, order);
    confluent += r.success == canonical.success && r.known == canonical.known;
  }

  int monotone = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int K = 4 + static_cast<int>(rng() % 20);
    const auto net = wyner(K, trial);
    IndexSet A, removed, known, extra;
    for (Index i = 1; i <= K; ++i) {
      if (rng() % 5) A.push_back(i);
      if (rng() % 10 == 0) removed.push_back(i);
      if (rng() % 5 == 0) known.push_back(i);
      if (rng() % 5 == 0) extra.push_back(i);
    }
    known = set_difference(known, removed);
    const IndexSet more = set_difference(set_union(known, extra), removed);
    const auto small = propagate(net, A, known, removed);
    const auto large = propagate(net, A, more, removed);
    monotone += is_subset(small.known, large.known) && (!small.success || large.success);
  }

  const auto r6 = propagate(wyner(6), {1, 3, 4, 6}, {3, 6}, {1});
  IndexSet recovered;
  for (const auto& step : r6.trace) recovered.push_back(step.transmitter);
  recovered = normalized(recovered);
  const bool chain = r6.success && recovered == IndexSet{2, 4, 5} && r6.trace.size() == 3;

  detail = "confluent " + std::to_string(confluent) + "/200 at K=13 M=3, monotone " + std::to_string(monotone) +
           "/200, K=6 recovers " + (chain ? "{2,4,5}" : "other");
  return confluent == 200 && monotone == 200 && chain;
}

bool c7(std::string& detail) {
  int agree = 0, total = 0, bounded = 0, bound_checks = 0;
  for (int M = 1; M <= 2; ++M) {
    const int kmax = M == 1 ? 10 : 8;
    for (int K = 1; K <= kmax; ++K) {
      const int best = brute_force_eta_zf(wyner(K), M).best_count;
      ++total;
      agree += best == scheme_dof(K, M);
      if (K >= M + 1) {
        if (const auto bound = upper_bound(K, M)) {
          ++bound_checks;
          bounded += best <= *bound + M;
        }
      }
    }
  }
  detail = "oracle = scheme on " + std::to_string(agree) + "/" + std::to_string(total) + ", oracle <= bound+M on " +
           std::to_string(bounded) + "/" + std::to_string(bound_checks) + " certified instances";
  return agree == total && bounded == bound_checks;
}

bool c8(std::string& detail) {
  const auto odd = template_search(TopologyKind::LocallyConnected, 2, 1, 2, 6);
  const auto net12 = Network::build(TopologyKind::LocallyConnected, 12, 2, false, 0);
  const auto rep12 = verify(net12, odd.witness_plan, design_all(net12, odd.witness_plan), kLeakTol);

  const auto wide = template_search(TopologyKind::LocallyConnected, 2, 2, 6, 3);
  const auto net18 = Network::build(TopologyKind::LocallyConnected, 18, 2, false, 0);
  const auto rep18 = verify(net18, wide.witness_plan, design_all(net18, wide.witness_plan), kLeakTol);
  const bool matches = wide.best_count * 3 >= 2 * 6;

  char buf[224];
  std::snprintf(buf, sizeof buf,
                "L=2 M=1 ratio %d/%d leak %.3g; L=2 M=2 ratio %d/%d (reference 2/3, %s) leak %.3g",
                odd.best_count, odd.denominator, rep12.worst_relative_leak(), wide.best_count, wide.denominator,
                matches ? "matched" : "not matched", rep18.worst_relative_leak());
  detail = buf;
  return odd.best_count * 2 == odd.denominator && rep12.pass && rep12.worst_relative_leak() < kLeakTol &&
         rep18.pass && rep18.worst_relative_leak() < kLeakTol;
}

bool sweep_note(std::string& detail) {
  double worst_slack = 1e9;
  bool ok = true;
  for (int M = 1; M <= 3; ++M) {
    for (const auto& row : cli::sweep_rows(TopologyKind::WynerAsymmetric, 1, M, 1, 200, 0, kLeakTol)) {
      const double gap = std::abs(row.ratio_achievable - row.limit);
      const double allowed = (2.0 * M + 1.0) / row.K;
      ok = ok && gap <= allowed;
      worst_slack = std::min(worst_slack, allowed - gap);
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "|ratio - 2M/(2M+1)| <= (2M+1)/K for K <= 200, M <= 3; min slack %.3g",
                worst_slack);
  detail = buf;
  return ok;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1", 1.0, c1}, {"2", 5.0, c2}, {"3", 1.0, c3},  {"4", 0.0, c4},          {"5", 0.0, c5},
      {"6", 0.0, c6}, {"7", 60.0, c7}, {"8", 0.0, c8}, {"sweep", 0.0, sweep_note},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      ok = false;
      detail += " (time limit exceeded)";
    }
    failures += !ok;
    std::printf("%s criterion %-5s %.3fs  %s\n", ok ? "PASS" : "FAIL", c.id.c_str(), secs, detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
