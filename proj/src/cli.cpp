#include "compdof/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "compdof/assignment.hpp"
#include "compdof/cluster_scheme.hpp"
#include "compdof/converse.hpp"
#include "compdof/search_oracle.hpp"
#include "compdof/zf_precoder.hpp"
#include "documents.hpp"

namespace compdof::cli {

namespace {

using detail::Json;

std::string fmt15(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, "path");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_fraction(Json& doc, int numerator, int denominator) {
  const int g = std::gcd(numerator, denominator);
  doc["ratio"] = detail::round15(static_cast<double>(numerator) / denominator);
  doc["numerator"] = g ? numerator / g : 0;
  doc["denominator"] = g ? denominator / g : denominator;
}

struct Inputs {
  RunConfig cfg;
  std::string kind = "wyner-asymmetric";
  std::string network_path;
  std::string plan_path;
  std::string assignment_path;
  std::string input_path;
  bool baseline = false;
  int period = 0;
  int copies = 0;
  int k_min = 1;
  int k_max = 0;
  bool format_given = false;
};

Network load_network(const Inputs& in, int K) {
  if (!in.network_path.empty()) {
    Network net = deserialize_network(read_file(in.network_path));
    if (K != 0 && net.K() != K) {
      throw InvalidDimensions("--K " + std::to_string(K) + " differs from the network document (K = " +
                              std::to_string(net.K()) + ")");
    }
    return net;
  }
  return Network::build(in.cfg.kind, K, in.cfg.L, in.cfg.cyclic, in.cfg.seed);
}

void require_json(const Inputs& in) {
  if (in.cfg.format != "json") throw InvalidDimensions("csv output is only available for sweep");
}

int cmd_network(const Inputs& in, std::string& text) {
  require_json(in);
  text = serialize_network(load_network(in, in.cfg.K));
  return kExitOk;
}

int cmd_scheme(const Inputs& in, std::string& text, std::ostream& err) {
  require_json(in);
  const Network net = load_network(in, in.cfg.K);
  const SchemePlan plan = theorem1_scheme(net.K(), in.cfg.M);
  BeamDesign design;
  try {
    design = design_all(net, plan);
  } catch (const Infeasible& e) {
    err << e.what() << "\n";
    return kExitInfeasible;
  }
  const auto report = verify(net, plan, design, in.cfg.tol);

  Json doc;
  doc["command"] = "scheme";
  doc["K"] = net.K();
  doc["M"] = in.cfg.M;
  doc["seed"] = net.seed();
  doc["plan"] = detail::plan_json(plan);
  doc["beams"] = detail::beams_json(plan, design);
  doc["verification"] = detail::report_json(report);
  doc["dof"] = count_zf_dof(net, plan, design, in.cfg.tol);
  add_fraction(doc, doc["dof"].get<int>(), net.K());
  text = doc.dump(2) + "\n";
  return report.pass ? kExitOk : kExitFailed;
}

int cmd_verify(const Inputs& in, std::string& text, std::ostream& err) {
  require_json(in);
  if (in.network_path.empty() || in.plan_path.empty()) {
    throw InvalidDimensions("verify needs --network and --plan");
  }
  const SchemePlan plan = deserialize_plan(read_file(in.plan_path));
  const Network net = load_network(in, plan.K);
  BeamDesign design;
  try {
    design = design_all(net, plan);
  } catch (const Infeasible& e) {
    err << e.what() << "\n";
    return kExitInfeasible;
  }
  const auto report = verify(net, plan, design, in.cfg.tol);
  Json doc;
  doc["command"] = "verify";
  doc["beams"] = detail::beams_json(plan, design);
  doc["verification"] = detail::report_json(report);
  text = doc.dump(2) + "\n";
  return report.pass ? kExitOk : kExitFailed;
}

int cmd_bound(const Inputs& in, std::string& text, std::ostream& err) {
  require_json(in);
  certificate_A(in.cfg.K, in.cfg.M);  // rejects K < M + 1 before any work
  const Network net = load_network(in, in.cfg.K);
  const Certificate cert = build_certificate(net, in.cfg.M);
  Json doc = detail::certificate_json(cert);
  add_fraction(doc, cert.bound(), cert.K);
  doc["limit"] = detail::round15(2.0 * in.cfg.M / (2.0 * in.cfg.M + 1.0));
  text = doc.dump(2) + "\n";
  if (!cert.success) {
    err << "no certificate: transmitters left unrecovered\n";
    return kExitFailed;
  }
  return kExitOk;
}

int cmd_search(const Inputs& in, std::string& text, std::ostream& err) {
  require_json(in);
  const RunConfig& cfg = in.cfg;
  if (in.baseline && !in.assignment_path.empty()) {
    throw InvalidDimensions("--baseline and --assignment are mutually exclusive");
  }
  Json doc;
  if (in.period > 0 || in.copies > 0) {
    if (in.baseline || !in.assignment_path.empty()) {
      throw InvalidDimensions("template search takes no assignment");
    }
    const auto result = template_search(cfg.kind, cfg.L, cfg.M, in.period, in.copies, cfg.seed);
    const double reference = 2.0 * cfg.M / (2.0 * cfg.M + cfg.L);
    doc = detail::search_json(result);
    doc["period"] = in.period;
    doc["copies"] = in.copies;
    doc["reference_ratio"] = detail::round15(reference);
    doc["matches_reference"] = result.best_count * (2 * cfg.M + cfg.L) >= 2 * cfg.M * in.period;
    err << "template ratio " << fmt15(result.ratio()) << " vs reference " << fmt15(reference) << "\n";
  } else if (in.baseline) {
    const Network net = load_network(in, cfg.K);
    doc = detail::search_json(restricted_eta(net, baseline_assignment(net.K(), cfg.M)));
  } else if (!in.assignment_path.empty()) {
    const Assignment a = deserialize_assignment(read_file(in.assignment_path));
    const Network net = load_network(in, a.K());
    doc = detail::search_json(restricted_eta(net, a));
  } else {
    const Network net = load_network(in, cfg.K);
    doc = detail::search_json(brute_force_eta_zf(net, cfg.M));
  }
  text = doc.dump(2) + "\n";
  return kExitOk;
}

int cmd_prune(const Inputs& in, std::string& text) {
  require_json(in);
  const Assignment a = deserialize_assignment(read_file(in.input_path));
  const Network net = load_network(in, a.K());
  text = serialize_assignment(prune_useless(net, a));
  return kExitOk;
}

int cmd_sweep(const Inputs& in, std::string& text) {
  const RunConfig& cfg = in.cfg;
  if (in.k_max < in.k_min || in.k_min < 1 || in.k_max > kMaxSweepUsers) {
    throw InvalidDimensions("sweep needs 1 <= Kmin <= Kmax <= " + std::to_string(kMaxSweepUsers));
  }
  const auto rows = sweep_rows(cfg.kind, cfg.L, cfg.M, in.k_min, in.k_max, cfg.seed, cfg.tol);
  if (!in.format_given || cfg.format == "csv") {
    text = format_sweep_csv(rows);
    return kExitOk;
  }
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["K"] = r.K;
    row["M"] = r.M;
    row["L"] = r.L;
    row["achievable"] = r.achievable;
    row["upper_bound"] = r.upper_bound ? Json(*r.upper_bound) : Json(nullptr);
    row["ratio_achievable"] = detail::round15(r.ratio_achievable);
    row["ratio_bound"] = r.ratio_bound ? Json(detail::round15(*r.ratio_bound)) : Json(nullptr);
    row["limit"] = detail::round15(r.limit);
    arr.push_back(std::move(row));
  }
  text = arr.dump(2) + "\n";
  return kExitOk;
}

}  // namespace

std::vector<SweepRow> sweep_rows(TopologyKind kind, int L, int M, int k_min, int k_max,
                                 std::uint64_t seed, double tol) {
  if (M < 1 || L < 1) throw InvalidDimensions("sweep needs M >= 1 and L >= 1");
  std::vector<SweepRow> rows;

  if (kind == TopologyKind::WynerAsymmetric) {
    if (L != 1) throw InvalidDimensions("wyner-asymmetric networks require L = 1");
    for (int K = k_min; K <= k_max; ++K) {
      const Network net = Network::build(kind, K, 1, false, seed);
      const SchemePlan plan = theorem1_scheme(K, M);
      SweepRow row;
      row.K = K;
      row.M = M;
      row.L = 1;
      row.achievable = count_zf_dof(net, plan, design_all(net, plan), tol);
      row.ratio_achievable = static_cast<double>(row.achievable) / K;
      if (K >= M + 1) {
        const Certificate cert = build_certificate(net, M);
        if (cert.success) {
          row.upper_bound = cert.bound();
          row.ratio_bound = static_cast<double>(cert.bound()) / K;
        }
      }
      row.limit = 2.0 * M / (2.0 * M + 1.0);
      rows.push_back(row);
    }
    return rows;
  }

  const int period = 2 * M + L;
  const int copies = std::max(2, kMaxTemplateUsers / period);
  const SearchResult best = template_search(kind, L, M, period, copies, seed);
  const IndexSet local = set_intersection(best.witness_plan.active_users, index_range(1, period));
  for (int K = std::max(k_min, L + 1); K <= k_max; ++K) {
    const Network net = Network::build(kind, K, L, false, seed);
    IndexSet tiled;
    for (Index i = 1; i <= K; ++i) {
      if (contains(local, (i - 1) % period + 1)) tiled.push_back(i);
    }
    const SchemePlan plan = feasible_plan(net, M, tiled);
    SweepRow row;
    row.K = K;
    row.M = M;
    row.L = L;
    row.achievable = count_zf_dof(net, plan, design_all(net, plan), tol);
    row.ratio_achievable = static_cast<double>(row.achievable) / K;
    row.limit = 2.0 * M / (2.0 * M + L);
    rows.push_back(row);
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "K,M,L,achievable,upper_bound,ratio_achievable,ratio_bound,limit\n";
  for (const auto& r : rows) {
    out += std::to_string(r.K) + "," + std::to_string(r.M) + "," + std::to_string(r.L) + "," +
           std::to_string(r.achievable) + "," + (r.upper_bound ? std::to_string(*r.upper_bound) : "") +
           "," + fmt15(r.ratio_achievable) + "," + (r.ratio_bound ? fmt15(*r.ratio_bound) : "") + "," +
           fmt15(r.limit) + "\n";
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degrees-of-freedom toolkit for cooperative transmission on locally connected "
               "interference networks"};
  app.name("compdof");
  app.require_subcommand(1);
  Inputs in;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--kind", in.kind, "Topology: wyner-asymmetric | locally-connected")
        ->check(CLI::IsMember({"wyner-asymmetric", "locally-connected"}));
    sub->add_option("--K", in.cfg.K, "Number of users");
    sub->add_option("--M", in.cfg.M, "Cooperation order");
    sub->add_option("--L", in.cfg.L, "Interfering signals per receiver");
    sub->add_flag("--cyclic", in.cfg.cyclic, "Wrap the topology around");
    sub->add_option("--seed", in.cfg.seed, "Channel coefficient seed");
    sub->add_option("--tol", in.cfg.tol, "Relative leakage tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", in.cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", in.cfg.out, "Output path (default stdout)");
    sub->add_option("--network", in.network_path, "Network document to use instead of sampling");
  };

  auto* network = app.add_subcommand("network", "Sample a network and print its document");
  auto* scheme = app.add_subcommand("scheme", "Build, design and verify the cluster scheme");
  auto* verify_cmd = app.add_subcommand("verify", "Design and verify a plan document");
  auto* bound = app.add_subcommand("bound", "Build the reconstruction certificate");
  auto* search = app.add_subcommand("search", "Exhaustive one-shot zero-forcing search");
  auto* prune = app.add_subcommand("prune", "Drop useless transmitters from an assignment");
  auto* sweep = app.add_subcommand("sweep", "Achievable and bound per K as CSV");
  for (auto* sub : {network, scheme, verify_cmd, bound, search, prune, sweep}) common(sub);

  verify_cmd->add_option("--plan", in.plan_path, "Plan document")->required();
  search->add_flag("--baseline", in.baseline, "Fix T_i = {i, ..., i+M-1}");
  search->add_option("--assignment", in.assignment_path, "Fixed assignment document");
  search->add_option("--period", in.period, "Template period");
  search->add_option("--copies", in.copies, "Template copies");
  prune->add_option("--input", in.input_path, "Assignment document")->required();
  sweep->add_option("--Kmax", in.k_max, "Largest K")->required();
  sweep->add_option("--Kmin", in.k_min, "Smallest K");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  std::string text;
  int code = kExitOk;
  try {
    in.cfg.kind = parse_topology_kind(in.kind);
    in.format_given = sweep->count("--format") > 0;
    if (in.cfg.tol <= 0) throw InvalidDimensions("--tol must be positive");
    if (*network) {
      code = cmd_network(in, text);
    } else if (*scheme) {
      code = cmd_scheme(in, text, err);
    } else if (*verify_cmd) {
      code = cmd_verify(in, text, err);
    } else if (*bound) {
      code = cmd_bound(in, text, err);
    } else if (*search) {
      code = cmd_search(in, text, err);
    } else if (*prune) {
      code = cmd_prune(in, text);
    } else {
      code = cmd_sweep(in, text);
    }
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  if (in.cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream file(in.cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << in.cfg.out << "'\n";
      return kExitBadInput;
    }
    file << text;
  }
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"compdof"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace compdof::cli
