#include "documents.hpp"

#include <numeric>

namespace compdof {

namespace detail {

Json plan_json(const SchemePlan& plan) {
  Json doc;
  doc["K"] = plan.K;
  doc["M"] = plan.M;
  doc["active_users"] = write_index_set(plan.active_users);
  doc["deactivated_transmitters"] = write_index_set(plan.deactivated_transmitters);
  Json t = Json::array();
  for (const auto& s : plan.assignment.transmit_sets()) t.push_back(write_index_set(s));
  doc["transmit_sets"] = std::move(t);
  Json c = Json::array();
  for (const auto& s : plan.cancellation_sets) c.push_back(write_index_set(s));
  doc["cancellation_sets"] = std::move(c);
  return doc;
}

Json beams_json(const SchemePlan& plan, const BeamDesign& design) {
  Json beams = Json::array();
  for (const auto& [i, w] : design.weights) {
    Json weights = Json::array();
    for (const auto& x : w) weights.push_back({{"re", round15(x.real())}, {"im", round15(x.imag())}});
    beams.push_back({{"message", i},
                     {"transmit_set", write_index_set(plan.assignment.transmit_set(i))},
                     {"weights", std::move(weights)}});
  }
  return beams;
}

Json report_json(const VerificationReport& report) {
  Json receivers = Json::array();
  for (const auto& r : report.receivers) {
    receivers.push_back({{"r", r.receiver},
                         {"own_gain_abs", round15(r.own_gain_abs)},
                         {"worst_leak_abs", round15(r.worst_leak_abs)},
                         {"pass", r.pass}});
  }
  Json doc;
  doc["receivers"] = std::move(receivers);
  doc["pass"] = report.pass;
  doc["dof"] = report.dof;
  doc["tol"] = report.tol;
  return doc;
}

Json certificate_json(const Certificate& cert) {
  Json doc;
  doc["K"] = cert.K;
  doc["M"] = cert.M;
  doc["A"] = write_index_set(cert.A);
  doc["A_size"] = cert.bound();
  doc["removed_tx"] = write_index_set(cert.removed_tx);
  doc["free_tx"] = write_index_set(cert.free_tx);
  Json trace = Json::array();
  for (const auto& step : cert.trace) {
    trace.push_back({{"tx", step.transmitter}, {"via_receiver", step.via_receiver}});
  }
  doc["trace"] = std::move(trace);
  doc["success"] = cert.success;
  doc["residual"] = write_index_set(cert.residual);
  return doc;
}

Json search_json(const SearchResult& result) {
  const int g = std::gcd(result.best_count, result.denominator);
  Json doc;
  doc["best_count"] = result.best_count;
  doc["ratio"] = round15(result.ratio());
  doc["numerator"] = g ? result.best_count / g : 0;
  doc["denominator"] = g ? result.denominator / g : result.denominator;
  doc["restricted"] = result.restricted;
  doc["witness"] = plan_json(result.witness_plan);
  doc["explored"] = result.explored;
  return doc;
}

}  // namespace detail

std::string serialize_plan(const SchemePlan& plan) { return detail::plan_json(plan).dump(2) + "\n"; }

SchemePlan deserialize_plan(std::string_view text) {
  using namespace detail;
  const Json doc = parse_document(text);
  const long long K = require_int(doc, "K");
  if (K < 1) throw ParseError("K must be at least 1", 0, "K");
  SchemePlan plan = empty_plan(static_cast<int>(K));
  plan.M = static_cast<int>(require_int(doc, "M"));
  plan.active_users = read_index_set(require(doc, "active_users"), "active_users");
  plan.deactivated_transmitters =
      read_index_set(require(doc, "deactivated_transmitters"), "deactivated_transmitters");

  auto read_sets = [&](const char* key) {
    const Json& arr = require(doc, key);
    if (!arr.is_array() || static_cast<long long>(arr.size()) != K) {
      throw ParseError("expected " + std::to_string(K) + " index sets", 0, key);
    }
    std::vector<IndexSet> out;
    for (std::size_t n = 0; n < arr.size(); ++n) {
      out.push_back(read_index_set(arr[n], std::string(key) + "[" + std::to_string(n) + "]"));
    }
    return out;
  };
  try {
    plan.assignment = Assignment(static_cast<int>(K), read_sets("transmit_sets"));
    plan.cancellation_sets = read_sets("cancellation_sets");
    plan.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0, "plan");
  }
  return plan;
}

std::string serialize_report(const VerificationReport& report) {
  return detail::report_json(report).dump(2) + "\n";
}

std::string serialize_certificate(const Certificate& cert) {
  return detail::certificate_json(cert).dump(2) + "\n";
}

std::string serialize_search_result(const SearchResult& result) {
  return detail::search_json(result).dump(2) + "\n";
}

}  // namespace compdof
