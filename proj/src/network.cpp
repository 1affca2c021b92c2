#include "compdof/network.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "json_util.hpp"

namespace compdof {

std::string_view to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::WynerAsymmetric:
      return "wyner-asymmetric";
    case TopologyKind::LocallyConnected:
      return "locally-connected";
  }
  return "unknown";
}

TopologyKind parse_topology_kind(std::string_view text) {
  if (text == "wyner-asymmetric") return TopologyKind::WynerAsymmetric;
  if (text == "locally-connected") return TopologyKind::LocallyConnected;
  throw ParseError("unknown topology kind '" + std::string(text) + "'", 0, "kind");
}

void Topology::validate() const {
  if (K < 1) throw InvalidDimensions("K must be at least 1, got " + std::to_string(K));
  if (L < 1) throw InvalidDimensions("L must be at least 1, got " + std::to_string(L));
  if (kind == TopologyKind::WynerAsymmetric && L != 1) {
    throw InvalidDimensions("wyner-asymmetric networks require L = 1");
  }
  if (kind == TopologyKind::LocallyConnected && L >= K) {
    throw InvalidDimensions("locally-connected networks require L < K");
  }
}

bool Topology::has_link(Index receiver, Index transmitter) const {
  if (receiver < 1 || receiver > K || transmitter < 1 || transmitter > K) return false;
  if (kind == TopologyKind::WynerAsymmetric) {
    if (receiver == transmitter || receiver == transmitter + 1) return true;
    return cyclic && receiver == 1 && transmitter == K;
  }
  const int lo = -(L / 2);
  const int hi = (L + 1) / 2;
  for (int d = lo; d <= hi; ++d) {
    Index j = receiver + d;
    if (cyclic) {
      j = ((j - 1) % K + K) % K + 1;
    }
    if (j == transmitter) return true;
  }
  return false;
}

namespace {

// 53-bit uniform double in [0, 1), independent of the standard library's
// distribution implementations so that seeds reproduce across toolchains.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Network Network::build(TopologyKind kind, int K, int L, bool cyclic, std::uint64_t seed) {
  Topology topo{kind, K, L, cyclic};
  topo.validate();

  std::mt19937_64 rng(seed);
  std::map<Link, Complex> coeffs;
  for (Index i = 1; i <= K; ++i) {
    for (Index j = 1; j <= K; ++j) {
      if (!topo.has_link(i, j)) continue;
      const double magnitude = 0.5 + 1.5 * unit_uniform(rng);
      const double phase = 2.0 * std::numbers::pi * unit_uniform(rng);
      coeffs.emplace(Link{i, j}, std::polar(magnitude, phase));
    }
  }
  return Network(topo, seed, std::move(coeffs));
}

Network::Network(Topology topology, std::uint64_t seed, std::map<Link, Complex> coefficients)
    : topology_(topology), seed_(seed), coefficients_(std::move(coefficients)) {
  topology_.validate();
  const int K = topology_.K;

  std::size_t expected = 0;
  for (Index i = 1; i <= K; ++i) {
    for (Index j = 1; j <= K; ++j) {
      if (topology_.has_link(i, j)) ++expected;
    }
  }
  for (const auto& [link, h] : coefficients_) {
    if (!topology_.has_link(link.first, link.second)) {
      throw InvalidDimensions("coefficient on (" + std::to_string(link.first) + "," +
                              std::to_string(link.second) + ") is outside the support");
    }
    if (std::abs(h) < kCoefficientFloor) {
      throw InvalidDimensions("coefficient on (" + std::to_string(link.first) + "," +
                              std::to_string(link.second) + ") is below the genericity floor");
    }
  }
  if (coefficients_.size() != expected) {
    throw InvalidDimensions("coefficients do not cover the support (" +
                            std::to_string(coefficients_.size()) + " of " +
                            std::to_string(expected) + ")");
  }

  tx_of_rx_.assign(K + 1, {});
  rx_of_tx_.assign(K + 1, {});
  for (const auto& entry : coefficients_) {
    const auto [i, j] = entry.first;
    tx_of_rx_[i].push_back(j);
    rx_of_tx_[j].push_back(i);
  }
  for (auto& s : rx_of_tx_) s = normalized(std::move(s));
}

void Network::check_index(Index v, const char* what) const {
  if (v < 1 || v > K()) {
    throw IndexOutOfRange(std::string(what) + " index " + std::to_string(v) + " outside [1, " +
                          std::to_string(K()) + "]");
  }
}

bool Network::has_link(Index receiver, Index transmitter) const {
  return coefficients_.count(Link{receiver, transmitter}) != 0;
}

Complex Network::gain(Index receiver, Index transmitter) const {
  auto it = coefficients_.find(Link{receiver, transmitter});
  return it == coefficients_.end() ? Complex{} : it->second;
}

IndexSet Network::transmitters_of(Index receiver) const {
  check_index(receiver, "receiver");
  return tx_of_rx_[receiver];
}

IndexSet Network::receivers_of(Index transmitter) const {
  check_index(transmitter, "transmitter");
  return rx_of_tx_[transmitter];
}

IndexSet Network::receivers_reached(const IndexSet& transmitters) const {
  IndexSet out;
  for (Index j : transmitters) {
    check_index(j, "transmitter");
    out.insert(out.end(), rx_of_tx_[j].begin(), rx_of_tx_[j].end());
  }
  return normalized(std::move(out));
}

bool Network::share_receiver(Index x, Index y) const {
  if (x == y) return false;
  check_index(x, "transmitter");
  check_index(y, "transmitter");
  return !set_intersection(rx_of_tx_[x], rx_of_tx_[y]).empty();
}

Network Network::scaled(Complex factor) const {
  auto coeffs = coefficients_;
  for (auto& entry : coeffs) entry.second *= factor;
  return Network(topology_, seed_, std::move(coeffs));
}

std::string serialize_network(const Network& net) {
  detail::Json doc;
  doc["kind"] = std::string(to_string(net.kind()));
  doc["K"] = net.K();
  doc["L"] = net.L();
  doc["cyclic"] = net.cyclic();
  doc["seed"] = net.seed();
  detail::Json coeffs = detail::Json::array();
  for (const auto& [link, h] : net.coefficients()) {
    coeffs.push_back({{"i", link.first}, {"j", link.second}, {"re", h.real()}, {"im", h.imag()}});
  }
  doc["coefficients"] = std::move(coeffs);
  return doc.dump(2) + "\n";
}

Network deserialize_network(std::string_view text) {
  using namespace detail;
  const Json doc = parse_document(text);

  Topology topo;
  const Json& kind = require(doc, "kind");
  if (!kind.is_string()) throw ParseError("expected a string", 0, "kind");
  topo.kind = parse_topology_kind(kind.get<std::string>());
  topo.K = static_cast<int>(require_int(doc, "K"));
  topo.L = static_cast<int>(require_int(doc, "L"));
  const Json& cyclic = require(doc, "cyclic");
  if (!cyclic.is_boolean()) throw ParseError("expected a boolean", 0, "cyclic");
  topo.cyclic = cyclic.get<bool>();
  const Json& seed = require(doc, "seed");
  if (!seed.is_number_unsigned()) {
    throw ParseError("expected a non-negative integer", 0, "seed");
  }
  try {
    topo.validate();
  } catch (const InvalidDimensions& e) {
    throw ParseError(e.what(), 0, "K/L");
  }

  const Json& list = require(doc, "coefficients");
  if (!list.is_array()) throw ParseError("expected an array", 0, "coefficients");
  std::map<Link, Complex> coeffs;
  for (std::size_t n = 0; n < list.size(); ++n) {
    const std::string path = "coefficients[" + std::to_string(n) + "]";
    const Json& entry = list[n];
    const Index i = static_cast<Index>(require_int(entry, "i", path));
    const Index j = static_cast<Index>(require_int(entry, "j", path));
    const double re = require_number(entry, "re", path);
    const double im = require_number(entry, "im", path);
    if (!topo.has_link(i, j)) {
      throw ParseError("support violation: (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is not a link of this topology",
                       0, path);
    }
    if (!coeffs.emplace(Link{i, j}, Complex{re, im}).second) {
      throw ParseError("duplicate coefficient", 0, path);
    }
  }
  try {
    return Network(topo, seed.get<std::uint64_t>(), std::move(coeffs));
  } catch (const InvalidDimensions& e) {
    throw ParseError(e.what(), 0, "coefficients");
  }
}

}  // namespace compdof
