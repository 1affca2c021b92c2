#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "compdof/types.hpp"

namespace compdof {

enum class TopologyKind {
  // Receiver i hears transmitters i-1 and i.
  WynerAsymmetric,
  // Receiver i hears transmitters i-floor(L/2) .. i+ceil(L/2).
  LocallyConnected,
};

std::string_view to_string(TopologyKind kind);
TopologyKind parse_topology_kind(std::string_view text);

// Connectivity pattern without coefficients.
struct Topology {
  TopologyKind kind = TopologyKind::WynerAsymmetric;
  int K = 1;
  int L = 1;
  bool cyclic = false;

  // Throws InvalidDimensions when (kind, K, L) is not a valid combination.
  void validate() const;

  // True iff receiver i hears transmitter j. Out-of-range indices give false.
  bool has_link(Index receiver, Index transmitter) const;
};

// (receiver, transmitter)
using Link = std::pair<Index, Index>;

// Interference network with a fixed complex channel gain on every link of
// its topology. Immutable once constructed.
class Network {
 public:
  static constexpr double kCoefficientFloor = 1e-3;

  // Samples every link independently: magnitude uniform in [0.5, 2], phase
  // uniform in [0, 2pi). Deterministic in seed.
  static Network build(TopologyKind kind, int K, int L, bool cyclic, std::uint64_t seed);

  // Takes explicit coefficients; throws InvalidDimensions if the key set
  // differs from the topology's support or a magnitude is below the floor.
  Network(Topology topology, std::uint64_t seed, std::map<Link, Complex> coefficients);

  const Topology& topology() const { return topology_; }
  TopologyKind kind() const { return topology_.kind; }
  int K() const { return topology_.K; }
  int L() const { return topology_.L; }
  bool cyclic() const { return topology_.cyclic; }
  std::uint64_t seed() const { return seed_; }

  const std::map<Link, Complex>& coefficients() const { return coefficients_; }
  bool has_link(Index receiver, Index transmitter) const;
  // Zero when there is no link.
  Complex gain(Index receiver, Index transmitter) const;

  IndexSet transmitters_of(Index receiver) const;
  IndexSet receivers_of(Index transmitter) const;
  // Union of receivers_of over a transmitter set.
  IndexSet receivers_reached(const IndexSet& transmitters) const;
  // Transmitters x != y that both reach some common receiver.
  bool share_receiver(Index x, Index y) const;

  // Same topology and seed, every coefficient multiplied by factor.
  Network scaled(Complex factor) const;

 private:
  void check_index(Index v, const char* what) const;

  Topology topology_;
  std::uint64_t seed_;
  std::map<Link, Complex> coefficients_;
  std::vector<IndexSet> tx_of_rx_;
  std::vector<IndexSet> rx_of_tx_;
};

// JSON document: {kind, K, L, cyclic, seed, coefficients: [{i, j, re, im}]}.
std::string serialize_network(const Network& net);
// Throws ParseError on malformed input or a support violation.
Network deserialize_network(std::string_view text);

}  // namespace compdof
