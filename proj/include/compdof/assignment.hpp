#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "compdof/network.hpp"
#include "compdof/types.hpp"

namespace compdof {

// Transmit set per message. Message i is served by the transmitters in
// transmit_set(i); an empty set means the message is not transmitted.
class Assignment {
 public:
  Assignment() = default;
  // All-empty assignment for K users.
  explicit Assignment(int K);
  // Throws IndexOutOfRange if an element leaves [1, K], InvalidDimensions if
  // the number of sets differs from K.
  Assignment(int K, std::vector<IndexSet> transmit_sets);

  int K() const { return K_; }
  const IndexSet& transmit_set(Index message) const;
  void set_transmit_set(Index message, IndexSet transmitters);
  const std::vector<IndexSet>& transmit_sets() const { return sets_; }

  // Messages with a nonempty transmit set.
  IndexSet served() const;
  // Union of all transmit sets.
  IndexSet used_transmitters() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  void check(Index message) const;

  int K_ = 0;
  std::vector<IndexSet> sets_;
};

// Largest transmit-set size; 0 when every set is empty.
int cooperation_order(const Assignment& assignment);

// T_i = {i, ..., i+M-1} clipped to [1, K].
Assignment baseline_assignment(int K, int M);

// True iff every T_i lies inside [i - radius, i + radius].
bool check_local_cooperation(const Assignment& assignment, int radius);

// Graph over [K] for one message: an edge joins two members of the transmit
// set that reach a common receiver; transmitters heard by the message's own
// receiver are marked.
struct UsefulnessGraph {
  Index message = 0;
  int K = 0;
  std::vector<std::pair<Index, Index>> edges;  // x < y, sorted
  IndexSet marked;

  // Vertices whose connected component has no marked vertex.
  IndexSet unmarked_component_vertices() const;
};

UsefulnessGraph usefulness_graph(const Network& net, Index message, const IndexSet& transmit_set);

// Drops, for every message, the members of its transmit set that cannot
// reach a marked vertex through other members.
Assignment prune_useless(const Network& net, const Assignment& assignment);

// Transmitters within M-1 common-receiver hops of a transmitter heard by
// receiver `message`. Every useful transmit set of size <= M lies inside it.
IndexSet corollary_range(const Network& net, Index message, int M);

// {K, transmit_sets: [[...], ...]}
std::string serialize_assignment(const Assignment& assignment);
Assignment deserialize_assignment(std::string_view text);

}  // namespace compdof
