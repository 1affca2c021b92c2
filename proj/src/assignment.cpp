#include "compdof/assignment.hpp"

#include <deque>
#include <numeric>

#include "json_util.hpp"

namespace compdof {

Assignment::Assignment(int K) : K_(K), sets_(K > 0 ? K : 0) {
  if (K < 0) throw InvalidDimensions("K must be non-negative");
}

Assignment::Assignment(int K, std::vector<IndexSet> transmit_sets) : K_(K) {
  if (K < 0 || static_cast<int>(transmit_sets.size()) != K) {
    throw InvalidDimensions("expected " + std::to_string(K) + " transmit sets, got " +
                            std::to_string(transmit_sets.size()));
  }
  sets_.resize(K);
  for (Index i = 1; i <= K; ++i) set_transmit_set(i, std::move(transmit_sets[i - 1]));
}

void Assignment::check(Index message) const {
  if (message < 1 || message > K_) {
    throw IndexOutOfRange("message index " + std::to_string(message) + " outside [1, " +
                          std::to_string(K_) + "]");
  }
}

const IndexSet& Assignment::transmit_set(Index message) const {
  check(message);
  return sets_[message - 1];
}

void Assignment::set_transmit_set(Index message, IndexSet transmitters) {
  check(message);
  transmitters = normalized(std::move(transmitters));
  for (Index j : transmitters) {
    if (j < 1 || j > K_) {
      throw IndexOutOfRange("transmitter " + std::to_string(j) + " in T_" +
                            std::to_string(message) + " outside [1, " + std::to_string(K_) + "]");
    }
  }
  sets_[message - 1] = std::move(transmitters);
}

IndexSet Assignment::served() const {
  IndexSet out;
  for (Index i = 1; i <= K_; ++i) {
    if (!sets_[i - 1].empty()) out.push_back(i);
  }
  return out;
}

IndexSet Assignment::used_transmitters() const {
  IndexSet out;
  for (const auto& s : sets_) out.insert(out.end(), s.begin(), s.end());
  return normalized(std::move(out));
}

int cooperation_order(const Assignment& assignment) {
  std::size_t best = 0;
  for (const auto& s : assignment.transmit_sets()) best = std::max(best, s.size());
  return static_cast<int>(best);
}

Assignment baseline_assignment(int K, int M) {
  if (K < 1 || M < 1) throw InvalidDimensions("baseline assignment needs K >= 1 and M >= 1");
  Assignment a(K);
  for (Index i = 1; i <= K; ++i) a.set_transmit_set(i, index_range(i, std::min(K, i + M - 1)));
  return a;
}

bool check_local_cooperation(const Assignment& assignment, int radius) {
  for (Index i = 1; i <= assignment.K(); ++i) {
    for (Index j : assignment.transmit_set(i)) {
      if (j < i - radius || j > i + radius) return false;
    }
  }
  return true;
}

IndexSet UsefulnessGraph::unmarked_component_vertices() const {
  // Union-find over [K].
  std::vector<Index> parent(K + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [x, y] : edges) parent[find(x)] = find(y);

  std::vector<bool> root_marked(K + 1, false);
  for (Index m : marked) root_marked[find(m)] = true;

  IndexSet out;
  for (Index v = 1; v <= K; ++v) {
    if (!root_marked[find(v)]) out.push_back(v);
  }
  return out;
}

UsefulnessGraph usefulness_graph(const Network& net, Index message, const IndexSet& transmit_set) {
  if (message < 1 || message > net.K()) {
    throw IndexOutOfRange("message index " + std::to_string(message) + " outside [1, " +
                          std::to_string(net.K()) + "]");
  }
  const IndexSet members = normalized(transmit_set);
  for (Index j : members) {
    if (j < 1 || j > net.K()) {
      throw IndexOutOfRange("transmitter " + std::to_string(j) + " outside [1, " +
                            std::to_string(net.K()) + "]");
    }
  }

  UsefulnessGraph g;
  g.message = message;
  g.K = net.K();
  g.marked = net.transmitters_of(message);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (net.share_receiver(members[a], members[b])) g.edges.emplace_back(members[a], members[b]);
    }
  }
  return g;
}

Assignment prune_useless(const Network& net, const Assignment& assignment) {
  if (assignment.K() != net.K()) {
    throw InvalidDimensions("assignment has K = " + std::to_string(assignment.K()) +
                            " but network has K = " + std::to_string(net.K()));
  }
  // Removing whole unmarked components leaves every surviving component
  // intact, so a single pass per message is a fixpoint.
  Assignment out = assignment;
  for (Index i = 1; i <= assignment.K(); ++i) {
    const IndexSet& t = assignment.transmit_set(i);
    if (t.empty()) continue;
    const auto g = usefulness_graph(net, i, t);
    out.set_transmit_set(i, set_difference(t, g.unmarked_component_vertices()));
  }
  return out;
}

IndexSet corollary_range(const Network& net, Index message, int M) {
  if (M < 1) throw InvalidDimensions("M must be at least 1");
  const int K = net.K();
  std::vector<int> dist(K + 1, -1);
  std::deque<Index> queue;
  for (Index m : net.transmitters_of(message)) {
    dist[m] = 0;
    queue.push_back(m);
  }
  while (!queue.empty()) {
    const Index x = queue.front();
    queue.pop_front();
    if (dist[x] == M - 1) continue;
    for (Index r : net.receivers_of(x)) {
      for (Index y : net.transmitters_of(r)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  IndexSet out;
  for (Index v = 1; v <= K; ++v) {
    if (dist[v] >= 0) out.push_back(v);
  }
  return out;
}

std::string serialize_assignment(const Assignment& assignment) {
  detail::Json doc;
  doc["K"] = assignment.K();
  detail::Json sets = detail::Json::array();
  for (const auto& s : assignment.transmit_sets()) sets.push_back(detail::write_index_set(s));
  doc["transmit_sets"] = std::move(sets);
  return doc.dump(2) + "\n";
}

Assignment deserialize_assignment(std::string_view text) {
  using namespace detail;
  const Json doc = parse_document(text);
  const long long K = require_int(doc, "K");
  if (K < 1) throw ParseError("K must be at least 1", 0, "K");
  const Json& sets = require(doc, "transmit_sets");
  if (!sets.is_array()) throw ParseError("expected an array", 0, "transmit_sets");
  if (static_cast<long long>(sets.size()) != K) {
    throw ParseError("expected " + std::to_string(K) + " transmit sets", 0, "transmit_sets");
  }
  std::vector<IndexSet> parsed;
  for (std::size_t n = 0; n < sets.size(); ++n) {
    parsed.push_back(read_index_set(sets[n], "transmit_sets[" + std::to_string(n) + "]"));
  }
  try {
    return Assignment(static_cast<int>(K), std::move(parsed));
  } catch (const Error& e) {
    throw ParseError(e.what(), 0, "transmit_sets");
  }
}

}  // namespace compdof
