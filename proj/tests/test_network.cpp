#include <doctest.h>

#include <Eigen/Dense>
#include <json.hpp>

#include "compdof/network.hpp"
#include "oracles.hpp"

using namespace compdof;

TEST_CASE("wyner asymmetric K=3 support") {
  const auto net = Network::build(TopologyKind::WynerAsymmetric, 3, 1, false, 7);
  std::vector<Link> links;
  for (const auto& entry : net.coefficients()) links.push_back(entry.first);
  CHECK(links == std::vector<Link>{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}});
}

TEST_CASE("single user network") {
  const auto net = Network::build(TopologyKind::WynerAsymmetric, 1, 1, false, 99);
  REQUIRE(net.coefficients().size() == 1);
  CHECK(net.coefficients().begin()->first == Link{1, 1});
}

TEST_CASE("locally connected L=2 receiver window") {
  const auto net = Network::build(TopologyKind::LocallyConnected, 9, 2, false, 1);
  CHECK(net.transmitters_of(5) == IndexSet{4, 5, 6});
  CHECK(net.transmitters_of(1) == IndexSet{1, 2});
  CHECK(net.transmitters_of(9) == IndexSet{8, 9});
}

TEST_CASE("adjacency queries") {
  const auto net = Network::build(TopologyKind::WynerAsymmetric, 3, 1, false, 0);
  CHECK(net.transmitters_of(1) == IndexSet{1});
  CHECK(net.transmitters_of(2) == IndexSet{1, 2});
  CHECK(net.receivers_of(1) == IndexSet{1, 2});
  CHECK(net.receivers_of(3) == IndexSet{3});
  CHECK_THROWS_AS(net.transmitters_of(0), IndexOutOfRange);
  CHECK_THROWS_AS(net.receivers_of(4), IndexOutOfRange);

  const auto cyc = Network::build(TopologyKind::WynerAsymmetric, 3, 1, true, 0);
  CHECK(cyc.receivers_of(3) == IndexSet{1, 3});
  CHECK(cyc.transmitters_of(1) == IndexSet{1, 3});
}

TEST_CASE("invalid dimensions") {
  CHECK_THROWS_AS(Network::build(TopologyKind::WynerAsymmetric, 0, 1, false, 0), InvalidDimensions);
  CHECK_THROWS_AS(Network::build(TopologyKind::WynerAsymmetric, 4, 2, false, 0), InvalidDimensions);
  CHECK_THROWS_AS(Network::build(TopologyKind::LocallyConnected, 4, 0, false, 0), InvalidDimensions);
  CHECK_THROWS_AS(Network::build(TopologyKind::LocallyConnected, 4, 4, false, 0), InvalidDimensions);
}

TEST_CASE("support predicate matches closed form exhaustively") {
  for (int K = 1; K <= 12; ++K) {
    for (bool cyclic : {false, true}) {
      for (auto kind : {TopologyKind::WynerAsymmetric, TopologyKind::LocallyConnected}) {
        for (int L = 1; L <= 4; ++L) {
          if (kind == TopologyKind::WynerAsymmetric && L != 1) continue;
          if (kind == TopologyKind::LocallyConnected && L >= K) continue;
          const auto net = Network::build(kind, K, L, cyclic, 3);
          for (Index i = 1; i <= K; ++i) {
            for (Index j = 1; j <= K; ++j) {
              INFO("K=" << K << " L=" << L << " cyclic=" << cyclic << " (" << i << "," << j << ")");
              CHECK(net.has_link(i, j) == oracle::support(kind, K, L, cyclic, i, j));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("coefficients are deterministic and within the sampling law") {
  const auto a = Network::build(TopologyKind::LocallyConnected, 10, 3, true, 42);
  const auto b = Network::build(TopologyKind::LocallyConnected, 10, 3, true, 42);
  const auto c = Network::build(TopologyKind::LocallyConnected, 10, 3, true, 43);
  CHECK(a.coefficients() == b.coefficients());
  CHECK(a.coefficients() != c.coefficients());
  for (const auto& [link, h] : a.coefficients()) {
    CHECK(std::abs(h) >= 0.5);
    CHECK(std::abs(h) <= 2.0);
    CHECK(std::abs(h) >= Network::kCoefficientFloor);
  }
}

TEST_CASE("explicit coefficients are validated") {
  Topology topo{TopologyKind::WynerAsymmetric, 2, 1, false};
  std::map<Link, Complex> ok{{{1, 1}, 1.0}, {{2, 1}, 1.0}, {{2, 2}, 1.0}};
  CHECK_NOTHROW(Network(topo, 0, ok));
  auto off_support = ok;
  off_support[{1, 2}] = 1.0;
  CHECK_THROWS_AS(Network(topo, 0, off_support), InvalidDimensions);
  auto tiny = ok;
  tiny[{2, 2}] = 1e-4;
  CHECK_THROWS_AS(Network(topo, 0, tiny), InvalidDimensions);
  auto missing = ok;
  missing.erase({2, 1});
  CHECK_THROWS_AS(Network(topo, 0, missing), InvalidDimensions);
}

TEST_CASE("serialization round trip is exact") {
  for (auto [kind, K, L, cyclic] : {std::tuple{TopologyKind::WynerAsymmetric, 3, 1, false},
                                    std::tuple{TopologyKind::WynerAsymmetric, 8, 1, true},
                                    std::tuple{TopologyKind::LocallyConnected, 9, 2, false},
                                    std::tuple{TopologyKind::LocallyConnected, 7, 3, true}}) {
    const auto net = Network::build(kind, K, L, cyclic, 7);
    const auto text = serialize_network(net);
    const auto back = deserialize_network(text);
    CHECK(back.kind() == net.kind());
    CHECK(back.K() == net.K());
    CHECK(back.L() == net.L());
    CHECK(back.cyclic() == net.cyclic());
    CHECK(back.seed() == net.seed());
    CHECK(back.coefficients() == net.coefficients());
    CHECK(serialize_network(back) == text);
  }
}

TEST_CASE("deserialization diagnostics") {
  const auto good = serialize_network(Network::build(TopologyKind::WynerAsymmetric, 3, 1, false, 7));

  SUBCASE("missing K") {
    auto doc = nlohmann::json::parse(good);
    doc.erase("K");
    try {
      deserialize_network(doc.dump());
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.field() == "K");
    }
  }
  SUBCASE("coefficient off the support") {
    auto doc = nlohmann::json::parse(good);
    doc["coefficients"].push_back({{"i", 1}, {"j", 3}, {"re", 1.0}, {"im", 0.0}});
    try {
      deserialize_network(doc.dump());
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("support violation") != std::string::npos);
      CHECK(e.field() == "coefficients[5]");
    }
  }
  SUBCASE("syntax error reports a line") {
    try {
      deserialize_network("{\n  \"kind\": \"wyner-asymmetric\",\n  \"K\": ,\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("unknown kind") { CHECK_THROWS_AS(deserialize_network(R"({"kind":"ring"})"), ParseError); }
}

TEST_CASE("generic coefficients keep small support submatrices well conditioned") {
  constexpr int K = 20;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto net = Network::build(TopologyKind::WynerAsymmetric, K, 1, false, seed);
    for (int n = 1; n <= 4; ++n) {
      for (Index first_tx = 1; first_tx + n - 1 <= K; ++first_tx) {
        const IndexSet cols = index_range(first_tx, first_tx + n - 1);
        // Square windows of consecutive receivers touching these transmitters.
        for (Index first_rx = first_tx; first_rx <= first_tx + 1 && first_rx + n - 1 <= K; ++first_rx) {
          const IndexSet rows = index_range(first_rx, first_rx + n - 1);
          Eigen::MatrixXcd a(n, n);
          for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) a(r, c) = net.gain(rows[r], cols[c]);
          const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues();
          INFO("seed=" << seed << " n=" << n << " tx=" << first_tx << " rx=" << first_rx);
          CHECK(sv(n - 1) / sv(0) > 1e-6);
        }
      }
    }
  }
}
