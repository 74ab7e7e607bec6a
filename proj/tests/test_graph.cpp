#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "linkpred/graph.hpp"
#include "oracles.hpp"

using namespace linkpred;

namespace {

Graph make(std::initializer_list<std::pair<VertexId, VertexId>> pairs, std::optional<std::size_t> n = {}) {
  std::vector<std::pair<VertexId, VertexId>> v(pairs);
  return build_graph(std::span<const std::pair<VertexId, VertexId>>(v), n);
}

Graph from_oracle(const oracle::Pairs& p, std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> v(p.begin(), p.end());
  return build_graph(std::span<const std::pair<VertexId, VertexId>>(v), n);
}

}  // namespace

TEST_CASE("build_graph basics") {
  auto g = make({{0, 1}, {1, 2}});
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);

  auto dup = make({{0, 1}, {1, 0}, {0, 1}});
  CHECK(dup.edge_count() == 1);

  CHECK_THROWS_AS(make({{0, 1}, {2, 2}}), ParameterError);
  CHECK_THROWS_AS(make({{0, 5}}, 3), ParameterError);
  CHECK(make({{0, 1}}, 4).vertex_count() == 4);
}

TEST_CASE("neighbors") {
  auto g = make({{0, 1}, {1, 2}}, 4);
  auto n1 = g.neighbors(1);
  CHECK(std::vector<VertexId>(n1.begin(), n1.end()) == std::vector<VertexId>{0, 2});
  CHECK(g.neighbors(3).empty());
  CHECK_THROWS_AS(g.neighbors(4), std::out_of_range);
}

TEST_CASE("graph invariants hold on random edge lists") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<VertexId> id(0, 29);
    std::vector<std::pair<VertexId, VertexId>> raw;
    for (int i = 0; i < 80; ++i) {
      VertexId a = id(rng), b = id(rng);
      if (a != b) raw.emplace_back(a, b);
    }
    auto g = build_graph(std::span<const std::pair<VertexId, VertexId>>(raw), 30);
    std::size_t ends = 0;
    for (VertexId u = 0; u < 30; ++u) {
      ends += g.degree(u);
      CHECK_FALSE(g.has_edge(u, u));
      for (VertexId v : g.neighbors(u)) CHECK(g.has_edge(v, u));
    }
    CHECK(ends == 2 * g.edge_count());
    CHECK(non_edges(g).size() + g.edge_count() == 30 * 29 / 2);
  }
}

TEST_CASE("remove_random_edges") {
  std::vector<Edge> es;
  for (VertexId i = 0; i < 100; ++i) es.emplace_back(i, i + 1);
  auto g = build_graph(std::span<const Edge>(es), 101);
  REQUIRE(g.edge_count() == 100);

  auto obs = remove_random_edges(g, 0.2, 5);
  CHECK(obs.observed.edge_count() == 80);
  CHECK(obs.removed.size() == 20);
  CHECK(obs.observed.vertex_count() == 101);
  for (const Edge& e : obs.removed) {
    CHECK(g.has_edge(e.u, e.v));
    CHECK_FALSE(obs.observed.has_edge(e.u, e.v));
  }
  for (const Edge& e : obs.observed.edges()) CHECK_FALSE(obs.removed.contains(e));

  auto none = remove_random_edges(g, 0.0, 5);
  CHECK(none.removed.empty());
  CHECK(none.observed.edges() == g.edges());

  auto all = remove_random_edges(g, 1.0, 5);
  CHECK(all.observed.edge_count() == 0);
  CHECK(all.removed.size() == 100);

  auto again = remove_random_edges(g, 0.2, 5);
  CHECK(again.removed.pairs() == obs.removed.pairs());

  CHECK_THROWS_AS(remove_random_edges(g, 1.5, 1), ParameterError);
  CHECK(round_half_up(2.5) == 3);
  CHECK(round_half_up(0.49) == 0);
}

TEST_CASE("edge removal frequency is uniform") {
  // 50-edge graph, f = 0.3, 2000 trials: each edge removed with frequency
  // 0.3 +- 3 sigma, sigma = sqrt(f (1-f) / trials)
  std::vector<Edge> es;
  for (VertexId i = 0; i < 50; ++i) es.emplace_back(i, 50 + i);
  auto g = build_graph(std::span<const Edge>(es), 100);
  const int trials = 2000;
  const double f = 0.3;
  std::vector<int> hits(100, 0);
  for (int t = 0; t < trials; ++t)
    for (const Edge& e : remove_random_edges(g, f, std::uint64_t(t)).removed) ++hits[e.u];
  const double sigma = std::sqrt(f * (1 - f) / trials);
  for (VertexId i = 0; i < 50; ++i) {
    const double freq = double(hits[i]) / trials;
    CHECK(std::abs(freq - f) <= 3 * sigma + 1e-12);
  }
}

TEST_CASE("non_edges") {
  CHECK(non_edges(make({{0, 1}, {1, 2}, {0, 2}})).empty());
  CHECK(non_edges(make({{0, 1}, {1, 2}})) == std::vector<Edge>{{0, 2}});
  auto star = make({{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  auto ne = non_edges(star);
  CHECK(ne.size() == 6);
  for (const Edge& e : ne) CHECK(e.u >= 1);
}

TEST_CASE("clustering coefficient and average degree") {
  CHECK(clustering_coefficient(make({{0, 1}, {1, 2}, {0, 2}})) == doctest::Approx(1.0));
  CHECK(clustering_coefficient(make({{0, 1}, {1, 2}})) == doctest::Approx(0.0));
  CHECK(clustering_coefficient(make({{0, 1}}, 3)) == 0.0);
  // triangle with a pendant at 2: C(0)=C(1)=1, C(2)=1/3, vertex 3 excluded
  CHECK(clustering_coefficient(make({{0, 1}, {1, 2}, {0, 2}, {2, 3}})) == doctest::Approx((1 + 1 + 1.0 / 3) / 3));

  CHECK(average_degree(make({{0, 1}, {1, 2}, {0, 2}})) == doctest::Approx(2.0));
  CHECK(average_degree(make({{0, 1}, {0, 2}, {0, 3}, {0, 4}})) == doctest::Approx(1.6));
  CHECK_THROWS_AS(average_degree(Graph{}), ParameterError);

  // email network counts: 2 * 5451 / 1133
  std::vector<Edge> es;
  for (VertexId i = 0; i < 5451; ++i) es.emplace_back(i % 1133, (i % 1133 + 1 + i / 1133) % 1133);
  auto g = build_graph(std::span<const Edge>(es), 1133);
  REQUIRE(g.edge_count() == 5451);
  CHECK(average_degree(g) == doctest::Approx(9.62).epsilon(0.001));
}

TEST_CASE("clustering matches a matrix oracle on small random graphs") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto p = oracle::random_graph(8, 0.45, rng);
    oracle::Matrix m(8, p);
    double sum = 0;
    int cnt = 0;
    for (unsigned v = 0; v < 8; ++v) {
      const auto ns = m.neighbors(v);
      const std::vector<unsigned> nb(ns.begin(), ns.end());
      if (nb.size() < 2) continue;
      int links = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) links += m.a[nb[i]][nb[j]];
      sum += links / (nb.size() * (nb.size() - 1) / 2.0);
      ++cnt;
    }
    CHECK(clustering_coefficient(from_oracle(p, 8)) == doctest::Approx(cnt ? sum / cnt : 0.0));
  }
}

TEST_CASE("edge list round trip") {
  std::istringstream in("# comment\n\nalice bob\nbob carol\n  \ncarol alice\nalice bob\n");
  auto lg = read_edge_list(in);
  CHECK(lg.graph.vertex_count() == 3);
  CHECK(lg.graph.edge_count() == 3);
  CHECK(lg.labels.label(0) == "alice");

  std::ostringstream out;
  write_edge_list(out, lg.graph, lg.labels);
  CHECK(out.str() == "alice bob\nalice carol\nbob carol\n");

  std::istringstream back(out.str());
  auto lg2 = read_edge_list(back);
  CHECK(lg2.graph.edges() == lg.graph.edges());

  std::istringstream bad("a a\n");
  CHECK_THROWS_AS(read_edge_list(bad), ParameterError);
  std::istringstream one("a\n");
  CHECK_THROWS_AS(read_edge_list(one), ParameterError);
}
