#include <doctest.h>

#include <cmath>
#include <random>

#include "linkpred/similarity.hpp"
#include "oracles.hpp"

using namespace linkpred;

namespace {

Graph make(const oracle::Pairs& p, std::size_t n) {
  std::vector<std::pair<VertexId, VertexId>> v(p.begin(), p.end());
  return build_graph(std::span<const std::pair<VertexId, VertexId>>(v), n);
}

oracle::Pairs clique(unsigned n) {
  oracle::Pairs p;
  for (unsigned u = 0; u < n; ++u)
    for (unsigned v = u + 1; v < n; ++v) p.emplace_back(u, v);
  return p;
}

}  // namespace

TEST_CASE("common neighbours") {
  CHECK(score_cn(make({{0, 1}, {1, 2}}, 3), 0, 2) == 1.0);
  CHECK(score_cn(make({{0, 1}, {2, 3}}, 4), 0, 2) == 0.0);
  auto k5 = make(clique(5), 5);
  for (VertexId u = 0; u < 5; ++u)
    for (VertexId v = u + 1; v < 5; ++v) CHECK(score_cn(k5, u, v) == 3.0);
}

TEST_CASE("jaccard") {
  // u=0, v=1 with N(0) = N(1) = {2,3}
  CHECK(score_jaccard(make({{0, 2}, {0, 3}, {1, 2}, {1, 3}}, 4), 0, 1) == 1.0);
  CHECK(score_jaccard(make({{0, 2}, {1, 3}}, 4), 0, 1) == 0.0);
  // N(u)={a,b,c}, N(v)={b,c,d}; u=0, v=1, a..d = 2..5
  auto g = make({{0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {1, 5}}, 6);
  CHECK(score_jaccard(g, 0, 1) == doctest::Approx(0.5));
  CHECK(score_jaccard(make({}, 2), 0, 1) == 0.0);
}

TEST_CASE("adamic adar") {
  CHECK(score_aa(make({{0, 2}, {1, 3}}, 4), 0, 1) == 0.0);
  CHECK(score_aa(make({{0, 2}, {1, 2}}, 3), 0, 1) == doctest::Approx(1.4426950408889634).epsilon(1e-12));
  // common neighbours 2 (degree 2) and 3 (degree 4)
  auto g = make({{0, 2}, {1, 2}, {0, 3}, {1, 3}, {3, 4}, {3, 5}}, 6);
  CHECK(score_aa(g, 0, 1) == doctest::Approx(2.164042561333445).epsilon(1e-12));
}

TEST_CASE("resource allocation") {
  CHECK(score_ra(make({{0, 2}, {1, 3}}, 4), 0, 1) == 0.0);
  CHECK(score_ra(make({{0, 2}, {1, 2}}, 3), 0, 1) == 0.5);
  // common neighbours 2 (degree 2) and 3 (degree 5)
  auto g = make({{0, 2}, {1, 2}, {0, 3}, {1, 3}, {3, 4}, {3, 5}, {3, 6}}, 7);
  CHECK(score_ra(g, 0, 1) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("preferential attachment") {
  // deg(0) = 3, deg(1) = 4
  auto g = make({{0, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}, {1, 7}, {1, 8}}, 9);
  CHECK(score_pa(g, 0, 1) == 12.0);
  CHECK(score_pa(g, 0, 9 - 1) == 3.0);
  CHECK(score_pa(make({{0, 1}}, 3), 0, 2) == 0.0);
  CHECK(score_pa(make({{0, 2}, {1, 3}}, 4), 0, 1) == 1.0);
}

TEST_CASE("dispatch, names and errors") {
  auto g = make({{0, 1}, {1, 2}}, 3);
  CHECK(score(SimilarityMethod::CN, g, 0, 2) == score_cn(g, 0, 2));
  CHECK(score(SimilarityMethod::Jaccard, g, 0, 2) == score_jaccard(g, 0, 2));
  CHECK(score(SimilarityMethod::AA, g, 0, 2) == score_aa(g, 0, 2));
  CHECK(score(SimilarityMethod::RA, g, 0, 2) == score_ra(g, 0, 2));
  CHECK(score(SimilarityMethod::PA, g, 0, 2) == score_pa(g, 0, 2));
  CHECK(parse_method("AA") == SimilarityMethod::AA);
  CHECK(parse_method("Jaccard") == SimilarityMethod::Jaccard);
  for (auto m : kAllMethods) CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("katz"), ParameterError);
  CHECK_THROWS_AS(score_cn(g, 0, 3), std::out_of_range);
  CHECK_THROWS_AS(score_aa(g, 1, 1), ParameterError);
}

TEST_CASE("scorer properties on random graphs") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    auto p = oracle::random_graph(12, 0.3, rng);
    auto g = make(p, 12);
    for (VertexId u = 0; u < 12; ++u)
      for (VertexId v = u + 1; v < 12; ++v) {
        for (auto m : kAllMethods) CHECK(score(m, g, u, v) == score(m, g, v, u));
        const double cn = score_cn(g, u, v);
        const double jac = score_jaccard(g, u, v);
        const double aa = score_aa(g, u, v);
        const double ra = score_ra(g, u, v);
        CHECK(cn == std::floor(cn));
        CHECK(jac >= 0.0);
        CHECK(jac <= 1.0);
        CHECK(score_pa(g, u, v) >= 0.0);
        CHECK((cn == 0) == (jac == 0));
        CHECK((cn == 0) == (aa == 0));
        CHECK((cn == 0) == (ra == 0));
        if (cn >= 1) CHECK(aa > ra);
      }
  }
}

TEST_CASE("AA log base only rescales scores") {
  // 1/log_b(k) = ln(b) / ln(k): every pair's score scales by ln(b)
  std::mt19937_64 rng(5);
  auto g = make(oracle::random_graph(15, 0.3, rng), 15);
  for (double base : {2.0, 10.0}) {
    for (VertexId u = 0; u < 15; ++u)
      for (VertexId v = u + 1; v < 15; ++v) {
        double in_base = 0.0;
        for (VertexId s : g.neighbors(u))
          if (g.has_edge(s, v)) in_base += 1.0 / (std::log(double(g.degree(s))) / std::log(base));
        CHECK(in_base == doctest::Approx(std::log(base) * score_aa(g, u, v)).epsilon(1e-12));
      }
  }
}
