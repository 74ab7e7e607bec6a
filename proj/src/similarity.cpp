#include "linkpred/similarity.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>

namespace linkpred {

namespace {

void check_pair(const Graph& g, VertexId u, VertexId v) {
  if (u >= g.vertex_count() || v >= g.vertex_count())
    throw std::out_of_range("vertex pair (" + std::to_string(u) + "," + std::to_string(v) +
                            ") out of range");
  if (u == v) throw ParameterError("similarity of a vertex with itself is undefined");
}

// Merge-walks two sorted neighbor lists, calling fn(s) on each common neighbor.
template <class Fn>
void for_each_common(std::span<const VertexId> a, std::span<const VertexId> b, Fn&& fn) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      fn(*i);
      ++i;
      ++j;
    }
  }
}

std::size_t common_count(const Graph& g, VertexId u, VertexId v) {
  std::size_t c = 0;
  for_each_common(g.neighbors(u), g.neighbors(v), [&](VertexId) { ++c; });
  return c;
}

}  // namespace

std::string_view method_name(SimilarityMethod m) {
  switch (m) {
    case SimilarityMethod::CN: return "cn";
    case SimilarityMethod::Jaccard: return "jaccard";
    case SimilarityMethod::AA: return "aa";
    case SimilarityMethod::RA: return "ra";
    case SimilarityMethod::PA: return "pa";
  }
  return "?";
}

SimilarityMethod parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  for (auto m : kAllMethods)
    if (method_name(m) == lower) return m;
  throw ParameterError("unknown similarity method '" + std::string(name) + "'");
}

double score_cn(const Graph& g, VertexId u, VertexId v) {
  check_pair(g, u, v);
  return double(common_count(g, u, v));
}

double score_jaccard(const Graph& g, VertexId u, VertexId v) {
  check_pair(g, u, v);
  const std::size_t inter = common_count(g, u, v);
  const std::size_t uni = g.degree(u) + g.degree(v) - inter;
  return uni == 0 ? 0.0 : double(inter) / double(uni);
}

double score_aa(const Graph& g, VertexId u, VertexId v) {
  check_pair(g, u, v);
  double sum = 0.0;
  for_each_common(g.neighbors(u), g.neighbors(v), [&](VertexId s) {
    const std::size_t k = g.degree(s);
    assert(k >= 2);
    sum += 1.0 / std::log(double(k));
  });
  return sum;
}

double score_ra(const Graph& g, VertexId u, VertexId v) {
  check_pair(g, u, v);
  double sum = 0.0;
  for_each_common(g.neighbors(u), g.neighbors(v), [&](VertexId s) {
    const std::size_t k = g.degree(s);
    assert(k >= 2);
    sum += 1.0 / double(k);
  });
  return sum;
}

double score_pa(const Graph& g, VertexId u, VertexId v) {
  check_pair(g, u, v);
  return double(g.degree(u)) * double(g.degree(v));
}

double score(SimilarityMethod m, const Graph& g, VertexId u, VertexId v) {
  switch (m) {
    case SimilarityMethod::CN: return score_cn(g, u, v);
    case SimilarityMethod::Jaccard: return score_jaccard(g, u, v);
    case SimilarityMethod::AA: return score_aa(g, u, v);
    case SimilarityMethod::RA: return score_ra(g, u, v);
    case SimilarityMethod::PA: return score_pa(g, u, v);
  }
  throw ParameterError("invalid similarity method");
}

}  // namespace linkpred
