#pragma once

#include <array>
#include <string>
#include <string_view>

#include "linkpred/graph.hpp"

namespace linkpred {

/// Local similarity indices over a vertex pair.
enum class SimilarityMethod { CN, Jaccard, AA, RA, PA };

inline constexpr std::array<SimilarityMethod, 5> kAllMethods = {
    SimilarityMethod::CN, SimilarityMethod::Jaccard, SimilarityMethod::AA, SimilarityMethod::RA,
    SimilarityMethod::PA};

/// Lower-case CLI name: cn, jaccard, aa, ra, pa.
std::string_view method_name(SimilarityMethod m);

/// Case-insensitive inverse of method_name. Throws ParameterError.
SimilarityMethod parse_method(std::string_view name);

/// |N(u) ∩ N(v)|
double score_cn(const Graph& g, VertexId u, VertexId v);

/// |N(u) ∩ N(v)| / |N(u) ∪ N(v)|, 0 when both neighborhoods are empty.
double score_jaccard(const Graph& g, VertexId u, VertexId v);

/// Adamic-Adar: sum over common neighbors s of 1 / ln deg(s).
double score_aa(const Graph& g, VertexId u, VertexId v);

/// Resource allocation: sum over common neighbors s of 1 / deg(s).
double score_ra(const Graph& g, VertexId u, VertexId v);

/// Preferential attachment: deg(u) * deg(v).
double score_pa(const Graph& g, VertexId u, VertexId v);

double score(SimilarityMethod m, const Graph& g, VertexId u, VertexId v);

}  // namespace linkpred
