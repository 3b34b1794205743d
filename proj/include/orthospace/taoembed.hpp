#pragma once

// Orthogonal representations of finite graphs by rational vectors with
// nonnegative Gram matrix: adjacent vertices get orthogonal vectors, all other
// pairs a strictly positive inner product.

#include <orthospace/exactnum.hpp>
#include <orthospace/greechie.hpp>

#include <cstddef>
#include <vector>

namespace orthospace {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Inductive construction: vertex n+1 is added by doubling the ambient space,
/// w_i = u_i (adjacent to the new vertex) or u_i + e_i (not adjacent), and
/// w_{n+1} = e_1 + ... + e_n with e_i in the second summand. Output vectors
/// have dimension 2^(n-1). Throws EmptyGraph for n = 0.
std::vector<RationalVector> tao_vectors(const GraphSpec& g);

struct GramReport {
    RationalMatrix gram;
    std::size_t rank = 0;
    bool pattern_ok = false;  // zero entries off the diagonal exactly on edges
    bool nonneg_ok = false;
};

/// Throws DimensionMismatch when the vector count or dimensions disagree.
GramReport verify_gram(const std::vector<RationalVector>& vectors, const GraphSpec& g);

/// Rank by fraction-free (Bareiss) elimination after clearing denominators row-wise.
std::size_t matrix_rank(const RationalMatrix& m);

}  // namespace orthospace
