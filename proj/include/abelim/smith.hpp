#pragma once

#include "abelim/int_matrix.hpp"
#include "abelim/sparse.hpp"

#include <vector>

namespace abelim {

/// U * M * V = D with U, V unimodular and D diagonal, nonnegative,
/// d1 | d2 | ... on the nonzero part.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Nonzero diagonal of the Smith form (including unit entries), in
/// divisibility order. Its length is the rank of the matrix.
std::vector<Integer> elementary_divisors(const IntMatrix& m);

/// Same as above for sparse input. Eliminates unit pivots column by column,
/// splits the remainder into connected blocks and runs dense reduction on
/// each block.
std::vector<Integer> elementary_divisors(const SparseMatrix& m);

/// Rearranges a list of nonzero diagonal entries into a divisibility chain
/// with the same Smith form (pairwise gcd/lcm exchange).
std::vector<Integer> divisibility_chain(std::vector<Integer> diag);

} // namespace abelim
