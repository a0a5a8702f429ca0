#pragma once

#include "abelim/int_matrix.hpp"
#include "abelim/integer.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace abelim {

/// Sparse integer vector: (index, nonzero value) pairs sorted by index.
struct SparseEntry {
    std::uint32_t index;
    Integer value;
};

using SparseColumn = std::vector<SparseEntry>;

/// y := y - k * x
void sparse_axpy(SparseColumn& y, const Integer& k, const SparseColumn& x);

/// Value at index, or zero.
Integer sparse_at(const SparseColumn& v, std::uint32_t index);

SparseColumn to_sparse(const IntVector& v);
IntVector to_dense(const SparseColumn& v, std::size_t dim);

/// Column-oriented sparse matrix; every column has length `rows`.
struct SparseMatrix {
    std::size_t rows = 0;
    std::vector<SparseColumn> columns;

    std::size_t cols() const { return columns.size(); }
    static SparseMatrix from_dense(const IntMatrix& m);
    IntMatrix to_dense() const;
};

} // namespace abelim
