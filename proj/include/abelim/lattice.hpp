#pragma once

#include "abelim/int_matrix.hpp"
#include "abelim/sparse.hpp"

#include <optional>
#include <vector>

namespace abelim {

/// Subgroup of Z^dim spanned by a finite set of generator columns, held in
/// column Hermite form. Optionally remembers how each basis vector and each
/// syzygy is written in terms of the original generators.
class Lattice {
public:
    Lattice(std::size_t dim, const IntMatrix& generators, bool track_transform = false);
    Lattice(std::size_t dim, std::vector<SparseColumn> generators, bool track_transform = false);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return basis_.size(); }
    std::size_t generator_count() const { return ngens_; }

    /// Hermite basis as a dim x rank matrix.
    IntMatrix basis_matrix() const;
    const std::vector<SparseColumn>& basis() const { return basis_; }
    const std::vector<std::uint32_t>& pivot_rows() const { return pivot_rows_; }

    /// Coefficients c with y = basis * c, or nullopt if y is not in the lattice.
    std::optional<IntVector> coordinates(const IntVector& y) const;
    bool contains(const IntVector& y) const { return coordinates(y).has_value(); }
    bool contains_all(const IntMatrix& columns) const;

    /// Generator coefficients x with generators * x = y. Requires tracking.
    std::optional<IntVector> solve(const IntVector& y) const;

    /// Basis of the relation module {x : generators * x = 0}, as
    /// ngens x (ngens - rank). Requires tracking.
    IntMatrix syzygies() const;

private:
    void build(std::vector<SparseColumn> cols, bool track);

    std::size_t dim_ = 0;
    std::size_t ngens_ = 0;
    bool tracked_ = false;
    std::vector<SparseColumn> basis_;
    std::vector<std::uint32_t> pivot_rows_;
    std::vector<SparseColumn> basis_transform_;
    std::vector<SparseColumn> syzygies_;
};

} // namespace abelim
