#pragma once

#include "abelim/presentation.hpp"
#include "abelim/sparse.hpp"

#include <cstdint>
#include <vector>

namespace abelim {

/// Finite abelian group given by its full addition table. The group axioms
/// are checked on construction.
class FiniteGroupTable {
public:
    FiniteGroupTable(std::vector<std::vector<std::uint32_t>> table, std::uint32_t zero);

    /// Elements are enumerated in mixed radix over the canonical factors.
    /// Throws std::invalid_argument for infinite groups.
    static FiniteGroupTable from_presentation(const Presentation& a);

    std::size_t order() const { return table_.size(); }
    std::uint32_t zero() const { return zero_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }

private:
    std::vector<std::vector<std::uint32_t>> table_;
    std::uint32_t zero_;
};

struct BarOptions {
    /// Cap on |A|^(n+1).
    std::uint64_t budget = 200000;
    bool check_square_zero = true;
};

/// Differential C_k -> C_{k-1} of the normalized bar complex with trivial
/// coefficients; basis of C_k is k-tuples of nonzero elements.
SparseMatrix bar_differential(const FiniteGroupTable& g, std::size_t k);

/// H_n(A; Z). Throws BudgetExceeded when |A|^(n+1) exceeds the budget.
CanonicalForm bar_homology(const FiniteGroupTable& g, std::size_t n, const BarOptions& opts = {});

} // namespace abelim
