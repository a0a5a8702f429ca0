#pragma once

#include "abelim/int_matrix.hpp"
#include "abelim/integer.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace abelim {

class Lattice;

/// Isomorphism-class witness: Z^free_rank + Z/d1 + ... + Z/dr, d1 | d2 | ...
/// and every d >= 2.
struct CanonicalForm {
    std::size_t free_rank = 0;
    std::vector<Integer> invariant_factors;

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
    bool is_finite() const { return free_rank == 0; }
    bool is_torsion_free() const { return invariant_factors.empty(); }
    /// Order of the torsion part.
    Integer torsion_order() const;
    /// Group-expression text, e.g. "Z^2 + Z/4"; the trivial group prints "0".
    std::string to_string() const;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm direct_sum(const CanonicalForm& a, const CanonicalForm& b);

/// Z^gens modulo the column span of `relations` (gens x k).
class Presentation {
public:
    /// Trivial group on zero generators.
    Presentation();
    Presentation(std::size_t gens, IntMatrix relations);

    static Presentation free(std::size_t rank);
    /// Z/m, or Z when m == 0.
    static Presentation cyclic(const Integer& m);
    /// One generator per entry, entry 0 meaning a free summand.
    static Presentation diagonal(const std::vector<Integer>& orders);
    static Presentation from_canonical(const CanonicalForm& cf);

    std::size_t gens() const;
    const IntMatrix& relations() const;

    /// Computed once and cached; concurrent callers see the same value.
    const CanonicalForm& canonical_form() const;
    /// Hermite basis of the relation lattice, cached like canonical_form.
    const Lattice& relation_lattice() const;

    bool is_trivial() const { return canonical_form().is_trivial(); }
    bool is_finite() const { return canonical_form().is_finite(); }
    bool is_torsion_free() const { return canonical_form().is_torsion_free(); }

    /// Orders of the cyclic summands when every relation is a multiple of a
    /// single generator and each generator carries at most one relation.
    std::optional<std::vector<Integer>> diagonal_orders() const;

    bool is_isomorphic(const Presentation& other) const
    {
        return canonical_form() == other.canonical_form();
    }

private:
    struct State;
    std::shared_ptr<const State> state_;
};

/// An element of a presented group, given by generator coordinates.
struct Element {
    Presentation owner;
    IntVector coords;

    /// Congruence modulo the relation lattice.
    bool equals(const Element& other) const;
    bool is_zero() const;
};

} // namespace abelim
