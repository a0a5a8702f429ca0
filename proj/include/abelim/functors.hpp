#pragma once

#include "abelim/homomorphism.hpp"
#include "abelim/presentation.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace abelim {

// Tensor product. Generator (i, j) of A ⊗ B has index i * B.gens() + j.
Presentation tensor(const Presentation& a, const Presentation& b);
Homomorphism tensor_induced(const Homomorphism& f, const Homomorphism& g);

// Tor(A, B) as the kernel of R ⊗ id_B, R an injective relation matrix of A.
Presentation tor(const Presentation& a, const Presentation& b);
Homomorphism tor_induced(const Homomorphism& f, const Homomorphism& g);
Homomorphism tor_induced(const Homomorphism& f, const Presentation& b);

// Exterior powers on strictly increasing generator tuples (lexicographic).
Presentation lambda(std::size_t n, const Presentation& a);
Homomorphism lambda_induced(std::size_t n, const Homomorphism& f);
std::vector<std::vector<std::uint32_t>> exterior_basis(std::size_t n, std::size_t gens);

Presentation h2_group(const Presentation& a);
Homomorphism h2_induced(const Homomorphism& f);

/// L1Λ² over the cyclic decomposition: one Z/d block per torsion summand,
/// then Tor(Ci, Cj) for i < j. Diagonal presentations keep their own
/// generator order; anything else is first replaced by its canonical form.
Presentation l1lambda2(const Presentation& a);
/// Induced map for blockwise maps between diagonal presentations: each torsion
/// generator goes to a multiple of one target generator, order-preserving
/// and injective. Throws UnsupportedInducedMap otherwise.
Homomorphism l1lambda2_induced(const Homomorphism& f);

/// Degrees 0..n of H_*(A), each a canonical diagonal presentation.
struct GradedGroup {
    std::vector<Presentation> components;

    std::size_t top_degree() const { return components.size() - 1; }
    const Presentation& degree(std::size_t k) const { return components.at(k); }
};

GradedGroup homology(const Presentation& a, std::size_t n);

/// H_n(A) in the presentation used for induced maps:
/// n = 0 gives Z, n = 1 gives A, n = 2 gives Λ²A; torsion-free A gives ΛⁿA;
/// n = 3 on diagonal A gives Λ³A ⊕ L1Λ²A; otherwise the Künneth canonical form.
Presentation homology_group(const Presentation& a, std::size_t n);
/// Throws UnsupportedInducedMap outside the cases with induced maps.
Homomorphism homology_induced(std::size_t n, const Homomorphism& f);
bool homology_has_induced(std::size_t n, const Presentation& a);

// Canonical-form arithmetic from the gcd rules, used for Künneth.
CanonicalForm cf_tensor(const CanonicalForm& a, const CanonicalForm& b);
CanonicalForm cf_tor(const CanonicalForm& a, const CanonicalForm& b);

struct BreenReport {
    CanonicalForm h3;
    CanonicalForm lambda3;
    CanonicalForm l1lambda2;
    bool order_consistent = false;
    /// H3 ≅ Λ³ ⊕ L1Λ² as canonical forms; reported separately from the order check.
    bool split_equal = false;
};

/// Throws InconsistentOrders when free ranks fail to add or torsion orders fail to multiply.
BreenReport breen_check(const Presentation& a);

struct OddSummandReport {
    std::vector<Integer> l1_odd;  // odd prime-power parts of L1Λ²(A)
    std::vector<Integer> tor_odd; // odd prime-power parts of Tor(A, A)
    bool holds = false;
};

OddSummandReport odd_summand_check(const Presentation& a);

/// Prime-power decomposition of the torsion part, sorted.
std::vector<Integer> primary_parts(const CanonicalForm& cf);

struct FunctorTag {
    enum class Kind { TensorWith, TorWith, Lambda, L1Lambda2, Homology };
    Kind kind = Kind::Homology;
    std::size_t n = 0;
    Presentation with;
    std::string with_text;

    static FunctorTag tensor_with(const std::string& group);
    static FunctorTag tor_with(const std::string& group);
    static FunctorTag lambda(std::size_t n);
    static FunctorTag l1lambda2();
    static FunctorTag homology(std::size_t n);

    /// e.g. "tensor(Z/2)", "lambda(2)", "homology(3)".
    std::string label() const;

    Presentation apply(const Presentation& a) const;
    Homomorphism apply(const Homomorphism& f) const;
    bool has_induced(const Presentation& a) const;
    /// Right-exact functors preserve surjections.
    bool right_exact() const
    {
        return kind == Kind::TensorWith || kind == Kind::Lambda || (kind == Kind::Homology && n <= 2);
    }
};

void to_json(nlohmann::json& j, const FunctorTag& f);
/// Throws ConfigError on malformed input.
FunctorTag functor_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CanonicalForm& cf);

} // namespace abelim
