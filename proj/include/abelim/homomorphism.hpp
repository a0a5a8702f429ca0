#pragma once

#include "abelim/presentation.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace abelim {

/// Map between presented groups, given on generators by a
/// (target.gens x source.gens) matrix. Construction verifies that every
/// source relation lands in the target relation lattice and throws
/// NotWellDefined otherwise.
class Homomorphism {
public:
    Homomorphism(Presentation source, Presentation target, IntMatrix matrix);

    static Homomorphism identity(const Presentation& a);
    static Homomorphism zero(const Presentation& source, const Presentation& target);
    static Homomorphism scalar(const Presentation& a, const Integer& n);

    const Presentation& source() const { return source_; }
    const Presentation& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

    Element operator()(const Element& x) const;
    Element apply(const IntVector& coords) const;

    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_isomorphism() const { return is_injective() && is_surjective(); }

    /// Pointwise equality on generators modulo target relations.
    bool equals(const Homomorphism& other) const;

private:
    Presentation source_;
    Presentation target_;
    IntMatrix matrix_;
};

/// g ∘ f
Homomorphism compose(const Homomorphism& g, const Homomorphism& f);
Homomorphism operator+(const Homomorphism& f, const Homomorphism& g);

struct KernelResult {
    Presentation group;
    Homomorphism inclusion;
};

struct ImageResult {
    Presentation group;
    Homomorphism inclusion;     // image -> target
    Homomorphism corestriction; // source -> image
};

struct CokernelResult {
    Presentation group;
    Homomorphism projection;
};

KernelResult kernel(const Homomorphism& h);
ImageResult image(const Homomorphism& h);
CokernelResult cokernel(const Homomorphism& h);

struct DirectSum {
    Presentation sum;
    std::vector<Homomorphism> injections;
    std::vector<Homomorphism> projections;
};

DirectSum direct_sum(const std::vector<Presentation>& parts);
DirectSum direct_sum(const Presentation& a, const Presentation& b);

/// Block-diagonal map between direct sums (sources and targets summed in order).
Homomorphism direct_sum(const std::vector<Homomorphism>& maps);

/// The map x -> (f_1(x), ..., f_k(x)) into the direct sum of the targets.
Homomorphism stacked(const Presentation& source, const std::vector<Homomorphism>& maps);

struct TorsionResult {
    Presentation group;
    Homomorphism inclusion;
};

TorsionResult torsion_subgroup(const Presentation& a);
bool is_torsion_free(const Presentation& a);
/// Largest invariant factor when the torsion subgroup is nontrivial.
std::optional<Integer> exponent_bound(const Presentation& a);

/// Some x with h(x) = y in the target group, if one exists.
std::optional<Element> solve(const Homomorphism& h, const Element& y);

/// Prepared form of solve for many right-hand sides against one map.
class PreimageSolver {
public:
    explicit PreimageSolver(const Homomorphism& h);
    ~PreimageSolver();
    /// Source coordinates x with h(x) = y modulo target relations.
    std::optional<IntVector> solve(const IntVector& y) const;

private:
    std::size_t source_gens_;
    std::unique_ptr<Lattice> joint_;
};

/// Whether the subgroup generated by the images of `sub` lies in the
/// subgroup generated by the images of `super` (same target).
bool subgroup_contained(const Homomorphism& sub, const Homomorphism& super);
bool same_subgroup(const Homomorphism& a, const Homomorphism& b);

} // namespace abelim
