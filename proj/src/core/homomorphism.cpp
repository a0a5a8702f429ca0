#include "abelim/homomorphism.hpp"

#include "abelim/errors.hpp"
#include "abelim/lattice.hpp"

namespace abelim {

Homomorphism::Homomorphism(Presentation source, Presentation target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
{
    if (matrix_.cols() == 0 && matrix_.rows() == 0)
        matrix_ = IntMatrix(target_.gens(), source_.gens());
    if (matrix_.rows() != target_.gens() || matrix_.cols() != source_.gens())
        throw std::invalid_argument("Homomorphism: matrix shape does not match generator counts");
    const IntMatrix& rel = source_.relations();
    if (rel.cols() > 0 && !target_.relation_lattice().contains_all(matrix_ * rel))
        throw NotWellDefined("homomorphism does not respect source relations");
}

Homomorphism Homomorphism::identity(const Presentation& a)
{
    return Homomorphism(a, a, IntMatrix::identity(a.gens()));
}

Homomorphism Homomorphism::zero(const Presentation& source, const Presentation& target)
{
    return Homomorphism(source, target, IntMatrix(target.gens(), source.gens()));
}

Homomorphism Homomorphism::scalar(const Presentation& a, const Integer& n)
{
    return Homomorphism(a, a, n * IntMatrix::identity(a.gens()));
}

Element Homomorphism::apply(const IntVector& coords) const
{
    return Element{target_, matrix_ * std::span<const Integer>(coords)};
}

Element Homomorphism::operator()(const Element& x) const { return apply(x.coords); }

bool Homomorphism::is_zero() const { return target_.relation_lattice().contains_all(matrix_); }

bool Homomorphism::is_injective() const { return kernel(*this).group.is_trivial(); }

bool Homomorphism::is_surjective() const { return cokernel(*this).group.is_trivial(); }

bool Homomorphism::equals(const Homomorphism& other) const
{
    if (source_.gens() != other.source_.gens() || target_.gens() != other.target_.gens())
        return false;
    return target_.relation_lattice().contains_all(matrix_ - other.matrix_);
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& f)
{
    if (f.target().gens() != g.source().gens())
        throw std::invalid_argument("compose: target/source mismatch");
    return Homomorphism(f.source(), g.target(), g.matrix() * f.matrix());
}

Homomorphism operator+(const Homomorphism& f, const Homomorphism& g)
{
    return Homomorphism(f.source(), f.target(), f.matrix() + g.matrix());
}

KernelResult kernel(const Homomorphism& h)
{
    const std::size_t a = h.source().gens();
    const std::size_t b = h.target().gens();
    const IntMatrix& rel_a = h.source().relations();
    Lattice joint(b, hstack(h.matrix(), h.target().relations()), true);
    IntMatrix syz = joint.syzygies();
    // Elements x with h(x) in the target relation lattice.
    Lattice preimage(a, syz.row_range(0, a), false);
    IntMatrix basis = preimage.basis_matrix();
    IntMatrix rel(basis.cols(), rel_a.cols());
    for (std::size_t c = 0; c < rel_a.cols(); ++c) {
        auto coords = preimage.coordinates(rel_a.column(c));
        if (!coords)
            throw NotWellDefined("kernel: source relation outside preimage lattice");
        rel.set_column(c, *coords);
    }
    Presentation k(basis.cols(), std::move(rel));
    return {k, Homomorphism(k, h.source(), std::move(basis))};
}

ImageResult image(const Homomorphism& h)
{
    const std::size_t a = h.source().gens();
    const std::size_t b = h.target().gens();
    Lattice joint(b, hstack(h.matrix(), h.target().relations()), true);
    IntMatrix syz = joint.syzygies();
    Lattice preimage(a, syz.row_range(0, a), false);
    Presentation im(a, preimage.basis_matrix());
    return {im, Homomorphism(im, h.target(), h.matrix()),
            Homomorphism(h.source(), im, IntMatrix::identity(a))};
}

CokernelResult cokernel(const Homomorphism& h)
{
    const std::size_t b = h.target().gens();
    Presentation c(b, hstack(h.target().relations(), h.matrix()));
    return {c, Homomorphism(h.target(), c, IntMatrix::identity(b))};
}

DirectSum direct_sum(const std::vector<Presentation>& parts)
{
    std::size_t gens = 0, rels = 0;
    for (const auto& p : parts) {
        gens += p.gens();
        rels += p.relations().cols();
    }
    IntMatrix rel(gens, rels);
    std::size_t g0 = 0, r0 = 0;
    for (const auto& p : parts) {
        const auto& r = p.relations();
        for (std::size_t i = 0; i < r.rows(); ++i)
            for (std::size_t j = 0; j < r.cols(); ++j)
                rel(g0 + i, r0 + j) = r(i, j);
        g0 += p.gens();
        r0 += r.cols();
    }
    DirectSum out{Presentation(gens, std::move(rel)), {}, {}};
    g0 = 0;
    for (const auto& p : parts) {
        IntMatrix inj(gens, p.gens()), proj(p.gens(), gens);
        for (std::size_t i = 0; i < p.gens(); ++i) {
            inj(g0 + i, i) = 1;
            proj(i, g0 + i) = 1;
        }
        out.injections.emplace_back(p, out.sum, std::move(inj));
        out.projections.emplace_back(out.sum, p, std::move(proj));
        g0 += p.gens();
    }
    return out;
}

DirectSum direct_sum(const Presentation& a, const Presentation& b) { return direct_sum(std::vector{a, b}); }

Homomorphism direct_sum(const std::vector<Homomorphism>& maps)
{
    std::vector<Presentation> sources, targets;
    for (const auto& f : maps) {
        sources.push_back(f.source());
        targets.push_back(f.target());
    }
    auto s = direct_sum(sources);
    auto t = direct_sum(targets);
    IntMatrix m(t.sum.gens(), s.sum.gens());
    std::size_t r0 = 0, c0 = 0;
    for (const auto& f : maps) {
        const auto& fm = f.matrix();
        for (std::size_t i = 0; i < fm.rows(); ++i)
            for (std::size_t j = 0; j < fm.cols(); ++j)
                m(r0 + i, c0 + j) = fm(i, j);
        r0 += fm.rows();
        c0 += fm.cols();
    }
    return Homomorphism(s.sum, t.sum, std::move(m));
}

Homomorphism stacked(const Presentation& source, const std::vector<Homomorphism>& maps)
{
    std::vector<Presentation> targets;
    for (const auto& f : maps) {
        if (f.source().gens() != source.gens())
            throw std::invalid_argument("stacked: maps must share the source");
        targets.push_back(f.target());
    }
    auto t = direct_sum(targets);
    IntMatrix m(t.sum.gens(), source.gens());
    std::size_t r0 = 0;
    for (const auto& f : maps) {
        const auto& fm = f.matrix();
        for (std::size_t i = 0; i < fm.rows(); ++i)
            for (std::size_t j = 0; j < fm.cols(); ++j)
                m(r0 + i, j) = fm(i, j);
        r0 += fm.rows();
    }
    return Homomorphism(source, t.sum, std::move(m));
}

TorsionResult torsion_subgroup(const Presentation& a)
{
    // Rows of `left` span the integer left kernel of the relation matrix, so
    // x -> left * x is well defined with torsion-free image and kernel t(A).
    const IntMatrix& rel = a.relations();
    Lattice rows(rel.cols(), rel.transpose(), true);
    IntMatrix left = rows.syzygies().transpose();
    Presentation free_part = Presentation::free(left.rows());
    auto k = kernel(Homomorphism(a, free_part, std::move(left)));
    return {k.group, k.inclusion};
}

bool is_torsion_free(const Presentation& a) { return a.canonical_form().is_torsion_free(); }

std::optional<Integer> exponent_bound(const Presentation& a)
{
    const auto& f = a.canonical_form().invariant_factors;
    if (f.empty())
        return std::nullopt;
    return f.back();
}

PreimageSolver::PreimageSolver(const Homomorphism& h)
    : source_gens_(h.source().gens()),
      joint_(std::make_unique<Lattice>(h.target().gens(), hstack(h.matrix(), h.target().relations()), true))
{
}

PreimageSolver::~PreimageSolver() = default;

std::optional<IntVector> PreimageSolver::solve(const IntVector& y) const
{
    if (y.size() != joint_->dim())
        throw std::invalid_argument("solve: element is not in the target group");
    auto x = joint_->solve(y);
    if (x)
        x->resize(source_gens_);
    return x;
}

std::optional<Element> solve(const Homomorphism& h, const Element& y)
{
    auto x = PreimageSolver(h).solve(y.coords);
    if (!x)
        return std::nullopt;
    return Element{h.source(), std::move(*x)};
}

bool subgroup_contained(const Homomorphism& sub, const Homomorphism& super)
{
    const auto& t = super.target();
    Lattice span(t.gens(), hstack(super.matrix(), t.relations()), false);
    return span.contains_all(sub.matrix());
}

bool same_subgroup(const Homomorphism& a, const Homomorphism& b)
{
    return subgroup_contained(a, b) && subgroup_contained(b, a);
}

} // namespace abelim
