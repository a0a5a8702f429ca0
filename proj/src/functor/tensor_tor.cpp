#include "abelim/functors.hpp"

#include "abelim/errors.hpp"
#include "abelim/lattice.hpp"

namespace abelim {

namespace {

Presentation free_tensor(std::size_t k, const Presentation& b)
{
    return Presentation(k * b.gens(), kronecker(IntMatrix::identity(k), b.relations()));
}

// 0 -> Z^k --R--> Z^l -> A -> 0 tensored with B; Tor(A, B) is the kernel.
struct TorData {
    IntMatrix resolution; // l x k, injective
    KernelResult kernel;
};

TorData tor_data(const Presentation& a, const Presentation& b)
{
    IntMatrix r = a.relation_lattice().basis_matrix();
    Presentation src = free_tensor(r.cols(), b);
    Presentation tgt = free_tensor(a.gens(), b);
    Homomorphism m(src, tgt, kronecker(r, IntMatrix::identity(b.gens())));
    return {std::move(r), kernel(m)};
}

} // namespace

Presentation tensor(const Presentation& a, const Presentation& b)
{
    IntMatrix rel = hstack(kronecker(a.relations(), IntMatrix::identity(b.gens())),
                           kronecker(IntMatrix::identity(a.gens()), b.relations()));
    return Presentation(a.gens() * b.gens(), std::move(rel));
}

Homomorphism tensor_induced(const Homomorphism& f, const Homomorphism& g)
{
    return Homomorphism(tensor(f.source(), g.source()), tensor(f.target(), g.target()),
                        kronecker(f.matrix(), g.matrix()));
}

Presentation tor(const Presentation& a, const Presentation& b) { return tor_data(a, b).kernel.group; }

Homomorphism tor_induced(const Homomorphism& f, const Homomorphism& g)
{
    TorData src = tor_data(f.source(), g.source());
    TorData tgt = tor_data(f.target(), g.target());

    // Lift of f to the relation modules; unique because tgt.resolution is injective.
    const Lattice& rel = f.target().relation_lattice();
    IntMatrix f1(tgt.resolution.cols(), src.resolution.cols());
    for (std::size_t c = 0; c < src.resolution.cols(); ++c) {
        auto coords = rel.coordinates(f.matrix() * std::span<const Integer>(src.resolution.column(c)));
        if (!coords)
            throw NotWellDefined("tor_induced: map does not respect relations");
        f1.set_column(c, *coords);
    }

    IntMatrix chain = kronecker(f1, g.matrix());
    IntMatrix pushed = chain * src.kernel.inclusion.matrix();
    PreimageSolver solver(tgt.kernel.inclusion);
    IntMatrix m(tgt.kernel.group.gens(), src.kernel.group.gens());
    for (std::size_t c = 0; c < pushed.cols(); ++c) {
        auto x = solver.solve(pushed.column(c));
        if (!x)
            throw NotWellDefined("tor_induced: chain map leaves the kernel");
        m.set_column(c, *x);
    }
    return Homomorphism(src.kernel.group, tgt.kernel.group, std::move(m));
}

Homomorphism tor_induced(const Homomorphism& f, const Presentation& b)
{
    return tor_induced(f, Homomorphism::identity(b));
}

} // namespace abelim
