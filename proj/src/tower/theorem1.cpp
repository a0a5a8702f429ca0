#include "abelim/tower.hpp"

#include "abelim/errors.hpp"

#include <algorithm>

namespace abelim {

namespace {

std::vector<Integer> prime_orders(const Integer& p, std::size_t M, std::size_t i)
{
    std::vector<Integer> orders(M, Integer(0));
    for (std::size_t j = std::min(i, M); j < M; ++j)
        orders[j] = p;
    return orders;
}

std::vector<Integer> stage_orders(const std::vector<Integer>& primes, std::size_t M, std::size_t i)
{
    std::vector<Integer> orders;
    for (const auto& p : primes) {
        auto part = prime_orders(p, M, i);
        orders.insert(orders.end(), part.begin(), part.end());
    }
    orders.insert(orders.end(), primes.begin(), primes.end());
    return orders;
}

enum class Block { AA, AB, BB };

Block block_of(const std::vector<std::uint32_t>& t, std::size_t split)
{
    std::size_t in_a = (t[0] < split) + (t[1] < split);
    return in_a == 2 ? Block::AA : in_a == 1 ? Block::AB : Block::BB;
}

bool respects_blocks(const Homomorphism& f2, std::size_t gens, std::size_t split)
{
    auto basis = exterior_basis(2, gens);
    const IntMatrix& m = f2.matrix();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0 && block_of(basis[r], split) != block_of(basis[c], split))
                return false;
    return true;
}

} // namespace

Presentation theorem1_prime_stage(const Integer& p, std::size_t M, std::size_t i)
{
    return Presentation::diagonal(prime_orders(p, M, i));
}

TowerSpec theorem1_spec(const std::vector<Integer>& primes, std::size_t M)
{
    if (primes.empty())
        throw ConfigError("theorem1 needs at least one prime");
    if (M < 2)
        throw ConfigError("theorem1 truncation must be at least 2");
    for (const auto& p : primes)
        if (p < 2)
            throw ConfigError("theorem1 primes must be at least 2");
    const std::size_t gens = primes.size() * (M + 1);
    TowerSpec t;
    t.name = "theorem1";
    t.stage = [primes, M](std::size_t i) { return Presentation::diagonal(stage_orders(primes, M, i)); };
    // e^j -> e^j on every A'-summand, identity on B
    t.map = [primes, M, gens](std::size_t i) {
        return Homomorphism(Presentation::diagonal(stage_orders(primes, M, i + 1)),
                            Presentation::diagonal(stage_orders(primes, M, i)), IntMatrix::identity(gens));
    };
    t.surjective_claimed = true;
    t.eventually_constant_at = M;
    Presentation top = Presentation::diagonal(stage_orders(primes, M, M));
    t.declared_limit = DeclaredLimit{top, [primes, M, gens, top](std::size_t i) {
                                         return Homomorphism(top, Presentation::diagonal(stage_orders(primes, M, i)),
                                                             IntMatrix::identity(gens));
                                     }};
    return t;
}

TowerWindow theorem1_construction(const std::vector<Integer>& primes, std::size_t M, std::size_t N)
{
    if (N >= M)
        throw ConfigError("theorem1 window must be smaller than the truncation");
    return materialize(theorem1_spec(primes, M), N);
}

bool KunnethSplitReport::pass() const
{
    auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    return !forms_equal.empty() && all(forms_equal) && all(block_diagonal) && all(b_block_iso);
}

KunnethSplitReport kunneth_split_check(const TowerWindow& w, const std::vector<Integer>& primes, std::size_t M)
{
    KunnethSplitReport r;
    const std::size_t split = theorem1_prime_gens(primes, M);
    const Presentation b = Presentation::diagonal(primes);
    const Presentation lambda_b = lambda(2, b);
    for (std::size_t i = 1; i <= w.N; ++i) {
        const Presentation& a = w.stage(i);
        auto orders = *a.diagonal_orders();
        Presentation a_prime = Presentation::diagonal(std::vector<Integer>(orders.begin(), orders.begin() + split));

        CanonicalForm rhs = direct_sum(direct_sum(lambda(2, a_prime).canonical_form(), lambda_b.canonical_form()),
                                       tensor(a_prime, b).canonical_form());
        CanonicalForm h2 = homology(a, 2).degree(2).canonical_form();
        r.forms_equal.push_back(h2 == rhs && lambda(2, a).canonical_form() == rhs);

        bool diagonal = true;
        Homomorphism eta = lambda_induced(2, w.proj.at(i - 1));
        diagonal = diagonal && respects_blocks(eta, a.gens(), split);
        if (i < w.N)
            diagonal = diagonal && respects_blocks(lambda_induced(2, w.map(i)), a.gens(), split);
        r.block_diagonal.push_back(diagonal);

        // Restriction of eta to Lambda^2(B) -> Lambda^2(B).
        auto basis = exterior_basis(2, a.gens());
        std::vector<std::size_t> rows;
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (block_of(basis[k], split) == Block::BB)
                rows.push_back(k);
        IntMatrix sub = eta.matrix().submatrix(rows, rows);
        r.b_block_iso.push_back(Homomorphism(lambda_b, lambda_b, std::move(sub)).is_isomorphism());
    }
    return r;
}

TermPtr tensor_kernel_rewrite(const GroupTerm& t)
{
    if (t.kind != GroupTerm::Kind::KerComparison || t.functor.name != "tensor" || t.functor.arg.size() < 3 ||
        t.functor.arg.compare(0, 2, "Z/") != 0)
        throw ShapeMismatch("expected ker_cmp(tensor(Z/p), T), got " + t.to_string());
    return lim1(t.tower + "|tor(" + t.functor.arg + ")");
}

} // namespace abelim
