#include "abelim/presentation.hpp"

#include "abelim/errors.hpp"
#include "abelim/lattice.hpp"
#include "abelim/smith.hpp"

#include <mutex>
#include <sstream>

namespace abelim {

Integer CanonicalForm::torsion_order() const
{
    Integer n = 1;
    for (const auto& d : invariant_factors)
        n *= d;
    return n;
}

std::string CanonicalForm::to_string() const
{
    if (is_trivial())
        return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1)
            os << '^' << free_rank;
        first = false;
    }
    for (std::size_t i = 0; i < invariant_factors.size();) {
        std::size_t j = i;
        while (j < invariant_factors.size() && invariant_factors[j] == invariant_factors[i])
            ++j;
        os << (first ? "" : " + ") << "Z/" << invariant_factors[i];
        if (j - i > 1)
            os << '^' << (j - i);
        first = false;
        i = j;
    }
    return os.str();
}

CanonicalForm direct_sum(const CanonicalForm& a, const CanonicalForm& b)
{
    std::vector<Integer> all = a.invariant_factors;
    all.insert(all.end(), b.invariant_factors.begin(), b.invariant_factors.end());
    CanonicalForm cf;
    cf.free_rank = a.free_rank + b.free_rank;
    for (auto& d : divisibility_chain(std::move(all)))
        if (d != 1)
            cf.invariant_factors.push_back(std::move(d));
    return cf;
}

struct Presentation::State {
    std::size_t gens = 0;
    IntMatrix relations;

    mutable std::once_flag canon_once;
    mutable CanonicalForm canon;
    mutable std::once_flag lattice_once;
    mutable std::unique_ptr<Lattice> lattice;
};

Presentation::Presentation() : Presentation(0, IntMatrix(0, 0)) {}

Presentation::Presentation(std::size_t gens, IntMatrix relations)
{
    if (relations.rows() != gens && !(relations.cols() == 0))
        throw std::invalid_argument("Presentation: relation matrix must have one row per generator");
    auto s = std::make_shared<State>();
    s->gens = gens;
    s->relations = relations.cols() == 0 ? IntMatrix(gens, 0) : std::move(relations);
    state_ = std::move(s);
}

Presentation Presentation::free(std::size_t rank) { return Presentation(rank, IntMatrix(rank, 0)); }

Presentation Presentation::cyclic(const Integer& m) { return diagonal({m}); }

Presentation Presentation::diagonal(const std::vector<Integer>& orders)
{
    std::size_t k = 0;
    for (const auto& d : orders)
        if (d != 0)
            ++k;
    IntMatrix rel(orders.size(), k);
    std::size_t c = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] != 0)
            rel(i, c++) = abs(orders[i]);
    return Presentation(orders.size(), std::move(rel));
}

Presentation Presentation::from_canonical(const CanonicalForm& cf)
{
    std::vector<Integer> orders(cf.free_rank, Integer(0));
    orders.insert(orders.end(), cf.invariant_factors.begin(), cf.invariant_factors.end());
    return diagonal(orders);
}

std::size_t Presentation::gens() const { return state_->gens; }

const IntMatrix& Presentation::relations() const { return state_->relations; }

const CanonicalForm& Presentation::canonical_form() const
{
    std::call_once(state_->canon_once, [s = state_.get()] {
        auto ed = elementary_divisors(SparseMatrix::from_dense(s->relations));
        CanonicalForm cf;
        cf.free_rank = s->gens - ed.size();
        for (auto& d : ed)
            if (d != 1)
                cf.invariant_factors.push_back(std::move(d));
        s->canon = std::move(cf);
    });
    return state_->canon;
}

const Lattice& Presentation::relation_lattice() const
{
    std::call_once(state_->lattice_once, [s = state_.get()] {
        s->lattice = std::make_unique<Lattice>(s->gens, s->relations, false);
    });
    return *state_->lattice;
}

std::optional<std::vector<Integer>> Presentation::diagonal_orders() const
{
    const auto& r = relations();
    std::vector<Integer> orders(gens(), Integer(0));
    std::vector<bool> seen(gens(), false);
    for (std::size_t c = 0; c < r.cols(); ++c) {
        std::size_t hit = gens();
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (r(i, c) == 0)
                continue;
            if (hit != gens())
                return std::nullopt;
            hit = i;
        }
        if (hit == gens())
            continue;
        if (seen[hit])
            return std::nullopt;
        seen[hit] = true;
        orders[hit] = abs(r(hit, c));
    }
    return orders;
}

bool Element::equals(const Element& other) const
{
    if (coords.size() != other.coords.size() || owner.gens() != coords.size())
        throw std::invalid_argument("Element::equals: elements of different groups");
    IntVector diff(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        diff[i] = coords[i] - other.coords[i];
    return owner.relation_lattice().contains(diff);
}

bool Element::is_zero() const { return owner.relation_lattice().contains(coords); }

} // namespace abelim
