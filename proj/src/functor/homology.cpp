#include "abelim/functors.hpp"

#include "abelim/errors.hpp"
#include "abelim/smith.hpp"

#include <algorithm>

namespace abelim {

namespace {

// Cyclic orders of the canonical decomposition, 0 for Z.
std::vector<Integer> cyclics(const CanonicalForm& cf)
{
    std::vector<Integer> out(cf.free_rank, Integer(0));
    out.insert(out.end(), cf.invariant_factors.begin(), cf.invariant_factors.end());
    return out;
}

CanonicalForm from_cyclics(const std::vector<Integer>& c)
{
    CanonicalForm cf;
    std::vector<Integer> torsion;
    for (const auto& x : c) {
        if (x == 0)
            ++cf.free_rank;
        else if (x != 1)
            torsion.push_back(x);
    }
    for (auto& d : divisibility_chain(std::move(torsion)))
        if (d != 1)
            cf.invariant_factors.push_back(std::move(d));
    return cf;
}

std::vector<Integer> orders_of(const Presentation& a)
{
    if (auto d = a.diagonal_orders())
        return *d;
    return cyclics(a.canonical_form());
}

struct L1Layout {
    std::vector<std::size_t> torsion;                        // generator indices with nonzero order
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // i < j from `torsion`
    std::vector<Presentation> blocks;                        // L blocks then Tor blocks
};

L1Layout l1_layout(const std::vector<Integer>& orders)
{
    L1Layout lay;
    for (std::size_t i = 0; i < orders.size(); ++i)
        if (orders[i] != 0)
            lay.torsion.push_back(i);
    for (std::size_t i : lay.torsion)
        lay.blocks.push_back(Presentation::cyclic(orders[i]));
    for (std::size_t x = 0; x < lay.torsion.size(); ++x)
        for (std::size_t y = x + 1; y < lay.torsion.size(); ++y) {
            std::size_t i = lay.torsion[x], j = lay.torsion[y];
            lay.pairs.emplace_back(i, j);
            lay.blocks.push_back(tor(Presentation::cyclic(orders[i]), Presentation::cyclic(orders[j])));
        }
    return lay;
}

Presentation sum_of(const std::vector<Presentation>& blocks)
{
    if (blocks.empty())
        return Presentation();
    return direct_sum(blocks).sum;
}

std::vector<std::size_t> offsets(const std::vector<Presentation>& blocks)
{
    std::vector<std::size_t> off(blocks.size() + 1, 0);
    for (std::size_t k = 0; k < blocks.size(); ++k)
        off[k + 1] = off[k] + blocks[k].gens();
    return off;
}

Integer mod_order(const Integer& x, const Integer& order)
{
    if (order == 0)
        return x;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), order.get_mpz_t());
    return r;
}

enum class H3Model { Diagonal, TorsionFree, ObjectOnly };

H3Model model_for(std::size_t n, const Presentation& a)
{
    if (n == 3 && a.diagonal_orders())
        return H3Model::Diagonal;
    if (a.is_torsion_free())
        return H3Model::TorsionFree;
    return H3Model::ObjectOnly;
}

} // namespace

CanonicalForm cf_tensor(const CanonicalForm& a, const CanonicalForm& b)
{
    std::vector<Integer> out;
    for (const auto& x : cyclics(a))
        for (const auto& y : cyclics(b))
            out.push_back(gcd(x, y));
    return from_cyclics(out);
}

CanonicalForm cf_tor(const CanonicalForm& a, const CanonicalForm& b)
{
    std::vector<Integer> out;
    for (const auto& x : a.invariant_factors)
        for (const auto& y : b.invariant_factors)
            out.push_back(gcd(x, y));
    return from_cyclics(out);
}

Presentation l1lambda2(const Presentation& a) { return sum_of(l1_layout(orders_of(a)).blocks); }

Homomorphism l1lambda2_induced(const Homomorphism& f)
{
    auto so = f.source().diagonal_orders();
    auto to = f.target().diagonal_orders();
    if (!so || !to)
        throw UnsupportedInducedMap("L1Λ² induced maps need diagonal presentations");
    L1Layout src = l1_layout(*so);
    L1Layout tgt = l1_layout(*to);

    // Each active torsion generator i goes to a_i times generator sigma_i.
    const std::size_t none = f.target().gens();
    std::vector<std::size_t> sigma(f.source().gens(), none);
    std::vector<Integer> coef(f.source().gens());
    std::size_t last = none;
    for (std::size_t i : src.torsion) {
        for (std::size_t r = 0; r < f.target().gens(); ++r) {
            Integer v = mod_order(f.matrix()(r, i), (*to)[r]);
            if (v == 0)
                continue;
            if (sigma[i] != none)
                throw UnsupportedInducedMap("L1Λ² induced map: generator image spans several summands");
            sigma[i] = r;
            coef[i] = v;
        }
        if (sigma[i] == none)
            continue;
        if ((*to)[sigma[i]] == 0)
            throw NotWellDefined("torsion generator mapped to a free generator");
        if (last != none && sigma[i] <= last)
            throw UnsupportedInducedMap("L1Λ² induced map: summands not mapped in order");
        last = sigma[i];
    }

    auto soff = offsets(src.blocks);
    auto toff = offsets(tgt.blocks);
    auto tpos = [&](std::size_t r) {
        return static_cast<std::size_t>(std::find(tgt.torsion.begin(), tgt.torsion.end(), r) - tgt.torsion.begin());
    };
    IntMatrix m(toff.back(), soff.back());
    for (std::size_t x = 0; x < src.torsion.size(); ++x) {
        std::size_t i = src.torsion[x];
        if (sigma[i] == none)
            continue;
        // Z/m -> Z/n, 1 -> a acts on L1Λ²(Z/m) = H3(Z/m) by a * (a m / n).
        const Integer& mo = (*so)[i];
        const Integer& no = (*to)[sigma[i]];
        m(toff[tpos(sigma[i])], soff[x]) = mod_order(coef[i] * (coef[i] * mo / no), no);
    }
    const std::size_t tl = tgt.torsion.size();
    for (std::size_t k = 0; k < src.pairs.size(); ++k) {
        auto [i, j] = src.pairs[k];
        if (sigma[i] == none || sigma[j] == none)
            continue;
        auto it = std::find(tgt.pairs.begin(), tgt.pairs.end(), std::make_pair(sigma[i], sigma[j]));
        std::size_t tk = tl + static_cast<std::size_t>(it - tgt.pairs.begin());
        auto cyclic_map = [&](std::size_t g) {
            IntMatrix one(1, 1);
            one(0, 0) = coef[g];
            return Homomorphism(Presentation::cyclic((*so)[g]), Presentation::cyclic((*to)[sigma[g]]), one);
        };
        Homomorphism block = tor_induced(cyclic_map(i), cyclic_map(j));
        const IntMatrix& bm = block.matrix();
        std::size_t sk = src.torsion.size() + k;
        for (std::size_t r = 0; r < bm.rows(); ++r)
            for (std::size_t c = 0; c < bm.cols(); ++c)
                m(toff[tk] + r, soff[sk] + c) = bm(r, c);
    }
    return Homomorphism(sum_of(src.blocks), sum_of(tgt.blocks), std::move(m));
}

GradedGroup homology(const Presentation& a, std::size_t n)
{
    std::vector<CanonicalForm> h(n + 1);
    h[0].free_rank = 1;
    for (const auto& c : cyclics(a.canonical_form())) {
        std::vector<CanonicalForm> hc(n + 1);
        hc[0].free_rank = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            if (c == 0 && k == 1)
                hc[k].free_rank = 1;
            else if (c != 0 && k % 2 == 1)
                hc[k].invariant_factors.push_back(c);
        }
        std::vector<CanonicalForm> next(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t i = 0; i <= k; ++i)
                next[k] = direct_sum(next[k], cf_tensor(h[i], hc[k - i]));
            for (std::size_t i = 0; k >= 1 && i <= k - 1; ++i)
                next[k] = direct_sum(next[k], cf_tor(h[i], hc[k - 1 - i]));
        }
        h = std::move(next);
    }
    GradedGroup g;
    for (const auto& cf : h)
        g.components.push_back(Presentation::from_canonical(cf));
    return g;
}

bool homology_has_induced(std::size_t n, const Presentation& a)
{
    return n <= 2 || model_for(n, a) != H3Model::ObjectOnly;
}

Presentation homology_group(const Presentation& a, std::size_t n)
{
    if (n == 0)
        return Presentation::free(1);
    if (n == 1)
        return a;
    if (n == 2)
        return lambda(2, a);
    switch (model_for(n, a)) {
    case H3Model::Diagonal:
        return direct_sum(lambda(3, a), l1lambda2(a)).sum;
    case H3Model::TorsionFree:
        return lambda(n, a);
    case H3Model::ObjectOnly:
        break;
    }
    return homology(a, n).degree(n);
}

Homomorphism homology_induced(std::size_t n, const Homomorphism& f)
{
    if (n == 0)
        return Homomorphism::identity(Presentation::free(1));
    if (n == 1)
        return f;
    if (n == 2)
        return lambda_induced(2, f);
    H3Model sm = model_for(n, f.source());
    H3Model tm = model_for(n, f.target());
    if (sm == H3Model::ObjectOnly || tm == H3Model::ObjectOnly)
        throw UnsupportedInducedMap("H" + std::to_string(n) + " induced maps need torsion-free or diagonal (n = 3) groups");
    Homomorphism lam = lambda_induced(n, f);
    Presentation src = homology_group(f.source(), n);
    Presentation tgt = homology_group(f.target(), n);
    IntMatrix m(tgt.gens(), src.gens());
    const IntMatrix& lm = lam.matrix();
    for (std::size_t r = 0; r < lm.rows(); ++r)
        for (std::size_t c = 0; c < lm.cols(); ++c)
            m(r, c) = lm(r, c);
    if (sm == H3Model::Diagonal && tm == H3Model::Diagonal) {
        IntMatrix l1 = l1lambda2_induced(f).matrix();
        for (std::size_t r = 0; r < l1.rows(); ++r)
            for (std::size_t c = 0; c < l1.cols(); ++c)
                m(lm.rows() + r, lm.cols() + c) = l1(r, c);
    }
    return Homomorphism(std::move(src), std::move(tgt), std::move(m));
}

BreenReport breen_check(const Presentation& a)
{
    BreenReport rep;
    rep.h3 = homology(a, 3).degree(3).canonical_form();
    rep.lambda3 = lambda(3, a).canonical_form();
    rep.l1lambda2 = l1lambda2(a).canonical_form();
    rep.order_consistent = rep.h3.free_rank == rep.lambda3.free_rank + rep.l1lambda2.free_rank &&
                           rep.h3.torsion_order() == rep.lambda3.torsion_order() * rep.l1lambda2.torsion_order();
    if (!rep.order_consistent)
        throw InconsistentOrders("H3 " + rep.h3.to_string() + " is not an extension of " + rep.l1lambda2.to_string() +
                                 " by " + rep.lambda3.to_string());
    rep.split_equal = rep.h3 == direct_sum(rep.lambda3, rep.l1lambda2);
    return rep;
}

std::vector<Integer> primary_parts(const CanonicalForm& cf)
{
    std::vector<Integer> out;
    for (Integer d : cf.invariant_factors) {
        for (Integer p = 2; p * p <= d; ++p) {
            if (!divides(p, d))
                continue;
            Integer q = 1;
            while (divides(p, d)) {
                d /= p;
                q *= p;
            }
            out.push_back(q);
        }
        if (d > 1)
            out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

OddSummandReport odd_summand_check(const Presentation& a)
{
    auto odd = [](std::vector<Integer> v) {
        std::erase_if(v, [](const Integer& q) { return divides(2, q); });
        return v;
    };
    OddSummandReport rep;
    rep.l1_odd = odd(primary_parts(l1lambda2(a).canonical_form()));
    rep.tor_odd = odd(primary_parts(tor(a, a).canonical_form()));
    rep.holds = std::includes(rep.tor_odd.begin(), rep.tor_odd.end(), rep.l1_odd.begin(), rep.l1_odd.end());
    return rep;
}

} // namespace abelim
