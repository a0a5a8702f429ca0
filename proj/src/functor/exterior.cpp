#include "abelim/functors.hpp"

#include "abelim/sparse.hpp"

#include <algorithm>
#include <map>

namespace abelim {

namespace {

using Tuple = std::vector<std::uint32_t>;
using Multivector = std::map<Tuple, Integer>;

// Inserts i into sorted t; returns false if already present. `before` counts
// entries smaller than i.
bool insert_sorted(Tuple& t, std::uint32_t i, std::size_t& before)
{
    auto it = std::lower_bound(t.begin(), t.end(), i);
    if (it != t.end() && *it == i)
        return false;
    before = static_cast<std::size_t>(it - t.begin());
    t.insert(it, i);
    return true;
}

// mv ∧ v
Multivector wedge_right(const Multivector& mv, const SparseColumn& v)
{
    Multivector out;
    for (const auto& [t, c] : mv)
        for (const auto& e : v) {
            Tuple u = t;
            std::size_t before = 0;
            if (!insert_sorted(u, e.index, before))
                continue;
            // e_i moves left past the entries of t larger than i
            bool odd = ((t.size() - before) % 2) == 1;
            Integer term = c * e.value;
            if (odd)
                term = -term;
            out[u] += term;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

std::map<Tuple, std::size_t> index_of(const std::vector<Tuple>& basis)
{
    std::map<Tuple, std::size_t> idx;
    for (std::size_t k = 0; k < basis.size(); ++k)
        idx.emplace(basis[k], k);
    return idx;
}

SparseColumn sparse_column(const IntMatrix& m, std::size_t c)
{
    SparseColumn v;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (m(r, c) != 0)
            v.push_back({static_cast<std::uint32_t>(r), m(r, c)});
    return v;
}

} // namespace

std::vector<std::vector<std::uint32_t>> exterior_basis(std::size_t n, std::size_t gens)
{
    std::vector<Tuple> out;
    if (n > gens)
        return out;
    Tuple t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = static_cast<std::uint32_t>(k);
    for (;;) {
        out.push_back(t);
        std::size_t k = n;
        while (k > 0 && t[k - 1] == gens - n + k - 1)
            --k;
        if (k == 0)
            break;
        ++t[k - 1];
        for (std::size_t j = k; j < n; ++j)
            t[j] = t[j - 1] + 1;
    }
    return out;
}

Presentation lambda(std::size_t n, const Presentation& a)
{
    const std::size_t l = a.gens();
    auto basis = exterior_basis(n, l);
    if (basis.empty())
        return Presentation();
    if (auto orders = a.diagonal_orders()) {
        // d_i e_i ∧ e_T spans gcd{d_i : i in U} e_U for each tuple U.
        std::vector<SparseColumn> cols;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            Integer g = 0;
            for (std::uint32_t i : basis[k])
                g = gcd(g, (*orders)[i]);
            if (g != 0)
                cols.push_back({{static_cast<std::uint32_t>(k), g}});
        }
        SparseMatrix sm{basis.size(), std::move(cols)};
        return Presentation(basis.size(), sm.to_dense());
    }
    auto idx = index_of(basis);
    auto lower = exterior_basis(n - 1, l);

    // r ∧ e_T for every relation r and every (n-1)-tuple T.
    std::vector<SparseColumn> cols;
    const IntMatrix& rel = a.relations();
    for (std::size_t c = 0; c < rel.cols(); ++c) {
        SparseColumn r = sparse_column(rel, c);
        for (const auto& t : lower) {
            Multivector mv;
            for (const auto& e : r) {
                Tuple u = t;
                std::size_t before = 0;
                if (!insert_sorted(u, e.index, before))
                    continue;
                mv[u] += (before % 2) ? Integer(-e.value) : e.value;
            }
            SparseColumn col;
            for (const auto& [u, v] : mv)
                if (v != 0)
                    col.push_back({static_cast<std::uint32_t>(idx.at(u)), v});
            if (col.empty())
                continue;
            std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.index < y.index; });
            cols.push_back(std::move(col));
        }
    }
    std::sort(cols.begin(), cols.end(), [](const SparseColumn& x, const SparseColumn& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const auto& p, const auto& q) {
            return p.index != q.index ? p.index < q.index : p.value < q.value;
        });
    });
    cols.erase(std::unique(cols.begin(), cols.end(),
                           [](const SparseColumn& x, const SparseColumn& y) {
                               return x.size() == y.size() &&
                                      std::equal(x.begin(), x.end(), y.begin(), [](const auto& p, const auto& q) {
                                          return p.index == q.index && p.value == q.value;
                                      });
                           }),
               cols.end());
    SparseMatrix sm{basis.size(), std::move(cols)};
    return Presentation(basis.size(), sm.to_dense());
}

Homomorphism lambda_induced(std::size_t n, const Homomorphism& f)
{
    Presentation src = lambda(n, f.source());
    Presentation tgt = lambda(n, f.target());
    auto sbasis = exterior_basis(n, f.source().gens());
    auto tidx = index_of(exterior_basis(n, f.target().gens()));
    std::vector<SparseColumn> images(f.source().gens());
    for (std::size_t c = 0; c < images.size(); ++c)
        images[c] = sparse_column(f.matrix(), c);

    IntMatrix m(tgt.gens(), src.gens());
    for (std::size_t s = 0; s < sbasis.size(); ++s) {
        Multivector mv{{Tuple{}, Integer(1)}};
        for (std::uint32_t g : sbasis[s]) {
            mv = wedge_right(mv, images[g]);
            if (mv.empty())
                break;
        }
        for (const auto& [u, v] : mv)
            m(tidx.at(u), s) = v;
    }
    return Homomorphism(std::move(src), std::move(tgt), std::move(m));
}

Presentation h2_group(const Presentation& a) { return lambda(2, a); }

Homomorphism h2_induced(const Homomorphism& f) { return lambda_induced(2, f); }

} // namespace abelim
