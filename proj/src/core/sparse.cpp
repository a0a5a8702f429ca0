#include "abelim/sparse.hpp"

#include <algorithm>

namespace abelim {

void sparse_axpy(SparseColumn& y, const Integer& k, const SparseColumn& x)
{
    if (k == 0 || x.empty())
        return;
    SparseColumn out;
    out.reserve(y.size() + x.size());
    auto a = y.begin();
    auto b = x.begin();
    while (a != y.end() || b != x.end()) {
        if (b == x.end() || (a != y.end() && a->index < b->index)) {
            out.push_back(std::move(*a));
            ++a;
        } else if (a == y.end() || b->index < a->index) {
            out.push_back({b->index, -k * b->value});
            ++b;
        } else {
            Integer v = a->value - k * b->value;
            if (v != 0)
                out.push_back({a->index, std::move(v)});
            ++a;
            ++b;
        }
    }
    y = std::move(out);
}

Integer sparse_at(const SparseColumn& v, std::uint32_t index)
{
    auto it = std::lower_bound(v.begin(), v.end(), index,
                               [](const SparseEntry& e, std::uint32_t i) { return e.index < i; });
    if (it != v.end() && it->index == index)
        return it->value;
    return 0;
}

SparseColumn to_sparse(const IntVector& v)
{
    SparseColumn s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            s.push_back({static_cast<std::uint32_t>(i), v[i]});
    return s;
}

IntVector to_dense(const SparseColumn& v, std::size_t dim)
{
    IntVector d(dim);
    for (const auto& e : v)
        d[e.index] = e.value;
    return d;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m)
{
    SparseMatrix s;
    s.rows = m.rows();
    s.columns.resize(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m(r, c) != 0)
                s.columns[c].push_back({static_cast<std::uint32_t>(r), m(r, c)});
    return s;
}

IntMatrix SparseMatrix::to_dense() const
{
    IntMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& e : columns[c])
            m(e.index, c) = e.value;
    return m;
}

} // namespace abelim
