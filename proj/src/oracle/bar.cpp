#include "abelim/bar.hpp"

#include "abelim/errors.hpp"
#include "abelim/smith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace abelim {

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<std::uint32_t>> table, std::uint32_t zero)
    : table_(std::move(table)), zero_(zero)
{
    const std::size_t n = table_.size();
    if (n == 0 || zero_ >= n)
        throw std::invalid_argument("group table: empty or bad zero");
    for (const auto& row : table_) {
        if (row.size() != n)
            throw std::invalid_argument("group table: not square");
        for (auto x : row)
            if (x >= n)
                throw std::invalid_argument("group table: entry out of range");
    }
    for (std::uint32_t a = 0; a < n; ++a) {
        if (table_[zero_][a] != a)
            throw std::invalid_argument("group table: zero is not an identity");
        bool has_inverse = false;
        for (std::uint32_t b = 0; b < n; ++b) {
            if (table_[a][b] != table_[b][a])
                throw std::invalid_argument("group table: not commutative");
            has_inverse = has_inverse || table_[a][b] == zero_;
            for (std::uint32_t c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw std::invalid_argument("group table: not associative");
        }
        if (!has_inverse)
            throw std::invalid_argument("group table: missing inverse");
    }
}

FiniteGroupTable FiniteGroupTable::from_presentation(const Presentation& a)
{
    const auto& cf = a.canonical_form();
    if (!cf.is_finite())
        throw std::invalid_argument("bar oracle needs a finite group");
    std::vector<std::uint32_t> radix;
    std::uint64_t n = 1;
    for (const auto& d : cf.invariant_factors) {
        radix.push_back(static_cast<std::uint32_t>(d.get_ui()));
        n *= radix.back();
        if (n > (1u << 16))
            throw BudgetExceeded("group too large for an addition table");
    }
    std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y) {
            std::uint32_t xs = x, ys = y, out = 0, place = 1;
            for (auto r : radix) {
                out += ((xs % r + ys % r) % r) * place;
                xs /= r;
                ys /= r;
                place *= r;
            }
            table[x][y] = out;
        }
    return FiniteGroupTable(std::move(table), 0);
}

namespace {

struct TupleCoder {
    std::vector<std::uint32_t> to_pos;   // element -> position among nonzero elements
    std::vector<std::uint32_t> from_pos; // inverse
    std::uint64_t base = 0;

    explicit TupleCoder(const FiniteGroupTable& g)
    {
        to_pos.assign(g.order(), UINT32_MAX);
        for (std::uint32_t x = 0; x < g.order(); ++x)
            if (x != g.zero()) {
                to_pos[x] = static_cast<std::uint32_t>(from_pos.size());
                from_pos.push_back(x);
            }
        base = from_pos.size();
    }

    std::uint64_t count(std::size_t k) const
    {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < k; ++i)
            c *= base;
        return c;
    }

    void decode(std::uint64_t idx, std::vector<std::uint32_t>& t) const
    {
        for (auto& x : t) {
            x = from_pos[idx % base];
            idx /= base;
        }
    }

    // Returns false when the tuple has a zero entry.
    bool encode(const std::vector<std::uint32_t>& t, std::uint64_t& idx) const
    {
        idx = 0;
        std::uint64_t place = 1;
        for (auto x : t) {
            if (to_pos[x] == UINT32_MAX)
                return false;
            idx += to_pos[x] * place;
            place *= base;
        }
        return true;
    }
};

SparseColumn apply_sparse(const SparseMatrix& d, const SparseColumn& v)
{
    std::map<std::uint32_t, Integer> acc;
    for (const auto& e : v)
        for (const auto& f : d.columns[e.index])
            acc[f.index] += e.value * f.value;
    SparseColumn out;
    for (auto& [i, x] : acc)
        if (x != 0)
            out.push_back({i, x});
    return out;
}

} // namespace

SparseMatrix bar_differential(const FiniteGroupTable& g, std::size_t k)
{
    TupleCoder coder(g);
    SparseMatrix d;
    d.rows = k == 0 ? 0 : coder.count(k - 1);
    if (k == 0)
        return d;
    const std::uint64_t ncols = coder.count(k);
    d.columns.resize(ncols);
    std::vector<std::uint32_t> t(k), face;
    std::map<std::uint32_t, Integer> acc;
    for (std::uint64_t c = 0; c < ncols; ++c) {
        coder.decode(c, t);
        acc.clear();
        auto add_face = [&](int sign) {
            std::uint64_t idx = 0;
            if (coder.encode(face, idx))
                acc[static_cast<std::uint32_t>(idx)] += sign;
        };
        face.assign(t.begin() + 1, t.end());
        add_face(1);
        for (std::size_t i = 0; i + 1 < k; ++i) {
            face.clear();
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i + 1)
                    continue;
                face.push_back(j == i ? g.add(t[i], t[i + 1]) : t[j]);
            }
            add_face((i + 1) % 2 ? -1 : 1);
        }
        face.assign(t.begin(), t.end() - 1);
        add_face(k % 2 ? -1 : 1);
        for (auto& [i, x] : acc)
            if (x != 0)
                d.columns[c].push_back({i, x});
    }
    return d;
}

CanonicalForm bar_homology(const FiniteGroupTable& g, std::size_t n, const BarOptions& opts)
{
    std::uint64_t need = 1;
    for (std::size_t i = 0; i <= n; ++i) {
        need *= g.order();
        if (need > opts.budget)
            throw BudgetExceeded("bar complex for degree " + std::to_string(n) + " needs more than " +
                                 std::to_string(opts.budget) + " generators");
    }
    TupleCoder coder(g);
    SparseMatrix dn = bar_differential(g, n);
    SparseMatrix dn1 = bar_differential(g, n + 1);
    if (opts.check_square_zero && n >= 1) {
        for (const auto& col : dn1.columns)
            if (!apply_sparse(dn, col).empty())
                throw InconsistentOrders("bar differential does not square to zero");
    }
    std::size_t rank_n = n == 0 ? 0 : elementary_divisors(dn).size();
    auto ed = elementary_divisors(dn1);
    CanonicalForm cf;
    cf.free_rank = coder.count(n) - rank_n - ed.size();
    for (auto& d : ed)
        if (d != 1)
            cf.invariant_factors.push_back(std::move(d));
    return cf;
}

} // namespace abelim
