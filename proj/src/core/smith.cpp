#include "abelim/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>

namespace abelim {

namespace {

// Dense Smith reduction. With Track, row operations are mirrored on U and
// column operations on V.
template <bool Track>
class DenseSmith {
public:
    explicit DenseSmith(IntMatrix a) : a_(std::move(a))
    {
        if constexpr (Track) {
            u_ = IntMatrix::identity(a_.rows());
            v_ = IntMatrix::identity(a_.cols());
        }
    }

    void run()
    {
        const std::size_t m = a_.rows(), n = a_.cols();
        for (std::size_t t = 0; t < std::min(m, n); ++t) {
            if (!move_min_to(t, t, t))
                break;
            for (;;) {
                clear_column(t);
                clear_row(t);
                if (!row_or_column_dirty(t)) {
                    std::size_t bad_row = 0;
                    if (!find_indivisible(t, bad_row))
                        break;
                    add_row(t, bad_row, 1);
                }
                move_min_to(t, t, t, /*cross_only=*/true);
            }
            if (a_(t, t) < 0)
                negate_row(t);
        }
    }

    IntMatrix& a() { return a_; }
    IntMatrix& u() { return u_; }
    IntMatrix& v() { return v_; }

private:
    // Moves the smallest nonzero entry of the trailing block (or, with
    // cross_only, of row t / column t) to position (t, t).
    bool move_min_to(std::size_t t, std::size_t r0, std::size_t c0, bool cross_only = false)
    {
        const std::size_t m = a_.rows(), n = a_.cols();
        std::size_t bi = m, bj = n;
        Integer best;
        auto consider = [&](std::size_t i, std::size_t j) {
            const Integer& x = a_(i, j);
            if (x == 0)
                return;
            if (bi == m || cmpabs(x, best) < 0) {
                best = x;
                bi = i;
                bj = j;
            }
        };
        if (cross_only) {
            for (std::size_t i = t; i < m; ++i)
                consider(i, t);
            for (std::size_t j = t + 1; j < n; ++j)
                consider(t, j);
        } else {
            for (std::size_t i = r0; i < m; ++i)
                for (std::size_t j = c0; j < n; ++j)
                    consider(i, j);
        }
        if (bi == m)
            return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    void clear_column(std::size_t t)
    {
        for (std::size_t i = t + 1; i < a_.rows(); ++i)
            if (a_(i, t) != 0) {
                Integer q = round_div(a_(i, t), a_(t, t));
                add_row(i, t, -q);
            }
    }

    void clear_row(std::size_t t)
    {
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
            if (a_(t, j) != 0) {
                Integer q = round_div(a_(t, j), a_(t, t));
                add_col(j, t, -q);
            }
    }

    bool row_or_column_dirty(std::size_t t) const
    {
        for (std::size_t i = t + 1; i < a_.rows(); ++i)
            if (a_(i, t) != 0)
                return true;
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
            if (a_(t, j) != 0)
                return true;
        return false;
    }

    bool find_indivisible(std::size_t t, std::size_t& row) const
    {
        for (std::size_t i = t + 1; i < a_.rows(); ++i)
            for (std::size_t j = t + 1; j < a_.cols(); ++j)
                if (!divides(a_(t, t), a_(i, j))) {
                    row = i;
                    return true;
                }
        return false;
    }

    // row_dst += k * row_src
    void add_row(std::size_t dst, std::size_t src, const Integer& k)
    {
        for (std::size_t j = 0; j < a_.cols(); ++j)
            if (a_(src, j) != 0)
                a_(dst, j) += k * a_(src, j);
        if constexpr (Track)
            for (std::size_t j = 0; j < u_.cols(); ++j)
                if (u_(src, j) != 0)
                    u_(dst, j) += k * u_(src, j);
    }

    void add_col(std::size_t dst, std::size_t src, const Integer& k)
    {
        for (std::size_t i = 0; i < a_.rows(); ++i)
            if (a_(i, src) != 0)
                a_(i, dst) += k * a_(i, src);
        if constexpr (Track)
            for (std::size_t i = 0; i < v_.rows(); ++i)
                if (v_(i, src) != 0)
                    v_(i, dst) += k * v_(i, src);
    }

    void swap_rows(std::size_t x, std::size_t y)
    {
        if (x == y)
            return;
        for (std::size_t j = 0; j < a_.cols(); ++j)
            std::swap(a_(x, j), a_(y, j));
        if constexpr (Track)
            for (std::size_t j = 0; j < u_.cols(); ++j)
                std::swap(u_(x, j), u_(y, j));
    }

    void swap_cols(std::size_t x, std::size_t y)
    {
        if (x == y)
            return;
        for (std::size_t i = 0; i < a_.rows(); ++i)
            std::swap(a_(i, x), a_(i, y));
        if constexpr (Track)
            for (std::size_t i = 0; i < v_.rows(); ++i)
                std::swap(v_(i, x), v_(i, y));
    }

    void negate_row(std::size_t t)
    {
        for (std::size_t j = 0; j < a_.cols(); ++j)
            a_(t, j) = -a_(t, j);
        if constexpr (Track)
            for (std::size_t j = 0; j < u_.cols(); ++j)
                u_(t, j) = -u_(t, j);
    }

    IntMatrix a_, u_, v_;
};

std::vector<Integer> dense_diagonal(IntMatrix block)
{
    DenseSmith<false> s(std::move(block));
    s.run();
    std::vector<Integer> d;
    const auto& a = s.a();
    for (std::size_t t = 0; t < std::min(a.rows(), a.cols()); ++t)
        if (a(t, t) != 0)
            d.push_back(a(t, t));
    return d;
}

struct DisjointSets {
    std::vector<std::uint32_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

bool is_unit(const Integer& x) { return x == 1 || x == -1; }

} // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    DenseSmith<true> s(m);
    s.run();
    return {std::move(s.u()), std::move(s.a()), std::move(s.v())};
}

std::vector<Integer> divisibility_chain(std::vector<Integer> diag)
{
    for (auto& x : diag)
        x = abs(x);
    std::erase_if(diag, [](const Integer& x) { return x == 0; });
    std::sort(diag.begin(), diag.end());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        if (diag[i] == 1)
            continue;
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            if (divides(diag[i], diag[j]))
                continue;
            Integer g = gcd(diag[i], diag[j]);
            Integer l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

std::vector<Integer> elementary_divisors(const IntMatrix& m)
{
    return elementary_divisors(SparseMatrix::from_dense(m));
}

std::vector<Integer> elementary_divisors(const SparseMatrix& m)
{
    const std::size_t nrows = m.rows;
    // Unit-pivot elimination. Pivot t owns row pivot_row[t]; its column has
    // no entries in rows owned by earlier pivots.
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> pivot_of_row(nrows, kNone);
    std::vector<std::uint32_t> pivot_row;
    std::vector<SparseColumn> pivot_col;
    std::vector<SparseColumn> residual;

    std::vector<Integer> work(nrows);
    std::vector<char> touched(nrows, 0);
    std::vector<std::uint32_t> touched_list;

    auto reduce = [&](const SparseColumn& col) {
        using Item = std::uint32_t; // pivot time
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        touched_list.clear();
        auto touch = [&](std::uint32_t r) {
            if (!touched[r]) {
                touched[r] = 1;
                touched_list.push_back(r);
            }
        };
        for (const auto& e : col) {
            work[e.index] = e.value;
            touch(e.index);
            if (pivot_of_row[e.index] != kNone)
                heap.push(pivot_of_row[e.index]);
        }
        while (!heap.empty()) {
            std::uint32_t t = heap.top();
            heap.pop();
            std::uint32_t r = pivot_row[t];
            if (work[r] == 0)
                continue;
            const SparseColumn& p = pivot_col[t];
            // p has value +-1 at row r
            Integer coeff = work[r] * sparse_at(p, r);
            for (const auto& e : p) {
                touch(e.index);
                bool was_zero = work[e.index] == 0;
                work[e.index] -= coeff * e.value;
                if (was_zero && work[e.index] != 0 && pivot_of_row[e.index] != kNone &&
                    pivot_of_row[e.index] > t)
                    heap.push(pivot_of_row[e.index]);
            }
        }
        std::sort(touched_list.begin(), touched_list.end());
        SparseColumn out;
        for (std::uint32_t r : touched_list) {
            if (work[r] != 0)
                out.push_back({r, work[r]});
            work[r] = 0;
            touched[r] = 0;
        }
        return out;
    };

    for (const auto& col : m.columns) {
        SparseColumn v = reduce(col);
        if (v.empty())
            continue;
        // Choose a unit entry, if any, as new pivot.
        std::uint32_t chosen = kNone;
        for (const auto& e : v)
            if (is_unit(e.value)) {
                chosen = e.index;
                break;
            }
        if (chosen == kNone) {
            residual.push_back(std::move(v));
            continue;
        }
        pivot_of_row[chosen] = static_cast<std::uint32_t>(pivot_row.size());
        pivot_row.push_back(chosen);
        pivot_col.push_back(std::move(v));
    }

    std::vector<Integer> diag(pivot_row.size(), Integer(1));

    // Residual columns may carry entries in rows that became pivots later.
    std::vector<SparseColumn> rest;
    for (const auto& col : residual) {
        SparseColumn v = reduce(col);
        if (!v.empty())
            rest.push_back(std::move(v));
    }
    if (!rest.empty()) {
        if (rest.size() < m.columns.size()) {
            // Unit pivots may reappear in the residual; recurse on it.
            SparseMatrix sub;
            sub.rows = nrows;
            sub.columns = std::move(rest);
            auto more = elementary_divisors(sub);
            diag.insert(diag.end(), more.begin(), more.end());
        } else {
            // Block decomposition over rows connected through columns.
            DisjointSets sets(nrows);
            for (const auto& col : rest)
                for (std::size_t k = 1; k < col.size(); ++k)
                    sets.unite(col[0].index, col[k].index);
            std::vector<std::vector<std::size_t>> block_cols(nrows);
            for (std::size_t c = 0; c < rest.size(); ++c)
                block_cols[sets.find(rest[c][0].index)].push_back(c);
            std::vector<std::int64_t> local(nrows, -1);
            for (std::uint32_t root = 0; root < nrows; ++root) {
                const auto& cols = block_cols[root];
                if (cols.empty())
                    continue;
                std::vector<std::uint32_t> rows;
                for (std::size_t c : cols)
                    for (const auto& e : rest[c])
                        if (local[e.index] < 0) {
                            local[e.index] = static_cast<std::int64_t>(rows.size());
                            rows.push_back(e.index);
                        }
                IntMatrix block(rows.size(), cols.size());
                for (std::size_t j = 0; j < cols.size(); ++j)
                    for (const auto& e : rest[cols[j]])
                        block(static_cast<std::size_t>(local[e.index]), j) = e.value;
                for (std::uint32_t r : rows)
                    local[r] = -1;
                if (rows.size() == 1 || cols.size() == 1) {
                    Integer g = 0;
                    for (std::size_t i = 0; i < block.rows(); ++i)
                        for (std::size_t j = 0; j < block.cols(); ++j)
                            g = gcd(g, block(i, j));
                    diag.push_back(g);
                } else {
                    auto d = dense_diagonal(std::move(block));
                    diag.insert(diag.end(), d.begin(), d.end());
                }
            }
        }
    }
    return divisibility_chain(std::move(diag));
}

} // namespace abelim
