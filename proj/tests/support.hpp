#pragma once

// Shared helpers for the unit suites: seeded generators and brute-force
// oracles that do not go through the library's reduction code.

#include "abelim/homomorphism.hpp"
#include "abelim/int_matrix.hpp"
#include "abelim/presentation.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace testing {

using abelim::CanonicalForm;
using abelim::Integer;
using abelim::IntMatrix;
using abelim::Presentation;

inline CanonicalForm cf(std::size_t free_rank, std::vector<long> factors = {})
{
    CanonicalForm c;
    c.free_rank = free_rank;
    for (long f : factors)
        c.invariant_factors.emplace_back(f);
    return c;
}

inline Presentation group(std::vector<long> orders)
{
    std::vector<Integer> o(orders.begin(), orders.end());
    return Presentation::diagonal(o);
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound)
{
    std::uniform_int_distribution<long> d(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = d(rng);
    return m;
}

// Cofactor expansion; only for tiny matrices.
inline Integer brute_det(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return m(0, 0);
    Integer total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0)
            continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 1; i < n; ++i)
            rows.push_back(i);
        for (std::size_t k = 0; k < n; ++k)
            if (k != j)
                cols.push_back(k);
        Integer minor = brute_det(m.submatrix(rows, cols));
        total += ((j % 2) ? -1 : 1) * m(0, j) * minor;
    }
    return total;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

// Invariant factors from determinantal divisors: D_k = gcd of k x k minors,
// d_k = D_k / D_{k-1}. Independent of any elimination.
inline std::vector<Integer> determinantal_invariants(const IntMatrix& m)
{
    std::vector<Integer> out;
    Integer prev = 1;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        Integer g = 0;
        for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& r) {
            for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& c) {
                g = abelim::gcd(g, brute_det(m.submatrix(r, c)));
            });
        });
        if (g == 0)
            break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

// Elements of a finite diagonal group Z/n1 + ... + Z/nk, enumerated directly.
inline std::vector<std::vector<long>> enumerate_diagonal(const std::vector<long>& orders)
{
    std::vector<std::vector<long>> out{{}};
    for (long n : orders) {
        std::vector<std::vector<long>> next;
        for (const auto& e : out)
            for (long v = 0; v < n; ++v) {
                auto x = e;
                x.push_back(v);
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    return out;
}

inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12)
{
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2)
        return u;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int s = 0; s < steps; ++s) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        long k = coef(rng);
        for (std::size_t c = 0; c < n; ++c)
            u(i, c) += k * u(j, c);
    }
    return u;
}

// Random well-defined map between diagonal groups given by their orders
// (0 = free): entry (r, i) is a multiple of e_r / gcd(e_r, d_i).
inline abelim::Homomorphism random_diagonal_hom(std::mt19937_64& rng, const std::vector<long>& src,
                                                const std::vector<long>& tgt, long bound = 3)
{
    std::uniform_int_distribution<long> k(-bound, bound);
    IntMatrix m(tgt.size(), src.size());
    for (std::size_t r = 0; r < tgt.size(); ++r)
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (tgt[r] == 0) {
                m(r, i) = src[i] == 0 ? k(rng) : 0;
                continue;
            }
            long step = tgt[r] / std::gcd(tgt[r], src[i]);
            m(r, i) = k(rng) * step;
        }
    return abelim::Homomorphism(group(src), group(tgt), m);
}

inline std::vector<long> random_orders(std::mt19937_64& rng, std::size_t max_len = 3,
                                       std::vector<long> pool = {0, 2, 3, 4, 6, 8, 9})
{
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<long> out(len(rng));
    for (auto& x : out)
        x = pool[pick(rng)];
    return out;
}

} // namespace testing
