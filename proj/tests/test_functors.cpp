#include "support.hpp"

#include "abelim/bar.hpp"
#include "abelim/corpus.hpp"
#include "abelim/errors.hpp"
#include "abelim/functors.hpp"
#include "abelim/group_expr.hpp"

#include <doctest.h>

using namespace abelim;
using testing::cf;
using testing::group;

namespace {

// Multiplier of H3(Z/m) -> H3(Z/n) for 1 -> a, from an explicit chain map
// between the periodic resolutions, worked in the group ring Z[C_n].
long periodic_h3_multiplier(long m, long n, long a)
{
    auto shift = [n](long k) { return ((k % n) + n) % n; };
    std::vector<long> phi1(n, 0);
    for (long k = 0; k < a; ++k)
        phi1[shift(k)] += 1;
    std::vector<long> norm_image(n, 0);
    for (long i = 0; i < m; ++i)
        norm_image[shift(a * i)] += 1;
    std::vector<long> y(n, 0);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            y[shift(i + j)] += phi1[i] * norm_image[j];
    // phi2 * N_n = y forces y constant
    for (long k = 1; k < n; ++k)
        REQUIRE(y[k] == y[0]);
    long phi2 = y[0];
    std::vector<long> z(n, 0);
    z[shift(a)] += phi2;
    z[0] -= phi2;
    // (s - 1) x = z: coefficient k of (s - 1) x is x[k-1] - x[k]
    std::vector<long> x(n, 0);
    for (long k = 1; k < n; ++k)
        x[k] = x[k - 1] - z[k];
    long aug = 0;
    for (long v : x)
        aug += v;
    return ((aug % n) + n) % n;
}

IntMatrix one(long v) { return IntMatrix{{v}}; }

// Künneth expansion through the presentation-level tensor and Tor.
std::vector<CanonicalForm> kunneth(const GradedGroup& a, const GradedGroup& b, std::size_t n)
{
    std::vector<CanonicalForm> out(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i <= k; ++i)
            out[k] = direct_sum(out[k], tensor(a.degree(i), b.degree(k - i)).canonical_form());
        for (std::size_t i = 0; k >= 1 && i + 1 <= k; ++i)
            out[k] = direct_sum(out[k], tor(a.degree(i), b.degree(k - 1 - i)).canonical_form());
    }
    return out;
}

} // namespace

TEST_CASE("tensor examples")
{
    CHECK(tensor(group({2}), group({3})).is_trivial());
    CHECK(tensor(group({4}), group({6})).canonical_form() == cf(0, {2}));
    CHECK(tensor(group({0, 0}), group({3})).canonical_form() == cf(0, {3, 3}));
    CHECK(tensor(Presentation(), group({5})).is_trivial());
}

TEST_CASE("tor examples")
{
    CHECK(tor(group({0}), group({4, 0})).is_trivial());
    // kernel of x4 on Z/6 is {0, 3}
    std::size_t hits = 0;
    for (const auto& e : testing::enumerate_diagonal({6}))
        hits += (4 * e[0]) % 6 == 0;
    CHECK(hits == 2);
    CHECK(tor(group({4}), group({6})).canonical_form() == cf(0, {2}));
    // truncated A' at M = 4, i = 2, p = 2
    CHECK(tor(group({0, 0, 2, 2}), group({2})).canonical_form() == cf(0, {2, 2}));
    CHECK(tor(Presentation(), group({3})).is_trivial());
}

TEST_CASE("lambda examples")
{
    CHECK(lambda(2, Presentation::free(2)).canonical_form() == cf(1));
    CHECK(lambda(2, group({7})).is_trivial());
    CHECK(lambda(2, group({2, 4})).canonical_form() == cf(0, {2}));
    CHECK(lambda(1, group({2, 0})).canonical_form() == cf(1, {2}));
    CHECK(lambda(3, Presentation::free(3)).canonical_form() == cf(1));
    CHECK(lambda(4, Presentation::free(3)).is_trivial());
    CHECK(exterior_basis(2, 4).size() == 6);
}

TEST_CASE("h2 examples")
{
    CHECK(h2_group(Presentation::free(3)).canonical_form() == cf(3));
    auto v4 = group({2, 2});
    CHECK(h2_group(v4).canonical_form() == cf(0, {2}));
    CHECK(bar_homology(FiniteGroupTable::from_presentation(v4), 2) == cf(0, {2}));
    CHECK(h2_group(group({12})).is_trivial());
}

TEST_CASE("l1lambda2 examples")
{
    CHECK(l1lambda2(Presentation::free(3)).is_trivial());
    CHECK(l1lambda2(group({5})).canonical_form() == cf(0, {5}));
    CHECK(l1lambda2(group({2, 2})).canonical_form() == cf(0, {2, 2, 2}));
    // base case against the oracle: Λ³(Z/m) = 0, so H3(Z/m) = L1Λ²(Z/m)
    for (long m : {2, 3, 4, 5}) {
        CHECK(lambda(3, group({m})).is_trivial());
        CHECK(bar_homology(FiniteGroupTable::from_presentation(group({m})), 3) == cf(0, {m}));
    }
    // non-diagonal input goes through its canonical form
    Presentation p(2, IntMatrix{{2, 0}, {4, 6}});
    CHECK(l1lambda2(p).canonical_form() == l1lambda2(group({2, 6})).canonical_form());
}

TEST_CASE("homology examples")
{
    auto h = homology(group({2, 2}), 3);
    CHECK(h.degree(3).canonical_form() == cf(0, {2, 2, 2}));
    CHECK(h.degree(1).canonical_form() == cf(0, {2, 2}));
    CHECK(homology(Presentation::free(2), 2).degree(2).canonical_form() == cf(1));
    auto t = homology(Presentation(), 4);
    CHECK(t.degree(0).canonical_form() == cf(1));
    for (std::size_t k = 1; k <= 4; ++k)
        CHECK(t.degree(k).is_trivial());
}

TEST_CASE("breen examples")
{
    auto r = breen_check(group({2, 2}));
    CHECK(r.h3.torsion_order() == 8);
    CHECK(r.lambda3.is_trivial());
    CHECK(r.l1lambda2.torsion_order() == 8);
    CHECK(r.split_equal);
    auto z3 = breen_check(Presentation::free(3));
    CHECK(z3.h3 == cf(1));
    CHECK(z3.lambda3 == cf(1));
    CHECK(z3.l1lambda2.is_trivial());
    for (long m : {3, 8}) {
        auto c = breen_check(group({m}));
        CHECK(c.h3.torsion_order() == m);
        CHECK(c.order_consistent);
    }
}

TEST_CASE("odd summand examples")
{
    auto a = odd_summand_check(group({9}));
    CHECK(a.l1_odd == std::vector<Integer>{9});
    CHECK(a.tor_odd == std::vector<Integer>{9});
    CHECK(a.holds);
    auto b = odd_summand_check(Presentation::free(2));
    CHECK(b.l1_odd.empty());
    CHECK(b.holds);
    auto c = odd_summand_check(group({3, 9}));
    CHECK(c.l1_odd == std::vector<Integer>{3, 3, 9});
    CHECK(c.tor_odd == std::vector<Integer>{3, 3, 3, 9});
    CHECK(c.holds);
}

TEST_CASE("primary parts")
{
    CHECK(primary_parts(cf(0, {12, 36})) == std::vector<Integer>{3, 4, 4, 9});
}

TEST_CASE("functoriality on random map pairs")
{
    std::mt19937_64 rng(1701);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = testing::random_orders(rng, 2), b = testing::random_orders(rng, 2), c = testing::random_orders(rng, 2);
        auto f = testing::random_diagonal_hom(rng, a, b);
        auto g = testing::random_diagonal_hom(rng, b, c);
        auto gf = compose(g, f);
        auto bb = testing::random_orders(rng, 2), bc = testing::random_orders(rng, 2);
        auto u = testing::random_diagonal_hom(rng, bb, bc);

        auto ida = Homomorphism::identity(group(a));
        CHECK(tensor_induced(ida, Homomorphism::identity(group(bb))).equals(Homomorphism::identity(tensor(group(a), group(bb)))));
        CHECK(tensor_induced(gf, u).equals(compose(tensor_induced(g, u), tensor_induced(f, Homomorphism::identity(group(bb))))));

        CHECK(tor_induced(ida, group(bb)).equals(Homomorphism::identity(tor(group(a), group(bb)))));
        CHECK(tor_induced(gf, group(bb)).equals(compose(tor_induced(g, group(bb)), tor_induced(f, group(bb)))));
        CHECK(tor_induced(f, u).equals(compose(tor_induced(f, group(bc)), tor_induced(ida, u))));

        for (std::size_t n : {2u, 3u}) {
            CHECK(lambda_induced(n, ida).equals(Homomorphism::identity(lambda(n, group(a)))));
            CHECK(lambda_induced(n, gf).equals(compose(lambda_induced(n, g), lambda_induced(n, f))));
        }
    }
}

TEST_CASE("tor_induced does not depend on the chosen lift")
{
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = testing::random_orders(rng), b = testing::random_orders(rng);
        auto f = testing::random_diagonal_hom(rng, a, b);
        const IntMatrix& r = f.target().relations();
        IntMatrix shifted = f.matrix() + r * testing::random_matrix(rng, r.cols(), a.size(), 4);
        Homomorphism f2(f.source(), f.target(), shifted);
        auto bgrp = group(testing::random_orders(rng));
        CHECK(tor_induced(f, bgrp).equals(tor_induced(f2, bgrp)));
    }
}

TEST_CASE("gcd laws for cyclic groups")
{
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<long> d(1, 60);
    for (int trial = 0; trial < 50; ++trial) {
        long m = d(rng), n = d(rng);
        CanonicalForm expected = std::gcd(m, n) == 1 ? cf(0) : cf(0, {std::gcd(m, n)});
        CHECK(tensor(group({m}), group({n})).canonical_form() == expected);
        CHECK(tor(group({m}), group({n})).canonical_form() == expected);
        CHECK(cf_tensor(group({m}).canonical_form(), group({n}).canonical_form()) == expected);
    }
}

TEST_CASE("tor is symmetric and resolution independent")
{
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = group(testing::random_orders(rng)), b = group(testing::random_orders(rng));
        CHECK(tor(a, b).canonical_form() == tor(b, a).canonical_form());
        CHECK(tor(a, b).canonical_form() == cf_tor(a.canonical_form(), b.canonical_form()));
    }
    for (int trial = 0; trial < 30; ++trial) {
        auto orders = testing::random_orders(rng);
        auto a = group(orders);
        auto b = group(testing::random_orders(rng));
        IntMatrix u = testing::random_unimodular(rng, orders.size());
        IntMatrix rel = a.relations();
        IntMatrix extra = rel * testing::random_matrix(rng, rel.cols(), 2, 3);
        Presentation a2(orders.size(), u * hstack(rel, extra));
        REQUIRE(a2.canonical_form() == a.canonical_form());
        CHECK(tor(a2, b).canonical_form() == tor(a, b).canonical_form());
    }
}

TEST_CASE("right exactness of exterior powers")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> mult(1, 3);
    for (int trial = 0; trial < 30; ++trial) {
        auto tgt = testing::random_orders(rng);
        std::vector<long> src;
        for (long e : tgt)
            src.push_back(e == 0 ? 0 : e * mult(rng));
        src.push_back(testing::random_orders(rng, 1)[0]);
        IntMatrix m(tgt.size(), src.size());
        for (std::size_t r = 0; r < tgt.size(); ++r)
            m(r, r) = 1;
        Homomorphism f(group(src), group(tgt), m);
        REQUIRE(f.is_surjective());
        for (std::size_t n : {2u, 3u})
            CHECK(lambda_induced(n, f).is_surjective());
    }
}

TEST_CASE("exterior power of a sum")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        auto a = group(testing::random_orders(rng, 2)), b = group(testing::random_orders(rng, 2));
        auto sum = direct_sum(a, b).sum;
        for (std::size_t n : {2u, 3u}) {
            CanonicalForm expected;
            for (std::size_t i = 0; i <= n; ++i)
                expected = direct_sum(expected, tensor(lambda(i, a), lambda(n - i, b)).canonical_form());
            CHECK(lambda(n, sum).canonical_form() == expected);
        }
    }
}

TEST_CASE("H2 agrees with Λ² and the bar oracle up to order 16")
{
    for (const auto& g : groups_up_to_order(16)) {
        auto a = Presentation::from_canonical(g);
        auto h2 = homology(a, 2).degree(2).canonical_form();
        CHECK(h2 == lambda(2, a).canonical_form());
        CHECK(h2 == bar_homology(FiniteGroupTable::from_presentation(a), 2));
    }
}

TEST_CASE("Künneth recombination matches direct computation")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = group(testing::random_orders(rng, 2)), b = group(testing::random_orders(rng, 2));
        auto whole = homology(direct_sum(a, b).sum, 3);
        auto parts = kunneth(homology(a, 3), homology(b, 3), 3);
        for (std::size_t k = 0; k <= 3; ++k)
            CHECK(whole.degree(k).canonical_form() == parts[k]);
        CHECK(whole.degree(1).canonical_form() == direct_sum(a, b).sum.canonical_form());
        CHECK(whole.degree(2).canonical_form() == h2_group(direct_sum(a, b).sum).canonical_form());
    }
}

TEST_CASE("L1Λ² blockwise maps follow the periodic-resolution multiplier")
{
    struct Case {
        long m, n, a;
    };
    for (Case c : {Case{4, 2, 1}, Case{2, 4, 2}, Case{6, 3, 1}, Case{3, 9, 3}, Case{9, 9, 2}, Case{8, 4, 3}}) {
        Homomorphism f(group({c.m}), group({c.n}), one(c.a));
        auto l = l1lambda2_induced(f);
        long expected = periodic_h3_multiplier(c.m, c.n, c.a);
        CHECK(Element{l.target(), l.matrix().column(0)}.equals(Element{l.target(), {Integer(expected)}}));
    }
}

TEST_CASE("L1Λ² and H3 induced maps are functorial on blockwise maps")
{
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<long> coef(0, 5);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = testing::random_orders(rng, 3), b = testing::random_orders(rng, 3), c = testing::random_orders(rng, 3);
        std::size_t k = std::min({a.size(), b.size(), c.size()});
        a.resize(k);
        b.resize(k);
        c.resize(k);
        auto diag_map = [&](const std::vector<long>& s, const std::vector<long>& t) {
            IntMatrix m(t.size(), s.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                long step = t[i] == 0 ? (s[i] == 0 ? 1 : 0) : t[i] / std::gcd(t[i], s[i]);
                m(i, i) = step * coef(rng);
            }
            return Homomorphism(group(s), group(t), m);
        };
        auto f = diag_map(a, b), g = diag_map(b, c);
        auto gf = compose(g, f);
        CHECK(l1lambda2_induced(gf).equals(compose(l1lambda2_induced(g), l1lambda2_induced(f))));
        CHECK(homology_induced(3, gf).equals(compose(homology_induced(3, g), homology_induced(3, f))));
        CHECK(homology_induced(3, Homomorphism::identity(group(a))).equals(Homomorphism::identity(homology_group(group(a), 3))));
        CHECK(homology_group(group(a), 3).canonical_form() == homology(group(a), 3).degree(3).canonical_form());
    }
}

TEST_CASE("unsupported induced maps are refused")
{
    // swaps two summands
    Homomorphism swap(group({2, 4}), group({4, 2}), IntMatrix{{0, 1}, {1, 0}});
    CHECK_THROWS_AS(l1lambda2_induced(swap), UnsupportedInducedMap);
    Homomorphism spread(group({4}), group({4, 4}), IntMatrix{{1}, {1}});
    CHECK_THROWS_AS(l1lambda2_induced(spread), UnsupportedInducedMap);
    Presentation mixed(2, IntMatrix{{2, 0}, {4, 6}});
    CHECK_THROWS_AS(homology_induced(3, Homomorphism::identity(mixed)), UnsupportedInducedMap);
    CHECK_NOTHROW(homology_induced(2, Homomorphism::identity(mixed)));
    CHECK_FALSE(homology_has_induced(3, mixed));
    CHECK(homology_has_induced(4, Presentation::free(3)));
}

TEST_CASE("functor tags")
{
    auto t = FunctorTag::tensor_with("Z/2");
    CHECK(t.label() == "tensor(Z/2)");
    CHECK(t.apply(Presentation::free(1)).canonical_form() == cf(0, {2}));
    nlohmann::json j = t;
    CHECK(j.dump() == R"({"functor":"tensor","with":"Z/2"})");
    CHECK(functor_from_json(j).label() == "tensor(Z/2)");
    CHECK(functor_from_json(nlohmann::json::parse(R"({"functor":"lambda","n":2})")).label() == "lambda(2)");
    CHECK(functor_from_json(nlohmann::json::parse(R"({"functor":"homology","n":3})")).n == 3);
    CHECK(functor_from_json(nlohmann::json::parse(R"({"functor":"l1lambda2"})")).kind == FunctorTag::Kind::L1Lambda2);
    CHECK(functor_from_json(nlohmann::json::parse(R"({"functor":"tor","with":"Z/4"})")).apply(group({8})).canonical_form() ==
          cf(0, {4}));
    CHECK_THROWS_AS(functor_from_json(nlohmann::json::parse(R"({"functor":"sym","n":2})")), ConfigError);
    CHECK_THROWS_AS(functor_from_json(nlohmann::json::parse(R"({"functor":"lambda"})")), ConfigError);
    CHECK_THROWS_AS(FunctorTag::lambda(0), ConfigError);

    // x2 on Z becomes zero after tensoring with Z/2
    auto two = Homomorphism::scalar(Presentation::free(1), 2);
    CHECK(t.apply(two).is_zero());
    auto h0 = FunctorTag::homology(0).apply(two);
    CHECK(h0.equals(Homomorphism::identity(Presentation::free(1))));
}

TEST_CASE("group corpus")
{
    // number of abelian groups of order n is a product of partition numbers
    std::vector<std::size_t> counts{1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5};
    for (unsigned long n = 1; n <= 16; ++n)
        CHECK(groups_of_order(n).size() == counts[n - 1]);
    CHECK(groups_up_to_order(16).size() == 25);
    CHECK(groups_of_order(72).size() == 6);
    for (const auto& g : groups_of_order(48))
        CHECK(g.torsion_order() == 48);
}
