#include "support.hpp"

#include "abelim/errors.hpp"
#include "abelim/homomorphism.hpp"
#include "abelim/lattice.hpp"
#include "abelim/smith.hpp"

#include <doctest.h>

using namespace abelim;
using testing::cf;
using testing::group;

namespace {

std::vector<Integer> diag_of(const IntMatrix& d)
{
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
        out.push_back(d(i, i));
    return out;
}

void check_smith(const IntMatrix& m)
{
    auto s = smith_normal_form(m);
    REQUIRE(s.U * m * s.V == s.D);
    CHECK(abs(s.U.determinant()) == 1);
    CHECK(abs(s.V.determinant()) == 1);
    CHECK(s.D.is_diagonal());
    Integer prev = 1;
    bool seen_zero = false;
    for (const auto& d : diag_of(s.D)) {
        CHECK(d >= 0);
        if (d == 0) {
            seen_zero = true;
            continue;
        }
        CHECK_FALSE(seen_zero);
        CHECK(divides(prev, d));
        prev = d;
    }
}

} // namespace

TEST_CASE("smith: diag(2,3) reduces to diag(1,6)")
{
    IntMatrix m{{2, 0}, {0, 3}};
    // frozen from determinantal divisors: D1 = 1, D2 = 6
    CHECK(testing::determinantal_invariants(m) == std::vector<Integer>{1, 6});
    auto s = smith_normal_form(m);
    CHECK(s.D == IntMatrix{{1, 0}, {0, 6}});
    check_smith(m);
}

TEST_CASE("smith: zero matrix is already reduced")
{
    IntMatrix m(2, 2);
    auto s = smith_normal_form(m);
    CHECK(s.D == IntMatrix(2, 2));
    CHECK(s.U == IntMatrix::identity(2));
    CHECK(s.V == IntMatrix::identity(2));
}

TEST_CASE("smith: [[2,4],[6,8]] has invariants 2, 4")
{
    IntMatrix m{{2, 4}, {6, 8}};
    CHECK(testing::determinantal_invariants(m) == std::vector<Integer>{2, 4});
    auto s = smith_normal_form(m);
    CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
    check_smith(m);
}

TEST_CASE("smith: empty shapes")
{
    check_smith(IntMatrix(0, 3));
    check_smith(IntMatrix(3, 0));
    CHECK(elementary_divisors(IntMatrix(0, 0)).empty());
}

TEST_CASE("smith: random matrices agree with determinantal divisors")
{
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int trial = 0; trial < 150; ++trial) {
        IntMatrix m = testing::random_matrix(rng, dim(rng), dim(rng), 12);
        check_smith(m);
        auto expected = testing::determinantal_invariants(m);
        CHECK(elementary_divisors(m) == expected);
        auto s = smith_normal_form(m);
        std::vector<Integer> nz;
        for (auto& d : diag_of(s.D))
            if (d != 0)
                nz.push_back(d);
        CHECK(nz == expected);
    }
}

TEST_CASE("smith: 1000 random matrices up to 8x8")
{
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        IntMatrix m = testing::random_matrix(rng, dim(rng), dim(rng), 100);
        check_smith(m);
        auto s = smith_normal_form(m);
        std::vector<Integer> nz;
        for (auto& d : diag_of(s.D))
            if (d != 0)
                nz.push_back(d);
        CHECK(elementary_divisors(m) == nz);
    }
}

TEST_CASE("elementary divisors: sparse path handles units, blocks and recursion")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 9);
        std::size_t r = dim(rng), c = dim(rng);
        IntMatrix m(r, c);
        std::uniform_int_distribution<long> val(-3, 3);
        std::uniform_int_distribution<int> coin(0, 3);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (coin(rng) == 0)
                    m(i, j) = val(rng);
        auto s = smith_normal_form(m);
        std::vector<Integer> nz;
        for (auto& d : diag_of(s.D))
            if (d != 0)
                nz.push_back(d);
        CHECK(elementary_divisors(m) == nz);
    }
}

TEST_CASE("divisibility chain merges coprime factors")
{
    CHECK(divisibility_chain({Integer(2), Integer(3)}) == std::vector<Integer>{1, 6});
    CHECK(divisibility_chain({Integer(4), Integer(2), Integer(6)}) == std::vector<Integer>{2, 2, 12});
}

TEST_CASE("canonical_form examples")
{
    CHECK(Presentation(2, IntMatrix{{2}, {0}}).canonical_form() == cf(1, {2}));
    CHECK(Presentation().canonical_form() == cf(0));
    CHECK(Presentation(1, IntMatrix{{1}}).canonical_form() == cf(0));
    CHECK(cf(2, {4}).to_string() == "Z^2 + Z/4");
    CHECK(cf(0, {2, 2, 4}).to_string() == "Z/2^2 + Z/4");
    CHECK(cf(0).to_string() == "0");
}

TEST_CASE("canonical_form is an isomorphism invariant")
{
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<std::size_t> gens(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t l = gens(rng);
        IntMatrix rel = testing::random_matrix(rng, l, gens(rng), 9);
        Presentation a(l, rel);
        // change of generators, extra lattice columns, column shuffle
        IntMatrix u = testing::random_unimodular(rng, l);
        IntMatrix extra = rel * testing::random_matrix(rng, rel.cols(), 2, 3);
        IntMatrix moved = u * hstack(extra, rel);
        std::vector<std::size_t> rows(l), cols(moved.cols());
        std::iota(rows.begin(), rows.end(), 0);
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(cols.begin(), cols.end(), rng);
        Presentation b(l, moved.submatrix(rows, cols));
        CHECK(a.canonical_form() == b.canonical_form());
    }
}

TEST_CASE("kernel examples")
{
    auto z = Presentation::free(1);
    CHECK(kernel(Homomorphism::scalar(z, 2)).group.is_trivial());

    // Z/4 -> Z/2: enumerate the 4 elements; those mapping to 0 are {0, 2}.
    std::size_t hits = 0;
    for (const auto& e : testing::enumerate_diagonal({4}))
        hits += (e[0] % 2 == 0);
    CHECK(hits == 2);
    Homomorphism proj(group({4}), group({2}), IntMatrix{{1}});
    auto k = kernel(proj);
    CHECK(k.group.canonical_form() == cf(0, {2}));
    CHECK(k.inclusion.is_injective());
    CHECK(compose(proj, k.inclusion).is_zero());

    auto a = group({0, 6});
    auto b = group({3});
    auto kz = kernel(Homomorphism::zero(a, b));
    CHECK(kz.group.canonical_form() == a.canonical_form());
}

TEST_CASE("kernel is maximal: every element mapping to zero lies in the image of the inclusion")
{
    // Z/4 + Z/6 -> Z/12, (x, y) -> 3x + 2y; checked over all 24 elements.
    auto src = group({4, 6});
    auto tgt = group({12});
    Homomorphism h(src, tgt, IntMatrix{{3, 2}});
    auto k = kernel(h);
    std::size_t zeros = 0;
    for (const auto& e : testing::enumerate_diagonal({4, 6})) {
        IntVector x{e[0], e[1]};
        if (!h.apply(x).is_zero())
            continue;
        ++zeros;
        CHECK(solve(k.inclusion, Element{src, x}).has_value());
    }
    CHECK(k.group.canonical_form().torsion_order() == zeros);
}

TEST_CASE("image and cokernel examples")
{
    auto z = Presentation::free(1);
    auto two = Homomorphism::scalar(z, 2);
    CHECK(cokernel(two).group.canonical_form() == cf(0, {2}));
    CHECK(two.is_injective());
    CHECK_FALSE(two.is_surjective());

    auto z6 = group({6});
    CHECK(cokernel(Homomorphism::identity(z6)).group.is_trivial());
    CHECK(Homomorphism::identity(z6).is_surjective());

    // 2Z/4Z inside Z/4: source Z/2 generated by the class of 2.
    Homomorphism incl(group({2}), group({4}), IntMatrix{{2}});
    auto im = image(incl);
    CHECK(im.group.canonical_form() == cf(0, {2}));
    CHECK(cokernel(incl).group.canonical_form() == cf(0, {2}));
    CHECK(compose(im.inclusion, im.corestriction).equals(incl));
}

TEST_CASE("direct_sum examples")
{
    CHECK(direct_sum(group({0}), group({2})).sum.canonical_form() == cf(1, {2}));
    CHECK(direct_sum(group({2}), group({4})).sum.canonical_form() == cf(0, {2, 4}));
    CHECK(direct_sum(group({2}), group({3})).sum.canonical_form() == cf(0, {6}));
    auto s = direct_sum(group({2}), group({0, 9}));
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(compose(s.projections[i], s.injections[i]).equals(Homomorphism::identity(i ? group({0, 9}) : group({2}))));
}

TEST_CASE("torsion subgroup examples")
{
    auto z2 = Presentation::free(2);
    CHECK(torsion_subgroup(z2).group.is_trivial());
    CHECK(is_torsion_free(z2));
    CHECK_FALSE(exponent_bound(z2).has_value());

    auto a = group({0, 4});
    auto t = torsion_subgroup(a);
    CHECK(t.group.canonical_form() == cf(0, {4}));
    CHECK(*exponent_bound(a) == 4);
    CHECK(cokernel(t.inclusion).group.is_torsion_free());

    CHECK(*exponent_bound(group({2, 6})) == 6);

    // non-diagonal presentation: <x, y | 2x + 4y, 6y> ~ Z/2 + Z/6
    Presentation p(2, IntMatrix{{2, 0}, {4, 6}});
    CHECK(torsion_subgroup(p).group.canonical_form() == p.canonical_form());
}

TEST_CASE("solve examples")
{
    auto z = Presentation::free(1);
    auto two = Homomorphism::scalar(z, 2);
    auto x = solve(two, Element{z, {Integer(4)}});
    REQUIRE(x);
    CHECK(x->coords[0] == 2);
    CHECK_FALSE(solve(two, Element{z, {Integer(3)}}).has_value());

    auto z5 = group({5});
    Homomorphism proj(z, z5, IntMatrix{{1}});
    auto y = Element{z5, {Integer(3)}};
    auto s = solve(proj, y);
    REQUIRE(s);
    CHECK(proj(*s).equals(y));
}

TEST_CASE("homomorphism certificate rejects ill-defined maps")
{
    CHECK_THROWS_AS(Homomorphism(group({2}), Presentation::free(1), IntMatrix{{1}}), NotWellDefined);
    CHECK_NOTHROW(Homomorphism(group({2}), group({4}), IntMatrix{{2}}));
    CHECK_NOTHROW(Homomorphism::identity(Presentation()));
}

TEST_CASE("element equality is congruence modulo relations")
{
    auto a = group({4, 0});
    CHECK(Element{a, {Integer(1), Integer(3)}}.equals(Element{a, {Integer(5), Integer(3)}}));
    CHECK_FALSE(Element{a, {Integer(1), Integer(3)}}.equals(Element{a, {Integer(1), Integer(4)}}));
}

TEST_CASE("rank-nullity bookkeeping on random maps")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> order(0, 8);
    std::uniform_int_distribution<std::size_t> count(1, 3);
    int checked = 0;
    while (checked < 60) {
        std::vector<long> so, to;
        for (std::size_t i = count(rng); i > 0; --i)
            so.push_back(order(rng) == 1 ? 0 : order(rng));
        for (std::size_t i = count(rng); i > 0; --i)
            to.push_back(order(rng));
        auto src = group(so), tgt = group(to);
        IntMatrix m = testing::random_matrix(rng, tgt.gens(), src.gens(), 5);
        std::optional<Homomorphism> h;
        try {
            h.emplace(src, tgt, m);
        } catch (const NotWellDefined&) {
            continue;
        }
        ++checked;
        auto k = kernel(*h);
        auto im = image(*h);
        auto co = cokernel(*h);
        const auto &cs = src.canonical_form(), &ck = k.group.canonical_form(), &ci = im.group.canonical_form();
        CHECK(cs.free_rank == ck.free_rank + ci.free_rank);
        if (cs.is_finite())
            CHECK(cs.torsion_order() == ck.torsion_order() * ci.torsion_order());
        // target sequence 0 -> I -> B -> C -> 0
        const auto& ct = tgt.canonical_form();
        const auto& cc = co.group.canonical_form();
        CHECK(ct.free_rank == ci.free_rank + cc.free_rank);
        if (ct.is_finite())
            CHECK(ct.torsion_order() == ci.torsion_order() * cc.torsion_order());
        CHECK(im.inclusion.is_injective());
        CHECK(co.projection.is_surjective());
        CHECK(compose(*h, k.inclusion).is_zero());
        CHECK(h->is_surjective() == co.group.is_trivial());
    }
}

TEST_CASE("lattice solve and syzygies")
{
    IntMatrix g{{2, 4, 6}, {0, 3, 3}};
    Lattice l(2, g, true);
    CHECK(l.rank() == 2);
    auto syz = l.syzygies();
    CHECK(syz.cols() == 1);
    CHECK((g * syz).is_zero());
    auto x = l.solve({Integer(8), Integer(6)});
    REQUIRE(x);
    CHECK(g * std::span<const Integer>(*x) == IntVector{8, 6});
    CHECK_FALSE(l.contains({Integer(1), Integer(0)}));
}
