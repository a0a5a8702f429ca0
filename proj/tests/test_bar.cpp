#include "support.hpp"

#include "abelim/bar.hpp"
#include "abelim/corpus.hpp"
#include "abelim/errors.hpp"
#include "abelim/functors.hpp"

#include <doctest.h>

using namespace abelim;
using testing::cf;
using testing::group;

namespace {

FiniteGroupTable table_of(std::vector<long> orders) { return FiniteGroupTable::from_presentation(group(orders)); }

bool composes_to_zero(const SparseMatrix& d, const SparseMatrix& e)
{
    return (d.to_dense() * e.to_dense()).is_zero();
}

} // namespace

TEST_CASE("bar homology examples")
{
    auto z2 = table_of({2});
    CHECK(bar_homology(z2, 1) == cf(0, {2}));
    CHECK(bar_homology(z2, 2) == cf(0));
    CHECK(bar_homology(z2, 3) == cf(0, {2}));
    CHECK(bar_homology(z2, 0) == cf(1));
}

TEST_CASE("bar complex squares to zero")
{
    for (auto orders : {std::vector<long>{3}, std::vector<long>{2, 2}, std::vector<long>{4}}) {
        auto g = table_of(orders);
        for (std::size_t k = 1; k <= 3; ++k)
            CHECK(composes_to_zero(bar_differential(g, k), bar_differential(g, k + 1)));
    }
}

TEST_CASE("bar homology in low degrees matches the group")
{
    for (const auto& c : groups_up_to_order(12)) {
        auto t = FiniteGroupTable::from_presentation(Presentation::from_canonical(c));
        CHECK(bar_homology(t, 0) == cf(1));
        CHECK(bar_homology(t, 1) == c);
    }
}

TEST_CASE("bar oracle against Künneth in degree 3")
{
    for (const auto& c : groups_up_to_order(8)) {
        auto a = Presentation::from_canonical(c);
        CHECK(bar_homology(FiniteGroupTable::from_presentation(a), 3) == homology(a, 3).degree(3).canonical_form());
    }
}

TEST_CASE("budget is enforced on |A|^(n+1)")
{
    auto g = table_of({2, 4});
    BarOptions small;
    small.budget = 4000;
    CHECK_NOTHROW(bar_homology(g, 2, small)); // 8^3 = 512
    CHECK_THROWS_AS(bar_homology(g, 4, small), BudgetExceeded); // 8^5
    CHECK_THROWS_AS(bar_homology(table_of({16}), 5), BudgetExceeded);
}

TEST_CASE("group tables are validated")
{
    // Z/3 with a broken entry
    std::vector<std::vector<std::uint32_t>> t{{0, 1, 2}, {1, 2, 0}, {2, 0, 0}};
    CHECK_THROWS_AS(FiniteGroupTable(t, 0), std::invalid_argument);
    t[2][2] = 1;
    CHECK_NOTHROW(FiniteGroupTable(t, 0));
    CHECK_THROWS_AS(FiniteGroupTable::from_presentation(Presentation::free(1)), std::invalid_argument);
    CHECK(FiniteGroupTable::from_presentation(Presentation()).order() == 1);
    CHECK(bar_homology(FiniteGroupTable::from_presentation(Presentation()), 2) == cf(0));
}
