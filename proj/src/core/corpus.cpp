#include "abelim/corpus.hpp"

#include <algorithm>
#include <functional>

namespace abelim {

std::vector<CanonicalForm> groups_of_order(unsigned long n)
{
    std::vector<CanonicalForm> out;
    std::vector<Integer> chain;
    // Chains d1 | d2 | ... with product n; each next factor is a multiple of the last.
    std::function<void(unsigned long, unsigned long)> rec = [&](unsigned long rest, unsigned long prev) {
        if (rest == 1) {
            CanonicalForm cf;
            cf.invariant_factors = chain;
            out.push_back(cf);
            return;
        }
        for (unsigned long d = prev; d <= rest; d += prev) {
            if (d < 2 || rest % d != 0)
                continue;
            // the remaining cofactor must itself be a product of multiples of d
            unsigned long co = rest / d;
            if (co != 1 && co % d != 0)
                continue;
            chain.emplace_back(d);
            rec(co, d);
            chain.pop_back();
        }
    };
    rec(n, 1);
    std::sort(out.begin(), out.end(), [](const CanonicalForm& a, const CanonicalForm& b) {
        return a.invariant_factors < b.invariant_factors;
    });
    return out;
}

std::vector<CanonicalForm> groups_up_to_order(unsigned long max_order)
{
    std::vector<CanonicalForm> out;
    for (unsigned long n = 1; n <= max_order; ++n)
        for (auto& g : groups_of_order(n))
            out.push_back(std::move(g));
    return out;
}

} // namespace abelim
