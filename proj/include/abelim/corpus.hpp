#pragma once

#include "abelim/presentation.hpp"

#include <vector>

namespace abelim {

/// Every isomorphism type of abelian group of order n, as canonical forms
/// sorted by invariant factors.
std::vector<CanonicalForm> groups_of_order(unsigned long n);
/// All orders 1..max_order, in order.
std::vector<CanonicalForm> groups_up_to_order(unsigned long max_order);

} // namespace abelim
