#pragma once

#include "abelim/integer.hpp"
#include "abelim/presentation.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abelim {

struct GroupTerm;
using TermPtr = std::shared_ptr<const GroupTerm>;

/// Index set of a SumFamily. Finite carries the concrete index values.
struct IndexSet {
    enum class Kind { Finite, AllPrimes, AllNaturals };
    Kind kind = Kind::Finite;
    std::vector<Integer> values;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;
};

/// Functor label inside comparison terms. `arg` may be the bound index
/// variable of an enclosing SumFamily ("p" or "n").
struct FunctorRef {
    std::string name; // tensor, tor, lambda, l1lambda2, homology, tor_diag
    std::string arg;

    std::string to_string() const { return arg.empty() ? name : name + "(" + arg + ")"; }
    friend bool operator==(const FunctorRef&, const FunctorRef&) = default;
};

struct GroupTerm {
    enum class Kind {
        FG,
        IndexCyclic, // Z/p with p the SumFamily variable
        SumFamily,
        Lim,
        Lim1,
        KerComparison,
        CokerComparison,
        QuotientOf,
        Extension,
        SummandOf,
        RetractTimesN,
        BoundedTorsion,
        ReducedUnboundedTorsion,
        Rationals
    };

    Kind kind = Kind::FG;
    CanonicalForm cf;              // FG
    std::string var;               // IndexCyclic, SumFamily
    IndexSet index;                // SumFamily
    std::vector<TermPtr> children; // SumFamily body, QuotientOf, Extension(sub, quot), SummandOf, RetractTimesN
    std::string tower;             // Lim, Lim1, comparisons
    FunctorRef functor;            // comparisons
    Integer n = 0;                 // RetractTimesN factor, BoundedTorsion exponent, ReducedUnbounded prime (0 = mixed)

    /// Canonical text in the term language; parse_term inverts it.
    std::string to_string() const;
};

TermPtr fg(const CanonicalForm& cf);
TermPtr index_cyclic(const std::string& var);
/// The bound variable is "n" over AllNaturals and "p" otherwise.
TermPtr sum_family(TermPtr body, IndexSet index);
TermPtr lim(const std::string& tower);
TermPtr lim1(const std::string& tower);
TermPtr ker_cmp(FunctorRef f, const std::string& tower);
TermPtr coker_cmp(FunctorRef f, const std::string& tower);
TermPtr quotient_of(TermPtr t);
TermPtr extension(TermPtr sub, TermPtr quot);
TermPtr summand_of(TermPtr t);
TermPtr retract(TermPtr ambient, const Integer& n);
TermPtr bounded(const Integer& n);
TermPtr reduced_unbounded(const Integer& p);
TermPtr rationals();

bool same_term(const GroupTerm& a, const GroupTerm& b);

/// Replaces the index variable `var` by the value v throughout `t`.
TermPtr instantiate(const TermPtr& t, const std::string& var, const Integer& v);

/// Term language: lim(T), lim1(T), ker_cmp(F, T), coker_cmp(F, T), quot(x),
/// ext(a, b), summand_of(x), retract(x, n), bounded(n), reduced_unbounded(p),
/// reduced_unbounded(mixed), sum_p(body), sum_n(body), sum_p[2,3](body), Q,
/// and group expressions such as Z/4 or Z^2 + Z/3. Throws ParseError.
TermPtr parse_term(std::string_view text);

} // namespace abelim
