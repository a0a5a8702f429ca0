#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abelim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define ABELIM_DEFINE_ERROR(Name)                                     \
    class Name : public Error {                                       \
    public:                                                           \
        using Error::Error;                                           \
        const char* kind() const noexcept override { return #Name; }  \
    }

/// A generator-level matrix does not respect the relations.
ABELIM_DEFINE_ERROR(NotWellDefined);
/// Functor outputs disagree on group orders; points at an implementation bug.
ABELIM_DEFINE_ERROR(InconsistentOrders);
/// Bar-complex instance exceeds the generator budget.
ABELIM_DEFINE_ERROR(BudgetExceeded);
/// A claimed tower flag contradicts computation.
ABELIM_DEFINE_ERROR(ClaimViolation);
/// The functor has no induced maps for these stages.
ABELIM_DEFINE_ERROR(UnsupportedInducedMap);
/// Declared limit failed compatibility with the bonding maps.
ABELIM_DEFINE_ERROR(LimitNotValidated);
/// A theorem hypothesis does not hold for the given input.
ABELIM_DEFINE_ERROR(HypothesisViolation);
/// Symbolic term does not have the shape a rewrite expects.
ABELIM_DEFINE_ERROR(ShapeMismatch);
/// Tower id is neither registered nor declared abstract.
ABELIM_DEFINE_ERROR(UnresolvedTowerRef);
/// Division by zero modulus in a group expression ("Z/0").
ABELIM_DEFINE_ERROR(ZeroModulus);
/// Malformed configuration (tower spec, command arguments).
ABELIM_DEFINE_ERROR(ConfigError);

#undef ABELIM_DEFINE_ERROR

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t column)
        : Error(message + " at column " + std::to_string(column)), column_(column)
    {
    }
    const char* kind() const noexcept override { return "ParseError"; }
    /// 1-based column of the offending character.
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

} // namespace abelim
