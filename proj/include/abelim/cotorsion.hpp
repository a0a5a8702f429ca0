#pragma once

#include "abelim/terms.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace abelim {

struct TowerWindow;

/// What the engine may assume about a tower id.
struct TowerFacts {
    bool abstract = false;
    bool surjective = false;
    bool stages_finite = false;
    /// Every stage has torsion subgroup of exponent dividing this.
    std::optional<Integer> torsion_exponent;
    /// For every prime p, lim1 Tor(A_i, Z/p) is a nonzero reduced p-group.
    bool lim1_tor_prime_nonzero = false;
    /// H_2 comparison kernel has the tensor-block kernels over this index set
    /// as a direct summand, with prime part `kunneth_factor`.
    std::optional<IndexSet> kunneth_primes;
    std::string kunneth_factor;
};

class TowerRegistry {
public:
    void register_tower(const std::string& id, TowerFacts facts);
    void declare_abstract(const std::string& id);
    /// Facts of the base tower of a derived id "T|F"; throws UnresolvedTowerRef.
    const TowerFacts& resolve(const std::string& id) const;
    bool contains(const std::string& id) const;

private:
    std::map<std::string, TowerFacts> towers_;
};

/// Facts evaluated on a materialized window.
TowerFacts facts_from_window(const TowerWindow& w);

/// Registers "A" (stages) and "A'" (prime part). Without primes the tower is
/// the untruncated one over all primes.
void register_theorem1(TowerRegistry& reg, const std::optional<std::vector<Integer>>& primes = std::nullopt);

struct TraceStep {
    std::string rule;
    std::string citation;
    std::string subterm;
    std::string result; // verdict, or the rewritten term
};

struct Judgment {
    enum class Verdict { Cotorsion, NotCotorsion, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::vector<TraceStep> trace;

    std::vector<std::string> rules() const;
};

std::string to_string(Judgment::Verdict v);

struct JudgeOptions {
    std::set<std::string> disabled;
    bool enabled(const std::string& rule) const { return !disabled.count(rule); }
};

/// Rule ids in search order.
const std::vector<std::string>& rule_ids();
std::string rule_citation(const std::string& rule);

/// Top-down derivation; throws UnresolvedTowerRef.
Judgment judge(const GroupTerm& t, const TowerRegistry& reg, const JudgeOptions& opts = {});

/// Replays the trace from `t` step by step without searching.
bool check_trace(const GroupTerm& t, const Judgment& j, const TowerRegistry& reg,
                 const JudgeOptions& opts = {});

std::optional<Integer> bounded_certificate(const GroupTerm& t);
bool reduced_unbounded_certificate(const GroupTerm& t);

/// The goal term derive_theorem1 judges for the current registration.
TermPtr theorem1_goal(const TowerRegistry& reg);
Judgment derive_theorem1(const TowerRegistry& reg, const JudgeOptions& opts = {});
TermPtr theorem3_goal(const std::string& tower, int part);
/// Throws HypothesisViolation when the tower is not surjective.
Judgment derive_theorem3(const TowerRegistry& reg, const std::string& tower, int part,
                         const JudgeOptions& opts = {});

nlohmann::json to_json(const Judgment& j);

} // namespace abelim
