#include "abelim/cotorsion.hpp"

#include "abelim/errors.hpp"
#include "abelim/tower.hpp"

#include <algorithm>

namespace abelim {

namespace {

using K = GroupTerm::Kind;
using V = Judgment::Verdict;

std::string base_id(const std::string& id) { return id.substr(0, id.find('|')); }

bool has_suffix(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_cyclic_arg(const std::string& arg) { return arg.size() > 2 && arg.compare(0, 2, "Z/") == 0; }

std::optional<Integer> concrete_modulus(const std::string& arg)
{
    if (!is_cyclic_arg(arg))
        return std::nullopt;
    std::string digits = arg.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        return std::nullopt;
    return Integer(digits);
}

bool right_exact(const FunctorRef& f)
{
    if (f.name == "tensor" || f.name == "lambda")
        return true;
    if (f.name == "homology")
        return f.arg == "0" || f.arg == "1" || f.arg == "2";
    return false;
}

// Generic stage of a tower id, when its facts pin one down.
std::optional<TermPtr> stage_term(const std::string& id, const TowerRegistry& reg)
{
    const TowerFacts& f = reg.resolve(id);
    // Tor(A_i, A_i) is killed by the torsion exponent of A_i.
    if (id == base_id(id) + "|tor_diag" && f.torsion_exponent)
        return bounded(*f.torsion_exponent);
    if (id == base_id(id) && f.stages_finite && f.torsion_exponent)
        return bounded(*f.torsion_exponent);
    return std::nullopt;
}

// Single-step rewrites shared by search and replay.
std::optional<TermPtr> rewrite(const std::string& rule, const GroupTerm& t, const TowerRegistry& reg)
{
    if (rule == "RW1") {
        if (t.kind == K::KerComparison && t.functor.name == "tensor" && is_cyclic_arg(t.functor.arg)) {
            reg.resolve(t.tower);
            return tensor_kernel_rewrite(t);
        }
        if (t.kind == K::SumFamily && t.children[0]->kind == K::KerComparison) {
            const GroupTerm& body = *t.children[0];
            if (body.functor.name == "tensor" && is_cyclic_arg(body.functor.arg)) {
                reg.resolve(body.tower);
                return sum_family(tensor_kernel_rewrite(body), t.index);
            }
        }
        return std::nullopt;
    }
    if (rule == "R7a") {
        if (t.kind != K::SumFamily || t.index.kind != IndexSet::Kind::AllPrimes)
            return std::nullopt;
        const GroupTerm& body = *t.children[0];
        if (body.kind != K::Lim1 || !has_suffix(body.tower, "|tor(Z/" + t.var + ")"))
            return std::nullopt;
        if (body.tower != base_id(body.tower) + "|tor(Z/" + t.var + ")")
            return std::nullopt;
        if (!reg.resolve(body.tower).lim1_tor_prime_nonzero)
            return std::nullopt;
        return reduced_unbounded(0);
    }
    if (t.kind != K::CokerComparison)
        return std::nullopt;
    const TowerFacts& facts = reg.resolve(t.tower);
    if (rule == "LEDGER") {
        if (!facts.surjective || !right_exact(t.functor))
            return std::nullopt;
        return lim1(t.tower + "|phi(" + t.functor.to_string() + ")");
    }
    if (rule == "BREEN") {
        if (!facts.surjective || t.functor.name != "homology" || t.functor.arg != "3")
            return std::nullopt;
        return extension(coker_cmp({"lambda", "3"}, t.tower), coker_cmp({"l1lambda2", ""}, t.tower));
    }
    if (rule == "TIMES2") {
        if (!facts.surjective || t.functor.name != "l1lambda2")
            return std::nullopt;
        return retract(coker_cmp({"tor_diag", ""}, t.tower), 2);
    }
    if (rule == "IMAGE")
        return quotient_of(lim(t.tower + "|" + t.functor.to_string()));
    return std::nullopt;
}

bool is_rewrite(const std::string& rule)
{
    return rule == "RW1" || rule == "R7a" || rule == "LEDGER" || rule == "BREEN" || rule == "TIMES2" ||
           rule == "IMAGE";
}

// Premises (subterm, required verdict) of a closure rule, or nullopt if the
// rule does not match. Terminal rules have no premises.
struct Match {
    V verdict;
    std::vector<std::pair<TermPtr, V>> premises;
};

std::optional<Match> closure(const std::string& rule, const GroupTerm& t, const TowerRegistry& reg)
{
    if (rule == "R1" && t.kind == K::Lim1) {
        reg.resolve(t.tower);
        return Match{V::Cotorsion, {}};
    }
    if (rule == "R2" && bounded_certificate(t))
        return Match{V::Cotorsion, {}};
    if (rule == "R7" && reduced_unbounded_certificate(t))
        return Match{V::NotCotorsion, {}};
    if (rule == "R3" && t.kind == K::Extension)
        return Match{V::Cotorsion, {{t.children[0], V::Cotorsion}, {t.children[1], V::Cotorsion}}};
    if (rule == "R4" && t.kind == K::Lim) {
        if (auto s = stage_term(t.tower, reg))
            return Match{V::Cotorsion, {{*s, V::Cotorsion}}};
        return std::nullopt;
    }
    if (rule == "R5" && t.kind == K::QuotientOf)
        return Match{V::Cotorsion, {{t.children[0], V::Cotorsion}}};
    if (rule == "R6" && t.kind == K::RetractTimesN)
        return Match{V::Cotorsion, {{t.children[0], V::Cotorsion}}};
    if (rule == "R8" && t.kind == K::SummandOf)
        return Match{V::NotCotorsion, {{t.children[0], V::NotCotorsion}}};
    return std::nullopt;
}

class Search {
public:
    Search(const TowerRegistry& reg, const JudgeOptions& opts) : reg_(reg), opts_(opts) {}

    // Steps of a derivation of t, verdict first; nullopt when nothing applies.
    std::optional<std::pair<V, std::vector<TraceStep>>> derive(const TermPtr& t)
    {
        const std::string key = t->to_string();
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        auto result = search(t);
        memo_.emplace(key, result);
        return result;
    }

private:
    const TowerRegistry& reg_;
    const JudgeOptions& opts_;
    std::map<std::string, std::optional<std::pair<V, std::vector<TraceStep>>>> memo_;

    std::optional<std::pair<V, std::vector<TraceStep>>> search(const TermPtr& t)
    {
        const std::string text = t->to_string();
        for (const auto& rule : rule_ids()) {
            if (!opts_.enabled(rule))
                continue;
            if (is_rewrite(rule)) {
                auto next = rewrite(rule, *t, reg_);
                if (!next)
                    continue;
                auto sub = derive(*next);
                if (!sub)
                    continue;
                std::vector<TraceStep> steps{{rule, rule_citation(rule), text, (*next)->to_string()}};
                steps.insert(steps.end(), sub->second.begin(), sub->second.end());
                return std::make_pair(sub->first, std::move(steps));
            }
            auto m = closure(rule, *t, reg_);
            if (!m)
                continue;
            std::vector<TraceStep> steps{{rule, rule_citation(rule), text, to_string(m->verdict)}};
            bool ok = true;
            for (const auto& [p, want] : m->premises) {
                auto sub = derive(p);
                if (!sub || sub->first != want) {
                    ok = false;
                    break;
                }
                steps.insert(steps.end(), sub->second.begin(), sub->second.end());
            }
            if (ok)
                return std::make_pair(m->verdict, std::move(steps));
        }
        return std::nullopt;
    }
};

// Replays steps[pos...] as a derivation of t with verdict `want`.
class Replay {
public:
    Replay(const std::vector<TraceStep>& steps, const TowerRegistry& reg, const JudgeOptions& opts)
        : steps_(steps), reg_(reg), opts_(opts)
    {
    }

    bool run(const TermPtr& t, V want) { return check(t, want) && pos_ == steps_.size(); }

private:
    const std::vector<TraceStep>& steps_;
    const TowerRegistry& reg_;
    const JudgeOptions& opts_;
    std::size_t pos_ = 0;

    bool check(const TermPtr& t, V want)
    {
        if (pos_ >= steps_.size())
            return false;
        const TraceStep& s = steps_[pos_++];
        const std::string text = t->to_string();
        if (s.subterm != text || !opts_.enabled(s.rule) || s.citation != rule_citation(s.rule))
            return false;
        // The recorded subterm must survive a round trip through the term language.
        if (parse_term(s.subterm)->to_string() != text)
            return false;
        if (is_rewrite(s.rule)) {
            auto next = rewrite(s.rule, *t, reg_);
            if (!next || (*next)->to_string() != s.result)
                return false;
            return check(parse_term(s.result), want);
        }
        auto m = closure(s.rule, *t, reg_);
        if (!m || m->verdict != want || s.result != to_string(want))
            return false;
        for (const auto& [p, v] : m->premises)
            if (!check(p, v))
                return false;
        return true;
    }
};

} // namespace

void TowerRegistry::register_tower(const std::string& id, TowerFacts facts)
{
    if (id.empty() || id.find_first_of("|,() ") != std::string::npos)
        throw ConfigError("tower ids must be nonempty and free of '|', ',', parentheses and spaces");
    towers_[id] = std::move(facts);
}

void TowerRegistry::declare_abstract(const std::string& id)
{
    TowerFacts f;
    f.abstract = true;
    register_tower(id, f);
}

const TowerFacts& TowerRegistry::resolve(const std::string& id) const
{
    auto it = towers_.find(base_id(id));
    if (it == towers_.end())
        throw UnresolvedTowerRef("tower \"" + base_id(id) + "\" is neither registered nor abstract");
    return it->second;
}

bool TowerRegistry::contains(const std::string& id) const { return towers_.count(base_id(id)) > 0; }

TowerFacts facts_from_window(const TowerWindow& w)
{
    TowerFacts f;
    f.surjective = w.all_surjective();
    f.stages_finite = std::all_of(w.stages.begin(), w.stages.end(), [](const Presentation& s) { return s.is_finite(); });
    Integer e = 1;
    for (const auto& s : w.stages)
        if (auto b = exponent_bound(s))
            e = lcm(e, *b);
    f.torsion_exponent = e;
    return f;
}

void register_theorem1(TowerRegistry& reg, const std::optional<std::vector<Integer>>& primes)
{
    TowerFacts a;
    a.surjective = true;
    a.kunneth_factor = "A'";
    IndexSet idx;
    TowerFacts prime_part;
    prime_part.surjective = true;
    if (primes) {
        idx.kind = IndexSet::Kind::Finite;
        idx.values = *primes;
        Integer e = 1;
        for (const auto& p : *primes)
            e = lcm(e, p);
        a.torsion_exponent = e;
        prime_part.torsion_exponent = e;
    } else {
        idx.kind = IndexSet::Kind::AllPrimes;
        prime_part.lim1_tor_prime_nonzero = true;
    }
    a.kunneth_primes = idx;
    reg.register_tower("A", a);
    reg.register_tower("A'", prime_part);
}

std::vector<std::string> Judgment::rules() const
{
    std::vector<std::string> out;
    for (const auto& s : trace)
        out.push_back(s.rule);
    return out;
}

std::string to_string(Judgment::Verdict v)
{
    switch (v) {
    case V::Cotorsion:
        return "Cotorsion";
    case V::NotCotorsion:
        return "NotCotorsion";
    case V::Unknown:
        return "Unknown";
    }
    return "";
}

const std::vector<std::string>& rule_ids()
{
    static const std::vector<std::string> ids = {"R1", "R2",  "R7",     "R7a",   "R8",     "RW1",    "R3",
                                                 "R4", "R5",  "R6",     "LEDGER", "BREEN", "TIMES2", "IMAGE"};
    return ids;
}

std::string rule_citation(const std::string& rule)
{
    static const std::map<std::string, std::string> text = {
        {"R1", "lim^1 of a tower of abelian groups is cotorsion"},
        {"R2", "a torsion group of bounded exponent is cotorsion"},
        {"R3", "an extension of a cotorsion group by a cotorsion group is cotorsion"},
        {"R4", "an inverse limit of cotorsion groups is cotorsion"},
        {"R5", "a quotient of a cotorsion group is cotorsion"},
        {"R6", "A is cotorsion when A -> C -> A composes to n times the identity and C is cotorsion"},
        {"R7", "a reduced torsion group of unbounded exponent is not cotorsion"},
        {"R7a", "each lim^1 Tor(A_i, Z/p) is a nonzero reduced p-group, so their sum over all primes is reduced "
                "of unbounded exponent"},
        {"R8", "a group with a non-cotorsion direct summand is not cotorsion"},
        {"RW1", "ker[(lim A_i) (x) Z/p -> lim(A_i (x) Z/p)] is isomorphic to lim^1 Tor(A_i, Z/p)"},
        {"LEDGER", "for a surjective tower and a functor preserving surjections, the comparison cokernel is lim^1 "
                   "of Phi_i = ker[F(lim A_i) -> F(A_i)]"},
        {"BREEN", "0 -> Lambda^3 -> H_3 -> L_1 Lambda^2 -> 0 makes the H_3 cokernel an extension of the Lambda^3 "
                  "and L_1 Lambda^2 cokernels"},
        {"TIMES2", "L_1 Lambda^2 -> Tor(A, A) -> L_1 Lambda^2 composes to multiplication by 2"},
        {"IMAGE", "the comparison cokernel is a quotient of lim F(A_i)"},
    };
    auto it = text.find(rule);
    return it == text.end() ? "" : it->second;
}

std::optional<Integer> bounded_certificate(const GroupTerm& t)
{
    switch (t.kind) {
    case K::BoundedTorsion:
        return t.n;
    case K::FG:
        if (!t.cf.is_finite())
            return std::nullopt;
        return t.cf.invariant_factors.empty() ? Integer(1) : t.cf.invariant_factors.back();
    case K::KerComparison:
        // a subgroup of (lim A_i) (x) Z/n
        if (t.functor.name == "tensor")
            return concrete_modulus(t.functor.arg);
        return std::nullopt;
    case K::SumFamily: {
        if (t.index.kind == IndexSet::Kind::Finite) {
            Integer e = 1;
            for (const auto& v : t.index.values) {
                auto b = bounded_certificate(*instantiate(t.children[0], t.var, v));
                if (!b)
                    return std::nullopt;
                e = lcm(e, *b);
            }
            return e;
        }
        // Over an infinite index the body must not depend on the index.
        if (instantiate(t.children[0], t.var, 2)->to_string() != t.children[0]->to_string())
            return std::nullopt;
        return bounded_certificate(*t.children[0]);
    }
    default:
        return std::nullopt;
    }
}

bool reduced_unbounded_certificate(const GroupTerm& t)
{
    if (t.kind == K::ReducedUnboundedTorsion)
        return true;
    return t.kind == K::SumFamily && t.index.kind != IndexSet::Kind::Finite &&
           t.children[0]->kind == K::IndexCyclic && t.children[0]->var == t.var;
}

Judgment judge(const GroupTerm& t, const TowerRegistry& reg, const JudgeOptions& opts)
{
    Search search(reg, opts);
    auto root = std::make_shared<GroupTerm>(t);
    Judgment j;
    if (auto d = search.derive(root)) {
        j.verdict = d->first;
        j.trace = std::move(d->second);
    }
    return j;
}

bool check_trace(const GroupTerm& t, const Judgment& j, const TowerRegistry& reg, const JudgeOptions& opts)
{
    if (j.verdict == V::Unknown)
        return j.trace.empty();
    try {
        return Replay(j.trace, reg, opts).run(std::make_shared<GroupTerm>(t), j.verdict);
    } catch (const Error&) {
        return false;
    }
}

TermPtr theorem1_goal(const TowerRegistry& reg)
{
    const TowerFacts& a = reg.resolve("A");
    if (!a.kunneth_primes || a.kunneth_factor.empty())
        throw HypothesisViolation("tower \"A\" carries no tensor-block splitting");
    TermPtr block = sum_family(ker_cmp({"tensor", "Z/p"}, a.kunneth_factor), *a.kunneth_primes);
    if (a.kunneth_primes->kind == IndexSet::Kind::Finite)
        return block;
    return summand_of(block);
}

Judgment derive_theorem1(const TowerRegistry& reg, const JudgeOptions& opts)
{
    return judge(*theorem1_goal(reg), reg, opts);
}

TermPtr theorem3_goal(const std::string& tower, int part)
{
    if (part != 1 && part != 2)
        throw ConfigError("theorem3 part must be 1 or 2");
    return coker_cmp({"homology", part == 1 ? "2" : "3"}, tower);
}

Judgment derive_theorem3(const TowerRegistry& reg, const std::string& tower, int part, const JudgeOptions& opts)
{
    TermPtr goal = theorem3_goal(tower, part);
    if (!reg.resolve(tower).surjective)
        throw HypothesisViolation("tower \"" + tower + "\" is not registered as surjective");
    return judge(*goal, reg, opts);
}

nlohmann::json to_json(const Judgment& j)
{
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& s : j.trace)
        trace.push_back({{"rule", s.rule}, {"citation", s.citation}, {"subterm", s.subterm}, {"result", s.result}});
    return {{"verdict", to_string(j.verdict)}, {"trace", trace}};
}

} // namespace abelim
