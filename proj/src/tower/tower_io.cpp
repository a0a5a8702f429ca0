#include "abelim/tower.hpp"

#include "abelim/errors.hpp"
#include "abelim/group_expr.hpp"

#include <algorithm>

namespace abelim {

namespace {

using nlohmann::json;

std::vector<long> divisors_from(long m, long lo)
{
    std::vector<long> out;
    for (long d = lo; d <= m; ++d)
        if (m % d == 0)
            out.push_back(d);
    return out;
}

template <class T>
T pick(std::mt19937_64& rng, const std::vector<T>& v)
{
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi)
{
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

IntMatrix unimodular(std::mt19937_64& rng, std::size_t n)
{
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2)
        return u;
    std::uniform_int_distribution<long> coef(-2, 2);
    for (int s = 0; s < 8; ++s) {
        std::size_t i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 1);
        if (i == j)
            continue;
        long k = coef(rng);
        for (std::size_t c = 0; c < n; ++c)
            u(i, c) += k * u(j, c);
    }
    return u;
}

TowerSpec diagonal_random(std::mt19937_64& rng, const RandomTowerOptions& o)
{
    const std::size_t r = uniform(rng, 1, o.max_rank);
    const std::size_t c = uniform(rng, 1, o.max_constant_at);
    const long m = static_cast<long>(uniform(rng, 2, static_cast<std::size_t>(o.max_factor)));
    const auto divs = divisors_from(m, 2);
    std::vector<std::vector<Integer>> orders(c);
    for (std::size_t k = 0; k < r; ++k)
        orders[c - 1].push_back(uniform(rng, 0, 3) == 0 ? Integer(0) : Integer(pick(rng, divs)));
    for (std::size_t i = c - 1; i > 0; --i)
        for (const auto& e : orders[i]) {
            if (e == 0)
                orders[i - 1].push_back(uniform(rng, 0, 2) == 0 ? Integer(0) : Integer(pick(rng, divs)));
            else
                orders[i - 1].push_back(pick(rng, divisors_from(e.get_si(), 2)));
        }
    auto stage = [orders, c](std::size_t i) { return Presentation::diagonal(orders[std::min(i, c) - 1]); };
    TowerSpec t;
    t.name = "random";
    t.stage = stage;
    t.map = [stage, r](std::size_t i) { return Homomorphism(stage(i + 1), stage(i), IntMatrix::identity(r)); };
    t.surjective_claimed = true;
    t.eventually_constant_at = c;
    t.declared_limit = DeclaredLimit{stage(c), [stage, r, c](std::size_t i) {
                                         return Homomorphism(stage(c), stage(i), IntMatrix::identity(r));
                                     }};
    return t;
}

TowerSpec free_random(std::mt19937_64& rng, const RandomTowerOptions& o)
{
    const std::size_t c = uniform(rng, 1, o.max_constant_at);
    std::vector<std::size_t> ranks(c);
    ranks[c - 1] = uniform(rng, 1, o.max_rank);
    for (std::size_t i = c - 1; i > 0; --i)
        ranks[i - 1] = uniform(rng, 1, ranks[i]);
    // maps[i-1]: Z^{ranks[i]} -> Z^{ranks[i-1]}, U [I | 0] V
    std::vector<IntMatrix> maps;
    for (std::size_t i = 1; i < c; ++i) {
        IntMatrix proj(ranks[i - 1], ranks[i]);
        for (std::size_t k = 0; k < ranks[i - 1]; ++k)
            proj(k, k) = 1;
        maps.push_back(unimodular(rng, ranks[i - 1]) * proj * unimodular(rng, ranks[i]));
    }
    std::vector<IntMatrix> projs(c);
    projs[c - 1] = IntMatrix::identity(ranks[c - 1]);
    for (std::size_t i = c - 1; i > 0; --i)
        projs[i - 1] = maps[i - 1] * projs[i];
    auto rank_at = [ranks, c](std::size_t i) { return ranks[std::min(i, c) - 1]; };
    TowerSpec t;
    t.name = "random-free";
    t.stage = [rank_at](std::size_t i) { return Presentation::free(rank_at(i)); };
    t.map = [maps, rank_at, c](std::size_t i) {
        IntMatrix m = i < c ? maps[i - 1] : IntMatrix::identity(rank_at(i));
        return Homomorphism(Presentation::free(rank_at(i + 1)), Presentation::free(rank_at(i)), std::move(m));
    };
    t.surjective_claimed = true;
    t.eventually_constant_at = c;
    Presentation top = Presentation::free(ranks[c - 1]);
    t.declared_limit = DeclaredLimit{top, [projs, rank_at, top, c](std::size_t i) {
                                         return Homomorphism(top, Presentation::free(rank_at(i)), projs[std::min(i, c) - 1]);
                                     }};
    return t;
}

Integer json_integer(const json& v)
{
    if (v.is_number_integer())
        return Integer(v.get<long>());
    if (v.is_string()) {
        try {
            return Integer(v.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw ConfigError("expected an integer, got " + v.dump());
}

IntMatrix json_matrix(const json& v)
{
    if (!v.is_array())
        throw ConfigError("matrix must be an array of rows");
    std::size_t cols = v.empty() ? 0 : v[0].size();
    IntMatrix m(v.size(), cols);
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (!v[r].is_array() || v[r].size() != cols)
            throw ConfigError("matrix rows must be arrays of equal length");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = json_integer(v[r][c]);
    }
    return m;
}

std::size_t json_size(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw ConfigError(std::string("\"") + key + "\" must be a nonnegative integer");
    return j[key].get<std::size_t>();
}

Homomorphism checked_hom(const Presentation& s, const Presentation& t, IntMatrix m, const std::string& what)
{
    if (m.rows() != t.gens() || m.cols() != s.gens())
        throw ConfigError(what + " has the wrong shape");
    try {
        return Homomorphism(s, t, std::move(m));
    } catch (const NotWellDefined&) {
        throw ConfigError(what + " does not respect the relations");
    }
}

TowerSpec explicit_tower(const json& st)
{
    if (!st.contains("list") || !st["list"].is_array() || st["list"].empty())
        throw ConfigError("explicit stages need a nonempty \"list\"");
    std::vector<Presentation> list;
    for (const auto& g : st["list"]) {
        if (!g.is_string())
            throw ConfigError("stage entries must be group expressions");
        list.push_back(parse_group_expr(g.get<std::string>()));
    }
    std::vector<IntMatrix> maps;
    if (st.contains("maps")) {
        if (!st["maps"].is_array() || st["maps"].size() + 1 != list.size())
            throw ConfigError("\"maps\" needs one matrix per consecutive pair of stages");
        for (const auto& m : st["maps"])
            maps.push_back(json_matrix(m));
    }
    const std::size_t len = list.size();
    auto stage = [list, len](std::size_t i) { return list[std::min(i, len) - 1]; };
    TowerSpec t;
    t.name = "explicit";
    t.stage = stage;
    t.map = [stage, maps, len](std::size_t i) {
        Presentation s = stage(i + 1), g = stage(i);
        IntMatrix m = (i < len && !maps.empty()) ? maps[i - 1] : IntMatrix::identity(s.gens());
        return checked_hom(s, g, std::move(m), "map(" + std::to_string(i) + ")");
    };
    return t;
}

TowerSpec recipe_tower(const json& st)
{
    if (!st.contains("name") || !st["name"].is_string())
        throw ConfigError("recipe stages need a \"name\"");
    const std::string name = st["name"];
    if (name == "theorem1") {
        if (!st.contains("primes") || !st["primes"].is_array())
            throw ConfigError("theorem1 recipe needs \"primes\"");
        std::vector<Integer> primes;
        for (const auto& p : st["primes"])
            primes.push_back(json_integer(p));
        return theorem1_spec(primes, json_size(st, "M"));
    }
    if (name == "constant") {
        if (!st.contains("group") || !st["group"].is_string())
            throw ConfigError("constant recipe needs \"group\"");
        Presentation a = parse_group_expr(st["group"].get<std::string>());
        TowerSpec t;
        t.name = "constant";
        t.stage = [a](std::size_t) { return a; };
        t.map = [a](std::size_t) { return Homomorphism::identity(a); };
        t.surjective_claimed = true;
        t.eventually_constant_at = 1;
        t.declared_limit = DeclaredLimit{a, [a](std::size_t) { return Homomorphism::identity(a); }};
        return t;
    }
    if (name == "times2") {
        TowerSpec t;
        t.name = "times2";
        t.stage = [](std::size_t) { return Presentation::free(1); };
        t.map = [](std::size_t) { return Homomorphism::scalar(Presentation::free(1), 2); };
        return t;
    }
    if (name == "random") {
        std::mt19937_64 rng(st.contains("seed") ? json_size(st, "seed") : 0);
        RandomTowerOptions o;
        if (st.contains("torsion_free"))
            o.torsion_free = st["torsion_free"].get<bool>();
        return random_tower(rng, o);
    }
    throw ConfigError("unknown tower recipe \"" + name + "\"");
}

json ml_json(const MLVerdict& v)
{
    if (v.kind == MLVerdict::Kind::Stabilized)
        return {{"kind", "Stabilized"}, {"index", v.index}};
    return {{"kind", v.to_string()}};
}

json lim1_json(const Lim1Certificate& c)
{
    static const char* names[] = {"Zero", "CotorsionOnly", "Undetermined"};
    json j = {{"kind", names[static_cast<int>(c.kind)]}};
    if (!c.reason.empty())
        j["reason"] = c.reason;
    return j;
}

json optional_cf(const std::optional<Presentation>& a)
{
    return a ? to_json(a->canonical_form()) : json(nullptr);
}

} // namespace

TowerSpec random_tower(std::mt19937_64& rng, const RandomTowerOptions& opts)
{
    if (opts.max_rank < 1 || opts.max_factor < 2 || opts.max_constant_at < 1)
        throw ConfigError("random tower options out of range");
    return opts.torsion_free ? free_random(rng, opts) : diagonal_random(rng, opts);
}

TowerFile tower_from_json(const json& j)
{
    if (!j.is_object())
        throw ConfigError("tower spec must be a JSON object");
    static const char* known[] = {"stages", "window", "surjective", "eventually_constant_at", "declared_limit",
                                  "functor"};
    for (const auto& [key, _] : j.items())
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
            std::end(known))
            throw ConfigError("unknown tower spec field \"" + key + "\"");
    if (!j.contains("stages") || !j["stages"].is_object() || !j["stages"].contains("kind"))
        throw ConfigError("tower spec needs \"stages\" with a \"kind\"");
    const json& st = j["stages"];
    TowerFile out;
    const std::string kind = st["kind"].is_string() ? st["kind"].get<std::string>() : "";
    if (kind == "recipe")
        out.spec = recipe_tower(st);
    else if (kind == "explicit")
        out.spec = explicit_tower(st);
    else
        throw ConfigError("stages kind must be \"recipe\" or \"explicit\"");

    if (j.contains("window"))
        out.window = json_size(j, "window");
    if (j.contains("surjective")) {
        if (!j["surjective"].is_boolean())
            throw ConfigError("\"surjective\" must be a boolean");
        out.spec.surjective_claimed = j["surjective"].get<bool>();
    }
    if (j.contains("eventually_constant_at")) {
        if (j["eventually_constant_at"].is_null())
            out.spec.eventually_constant_at.reset();
        else
            out.spec.eventually_constant_at = json_size(j, "eventually_constant_at");
    }
    if (j.contains("declared_limit")) {
        const json& d = j["declared_limit"];
        if (d.is_null()) {
            out.spec.declared_limit.reset();
        } else {
            if (!d.is_object() || !d.contains("group") || !d["group"].is_string())
                throw ConfigError("declared_limit needs a \"group\"");
            Presentation l = parse_group_expr(d["group"].get<std::string>());
            std::vector<IntMatrix> projs;
            if (d.contains("proj") && d["proj"].is_array()) {
                for (const auto& m : d["proj"])
                    projs.push_back(json_matrix(m));
                if (projs.empty())
                    throw ConfigError("declared_limit \"proj\" is empty");
            } else if (d.contains("proj") && d["proj"] != "identity") {
                throw ConfigError("declared_limit \"proj\" must be \"identity\" or a list of matrices");
            }
            auto stage = out.spec.stage;
            out.spec.declared_limit = DeclaredLimit{l, [l, projs, stage](std::size_t i) {
                                                        Presentation s = stage(i);
                                                        IntMatrix m = projs.empty()
                                                                          ? IntMatrix::identity(l.gens())
                                                                          : projs[std::min(i, projs.size()) - 1];
                                                        return checked_hom(l, s, std::move(m),
                                                                           "proj(" + std::to_string(i) + ")");
                                                    }};
        }
    }
    if (j.contains("functor"))
        out.functor = functor_from_json(j["functor"]);
    return out;
}

json to_json(const TowerReport& r)
{
    json stages = json::array(), surj = json::array(), chains = json::array();
    for (const auto& cf : r.stage_forms)
        stages.push_back(to_json(cf));
    for (bool b : r.surjective)
        surj.push_back(b);
    for (const auto& chain : r.image_chains) {
        json c = json::array();
        for (const auto& cf : chain)
            c.push_back(cf.to_string());
        chains.push_back(c);
    }
    return {{"stages", stages},
            {"surjective", surj},
            {"image_chains", chains},
            {"ml", ml_json(r.ml)},
            {"window_limit", optional_cf(r.window_limit)},
            {"lim1", lim1_json(r.lim1)}};
}

json to_json(const ComparisonReport& r)
{
    json stages = json::array();
    for (const auto& s : r.stages)
        stages.push_back({{"phi", to_json(s.phi.group.canonical_form())},
                          {"psi", to_json(s.psi.group.canonical_form())},
                          {"coker", to_json(s.coker.group.canonical_form())},
                          {"exact", {{"phi", s.exact_at_phi}, {"middle", s.exact_at_middle}, {"psi", s.exact_at_psi}}}});
    json f;
    to_json(f, r.functor);
    return {{"functor", f},
            {"stages", stages},
            {"kernel_of_eta_window", to_json(r.kernel_of_eta_window.canonical_form())},
            {"coker_of_eta_window", optional_cf(r.coker_of_eta_window)},
            {"kernel_matches_phi_limit", r.kernel_matches_phi_limit},
            {"cokernels_trivial", r.cokernels_trivial},
            {"ledger_exact", r.ledger_exact()},
            {"ml_verdict", ml_json(r.ml_verdict)}};
}

json to_json(const InjectivityVerdict& v)
{
    return {{"pass", v.pass}, {"maps_surjective", v.maps_surjective}, {"kernel", to_json(v.kernel)}};
}

json to_json(const Theorem3Report& r)
{
    json j = {{"h2", to_json(r.h2)},
              {"maps_surjective", r.maps_surjective},
              {"lambda3_maps_surjective", r.lambda3_maps_surjective},
              {"h2_cokernels_trivial", r.h2_trivial()},
              {"h3_window_cokernel_trivial", r.h3_trivial() ? json(*r.h3_trivial()) : json("undetermined")},
              {"cokernels_trivial", r.cokernels_trivial()}};
    j["h3"] = r.h3 ? to_json(*r.h3) : json(r.h3_note);
    j["exponent_bound"] = r.exponent_bound ? json(abelim::to_string(*r.exponent_bound)) : json(nullptr);
    return j;
}

json to_json(const KunnethSplitReport& r)
{
    return {{"forms_equal", r.forms_equal},
            {"block_diagonal", r.block_diagonal},
            {"b_block_iso", r.b_block_iso},
            {"pass", r.pass()}};
}

} // namespace abelim
