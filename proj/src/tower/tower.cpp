#include "abelim/tower.hpp"

#include "abelim/errors.hpp"

#include <algorithm>

namespace abelim {

namespace {

bool same_shape(const Presentation& a, const Presentation& b)
{
    return a.gens() == b.gens() && a.relations() == b.relations();
}

std::string stage_name(const char* what, std::size_t i) { return std::string(what) + "(" + std::to_string(i) + ")"; }

} // namespace

bool TowerWindow::all_surjective() const
{
    for (const auto& f : maps)
        if (!f.is_surjective())
            return false;
    return true;
}

TowerWindow materialize(const TowerSpec& spec, std::size_t N)
{
    if (N < 2)
        throw ConfigError("window must contain at least two stages");
    if (!spec.stage || !spec.map)
        throw ConfigError("tower spec needs stage and map recipes");
    TowerWindow w;
    w.spec = spec;
    w.N = N;
    for (std::size_t i = 1; i <= N; ++i)
        w.stages.push_back(spec.stage(i));
    for (std::size_t i = 1; i < N; ++i) {
        Homomorphism f = spec.map(i);
        if (!same_shape(f.source(), w.stage(i + 1)) || !same_shape(f.target(), w.stage(i)))
            throw ConfigError(stage_name("map", i) + " does not go from stage(i+1) to stage(i)");
        w.maps.push_back(std::move(f));
    }
    for (std::size_t i = 1; i < N; ++i) {
        if (spec.surjective_claimed && !w.map(i).is_surjective())
            throw ClaimViolation(stage_name("map", i) + " is not surjective");
        if (spec.eventually_constant_at && i >= *spec.eventually_constant_at && !w.map(i).is_isomorphism())
            throw ClaimViolation(stage_name("map", i) + " is not an isomorphism");
    }
    if (spec.declared_limit) {
        const auto& lim = *spec.declared_limit;
        if (!lim.proj)
            throw LimitNotValidated("declared limit has no projections");
        for (std::size_t i = 1; i <= N; ++i) {
            Homomorphism p = lim.proj(i);
            if (!same_shape(p.source(), lim.group) || !same_shape(p.target(), w.stage(i)))
                throw LimitNotValidated(stage_name("proj", i) + " does not go from the limit to stage(i)");
            w.proj.push_back(std::move(p));
        }
        for (std::size_t i = 1; i < N; ++i)
            if (!w.proj[i - 1].equals(compose(w.map(i), w.proj[i])))
                throw LimitNotValidated(stage_name("proj", i) + " differs from map(i) after proj(i+1)");
    }
    return w;
}

Homomorphism composite(const TowerWindow& w, std::size_t j, std::size_t i)
{
    Homomorphism c = Homomorphism::identity(w.stage(j));
    for (std::size_t k = j; k > i; --k)
        c = compose(w.map(k - 1), c);
    return c;
}

std::string MLVerdict::to_string() const
{
    switch (kind) {
    case Kind::Stabilized:
        return "Stabilized(" + std::to_string(index) + ")";
    case Kind::NotStabilizedWithinWindow:
        return "NotStabilizedWithinWindow";
    case Kind::NotApplicable:
        return "NotApplicable";
    }
    return "";
}

std::string Lim1Certificate::to_string() const
{
    switch (kind) {
    case Kind::Zero:
        return "Zero(" + reason + ")";
    case Kind::CotorsionOnly:
        return "CotorsionOnly(" + reason + ")";
    case Kind::Undetermined:
        return "Undetermined";
    }
    return "";
}

namespace {

struct ChainData {
    std::vector<std::vector<CanonicalForm>> forms;
    std::vector<std::size_t> stable_from; // k_i: chain at i constant for j >= k_i
};

ChainData image_chains(const std::vector<Presentation>& stages, const std::vector<Homomorphism>& maps)
{
    const std::size_t N = stages.size();
    ChainData out;
    for (std::size_t i = 1; i <= N; ++i) {
        std::vector<Homomorphism> images;
        std::vector<CanonicalForm> forms;
        Homomorphism c = Homomorphism::identity(stages[i - 1]);
        for (std::size_t j = i; j <= N; ++j) {
            if (j > i)
                c = compose(c, maps[j - 2]);
            ImageResult im = image(c);
            forms.push_back(im.group.canonical_form());
            images.push_back(im.inclusion);
        }
        std::size_t k = N;
        while (k > i && same_subgroup(images[k - 1 - i], images[k - i]))
            --k;
        out.forms.push_back(std::move(forms));
        out.stable_from.push_back(k);
    }
    return out;
}

MLVerdict verdict_from(const std::vector<std::size_t>& stable_from, std::size_t N, std::size_t s_min)
{
    MLVerdict v;
    if (N <= s_min)
        return v;
    std::size_t k = 1;
    for (std::size_t i = 1; i <= N; ++i)
        if (stable_from[i - 1] > i)
            k = std::max(k, stable_from[i - 1]);
    if (k + s_min <= N) {
        v.kind = MLVerdict::Kind::Stabilized;
        v.index = k;
    } else {
        v.kind = MLVerdict::Kind::NotStabilizedWithinWindow;
    }
    return v;
}

} // namespace

MLVerdict ml_verdict_of(const std::vector<Presentation>& stages, const std::vector<Homomorphism>& maps,
                        std::size_t s_min)
{
    return verdict_from(image_chains(stages, maps).stable_from, stages.size(), s_min);
}

MLVerdict ml_verdict(const TowerWindow& w, std::size_t s_min) { return ml_verdict_of(w.stages, w.maps, s_min); }

TowerReport check_tower(const TowerWindow& w, std::size_t s_min)
{
    TowerReport r;
    bool all_finite = true;
    for (const auto& s : w.stages) {
        r.stage_forms.push_back(s.canonical_form());
        all_finite = all_finite && s.is_finite();
    }
    for (const auto& f : w.maps)
        r.surjective.push_back(f.is_surjective());
    ChainData chains = image_chains(w.stages, w.maps);
    r.image_chains = std::move(chains.forms);
    r.ml = verdict_from(chains.stable_from, w.N, s_min);
    if (w.spec.eventually_constant_at && *w.spec.eventually_constant_at + s_min <= w.N)
        r.window_limit = w.stage(*w.spec.eventually_constant_at);

    bool all_surjective = std::all_of(r.surjective.begin(), r.surjective.end(), [](bool b) { return b; });
    bool stabilized = r.ml.kind == MLVerdict::Kind::Stabilized;
    if (all_surjective)
        r.lim1 = {Lim1Certificate::Kind::Zero, "all evaluated maps surjective"};
    else if (stabilized && all_finite)
        r.lim1 = {Lim1Certificate::Kind::Zero, "Mittag-Leffler within window on finite stages"};
    else if (stabilized)
        r.lim1 = {Lim1Certificate::Kind::CotorsionOnly, "Mittag-Leffler within window on infinite stages"};
    return r;
}

TowerReport check_tower(const TowerSpec& spec, std::size_t N, std::size_t s_min)
{
    return check_tower(materialize(spec, N), s_min);
}

TowerSpec apply_functor(const TowerSpec& spec, const FunctorTag& f)
{
    TowerSpec out;
    out.name = f.label() + "(" + spec.name + ")";
    auto stage = spec.stage;
    auto map = spec.map;
    out.stage = [stage, f](std::size_t i) { return f.apply(stage(i)); };
    out.map = [map, f](std::size_t i) { return f.apply(map(i)); };
    out.surjective_claimed = spec.surjective_claimed && f.right_exact();
    out.eventually_constant_at = spec.eventually_constant_at;
    if (spec.declared_limit) {
        auto proj = spec.declared_limit->proj;
        out.declared_limit = DeclaredLimit{f.apply(spec.declared_limit->group),
                                           [proj, f](std::size_t i) { return f.apply(proj(i)); }};
    }
    return out;
}

} // namespace abelim
