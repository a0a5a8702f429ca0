#include "abelim/tower.hpp"

#include "abelim/errors.hpp"
#include "abelim/group_expr.hpp"

#include <algorithm>

namespace abelim {

namespace {

FunctorTag with_group(FunctorTag::Kind kind, const Presentation& b)
{
    FunctorTag f;
    f.kind = kind;
    f.with = b;
    f.with_text = format_group(b);
    return f;
}

void require_limit(const TowerWindow& w)
{
    if (!w.has_limit() || w.proj.size() != w.N)
        throw LimitNotValidated("comparison needs a validated declared limit");
}

InjectivityVerdict injectivity(const TowerWindow& w, const Presentation& source, const std::vector<Homomorphism>& etas)
{
    InjectivityVerdict v;
    v.maps_surjective = w.all_surjective();
    v.kernel = eta_window_kernel(source, etas).canonical_form();
    v.pass = v.kernel.is_trivial();
    return v;
}

void require_torsion_free(const Presentation& a, const std::string& what)
{
    if (!a.is_torsion_free())
        throw HypothesisViolation(what + " has torsion: " + format_group(a));
}

void require_torsion_free_window(const TowerWindow& w)
{
    require_torsion_free(w.limit(), "declared limit");
    for (std::size_t i = 1; i <= w.N; ++i)
        require_torsion_free(w.stage(i), "stage " + std::to_string(i));
}

} // namespace

bool ComparisonReport::ledger_exact() const
{
    return kernel_matches_phi_limit &&
           std::all_of(stages.begin(), stages.end(), [](const StageComparison& s) { return s.exact(); });
}

Presentation eta_window_kernel(const Presentation& source, const std::vector<Homomorphism>& etas)
{
    return kernel(stacked(source, etas)).group;
}

ComparisonReport comparison_map(const TowerWindow& w, const FunctorTag& f, std::size_t s_min)
{
    require_limit(w);
    ComparisonReport r;
    r.functor = f;
    const Presentation fl = f.apply(w.limit());
    std::vector<Homomorphism> etas;
    for (std::size_t i = 1; i <= w.N; ++i) {
        Homomorphism eta = f.apply(w.proj[i - 1]);
        KernelResult phi = kernel(eta);
        ImageResult psi = image(eta);
        CokernelResult coker = cokernel(eta);
        StageComparison s{eta, phi, psi, coker, std::nullopt, false, false, false};
        // 0 -> Phi -> F(L) -> Psi -> 0 and 0 -> Psi -> F(A_i) -> Coker -> 0
        s.exact_at_phi = phi.inclusion.is_injective() && compose(eta, phi.inclusion).is_zero();
        s.exact_at_middle = same_subgroup(phi.inclusion, kernel(psi.corestriction).inclusion);
        s.exact_at_psi = psi.corestriction.is_surjective() && psi.inclusion.is_injective() &&
                         same_subgroup(psi.inclusion, kernel(coker.projection).inclusion);
        r.stages.push_back(std::move(s));
        etas.push_back(std::move(eta));
    }

    // Phi_{i+1} sits inside Phi_i because eta_i = F(f_i) eta_{i+1}.
    for (std::size_t i = 1; i < w.N; ++i) {
        const auto& lower = r.stages[i - 1].phi;
        const auto& upper = r.stages[i].phi;
        PreimageSolver solver(lower.inclusion);
        IntMatrix m(lower.group.gens(), upper.group.gens());
        bool ok = true;
        for (std::size_t c = 0; c < upper.group.gens() && ok; ++c) {
            auto x = solver.solve(upper.inclusion.matrix().column(c));
            if (x)
                m.set_column(c, *x);
            ok = x.has_value();
        }
        if (ok)
            r.stages[i - 1].phi_connecting = Homomorphism(upper.group, lower.group, std::move(m));
        else
            r.stages[i - 1].exact_at_phi = false;
    }

    KernelResult joint = kernel(stacked(fl, etas));
    r.kernel_of_eta_window = joint.group;
    r.kernel_matches_phi_limit = same_subgroup(joint.inclusion, r.stages.back().phi.inclusion);
    if (w.spec.eventually_constant_at && *w.spec.eventually_constant_at <= w.N)
        r.coker_of_eta_window = r.stages.back().coker.group;
    r.cokernels_trivial = std::all_of(r.stages.begin(), r.stages.end(),
                                      [](const StageComparison& s) { return s.coker.group.is_trivial(); });

    std::vector<Presentation> phis;
    std::vector<Homomorphism> connecting;
    for (const auto& s : r.stages) {
        phis.push_back(s.phi.group);
        if (s.phi_connecting)
            connecting.push_back(*s.phi_connecting);
    }
    if (connecting.size() + 1 == phis.size())
        r.ml_verdict = ml_verdict_of(phis, connecting, s_min);
    return r;
}

InjectivityVerdict statement2_check(const Presentation& b, const TowerWindow& w)
{
    require_limit(w);
    FunctorTag f = with_group(FunctorTag::Kind::TorWith, b);
    std::vector<Homomorphism> etas;
    for (const auto& p : w.proj)
        etas.push_back(f.apply(p));
    return injectivity(w, f.apply(w.limit()), etas);
}

InjectivityVerdict corollary5_check(const TowerWindow& w)
{
    require_limit(w);
    std::vector<Homomorphism> etas;
    for (const auto& p : w.proj)
        etas.push_back(tor_induced(p, p));
    return injectivity(w, tor(w.limit(), w.limit()), etas);
}

InjectivityVerdict statement4_check(const Presentation& b, const TowerWindow& w)
{
    require_limit(w);
    require_torsion_free(b, "B");
    require_torsion_free_window(w);
    FunctorTag f = with_group(FunctorTag::Kind::TensorWith, b);
    std::vector<Homomorphism> etas;
    for (const auto& p : w.proj)
        etas.push_back(f.apply(p));
    return injectivity(w, f.apply(w.limit()), etas);
}

InjectivityVerdict theorem2_check(const TowerWindow& w, std::size_t n)
{
    require_limit(w);
    require_torsion_free_window(w);
    std::vector<Homomorphism> etas;
    for (const auto& p : w.proj)
        etas.push_back(lambda_induced(n, p));
    return injectivity(w, lambda(n, w.limit()), etas);
}

bool Theorem3Report::h2_trivial() const
{
    return h2.cokernels_trivial && (!h2.coker_of_eta_window || h2.coker_of_eta_window->is_trivial());
}

std::optional<bool> Theorem3Report::h3_trivial() const
{
    if (!h3 || !h3->coker_of_eta_window)
        return std::nullopt;
    return h3->coker_of_eta_window->is_trivial();
}

Theorem3Report theorem3_check(const TowerWindow& w, bool with_h3)
{
    require_limit(w);
    Theorem3Report r{comparison_map(w, FunctorTag::homology(2)), std::nullopt, "", false, true, std::nullopt};
    r.maps_surjective = w.all_surjective();
    if (with_h3)
        r.h3 = comparison_map(w, FunctorTag::homology(3));
    else
        r.h3_note = "skipped";
    for (const auto& f : w.maps)
        r.lambda3_maps_surjective = r.lambda3_maps_surjective && lambda_induced(3, f).is_surjective();
    Integer e = 1;
    for (const auto& s : w.stages)
        if (auto b = exponent_bound(s))
            e = lcm(e, *b);
    r.exponent_bound = e;
    return r;
}

std::vector<bool> product_retract_check(const std::vector<Presentation>& ys, const FunctorTag& f)
{
    std::vector<bool> out;
    if (ys.empty())
        return out;
    DirectSum top = direct_sum(ys);
    for (std::size_t n = 1; n <= ys.size(); ++n) {
        DirectSum part = direct_sum(std::vector<Presentation>(ys.begin(), ys.begin() + n));
        IntMatrix m(part.sum.gens(), top.sum.gens());
        for (std::size_t k = 0; k < part.sum.gens(); ++k)
            m(k, k) = 1;
        out.push_back(f.apply(Homomorphism(top.sum, part.sum, std::move(m))).is_surjective());
    }
    return out;
}

} // namespace abelim
