#pragma once

#include "abelim/functors.hpp"
#include "abelim/homomorphism.hpp"
#include "abelim/terms.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace abelim {

struct DeclaredLimit {
    Presentation group;
    /// i -> (group -> stage(i))
    std::function<Homomorphism(std::size_t)> proj;
};

/// Inverse system over i >= 1 given by recipes; map(i) goes stage(i+1) -> stage(i).
struct TowerSpec {
    std::string name;
    std::function<Presentation(std::size_t)> stage;
    std::function<Homomorphism(std::size_t)> map;
    bool surjective_claimed = false;
    std::optional<std::size_t> eventually_constant_at;
    std::optional<DeclaredLimit> declared_limit;
};

/// Stages 1..N materialized; index k of `stages` holds stage(k+1) and
/// maps[k] is map(k+1). All claims of the spec are verified on this range.
struct TowerWindow {
    TowerSpec spec;
    std::size_t N = 0;
    std::vector<Presentation> stages;
    std::vector<Homomorphism> maps;
    std::vector<Homomorphism> proj; // empty without a declared limit

    const Presentation& stage(std::size_t i) const { return stages.at(i - 1); }
    const Homomorphism& map(std::size_t i) const { return maps.at(i - 1); }
    bool has_limit() const { return spec.declared_limit.has_value(); }
    const Presentation& limit() const { return spec.declared_limit->group; }
    bool all_surjective() const;
};

/// Throws ClaimViolation or LimitNotValidated when a claim fails on 1..N.
TowerWindow materialize(const TowerSpec& spec, std::size_t N);

/// Composite stage(j) -> stage(i) for i <= j within the window.
Homomorphism composite(const TowerWindow& w, std::size_t j, std::size_t i);

struct MLVerdict {
    enum class Kind { Stabilized, NotStabilizedWithinWindow, NotApplicable };
    Kind kind = Kind::NotApplicable;
    std::size_t index = 0;
    std::string to_string() const;
};

struct Lim1Certificate {
    enum class Kind { Zero, CotorsionOnly, Undetermined };
    Kind kind = Kind::Undetermined;
    std::string reason;
    std::string to_string() const;
};

struct TowerReport {
    std::vector<CanonicalForm> stage_forms;
    std::vector<bool> surjective; // per map(i), i = 1..N-1
    /// image_chains[i-1][j-i] = Im(stage(j) -> stage(i)), j = i..N
    std::vector<std::vector<CanonicalForm>> image_chains;
    MLVerdict ml;
    std::optional<Presentation> window_limit;
    Lim1Certificate lim1;
};

constexpr std::size_t default_stability_margin = 3;

MLVerdict ml_verdict(const TowerWindow& w, std::size_t s_min = default_stability_margin);
/// Same verdict for stages[k] = stage(k+1) and maps[k]: stage(k+2) -> stage(k+1).
MLVerdict ml_verdict_of(const std::vector<Presentation>& stages, const std::vector<Homomorphism>& maps,
                        std::size_t s_min = default_stability_margin);
TowerReport check_tower(const TowerWindow& w, std::size_t s_min = default_stability_margin);
TowerReport check_tower(const TowerSpec& spec, std::size_t N, std::size_t s_min = default_stability_margin);

/// Stages F(A_i), maps F(f_i), declared limit (F(L), F(proj_i)).
TowerSpec apply_functor(const TowerSpec& spec, const FunctorTag& f);

struct StageComparison {
    Homomorphism eta;         // F(L) -> F(A_i)
    KernelResult phi;         // ker eta
    ImageResult psi;          // im eta
    CokernelResult coker;     // coker eta
    std::optional<Homomorphism> phi_connecting; // phi_{i+1} -> phi_i, absent at i = N
    bool exact_at_phi = false;
    bool exact_at_middle = false;
    bool exact_at_psi = false;
    bool exact() const { return exact_at_phi && exact_at_middle && exact_at_psi; }
};

struct ComparisonReport {
    FunctorTag functor;
    std::vector<StageComparison> stages;
    Presentation kernel_of_eta_window;
    /// Against F(A_N) when the F-tower is eventually constant within the window.
    std::optional<Presentation> coker_of_eta_window;
    bool kernel_matches_phi_limit = false;
    bool cokernels_trivial = false; // every stagewise Coker[F(L) -> F(A_i)]
    MLVerdict ml_verdict;           // of the tower of Phi_i
    bool ledger_exact() const;
};

/// Requires a declared limit; throws LimitNotValidated otherwise.
ComparisonReport comparison_map(const TowerWindow& w, const FunctorTag& f,
                                std::size_t s_min = default_stability_margin);

/// ker(X -> prod_{i<=N} Y_i) for the maps eta_i.
Presentation eta_window_kernel(const Presentation& source, const std::vector<Homomorphism>& etas);

struct InjectivityVerdict {
    bool pass = false;
    bool maps_surjective = false;
    CanonicalForm kernel;
};

InjectivityVerdict statement2_check(const Presentation& b, const TowerWindow& w);
/// Tor(L, L) -> prod Tor(A_i, A_i).
InjectivityVerdict corollary5_check(const TowerWindow& w);
/// Throws HypothesisViolation when B, L or a stage has torsion.
InjectivityVerdict statement4_check(const Presentation& b, const TowerWindow& w);
/// H_n computed as Lambda^n; throws HypothesisViolation on torsion.
InjectivityVerdict theorem2_check(const TowerWindow& w, std::size_t n);

struct Theorem3Report {
    ComparisonReport h2;
    std::optional<ComparisonReport> h3; // absent when skipped
    std::string h3_note;
    bool maps_surjective = false;
    bool lambda3_maps_surjective = false;
    std::optional<Integer> exponent_bound; // lcm of torsion exponents over the window
    /// H_2 is right exact on surjective towers, so its cokernels are checked
    /// stagewise and against the window limit when the window reaches it.
    bool h2_trivial() const;
    /// Only the window-limit cokernel speaks for H_3; nullopt when H_3 was
    /// skipped or the window ends before the tower turns constant.
    std::optional<bool> h3_trivial() const;
    bool cokernels_trivial() const { return h2_trivial() && h3_trivial().value_or(true); }
    bool determined() const { return h3_trivial().has_value(); }
};

/// The H_3 part is skipped when `with_h3` is false; it throws
/// UnsupportedInducedMap on maps that are not blockwise.
Theorem3Report theorem3_check(const TowerWindow& w, bool with_h3 = true);

/// Z^i + (Z/p)^(M-i), generators in index order j = 1..M.
Presentation theorem1_prime_stage(const Integer& p, std::size_t M, std::size_t i);
/// The unwindowed recipe behind theorem1_construction.
TowerSpec theorem1_spec(const std::vector<Integer>& primes, std::size_t M);
/// Stages (sum_p A'_{i,p}) + B with B = sum_p Z/p; constant Z^(M|P|) + B from
/// stage M on, declared limit Z^(M|P|) + B. Requires N < M and P nonempty.
TowerWindow theorem1_construction(const std::vector<Integer>& primes, std::size_t M, std::size_t N);
/// Generator count of the A' part of a theorem1 stage.
inline std::size_t theorem1_prime_gens(const std::vector<Integer>& primes, std::size_t M) { return primes.size() * M; }

struct KunnethSplitReport {
    std::vector<bool> forms_equal;      // H_2(A_i) vs Lambda^2(A') + Lambda^2(B) + A' (x) B
    std::vector<bool> block_diagonal;   // bonding maps and eta respect the three blocks
    std::vector<bool> b_block_iso;      // the Lambda^2(B) block is an isomorphism
    bool pass() const;
};

KunnethSplitReport kunneth_split_check(const TowerWindow& w, const std::vector<Integer>& primes, std::size_t M);

/// ker_cmp(tensor(Z/p), T) -> lim1(T|tor(Z/p)); throws ShapeMismatch.
TermPtr tensor_kernel_rewrite(const GroupTerm& t);

/// F(prod_{i<=N} Y_i) -> F(prod_{i<=n} Y_i) surjective, for n = 1..N.
std::vector<bool> product_retract_check(const std::vector<Presentation>& ys, const FunctorTag& f);

struct RandomTowerOptions {
    std::size_t max_rank = 3;
    long max_factor = 16;
    bool torsion_free = false;
    std::size_t max_constant_at = 4;
};

/// Eventually constant, surjective, with declared limit stage(k).
TowerSpec random_tower(std::mt19937_64& rng, const RandomTowerOptions& opts = {});

/// Tower-spec JSON (stages recipe or explicit list, window, claims, declared limit).
/// Throws ConfigError.
struct TowerFile {
    TowerSpec spec;
    std::size_t window = 0;
    std::optional<FunctorTag> functor;
};
TowerFile tower_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TowerReport& r);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const InjectivityVerdict& v);
nlohmann::json to_json(const Theorem3Report& r);
nlohmann::json to_json(const KunnethSplitReport& r);

} // namespace abelim
