#include "abelim/cli.hpp"

#include "abelim/bar.hpp"
#include "abelim/cotorsion.hpp"
#include "abelim/errors.hpp"
#include "abelim/group_expr.hpp"
#include "abelim/smith.hpp"
#include "abelim/suite.hpp"
#include "abelim/tower.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace abelim {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex(std::uint64_t v)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return "";
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_size(const std::string& s, const std::string& what)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError(what + " must be a nonnegative integer, got \"" + s + "\"");
    return std::stoul(s);
}

std::vector<Integer> parse_primes(const std::string& s)
{
    std::vector<Integer> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        Integer p(static_cast<unsigned long>(parse_size(item, "prime")));
        if (mpz_probab_prime_p(p.get_mpz_t(), 25) == 0)
            throw ConfigError(item + " is not a prime");
        out.push_back(p);
    }
    if (out.empty())
        throw ConfigError("--primes needs at least one prime");
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(what + " is not valid JSON: " + e.what());
    }
}

IntMatrix parse_matrix(const std::string& text)
{
    json j = parse_json(text, "matrix");
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw ConfigError("matrix must be a nonempty JSON array of rows");
    const std::size_t cols = j[0].size();
    IntMatrix m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ConfigError("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) {
            const json& x = j[r][c];
            if (x.is_number_integer())
                m(r, c) = Integer(std::to_string(x.get<long long>()));
            else if (x.is_string())
                m(r, c) = Integer(x.get<std::string>());
            else
                throw ConfigError("matrix entries must be integers");
        }
    }
    return m;
}

json integers(const std::vector<Integer>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
    return a;
}

json matrix_json(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<Integer> row;
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(integers(row));
    }
    return rows;
}

// Outcome of one command: result payload plus exit code.
struct Outcome {
    json result;
    int code = exit_pass;
};

const char* status_of(int code)
{
    switch (code) {
    case exit_pass:
        return "pass";
    case exit_failure:
        return "fail";
    case exit_undetermined:
        return "undetermined";
    default:
        return "error";
    }
}

struct TowerInput {
    TowerFile file;
    std::size_t window = 0;
    std::string text;
};

TowerInput load_tower(const std::string& path, std::size_t window_flag)
{
    TowerInput t;
    t.text = read_file(path);
    t.file = tower_from_json(parse_json(t.text, path));
    t.window = window_flag ? window_flag : t.file.window;
    if (t.window == 0)
        throw ConfigError("no window: pass --window or set \"window\" in the spec");
    return t;
}

Outcome cmd_snf(const std::string& text)
{
    IntMatrix m = parse_matrix(text);
    SmithForm s = smith_normal_form(m);
    Outcome o;
    o.result = {{"D", matrix_json(s.D)},
                {"U", matrix_json(s.U)},
                {"V", matrix_json(s.V)},
                {"elementary_divisors", integers(elementary_divisors(m))}};
    return o;
}

Outcome cmd_canon(const std::string& text)
{
    Outcome o;
    o.result = to_json(parse_group_expr(text).canonical_form());
    return o;
}

Outcome cmd_functor(const std::string& label, const std::string& text)
{
    FunctorTag f = parse_functor_label(label);
    Presentation a = parse_group_expr(text);
    Outcome o;
    o.result = {{"functor", f.label()}, {"input", to_json(a.canonical_form())}, {"output", to_json(f.apply(a).canonical_form())}};
    return o;
}

Outcome cmd_hom(std::size_t n, const std::string& text)
{
    Presentation a = parse_group_expr(text);
    Outcome o;
    o.result = {{"H" + std::to_string(n), to_json(homology_group(a, n).canonical_form())}};
    return o;
}

Outcome cmd_bar(std::size_t n, const std::string& text, std::uint64_t budget)
{
    Presentation a = parse_group_expr(text);
    if (!a.is_finite())
        throw ConfigError("the bar oracle needs a finite group, got " + format_group(a));
    BarOptions bo;
    bo.budget = budget;
    CanonicalForm bar = bar_homology(FiniteGroupTable::from_presentation(a), n, bo);
    CanonicalForm kunneth = homology_group(a, n).canonical_form();
    Outcome o;
    o.result = {{"n", n}, {"bar", to_json(bar)}, {"kunneth", to_json(kunneth)}, {"agree", bar == kunneth}};
    o.code = bar == kunneth ? exit_pass : exit_failure;
    return o;
}

Outcome cmd_tower_check(const TowerInput& t)
{
    TowerReport r = check_tower(t.file.spec, t.window);
    Outcome o;
    o.result = to_json(r);
    o.result["window"] = t.window;
    bool settled = r.ml.kind == MLVerdict::Kind::Stabilized && r.lim1.kind != Lim1Certificate::Kind::Undetermined;
    o.code = settled ? exit_pass : exit_undetermined;
    return o;
}

Outcome cmd_tower_compare(const TowerInput& t, const std::string& functor_flag)
{
    std::optional<FunctorTag> f = t.file.functor;
    if (!functor_flag.empty())
        f = parse_functor_label(functor_flag);
    if (!f)
        throw ConfigError("no functor: pass --functor or set \"functor\" in the spec");
    TowerWindow w = materialize(t.file.spec, t.window);
    ComparisonReport r = comparison_map(w, *f);
    Outcome o;
    o.result = to_json(r);
    o.result["window"] = t.window;
    o.code = r.ledger_exact() ? exit_pass : exit_failure;
    return o;
}

json judged(const GroupTerm& goal, const Judgment& j, const TowerRegistry& reg, const JudgeOptions& opts)
{
    json out = to_json(j);
    out["term"] = goal.to_string();
    out["trace_valid"] = check_trace(goal, j, reg, opts);
    return out;
}

Outcome cmd_theorem1(bool symbolic, const std::vector<Integer>& primes, std::size_t M, std::size_t N)
{
    Outcome o;
    if (symbolic) {
        TowerRegistry reg;
        register_theorem1(reg);
        Judgment j = derive_theorem1(reg);
        o.result = {{"symbolic", judged(*theorem1_goal(reg), j, reg, {})}};
        bool ok = j.verdict == Judgment::Verdict::NotCotorsion && o.result["symbolic"]["trace_valid"].get<bool>();
        o.code = ok ? exit_pass : (j.verdict == Judgment::Verdict::Unknown ? exit_undetermined : exit_failure);
        return o;
    }
    TowerWindow w = theorem1_construction(primes, M, N);
    json tor_checks = json::array();
    bool ok = true;
    for (std::size_t i = 1; i <= N; ++i)
        for (const auto& p : primes) {
            CanonicalForm got = tor(theorem1_prime_stage(p, M, i), Presentation::cyclic(p)).canonical_form();
            bool pass = got.is_finite() && got.invariant_factors.size() == M - i &&
                        std::all_of(got.invariant_factors.begin(), got.invariant_factors.end(),
                                    [&](const Integer& d) { return d == p; });
            ok = ok && pass;
            tor_checks.push_back({{"stage", i}, {"p", p.get_si()}, {"tor", to_json(got)}, {"pass", pass}});
        }
    KunnethSplitReport k = kunneth_split_check(w, primes, M);
    TowerReport tr = check_tower(w);
    bool surj = std::all_of(tr.surjective.begin(), tr.surjective.end(), [](bool b) { return b; });
    bool lim1_zero = tr.lim1.kind == Lim1Certificate::Kind::Zero;

    TowerRegistry reg;
    register_theorem1(reg, primes);
    Judgment j = derive_theorem1(reg);
    json engine = judged(*theorem1_goal(reg), j, reg, {});
    bool engine_ok = j.verdict == Judgment::Verdict::Cotorsion && engine["trace_valid"].get<bool>();

    ok = ok && k.pass() && surj && lim1_zero && engine_ok;
    o.result = {{"primes", integers(primes)},
                {"truncation", M},
                {"window", N},
                {"tor_identities", tor_checks},
                {"kunneth_split", to_json(k)},
                {"maps_surjective", surj},
                {"lim1", tr.lim1.to_string()},
                {"truncated", engine}};
    o.code = ok ? exit_pass : exit_failure;
    return o;
}

Outcome cmd_theorem3(const TowerWindow& w, bool with_h3)
{
    Theorem3Report r = theorem3_check(w, with_h3);
    TowerRegistry reg;
    reg.register_tower("W", facts_from_window(w));
    Outcome o;
    o.result = {{"report", to_json(r)}};
    bool ok = r.cokernels_trivial();
    if (!r.maps_surjective) {
        o.result["engine"] = "bonding maps are not surjective";
        o.code = exit_failure;
        return o;
    }
    for (int part : {1, 2}) {
        Judgment j = derive_theorem3(reg, "W", part);
        json e = judged(*theorem3_goal("W", part), j, reg, {});
        ok = ok && j.verdict == Judgment::Verdict::Cotorsion && e["trace_valid"].get<bool>();
        o.result["part" + std::to_string(part)] = e;
    }
    if (!ok)
        o.code = exit_failure;
    else
        o.code = !with_h3 || r.determined() ? exit_pass : exit_undetermined;
    return o;
}

struct JudgeFlags {
    std::vector<std::string> abstract_ids, surjective_ids, bounded, specs, disabled;
    std::string primes;
};

Outcome cmd_judge(const std::string& text, const JudgeFlags& flags)
{
    TowerRegistry reg;
    if (flags.primes.empty())
        register_theorem1(reg);
    else
        register_theorem1(reg, parse_primes(flags.primes));
    std::map<std::string, TowerFacts> facts;
    for (const auto& id : flags.abstract_ids)
        facts[id].abstract = true;
    for (const auto& id : flags.surjective_ids)
        facts[id].surjective = true;
    auto split = [](const std::string& s, const std::string& what) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
            throw ConfigError(what + " expects ID=VALUE, got \"" + s + "\"");
        return std::make_pair(s.substr(0, eq), s.substr(eq + 1));
    };
    for (const auto& b : flags.bounded) {
        auto [id, n] = split(b, "--bounded");
        facts[id].torsion_exponent = Integer(static_cast<unsigned long>(parse_size(n, "exponent")));
    }
    for (const auto& s : flags.specs) {
        auto [id, path] = split(s, "--spec");
        TowerInput t = load_tower(path, 0);
        facts[id] = facts_from_window(materialize(t.file.spec, t.window));
    }
    for (auto& [id, f] : facts)
        reg.register_tower(id, f);

    JudgeOptions opts;
    for (const auto& r : flags.disabled) {
        if (std::find(rule_ids().begin(), rule_ids().end(), r) == rule_ids().end())
            throw ConfigError("unknown rule " + r);
        opts.disabled.insert(r);
    }
    TermPtr t = parse_term(text);
    Judgment j = judge(*t, reg, opts);
    Outcome o;
    o.result = judged(*t, j, reg, opts);
    if (j.verdict == Judgment::Verdict::Unknown)
        o.code = exit_undetermined;
    else
        o.code = o.result["trace_valid"].get<bool>() ? exit_pass : exit_failure;
    return o;
}

Outcome cmd_suite(std::uint64_t seed, const std::string& only)
{
    SuiteOptions opts;
    opts.seed = seed;
    if (!only.empty()) {
        std::stringstream ss(only);
        std::string item;
        while (std::getline(ss, item, ','))
            opts.only.insert(static_cast<int>(parse_size(trim(item), "criterion id")));
    }
    json rows = json::array();
    bool all = true;
    for (const auto& r : run_acceptance(opts)) {
        rows.push_back(to_json(r));
        all = all && r.pass;
    }
    Outcome o;
    o.result = {{"seed", seed}, {"criteria", rows}};
    o.code = all ? exit_pass : exit_failure;
    return o;
}

void render(const json& j, const std::string& prefix, std::ostringstream& os)
{
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            render(v, prefix.empty() ? k : prefix + "." + k, os);
        return;
    }
    if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i)
            render(j[i], prefix + "[" + std::to_string(i) + "]", os);
        return;
    }
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

} // namespace

FunctorTag parse_functor_label(std::string_view text)
{
    std::string s = trim(text);
    std::string name = s, arg;
    if (auto open = s.find('('); open != std::string::npos) {
        if (s.back() != ')')
            throw ParseError("functor label must end with ')'", s.size());
        name = s.substr(0, open);
        arg = trim(s.substr(open + 1, s.size() - open - 2));
    }
    auto need_n = [&] {
        if (arg.empty())
            throw ParseError("functor " + name + " needs a degree", name.size() + 2);
        return parse_size(arg, name + " degree");
    };
    if (name == "tensor" || name == "tor") {
        if (arg.empty())
            throw ParseError("functor " + name + " needs a group", name.size() + 2);
        parse_group_expr(arg);
        return name == "tensor" ? FunctorTag::tensor_with(arg) : FunctorTag::tor_with(arg);
    }
    if (name == "lambda")
        return FunctorTag::lambda(need_n());
    if (name == "homology")
        return FunctorTag::homology(need_n());
    if (name == "l1lambda2" && arg.empty())
        return FunctorTag::l1lambda2();
    throw ParseError("unknown functor \"" + s + "\"", 1);
}

std::string render_text(const json& j)
{
    std::ostringstream os;
    render(j, "", os);
    return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact homology of finitely generated abelian groups, towers and cotorsion judgments", "abelim"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit the JSON report")->configurable(false);
    app.set_version_flag("--version", tool_version);

    std::string text, label, spec_path, functor_flag, primes_flag = "2,3,5", only;
    std::size_t n = 2, window = 0, truncation = 8;
    std::uint64_t budget = BarOptions{}.budget;
    std::optional<std::uint64_t> seed;
    bool symbolic = false, skip_h3 = false;
    JudgeFlags jf;

    auto* snf = app.add_subcommand("snf", "Smith normal form of a JSON integer matrix");
    snf->add_option("matrix", text, "e.g. [[2,4],[6,8]]")->required();

    auto* canon = app.add_subcommand("canon", "Canonical form of a group expression");
    canon->add_option("group", text, "e.g. Z^2 + Z/4")->required();

    auto* functor = app.add_subcommand("functor", "Apply a functor to a group");
    functor->add_option("functor", label, "tensor(G), tor(G), lambda(n), l1lambda2, homology(n)")->required();
    functor->add_option("group", text)->required();

    auto* hom = app.add_subcommand("hom", "Integral homology H_n of a group");
    hom->add_option("--n", n, "degree")->default_val(2);
    hom->add_option("group", text)->required();

    auto* oracle = app.add_subcommand("oracle", "Brute-force oracles");
    oracle->require_subcommand(1);
    auto* bar = oracle->add_subcommand("bar", "H_n of a finite group from the bar complex");
    bar->add_option("--n", n, "degree")->default_val(2);
    bar->add_option("--budget", budget, "cap on |A|^(n+1)");
    bar->add_option("group", text)->required();

    auto* tower = app.add_subcommand("tower", "Tower checks");
    tower->require_subcommand(1);
    auto* tcheck = tower->add_subcommand("check", "Surjectivity, Mittag-Leffler and lim1 certificate");
    tcheck->add_option("--spec", spec_path, "tower spec JSON file")->required();
    tcheck->add_option("--window", window, "number of stages");
    auto* tcompare = tower->add_subcommand("compare", "Comparison map F(lim A_i) -> F(A_i)");
    tcompare->add_option("--spec", spec_path, "tower spec JSON file")->required();
    tcompare->add_option("--window", window, "number of stages");
    tcompare->add_option("--functor", functor_flag, "overrides the spec's functor");

    auto* paper = app.add_subcommand("paper", "Replays of the headline statements");
    paper->require_subcommand(1);
    auto* th1 = paper->add_subcommand("theorem1", "Truncated counterexample tower, or the symbolic verdict");
    th1->add_flag("--symbolic", symbolic, "judge the untruncated object");
    th1->add_option("--primes", primes_flag, "comma-separated primes");
    th1->add_option("--truncation", truncation, "M");
    th1->add_option("--window", window, "N < M (default M - 2)");
    auto* th3 = paper->add_subcommand("theorem3", "H_2 and H_3 comparison cokernels");
    th3->add_option("--spec", spec_path, "tower spec JSON file (default: the truncated theorem1 tower)");
    th3->add_option("--primes", primes_flag, "comma-separated primes");
    th3->add_option("--truncation", truncation, "M");
    th3->add_option("--window", window, "number of stages");
    th3->add_flag("--skip-h3", skip_h3, "only H_2");

    auto* cot = app.add_subcommand("cotorsion", "Cotorsion engine");
    cot->require_subcommand(1);
    auto* jd = cot->add_subcommand("judge", "Judge a term such as summand_of(sum_p(ker_cmp(tensor(Z/p), A')))");
    jd->add_option("term", text)->required();
    jd->add_option("--abstract", jf.abstract_ids, "declare an abstract tower id");
    jd->add_option("--surjective", jf.surjective_ids, "register a surjective tower id");
    jd->add_option("--bounded", jf.bounded, "ID=N: stages have torsion exponent dividing N");
    jd->add_option("--spec", jf.specs, "ID=FILE: register facts of a tower spec window");
    jd->add_option("--primes", jf.primes, "register A, A' truncated to these primes");
    jd->add_option("--disable", jf.disabled, "rule ids to withdraw")->delimiter(',');

    auto* suite = app.add_subcommand("suite", "Acceptance suites");
    suite->require_subcommand(1);
    auto* srun = suite->add_subcommand("run", "Run criteria 1-9");
    srun->add_option("--seed", seed, "seed for randomized suites (default ABELIM_SEED)");
    srun->add_option("--only", only, "comma-separated criterion ids");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << "\n";
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "abelim: " << e.what() << "\n";
        return exit_config;
    }

    std::string command, digest_input;
    for (const auto& a : args)
        if (a != "--json")
            digest_input += a + '\0';

    Outcome o;
    try {
        if (snf->parsed()) {
            command = "snf";
            o = cmd_snf(text);
        } else if (canon->parsed()) {
            command = "canon";
            o = cmd_canon(text);
        } else if (functor->parsed()) {
            command = "functor";
            o = cmd_functor(label, text);
        } else if (hom->parsed()) {
            command = "hom";
            o = cmd_hom(n, text);
        } else if (bar->parsed()) {
            command = "oracle bar";
            o = cmd_bar(n, text, budget);
        } else if (tcheck->parsed() || tcompare->parsed()) {
            TowerInput t = load_tower(spec_path, window);
            digest_input += t.text;
            command = tcheck->parsed() ? "tower check" : "tower compare";
            o = tcheck->parsed() ? cmd_tower_check(t) : cmd_tower_compare(t, functor_flag);
        } else if (th1->parsed()) {
            command = "paper theorem1";
            std::size_t N = window ? window : (truncation >= 2 ? truncation - 2 : 0);
            o = cmd_theorem1(symbolic, symbolic ? std::vector<Integer>{} : parse_primes(primes_flag), truncation, N);
        } else if (th3->parsed()) {
            command = "paper theorem3";
            if (!spec_path.empty()) {
                TowerInput t = load_tower(spec_path, window);
                digest_input += t.text;
                o = cmd_theorem3(materialize(t.file.spec, t.window), !skip_h3);
            } else {
                std::size_t N = window ? window : (truncation >= 2 ? truncation - 2 : 0);
                o = cmd_theorem3(theorem1_construction(parse_primes(primes_flag), truncation, N), !skip_h3);
            }
        } else if (jd->parsed()) {
            command = "cotorsion judge";
            for (const auto& s : jf.specs)
                if (auto eq = s.find('='); eq != std::string::npos)
                    digest_input += read_file(s.substr(eq + 1));
            o = cmd_judge(text, jf);
        } else if (srun->parsed()) {
            command = "suite run";
            std::uint64_t s = default_suite_seed;
            if (seed)
                s = *seed;
            else if (const char* env = std::getenv("ABELIM_SEED"))
                s = parse_size(env, "ABELIM_SEED");
            o = cmd_suite(s, only);
        }
    } catch (const Error& e) {
        bool config = dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ZeroModulus*>(&e) ||
                      dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const UnresolvedTowerRef*>(&e) ||
                      dynamic_cast<const BudgetExceeded*>(&e) || dynamic_cast<const ShapeMismatch*>(&e);
        o.code = config ? exit_config : exit_failure;
        o.result = {{"error", {{"kind", e.kind()}, {"message", e.what()}}}};
        err << "abelim: " << e.kind() << ": " << e.what() << "\n";
    }

    json report = {{"tool", tool_version},
                   {"command", command},
                   {"input_digest", "fnv1a64:" + hex(fnv1a(digest_input))},
                   {"status", status_of(o.code)},
                   {"exit_code", o.code},
                   {"result", o.result}};
    if (as_json)
        out << report.dump(2) << "\n";
    else
        out << render_text(report);
    return o.code;
}

} // namespace abelim
