#include "support.hpp"

#include "abelim/cli.hpp"
#include "abelim/errors.hpp"
#include "abelim/group_expr.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace abelim;
using nlohmann::json;
using testing::cf;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json cli_json(std::vector<std::string> args, int expect_code)
{
    args.push_back("--json");
    Run r = cli(args);
    CHECK(r.code == expect_code);
    return json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& content)
{
    auto path = std::filesystem::temp_directory_path() / ("abelim_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

// Invariant factors of a direct sum of cyclic groups via prime-power splitting.
std::vector<long> invariant_factors_of(std::vector<long> orders)
{
    std::map<long, std::vector<long>> by_prime;
    for (long m : orders)
        for (long p = 2; m > 1; ++p) {
            long q = 1;
            while (m % p == 0) {
                m /= p;
                q *= p;
            }
            if (q > 1)
                by_prime[p].push_back(q);
        }
    std::size_t len = 0;
    for (auto& [p, v] : by_prime) {
        std::sort(v.begin(), v.end(), std::greater<>());
        len = std::max(len, v.size());
    }
    std::vector<long> out(len, 1);
    for (auto& [p, v] : by_prime)
        for (std::size_t k = 0; k < v.size(); ++k)
            out[len - 1 - k] *= v[k];
    return out;
}

} // namespace

TEST_CASE("parse_group_expr examples")
{
    CHECK(parse_group_expr("Z^2 + Z/4").canonical_form() == cf(2, {4}));
    CHECK(parse_group_expr("Z/2 + Z/3").canonical_form() == cf(0, {6}));
    CHECK(parse_group_expr("Z/1").canonical_form().is_trivial());
    CHECK(parse_group_expr("0").canonical_form().is_trivial());
    CHECK(parse_group_expr("Z/2^3").canonical_form() == cf(0, {2, 2, 2}));
    try {
        parse_group_expr("Z/");
        FAIL("no ParseError");
    } catch (const ParseError& e) {
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_group_expr("Z/0"), ZeroModulus);
    CHECK_THROWS_AS(parse_group_expr(""), ParseError);
    CHECK_THROWS_AS(parse_group_expr("Z + "), ParseError);
    CHECK_THROWS_AS(parse_group_expr("Q"), ParseError);
}

TEST_CASE("property: group expressions canonicalize like prime-power splitting")
{
    std::mt19937_64 rng(31);
    for (int k = 0; k < 300; ++k) {
        std::vector<long> orders;
        std::string text;
        std::size_t free = rng() % 3;
        for (std::size_t i = 0; i < free; ++i)
            text += (text.empty() ? "" : " + ") + std::string("Z");
        std::size_t n = rng() % 5;
        for (std::size_t i = 0; i < n; ++i) {
            long m = 1 + static_cast<long>(rng() % 36);
            orders.push_back(m);
            text += (text.empty() ? "" : " + ") + std::string("Z/") + std::to_string(m);
        }
        if (text.empty())
            text = "0";
        CAPTURE(text);
        CanonicalForm c = parse_group_expr(text).canonical_form();
        CHECK(c == cf(free, invariant_factors_of(orders)));
        // parse -> print -> parse
        std::string printed = format_group(c);
        CHECK(parse_group_expr(printed).canonical_form() == c);
        CHECK(format_group(parse_group_expr(printed)) == printed);
    }
}

TEST_CASE("functor labels")
{
    CHECK(parse_functor_label("tensor(Z/4)").label() == "tensor(Z/4)");
    CHECK(parse_functor_label(" homology(3) ").label() == "homology(3)");
    CHECK(parse_functor_label("l1lambda2").label() == "l1lambda2");
    CHECK(parse_functor_label("tor(Z/2 + Z/2)").apply(Presentation::cyclic(2)).canonical_form() == cf(0, {2, 2}));
    CHECK_THROWS_AS(parse_functor_label("lambda"), ParseError);
    CHECK_THROWS_AS(parse_functor_label("frob(2)"), ParseError);
    CHECK_THROWS_AS(parse_functor_label("tensor(Z/0)"), ZeroModulus);
}

TEST_CASE("cli examples")
{
    json h = cli_json({"hom", "--n", "2", "Z/2+Z/2"}, exit_pass);
    CHECK(h["result"]["H2"]["rank"] == 0);
    CHECK(h["result"]["H2"]["factors"] == json::array({2}));
    CHECK(h["status"] == "pass");

    std::string times2 = temp_file("times2.json", R"({"stages": {"kind": "recipe", "name": "times2"}, "window": 4})");
    json t = cli_json({"tower", "check", "--spec", times2, "--window", "10"}, exit_undetermined);
    CHECK(t["result"]["ml"]["kind"] == "NotStabilizedWithinWindow");
    CHECK(t["result"]["window"] == 10);

    json th1 = cli_json({"paper", "theorem1", "--symbolic"}, exit_pass);
    CHECK(th1["result"]["symbolic"]["verdict"] == "NotCotorsion");
    CHECK(th1["result"]["symbolic"]["trace"].size() == 4);
    CHECK(th1["result"]["symbolic"]["trace_valid"] == true);

    json tr = cli_json({"paper", "theorem1", "--primes", "2,3", "--truncation", "5", "--window", "4"}, exit_pass);
    CHECK(tr["result"]["truncated"]["verdict"] == "Cotorsion");
    CHECK(tr["result"]["lim1"] == "Zero(all evaluated maps surjective)");

    json snf = cli_json({"snf", "[[2,4],[6,8]]"}, exit_pass);
    CHECK(snf["result"]["elementary_divisors"] == json::array({2, 4}));

    json bar = cli_json({"oracle", "bar", "--n", "3", "Z/2+Z/2"}, exit_pass);
    CHECK(bar["result"]["agree"] == true);
    CHECK(bar["result"]["bar"]["factors"] == json::array({2, 2, 2}));

    json f = cli_json({"functor", "lambda(2)", "Z/4 + Z/6"}, exit_pass);
    CHECK(f["result"]["output"]["factors"] == json::array({2}));

    json z = cli_json({"cotorsion", "judge", "Z"}, exit_undetermined);
    CHECK(z["result"]["verdict"] == "Unknown");
    CHECK(z["result"]["trace"].empty());
    json p1 = cli_json({"cotorsion", "judge", "coker_cmp(homology(2), S)", "--surjective", "S"}, exit_pass);
    CHECK(p1["result"]["trace"][0]["rule"] == "LEDGER");
    cli_json({"cotorsion", "judge", "sum_p(ker_cmp(tensor(Z/p), A'))", "--disable", "RW1"}, exit_undetermined);
}

TEST_CASE("cli exit codes for bad input")
{
    CHECK(cli({"canon", "Z/"}).code == exit_config);
    CHECK(cli({"canon", "Z/0"}).code == exit_config);
    CHECK(cli({"hom", "--bogus", "Z"}).code == exit_config);
    CHECK(cli({}).code == exit_config);
    CHECK(cli({"tower", "check", "--spec", "/nonexistent/t.json"}).code == exit_config);
    CHECK(cli({"cotorsion", "judge", "lim1(X)"}).code == exit_config);
    CHECK(cli({"cotorsion", "judge", "Z", "--disable", "R99"}).code == exit_config);
    CHECK(cli({"oracle", "bar", "--n", "4", "--budget", "100", "Z/4"}).code == exit_config);
    CHECK(cli({"paper", "theorem1", "--primes", "4"}).code == exit_config);

    std::string bad = temp_file("bad.json", R"({"stages": {"kind": "recipe", "name": "times2"}, "colour": 1})");
    CHECK(cli({"tower", "check", "--spec", bad, "--window", "4"}).code == exit_config);

    // a surjectivity claim contradicted by computation is a verification failure
    std::string lie = temp_file("lie.json", R"({"stages": {"kind": "recipe", "name": "times2"}, "surjective": true})");
    Run r = cli({"tower", "check", "--spec", lie, "--window", "4", "--json"});
    CHECK(r.code == exit_failure);
    CHECK(json::parse(r.out)["result"]["error"]["kind"] == "ClaimViolation");

    CHECK(cli({"--help"}).code == exit_pass);
}

TEST_CASE("cli reports are deterministic and text is derived from json")
{
    std::string z = temp_file("z24.json", R"({"stages": {"kind": "explicit", "list": ["Z/2", "Z/2", "Z/4"]},
        "window": 5, "surjective": true, "eventually_constant_at": 3,
        "declared_limit": {"group": "Z/4", "proj": "identity"}, "functor": {"functor": "homology", "n": 2}})");
    const std::vector<std::vector<std::string>> commands = {
        {"tower", "compare", "--spec", z},
        {"paper", "theorem3", "--spec", z},
        {"cotorsion", "judge", "coker_cmp(homology(3), W)", "--spec", "W=" + z},
        {"suite", "run", "--only", "7,9", "--seed", "5"},
    };
    for (auto args : commands) {
        CAPTURE(args[0]);
        Run a = cli(args);
        Run b = cli(args);
        CHECK(a.code == exit_pass);
        CHECK(a.out == b.out);
        args.push_back("--json");
        Run j = cli(args);
        CHECK(j.code == a.code);
        CHECK(render_text(json::parse(j.out)) == a.out);
    }
    json w = cli_json({"cotorsion", "judge", "coker_cmp(homology(3), W)", "--spec", "W=" + z}, exit_pass);
    CHECK(w["result"]["trace"].size() == 10);

    // the digest tracks input content, not just the path
    std::string path = temp_file("digest.json", R"({"stages": {"kind": "recipe", "name": "times2"}})");
    std::string d1 = cli_json({"tower", "check", "--spec", path, "--window", "4"}, exit_undetermined)["input_digest"];
    temp_file("digest.json", R"({"stages": {"kind": "recipe", "name": "times2"}, "window": 4})");
    std::string d2 = cli_json({"tower", "check", "--spec", path, "--window", "4"}, exit_undetermined)["input_digest"];
    CHECK(d1 != d2);
}
