#include "abelim/terms.hpp"

#include "abelim/errors.hpp"
#include "abelim/group_expr.hpp"

#include <cctype>

namespace abelim {

namespace {

using K = GroupTerm::Kind;

std::shared_ptr<GroupTerm> make(K kind)
{
    auto t = std::make_shared<GroupTerm>();
    t->kind = kind;
    return t;
}

std::string index_text(const IndexSet& idx)
{
    std::string s;
    for (std::size_t k = 0; k < idx.values.size(); ++k) {
        if (k)
            s += ",";
        s += abelim::to_string(idx.values[k]);
    }
    return s;
}

// Replaces "Z/<var>" when not followed by an identifier character.
std::string substitute(const std::string& text, const std::string& var, const std::string& value)
{
    const std::string pat = "Z/" + var;
    std::string out;
    std::size_t pos = 0;
    for (;;) {
        std::size_t hit = text.find(pat, pos);
        if (hit == std::string::npos)
            break;
        std::size_t end = hit + pat.size();
        bool boundary = end == text.size() || !(std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_');
        out += text.substr(pos, hit - pos);
        out += boundary ? "Z/" + value : pat;
        pos = end;
    }
    out += text.substr(pos);
    return out;
}

class TermParser {
public:
    explicit TermParser(std::string_view text) : s_(text) {}

    TermPtr run()
    {
        TermPtr t = term();
        skip();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return t;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c)
    {
        if (!peek(c))
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string ident()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    // Raw text up to the next ',' or ')' at parenthesis depth zero.
    std::pair<std::string, std::size_t> raw_argument()
    {
        skip();
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '(')
                ++depth;
            else if (c == ')') {
                if (depth == 0)
                    break;
                --depth;
            } else if (c == ',' && depth == 0)
                break;
            ++pos_;
        }
        std::string text(s_.substr(start, pos_ - start));
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
            text.pop_back();
        if (text.empty())
            fail("empty argument");
        return {text, start};
    }

    Integer number()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    FunctorRef functor()
    {
        FunctorRef f;
        f.name = ident();
        static const char* known[] = {"tensor", "tor", "lambda", "l1lambda2", "homology", "tor_diag"};
        bool ok = false;
        for (const char* k : known)
            ok = ok || f.name == k;
        if (!ok)
            fail("unknown functor \"" + f.name + "\"");
        if (peek('(')) {
            ++pos_;
            f.arg = raw_argument().first;
            expect(')');
        }
        return f;
    }

    TermPtr group_expr()
    {
        auto [text, start] = raw_argument();
        if (text.size() > 2 && text[0] == 'Z' && text[1] == '/' && std::isalpha(static_cast<unsigned char>(text[2]))) {
            std::string var = text.substr(2);
            for (char c : var)
                if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                    throw ParseError("bad index variable", start + 3);
            return index_cyclic(var);
        }
        try {
            return fg(parse_group_expr(text).canonical_form());
        } catch (const ParseError& e) {
            throw ParseError("bad group expression", start + e.column());
        }
    }

    TermPtr term()
    {
        skip();
        if (pos_ >= s_.size())
            fail("expected a term");
        char c = s_[pos_];
        if (c == 'Z' || c == '0')
            return group_expr();
        std::size_t name_at = pos_;
        std::string name = ident();
        if (name == "Q")
            return rationals();
        if (name == "sum_p" || name == "sum_n") {
            IndexSet idx;
            idx.kind = name == "sum_p" ? IndexSet::Kind::AllPrimes : IndexSet::Kind::AllNaturals;
            if (peek('[')) {
                ++pos_;
                idx.kind = IndexSet::Kind::Finite;
                for (;;) {
                    idx.values.push_back(number());
                    if (peek(',')) {
                        ++pos_;
                        continue;
                    }
                    break;
                }
                expect(']');
                if (name == "sum_n")
                    fail("finite index sets use sum_p[...]");
            }
            expect('(');
            TermPtr body = term();
            expect(')');
            return sum_family(body, std::move(idx));
        }
        expect('(');
        TermPtr out;
        if (name == "lim" || name == "lim1") {
            std::string t = raw_argument().first;
            out = name == "lim" ? lim(t) : lim1(t);
        } else if (name == "ker_cmp" || name == "coker_cmp") {
            FunctorRef f = functor();
            expect(',');
            std::string t = raw_argument().first;
            out = name == "ker_cmp" ? ker_cmp(f, t) : coker_cmp(f, t);
        } else if (name == "quot") {
            out = quotient_of(term());
        } else if (name == "ext") {
            TermPtr a = term();
            expect(',');
            out = extension(a, term());
        } else if (name == "summand_of") {
            out = summand_of(term());
        } else if (name == "retract") {
            TermPtr a = term();
            expect(',');
            Integer n = number();
            if (n < 1)
                fail("retract factor must be at least 1");
            out = retract(a, n);
        } else if (name == "bounded") {
            Integer n = number();
            if (n < 1)
                fail("exponent must be at least 1");
            out = bounded(n);
        } else if (name == "reduced_unbounded") {
            skip();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                out = reduced_unbounded(number());
            else if (ident() == "mixed")
                out = reduced_unbounded(0);
            else
                fail("expected a prime or \"mixed\"");
        } else {
            pos_ = name_at;
            fail("unknown term constructor \"" + name + "\"");
        }
        expect(')');
        return out;
    }
};

} // namespace

std::string GroupTerm::to_string() const
{
    auto child = [&](std::size_t k) { return children.at(k)->to_string(); };
    switch (kind) {
    case K::FG:
        return cf.to_string();
    case K::IndexCyclic:
        return "Z/" + var;
    case K::SumFamily:
        switch (index.kind) {
        case IndexSet::Kind::Finite:
            return "sum_p[" + index_text(index) + "](" + child(0) + ")";
        case IndexSet::Kind::AllPrimes:
            return "sum_p(" + child(0) + ")";
        case IndexSet::Kind::AllNaturals:
            return "sum_n(" + child(0) + ")";
        }
        break;
    case K::Lim:
        return "lim(" + tower + ")";
    case K::Lim1:
        return "lim1(" + tower + ")";
    case K::KerComparison:
        return "ker_cmp(" + functor.to_string() + ", " + tower + ")";
    case K::CokerComparison:
        return "coker_cmp(" + functor.to_string() + ", " + tower + ")";
    case K::QuotientOf:
        return "quot(" + child(0) + ")";
    case K::Extension:
        return "ext(" + child(0) + ", " + child(1) + ")";
    case K::SummandOf:
        return "summand_of(" + child(0) + ")";
    case K::RetractTimesN:
        return "retract(" + child(0) + ", " + abelim::to_string(n) + ")";
    case K::BoundedTorsion:
        return "bounded(" + abelim::to_string(n) + ")";
    case K::ReducedUnboundedTorsion:
        return n == 0 ? "reduced_unbounded(mixed)" : "reduced_unbounded(" + abelim::to_string(n) + ")";
    case K::Rationals:
        return "Q";
    }
    return "";
}

TermPtr fg(const CanonicalForm& cf)
{
    auto t = make(K::FG);
    t->cf = cf;
    return t;
}

TermPtr index_cyclic(const std::string& var)
{
    auto t = make(K::IndexCyclic);
    t->var = var;
    return t;
}

TermPtr sum_family(TermPtr body, IndexSet index)
{
    auto t = make(K::SumFamily);
    t->var = index.kind == IndexSet::Kind::AllNaturals ? "n" : "p";
    t->index = std::move(index);
    t->children = {std::move(body)};
    return t;
}

TermPtr lim(const std::string& tower)
{
    auto t = make(K::Lim);
    t->tower = tower;
    return t;
}

TermPtr lim1(const std::string& tower)
{
    auto t = make(K::Lim1);
    t->tower = tower;
    return t;
}

TermPtr ker_cmp(FunctorRef f, const std::string& tower)
{
    auto t = make(K::KerComparison);
    t->functor = std::move(f);
    t->tower = tower;
    return t;
}

TermPtr coker_cmp(FunctorRef f, const std::string& tower)
{
    auto t = make(K::CokerComparison);
    t->functor = std::move(f);
    t->tower = tower;
    return t;
}

TermPtr quotient_of(TermPtr x)
{
    auto t = make(K::QuotientOf);
    t->children = {std::move(x)};
    return t;
}

TermPtr extension(TermPtr sub, TermPtr quot)
{
    auto t = make(K::Extension);
    t->children = {std::move(sub), std::move(quot)};
    return t;
}

TermPtr summand_of(TermPtr x)
{
    auto t = make(K::SummandOf);
    t->children = {std::move(x)};
    return t;
}

TermPtr retract(TermPtr ambient, const Integer& n)
{
    auto t = make(K::RetractTimesN);
    t->children = {std::move(ambient)};
    t->n = n;
    return t;
}

TermPtr bounded(const Integer& n)
{
    auto t = make(K::BoundedTorsion);
    t->n = n;
    return t;
}

TermPtr reduced_unbounded(const Integer& p)
{
    auto t = make(K::ReducedUnboundedTorsion);
    t->n = p;
    return t;
}

TermPtr rationals() { return make(K::Rationals); }

bool same_term(const GroupTerm& a, const GroupTerm& b) { return a.to_string() == b.to_string(); }

TermPtr instantiate(const TermPtr& t, const std::string& var, const Integer& v)
{
    const std::string value = abelim::to_string(v);
    switch (t->kind) {
    case K::IndexCyclic:
        if (t->var == var)
            return fg(Presentation::cyclic(v).canonical_form());
        return t;
    case K::SumFamily:
        if (t->var == var)
            return t; // shadowed
        break;
    default:
        break;
    }
    auto out = std::make_shared<GroupTerm>(*t);
    out->tower = substitute(t->tower, var, value);
    out->functor.arg = substitute(t->functor.arg, var, value);
    for (auto& c : out->children)
        c = instantiate(c, var, v);
    return out;
}

TermPtr parse_term(std::string_view text)
{
    if (text.empty())
        throw ParseError("empty term", 1);
    return TermParser(text).run();
}

} // namespace abelim
