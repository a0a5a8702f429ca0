#include "abelim/group_expr.hpp"

#include "abelim/errors.hpp"

#include <cctype>

namespace abelim {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Presentation run()
    {
        skip_space();
        if (at_end())
            fail("expected a group term");
        term();
        for (;;) {
            skip_space();
            if (at_end())
                break;
            if (s_[pos_] != '+')
                fail("expected '+'");
            ++pos_;
            skip_space();
            term();
        }
        return Presentation::diagonal(orders_);
    }

private:
    void term()
    {
        if (at_end())
            fail("expected a group term");
        if (s_[pos_] == '0') {
            ++pos_;
            return;
        }
        if (s_[pos_] != 'Z')
            fail("expected 'Z'");
        ++pos_;
        Integer order = 0;
        if (!at_end() && s_[pos_] == '/') {
            ++pos_;
            std::size_t col = pos_;
            order = number();
            if (order == 0) {
                pos_ = col;
                throw ZeroModulus("Z/0 at column " + std::to_string(col + 1));
            }
        }
        Integer count = 1;
        if (!at_end() && s_[pos_] == '^') {
            ++pos_;
            std::size_t col = pos_;
            count = number();
            if (count == 0) {
                pos_ = col;
                fail("exponent must be at least 1");
            }
        }
        if (count > 100000)
            fail("exponent too large");
        for (unsigned long k = count.get_ui(); k > 0; --k)
            orders_.push_back(order);
    }

    Integer number()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == start)
            fail("expected a number");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    void skip_space()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool at_end() const { return pos_ >= s_.size(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::vector<Integer> orders_;
};

} // namespace

Presentation parse_group_expr(std::string_view text) { return Parser(text).run(); }

std::string format_group(const CanonicalForm& cf) { return cf.to_string(); }

} // namespace abelim
