#include "text_parse.hpp"

#include <cctype>
#include <string>

#include "relcone/errors.hpp"

namespace relcone::detail {

namespace {

using Poly = std::map<long, Cyclotomic>;

void accumulate(Poly& into, long exponent, const Cyclotomic& c) {
    auto [it, inserted] = into.try_emplace(exponent, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) into.erase(it);
}

Poly product(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) accumulate(out, ea + eb, ca * cb);
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Poly parse() {
        Poly result = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character");
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string digits() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    long small_integer(bool allow_sign) {
        bool negative = allow_sign && accept('-');
        std::string d = digits();
        if (d.size() > 9) fail("exponent too large");
        long v = std::stol(d);
        return negative ? -v : v;
    }

    Poly expression() {
        Poly result;
        bool negate = accept('-');
        if (!negate) accept('+');
        Poly first = term();
        for (const auto& [e, c] : first) accumulate(result, e, negate ? -c : c);
        while (true) {
            if (accept('+')) {
                for (const auto& [e, c] : term()) accumulate(result, e, c);
            } else if (accept('-')) {
                for (const auto& [e, c] : term()) accumulate(result, e, -c);
            } else {
                break;
            }
        }
        return result;
    }

    Poly term() {
        Poly result = factor();
        while (accept('*')) result = product(result, factor());
        return result;
    }

    Poly factor() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            Poly inner = factor();
            for (auto& [e, v] : inner) v = -v;
            return inner;
        }
        if (c == '(') {
            ++pos_;
            Poly inner = expression();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num(digits());
            mpz_class den = 1;
            if (accept('/')) {
                den = mpz_class(digits());
                if (den == 0) fail("zero denominator");
            }
            Rational q(num, den);
            q.canonicalize();
            Poly out;
            if (q != 0) out.emplace(0, Cyclotomic(q));
            return out;
        }
        if (c == 'z') {
            ++pos_;
            long order = small_integer(false);
            if (order < 1) fail("root of unity order must be positive");
            long exponent = 1;
            if (accept('^')) exponent = small_integer(true);
            return Poly{{0, Cyclotomic::root_of_unity(order, exponent)}};
        }
        if (c == 't') {
            ++pos_;
            long exponent = 1;
            if (accept('^')) exponent = small_integer(false);
            return Poly{{exponent, Cyclotomic(1)}};
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::map<long, Cyclotomic> parse_polynomial(std::string_view text) { return Parser(text).parse(); }

}  // namespace relcone::detail
