#include "htz/error.hpp"
#include "htz/symbols.hpp"

#include <cctype>

namespace htz {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    RadialSymbol parse() {
        std::vector<Monomial> terms;
        skip_ws();
        if (at_end()) throw SyntaxError(pos_, "empty symbol");

        Rational sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = take() == '-' ? -1 : 1;
        }
        terms.push_back(term(sign));
        while (true) {
            skip_ws();
            if (at_end()) break;
            const char c = peek();
            if (c != '+' && c != '-') throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
            take();
            terms.push_back(term(c == '-' ? -1 : 1));
        }
        return RadialSymbol(std::move(terms));
    }

private:
    Monomial term(const Rational& sign) {
        skip_ws();
        if (at_end()) throw SyntaxError(pos_, "expected term");
        Rational coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = fraction();
            have_coeff = true;
            skip_ws();
            if (!at_end() && peek() == '*') {
                take();
                skip_ws();
                if (at_end() || peek() != 'r') throw SyntaxError(pos_, "expected 'r' after '*'");
            }
        }
        Rational exponent = 0;
        if (!at_end() && peek() == 'r') {
            take();
            exponent = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                take();
                exponent = exponent_value();
            }
        } else if (!have_coeff) {
            throw SyntaxError(pos_, "expected coefficient or 'r'");
        }
        return {sign * coeff, exponent};
    }

    Rational exponent_value() {
        skip_ws();
        const bool braced = !at_end() && peek() == '{';
        if (braced) {
            take();
            skip_ws();
        }
        bool negative = false;
        const std::size_t start = pos_;
        if (!at_end() && peek() == '-') {
            take();
            negative = true;
            skip_ws();
        }
        Rational value = fraction();
        if (braced) {
            skip_ws();
            if (at_end() || take() != '}') throw SyntaxError(pos_, "expected '}'");
        }
        if (negative && value != 0) {
            throw Error(ErrorKind::NegativeExponent,
                        "negative exponent at position " + std::to_string(start));
        }
        return value;
    }

    Rational fraction() {
        mpz_class num = integer();
        skip_ws();
        if (!at_end() && peek() == '/') {
            take();
            skip_ws();
            const std::size_t at = pos_;
            mpz_class den = integer();
            if (den == 0) throw SyntaxError(at, "zero denominator");
            Rational r(num, den);
            r.canonicalize();
            return r;
        }
        return Rational(num);
    }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) throw SyntaxError(pos_, "expected integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char take() { return text_[pos_++]; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

RadialSymbol parse_radial(std::string_view text) { return Parser(text).parse(); }

std::string render(const RadialSymbol& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rational c = t.coeff;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        first = false;
        if (t.exponent == 0) {
            out += to_string(c);
            continue;
        }
        if (c != 1) out += to_string(c) + "*";
        out += "r";
        if (t.exponent != 1) {
            out += "^";
            out += t.exponent.get_den() == 1 ? to_string(t.exponent)
                                             : "{" + to_string(t.exponent) + "}";
        }
    }
    return out;
}

}  // namespace htz
