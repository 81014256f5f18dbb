#include "superkernel/parse.hpp"

#include "superkernel/errors.hpp"

#include <cctype>

namespace superkernel {

namespace {

class ExprParser {
public:
    ExprParser(const ContextPtr& ctx, std::string_view text) : ctx_(ctx), text_(text) {}

    SuperPolynomial run() {
        auto v = sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, pos_); }

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

    SuperPolynomial sum() {
        skip_space();
        SuperPolynomial acc(ctx_);
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        acc = product();
        if (negate) acc = -acc;
        while (true) {
            if (accept('+')) acc += product();
            else if (accept('-')) acc -= product();
            else return acc;
        }
    }

    SuperPolynomial product() {
        auto acc = power();
        while (true) {
            if (accept('*')) {
                acc = acc * power();
            } else if (accept('/')) {
                std::size_t at = pos_;
                auto d = power();
                if (d.degree() > 0 || d.is_zero()) {
                    pos_ = at;
                    fail("division by a non-constant or zero expression");
                }
                acc *= d.constant_term().inverse();
            } else {
                return acc;
            }
        }
    }

    SuperPolynomial power() {
        auto base = unary();
        if (accept('^')) {
            skip_space();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected an exponent");
            auto e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (e > 10000) fail("exponent too large");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    SuperPolynomial unary() {
        if (accept('-')) return -unary();
        return primary();
    }

    SuperPolynomial primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto v = sum();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            mpz_class n(std::string(text_.substr(start, pos_ - start)));
            return SuperPolynomial::constant(ctx_, Scalar(mpq_class(n)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '.'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (ctx_->find(name)) return SuperPolynomial::generator(ctx_, name);
            if (name == "i" && ctx_->field() == Field::Real) {
                pos_ = start;
                fail("imaginary unit in a real context");
            }
            if (name == "i") return SuperPolynomial::constant(ctx_, Scalar::imaginary_unit());
            pos_ = start;
            fail("unknown generator '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const ContextPtr& ctx_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

SuperPolynomial parse_polynomial(const ContextPtr& ctx, std::string_view text) {
    return ExprParser(ctx, text).run();
}

}  // namespace superkernel
