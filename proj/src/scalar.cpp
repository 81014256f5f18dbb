#include "superkernel/scalar.hpp"

#include "superkernel/errors.hpp"

#include <ostream>

namespace superkernel {

const char* to_string(Field f) noexcept { return f == Field::Real ? "R" : "C"; }

Scalar Scalar::rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw NotInvertibleError("division by zero scalar");
    if (sgn(im_) == 0) return Scalar(mpq_class(1 / re_));
    mpq_class n = re_ * re_ + im_ * im_;
    return Scalar(mpq_class(re_ / n), mpq_class(-im_ / n));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

namespace {

std::string rational_text(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

std::string Scalar::to_string() const {
    if (sgn(im_) == 0) return rational_text(re_);
    std::string imag;
    mpq_class mag = abs(im_);
    if (mag == 1)
        imag = "i";
    else
        imag = rational_text(mag) + "*i";
    if (sgn(re_) == 0) return sgn(im_) < 0 ? "-" + imag : imag;
    return rational_text(re_) + (sgn(im_) < 0 ? "-" : "+") + imag;
}

Scalar Scalar::parse(std::string_view text) {
    // Grammar: [rational] [(+|-) [rational*] i]  |  [-][rational*]i
    std::string s(text);
    auto parse_rat = [](const std::string& t) {
        mpq_class q;
        if (t.empty() || q.set_str(t, 10) != 0) throw ContextError("bad rational literal '" + t + "'");
        q.canonicalize();
        return q;
    };
    if (s.empty()) throw ContextError("empty scalar literal");
    if (s.back() != 'i') return Scalar(parse_rat(s));
    s.pop_back();
    // split real / imaginary at the last sign that is not leading
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;
            break;
        }
    }
    std::string real_part = split == std::string::npos ? "" : s.substr(0, split);
    std::string imag_part = split == std::string::npos ? s : s.substr(split);
    bool neg = false;
    if (!imag_part.empty() && (imag_part[0] == '+' || imag_part[0] == '-')) {
        neg = imag_part[0] == '-';
        imag_part.erase(0, 1);
    }
    mpq_class im(1);
    if (!imag_part.empty()) {
        if (imag_part.back() != '*') throw ContextError("bad imaginary literal");
        imag_part.pop_back();
        im = parse_rat(imag_part);
    }
    if (neg) im = -im;
    mpq_class re = real_part.empty() ? mpq_class(0) : parse_rat(real_part);
    return Scalar(re, im);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace superkernel
