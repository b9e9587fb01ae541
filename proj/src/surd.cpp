#include "froblang/surd.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "froblang/errors.hpp"

namespace froblang {

namespace {

constexpr i128 kI64Max = std::numeric_limits<std::int64_t>::max();
constexpr i128 kI64Min = std::numeric_limits<std::int64_t>::min();

i128 mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

i128 add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

i128 neg(i128 a) {
    constexpr i128 kMin = static_cast<i128>(static_cast<u128>(1) << 127);
    if (a == kMin) throw OverflowError("128-bit negation overflow");
    return -a;
}

i128 abs128(i128 a) { return a < 0 ? neg(a) : a; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 floor_div(i128 t, i128 w) {
    i128 q = t / w;
    if (t % w != 0 && ((t < 0) != (w < 0))) --q;
    return q;
}

std::int64_t narrow(i128 x) {
    if (x > kI64Max || x < kI64Min) throw OverflowError("result exceeds 64-bit range");
    return static_cast<std::int64_t>(x);
}

}  // namespace

std::string to_string(i128 x) {
    if (x == 0) return "0";
    bool negative = x < 0;
    u128 m = negative ? static_cast<u128>(-(x + 1)) + 1 : static_cast<u128>(x);
    std::string s;
    while (m != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    }
    if (negative) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

u128 isqrt(u128 n) {
    if (n == 0) return 0;
    constexpr u128 kMaxRoot = (static_cast<u128>(1) << 64) - 1;
    long double est = std::sqrt(static_cast<long double>(n));
    u128 r = est >= 18446744073709551615.0L ? kMaxRoot : static_cast<u128>(est);
    while (r * r > n) --r;
    while (r < kMaxRoot && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

i128 floor_quadratic(i128 a, i128 b, std::int64_t d, i128 w) {
    if (w == 0) throw DomainError("zero denominator");
    if (w < 0) {
        a = neg(a);
        b = neg(b);
        w = neg(w);
    }
    i128 root_floor = 0;  // floor(b * sqrt(d))
    if (b != 0) {
        if (d <= 0) throw DomainError("sqrt of a non-positive radicand");
        u128 bb = static_cast<u128>(abs128(b));
        u128 sq, rad;
        if (__builtin_mul_overflow(bb, bb, &sq) ||
            __builtin_mul_overflow(sq, static_cast<u128>(d), &rad))
            throw OverflowError("b^2*d exceeds 128 bits");
        u128 s = isqrt(rad);
        bool exact = s * s == rad;
        i128 si = static_cast<i128>(s);
        root_floor = b > 0 ? si : (exact ? -si : -si - 1);
    }
    return floor_div(add(a, root_floor), w);
}

Surd Surd::from_wide(i128 u, i128 v, std::int64_t d, i128 w) {
    if (w == 0) throw DomainError("surd denominator is zero");
    if (v != 0) {
        if (d <= 0) throw DomainError("surd radicand must be positive");
        for (std::int64_t f = 2; f <= d / f; ++f) {
            while (d % (f * f) == 0) {
                d /= f * f;
                v = mul(v, f);
            }
        }
        if (d == 1) {
            u = add(u, v);
            v = 0;
        }
    }
    if (v == 0) d = 1;
    if (w < 0) {
        u = neg(u);
        v = neg(v);
        w = neg(w);
    }
    i128 g = gcd128(gcd128(u, v), w);
    if (g > 1) {
        u /= g;
        v /= g;
        w /= g;
    }
    return Surd(narrow(u), narrow(v), d, narrow(w));
}

Surd Surd::make(std::int64_t u, std::int64_t v, std::int64_t d, std::int64_t w) {
    return from_wide(u, v, d, w);
}

Surd Surd::rational(std::int64_t num, std::int64_t den) { return from_wide(num, 0, 1, den); }

Surd Surd::golden_ratio() { return make(1, 1, 5, 2); }
Surd Surd::golden_ratio_squared() { return make(3, 1, 5, 2); }

Surd Surd::operator-() const { return from_wide(neg(u_), neg(v_), d_, w_); }

Surd Surd::operator+(const Surd& o) const {
    if (v_ != 0 && o.v_ != 0 && d_ != o.d_)
        throw DomainError("cannot add surds with different radicands");
    std::int64_t d = v_ != 0 ? d_ : o.d_;
    i128 u = add(mul(u_, o.w_), mul(o.u_, w_));
    i128 v = add(mul(v_, o.w_), mul(o.v_, w_));
    return from_wide(u, v, d, mul(w_, o.w_));
}

Surd Surd::operator*(std::int64_t k) const { return from_wide(mul(u_, k), mul(v_, k), d_, w_); }

std::string Surd::str() const {
    if (v_ == 0) return w_ == 1 ? std::to_string(u_) : std::to_string(u_) + "/" + std::to_string(w_);
    std::string s = "(" + std::to_string(u_) + (v_ < 0 ? "-" : "+") +
                    to_string(abs128(v_)) + "*sqrt(" + std::to_string(d_) + "))";
    if (w_ != 1) s += "/" + std::to_string(w_);
    return s;
}

long double Surd::approx() const {
    return (static_cast<long double>(u_) +
            static_cast<long double>(v_) * std::sqrt(static_cast<long double>(d_))) /
           static_cast<long double>(w_);
}

std::string Surd::decimal(int digits) const {
    if (digits < 0 || digits > 15) throw DomainError("decimal digits must be in 0..15");
    if (floor(*this) < 0) return "-" + (-*this).decimal(digits);
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    i128 scaled = floor_quadratic(mul(u_, scale), mul(v_, scale), d_, w_);
    std::string whole = to_string(scaled / scale);
    if (digits == 0) return whole;
    std::string frac = to_string(scaled % scale);
    return whole + "." + std::string(digits - frac.size(), '0') + frac;
}

std::int64_t floor(const Surd& x) { return narrow(floor_quadratic(x.u(), x.v(), x.d(), x.w())); }

std::int64_t ceil(const Surd& x) {
    return narrow(neg(floor_quadratic(neg(x.u()), neg(x.v()), x.d(), x.w())));
}

std::int64_t floor_mul(const Surd& alpha, std::int64_t n) {
    return narrow(floor_quadratic(mul(n, alpha.u()), mul(n, alpha.v()), alpha.d(), alpha.w()));
}

namespace {

struct Affine {
    i128 a, b, w;
    std::int64_t d;
};

// n*alpha + rho over the common denominator, without reduction.
Affine affine(const Surd& alpha, std::int64_t n, const Surd& rho) {
    if (!rho.is_rational() && rho.d() != alpha.d())
        throw DomainError("intercept must be rational or share the slope's radicand");
    Affine r;
    r.a = add(mul(mul(n, alpha.u()), rho.w()), mul(rho.u(), alpha.w()));
    r.b = add(mul(mul(n, alpha.v()), rho.w()), mul(rho.v(), alpha.w()));
    r.w = mul(alpha.w(), rho.w());
    r.d = alpha.v() != 0 ? alpha.d() : rho.d();
    return r;
}

}  // namespace

std::int64_t floor_affine(const Surd& alpha, std::int64_t n, const Surd& rho) {
    auto t = affine(alpha, n, rho);
    return narrow(floor_quadratic(t.a, t.b, t.d, t.w));
}

std::int64_t ceil_affine(const Surd& alpha, std::int64_t n, const Surd& rho) {
    auto t = affine(alpha, n, rho);
    return narrow(neg(floor_quadratic(neg(t.a), neg(t.b), t.d, t.w)));
}

std::strong_ordering compare(const Surd& x, const Surd& y) {
    Surd diff = x - y;
    if (diff.u() == 0 && diff.v() == 0) return std::strong_ordering::equal;
    return floor(diff) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

// Parser ---------------------------------------------------------------------

namespace {

class SurdParser {
public:
    explicit SurdParser(std::string_view text) : s_(text) {}

    Surd parse() {
        skip_ws();
        bool paren = false;
        if (peek() == '(') {
            // "(...)" may be the whole numerator or just a leading group; only the
            // former is supported, so a '(' at the start always opens the numerator.
            ++pos_;
            paren = true;
        }
        parse_sum();
        if (paren) expect(')');
        skip_ws();
        i128 w = 1;
        if (peek() == '/') {
            if (!paren && terms_ > 1)
                throw ParseError("parenthesize the numerator before dividing", pos_);
            ++pos_;
            skip_ws();
            std::size_t at = pos_;
            w = parse_int();
            if (w <= 0) throw ParseError("denominator must be positive", at);
        }
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        if (v_ != 0 && d_ <= 0) throw ParseError("radicand must be positive", d_pos_);
        return Surd::make(narrow(u_), narrow(v_), v_ != 0 ? d_ : 1, narrow(w));
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    bool match_word(std::string_view w) {
        if (s_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    i128 parse_int() {
        skip_ws();
        std::size_t start = pos_;
        i128 value = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            value = add(mul(value, 10), s_[pos_] - '0');
            if (value > kI64Max) throw ParseError("integer too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected an integer", start);
        return value;
    }

    void parse_sqrt(i128 coef) {
        expect('(');
        skip_ws();
        std::size_t at = pos_;
        i128 d = parse_int();
        expect(')');
        if (v_ != 0 && d != d_) throw ParseError("only one radicand is supported", at);
        d_ = narrow(d);
        d_pos_ = at;
        v_ = add(v_, coef);
    }

    void parse_sum() {
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                return;
            }
            first = false;
            ++terms_;
            if (match_word("sqrt")) {
                parse_sqrt(sign);
                continue;
            }
            i128 value = sign * parse_int();
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (!match_word("sqrt")) throw ParseError("expected 'sqrt'", pos_);
                parse_sqrt(value);
            } else {
                u_ = add(u_, value);
            }
        }
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int terms_ = 0;
    i128 u_ = 0, v_ = 0;
    std::int64_t d_ = 1;
    std::size_t d_pos_ = 0;
};

}  // namespace

Surd Surd::parse(std::string_view text) { return SurdParser(text).parse(); }

}  // namespace froblang
