// Exact quadratic irrationals (u + v*sqrt(d)) / w.
//
// All floors are computed with integer arithmetic only: floor(b*sqrt(d))
// is an integer square root of b^2*d, and floor(x / w) = floor(floor(x) / w)
// for positive integer w. Intermediates are 128-bit and every step is
// overflow-checked; nothing wraps silently.
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace froblang {

using i128 = __int128;
using u128 = unsigned __int128;

class Surd {
public:
    /// Canonical form: d square-free, w > 0, gcd(u, v, w) = 1, and d = 1 when v = 0.
    static Surd make(std::int64_t u, std::int64_t v, std::int64_t d, std::int64_t w);
    static Surd rational(std::int64_t num, std::int64_t den = 1);
    static Surd integer(std::int64_t n) { return rational(n, 1); }

    /// "(u+v*sqrt(d))/w" and looser spellings like "(3-sqrt(5))/2", "sqrt(2)-1", "1/3".
    static Surd parse(std::string_view text);

    static Surd golden_ratio();         // (1+sqrt(5))/2
    static Surd golden_ratio_squared(); // (3+sqrt(5))/2

    std::int64_t u() const { return u_; }
    std::int64_t v() const { return v_; }
    std::int64_t d() const { return d_; }
    std::int64_t w() const { return w_; }

    bool is_rational() const { return v_ == 0; }

    std::string str() const;
    long double approx() const;
    /// Exact decimal truncation with `digits` fractional digits (digits <= 15).
    std::string decimal(int digits = 15) const;

    Surd operator-() const;
    Surd operator+(const Surd& other) const;
    Surd operator-(const Surd& other) const { return *this + (-other); }
    Surd operator*(std::int64_t k) const;

    bool operator==(const Surd&) const = default;

private:
    Surd(std::int64_t u, std::int64_t v, std::int64_t d, std::int64_t w)
        : u_(u), v_(v), d_(d), w_(w) {}
    static Surd from_wide(i128 u, i128 v, std::int64_t d, i128 w);

    std::int64_t u_, v_, d_, w_;
};

/// floor((a + b*sqrt(d)) / w) for w != 0. d must be square-free when b != 0.
i128 floor_quadratic(i128 a, i128 b, std::int64_t d, i128 w);

std::int64_t floor(const Surd& x);
std::int64_t ceil(const Surd& x);

/// Exact floor(n * alpha).
std::int64_t floor_mul(const Surd& alpha, std::int64_t n);

/// Exact floor(n * alpha + rho) and ceil(n * alpha + rho).
std::int64_t floor_affine(const Surd& alpha, std::int64_t n, const Surd& rho);
std::int64_t ceil_affine(const Surd& alpha, std::int64_t n, const Surd& rho);

/// Sign of x - y, exactly.
std::strong_ordering compare(const Surd& x, const Surd& y);

/// Integer square root, floor(sqrt(n)).
u128 isqrt(u128 n);

std::string to_string(i128 x);

}  // namespace froblang
