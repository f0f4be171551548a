#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace flatsurf {

/// Exact rational over int64. Enough for the closed-form constants here;
/// throws on overflow-prone denominators rather than silently wrapping.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
    Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
    Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
    Rational operator/(const Rational& o) const { return {num * o.den, den * o.num}; }
    Rational operator-() const { return {-num, den}; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Element of the field Q(sqrt 2): a + b*sqrt(2) with rational a, b.
/// The closed-form Bolza quantities (tan(pi/8) = sqrt(2)-1, cot(pi/8) =
/// sqrt(2)+1, ...) all live here, so equality checks can be exact.
struct QSqrt2 {
    Rational a;  // rational part
    Rational b;  // coefficient of sqrt(2)

    QSqrt2() = default;
    QSqrt2(Rational a_, Rational b_ = Rational(0)) : a(a_), b(b_) {}
    QSqrt2(std::int64_t n) : a(n), b(0) {}

    static QSqrt2 sqrt2() { return {Rational(0), Rational(1)}; }
    /// tan(pi/8) = sqrt(2) - 1
    static QSqrt2 tan_pi_8() { return {Rational(-1), Rational(1)}; }
    /// cot(pi/8) = sqrt(2) + 1
    static QSqrt2 cot_pi_8() { return {Rational(1), Rational(1)}; }

    QSqrt2 operator+(const QSqrt2& o) const { return {a + o.a, b + o.b}; }
    QSqrt2 operator-(const QSqrt2& o) const { return {a - o.a, b - o.b}; }
    QSqrt2 operator*(const QSqrt2& o) const {
        return {a * o.a + Rational(2) * b * o.b, a * o.b + b * o.a};
    }
    QSqrt2 operator/(const QSqrt2& o) const {
        // multiply by the conjugate; norm = a^2 - 2 b^2 is nonzero for o != 0
        Rational n = o.a * o.a - Rational(2) * o.b * o.b;
        if (n == Rational(0)) throw std::domain_error("QSqrt2: division by zero");
        return {(a * o.a - Rational(2) * b * o.b) / n, (b * o.a - a * o.b) / n};
    }

    bool operator==(const QSqrt2& o) const { return a == o.a && b == o.b; }

    double value() const { return a.value() + b.value() * std::sqrt(2.0); }
    std::string str() const;
};

}  // namespace flatsurf
