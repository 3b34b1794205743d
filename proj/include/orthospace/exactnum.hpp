#pragma once

// Exact scalars over Q and the Eisenstein rationals Q(w), w^2 = -1 - w.
//
// Text format:
//   Rational    "p/q" with "/q" omitted when q == 1          e.g. "3", "-2/3"
//   Eisenstein  "<a><sign><|b|>w", both parts always present  e.g. "0+1w", "1/2-3w"
// The Eisenstein form keeps a zero w-part ("3+0w") so that the field tag
// survives a print/parse round trip. The parser also takes shorthand such as
// "w", "-2w" and "1-w".

#include <orthospace/error.hpp>

#include <gmpxx.h>

#include <compare>
#include <random>
#include <string>
#include <string_view>
#include <variant>

namespace orthospace {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

/// a + b*w with w a primitive cube root of unity.
struct Eisenstein {
    Rational a;
    Rational b;

    Eisenstein() = default;
    Eisenstein(Rational re, Rational om) : a(std::move(re)), b(std::move(om)) {}

    static Eisenstein omega() { return {0, 1}; }

    bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0; }
    bool is_rational() const { return sgn(b) == 0; }

    friend bool operator==(const Eisenstein& x, const Eisenstein& y) { return x.a == y.a && x.b == y.b; }

    friend Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) { return {x.a + y.a, x.b + y.b}; }
    friend Eisenstein operator-(const Eisenstein& x, const Eisenstein& y) { return {x.a - y.a, x.b - y.b}; }
    friend Eisenstein operator-(const Eisenstein& x) { return {-x.a, -x.b}; }
    // (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
    friend Eisenstein operator*(const Eisenstein& x, const Eisenstein& y)
    {
        Rational bd = x.b * y.b;
        return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
    }
    friend Eisenstein operator/(const Eisenstein& x, const Eisenstein& y);
};

Eisenstein conj(const Eisenstein& s);
Rational norm(const Eisenstein& s);
std::string to_string(const Eisenstein& s);
Eisenstein parse_eisenstein(std::string_view text);

enum class Field { Q, Qw };

std::string_view to_string(Field f);
Field parse_field(std::string_view text);

/// Tagged scalar. Arithmetic between different tags throws ErrorKind::MixedField.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(Rational q) : value_(std::move(q)) {}
    Scalar(Eisenstein e) : value_(std::move(e)) {}
    Scalar(long n) : value_(Rational(n)) {}
    Scalar(int n) : value_(Rational(n)) {}

    static Scalar zero(Field f);
    static Scalar one(Field f);
    static Scalar omega() { return Scalar(Eisenstein::omega()); }

    Field field() const { return std::holds_alternative<Rational>(value_) ? Field::Q : Field::Qw; }
    bool is_zero() const;

    /// Same value in field `f`. Lowering Qw -> Q requires a zero w-part.
    Scalar in_field(Field f) const;

    /// The rational value; throws unless the scalar is Q-tagged or has zero w-part.
    Rational to_rational() const;
    /// Value as an Eisenstein number regardless of tag.
    Eisenstein to_eisenstein() const;

    const std::variant<Rational, Eisenstein>& value() const { return value_; }

    friend bool operator==(const Scalar& x, const Scalar& y);

    friend Scalar operator+(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x, const Scalar& y);
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y);
    friend Scalar operator-(const Scalar& x);

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

private:
    std::variant<Rational, Eisenstein> value_;
};

Scalar conj(const Scalar& s);
Rational norm(const Scalar& s);

std::string to_string(const Scalar& s);
/// Parses either text form; the tag follows the syntax ("...w" means Qw).
Scalar parse_scalar(std::string_view text);

/// Nonzero p/q with 1 <= p, q <= bound and a random sign.
Rational random_rational(std::mt19937_64& rng, int bound = 9);
/// Nonzero scalar in `f`; over Qw each part is zero with probability 1/4.
Scalar random_nonzero_scalar(std::mt19937_64& rng, Field f, int bound = 9);

}  // namespace orthospace
