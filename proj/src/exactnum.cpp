#include <orthospace/exactnum.hpp>

#include <cctype>

namespace orthospace {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::MixedField: return "mixed-field-tag";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::BlockNotOrthogonal: return "block-not-pairwise-orthogonal";
    case ErrorKind::InvalidDiagram: return "invalid-diagram";
    case ErrorKind::InvalidGraph: return "invalid-graph";
    case ErrorKind::ZeroComponent: return "zero-component";
    case ErrorKind::VerificationFailure: return "verification-failure";
    case ErrorKind::DegenerateConfiguration: return "degenerate-configuration";
    case ErrorKind::EmptyGraph: return "empty-graph";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::MalformedTables: return "malformed-tables";
    case ErrorKind::SizeLimitExceeded: return "size-limit-exceeded";
    case ErrorKind::EIsZero: return "e-is-zero";
    case ErrorKind::PasteVerificationFailure: return "paste-verification-failure";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

namespace {

bool is_integer_text(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (!is_integer_text(s))
        throw Error(ErrorKind::Parse, "not an integer: '" + std::string(s) + "'");
    if (s[0] == '+')
        s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = 1;
    if (slash != std::string_view::npos) {
        auto d = text.substr(slash + 1);
        if (!d.empty() && (d[0] == '-' || d[0] == '+'))
            throw Error(ErrorKind::Parse, "signed denominator in '" + std::string(text) + "'");
        den = parse_integer(d);
        if (den == 0)
            throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Eisenstein operator/(const Eisenstein& x, const Eisenstein& y)
{
    if (y.is_zero())
        throw Error(ErrorKind::DivisionByZero, "Eisenstein division by zero");
    Rational n = norm(y);
    Eisenstein p = x * conj(y);
    return {p.a / n, p.b / n};
}

Eisenstein conj(const Eisenstein& s)
{
    // conj(w) = w^2 = -1 - w
    return {s.a - s.b, -s.b};
}

Rational norm(const Eisenstein& s)
{
    return s.a * s.a - s.a * s.b + s.b * s.b;
}

std::string to_string(const Eisenstein& s)
{
    std::string out = to_string(s.a);
    if (sgn(s.b) < 0)
        out += "-" + to_string(Rational(-s.b));
    else
        out += "+" + to_string(s.b);
    out += "w";
    return out;
}

namespace {

// coefficient of w; a bare sign stands for +-1
Rational parse_w_coefficient(std::string_view text)
{
    if (text.empty() || text == "+")
        return 1;
    if (text == "-")
        return -1;
    return parse_rational(text);
}

}  // namespace

Eisenstein parse_eisenstein(std::string_view text)
{
    if (text.empty() || text.back() != 'w')
        throw Error(ErrorKind::Parse, "not an Eisenstein scalar: '" + std::string(text) + "'");
    auto body = text.substr(0, text.size() - 1);
    // split at the first sign that follows a digit
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 1; i < body.size(); ++i) {
        if ((body[i] == '+' || body[i] == '-') && std::isdigit(static_cast<unsigned char>(body[i - 1]))) {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos)
        return {Rational(0), parse_w_coefficient(body)};
    Rational a = parse_rational(body.substr(0, split));
    Rational b = parse_w_coefficient(body.substr(split + 1));
    if (body[split] == '-')
        b = -b;
    return {a, b};
}

std::string_view to_string(Field f)
{
    return f == Field::Q ? "Q" : "Qw";
}

Field parse_field(std::string_view text)
{
    if (text == "Q")
        return Field::Q;
    if (text == "Qw")
        return Field::Qw;
    throw Error(ErrorKind::Parse, "unknown field tag '" + std::string(text) + "'");
}

Scalar Scalar::zero(Field f)
{
    return f == Field::Q ? Scalar(Rational(0)) : Scalar(Eisenstein(0, 0));
}

Scalar Scalar::one(Field f)
{
    return f == Field::Q ? Scalar(Rational(1)) : Scalar(Eisenstein(1, 0));
}

bool Scalar::is_zero() const
{
    if (auto q = std::get_if<Rational>(&value_))
        return sgn(*q) == 0;
    return std::get<Eisenstein>(value_).is_zero();
}

Scalar Scalar::in_field(Field f) const
{
    if (f == field())
        return *this;
    if (f == Field::Qw)
        return Scalar(Eisenstein(std::get<Rational>(value_), 0));
    return Scalar(to_rational());
}

Rational Scalar::to_rational() const
{
    if (auto q = std::get_if<Rational>(&value_))
        return *q;
    const auto& e = std::get<Eisenstein>(value_);
    if (!e.is_rational())
        throw Error(ErrorKind::MixedField, "scalar " + to_string(e) + " is not rational");
    return e.a;
}

Eisenstein Scalar::to_eisenstein() const
{
    if (auto q = std::get_if<Rational>(&value_))
        return {*q, 0};
    return std::get<Eisenstein>(value_);
}

namespace {

template <typename Op>
Scalar binary(const Scalar& x, const Scalar& y, Op op)
{
    if (x.field() != y.field())
        throw Error(ErrorKind::MixedField, to_string(x) + " vs " + to_string(y));
    if (x.field() == Field::Q)
        return Scalar(Rational(op(std::get<Rational>(x.value()), std::get<Rational>(y.value()))));
    return Scalar(Eisenstein(op(std::get<Eisenstein>(x.value()), std::get<Eisenstein>(y.value()))));
}

}  // namespace

bool operator==(const Scalar& x, const Scalar& y)
{
    return x.value_ == y.value_;
}

Scalar operator+(const Scalar& x, const Scalar& y)
{
    return binary(x, y, [](const auto& a, const auto& b) { return a + b; });
}

Scalar operator-(const Scalar& x, const Scalar& y)
{
    return binary(x, y, [](const auto& a, const auto& b) { return a - b; });
}

Scalar operator*(const Scalar& x, const Scalar& y)
{
    return binary(x, y, [](const auto& a, const auto& b) { return a * b; });
}

Scalar operator/(const Scalar& x, const Scalar& y)
{
    if (x.field() == y.field() && y.is_zero())
        throw Error(ErrorKind::DivisionByZero, to_string(x) + " / 0");
    return binary(x, y, [](const auto& a, const auto& b) { return a / b; });
}

Scalar operator-(const Scalar& x)
{
    if (auto q = std::get_if<Rational>(&x.value_))
        return Scalar(Rational(-*q));
    return Scalar(-std::get<Eisenstein>(x.value_));
}

Scalar conj(const Scalar& s)
{
    if (s.field() == Field::Q)
        return s;
    return Scalar(conj(std::get<Eisenstein>(s.value())));
}

Rational norm(const Scalar& s)
{
    if (auto q = std::get_if<Rational>(&s.value()))
        return *q * *q;
    return norm(std::get<Eisenstein>(s.value()));
}

std::string to_string(const Scalar& s)
{
    return std::visit([](const auto& v) { return to_string(v); }, s.value());
}

Scalar parse_scalar(std::string_view text)
{
    if (!text.empty() && text.back() == 'w')
        return Scalar(parse_eisenstein(text));
    return Scalar(parse_rational(text));
}

Rational random_rational(std::mt19937_64& rng, int bound)
{
    std::uniform_int_distribution<int> part(1, bound), sign(0, 1);
    Rational q{Integer(part(rng)), Integer(part(rng))};
    q.canonicalize();
    return sign(rng) ? Rational(-q) : q;
}

Scalar random_nonzero_scalar(std::mt19937_64& rng, Field f, int bound)
{
    if (f == Field::Q)
        return Scalar(random_rational(rng, bound));
    std::uniform_int_distribution<int> quarter(0, 3);
    for (;;) {
        Rational a = quarter(rng) ? random_rational(rng, bound) : Rational(0);
        Rational b = quarter(rng) ? random_rational(rng, bound) : Rational(0);
        if (a != 0 || b != 0)
            return Scalar(Eisenstein{a, b});
    }
}

}  // namespace orthospace
