#include <orthospace/rays3.hpp>

namespace orthospace {

Field Vector3::field() const
{
    Field f = c[0].field();
    if (c[1].field() != f || c[2].field() != f)
        throw Error(ErrorKind::MixedField, "vector " + to_string(*this) + " mixes field tags");
    return f;
}

bool Vector3::is_zero() const
{
    return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
}

Vector3 Vector3::in_field(Field f) const
{
    return {c[0].in_field(f), c[1].in_field(f), c[2].in_field(f)};
}

Vector3 operator*(const Scalar& s, const Vector3& v)
{
    return {s * v[0], s * v[1], s * v[2]};
}

Scalar inner(const Vector3& u, const Vector3& v)
{
    return u[0] * conj(v[0]) + u[1] * conj(v[1]) + u[2] * conj(v[2]);
}

Vector3 cross(const Vector3& u, const Vector3& v)
{
    return {conj(u[1] * v[2] - u[2] * v[1]),
            conj(u[2] * v[0] - u[0] * v[2]),
            conj(u[0] * v[1] - u[1] * v[0])};
}

Rational norm2(const Vector3& v)
{
    return norm(v[0]) + norm(v[1]) + norm(v[2]);
}

Ray::Ray(const Vector3& v)
{
    Field f = v.field();
    std::size_t lead = 0;
    while (lead < 3 && v[lead].is_zero())
        ++lead;
    if (lead == 3)
        throw Error(ErrorKind::InvalidArgument, "zero vector does not span a ray");
    Scalar pivot = v[lead];
    for (std::size_t i = 0; i < 3; ++i)
        rep_[i] = i < lead ? Scalar::zero(f) : v[i] / pivot;
}

bool ray_equal(const Ray& u, const Ray& v)
{
    return u == v;
}

bool orthogonal(const Vector3& u, const Vector3& v)
{
    return inner(u, v).is_zero();
}

bool orthogonal(const Ray& u, const Ray& v)
{
    return orthogonal(u.rep(), v.rep());
}

Rational squared_cosine(const Vector3& u, const Vector3& v)
{
    Rational den = norm2(u) * norm2(v);
    if (sgn(den) == 0)
        throw Error(ErrorKind::InvalidArgument, "squared cosine of a zero vector");
    return Rational(norm(inner(u, v)) / den);
}

Rational squared_cosine(const Ray& u, const Ray& v)
{
    return squared_cosine(u.rep(), v.rep());
}

bool unbiased_wrt_block(const Ray& u, const std::array<Ray, 3>& block)
{
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (!orthogonal(block[i], block[j]))
                throw Error(ErrorKind::BlockNotOrthogonal,
                            to_string(block[i]) + " and " + to_string(block[j]) + " are not orthogonal");
    Rational c0 = squared_cosine(u, block[0]);
    return c0 == squared_cosine(u, block[1]) && c0 == squared_cosine(u, block[2]);
}

std::array<Ray, 3> standard_basis(Field f)
{
    Scalar o = Scalar::zero(f), l = Scalar::one(f);
    return {Ray({l, o, o}), Ray({o, l, o}), Ray({o, o, l})};
}

std::string to_string(const Vector3& v)
{
    return "(" + to_string(v[0]) + "," + to_string(v[1]) + "," + to_string(v[2]) + ")";
}

std::string to_string(const Ray& r)
{
    return "<" + to_string(r.rep()[0]) + "," + to_string(r.rep()[1]) + "," + to_string(r.rep()[2]) + ">";
}

nlohmann::json to_json(const Ray& r)
{
    return {{"field", std::string(to_string(r.field()))},
            {"v", {to_string(r.rep()[0]), to_string(r.rep()[1]), to_string(r.rep()[2])}}};
}

Ray ray_from_json(const nlohmann::json& j)
{
    try {
        Field f = parse_field(j.at("field").get<std::string>());
        const auto& v = j.at("v");
        if (!v.is_array() || v.size() != 3)
            throw Error(ErrorKind::Parse, "ray needs three components");
        Vector3 vec(parse_scalar(v[0].get<std::string>()), parse_scalar(v[1].get<std::string>()),
                    parse_scalar(v[2].get<std::string>()));
        if (vec.field() != f)
            throw Error(ErrorKind::MixedField, "components do not match field " + std::string(to_string(f)));
        return Ray(vec);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

std::size_t RayHash::operator()(const Ray& r) const
{
    return std::hash<std::string>{}(to_string(r));
}

}  // namespace orthospace
