#pragma once

#include <orthospace/exactnum.hpp>

#include <json.hpp>

#include <array>
#include <cstddef>
#include <functional>
#include <string>

namespace orthospace {

struct Vector3 {
    std::array<Scalar, 3> c;

    Vector3() = default;
    Vector3(Scalar x, Scalar y, Scalar z) : c{std::move(x), std::move(y), std::move(z)} {}

    /// Field of the components; throws MixedField if they disagree.
    Field field() const;
    bool is_zero() const;
    Vector3 in_field(Field f) const;

    const Scalar& operator[](std::size_t i) const { return c[i]; }
    Scalar& operator[](std::size_t i) { return c[i]; }

    friend bool operator==(const Vector3&, const Vector3&) = default;
};

Vector3 operator*(const Scalar& s, const Vector3& v);

/// Hermitian product, conjugate-linear in the second argument.
Scalar inner(const Vector3& u, const Vector3& v);

/// (conj(u2 v3 - u3 v2), conj(u3 v1 - u1 v3), conj(u1 v2 - u2 v1)).
/// Zero when u and v are linearly dependent.
Vector3 cross(const Vector3& u, const Vector3& v);

/// Squared length inner(v, v) as a rational.
Rational norm2(const Vector3& v);

/// A one-dimensional subspace, stored with its first nonzero component equal to 1.
class Ray {
public:
    explicit Ray(const Vector3& v);

    const Vector3& rep() const { return rep_; }
    Field field() const { return rep_[0].field(); }

    friend bool operator==(const Ray&, const Ray&) = default;

private:
    Vector3 rep_;
};

bool ray_equal(const Ray& u, const Ray& v);
bool orthogonal(const Ray& u, const Ray& v);
bool orthogonal(const Vector3& u, const Vector3& v);

/// |<u,v>|^2 / (|u|^2 |v|^2), the squared cosine of the angle between the rays.
Rational squared_cosine(const Vector3& u, const Vector3& v);
Rational squared_cosine(const Ray& u, const Ray& v);

/// True iff the squared cosine of `u` against each block member is the same.
/// Throws BlockNotOrthogonal unless the block is pairwise orthogonal.
bool unbiased_wrt_block(const Ray& u, const std::array<Ray, 3>& block);

std::array<Ray, 3> standard_basis(Field f);

std::string to_string(const Vector3& v);
std::string to_string(const Ray& r);

nlohmann::json to_json(const Ray& r);
Ray ray_from_json(const nlohmann::json& j);

struct RayHash {
    std::size_t operator()(const Ray& r) const;
};

}  // namespace orthospace
