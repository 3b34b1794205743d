#pragma once

// The three-dimensional configurations: the 22-ray partial configuration
// attached to a ray u = <x,y,z>, the center test against the standard basis,
// the four mutually unbiased bases of C^3, and the glued two-center witness
// that lives in C^3 but not in R^3.

#include <orthospace/greechie.hpp>
#include <orthospace/rays3.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orthospace {

/// Names of the 22 configuration rays in canonical order.
const std::vector<std::string>& figure1_names();

/// The 12 blocks of the partial configuration, by name.
const std::vector<std::vector<std::string>>& figure1_blocks();

/// Abstract diagrams. The center diagram adds third points t1, t2, t3 on the
/// blocks {b23,c1,t1}, {b13,c2,t2}, {b12,c3,t3}. `include_rim` adds the block {a1,a2,a3}.
GreechieDiagram figure1_diagram(bool include_rim = false);
GreechieDiagram center_diagram(bool include_rim = false);

struct Figure1Config {
    Field field = Field::Q;
    Scalar x, y, z;
    std::map<std::string, Vector3> vectors;  // closed-form representatives
    std::map<std::string, Ray> rays;
    GreechieDiagram diagram;
    /// Orthogonal pairs among the 22 rays that share no block, as name pairs
    /// in the canonical name order; the rim pairs a_i, a_j always appear.
    std::vector<std::pair<std::string, std::string>> extra_orthogonal;

    const Ray& ray(const std::string& name) const { return rays.at(name); }
    const Vector3& vec(const std::string& name) const { return vectors.at(name); }
};

/// Emits the 22 rays from their closed forms in x, y, z and verifies them:
/// pairwise distinct, every block pairwise orthogonal, and every derived ray
/// equal to the cross product of its generating pair. Throws ZeroComponent,
/// DegenerateConfiguration when two of the rays coincide (this happens on a
/// thin set, e.g. b12 = b223 whenever 1/|y|^2 = 1/|x|^2 + 1/|z|^2), or
/// VerificationFailure.
Figure1Config build_figure1(const Scalar& x, const Scalar& y, const Scalar& z);

/// Generating pair of each derived ray: c_i = a_i x b_i, d_i = u x c_i,
/// b_ij = b_i x b_j, b_iij = b_i x b_ij, b_jij = b_j x b_ij.
const std::vector<std::pair<std::string, std::pair<std::string, std::string>>>& figure1_generators();

struct CenterCertificate {
    Scalar x, y, z;
    /// <c1,b23>, <c2,b13>, <c3,b12> on the closed-form representatives.
    std::array<Scalar, 3> products;
    /// x z zbar - x y ybar, y z zbar - y x xbar, z y ybar - z x xbar.
    std::array<Scalar, 3> closed_forms;
    bool is_center = false;
    bool is_unbiased = false;

    bool consistent() const { return products == closed_forms && is_center == is_unbiased; }
};

CenterCertificate center_test(const Scalar& x, const Scalar& y, const Scalar& z);

using MubTable = std::array<std::array<Ray, 3>, 4>;

MubTable mub_table();

struct WitnessOptions {
    bool center_third_point = false;  // third ray on the block of the two centers
    bool include_rim = false;
};

struct WitnessDiagram {
    GreechieDiagram diagram;
    std::optional<std::map<std::string, Ray>> realization;
};

/// Two center diagrams glued along a1, a2, a3 plus the block {u(1), u(2)}.
GreechieDiagram witness_diagram(const WitnessOptions& options = {});

/// Witness with its C^3 realization (centers (1,1,1) and (1,w,w^2)), fully verified.
WitnessDiagram build_witness(const WitnessOptions& options = {});

/// Pairwise distinct rays and every block pairwise orthogonal.
bool realization_ok(const GreechieDiagram& d, const std::map<std::string, Ray>& realization, std::string* why = nullptr);

/// Canonical Q-rays whose entries p/q satisfy |p| <= height, 1 <= q <= height.
std::vector<Ray> bounded_height_rays(std::int64_t height);

/// Orthogonality diagram of a ray set (blocks = maximal orthogonal sets, at most 3).
GreechieDiagram orthogonality_diagram(const std::vector<Ray>& rays);

struct ObstructionReport {
    // (a) sign certificate
    std::int64_t sign_min_abs = 0;
    std::size_t sign_pairs = 0;
    // (b) randomized orthogonal pairs
    std::size_t samples = 0;
    std::size_t unbiased_samples = 0;
    std::size_t violations = 0;
    // (c) bounded-height embedding search
    std::int64_t height = 0;
    std::size_t host_rays = 0;
    std::size_t host_blocks = 0;
    SearchStatus search = SearchStatus::None;
    std::uint64_t search_nodes = 0;
    double search_seconds = 0;
};

ObstructionReport r3_obstruction_certificates(std::size_t samples, std::int64_t height_bound, Deadline deadline,
                                              std::uint64_t seed, const WitnessOptions& witness = {});

}  // namespace orthospace
