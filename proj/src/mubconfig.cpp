#include <orthospace/mubconfig.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

namespace orthospace {

const std::vector<std::string>& figure1_names()
{
    static const std::vector<std::string> names = {
        "u",    "a1",   "a2",   "a3",   "b1",   "b2",   "b3",   "c1",   "c2",   "c3",   "d1",
        "d2",   "d3",   "b12",  "b13",  "b23",  "b112", "b212", "b113", "b313", "b223", "b323",
    };
    return names;
}

const std::vector<std::vector<std::string>>& figure1_blocks()
{
    static const std::vector<std::vector<std::string>> blocks = {
        {"a1", "b1", "c1"},     {"a2", "b2", "c2"},     {"a3", "b3", "c3"},     {"u", "c1", "d1"},
        {"u", "c2", "d2"},      {"u", "c3", "d3"},      {"b1", "b112", "b12"},  {"b12", "b212", "b2"},
        {"b2", "b223", "b23"},  {"b23", "b323", "b3"},  {"b3", "b313", "b13"},  {"b13", "b113", "b1"},
    };
    return blocks;
}

namespace {

const std::vector<std::vector<std::string>>& dashed_blocks()
{
    static const std::vector<std::vector<std::string>> blocks = {
        {"b23", "c1", "t1"},
        {"b13", "c2", "t2"},
        {"b12", "c3", "t3"},
    };
    return blocks;
}

std::vector<std::string> center_names()
{
    auto names = figure1_names();
    names.insert(names.end(), {"t1", "t2", "t3"});
    return names;
}

}  // namespace

GreechieDiagram figure1_diagram(bool include_rim)
{
    auto blocks = figure1_blocks();
    if (include_rim)
        blocks.push_back({"a1", "a2", "a3"});
    return GreechieDiagram::from_labels(figure1_names(), blocks);
}

GreechieDiagram center_diagram(bool include_rim)
{
    auto blocks = figure1_blocks();
    for (const auto& b : dashed_blocks())
        blocks.push_back(b);
    if (include_rim)
        blocks.push_back({"a1", "a2", "a3"});
    return GreechieDiagram::from_labels(center_names(), blocks);
}

const std::vector<std::pair<std::string, std::pair<std::string, std::string>>>& figure1_generators()
{
    static const std::vector<std::pair<std::string, std::pair<std::string, std::string>>> gens = {
        {"c1", {"a1", "b1"}},     {"c2", {"a2", "b2"}},     {"c3", {"a3", "b3"}},
        {"d1", {"u", "c1"}},      {"d2", {"u", "c2"}},      {"d3", {"u", "c3"}},
        {"b12", {"b1", "b2"}},    {"b13", {"b1", "b3"}},    {"b23", {"b2", "b3"}},
        {"b112", {"b1", "b12"}},  {"b212", {"b2", "b12"}},  {"b113", {"b1", "b13"}},
        {"b313", {"b3", "b13"}},  {"b223", {"b2", "b23"}},  {"b323", {"b3", "b23"}},
    };
    return gens;
}

namespace {

void require_nonzero(const Scalar& x, const Scalar& y, const Scalar& z)
{
    if (x.is_zero() || y.is_zero() || z.is_zero())
        throw Error(ErrorKind::ZeroComponent, "x, y, z must all be nonzero");
    if (x.field() != y.field() || x.field() != z.field())
        throw Error(ErrorKind::MixedField, "x, y, z must share a field");
}

std::map<std::string, Vector3> closed_forms(const Scalar& x, const Scalar& y, const Scalar& z)
{
    Field f = x.field();
    Scalar o = Scalar::zero(f), l = Scalar::one(f);
    Scalar cx = conj(x), cy = conj(y), cz = conj(z);
    Scalar xx = x * cx, yy = y * cy, zz = z * cz;  // |x|^2 etc.
    return {
        {"u", {x, y, z}},
        {"a1", {l, o, o}},
        {"a2", {o, l, o}},
        {"a3", {o, o, l}},
        {"b1", {o, y, z}},
        {"b2", {x, o, z}},
        {"b3", {x, y, o}},
        {"c1", {o, cz, -cy}},
        {"c2", {cz, o, -cx}},
        {"c3", {cy, -cx, o}},
        {"d1", {-yy - zz, cx * y, cx * z}},
        {"d2", {x * cy, -xx - zz, cy * z}},
        {"d3", {x * cz, y * cz, -xx - yy}},
        {"b12", {conj(y * z), conj(x * z), -conj(x * y)}},
        {"b13", {conj(y * z), -conj(x * z), conj(x * y)}},
        {"b23", {-conj(y * z), conj(x * z), conj(x * y)}},
        {"b112", {x * yy + x * zz, -y * zz, yy * z}},
        {"b212", {-x * zz, xx * y + y * zz, xx * z}},
        {"b113", {x * yy + x * zz, y * zz, -yy * z}},
        {"b313", {-x * yy, xx * y, xx * z + yy * z}},
        {"b223", {x * zz, y * zz + xx * y, -xx * z}},
        {"b323", {x * yy, -xx * y, xx * z + yy * z}},
    };
}

bool share_block(const std::vector<std::vector<std::string>>& blocks, const std::string& p, const std::string& q)
{
    for (const auto& b : blocks)
        if (std::find(b.begin(), b.end(), p) != b.end() && std::find(b.begin(), b.end(), q) != b.end())
            return true;
    return false;
}

}  // namespace

Figure1Config build_figure1(const Scalar& x, const Scalar& y, const Scalar& z)
{
    require_nonzero(x, y, z);
    Figure1Config cfg;
    cfg.field = x.field();
    cfg.x = x;
    cfg.y = y;
    cfg.z = z;
    cfg.vectors = closed_forms(x, y, z);
    for (const auto& [name, v] : cfg.vectors) {
        if (v.is_zero())
            throw Error(ErrorKind::VerificationFailure, "closed form of " + name + " vanishes");
        cfg.rays.emplace(name, Ray(v));
    }

    const auto& names = figure1_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (cfg.ray(names[i]) == cfg.ray(names[j]))
                throw Error(ErrorKind::DegenerateConfiguration, names[i] + " and " + names[j] + " coincide");

    for (const auto& block : figure1_blocks())
        for (std::size_t i = 0; i < block.size(); ++i)
            for (std::size_t j = i + 1; j < block.size(); ++j)
                if (!orthogonal(cfg.ray(block[i]), cfg.ray(block[j])))
                    throw Error(ErrorKind::VerificationFailure,
                                block[i] + " and " + block[j] + " share a block but are not orthogonal");

    for (const auto& [name, pair] : figure1_generators()) {
        Vector3 w = cross(cfg.vec(pair.first), cfg.vec(pair.second));
        if (w.is_zero() || Ray(w) != cfg.ray(name))
            throw Error(ErrorKind::VerificationFailure,
                        name + " is not the cross product of " + pair.first + " and " + pair.second);
    }

    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (!share_block(figure1_blocks(), names[i], names[j]) && orthogonal(cfg.ray(names[i]), cfg.ray(names[j])))
                cfg.extra_orthogonal.emplace_back(names[i], names[j]);

    cfg.diagram = figure1_diagram();
    return cfg;
}

CenterCertificate center_test(const Scalar& x, const Scalar& y, const Scalar& z)
{
    require_nonzero(x, y, z);
    // closed forms only: the products make sense even where two rays coincide
    const auto vec = closed_forms(x, y, z);
    CenterCertificate cert;
    cert.x = x;
    cert.y = y;
    cert.z = z;
    cert.products = {inner(vec.at("c1"), vec.at("b23")), inner(vec.at("c2"), vec.at("b13")),
                     inner(vec.at("c3"), vec.at("b12"))};
    Scalar xx = x * conj(x), yy = y * conj(y), zz = z * conj(z);
    cert.closed_forms = {x * zz - x * yy, y * zz - y * xx, z * yy - z * xx};
    cert.is_center = std::all_of(cert.products.begin(), cert.products.end(), [](const Scalar& s) { return s.is_zero(); });
    cert.is_unbiased = unbiased_wrt_block(Ray(vec.at("u")), standard_basis(x.field()));
    return cert;
}

MubTable mub_table()
{
    Scalar o = Scalar::zero(Field::Qw), l = Scalar::one(Field::Qw);
    Scalar w = Scalar::omega(), w2 = w * w;
    return {{
        {Ray({l, o, o}), Ray({o, l, o}), Ray({o, o, l})},
        {Ray({l, l, l}), Ray({l, w, w2}), Ray({l, w2, w})},
        {Ray({l, w, w}), Ray({l, w2, l}), Ray({l, l, w2})},
        {Ray({l, w2, w2}), Ray({l, w, l}), Ray({l, l, w})},
    }};
}

namespace {

const char* shared_names[] = {"a1", "a2", "a3"};

bool is_shared(const std::string& name)
{
    return name == "a1" || name == "a2" || name == "a3";
}

std::string copy_label(const std::string& name, int copy)
{
    return is_shared(name) ? name : name + "(" + std::to_string(copy) + ")";
}

}  // namespace

GreechieDiagram witness_diagram(const WitnessOptions& options)
{
    std::vector<std::string> vertices(std::begin(shared_names), std::end(shared_names));
    std::vector<std::vector<std::string>> blocks;
    auto copy_blocks = figure1_blocks();
    copy_blocks.insert(copy_blocks.end(), dashed_blocks().begin(), dashed_blocks().end());
    for (int copy = 1; copy <= 2; ++copy) {
        for (const auto& name : center_names())
            if (!is_shared(name))
                vertices.push_back(copy_label(name, copy));
        for (const auto& b : copy_blocks) {
            auto& out = blocks.emplace_back();
            for (const auto& name : b)
                out.push_back(copy_label(name, copy));
        }
    }
    blocks.push_back({"u(1)", "u(2)"});
    if (options.center_third_point) {
        vertices.push_back("t12");
        blocks.back().push_back("t12");
    }
    if (options.include_rim)
        blocks.push_back({"a1", "a2", "a3"});
    return GreechieDiagram::from_labels(std::move(vertices), blocks);
}

bool realization_ok(const GreechieDiagram& d, const std::map<std::string, Ray>& realization, std::string* why)
{
    auto fail = [&](std::string msg) {
        if (why)
            *why = std::move(msg);
        return false;
    };
    std::vector<const Ray*> rays;
    for (const auto& v : d.vertices()) {
        auto it = realization.find(v);
        if (it == realization.end())
            return fail("no ray for " + v);
        rays.push_back(&it->second);
    }
    std::unordered_set<Ray, RayHash> seen;
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (!seen.insert(*rays[i]).second)
            return fail("ray of " + d.vertices()[i] + " repeats an earlier vertex");
    for (const auto& b : d.blocks())
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j)
                if (!orthogonal(*rays[b[i]], *rays[b[j]]))
                    return fail(d.vertices()[b[i]] + " and " + d.vertices()[b[j]] + " are not orthogonal");
    return true;
}

WitnessDiagram build_witness(const WitnessOptions& options)
{
    WitnessDiagram out;
    out.diagram = witness_diagram(options);
    Scalar l = Scalar::one(Field::Qw), w = Scalar::omega();
    const Figure1Config copies[2] = {build_figure1(l, l, l), build_figure1(l, w, w * w)};

    std::map<std::string, Ray> rays;
    for (int copy = 1; copy <= 2; ++copy) {
        const auto& cfg = copies[copy - 1];
        for (const auto& [name, ray] : cfg.rays) {
            auto [it, inserted] = rays.emplace(copy_label(name, copy), ray);
            if (!inserted && it->second != ray)
                throw Error(ErrorKind::VerificationFailure, "copies disagree on shared ray " + name);
        }
        for (const auto& b : dashed_blocks()) {
            Vector3 t = cross(cfg.vec(b[0]), cfg.vec(b[1]));
            if (t.is_zero())
                throw Error(ErrorKind::VerificationFailure, "dashed block third point vanishes for " + b[2]);
            rays.emplace(copy_label(b[2], copy), Ray(t));
        }
    }
    if (options.center_third_point) {
        Vector3 t = cross(copies[0].vec("u"), copies[1].vec("u"));
        rays.emplace("t12", Ray(t));
    }
    std::string why;
    if (!realization_ok(out.diagram, rays, &why))
        throw Error(ErrorKind::VerificationFailure, "witness realization: " + why);
    out.realization = std::move(rays);
    return out;
}

std::vector<Ray> bounded_height_rays(std::int64_t height)
{
    if (height < 1)
        throw Error(ErrorKind::InvalidArgument, "height bound must be positive");
    std::set<Rational> values;
    for (std::int64_t p = -height; p <= height; ++p)
        for (std::int64_t q = 1; q <= height; ++q) {
            Rational r{Integer(p), Integer(q)};
            r.canonicalize();
            values.insert(r);
        }
    std::vector<Rational> vs(values.begin(), values.end());
    std::vector<Ray> rays;
    Scalar o(0), l(1);
    for (const auto& a : vs)
        for (const auto& b : vs)
            rays.emplace_back(Vector3(l, Scalar(a), Scalar(b)));
    for (const auto& b : vs)
        rays.emplace_back(Vector3(o, l, Scalar(b)));
    rays.emplace_back(Vector3(o, o, l));
    return rays;
}

GreechieDiagram orthogonality_diagram(const std::vector<Ray>& rays)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (orthogonal(rays[i], rays[j]))
                edges.emplace_back(i, j);
    GraphSpec g(rays.size(), std::move(edges));
    auto blocks = maximal_cliques(g);
    for (const auto& b : blocks)
        if (b.size() > 3)
            throw Error(ErrorKind::VerificationFailure, "orthogonal set of more than 3 rays in dimension 3");
    std::vector<std::string> labels;
    labels.reserve(rays.size());
    for (const auto& r : rays)
        labels.push_back(to_string(r));
    return GreechieDiagram(std::move(labels), std::move(blocks));
}


ObstructionReport r3_obstruction_certificates(std::size_t samples, std::int64_t height_bound, Deadline deadline,
                                              std::uint64_t seed, const WitnessOptions& witness)
{
    ObstructionReport report;

    // (a) sigma . tau for all sign vectors
    bool first = true;
    for (int s = 0; s < 8; ++s)
        for (int t = 0; t < 8; ++t) {
            std::int64_t dot = 0;
            for (int i = 0; i < 3; ++i)
                dot += ((s >> i & 1) ? -1 : 1) * ((t >> i & 1) ? -1 : 1);
            std::int64_t a = dot < 0 ? -dot : dot;
            if (first || a < report.sign_min_abs)
                report.sign_min_abs = a;
            first = false;
            ++report.sign_pairs;
        }

    // (b) random orthogonal pairs over Q; half the first rays are forced unbiased
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    auto basis = standard_basis(Field::Q);
    report.samples = samples;
    for (std::size_t i = 0; i < samples; ++i) {
        Vector3 u;
        if (coin(rng)) {
            Rational m = random_rational(rng);
            for (int k = 0; k < 3; ++k)
                u[k] = Scalar(coin(rng) ? Rational(-m) : m);
        } else {
            u = Vector3(Scalar(random_rational(rng)), Scalar(random_rational(rng)), Scalar(random_rational(rng)));
        }
        Vector3 v;
        do {
            Vector3 r(Scalar(random_rational(rng)), Scalar(random_rational(rng)), Scalar(random_rational(rng)));
            v = cross(u, r);
        } while (v.is_zero());
        bool ub_u = unbiased_wrt_block(Ray(u), basis);
        bool ub_v = unbiased_wrt_block(Ray(v), basis);
        report.unbiased_samples += ub_u;
        if (ub_u && ub_v && orthogonal(u, v))
            ++report.violations;
    }

    // (c) bounded-height host
    report.height = height_bound;
    auto start = std::chrono::steady_clock::now();
    auto rays = bounded_height_rays(height_bound);
    auto host = orthogonality_diagram(rays);
    report.host_rays = host.size();
    report.host_blocks = host.blocks().size();
    auto search = find_embedding(witness_diagram(witness), host, false, deadline);
    report.search = search.status;
    report.search_nodes = search.nodes;
    report.search_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace orthospace
