#include <orthospace/cli.hpp>

#include <orthospace/graph2oml.hpp>
#include <orthospace/mubconfig.hpp>
#include <orthospace/omlcore.hpp>
#include <orthospace/taoembed.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace orthospace::cli {

namespace {

using nlohmann::json;

/// Error kinds that mean the caller handed us bad input (exit 2).
bool is_input_error(ErrorKind k)
{
    switch (k) {
    case ErrorKind::VerificationFailure:
    case ErrorKind::DegenerateConfiguration:
    case ErrorKind::PasteVerificationFailure:
    case ErrorKind::SizeLimitExceeded:
    case ErrorKind::BlockNotOrthogonal:
        return false;
    default:
        return true;
    }
}

std::string plain(const json& v)
{
    return v.is_string() ? v.get<std::string>() : v.dump();
}

class Reporter {
public:
    Reporter(std::ostream& out, bool pretty, std::string command)
        : out_(out), pretty_(pretty), command_(std::move(command))
    {
    }

    void record(const json& j)
    {
        if (!pretty_) {
            out_ << j.dump() << '\n';
            return;
        }
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            out_ << (first ? "" : "  ") << it.key() << "=" << plain(it.value());
            first = false;
        }
        out_ << '\n';
    }

    int summary(json j, bool ok)
    {
        j["command"] = command_;
        j["ok"] = ok;
        j["summary"] = true;
        if (!pretty_) {
            out_ << j.dump() << '\n';
        } else {
            out_ << command_ << ": " << (ok ? "ok" : "FAILED") << '\n';
            for (auto it = j.begin(); it != j.end(); ++it)
                if (it.key() != "command" && it.key() != "ok" && it.key() != "summary")
                    out_ << "  " << it.key() << ": " << plain(it.value()) << '\n';
        }
        return ok ? 0 : 1;
    }

private:
    std::ostream& out_;
    bool pretty_;
    std::string command_;
};

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

GraphSpec load_graph(const std::string& path)
{
    return graph_from_json(read_json_file(path));
}

GreechieDiagram two_block_diagram()
{
    return GreechieDiagram::from_labels({"a", "b", "c", "d", "e"}, {{"a", "b", "c"}, {"c", "d", "e"}});
}

GreechieDiagram builtin_diagram(const std::string& name, bool include_rim)
{
    if (name == "figure1")
        return figure1_diagram(include_rim);
    if (name == "center")
        return center_diagram(include_rim);
    if (name == "witness")
        return witness_diagram({false, include_rim});
    if (name == "two-block")
        return two_block_diagram();
    throw Error(ErrorKind::InvalidArgument, "unknown built-in diagram '" + name + "'");
}

/// A diagram file, or a graph file (has "edges") turned into its diagram.
GreechieDiagram load_diagram(const std::string& path)
{
    json j = read_json_file(path);
    if (j.is_object() && j.contains("edges"))
        return diagram_from_graph(graph_from_json(j));
    return diagram_from_json(j);
}

std::array<Scalar, 3> triple(const std::string& x, const std::string& y, const std::string& z,
                             const std::string& field)
{
    std::array<Scalar, 3> t{parse_scalar(x), parse_scalar(y), parse_scalar(z)};
    Field f = t[0].field();
    if (!field.empty())
        f = parse_field(field);
    else if (t[1].field() == Field::Qw || t[2].field() == Field::Qw)
        f = Field::Qw;
    for (auto& s : t)
        s = s.in_field(f);
    return t;
}

json scalars(const std::array<Scalar, 3>& s)
{
    return json::array({to_string(s[0]), to_string(s[1]), to_string(s[2])});
}

std::string search_name(SearchStatus s)
{
    switch (s) {
    case SearchStatus::Found:
        return "found";
    case SearchStatus::None:
        return "none";
    default:
        return "timeout";
    }
}

struct Options {
    bool pretty = false;
    std::uint64_t seed = 0;
};

int cmd_figure1(Reporter& rep, const std::string& x, const std::string& y, const std::string& z,
                const std::string& field)
{
    auto t = triple(x, y, z, field);
    Figure1Config cfg = build_figure1(t[0], t[1], t[2]);
    for (const auto& name : figure1_names())
        rep.record({{"name", name}, {"ray", to_json(cfg.ray(name))}});
    json extra = json::array();
    for (const auto& [a, b] : cfg.extra_orthogonal)
        extra.push_back({a, b});
    auto loops = min_loop_order(cfg.diagram);
    return rep.summary({{"field", to_string(cfg.field)},
                        {"u", scalars(t)},
                        {"rays", cfg.rays.size()},
                        {"blocks", cfg.diagram.blocks().size()},
                        {"extra_orthogonal", extra},
                        {"min_loop_order", loops ? json(*loops) : json(nullptr)}},
                       true);
}

json certificate_json(const CenterCertificate& c)
{
    return {{"u", scalars({c.x, c.y, c.z})},
            {"products", scalars(c.products)},
            {"closed_forms", scalars(c.closed_forms)},
            {"is_center", c.is_center},
            {"is_unbiased", c.is_unbiased},
            {"consistent", c.consistent()}};
}

int cmd_center(Reporter& rep, const Options& opt, const std::string& x, const std::string& y, const std::string& z,
               const std::string& field, std::size_t samples)
{
    if (samples == 0) {
        auto t = triple(x, y, z, field);
        auto cert = center_test(t[0], t[1], t[2]);
        return rep.summary(certificate_json(cert), cert.consistent());
    }
    std::vector<Field> fields;
    if (field.empty())
        fields = {Field::Q, Field::Qw};
    else
        fields = {parse_field(field)};
    std::mt19937_64 rng(opt.seed);
    std::size_t total = 0, agree = 0, centers = 0;
    for (Field f : fields)
        for (std::size_t i = 0; i < samples; ++i) {
            Scalar a = random_nonzero_scalar(rng, f), b = random_nonzero_scalar(rng, f),
                   c = random_nonzero_scalar(rng, f);
            auto cert = center_test(a, b, c);
            ++total;
            agree += cert.consistent();
            centers += cert.is_center;
            if (!cert.consistent())
                rep.record(certificate_json(cert));
        }
    return rep.summary({{"samples", total}, {"agreements", agree}, {"centers", centers}, {"seed", opt.seed}},
                       agree == total);
}

int cmd_mub(Reporter& rep)
{
    MubTable t = mub_table();
    bool orthogonal_rows = true;
    std::set<Rational> cosines;
    std::size_t pairs = 0;
    for (std::size_t r = 0; r < 4; ++r) {
        json rays = json::array();
        for (const auto& ray : t[r])
            rays.push_back(to_json(ray));
        rep.record({{"basis", r + 1}, {"rays", rays}});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                orthogonal_rows = orthogonal_rows && orthogonal(t[r][i], t[r][j]);
        for (std::size_t s = r + 1; s < 4; ++s)
            for (const auto& u : t[r])
                for (const auto& v : t[s]) {
                    cosines.insert(squared_cosine(u, v));
                    ++pairs;
                }
    }
    json cos = json::array();
    for (const auto& q : cosines)
        cos.push_back(to_string(q));
    bool ok = orthogonal_rows && cosines == std::set<Rational>{Rational(1, 3)};
    return rep.summary({{"bases", 4}, {"cross_pairs", pairs}, {"squared_cosines", cos}, {"orthogonal_bases", orthogonal_rows}},
                       ok);
}

int cmd_witness(Reporter& rep, bool verify, const std::string& dot_path, const std::string& json_path,
                const WitnessOptions& wopt)
{
    WitnessDiagram w;
    if (verify)
        w = build_witness(wopt);
    else
        w.diagram = witness_diagram(wopt);
    if (!dot_path.empty())
        write_text_file(dot_path, to_dot(w.diagram));
    if (!json_path.empty())
        write_text_file(json_path, to_json(w.diagram).dump() + "\n");
    json summary = {{"vertices", w.diagram.size()}, {"blocks", w.diagram.blocks().size()}, {"verified", false}};
    bool ok = true;
    if (verify) {
        for (const auto& name : w.diagram.vertices())
            rep.record({{"name", name}, {"ray", to_json(w.realization->at(name))}});
        std::string why;
        ok = realization_ok(w.diagram, *w.realization, &why);
        std::set<std::string> distinct;
        for (const auto& [name, ray] : *w.realization)
            distinct.insert(to_string(ray));
        summary["rays"] = distinct.size();
        summary["verified"] = ok;
        if (!ok)
            summary["detail"] = why;
    }
    return rep.summary(summary, ok);
}

int cmd_obstruct(Reporter& rep, const Options& opt, std::size_t samples, std::int64_t height, std::int64_t timeout_ms,
                 bool include_rim, bool timing)
{
    if (height < 1)
        throw Error(ErrorKind::InvalidArgument, "height must be positive");
    auto report = r3_obstruction_certificates(samples, height, deadline_after(std::chrono::milliseconds(timeout_ms)),
                                              opt.seed, {false, include_rim});
    json s = {{"sign_min_abs", report.sign_min_abs},
              {"sign_pairs", report.sign_pairs},
              {"samples", report.samples},
              {"unbiased_samples", report.unbiased_samples},
              {"violations", report.violations},
              {"height", report.height},
              {"host_rays", report.host_rays},
              {"host_blocks", report.host_blocks},
              {"search", search_name(report.search)},
              {"search_nodes", report.search_nodes},
              {"seed", opt.seed}};
    if (timing)
        s["search_seconds"] = report.search_seconds;
    bool ok = report.sign_min_abs == 1 && report.violations == 0 && report.search == SearchStatus::None;
    return rep.summary(s, ok);
}

int cmd_tao(Reporter& rep, const std::string& graph_path, bool emit_gram)
{
    GraphSpec g = load_graph(graph_path);
    auto vs = tao_vectors(g);
    auto report = verify_gram(vs, g);
    auto text = [](const RationalVector& v) {
        json a = json::array();
        for (const auto& q : v)
            a.push_back(to_string(q));
        return a;
    };
    for (std::size_t i = 0; i < vs.size(); ++i)
        rep.record({{"vertex", i}, {"vector", text(vs[i])}});
    if (emit_gram) {
        json rows = json::array();
        for (const auto& row : report.gram)
            rows.push_back(text(row));
        rep.record({{"gram", rows}});
    }
    bool ok = report.pattern_ok && report.nonneg_ok && report.rank == g.size();
    return rep.summary({{"n", g.size()},
                        {"dimension", vs.front().size()},
                        {"rank", report.rank},
                        {"pattern_ok", report.pattern_ok},
                        {"nonneg_ok", report.nonneg_ok}},
                       ok);
}

int cmd_check_oml(Reporter& rep, const std::string& path, bool covers)
{
    FiniteOml l = oml_from_json(read_json_file(path), covers);
    auto r = check_oml(l);
    json witness = json::array();
    for (auto x : r.witness)
        witness.push_back(l.label(x));
    json s = {{"n", l.size()}, {"passed", r.passed}};
    if (!r.passed) {
        s["law"] = r.law;
        s["witness"] = witness;
        s["detail"] = r.detail;
    } else {
        s["atoms"] = l.atoms().size();
    }
    return rep.summary(s, r.passed);
}

int cmd_embed(Reporter& rep, const std::string& graph_path, const std::string& mode, const std::string& stage,
              const std::string& emit_oml, bool stats)
{
    GraphSpec g = load_graph(graph_path);
    Lemma2Mode m = mode == "faithful" ? Lemma2Mode::Faithful : Lemma2Mode::Optimized;
    EmbeddingResult res = stage == "nonzero" ? embed_nonzero(g, m) : embed_atoms(g, m);
    auto verified = verify_strong_embedding(res, g);
    auto lattice = check_oml(res.oml);
    if (emit_oml.empty())
        rep.record({{"oml", to_json(res.oml)}});
    else
        write_text_file(emit_oml, to_json(res.oml).dump() + "\n");
    json labels = json::array();
    for (auto x : res.vertex_map)
        labels.push_back(res.oml.label(x));
    rep.record({{"vertex_map", res.vertex_map}, {"vertex_labels", labels}});
    if (stats) {
        json s = json::array();
        for (const auto& st : res.stats)
            s.push_back({{"step", st.step}, {"size", st.size}});
        rep.record({{"stats", s}});
    }
    json s = {{"n", g.size()},
              {"mode", mode},
              {"stage", to_string(res.stage)},
              {"size", res.oml.size()},
              {"oml_ok", lattice.passed},
              {"embedding_ok", verified.passed}};
    if (!verified.passed)
        s["detail"] = verified.law + ": " + verified.detail;
    if (!lattice.passed)
        s["law"] = lattice.law;
    return rep.summary(s, verified.passed && lattice.passed);
}

int cmd_loops(Reporter& rep, const GreechieDiagram& d)
{
    auto n = min_loop_order(d);
    return rep.summary(
        {{"vertices", d.size()}, {"blocks", d.blocks().size()}, {"min_loop_order", n ? json(*n) : json(nullptr)}},
        true);
}

int cmd_find(Reporter& rep, const GreechieDiagram& pattern, const GreechieDiagram& host, bool full,
             std::int64_t timeout_ms)
{
    auto r = find_embedding(pattern, host, full, deadline_after(std::chrono::milliseconds(timeout_ms)));
    json s = {{"status", search_name(r.status)}, {"nodes", r.nodes}, {"full", full}};
    if (r.embedding) {
        json mapping = json::object();
        for (std::size_t i = 0; i < pattern.size(); ++i)
            mapping[pattern.vertices()[i]] = host.vertices()[r.embedding->mapping[i]];
        s["mapping"] = mapping;
    }
    return rep.summary(s, r.status != SearchStatus::Timeout);
}

int run_checked(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact orthogonality-space toolkit", "orthospace"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--pretty", opt.pretty, "Human-readable output instead of JSON lines");
    app.add_option("--seed", opt.seed, "Seed for randomized checks");

    std::string x = "1", y = "1", z = "1", field;
    auto add_triple = [&](CLI::App* sub) {
        sub->add_option("--x", x, "First coordinate of u");
        sub->add_option("--y", y, "Second coordinate of u");
        sub->add_option("--z", z, "Third coordinate of u");
        sub->add_option("--field", field, "Q or Qw")->check(CLI::IsMember({"Q", "Qw"}));
    };

    auto* figure1 = app.add_subcommand("figure1", "Build and verify the 22-ray configuration for u = <x,y,z>");
    add_triple(figure1);

    std::size_t center_samples = 0;
    auto* center = app.add_subcommand("center", "Center test against the standard basis");
    add_triple(center);
    center->add_option("--samples", center_samples, "Check this many random triples per field instead");

    auto* mub = app.add_subcommand("mub", "Verify the four mutually unbiased bases");

    bool verify = false, include_rim = false, third = false;
    std::string dot_path, json_path;
    auto* witness = app.add_subcommand("witness", "The glued two-center diagram");
    witness->add_flag("--verify", verify, "Build and verify the C^3 realization");
    witness->add_option("--emit-dot", dot_path, "Write the diagram as DOT");
    witness->add_option("--emit-json", json_path, "Write the diagram as JSON");
    witness->add_flag("--include-rim", include_rim, "Add the rim block {a1,a2,a3}");
    witness->add_flag("--center-third-point", third, "Add a third point to the block of the two centers");

    std::size_t samples = 10000;
    std::int64_t height = 4, timeout_ms = 600000;
    bool timing = false;
    auto* obstruct = app.add_subcommand("obstruct", "Certificates that the witness has no R^3 realization");
    obstruct->add_option("--samples", samples, "Random orthogonal pairs to test");
    obstruct->add_option("--height", height, "Height bound of the exhaustive ray host");
    obstruct->add_option("--timeout-ms", timeout_ms, "Budget for the embedding search");
    obstruct->add_flag("--include-rim", include_rim, "Use the witness variant with rim blocks");
    obstruct->add_flag("--timing", timing, "Report wall-clock time of the search");

    std::string graph_path;
    bool emit_gram = false;
    auto* tao = app.add_subcommand("tao", "Nonnegative orthogonal representation of a graph");
    tao->add_option("--graph", graph_path, "Graph JSON")->required();
    tao->add_flag("--emit-gram", emit_gram, "Also print the Gram matrix");

    std::string oml_path;
    bool covers = false;
    auto* check = app.add_subcommand("check-oml", "Check the orthomodular lattice laws");
    check->add_option("file", oml_path, "OML JSON")->required();
    check->add_flag("--covers", covers, "The leq list holds cover pairs; take the closure");

    std::string mode = "optimized", stage = "atoms", emit_oml;
    bool stats = false;
    auto* embed = app.add_subcommand("embed", "Embed a graph into the orthogonality graph of a finite OML");
    embed->add_option("--graph", graph_path, "Graph JSON")->required();
    embed->add_option("--mode", mode, "optimized or faithful")->check(CLI::IsMember({"optimized", "faithful"}));
    embed->add_option("--stage", stage, "nonzero or atoms")->check(CLI::IsMember({"nonzero", "atoms"}));
    embed->add_option("--emit-oml", emit_oml, "Write the lattice JSON here instead of stdout");
    embed->add_flag("--stats", stats, "Print the size of every intermediate lattice");

    std::string diagram_path, builtin;
    auto add_diagram_input = [&](CLI::App* sub) {
        auto* file = sub->add_option("diagram", diagram_path, "Diagram or graph JSON");
        auto* named = sub->add_option("--builtin", builtin, "figure1, center, witness or two-block");
        file->excludes(named);
        sub->add_flag("--include-rim", include_rim, "Built-in diagrams with the rim block");
    };
    auto load = [&] {
        if (!builtin.empty())
            return builtin_diagram(builtin, include_rim);
        if (diagram_path.empty())
            throw CLI::RequiredError("a diagram file or --builtin");
        return load_diagram(diagram_path);
    };

    auto* loops = app.add_subcommand("loops", "Smallest loop order of a diagram");
    add_diagram_input(loops);

    std::string pattern_path, host_path;
    bool full = false;
    auto* find = app.add_subcommand("find-subdiagram", "Search for an embedding of one diagram into another");
    find->add_option("--pattern", pattern_path, "Pattern diagram JSON")->required();
    find->add_option("--host", host_path, "Host diagram JSON")->required();
    find->add_flag("--full", full, "Also preserve non-adjacency");
    find->add_option("--timeout-ms", timeout_ms, "Search budget");

    std::string format = "dot";
    auto* render = app.add_subcommand("render", "Print a diagram as DOT or JSON");
    add_diagram_input(render);
    render->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    Reporter rep(out, opt.pretty, command);
    try {
        if (figure1->parsed())
            return cmd_figure1(rep, x, y, z, field);
        if (center->parsed())
            return cmd_center(rep, opt, x, y, z, field, center_samples);
        if (mub->parsed())
            return cmd_mub(rep);
        if (witness->parsed())
            return cmd_witness(rep, verify, dot_path, json_path, {third, include_rim});
        if (obstruct->parsed())
            return cmd_obstruct(rep, opt, samples, height, timeout_ms, include_rim, timing);
        if (tao->parsed())
            return cmd_tao(rep, graph_path, emit_gram);
        if (check->parsed())
            return cmd_check_oml(rep, oml_path, covers);
        if (embed->parsed())
            return cmd_embed(rep, graph_path, mode, stage, emit_oml, stats);
        if (loops->parsed())
            return cmd_loops(rep, load());
        if (find->parsed())
            return cmd_find(rep, load_diagram(pattern_path), load_diagram(host_path), full, timeout_ms);
        if (render->parsed()) {
            GreechieDiagram d = load();
            out << (format == "json" ? to_json(d).dump() + "\n" : to_dot(d));
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        err << "orthospace " << command << ": " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        if (is_input_error(e.kind())) {
            err << "orthospace " << command << ": " << e.what() << '\n';
            return 2;
        }
        return rep.summary({{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}, false);
    }
    return 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        return run_checked(args, out, err);
    } catch (const std::exception& e) {
        err << "orthospace: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace orthospace::cli
