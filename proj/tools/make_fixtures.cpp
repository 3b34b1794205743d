// Regenerates the fixture corpus: orthomodular lattices, diagrams and graphs.
//   orthospace-fixtures <dir>

#include <orthospace/greechie.hpp>
#include <orthospace/mubconfig.hpp>
#include <orthospace/omlcore.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace orthospace;
using nlohmann::json;

namespace {

void write(const std::filesystem::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump() << '\n';
}

// O6 given by its cover pairs only
json o6_covers()
{
    return {{"n", 6},
            {"leq", {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 5}}},
            {"ortho", {5, 4, 3, 2, 1, 0}},
            {"labels", {"0", "a", "b'", "b", "a'", "1"}}};
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: orthospace-fixtures <dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    std::filesystem::create_directories(dir);

    write(dir / "o6.json", to_json(benzene_o6()));
    write(dir / "o6-covers.json", o6_covers());
    for (std::size_t n = 0; n <= 3; ++n)
        write(dir / ("mo" + std::to_string(n) + ".json"), to_json(mo_n(n)));
    for (std::size_t k = 1; k <= 4; ++k)
        write(dir / ("bool" + std::to_string(k) + ".json"), to_json(boolean_powerset(k)));

    write(dir / "two-block.json",
          to_json(GreechieDiagram::from_labels({"a", "b", "c", "d", "e"}, {{"a", "b", "c"}, {"c", "d", "e"}})));
    write(dir / "figure1.json", to_json(figure1_diagram()));
    write(dir / "figure2.json", to_json(center_diagram()));
    write(dir / "witness.json", to_json(witness_diagram()));

    write(dir / "k1.json", to_json(GraphSpec(1, {})));
    write(dir / "k2.json", to_json(GraphSpec::complete(2)));
    write(dir / "p3.json", to_json(GraphSpec(3, {{0, 1}, {1, 2}})));
    write(dir / "c4.json", to_json(GraphSpec(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})));
    json graphs = json::array();
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * (n - 1) / 2)); ++mask)
            graphs.push_back(to_json(GraphSpec::from_edge_mask(n, mask)));
    write(dir / "graphs-upto4.json", graphs);
    return 0;
}
