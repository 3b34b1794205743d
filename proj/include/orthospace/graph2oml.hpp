#pragma once

// Strong embeddings of finite graphs into orthogonality graphs of finite OMLs:
// first onto nonzero elements by induction on the vertex count, then onto
// atoms by iterated coatom extension.

#include <orthospace/greechie.hpp>
#include <orthospace/omlcore.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace orthospace {

enum class EmbeddingStage { Nonzero, Atoms };

std::string_view to_string(EmbeddingStage s);

struct StepSize {
    std::string step;  // e.g. "base", "lemma2[3]", "coatom[3]", "atoms[1]"
    std::size_t size = 0;
};

struct EmbeddingResult {
    FiniteOml oml;
    std::vector<std::size_t> vertex_map;  // vertex -> element index
    EmbeddingStage stage = EmbeddingStage::Nonzero;
    std::vector<StepSize> stats;
};

/// One-one f : G -> L \ {0} with x perp y iff f(x) perp f(y). Optimized mode
/// takes the Boolean factor over the image of the smaller embedding only.
/// Throws SizeLimitExceeded naming the step that overflowed.
EmbeddingResult embed_nonzero(const GraphSpec& g, Lemma2Mode mode = Lemma2Mode::Optimized);

/// embed_nonzero followed by iterated coatom extension at the images.
EmbeddingResult embed_atoms(const GraphSpec& g, Lemma2Mode mode = Lemma2Mode::Optimized);

/// Recomputes injectivity, nonzero images, atomhood (stage Atoms) and the
/// orthogonality pattern straight from the order rows.
CheckReport verify_strong_embedding(const EmbeddingResult& res, const GraphSpec& g);

nlohmann::json to_json(const EmbeddingResult& res);

}  // namespace orthospace
