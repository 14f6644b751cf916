#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stopforge/corpus.hpp"

namespace stopforge {

// Synthetic corpus with a planted set of function words. Documents are built
// from doc_len content words (Zipf-skewed frequencies, collocational
// successor structure) and, with connector_probability per gap between two
// consecutive content words, one uniformly sampled function word. The whole
// corpus is a pure function of the config: the stream is mt19937_64 seeded
// with `seed`, and all draws use fully specified mappings (53-bit mantissa
// uniforms, modulo index draws, inverse-CDF Zipf), so equal configs yield
// byte-identical corpora on every platform.
struct SynthConfig {
  std::uint64_t seed = 42;
  std::uint64_t n_docs = 2000;
  std::uint32_t doc_len_min = 6;   // content words per document, pre-insertion
  std::uint32_t doc_len_max = 12;  // inclusive
  std::uint32_t function_vocab_size = 20;
  std::uint32_t content_vocab_size = 500;
  double zipf_exponent = 1.1;           // > 0, content-word skew
  double connector_probability = 0.5;   // in [0, 1]
};

struct GroundTruth {
  std::vector<std::string> planted_stop_words;  // the function vocabulary
};

// Throws std::invalid_argument on invalid config fields.
std::pair<Corpus, GroundTruth> synth_generate(const SynthConfig& config);

}  // namespace stopforge
