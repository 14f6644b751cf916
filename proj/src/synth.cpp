#include "stopforge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace stopforge {

namespace {

// Fixed collocation structure: each content word continues into one of
// kFanout fixed partners unless the phrase restarts with a fresh Zipf head.
// Content words therefore keep Zipf-skewed frequencies while accumulating
// few distinct successors; the uniformly inserted function words bridge
// arbitrary phrases and accumulate many.
constexpr std::uint32_t kFanout = 2;
constexpr double kRestartProbability = 0.15;

// All randomness below maps mt19937_64 outputs through fully specified
// arithmetic, so the stream is identical on every platform.
double next_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

std::uint64_t next_index(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

std::vector<std::string> make_names(std::string_view prefix, std::uint32_t count) {
  int width = 4;
  for (std::uint32_t v = count; v >= 10000; v /= 10) ++width;
  std::vector<std::string> names;
  names.reserve(count);
  char buf[32];
  for (std::uint32_t i = 1; i <= count; ++i) {
    std::snprintf(buf, sizeof buf, "%.*s%0*u", static_cast<int>(prefix.size()),
                  prefix.data(), width, i);
    names.emplace_back(buf);
  }
  return names;
}

void validate(const SynthConfig& config) {
  if (config.n_docs == 0) throw std::invalid_argument("n_docs must be positive");
  if (config.doc_len_min == 0)
    throw std::invalid_argument("doc_len_min must be positive");
  if (config.doc_len_min > config.doc_len_max)
    throw std::invalid_argument("doc_len_min must not exceed doc_len_max");
  if (config.function_vocab_size == 0 || config.content_vocab_size == 0)
    throw std::invalid_argument("vocabulary sizes must be positive");
  if (!(config.zipf_exponent > 0.0))
    throw std::invalid_argument("zipf_exponent must be positive");
  if (!(config.connector_probability >= 0.0) || config.connector_probability > 1.0)
    throw std::invalid_argument("connector_probability must lie in [0, 1]");
}

}  // namespace

std::pair<Corpus, GroundTruth> synth_generate(const SynthConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.seed);

  const std::uint32_t ncw = config.content_vocab_size;
  std::vector<double> zipf_cdf(ncw);
  double total = 0.0;
  for (std::uint32_t i = 0; i < ncw; ++i) {
    total += 1.0 / std::pow(static_cast<double>(i + 1), config.zipf_exponent);
    zipf_cdf[i] = total;
  }
  for (double& c : zipf_cdf) c /= total;
  auto zipf_draw = [&]() -> std::uint32_t {
    double u = next_real(rng);
    auto it = std::upper_bound(zipf_cdf.begin(), zipf_cdf.end(), u);
    if (it == zipf_cdf.end()) --it;
    return static_cast<std::uint32_t>(it - zipf_cdf.begin());
  };

  std::vector<std::uint32_t> partners(static_cast<std::size_t>(ncw) * kFanout);
  for (auto& p : partners) p = static_cast<std::uint32_t>(next_index(rng, ncw));

  std::vector<std::string> content_names = make_names("cw", ncw);
  std::vector<std::string> function_names = make_names("fw", config.function_vocab_size);

  std::vector<std::vector<std::string>> docs;
  docs.reserve(config.n_docs);
  std::vector<std::uint32_t> content;
  for (std::uint64_t d = 0; d < config.n_docs; ++d) {
    const std::uint64_t span = config.doc_len_max - config.doc_len_min + 1;
    const auto len = static_cast<std::uint32_t>(config.doc_len_min +
                                                next_index(rng, span));
    content.clear();
    content.push_back(zipf_draw());
    for (std::uint32_t i = 1; i < len; ++i) {
      if (next_real(rng) < kRestartProbability) {
        content.push_back(zipf_draw());
      } else {
        const std::uint32_t prev = content.back();
        content.push_back(partners[static_cast<std::size_t>(prev) * kFanout +
                                   next_index(rng, kFanout)]);
      }
    }
    std::vector<std::string> tokens;
    tokens.reserve(content.size() * 2);
    for (std::size_t i = 0; i < content.size(); ++i) {
      tokens.push_back(content_names[content[i]]);
      if (i + 1 < content.size() &&
          next_real(rng) < config.connector_probability) {
        tokens.push_back(
            function_names[next_index(rng, config.function_vocab_size)]);
      }
    }
    docs.push_back(std::move(tokens));
  }

  GroundTruth truth;
  truth.planted_stop_words = function_names;
  return {corpus_from_token_lists(std::move(docs)), std::move(truth)};
}

}  // namespace stopforge
