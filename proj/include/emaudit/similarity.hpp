#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace emaudit {

enum class Feature { Exact, LevenshteinNorm, JaccardTokens, CosineTokens };

std::string_view feature_name(Feature f);
std::optional<Feature> parse_feature(std::string_view token);

struct SimilarityOptions {
  // Inputs are lowercased before comparison unless disabled.
  bool case_insensitive = true;
};

std::size_t levenshtein(std::string_view a, std::string_view b);

// All features are symmetric and land in [0,1]; identical strings score 1.
// LevenshteinNorm is 1 - editdist/max(len); token features strip punctuation
// and split on whitespace (both scoring 1 when both token sets are empty).
double similarity(Feature feature, std::string_view a, std::string_view b,
                  const SimilarityOptions& options = {});

}  // namespace emaudit
