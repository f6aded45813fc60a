#include "emaudit/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

namespace emaudit {

std::string_view feature_name(Feature f) {
  switch (f) {
    case Feature::Exact: return "exact";
    case Feature::LevenshteinNorm: return "levenshtein";
    case Feature::JaccardTokens: return "jaccard";
    case Feature::CosineTokens: return "cosine";
  }
  return "?";
}

std::optional<Feature> parse_feature(std::string_view token) {
  if (token == "exact") return Feature::Exact;
  if (token == "levenshtein") return Feature::LevenshteinNorm;
  if (token == "jaccard") return Feature::JaccardTokens;
  if (token == "cosine") return Feature::CosineTokens;
  return std::nullopt;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

namespace {

std::string normalize(std::string_view text, const SimilarityOptions& options) {
  std::string out(text);
  if (options.case_insensitive) {
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string token;
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!token.empty()) out.push_back(std::move(token)), token.clear();
    } else if (!std::ispunct(c)) {
      token += ch;
    }
  }
  if (!token.empty()) out.push_back(std::move(token));
  return out;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> sa(a), sb(b);
  std::sort(sa.begin(), sa.end());
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  std::sort(sb.begin(), sb.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::vector<std::string> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(common));
  double union_size = static_cast<double>(sa.size() + sb.size() - common.size());
  return static_cast<double>(common.size()) / union_size;
}

double cosine(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  std::map<std::string, std::pair<double, double>> counts;
  for (const auto& t : a) counts[t].first += 1.0;
  for (const auto& t : b) counts[t].second += 1.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [token, c] : counts) {
    dot += c.first * c.second;
    na += c.first * c.first;
    nb += c.second * c.second;
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

double similarity(Feature feature, std::string_view a, std::string_view b,
                  const SimilarityOptions& options) {
  std::string na = normalize(a, options);
  std::string nb = normalize(b, options);
  switch (feature) {
    case Feature::Exact:
      return na == nb ? 1.0 : 0.0;
    case Feature::LevenshteinNorm: {
      if (na.empty() && nb.empty()) return 1.0;
      std::size_t longest = std::max(na.size(), nb.size());
      return 1.0 - static_cast<double>(levenshtein(na, nb)) / static_cast<double>(longest);
    }
    case Feature::JaccardTokens:
      return jaccard(tokenize(na), tokenize(nb));
    case Feature::CosineTokens:
      return cosine(tokenize(na), tokenize(nb));
  }
  return 0.0;
}

}  // namespace emaudit
