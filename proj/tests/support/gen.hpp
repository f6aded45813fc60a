#pragma once

// Seeded random audit instances shared by the property suites.

#include <random>
#include <string>
#include <vector>

#include "emaudit/dataset.hpp"
#include "emaudit/groups.hpp"

namespace testgen {

struct Instance {
  emaudit::GroupUniverse universe;
  std::vector<emaudit::Correspondence> cs;
};

// Universe of at most `max_groups` flattened values, drawn from a few
// attribute shapes (binary, multi-exclusive, setwise, and two-attribute
// mixes); rows get valid memberships, random decisions, truths and scores.
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_rows = 200,
                                std::size_t max_groups = 6) {
  using namespace emaudit;
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  std::vector<std::vector<SensitiveAttribute>> shapes = {
      {{"race", AttributeKind::Binary, {"a", "b"}}},
      {{"country", AttributeKind::MultiExclusive, {"a", "b", "c"}}},
      {{"genre", AttributeKind::Setwise, {"a", "b", "c"}}},
      {{"gender", AttributeKind::Binary, {"a", "b"}},
       {"genre", AttributeKind::Setwise, {"c", "d", "e"}}},
      {{"gender", AttributeKind::Binary, {"a", "b"}},
       {"country", AttributeKind::MultiExclusive, {"c", "d", "e"}}},
  };
  Instance inst;
  while (true) {
    auto shape = shapes[pick(shapes.size())];
    std::size_t m = 0;
    for (const auto& attr : shape) m += attr.domain.size();
    if (m <= max_groups) {
      inst.universe = GroupUniverse(shape);
      break;
    }
  }

  std::size_t rows = pick(max_rows + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    Correspondence c;
    c.id_left = "l" + std::to_string(i);
    c.id_right = "r" + std::to_string(i);
    auto draw_entity = [&]() {
      GroupEncoding enc(inst.universe.size());
      for (std::size_t a = 0; a < inst.universe.attributes().size(); ++a) {
        auto [first, last] = inst.universe.attribute_span(a);
        if (inst.universe.attributes()[a].kind == AttributeKind::Setwise) {
          for (std::size_t bit = first; bit < last; ++bit) {
            if (pick(2) == 0) enc.set(bit);
          }
        } else {
          enc.set(first + pick(last - first));
        }
      }
      return enc;
    };
    c.groups_left = draw_entity();
    c.groups_right = draw_entity();
    c.decision = pick(2) == 0 ? MatchLabel::Match : MatchLabel::NonMatch;
    c.truth = pick(2) == 0 ? MatchLabel::Match : MatchLabel::NonMatch;
    c.score = static_cast<double>(pick(101)) / 100.0;
    inst.cs.push_back(std::move(c));
  }
  return inst;
}

}  // namespace testgen
