#include "emaudit/groups.hpp"

#include <algorithm>

#include "emaudit/errors.hpp"

namespace emaudit {

std::string_view attribute_kind_name(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::Binary: return "binary";
    case AttributeKind::MultiExclusive: return "multi-exclusive";
    case AttributeKind::Setwise: return "setwise";
  }
  return "?";
}

std::optional<AttributeKind> parse_attribute_kind(std::string_view text) {
  if (text == "binary") return AttributeKind::Binary;
  if (text == "multi-exclusive" || text == "exclusive") return AttributeKind::MultiExclusive;
  if (text == "setwise") return AttributeKind::Setwise;
  return std::nullopt;
}

std::size_t GroupEncoding::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool GroupEncoding::any() const {
  return std::find(bits_.begin(), bits_.end(), true) != bits_.end();
}

bool GroupEncoding::contains(const GroupEncoding& entity) const {
  if (size() != entity.size()) throw LengthMismatch(size(), entity.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !entity.bits_[i]) return false;
  }
  return true;
}

bool GroupEncoding::intersects(const GroupEncoding& other) const {
  if (size() != other.size()) throw LengthMismatch(size(), other.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && other.bits_[i]) return true;
  }
  return false;
}

std::vector<std::size_t> GroupEncoding::set_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

std::string GroupEncoding::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i] = '1';
  }
  return out;
}

GroupEncoding GroupEncoding::from_string(std::string_view bits) {
  GroupEncoding out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i);
    } else if (bits[i] != '0') {
      throw AuditError("encoding string must contain only 0s and 1s");
    }
  }
  return out;
}

GroupUniverse::GroupUniverse(std::vector<SensitiveAttribute> attributes)
    : attributes_(std::move(attributes)) {
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    const auto& attr = attributes_[a];
    if (attr.domain.empty()) {
      throw ConfigError("attribute '" + attr.name + "' has an empty domain");
    }
    if (attr.kind == AttributeKind::Binary && attr.domain.size() != 2) {
      throw ConfigError("binary attribute '" + attr.name + "' must have exactly two values");
    }
    attr_first_bit_.push_back(flat_names_.size());
    for (const auto& value : attr.domain) {
      if (value.empty()) {
        throw ConfigError("attribute '" + attr.name + "' has an empty group value");
      }
      // Bare value names are the lookup key in data files, so they must be
      // unique across the whole universe, not just within one attribute.
      if (!index_.emplace(value, flat_names_.size()).second) {
        throw ConfigError("duplicate group value '" + value + "' in universe");
      }
      flat_names_.push_back(value);
      flat_attr_.push_back(a);
    }
  }
}

std::optional<std::size_t> GroupUniverse::find_bit(std::string_view value) const {
  auto it = index_.find(std::string(value));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GroupUniverse::bit_index(std::string_view value) const {
  auto bit = find_bit(value);
  if (!bit) throw UnknownGroupValue(std::string(value));
  return *bit;
}

std::pair<std::size_t, std::size_t> GroupUniverse::attribute_span(std::size_t attr) const {
  std::size_t first = attr_first_bit_[attr];
  std::size_t last = attr + 1 < attributes_.size() ? attr_first_bit_[attr + 1] : size();
  return {first, last};
}

GroupEncoding GroupUniverse::encode(const std::vector<std::string>& memberships) const {
  GroupEncoding out(size());
  for (const auto& value : memberships) {
    out.set(bit_index(value));
  }
  return out;
}

std::vector<std::string> GroupUniverse::decode(const GroupEncoding& encoding) const {
  if (encoding.size() != size()) throw LengthMismatch(encoding.size(), size());
  std::vector<std::string> out;
  for (std::size_t bit : encoding.set_bits()) {
    out.push_back(flat_names_[bit]);
  }
  return out;
}

void GroupUniverse::validate_entity(const GroupEncoding& encoding) const {
  if (encoding.size() != size()) throw LengthMismatch(encoding.size(), size());
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    if (attributes_[a].kind == AttributeKind::Setwise) continue;
    auto [first, last] = attribute_span(a);
    std::size_t set = 0;
    for (std::size_t i = first; i < last; ++i) {
      if (encoding.test(i)) ++set;
    }
    if (set != 1) {
      throw AuditError("entity must hold exactly one value of attribute '" +
                       attributes_[a].name + "', found " + std::to_string(set));
    }
  }
}

std::string GroupUniverse::label(const GroupEncoding& encoding) const {
  std::string out;
  for (std::size_t bit : encoding.set_bits()) {
    if (!out.empty()) out += '+';
    out += flat_names_[bit];
  }
  return out.empty() ? "(none)" : out;
}

namespace {

// Recursive k-subset enumeration in lexicographic bit order, pruning
// combinations that put two bits in one exclusive attribute.
void enumerate_combinations(const GroupUniverse& universe, std::size_t k,
                            bool pure_setwise, std::size_t next_bit,
                            std::vector<std::size_t>& chosen,
                            std::vector<GroupEncoding>& out) {
  if (chosen.size() == k) {
    if (k >= 2 && !pure_setwise) {
      // Figure-1 convention: a multi-bit subgroup must span at least two
      // attributes; only the pure_setwise flag admits same-attribute combos.
      std::size_t first_attr = universe.attribute_of(chosen.front());
      bool single_attr = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t b) {
        return universe.attribute_of(b) == first_attr;
      });
      if (single_attr) return;
    }
    GroupEncoding enc(universe.size());
    for (std::size_t bit : chosen) enc.set(bit);
    out.push_back(std::move(enc));
    return;
  }
  for (std::size_t bit = next_bit; bit + (k - chosen.size()) <= universe.size(); ++bit) {
    std::size_t attr = universe.attribute_of(bit);
    if (universe.attributes()[attr].kind != AttributeKind::Setwise) {
      bool attr_taken = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t b) {
        return universe.attribute_of(b) == attr;
      });
      if (attr_taken) continue;
    }
    chosen.push_back(bit);
    enumerate_combinations(universe, k, pure_setwise, bit + 1, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<GroupEncoding> GroupUniverse::level_subgroups(std::size_t k, bool pure_setwise) const {
  std::vector<GroupEncoding> out;
  if (k == 0 || k > size()) return out;
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  enumerate_combinations(*this, k, pure_setwise, 0, chosen, out);
  return out;
}

}  // namespace emaudit
