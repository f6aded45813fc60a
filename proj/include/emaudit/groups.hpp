#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace emaudit {

enum class AttributeKind { Binary, MultiExclusive, Setwise };

std::string_view attribute_kind_name(AttributeKind kind);
std::optional<AttributeKind> parse_attribute_kind(std::string_view text);

// One sensitive attribute together with its ordered value domain.
struct SensitiveAttribute {
  std::string name;
  AttributeKind kind = AttributeKind::MultiExclusive;
  std::vector<std::string> domain;
};

// Fixed-width bit vector over a group universe. The same representation is
// used for entity memberships and for subgroup definitions.
class GroupEncoding {
 public:
  GroupEncoding() = default;
  explicit GroupEncoding(std::size_t size) : bits_(size, false) {}
  GroupEncoding(std::initializer_list<bool> bits) : bits_(bits) {}

  std::size_t size() const { return bits_.size(); }
  bool test(std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value = true) { bits_[i] = value; }
  std::size_t count() const;
  bool any() const;

  // True when every set bit of *this is also set in `entity`, i.e. the
  // subgroup relation (this AND entity) == this. Throws LengthMismatch.
  bool contains(const GroupEncoding& entity) const;
  bool intersects(const GroupEncoding& other) const;

  std::vector<std::size_t> set_bits() const;
  std::string to_string() const;  // e.g. "10011"
  static GroupEncoding from_string(std::string_view bits);

  friend bool operator==(const GroupEncoding&, const GroupEncoding&) = default;
  friend std::strong_ordering operator<=>(const GroupEncoding& a, const GroupEncoding& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<bool> bits_;
};

// Ordered universe of group values: attribute declaration order first, then
// each attribute's domain order. Bit i of any GroupEncoding refers to
// flattened value i.
class GroupUniverse {
 public:
  GroupUniverse() = default;
  explicit GroupUniverse(std::vector<SensitiveAttribute> attributes);

  std::size_t size() const { return flat_names_.size(); }  // m
  const std::vector<SensitiveAttribute>& attributes() const { return attributes_; }

  const std::string& value_name(std::size_t bit) const { return flat_names_[bit]; }
  std::size_t attribute_of(std::size_t bit) const { return flat_attr_[bit]; }
  std::optional<std::size_t> find_bit(std::string_view value) const;
  std::size_t bit_index(std::string_view value) const;  // throws UnknownGroupValue

  // Half-open bit range [first, last) covered by attribute `attr`.
  std::pair<std::size_t, std::size_t> attribute_span(std::size_t attr) const;

  GroupEncoding encode(const std::vector<std::string>& memberships) const;
  std::vector<std::string> decode(const GroupEncoding& encoding) const;

  // Enforces the entity-side invariant: binary and multi-exclusive
  // attributes carry exactly one set bit. Throws AuditError on violation.
  void validate_entity(const GroupEncoding& encoding) const;

  // Human-readable label, set bits joined by '+': "Female+Pop".
  std::string label(const GroupEncoding& encoding) const;

  // All level-k subgroup encodings. Level 1 is the m singletons. Higher
  // levels combine values from distinct attributes; a setwise attribute may
  // contribute several values as long as another attribute contributes one.
  // `pure_setwise` additionally admits combinations drawn entirely from one
  // setwise attribute's domain.
  std::vector<GroupEncoding> level_subgroups(std::size_t k, bool pure_setwise = false) const;

 private:
  std::vector<SensitiveAttribute> attributes_;
  std::vector<std::string> flat_names_;
  std::vector<std::size_t> flat_attr_;
  std::vector<std::size_t> attr_first_bit_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace emaudit
