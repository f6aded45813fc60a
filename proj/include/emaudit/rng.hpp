#pragma once

#include <cstdint>
#include <random>

namespace emaudit {

// mt19937_64 with hand-rolled draws. The standard pins the engine's output
// sequence but not the distributions, so bounded sampling is done here to
// keep generated fixtures byte-identical across platforms.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound) via rejection sampling; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  char lowercase_letter() { return static_cast<char>('a' + below(26)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace emaudit
