#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace xorpso {

using Bit = std::uint8_t;

// Feature-selection vector: bit j set means feature j is used.
struct Mask {
  std::vector<Bit> bits;

  Mask() = default;
  explicit Mask(std::vector<Bit> b) : bits(std::move(b)) {}

  static Mask zeros(std::size_t n) { return Mask(std::vector<Bit>(n, 0)); }
  static Mask ones(std::size_t n) { return Mask(std::vector<Bit>(n, 1)); }
  static Mask from_indices(std::size_t n, std::span<const std::size_t> selected) {
    Mask m = zeros(n);
    for (std::size_t j : selected) m.bits.at(j) = 1;
    return m;
  }

  std::size_t size() const { return bits.size(); }
  Bit operator[](std::size_t j) const { return bits[j]; }

  std::size_t selected_count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), Bit{1}));
  }
  bool empty_selection() const { return selected_count() == 0; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j]) out.push_back(j);
    }
    return out;
  }

  bool is_binary() const {
    return std::all_of(bits.begin(), bits.end(), [](Bit b) { return b <= 1; });
  }

  friend bool operator==(const Mask&, const Mask&) = default;
  friend auto operator<=>(const Mask&, const Mask&) = default;
};

}  // namespace xorpso
