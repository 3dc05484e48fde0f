#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace npk {

inline constexpr int kMaxDim = 63;

// Basis blade e_{a_1} ^ ... ^ e_{a_k} with a_1 < ... < a_k, stored as a bit
// set (bit a set for index a, indices are 1-based).
class Blade {
 public:
  constexpr Blade() = default;

  static constexpr Blade from_mask(std::uint64_t mask) {
    Blade b;
    b.mask_ = mask;
    return b;
  }

  static Blade single(int index) {
    check_index(index);
    return from_mask(std::uint64_t{1} << index);
  }

  // Throws unless the indices are strictly increasing and within 1..kMaxDim.
  static Blade from_indices(std::span<const int> indices) {
    std::uint64_t mask = 0;
    int prev = 0;
    for (int a : indices) {
      check_index(a);
      if (a <= prev) throw std::invalid_argument("indices must be strictly increasing");
      prev = a;
      mask |= std::uint64_t{1} << a;
    }
    return from_mask(mask);
  }
  static Blade from_indices(std::initializer_list<int> indices) {
    return from_indices(std::span<const int>(indices.begin(), indices.size()));
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int grade() const { return std::popcount(mask_); }
  constexpr bool contains(int index) const { return (mask_ >> index) & 1U; }
  constexpr int max_index() const { return mask_ == 0 ? 0 : 63 - std::countl_zero(mask_); }

  // Number of members strictly below `index`.
  constexpr int rank_of(int index) const {
    return std::popcount(mask_ & ((std::uint64_t{1} << index) - 1));
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    out.reserve(grade());
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  constexpr Blade without(int index) const {
    return from_mask(mask_ & ~(std::uint64_t{1} << index));
  }

  friend constexpr bool operator==(Blade, Blade) = default;

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int a : indices()) {
      if (!first) s += ',';
      s += std::to_string(a);
      first = false;
    }
    return s + "}";
  }

 private:
  static void check_index(int index) {
    if (index < 1 || index > kMaxDim)
      throw std::invalid_argument("blade index " + std::to_string(index) + " out of range");
  }

  std::uint64_t mask_ = 0;
};

// Grade first, then lexicographic order of the sorted index tuples.
struct BladeLess {
  constexpr bool operator()(Blade a, Blade b) const {
    if (a.grade() != b.grade()) return a.grade() < b.grade();
    std::uint64_t diff = a.mask() ^ b.mask();
    if (diff == 0) return false;
    return (a.mask() & (diff & -diff)) != 0;
  }
};

// Sign of e_A ^ e_B relative to e_{A u B}; 0 when the blades overlap.
constexpr int wedge_sign(Blade a, Blade b) {
  if ((a.mask() & b.mask()) != 0) return 0;
  int inversions = 0;
  for (std::uint64_t m = b.mask(); m != 0; m &= m - 1) {
    int idx = std::countr_zero(m);
    inversions += std::popcount(a.mask() >> (idx + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

// First-slot contraction i(eps^u) e_B: the sign is (-1)^(position of u in B).
constexpr int contract_sign(int index, Blade b) {
  if (!b.contains(index)) return 0;
  return (b.rank_of(index) & 1) ? -1 : 1;
}

// i(eps^{l_1} ^ ... ^ eps^{l_k}) e_B with factors applied innermost first,
// i(eps^{l_k}) o ... o i(eps^{l_1}). Returns 0 unless L is a subset of B.
constexpr int contract_sign(Blade form, Blade b) {
  if ((form.mask() & ~b.mask()) != 0) return 0;
  std::uint64_t rest = b.mask() & ~form.mask();
  int count = 0;
  for (std::uint64_t m = form.mask(); m != 0; m &= m - 1) {
    int idx = std::countr_zero(m);
    count += std::popcount(rest & ((std::uint64_t{1} << idx) - 1));
  }
  return (count & 1) ? -1 : 1;
}

// Sorts an arbitrary index tuple into a blade. Returns nullopt on repeats,
// otherwise the blade together with the permutation sign.
inline std::optional<std::pair<Blade, int>> sort_indices(std::span<const int> indices) {
  std::uint64_t mask = 0;
  int inversions = 0;
  for (int a : indices) {
    std::uint64_t bit = std::uint64_t{1} << a;
    if (mask & bit) return std::nullopt;
    inversions += std::popcount(mask >> (a + 1));
    mask |= bit;
  }
  return std::pair{Blade::from_mask(mask), (inversions & 1) ? -1 : 1};
}

// All blades of grade k drawn from 1..dim, in lexicographic order.
inline std::vector<Blade> blades_of_grade(int dim, int k) {
  std::vector<Blade> out;
  if (k < 0 || k > dim) return out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  while (true) {
    std::uint64_t mask = 0;
    for (int a : idx) mask |= std::uint64_t{1} << a;
    out.push_back(Blade::from_mask(mask));
    int i = k - 1;
    while (i >= 0 && idx[i] == dim - k + i + 1) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace npk
