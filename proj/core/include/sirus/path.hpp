#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sirus {

// Which side of a cut a region lies on: L means x < value, R means x >= value.
enum class Side : std::uint8_t { L = 0, R = 1 };

struct Split {
  std::int32_t j = 0;  // feature index
  std::int32_t r = 0;  // quantile index, 1..q-1
  Side side = Side::L;

  friend bool operator==(const Split& a, const Split& b) {
    return a.j == b.j && a.r == b.r && a.side == b.side;
  }
  friend bool operator<(const Split& a, const Split& b) {
    if (a.j != b.j) return a.j < b.j;
    if (a.r != b.r) return a.r < b.r;
    return a.side < b.side;
  }
};

// Two same-feature splits bound a non-empty region exactly when their quantile
// indices differ and the lower-r split is not the L side paired with an R side
// above it (that combination is the empty slab).
bool pair_feasible(const Split& a, const Split& b);

// One or two splits in canonical order (sorted by (j, r, side)). Identifies a
// hyperrectangle; equality and ordering are structural.
struct Path {
  std::uint8_t len = 0;
  std::array<Split, 2> s{};

  static Path single(const Split& a);
  // Canonicalizes; the pair must satisfy pair_feasible.
  static Path duo(const Split& a, const Split& b);

  friend bool operator==(const Path& a, const Path& b) {
    if (a.len != b.len) return false;
    for (std::uint8_t k = 0; k < a.len; ++k)
      if (!(a.s[k] == b.s[k])) return false;
    return true;
  }
  friend bool operator<(const Path& a, const Path& b) {
    const std::uint8_t m = a.len < b.len ? a.len : b.len;
    for (std::uint8_t k = 0; k < m; ++k) {
      if (a.s[k] < b.s[k]) return true;
      if (b.s[k] < a.s[k]) return false;
    }
    return a.len < b.len;
  }
};

std::string to_string(const Path& p);

}  // namespace sirus
