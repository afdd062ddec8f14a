#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace ftop {

/// The finite set of total functions {0..domain-1} -> {0..codomain-1}, indexed
/// in mixed radix with argument 0 as the most significant digit. Index 0 is
/// the constant-zero function; the order is lexicographic on image tables.
struct FunctionSpace {
  std::size_t domain = 0;
  std::size_t codomain = 0;

  /// codomain^domain, or nullopt on size_t overflow.
  std::optional<std::size_t> count() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < domain; ++i) {
      if (codomain != 0 && n > std::numeric_limits<std::size_t>::max() / codomain) return std::nullopt;
      n *= codomain;
    }
    return n;
  }

  std::vector<std::size_t> decode(std::size_t index) const {
    std::vector<std::size_t> table(domain);
    for (std::size_t i = domain; i-- > 0;) {
      table[i] = index % codomain;
      index /= codomain;
    }
    return table;
  }

  std::size_t encode(const std::vector<std::size_t>& table) const {
    std::size_t index = 0;
    for (std::size_t v : table) index = index * codomain + v;
    return index;
  }
};

/// Saturating product used for search-space bounds.
inline std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

inline std::size_t saturating_count(const FunctionSpace& space) {
  return space.count().value_or(std::numeric_limits<std::size_t>::max());
}

}  // namespace ftop
