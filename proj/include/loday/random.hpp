#pragma once

// Seeded generators of random elements for property checks.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "loday/gca.hpp"

namespace loday {

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  // Independent stream derived from a seed and a label, e.g. a statement index.
  static Random derived(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                      std::uint32_t(stream >> 32)};
    std::mt19937_64 e(seq);
    return Random(e());
  }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  // Small nonzero rational, mostly integers.
  Rational coefficient() {
    int p = integer(1, 3) * (coin() ? 1 : -1);
    int q = integer(0, 4) == 0 ? 2 : 1;
    return rational(p, q);
  }

  // Random monomial of total degree <= max_degree in the given even generators.
  Monomial even_monomial(const ContextPtr& ctx, const std::vector<std::size_t>& evens,
                         unsigned max_degree) {
    Monomial m(ctx->size());
    if (evens.empty()) return m;
    unsigned deg = unsigned(integer(0, int(max_degree)));
    for (unsigned k = 0; k < deg; ++k) m[evens[std::size_t(integer(0, int(evens.size()) - 1))]] += 1;
    return m;
  }

  // Random subset of exactly k positions.
  std::vector<std::size_t> subset(const std::vector<std::size_t>& from, std::size_t k) {
    std::vector<std::size_t> v = from;
    std::shuffle(v.begin(), v.end(), engine_);
    v.resize(std::min(k, v.size()));
    return v;
  }

  // Sum of `terms` random terms c * (even monomial) * (one k-subset from each
  // odd group). Homogeneous whenever the even generators have degree 0.
  Element combination(const ContextPtr& ctx, const std::vector<std::size_t>& evens,
                      unsigned max_degree,
                      const std::vector<std::pair<std::vector<std::size_t>, std::size_t>>& odd_groups,
                      unsigned terms) {
    Element out(ctx);
    for (unsigned t = 0; t < terms; ++t) {
      Monomial m = even_monomial(ctx, evens, max_degree);
      bool ok = true;
      for (const auto& [group, k] : odd_groups) {
        if (k > group.size()) {
          ok = false;
          break;
        }
        for (auto pos : subset(group, k)) m[pos] = 1;
      }
      if (ok) out.add_term(m, coefficient());
    }
    return out;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace loday
