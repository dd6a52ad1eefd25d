#pragma once

// Independent reference computations for the tests. Nothing here calls the
// routine it is used to check.

#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fsetkit/intersector.hpp"

namespace fsetkit::testing {

inline constexpr std::uint64_t kSeed = 20240607;

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// #E(F_p) by trying every pair (x, y).
inline std::uint64_t naive_point_count(std::uint32_t p, std::int64_t a4, std::int64_t a6) {
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    for (std::uint64_t y = 0; y < p; ++y) {
      const std::int64_t lhs = static_cast<std::int64_t>((y * y) % p);
      std::int64_t rhs = static_cast<std::int64_t>((x * x % p * x) % p) + a4 * static_cast<std::int64_t>(x) + a6;
      rhs = ((rhs % p) + p) % p;
      if (lhs == rhs) ++n;
    }
  }
  return n;
}

// x^n mod h over Z by schoolbook long division of the full power.
inline std::vector<BigInt> naive_power_mod(const std::vector<BigInt>& monic_h, std::uint64_t n) {
  const std::size_t d = monic_h.size() - 1;
  std::vector<BigInt> r(n + 1, 0);
  r[n] = 1;
  for (std::size_t k = r.size(); k-- > d;) {
    const BigInt c = r[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) r[k - d + i] -= c * monic_h[i];
  }
  r.resize(d, 0);
  return r;
}

// Product of g_j^{c_j} over the tower, by repeated multiplication.
inline TowerElem naive_torus_product(const TowerPtr& tower, const std::vector<TowerElem>& gens,
                                     const std::vector<std::int64_t>& c) {
  TowerElem acc = tower_constant(tower, 1);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const TowerElem base = c[j] < 0 ? gens[j].inverse() : gens[j];
    for (std::int64_t k = 0; k < (c[j] < 0 ? -c[j] : c[j]); ++k) acc = acc * base;
  }
  return acc;
}

// Rank over Q of a small integer matrix, by fraction-free elimination.
inline std::size_t naive_rank(std::vector<std::vector<BigInt>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      const BigInt f = m[r][c], g = m[rank][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] * g - m[rank][k] * f;
    }
    ++rank;
  }
  return rank;
}

// Text key for a span point; equal keys iff equal coordinates.
inline std::string span_key(const SpanPoint& P) {
  std::ostringstream os;
  for (const auto& t : P.torus) {
    os << t.unit << '{';
    for (const auto& [g, v] : t.valuations) os << g.to_string() << '^' << v << ',';
    os << '}';
  }
  os << '|';
  for (const auto& e : P.elliptic) {
    os << '{';
    for (const auto& [i, c] : e.atoms) os << i << ':' << c.c0 << ',' << c.c1 << ';';
    os << '}';
  }
  return os.str();
}

inline std::set<std::string> span_keys(const std::vector<SpanPoint>& pts) {
  std::set<std::string> out;
  for (const auto& P : pts) out.insert(span_key(P));
  return out;
}

}  // namespace fsetkit::testing
