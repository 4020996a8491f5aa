#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynmode/errors.hpp"

namespace dynmode {

// Block exponent alpha = num / den. Blocks number ceil(N^alpha), each holding
// at most ceil(N^(1 - alpha)) symbols.
struct exponent {
  unsigned num = 1;
  unsigned den = 3;

  double value() const noexcept { return static_cast<double>(num) / den; }
  friend bool operator==(const exponent&, const exponent&) = default;
};

enum class strategy {
  simple_rebuild,  // rebuild everything when the length doubles or halves
  pcn,             // previous/current/next regions with element shuffling
};

// Deliberate defects for exercising the differential harness.
enum class fault {
  none,
  omit_block_top,  // modes ignores the top of the inner block range
};

struct config {
  exponent alpha{};
  dynmode::strategy strategy = strategy::simple_rebuild;
  bool audit_mode = false;
  dynmode::fault fault = fault::none;

  void validate() const {
    if (alpha.den == 0 || alpha.num == 0 || alpha.num >= alpha.den) {
      throw config_error("alpha must lie strictly between 0 and 1, got " + std::to_string(alpha.num) + "/" +
                         std::to_string(alpha.den));
    }
  }
};

inline const char* to_string(strategy s) noexcept { return s == strategy::pcn ? "pcn" : "simple-rebuild"; }

inline std::optional<strategy> parse_strategy(const std::string& name) {
  if (name == "pcn") return strategy::pcn;
  if (name == "simple-rebuild" || name == "simple") return strategy::simple_rebuild;
  return std::nullopt;
}

namespace detail {

// a^e, or nullopt when it does not fit in 128 bits.
inline std::optional<unsigned __int128> checked_pow(std::uint64_t a, unsigned e) {
  unsigned __int128 acc = 1;
  const auto limit = ~static_cast<unsigned __int128>(0);
  for (unsigned k = 0; k < e; ++k) {
    if (a != 0 && acc > limit / a) return std::nullopt;
    acc *= a;
  }
  return acc;
}

}  // namespace detail

// Smallest integer k >= 1 with k >= (a / b)^(p / q). Exact whenever the
// integer powers involved fit in 128 bits; otherwise falls back to long double.
inline std::uint64_t ceil_rational_power(std::uint64_t a, std::uint64_t b, unsigned p, unsigned q) {
  long double estimate = std::pow(static_cast<long double>(a) / b, static_cast<long double>(p) / q);
  auto k = static_cast<std::uint64_t>(std::ceil(estimate));
  if (k == 0) k = 1;
  auto reaches = [&](std::uint64_t cand) -> std::optional<bool> {
    // cand^q * b^p >= a^p
    auto lhs = detail::checked_pow(cand, q);
    auto bp = detail::checked_pow(b, p);
    auto rhs = detail::checked_pow(a, p);
    if (!lhs || !bp || !rhs) return std::nullopt;
    if (*bp != 0 && *lhs > ~static_cast<unsigned __int128>(0) / *bp) return true;
    return *lhs * *bp >= *rhs;
  };
  for (;;) {
    auto ok = reaches(k);
    if (!ok) return k;
    if (!*ok) {
      ++k;
      continue;
    }
    if (k > 1) {
      auto below = reaches(k - 1);
      if (below && *below) {
        --k;
        continue;
      }
    }
    return k;
  }
}

enum class region_kind : std::uint8_t { pp, p, c, n, nn };

inline const char* to_string(region_kind k) noexcept {
  constexpr std::array<const char*, 5> names{"pp", "p", "c", "n", "nn"};
  return names[static_cast<std::size_t>(k)];
}

// Block count and per-block capacity sized for a reference length.
struct region_shape {
  std::size_t blocks = 1;
  std::size_t capacity = 1;
  friend bool operator==(const region_shape&, const region_shape&) = default;
};

// Shape for length n0 * scale_num / scale_den.
inline region_shape shape_for(std::uint64_t n0, std::uint64_t scale_num, std::uint64_t scale_den, exponent alpha) {
  std::uint64_t a = n0 * scale_num;
  return {static_cast<std::size_t>(ceil_rational_power(a, scale_den, alpha.num, alpha.den)),
          static_cast<std::size_t>(ceil_rational_power(a, scale_den, alpha.den - alpha.num, alpha.den))};
}

inline region_shape shape_for(region_kind kind, std::uint64_t n0, exponent alpha) {
  switch (kind) {
    case region_kind::pp: return shape_for(n0, 1, 4, alpha);
    case region_kind::p: return shape_for(n0, 1, 2, alpha);
    case region_kind::c: return shape_for(n0, 1, 1, alpha);
    case region_kind::n: return shape_for(n0, 2, 1, alpha);
    case region_kind::nn: return shape_for(n0, 4, 1, alpha);
  }
  return {};
}

struct region {
  region_kind kind;
  std::size_t first = 0;  // first block slot
  region_shape shape;

  std::size_t last() const noexcept { return first + shape.blocks - 1; }
  std::size_t end() const noexcept { return first + shape.blocks; }
  std::size_t total_capacity() const noexcept { return shape.blocks * shape.capacity; }
  bool contains(std::size_t slot) const noexcept { return slot >= first && slot < end(); }
};

// Region layout in block-slot order (pp, p, c, n, nn; pp and nn only under
// the pcn strategy) plus the reference length of the last reset.
struct regime_state {
  std::uint64_t n0 = 1;
  std::vector<region> regions;

  std::size_t slots() const noexcept { return regions.empty() ? 0 : regions.back().end(); }

  const region* find(region_kind kind) const noexcept {
    for (const region& r : regions) {
      if (r.kind == kind) return &r;
    }
    return nullptr;
  }

  const region& get(region_kind kind) const {
    const region* r = find(kind);
    if (r == nullptr) throw state_error(std::string("regime has no ") + to_string(kind) + " region");
    return *r;
  }

  const region& region_of(std::size_t slot) const {
    for (const region& r : regions) {
      if (r.contains(slot)) return r;
    }
    throw range_error("regime: slot " + std::to_string(slot) + " outside every region");
  }

  // Recomputes first-slot offsets after regions were added or dropped.
  void relayout() noexcept {
    std::size_t at = 0;
    for (region& r : regions) {
      r.first = at;
      at += r.shape.blocks;
    }
  }

  static regime_state fresh(std::uint64_t n0, exponent alpha, bool with_outer) {
    regime_state s;
    s.n0 = n0 == 0 ? 1 : n0;
    auto add = [&](region_kind k) { s.regions.push_back(region{k, 0, shape_for(k, s.n0, alpha)}); };
    if (with_outer) add(region_kind::pp);
    add(region_kind::p);
    add(region_kind::c);
    add(region_kind::n);
    if (with_outer) add(region_kind::nn);
    s.relayout();
    return s;
  }
};

}  // namespace dynmode
