#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dynmode/counted_set.hpp"
#include "dynmode/errors.hpp"

namespace dynmode {

// Triangular table holding, for every block pair l <= r, the counted set of
// symbols in blocks l..r. Cells are stored densely, row by row.
template <class Symbol>
class pair_table {
 public:
  using set_type = counted_set<Symbol>;
  using count_type = typename set_type::count_type;

  pair_table() = default;
  explicit pair_table(std::size_t blocks) : blocks_(blocks), cells_(cell_count(blocks)) {}

  // Fresh table over the given block contents. Each row is accumulated left
  // to right from per-block histograms, so the cost is
  // O(L^2 * sigma' * log sigma') plus one pass over the symbols.
  static pair_table rebuild(std::span<const std::vector<Symbol>> blocks) {
    pair_table table(blocks.size());
    std::vector<std::vector<std::pair<Symbol, count_type>>> hist(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::vector<Symbol> sorted(blocks[b]);
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size();) {
        std::size_t e = k;
        while (e < sorted.size() && sorted[e] == sorted[k]) ++e;
        hist[b].emplace_back(sorted[k], static_cast<count_type>(e - k));
        k = e;
      }
    }
    for (std::size_t l = 0; l < blocks.size(); ++l) {
      set_type running;
      for (std::size_t r = l; r < blocks.size(); ++r) {
        for (const auto& [sym, k] : hist[r]) running.add(sym, k);
        table.cell(l, r) = running;
      }
    }
    return table;
  }

  static constexpr std::size_t cell_count(std::size_t blocks) noexcept { return blocks * (blocks + 1) / 2; }

  std::size_t blocks() const noexcept { return blocks_; }
  std::size_t cells() const noexcept { return cells_.size(); }

  const set_type& cell(std::size_t l, std::size_t r) const { return cells_[offset(l, r)]; }
  set_type& cell(std::size_t l, std::size_t r) { return cells_[offset(l, r)]; }

  // Adds (+1) or removes (-1) one c in block j: touches every cell l <= j <= r.
  void apply_point(std::size_t j, const Symbol& c, int delta) {
    check_block(j, "apply_point");
    if (delta != 1 && delta != -1) throw usage_error("pair_table::apply_point: delta must be +1 or -1");
    for (std::size_t l = 0; l <= j; ++l) {
      std::size_t base = offset(l, l);
      for (std::size_t r = j; r < blocks_; ++r) {
        set_type& s = cells_[base + (r - l)];
        if (delta > 0) {
          s.increment(c);
        } else {
          s.decrement(c);
        }
      }
    }
  }

  // c moves from the front of block i to the back of block i - 1.
  void shift_left(std::size_t i, const Symbol& c) {
    if (i == 0 || i >= blocks_) throw range_error("pair_table::shift_left: block " + std::to_string(i));
    for (std::size_t l = 0; l < i; ++l) cell(l, i - 1).increment(c);
    for (std::size_t r = i; r < blocks_; ++r) cell(i, r).decrement(c);
  }

  // c moves from the back of block i to the front of block i + 1.
  void shift_right(std::size_t i, const Symbol& c) {
    if (i + 1 >= blocks_) throw range_error("pair_table::shift_right: block " + std::to_string(i));
    for (std::size_t l = 0; l <= i; ++l) cell(l, i).decrement(c);
    for (std::size_t r = i + 1; r < blocks_; ++r) cell(i + 1, r).increment(c);
  }

 private:
  std::size_t offset(std::size_t l, std::size_t r) const {
    if (l > r || r >= blocks_) {
      throw range_error("pair_table: cell (" + std::to_string(l) + ", " + std::to_string(r) + ") outside " +
                        std::to_string(blocks_) + " blocks");
    }
    return l * (2 * blocks_ - l + 1) / 2 + (r - l);
  }

  void check_block(std::size_t j, const char* op) const {
    if (j >= blocks_) throw range_error(std::string("pair_table::") + op + ": block " + std::to_string(j));
  }

  std::size_t blocks_ = 0;
  std::vector<set_type> cells_;
};

}  // namespace dynmode
