#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dynmode/engine.hpp"
#include "dynmode/errors.hpp"

namespace dynmode {

// A family of subsets of the universe {0, ..., U-1} kept as one sequence of
// gadgets, gadget k (1-based) at positions [2(k-1)U, 2kU):
//
//   members of S_k ascending | non-members ascending | non-members ascending | members ascending
//
// Over the range from the trailing member copy of S_i to the leading member
// copy of S_j, a symbol x occurs 2(j-i-1) + [x in S_i] + [x in S_j] times, so
// the range reaches multiplicity 2(j-i) exactly on S_i ∩ S_j.
class set_family {
 public:
  using member = std::uint32_t;

  set_family(const std::vector<std::vector<member>>& sets, std::size_t universe_size, const config& cfg = {})
      : universe_(universe_size), engine_(cfg) {
    member_bits_.assign(sets.size(), std::vector<bool>(universe_, false));
    fenwick_.assign(sets.size(), std::vector<std::uint32_t>(universe_ + 1, 0));
    sizes_.assign(sets.size(), 0);
    for (std::size_t k = 0; k < sets.size(); ++k) {
      for (member x : sets[k]) {
        if (x >= universe_) {
          throw range_error("set_family: member " + std::to_string(x) + " outside universe of size " +
                            std::to_string(universe_));
        }
        if (member_bits_[k][x]) throw usage_error("set_family: duplicate member " + std::to_string(x));
        mark(k, x, true);
      }
    }
    std::vector<std::uint64_t> sequence;
    sequence.reserve(2 * sets.size() * universe_);
    for (std::size_t k = 0; k < sets.size(); ++k) {
      auto append = [&](bool want_members) {
        for (member x = 0; x < universe_; ++x) {
          if (member_bits_[k][x] == want_members) sequence.push_back(x);
        }
      };
      append(true);
      append(false);
      append(false);
      append(true);
    }
    engine_ = engine(sequence, cfg);
  }

  std::size_t universe_size() const noexcept { return universe_; }
  std::size_t num_sets() const noexcept { return sizes_.size(); }
  std::size_t set_size(std::size_t k) const { return sizes_.at(check_set(k)); }
  bool contains(std::size_t k, member x) const { return x < universe_ && member_bits_[check_set(k)][x]; }
  const engine& sequence() const noexcept { return engine_; }

  // 1-based set indices, i < j.
  bool intersect(std::size_t i, std::size_t j) { return query(i, j).multiplicity == threshold(i, j); }

  // S_i ∩ S_j, ascending.
  std::vector<member> enumerate_intersection(std::size_t i, std::size_t j) {
    auto res = query(i, j);
    std::vector<member> out;
    if (res.multiplicity == threshold(i, j)) {
      for (auto s : res.modes) out.push_back(static_cast<member>(s));
    }
    return out;
  }

  void add_member(std::size_t k, member x) {
    std::size_t s = check_set(k);
    check_member(x);
    if (member_bits_[s][x]) throw usage_error("add_member: " + std::to_string(x) + " already in set " + std::to_string(k));
    const std::size_t base = 2 * s * universe_;
    const std::size_t m = sizes_[s];
    const std::size_t member_rank = rank(s, x);
    const std::size_t other_rank = x - member_rank;
    // Drop x from both complement copies (second copy first keeps offsets simple).
    engine_.erase(base + m + (universe_ - m) + other_rank);
    engine_.erase(base + m + other_rank);
    // Then place it in both member copies.
    engine_.insert(base + member_rank, x);
    engine_.insert(base + (m + 1) + 2 * (universe_ - m - 1) + member_rank, x);
    mark(s, x, true);
  }

  void remove_member(std::size_t k, member x) {
    std::size_t s = check_set(k);
    check_member(x);
    if (!member_bits_[s][x]) throw usage_error("remove_member: " + std::to_string(x) + " not in set " + std::to_string(k));
    const std::size_t base = 2 * s * universe_;
    const std::size_t m = sizes_[s];
    const std::size_t member_rank = rank(s, x);
    const std::size_t other_rank = x - member_rank;
    engine_.erase(base + m + 2 * (universe_ - m) + member_rank);
    engine_.erase(base + member_rank);
    // Layout is now [m-1 members][U-m others][U-m others][m-1 members].
    engine_.insert(base + (m - 1) + other_rank, x);
    engine_.insert(base + (m - 1) + (universe_ - m + 1) + other_rank, x);
    mark(s, x, false);
  }

 private:
  std::size_t check_set(std::size_t k) const {
    if (k == 0 || k > sizes_.size()) throw range_error("set_family: set index " + std::to_string(k) + " out of range");
    return k - 1;
  }

  void check_member(member x) const {
    if (x >= universe_) throw range_error("set_family: member " + std::to_string(x) + " outside universe");
  }

  void check_pair(std::size_t i, std::size_t j) const {
    check_set(i);
    check_set(j);
    if (i >= j) throw range_error("set_family: pair requires i < j");
  }

  std::uint64_t threshold(std::size_t i, std::size_t j) const { return 2 * (j - i); }

  modes_result<std::uint64_t> query(std::size_t i, std::size_t j) {
    check_pair(i, j);
    const std::size_t l = 2 * i * universe_ - sizes_[i - 1];
    const std::size_t end = 2 * (j - 1) * universe_ + sizes_[j - 1];  // exclusive
    if (end <= l) return {};
    return engine_.modes(l, end - 1);
  }

  // Number of members of set s smaller than x.
  std::size_t rank(std::size_t s, member x) const {
    std::size_t acc = 0;
    for (std::size_t k = x; k > 0; k -= k & (~k + 1)) acc += fenwick_[s][k];
    return acc;
  }

  void mark(std::size_t s, member x, bool present) {
    member_bits_[s][x] = present;
    if (present) {
      ++sizes_[s];
    } else {
      --sizes_[s];
    }
    for (std::size_t k = x + 1; k <= universe_; k += k & (~k + 1)) {
      if (present) {
        ++fenwick_[s][k];
      } else {
        --fenwick_[s][k];
      }
    }
  }

  std::size_t universe_;
  engine engine_;
  std::vector<std::vector<bool>> member_bits_;
  std::vector<std::vector<std::uint32_t>> fenwick_;
  std::vector<std::size_t> sizes_;
};

}  // namespace dynmode
