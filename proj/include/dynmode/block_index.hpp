#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dynmode/detail/implicit_treap.hpp"
#include "dynmode/errors.hpp"

namespace dynmode {

// Dynamic array of block lengths. Every query and update is O(log L).
// argmin ties resolve to the lowest slot index.
class block_index {
 public:
  using count_type = std::uint64_t;

  block_index() = default;
  explicit block_index(const std::vector<count_type>& sizes) : tree_(sizes) {}

  std::size_t slots() const noexcept { return tree_.size(); }

  count_type total() const noexcept { return tree_.empty() ? 0 : tree_.summary(tree_.root()).sum; }

  count_type size_at(std::size_t i) const {
    check_slot(i, "size_at");
    return tree_.at(i);
  }

  void adjust(std::size_t i, std::int64_t delta) {
    check_slot(i, "adjust");
    count_type current = tree_.at(i);
    if (delta < 0 && static_cast<count_type>(-delta) > current) {
      throw invariant_error("block_index::adjust: slot " + std::to_string(i) + " would become negative");
    }
    tree_.modify(i, [delta](count_type& v) { v = static_cast<count_type>(static_cast<std::int64_t>(v) + delta); });
  }

  std::size_t argmin_size() const {
    if (tree_.empty()) throw state_error("block_index::argmin_size: no slots");
    return first_at_most(tree_.root(), 0, 0, tree_.summary(tree_.root()).min);
  }

  std::size_t argmin_size_in(std::size_t lo, std::size_t hi) const {
    if (lo > hi || hi >= slots()) {
      throw range_error("block_index::argmin_size_in: bad range [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
    count_type m = range_min(tree_.root(), 0, lo, hi);
    return first_at_most(tree_.root(), 0, lo, m);
  }

  // Smallest k with sizes[0] + ... + sizes[k] >= a.
  std::size_t select_prefix(count_type a) const {
    if (a == 0 || a > total()) {
      throw range_error("block_index::select_prefix: " + std::to_string(a) + " outside (0, " +
                        std::to_string(total()) + "]");
    }
    index t = tree_.root();
    std::size_t offset = 0;
    for (;;) {
      index l = tree_.left(t);
      count_type left_sum = l == nil ? 0 : tree_.summary(l).sum;
      if (left_sum >= a) {
        t = l;
        continue;
      }
      a -= left_sum;
      std::size_t here = offset + tree_.size_of(l);
      if (tree_.value(t) >= a) return here;
      a -= tree_.value(t);
      offset = here + 1;
      t = tree_.right(t);
    }
  }

  // sizes[0] + ... + sizes[k].
  count_type prefix_sum(std::size_t k) const {
    check_slot(k, "prefix_sum");
    count_type acc = 0;
    index t = tree_.root();
    std::size_t remaining = k + 1;  // number of leading slots to include
    while (t != nil && remaining > 0) {
      index l = tree_.left(t);
      std::size_t ls = tree_.size_of(l);
      if (remaining <= ls) {
        t = l;
        continue;
      }
      acc += (l == nil ? 0 : tree_.summary(l).sum) + tree_.value(t);
      remaining -= ls + 1;
      t = tree_.right(t);
    }
    return acc;
  }

  // Sum of sizes strictly before slot k; k may equal slots().
  count_type start_of(std::size_t k) const { return k == 0 ? 0 : prefix_sum(k - 1); }

  void insert_slot(std::size_t i, count_type x) {
    if (i > slots()) throw range_error("block_index::insert_slot: slot " + std::to_string(i) + " beyond end");
    tree_.insert(i, x);
  }

  void delete_slot(std::size_t i) {
    check_slot(i, "delete_slot");
    tree_.erase(i);
  }

  std::vector<count_type> to_vector() const { return tree_.to_vector(); }

 private:
  struct summary {
    count_type sum;
    count_type min;
    static summary of(count_type v) noexcept { return {v, v}; }
    static summary combine(const summary& a, const summary& b) noexcept {
      return {a.sum + b.sum, std::min(a.min, b.min)};
    }
  };
  using tree_type = detail::implicit_treap<count_type, summary>;
  using index = tree_type::index;
  static constexpr index nil = tree_type::nil;

  void check_slot(std::size_t i, const char* op) const {
    if (i >= slots()) {
      throw range_error(std::string("block_index::") + op + ": slot " + std::to_string(i) + " out of range");
    }
  }

  count_type range_min(index t, std::size_t offset, std::size_t lo, std::size_t hi) const {
    if (t == nil) return std::numeric_limits<count_type>::max();
    std::size_t n = tree_.size_of(t);
    if (offset > hi || offset + n <= lo) return std::numeric_limits<count_type>::max();
    if (lo <= offset && offset + n - 1 <= hi) return tree_.summary(t).min;
    std::size_t here = offset + tree_.size_of(tree_.left(t));
    count_type m = std::min(range_min(tree_.left(t), offset, lo, hi), range_min(tree_.right(t), here + 1, lo, hi));
    if (lo <= here && here <= hi) m = std::min(m, tree_.value(t));
    return m;
  }

  // Lowest slot >= lo whose size is <= bound; callers guarantee one exists.
  std::size_t first_at_most(index t, std::size_t offset, std::size_t lo, count_type bound) const {
    std::size_t found = npos;
    find_first(t, offset, lo, bound, found);
    return found;
  }

  bool find_first(index t, std::size_t offset, std::size_t lo, count_type bound, std::size_t& found) const {
    if (t == nil) return false;
    std::size_t n = tree_.size_of(t);
    if (offset + n <= lo || tree_.summary(t).min > bound) return false;
    std::size_t here = offset + tree_.size_of(tree_.left(t));
    if (find_first(tree_.left(t), offset, lo, bound, found)) return true;
    if (here >= lo && tree_.value(t) <= bound) {
      found = here;
      return true;
    }
    return find_first(tree_.right(t), here + 1, lo, bound, found);
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  tree_type tree_;
};

}  // namespace dynmode
