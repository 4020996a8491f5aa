#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dynmode/detail/implicit_treap.hpp"
#include "dynmode/errors.hpp"

namespace dynmode {

// The dynamic symbol sequence. Positions are 0-based and ranges inclusive.
// Positional access, insertion and deletion are O(log N); range reads add
// O(r - l + 1).
template <class Symbol>
class char_seq {
 public:
  char_seq() = default;
  explicit char_seq(const std::vector<Symbol>& symbols) : tree_(symbols) {}

  std::size_t size() const noexcept { return tree_.size(); }
  bool empty() const noexcept { return tree_.empty(); }

  const Symbol& at(std::size_t i) const {
    if (i >= size()) throw range_error("char_seq::at: position " + std::to_string(i) + " out of range");
    return tree_.at(i);
  }

  std::vector<Symbol> access_range(std::size_t l, std::size_t r) const {
    check_range(l, r);
    std::vector<Symbol> out;
    out.reserve(r - l + 1);
    tree_.for_each(l, r, [&](const Symbol& s) { out.push_back(s); });
    return out;
  }

  // Streams A[l..r] to f without materializing it.
  template <class F>
  void for_each(std::size_t l, std::size_t r, F&& f) const {
    check_range(l, r);
    tree_.for_each(l, r, f);
  }

  void insert_at(std::size_t i, const Symbol& c) {
    if (i > size()) throw range_error("char_seq::insert_at: position " + std::to_string(i) + " beyond end");
    tree_.insert(i, c);
  }

  Symbol delete_at(std::size_t i) {
    if (i >= size()) throw range_error("char_seq::delete_at: position " + std::to_string(i) + " out of range");
    return tree_.erase(i);
  }

  std::vector<Symbol> to_vector() const { return tree_.to_vector(); }

 private:
  void check_range(std::size_t l, std::size_t r) const {
    if (l > r || r >= size()) {
      throw range_error("char_seq: range [" + std::to_string(l) + ", " + std::to_string(r) + "] invalid for length " +
                        std::to_string(size()));
    }
  }

  detail::implicit_treap<Symbol> tree_;
};

}  // namespace dynmode
