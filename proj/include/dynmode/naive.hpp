#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynmode/errors.hpp"
#include "dynmode/modes_result.hpp"

namespace dynmode {

// Reference implementation: a plain array, modes by one counting pass.
template <class Symbol>
class naive_seq {
 public:
  naive_seq() = default;
  explicit naive_seq(std::vector<Symbol> initial) : elements_(std::move(initial)) {}

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Symbol>& elements() const noexcept { return elements_; }

  void insert(std::size_t i, const Symbol& c) {
    if (i > elements_.size()) throw range_error("naive_seq::insert: position " + std::to_string(i));
    elements_.insert(elements_.begin() + static_cast<std::ptrdiff_t>(i), c);
  }

  Symbol erase(std::size_t i) {
    if (i >= elements_.size()) throw range_error("naive_seq::erase: position " + std::to_string(i));
    Symbol c = elements_[i];
    elements_.erase(elements_.begin() + static_cast<std::ptrdiff_t>(i));
    return c;
  }

  modes_result<Symbol> modes(std::size_t l, std::size_t r) const {
    if (l > r || r >= elements_.size()) throw range_error("naive_seq::modes: bad range");
    std::unordered_map<Symbol, std::uint64_t> counts;
    std::uint64_t best = 0;
    for (std::size_t k = l; k <= r; ++k) best = std::max(best, ++counts[elements_[k]]);
    modes_result<Symbol> out;
    out.multiplicity = best;
    for (const auto& [sym, cnt] : counts) {
      if (cnt == best) out.modes.push_back(sym);
    }
    std::sort(out.modes.begin(), out.modes.end());
    return out;
  }

 private:
  std::vector<Symbol> elements_;
};

}  // namespace dynmode
