#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dynmode/block_index.hpp"
#include "dynmode/char_seq.hpp"
#include "dynmode/counted_set.hpp"
#include "dynmode/errors.hpp"
#include "dynmode/modes_result.hpp"
#include "dynmode/pair_table.hpp"
#include "dynmode/regime.hpp"

namespace dynmode {

namespace detail {
template <class Engine>
struct engine_probe;
}

struct audit_report {
  bool ok = true;
  std::string violation;
  explicit operator bool() const noexcept { return ok; }
};

struct engine_stats {
  std::size_t doubling_resets = 0;
  std::size_t halving_resets = 0;
  std::size_t full_rebuilds = 0;
  std::size_t placement_violations = 0;  // resets that found elements outside the expected region
  std::size_t cross_region_spills = 0;
};

// Dynamic sequence answering "all modes of A[l..r]" under insertions and
// deletions.
//
// The sequence is cut into blocks grouped in regions (see regime_state). A
// pair_table keeps the symbol multiset of every contiguous block range, so a
// query only scans the partial blocks at both ends of the range and then walks
// the precomputed inner range from its most frequent symbol downward, stopping
// as soon as counts drop below the answer.
//
// With alpha = 1/3 updates cost O(N^(2/3) log sigma') and queries
// O(N^(2/3) log sigma' + |output|), amortized over resets.
template <class Symbol = std::uint64_t>
class basic_engine {
 public:
  using symbol_type = Symbol;
  using set_type = counted_set<Symbol>;
  using count_type = typename set_type::count_type;
  using result_type = modes_result<Symbol>;

  explicit basic_engine(const config& cfg = {}) : basic_engine(std::vector<Symbol>{}, cfg) {}

  explicit basic_engine(const std::vector<Symbol>& initial, const config& cfg = {}) : cfg_(cfg) {
    cfg_.validate();
    seq_ = char_seq<Symbol>(initial);
    rebuild_fresh(initial);
  }

  std::size_t size() const noexcept { return seq_.size(); }
  bool empty() const noexcept { return seq_.empty(); }

  const config& configuration() const noexcept { return cfg_; }
  const regime_state& regime() const noexcept { return regime_; }
  const engine_stats& stats() const noexcept { return stats_; }
  const pair_table<Symbol>& table() const noexcept { return table_; }

  std::vector<Symbol> contents() const { return seq_.to_vector(); }
  std::vector<block_index::count_type> block_sizes() const { return blocks_.to_vector(); }

  std::vector<std::vector<Symbol>> block_contents() const {
    std::vector<std::vector<Symbol>> out(blocks_.slots());
    std::vector<Symbol> all = seq_.to_vector();
    std::size_t at = 0;
    auto sizes = blocks_.to_vector();
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      out[b].assign(all.begin() + static_cast<std::ptrdiff_t>(at),
                    all.begin() + static_cast<std::ptrdiff_t>(at + sizes[b]));
      at += sizes[b];
    }
    return out;
  }

  void insert(std::size_t i, const Symbol& c) {
    if (i > size()) throw range_error("insert: position " + std::to_string(i) + " beyond length " + std::to_string(size()));
    std::size_t j = target_block(i);
    seq_.insert_at(i, c);
    blocks_.adjust(j, +1);
    table_.apply_point(j, c, +1);
    touched_.assign(1, j);
    if (cfg_.strategy == strategy::pcn) shuffle_after_insert(regime_.region_of(j).kind);
    settle_overflow();
    after_update();
  }

  Symbol erase(std::size_t i) {
    if (i >= size()) throw range_error("erase: position " + std::to_string(i) + " out of range for length " + std::to_string(size()));
    std::size_t j = blocks_.select_prefix(i + 1);
    Symbol c = seq_.delete_at(i);
    blocks_.adjust(j, -1);
    table_.apply_point(j, c, -1);
    touched_.clear();
    if (cfg_.strategy == strategy::pcn) shuffle_after_erase(regime_.region_of(j).kind);
    settle_overflow();
    after_update();
    return c;
  }

  result_type modes(std::size_t l, std::size_t r) {
    if (l > r || r >= size()) {
      throw range_error("modes: range [" + std::to_string(l) + ", " + std::to_string(r) + "] invalid for length " +
                        std::to_string(size()));
    }
    // Maximal run of whole blocks [i, j] inside [l, r].
    std::size_t bl = blocks_.select_prefix(l + 1);
    std::size_t br = blocks_.select_prefix(r + 1);
    std::size_t i = blocks_.start_of(bl) == l ? bl : bl + 1;
    bool right_whole = blocks_.prefix_sum(br) == r + 1;
    const set_type* inner = nullptr;
    std::size_t inner_begin = r + 1, inner_end = r + 1;  // positions [inner_begin, inner_end)
    if (right_whole ? i <= br : i + 1 <= br) {
      std::size_t j = right_whole ? br : br - 1;
      inner = &table_.cell(i, j);
      inner_begin = blocks_.start_of(i);
      inner_end = blocks_.prefix_sum(j);
    }

    scratch_.clear();
    auto count_margin = [this](const Symbol& s) { scratch_.increment(s); };
    if (inner == nullptr) {
      seq_.for_each(l, r, count_margin);
    } else {
      if (inner_begin > l) seq_.for_each(l, inner_begin - 1, count_margin);
      if (inner_end <= r) seq_.for_each(inner_end, r, count_margin);
    }

    count_type app = 0;
    if (inner != nullptr && cfg_.fault != fault::omit_block_top) {
      if (auto top = inner->max_entry()) app = top->count;
    }
    auto inner_count = [inner](const Symbol& s) -> count_type { return inner == nullptr ? 0 : inner->count_of(s); };
    scratch_.for_each([&](const auto& e) { app = std::max<count_type>(app, e.count + inner_count(e.symbol)); });

    std::vector<Symbol> from_margin;
    scratch_.for_each([&](const auto& e) {
      if (e.count + inner_count(e.symbol) == app) from_margin.push_back(e.symbol);
    });
    std::vector<Symbol> from_inner;
    if (inner != nullptr) {
      for (auto cur = inner->max_entry(); cur && cur->count == app; cur = inner->next_entry(cur)) {
        from_inner.push_back(cur->symbol);
      }
    }
    // The ranked view lists equal counts by decreasing id.
    std::reverse(from_inner.begin(), from_inner.end());
    std::sort(from_margin.begin(), from_margin.end());

    result_type out;
    out.multiplicity = app;
    out.modes.reserve(from_margin.size() + from_inner.size());
    std::merge(from_margin.begin(), from_margin.end(), from_inner.begin(), from_inner.end(),
               std::back_inserter(out.modes));
    return out;
  }

  // One mode of A[l..r]: the smallest id among all modes.
  std::pair<std::uint64_t, Symbol> mode(std::size_t l, std::size_t r) {
    result_type res = modes(l, r);
    return {res.multiplicity, res.modes.front()};
  }

  // Recomputes every structural invariant from scratch.
  audit_report audit() const {
    auto fail = [](std::string why) { return audit_report{false, std::move(why)}; };
    if (blocks_.total() != seq_.size()) {
      return fail("block sizes sum to " + std::to_string(blocks_.total()) + ", sequence length is " +
                  std::to_string(seq_.size()));
    }
    if (blocks_.slots() != regime_.slots()) return fail("block slot count disagrees with region layout");
    if (table_.blocks() != blocks_.slots()) return fail("pair table sized for a different block count");
    std::size_t expect_first = 0;
    for (std::size_t k = 0; k < regime_.regions.size(); ++k) {
      const region& reg = regime_.regions[k];
      if (reg.first != expect_first) return fail(std::string("region ") + to_string(reg.kind) + " not contiguous");
      if (k > 0 && !(regime_.regions[k - 1].kind < reg.kind)) return fail("regions out of order");
      expect_first = reg.end();
    }
    auto sizes = blocks_.to_vector();
    for (const region& reg : regime_.regions) {
      for (std::size_t b = reg.first; b < reg.end(); ++b) {
        if (sizes[b] > reg.shape.capacity) {
          return fail("block " + std::to_string(b) + " in region " + to_string(reg.kind) + " holds " +
                      std::to_string(sizes[b]) + " > capacity " + std::to_string(reg.shape.capacity));
        }
      }
      if ((reg.kind == region_kind::pp || reg.kind == region_kind::nn) && region_total(reg) != 0) {
        return fail(std::string("region ") + to_string(reg.kind) + " is not empty");
      }
    }
    auto contents = block_contents();
    for (std::size_t l = 0; l < contents.size(); ++l) {
      std::map<Symbol, count_type> recount;
      for (std::size_t r = l; r < contents.size(); ++r) {
        for (const Symbol& s : contents[r]) ++recount[s];
        const set_type& cell = table_.cell(l, r);
        if (auto why = cell.check_consistency(); !why.empty()) {
          return fail("cell (" + std::to_string(l) + ", " + std::to_string(r) + "): " + why);
        }
        bool same = cell.size() == recount.size();
        for (auto it = recount.begin(); same && it != recount.end(); ++it) same = cell.count_of(it->first) == it->second;
        if (!same) return fail("cell (" + std::to_string(l) + ", " + std::to_string(r) + ") differs from a recount");
      }
    }
    return {};
  }

 private:
  template <class>
  friend struct detail::engine_probe;

  std::uint64_t region_total(const region& reg) const { return blocks_.start_of(reg.end()) - blocks_.start_of(reg.first); }

  // Block that receives a symbol inserted at position i: the block holding
  // the element currently at i - 1, or the first nonempty block for i = 0.
  std::size_t target_block(std::size_t i) const {
    if (seq_.empty()) return regime_.get(region_kind::c).first;
    return blocks_.select_prefix(i == 0 ? 1 : i);
  }

  void rebuild_fresh(const std::vector<Symbol>& contents) {
    regime_ = regime_state::fresh(contents.size(), cfg_.alpha, cfg_.strategy == strategy::pcn);
    std::vector<block_index::count_type> sizes(regime_.slots(), 0);
    const region& c = regime_.get(region_kind::c);
    std::uint64_t left = contents.size();
    for (std::size_t b = c.first; b < c.end() && left > 0; ++b) {
      sizes[b] = std::min<std::uint64_t>(left, c.shape.capacity);
      left -= sizes[b];
    }
    if (left != 0) throw state_error("fresh layout cannot hold the sequence");
    blocks_ = block_index(sizes);
    rebuild_table();
  }

  void rebuild_table() {
    auto contents = block_contents();
    table_ = pair_table<Symbol>::rebuild(contents);
  }

  void full_rebuild() {
    ++stats_.full_rebuilds;
    rebuild_fresh(seq_.to_vector());
  }

  // First element of block i joins the back of block i - 1.
  void move_left(std::size_t i) {
    if (i == 0 || i >= blocks_.slots()) throw range_error("move_left: block " + std::to_string(i));
    if (blocks_.size_at(i) == 0) throw state_error("move_left: block " + std::to_string(i) + " is empty");
    Symbol c = seq_.at(blocks_.start_of(i));
    blocks_.adjust(i, -1);
    blocks_.adjust(i - 1, +1);
    table_.shift_left(i, c);
  }

  // Last element of block i joins the front of block i + 1.
  void move_right(std::size_t i) {
    if (i + 1 >= blocks_.slots()) throw range_error("move_right: block " + std::to_string(i));
    if (blocks_.size_at(i) == 0) throw state_error("move_right: block " + std::to_string(i) + " is empty");
    Symbol c = seq_.at(blocks_.prefix_sum(i) - 1);
    blocks_.adjust(i, -1);
    blocks_.adjust(i + 1, +1);
    table_.shift_right(i, c);
  }

  // from -> to: the last element of `from` hops right into the first block of
  // `to`. Skipped when `from` is empty or `to` is already at capacity.
  void transfer_right(region_kind from_kind, region_kind to_kind) {
    const region from = regime_.get(from_kind);
    const region to = regime_.get(to_kind);
    if (region_total(from) == 0 || region_total(to) >= to.total_capacity()) return;
    std::size_t b = blocks_.select_prefix(blocks_.start_of(from.end()));
    for (std::size_t k = b; k < to.first; ++k) move_right(k);
    touched_.push_back(to.first);
  }

  // to <- from: the first element of `from` hops left into the last block of `to`.
  void transfer_left(region_kind to_kind, region_kind from_kind) {
    const region to = regime_.get(to_kind);
    const region from = regime_.get(from_kind);
    if (region_total(from) == 0 || region_total(to) >= to.total_capacity()) return;
    std::size_t b = blocks_.select_prefix(blocks_.start_of(from.first) + 1);
    for (std::size_t k = b; k > to.last(); --k) move_left(k);
    touched_.push_back(to.last());
  }

  static region_kind core_kind(region_kind k) noexcept {
    if (k == region_kind::pp) return region_kind::p;
    if (k == region_kind::nn) return region_kind::n;
    return k;
  }

  // Net effect per insert: n gains two, p loses one (when the sources allow).
  void shuffle_after_insert(region_kind into) {
    using enum region_kind;
    switch (core_kind(into)) {
      case p:
        transfer_right(p, c);
        transfer_right(p, c);
        transfer_right(c, n);
        transfer_right(c, n);
        break;
      case c:
        transfer_right(p, c);
        transfer_right(c, n);
        transfer_right(c, n);
        break;
      default:
        transfer_right(p, c);
        transfer_right(c, n);
        break;
    }
  }

  // Net effect per delete: n loses two, p gains one.
  void shuffle_after_erase(region_kind from) {
    using enum region_kind;
    switch (core_kind(from)) {
      case p:
        transfer_left(c, n);
        transfer_left(c, n);
        transfer_left(p, c);
        transfer_left(p, c);
        break;
      case c:
        transfer_left(c, n);
        transfer_left(c, n);
        transfer_left(p, c);
        break;
      default:
        transfer_left(c, n);
        transfer_left(p, c);
        break;
    }
  }

  void settle_overflow() {
    for (std::size_t t : touched_) {
      std::size_t cap = regime_.region_of(t).shape.capacity;
      while (blocks_.size_at(t) > cap) rebalance_one(t);
    }
    touched_.clear();
  }

  // Moves one element's worth of load from block j to the nearest region's
  // least loaded block with room, preferring j's own region. Intermediate
  // blocks of the hop chain end up unchanged.
  void rebalance_one(std::size_t j) {
    const region& home = regime_.region_of(j);
    std::size_t donor = find_room(home);
    if (donor == npos) {
      std::vector<const region*> others;
      for (const region& reg : regime_.regions) {
        if (&reg == &home) continue;
        if (cfg_.strategy == strategy::pcn && (reg.kind == region_kind::pp || reg.kind == region_kind::nn)) continue;
        others.push_back(&reg);
      }
      auto distance = [&](const region* reg) {
        auto a = static_cast<int>(reg->kind), b = static_cast<int>(home.kind);
        return a > b ? a - b : b - a;
      };
      std::stable_sort(others.begin(), others.end(),
                       [&](const region* x, const region* y) { return distance(x) < distance(y); });
      for (const region* reg : others) {
        donor = find_room(*reg);
        if (donor != npos) break;
      }
      if (donor == npos) throw state_error("rebalance: no block has spare capacity");
      ++stats_.cross_region_spills;
    }
    if (donor > j) {
      for (std::size_t k = j; k < donor; ++k) move_right(k);
    } else {
      for (std::size_t k = j; k > donor; --k) move_left(k);
    }
  }

  std::size_t find_room(const region& reg) const {
    std::size_t k = blocks_.argmin_size_in(reg.first, reg.last());
    return blocks_.size_at(k) + 1 <= reg.shape.capacity ? k : npos;
  }

  void after_update() {
    if (cfg_.audit_mode && blocks_.total() != seq_.size()) {
      throw audit_error("block sizes no longer sum to the sequence length");
    }
    reset_check();
  }

  void reset_check() {
    const std::uint64_t n = size();
    const std::uint64_t n0 = regime_.n0;
    const bool grow = n >= 2 * n0;
    const bool shrink = n0 > 1 && n <= n0 / 2;
    if (!grow && !shrink) return;
    if (cfg_.strategy == strategy::simple_rebuild) {
      ++(grow ? stats_.doubling_resets : stats_.halving_resets);
      full_rebuild();
      return;
    }
    if (grow) {
      relabel_on_doubling();
    } else {
      relabel_on_halving();
    }
  }

  // Elements that are not where the relabel expects them: an audit error in
  // audit mode, otherwise recovered by a fresh layout.
  bool placement_holds(region_kind a, region_kind b, const char* when) {
    if (region_total(regime_.get(a)) == 0 && region_total(regime_.get(b)) == 0) return true;
    ++stats_.placement_violations;
    if (cfg_.audit_mode) {
      throw audit_error(std::string(when) + " reset found elements in the " + to_string(a) + " or " + to_string(b) +
                        " region");
    }
    full_rebuild();
    return false;
  }

  // All elements sit in n: (pp, p, c, n) <- (p, c, n, nn) and a fresh nn.
  void relabel_on_doubling() {
    if (!placement_holds(region_kind::p, region_kind::c, "doubling")) return;
    ++stats_.doubling_resets;
    const std::uint64_t n0 = size();
    std::vector<region> next;
    for (std::size_t k = 1; k < regime_.regions.size(); ++k) {
      region r = regime_.regions[k];
      r.kind = static_cast<region_kind>(static_cast<int>(r.kind) - 1);
      next.push_back(r);
    }
    region nn{region_kind::nn, 0, shape_for(region_kind::nn, n0, cfg_.alpha)};
    for (std::size_t k = 0; k < regime_.regions.front().shape.blocks; ++k) blocks_.delete_slot(0);
    for (std::size_t k = 0; k < nn.shape.blocks; ++k) blocks_.insert_slot(blocks_.slots(), 0);
    next.push_back(nn);
    regime_.regions = std::move(next);
    regime_.n0 = n0;
    regime_.relayout();
    rebuild_table();
  }

  // All elements sit in p: (p, c, n, nn) <- (pp, p, c, n) and a fresh pp.
  void relabel_on_halving() {
    if (!placement_holds(region_kind::c, region_kind::n, "halving")) return;
    ++stats_.halving_resets;
    const std::uint64_t n0 = std::max<std::uint64_t>(size(), 1);
    std::vector<region> next;
    region pp{region_kind::pp, 0, shape_for(region_kind::pp, n0, cfg_.alpha)};
    next.push_back(pp);
    for (std::size_t k = 0; k + 1 < regime_.regions.size(); ++k) {
      region r = regime_.regions[k];
      r.kind = static_cast<region_kind>(static_cast<int>(r.kind) + 1);
      next.push_back(r);
    }
    for (std::size_t k = 0; k < regime_.regions.back().shape.blocks; ++k) blocks_.delete_slot(blocks_.slots() - 1);
    for (std::size_t k = 0; k < pp.shape.blocks; ++k) blocks_.insert_slot(0, 0);
    regime_.regions = std::move(next);
    regime_.n0 = n0;
    regime_.relayout();
    rebuild_table();
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  config cfg_;
  char_seq<Symbol> seq_;
  block_index blocks_;
  pair_table<Symbol> table_;
  regime_state regime_;
  engine_stats stats_;
  set_type scratch_;
  std::vector<std::size_t> touched_;
};

using engine = basic_engine<std::uint64_t>;

}  // namespace dynmode
