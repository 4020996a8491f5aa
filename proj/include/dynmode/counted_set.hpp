#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dynmode/detail/implicit_treap.hpp"
#include "dynmode/errors.hpp"

namespace dynmode {

// A multiset of symbols held in two synchronized views:
//   - by symbol id, for count lookups;
//   - by (count, id) decreasing, for top / next-largest iteration.
// Both views are treaps sharing one node pool; the ranked view is also
// threaded as a doubly linked list so max_entry and next_entry are O(1).
// Updates and lookups are O(log sigma') where sigma' is the number of
// distinct symbols present. Zero counts are never stored.
template <class Symbol>
class counted_set {
  using index = std::uint32_t;
  static constexpr index nil = ~index{0};

 public:
  using count_type = std::uint32_t;

  struct entry {
    count_type count = 0;
    Symbol symbol{};
    friend bool operator==(const entry&, const entry&) = default;
  };

  // Position in the ranked view. Any mutation of the owning set invalidates it.
  class cursor {
   public:
    cursor() = default;
    explicit operator bool() const noexcept { return node_ != nil; }
    const entry& operator*() const noexcept { return value_; }
    const entry* operator->() const noexcept { return &value_; }

   private:
    friend class counted_set;
    cursor(entry value, index node, std::uint64_t version, const counted_set* owner)
        : value_(value), node_(node), version_(version), owner_(owner) {}

    entry value_{};
    index node_ = nil;
    std::uint64_t version_ = 0;
    const counted_set* owner_ = nullptr;
  };

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  void increment(const Symbol& c) { add(c, 1); }

  void add(const Symbol& c, count_type k) {
    if (k == 0) return;
    ++version_;
    index n = find(c);
    if (n == nil) {
      n = allocate(c, k);
      id_root_ = id_insert(id_root_, n);
      rank_link(n);
      ++size_;
      return;
    }
    rekey(n, nodes_[n].count + k);
  }

  void decrement(const Symbol& c) {
    index n = find(c);
    if (n == nil) throw invariant_error("counted_set::decrement: symbol not present");
    ++version_;
    if (nodes_[n].count == 1) {
      id_root_ = id_erase(id_root_, n);
      rank_unlink(n);
      release(n);
      --size_;
      return;
    }
    rekey(n, nodes_[n].count - 1);
  }

  count_type count_of(const Symbol& c) const noexcept {
    index n = find(c);
    return n == nil ? 0 : nodes_[n].count;
  }

  cursor max_entry() const noexcept { return make_cursor(head_); }

  cursor next_entry(const cursor& at) const {
    if (at.owner_ != this || at.version_ != version_) {
      throw usage_error("counted_set::next_entry: cursor invalidated by a mutation");
    }
    if (at.node_ == nil) return make_cursor(nil);
    return make_cursor(nodes_[at.node_].next);
  }

  // Visits entries in decreasing (count, id) order.
  template <class F>
  void for_each(F&& f) const {
    for (index n = head_; n != nil; n = nodes_[n].next) f(entry{nodes_[n].count, nodes_[n].symbol});
  }

  std::vector<entry> entries() const {
    std::vector<entry> out;
    out.reserve(size_);
    for_each([&](const entry& e) { out.push_back(e); });
    return out;
  }

  void clear() noexcept {
    nodes_.clear();
    id_root_ = rank_root_ = head_ = free_ = nil;
    size_ = 0;
    ++version_;
  }

  // Verifies both views agree and are well formed. Returns an empty string on
  // success, otherwise a description of the first problem found.
  std::string check_consistency() const {
    std::vector<index> by_id;
    collect(id_root_, &node::id_left, &node::id_right, by_id);
    if (by_id.size() != size_) return "id view holds " + std::to_string(by_id.size()) + " nodes, size is " + std::to_string(size_);
    for (std::size_t k = 0; k < by_id.size(); ++k) {
      if (nodes_[by_id[k]].count == 0) return "zero count stored";
      if (k > 0 && !(nodes_[by_id[k - 1]].symbol < nodes_[by_id[k]].symbol)) return "id view out of order";
    }
    std::vector<index> ranked;
    collect(rank_root_, &node::rk_left, &node::rk_right, ranked);
    if (ranked.size() != size_) return "ranked view size mismatch";
    index walk = head_;
    index prev = nil;
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      if (k > 0 && !before(ranked[k - 1], ranked[k])) return "ranked view out of order";
      if (walk != ranked[k]) return "ranked thread disagrees with ranked tree";
      if (nodes_[walk].prev != prev) return "ranked thread back link broken";
      prev = walk;
      walk = nodes_[walk].next;
    }
    if (walk != nil) return "ranked thread longer than tree";
    for (index n : ranked) {
      if (find(nodes_[n].symbol) != n) return "ranked node missing from id view";
    }
    return {};
  }

  friend bool operator==(const counted_set& a, const counted_set& b) {
    if (a.size_ != b.size_) return false;
    index x = a.head_, y = b.head_;
    while (x != nil) {
      if (a.nodes_[x].count != b.nodes_[y].count || !(a.nodes_[x].symbol == b.nodes_[y].symbol)) return false;
      x = a.nodes_[x].next;
      y = b.nodes_[y].next;
    }
    return true;
  }

 private:
  struct node {
    Symbol symbol;
    count_type count;
    std::uint32_t prio;
    index id_left, id_right;
    index rk_left, rk_right;
    index prev, next;
  };

  index allocate(const Symbol& c, count_type k) {
    auto prio = static_cast<std::uint32_t>(detail::splitmix64(static_cast<std::uint64_t>(c)));
    node fresh{c, k, prio, nil, nil, nil, nil, nil, nil};
    if (free_ != nil) {
      index n = free_;
      free_ = nodes_[n].next;
      nodes_[n] = fresh;
      return n;
    }
    nodes_.push_back(fresh);
    return static_cast<index>(nodes_.size() - 1);
  }

  void release(index n) {
    nodes_[n].next = free_;
    free_ = n;
  }

  cursor make_cursor(index n) const noexcept {
    if (n == nil) return cursor(entry{}, nil, version_, this);
    return cursor(entry{nodes_[n].count, nodes_[n].symbol}, n, version_, this);
  }

  // Ranked order: larger count first, then larger id first.
  bool before(index a, index b) const noexcept {
    const node& x = nodes_[a];
    const node& y = nodes_[b];
    if (x.count != y.count) return x.count > y.count;
    return y.symbol < x.symbol;
  }

  index find(const Symbol& c) const noexcept {
    index t = id_root_;
    while (t != nil) {
      const node& x = nodes_[t];
      if (c < x.symbol) {
        t = x.id_left;
      } else if (x.symbol < c) {
        t = x.id_right;
      } else {
        return t;
      }
    }
    return nil;
  }

  // --- id view -------------------------------------------------------------

  void id_split(index t, const Symbol& key, index& l, index& r) {
    if (t == nil) {
      l = r = nil;
      return;
    }
    if (nodes_[t].symbol < key) {
      index sl, sr;
      id_split(nodes_[t].id_right, key, sl, sr);
      nodes_[t].id_right = sl;
      l = t;
      r = sr;
    } else {
      index sl, sr;
      id_split(nodes_[t].id_left, key, sl, sr);
      nodes_[t].id_left = sr;
      l = sl;
      r = t;
    }
  }

  index id_merge(index a, index b) {
    if (a == nil) return b;
    if (b == nil) return a;
    if (nodes_[a].prio > nodes_[b].prio) {
      nodes_[a].id_right = id_merge(nodes_[a].id_right, b);
      return a;
    }
    nodes_[b].id_left = id_merge(a, nodes_[b].id_left);
    return b;
  }

  index id_insert(index t, index n) {
    if (t == nil) return n;
    if (nodes_[n].prio > nodes_[t].prio) {
      index l, r;
      id_split(t, nodes_[n].symbol, l, r);
      nodes_[n].id_left = l;
      nodes_[n].id_right = r;
      return n;
    }
    if (nodes_[n].symbol < nodes_[t].symbol) {
      index sub = id_insert(nodes_[t].id_left, n);
      nodes_[t].id_left = sub;
    } else {
      index sub = id_insert(nodes_[t].id_right, n);
      nodes_[t].id_right = sub;
    }
    return t;
  }

  index id_erase(index t, index n) {
    if (t == n) return id_merge(nodes_[t].id_left, nodes_[t].id_right);
    if (nodes_[n].symbol < nodes_[t].symbol) {
      index sub = id_erase(nodes_[t].id_left, n);
      nodes_[t].id_left = sub;
    } else {
      index sub = id_erase(nodes_[t].id_right, n);
      nodes_[t].id_right = sub;
    }
    return t;
  }

  // --- ranked view ---------------------------------------------------------

  void rk_split(index t, index key, index& l, index& r) {
    if (t == nil) {
      l = r = nil;
      return;
    }
    if (before(t, key)) {
      index sl, sr;
      rk_split(nodes_[t].rk_right, key, sl, sr);
      nodes_[t].rk_right = sl;
      l = t;
      r = sr;
    } else {
      index sl, sr;
      rk_split(nodes_[t].rk_left, key, sl, sr);
      nodes_[t].rk_left = sr;
      l = sl;
      r = t;
    }
  }

  index rk_merge(index a, index b) {
    if (a == nil) return b;
    if (b == nil) return a;
    if (nodes_[a].prio > nodes_[b].prio) {
      nodes_[a].rk_right = rk_merge(nodes_[a].rk_right, b);
      return a;
    }
    nodes_[b].rk_left = rk_merge(a, nodes_[b].rk_left);
    return b;
  }

  index rk_insert(index t, index n) {
    if (t == nil) return n;
    if (nodes_[n].prio > nodes_[t].prio) {
      index l, r;
      rk_split(t, n, l, r);
      nodes_[n].rk_left = l;
      nodes_[n].rk_right = r;
      return n;
    }
    if (before(n, t)) {
      index sub = rk_insert(nodes_[t].rk_left, n);
      nodes_[t].rk_left = sub;
    } else {
      index sub = rk_insert(nodes_[t].rk_right, n);
      nodes_[t].rk_right = sub;
    }
    return t;
  }

  index rk_erase(index t, index n) {
    if (t == n) return rk_merge(nodes_[t].rk_left, nodes_[t].rk_right);
    if (before(n, t)) {
      index sub = rk_erase(nodes_[t].rk_left, n);
      nodes_[t].rk_left = sub;
    } else {
      index sub = rk_erase(nodes_[t].rk_right, n);
      nodes_[t].rk_right = sub;
    }
    return t;
  }

  // Inserts n into the ranked tree and threads it between its neighbours.
  void rank_link(index n) {
    index pred = nil, succ = nil;
    for (index t = rank_root_; t != nil;) {
      if (before(t, n)) {
        pred = t;
        t = nodes_[t].rk_right;
      } else {
        succ = t;
        t = nodes_[t].rk_left;
      }
    }
    nodes_[n].rk_left = nodes_[n].rk_right = nil;
    rank_root_ = rk_insert(rank_root_, n);
    nodes_[n].prev = pred;
    nodes_[n].next = succ;
    if (pred != nil) {
      nodes_[pred].next = n;
    } else {
      head_ = n;
    }
    if (succ != nil) nodes_[succ].prev = n;
  }

  void rank_unlink(index n) {
    rank_root_ = rk_erase(rank_root_, n);
    index p = nodes_[n].prev, s = nodes_[n].next;
    if (p != nil) {
      nodes_[p].next = s;
    } else {
      head_ = s;
    }
    if (s != nil) nodes_[s].prev = p;
  }

  // Changes the count of a present node. When the new key still sits between
  // its thread neighbours the tree shape stays valid and nothing moves.
  void rekey(index n, count_type new_count) {
    count_type old = nodes_[n].count;
    nodes_[n].count = new_count;
    index p = nodes_[n].prev, s = nodes_[n].next;
    if ((p == nil || before(p, n)) && (s == nil || before(n, s))) return;
    nodes_[n].count = old;
    rank_unlink(n);
    nodes_[n].count = new_count;
    rank_link(n);
  }

  void collect(index t, index node::*left, index node::*right, std::vector<index>& out) const {
    if (t == nil) return;
    collect(nodes_[t].*left, left, right, out);
    out.push_back(t);
    collect(nodes_[t].*right, left, right, out);
  }

  std::vector<node> nodes_;
  index id_root_ = nil;
  index rank_root_ = nil;
  index head_ = nil;
  index free_ = nil;
  std::size_t size_ = 0;
  std::uint64_t version_ = 0;
};

}  // namespace dynmode
