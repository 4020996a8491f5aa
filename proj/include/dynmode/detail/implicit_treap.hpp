#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace dynmode::detail {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct no_summary {
  template <class T>
  static no_summary of(const T&) noexcept { return {}; }
  static no_summary combine(no_summary, no_summary) noexcept { return {}; }
};

// Sequence container keyed by position. Nodes live in one vector and link by
// 32-bit index; a free list recycles erased slots. Summary aggregates a
// subtree (Summary::of on one value, Summary::combine left to right).
template <class T, class Summary = no_summary>
class implicit_treap {
 public:
  using index = std::uint32_t;
  static constexpr index nil = ~index{0};

  implicit_treap() = default;

  explicit implicit_treap(const std::vector<T>& values) { assign(values); }

  std::size_t size() const noexcept { return size_of(root_); }
  bool empty() const noexcept { return root_ == nil; }

  void clear() {
    nodes_.clear();
    root_ = nil;
    free_ = nil;
  }

  // Linear-time build: a Cartesian tree over random priorities.
  void assign(const std::vector<T>& values) {
    clear();
    nodes_.reserve(values.size());
    std::vector<index> spine;
    for (const T& v : values) {
      index n = allocate(v);
      index last = nil;
      while (!spine.empty() && nodes_[spine.back()].prio < nodes_[n].prio) {
        last = spine.back();
        spine.pop_back();
      }
      nodes_[n].left = last;
      if (!spine.empty()) nodes_[spine.back()].right = n;
      spine.push_back(n);
    }
    root_ = spine.empty() ? nil : spine.front();
    pull_all(root_);
  }

  const T& at(std::size_t pos) const {
    index t = root_;
    for (;;) {
      std::size_t ls = size_of(nodes_[t].left);
      if (pos < ls) {
        t = nodes_[t].left;
      } else if (pos == ls) {
        return nodes_[t].value;
      } else {
        pos -= ls + 1;
        t = nodes_[t].right;
      }
    }
  }

  void insert(std::size_t pos, const T& value) {
    index n = allocate(value);
    index a, b;
    split(root_, pos, a, b);
    root_ = merge(merge(a, n), b);
  }

  T erase(std::size_t pos) {
    index a, b, mid, c;
    split(root_, pos, a, b);
    split(b, 1, mid, c);
    T value = nodes_[mid].value;
    release(mid);
    root_ = merge(a, c);
    return value;
  }

  // Applies f to the value at pos and refreshes aggregates on the path.
  template <class F>
  void modify(std::size_t pos, F&& f) {
    modify_rec(root_, pos, f);
  }

  // Visits positions [l, r] in order.
  template <class F>
  void for_each(std::size_t l, std::size_t r, F&& f) const {
    visit(root_, 0, l, r, f);
  }

  std::vector<T> to_vector() const {
    std::vector<T> out;
    out.reserve(size());
    if (!empty()) for_each(0, size() - 1, [&](const T& v) { out.push_back(v); });
    return out;
  }

  // Read-only node access for aggregate-guided descents.
  index root() const noexcept { return root_; }
  index left(index t) const noexcept { return nodes_[t].left; }
  index right(index t) const noexcept { return nodes_[t].right; }
  const T& value(index t) const noexcept { return nodes_[t].value; }
  const Summary& summary(index t) const noexcept { return nodes_[t].summary; }
  std::size_t size_of(index t) const noexcept { return t == nil ? 0 : nodes_[t].size; }

 private:
  struct node {
    T value;
    [[no_unique_address]] Summary summary;
    index left;
    index right;
    std::uint32_t size;
    std::uint32_t prio;
  };

  index allocate(const T& value) {
    std::uint32_t prio = static_cast<std::uint32_t>(splitmix64(rng_++));
    if (free_ != nil) {
      index n = free_;
      free_ = nodes_[n].right;
      nodes_[n] = node{value, Summary::of(value), nil, nil, 1, prio};
      return n;
    }
    nodes_.push_back(node{value, Summary::of(value), nil, nil, 1, prio});
    return static_cast<index>(nodes_.size() - 1);
  }

  void release(index n) {
    nodes_[n].left = nil;
    nodes_[n].right = free_;
    free_ = n;
  }

  void pull(index t) {
    node& n = nodes_[t];
    n.size = static_cast<std::uint32_t>(1 + size_of(n.left) + size_of(n.right));
    Summary s = Summary::of(n.value);
    if (n.left != nil) s = Summary::combine(nodes_[n.left].summary, s);
    if (n.right != nil) s = Summary::combine(s, nodes_[n.right].summary);
    n.summary = s;
  }

  void pull_all(index t) {
    if (t == nil) return;
    pull_all(nodes_[t].left);
    pull_all(nodes_[t].right);
    pull(t);
  }

  // First k elements go to l, the rest to r.
  void split(index t, std::size_t k, index& l, index& r) {
    if (t == nil) {
      l = r = nil;
      return;
    }
    std::size_t ls = size_of(nodes_[t].left);
    if (k <= ls) {
      index sub_l, sub_r;
      split(nodes_[t].left, k, sub_l, sub_r);
      nodes_[t].left = sub_r;
      l = sub_l;
      r = t;
    } else {
      index sub_l, sub_r;
      split(nodes_[t].right, k - ls - 1, sub_l, sub_r);
      nodes_[t].right = sub_l;
      l = t;
      r = sub_r;
    }
    pull(t);
  }

  index merge(index a, index b) {
    if (a == nil) return b;
    if (b == nil) return a;
    if (nodes_[a].prio > nodes_[b].prio) {
      nodes_[a].right = merge(nodes_[a].right, b);
      pull(a);
      return a;
    }
    nodes_[b].left = merge(a, nodes_[b].left);
    pull(b);
    return b;
  }

  template <class F>
  void modify_rec(index t, std::size_t pos, F& f) {
    std::size_t ls = size_of(nodes_[t].left);
    if (pos < ls) {
      modify_rec(nodes_[t].left, pos, f);
    } else if (pos == ls) {
      f(nodes_[t].value);
    } else {
      modify_rec(nodes_[t].right, pos - ls - 1, f);
    }
    pull(t);
  }

  template <class F>
  void visit(index t, std::size_t offset, std::size_t l, std::size_t r, F& f) const {
    if (t == nil) return;
    std::size_t pos = offset + size_of(nodes_[t].left);
    if (l < pos) visit(nodes_[t].left, offset, l, r, f);
    if (l <= pos && pos <= r) f(nodes_[t].value);
    if (r > pos) visit(nodes_[t].right, pos + 1, l, r, f);
  }

  std::vector<node> nodes_;
  index root_ = nil;
  index free_ = nil;
  std::uint64_t rng_ = 0x5eed;
};

}  // namespace dynmode::detail
