#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "dynmode/pair_table.hpp"

using Table = dynmode::pair_table<std::uint64_t>;
using Blocks = std::vector<std::vector<std::uint64_t>>;

namespace {

constexpr std::uint64_t a = 'a', b = 'b', c = 'c', x = 'x';

Table build(const Blocks& blocks) { return Table::rebuild(blocks); }

// Direct recount of every cell.
bool matches_recount(const Table& t, const Blocks& blocks) {
  for (std::size_t l = 0; l < blocks.size(); ++l) {
    std::map<std::uint64_t, std::uint32_t> counts;
    for (std::size_t r = l; r < blocks.size(); ++r) {
      for (auto s : blocks[r]) ++counts[s];
      const auto& cell = t.cell(l, r);
      if (!cell.check_consistency().empty() || cell.size() != counts.size()) return false;
      for (auto [sym, k] : counts) {
        if (cell.count_of(sym) != k) return false;
      }
    }
  }
  return true;
}

std::vector<std::string> snapshot(const Table& t) {
  std::vector<std::string> out;
  for (std::size_t l = 0; l < t.blocks(); ++l) {
    for (std::size_t r = l; r < t.blocks(); ++r) {
      std::string s;
      for (const auto& e : t.cell(l, r).entries()) s += std::to_string(e.symbol) + ":" + std::to_string(e.count) + " ";
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

TEST(PairTable, Rebuild) {
  Table t = build({{a, b}, {a}});
  EXPECT_EQ(t.cell(0, 0).count_of(a), 1u);
  EXPECT_EQ(t.cell(0, 0).count_of(b), 1u);
  EXPECT_EQ(t.cell(1, 1).count_of(a), 1u);
  EXPECT_EQ(t.cell(1, 1).size(), 1u);
  EXPECT_EQ(t.cell(0, 1).count_of(a), 2u);
  EXPECT_EQ(t.cell(0, 1).count_of(b), 1u);

  Table single = build({{a}});
  EXPECT_EQ(single.cells(), 1u);
  EXPECT_EQ(single.cell(0, 0).count_of(a), 1u);

  Table empty = build({{}, {}});
  EXPECT_EQ(empty.cells(), 3u);
  EXPECT_TRUE(empty.cell(0, 1).empty());
}

TEST(PairTable, ApplyPointTouchesExactlyTheCoveringCells) {
  Table t = build({{}, {}, {}});
  t.apply_point(1, x, +1);
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t r = l; r < 3; ++r) {
      bool covers = l <= 1 && 1 <= r;
      EXPECT_EQ(t.cell(l, r).count_of(x), covers ? 1u : 0u) << l << "," << r;
    }
  }

  Table one = build({{}});
  one.apply_point(0, a, +1);
  EXPECT_EQ(one.cell(0, 0).count_of(a), 1u);
  one.apply_point(0, a, -1);
  EXPECT_TRUE(one.cell(0, 0).empty());

  Table missing = build({{a}, {}});
  EXPECT_THROW(missing.apply_point(1, a, -1), dynmode::invariant_error);
  EXPECT_THROW(missing.apply_point(2, a, +1), dynmode::range_error);
  EXPECT_THROW(missing.apply_point(0, a, 2), dynmode::usage_error);
}

TEST(PairTable, ApplyPointChangesJPlusOneTimesLMinusJCells) {
  for (std::size_t blocks : {1u, 2u, 5u, 9u}) {
    for (std::size_t j = 0; j < blocks; ++j) {
      Table t(blocks);
      auto before = snapshot(t);
      t.apply_point(j, c, +1);
      auto after = snapshot(t);
      std::size_t changed = 0;
      for (std::size_t k = 0; k < before.size(); ++k) changed += before[k] != after[k];
      EXPECT_EQ(changed, (j + 1) * (blocks - j));
    }
  }
}

TEST(PairTable, ShiftLeft) {
  Blocks blocks{{a}, {b, c}};
  Table t = build(blocks);
  t.shift_left(1, b);
  EXPECT_TRUE(matches_recount(t, Blocks{{a, b}, {c}}));

  Table two = build({{}, {a}});
  two.shift_left(1, a);
  EXPECT_TRUE(matches_recount(two, Blocks{{a}, {}}));

  Table s = build({{a}, {b}, {c}});
  s.shift_left(2, c);
  EXPECT_TRUE(matches_recount(s, Blocks{{a}, {b, c}, {}}));
  EXPECT_THROW(s.shift_left(0, a), dynmode::range_error);
}

TEST(PairTable, ShiftRight) {
  Table t = build({{a, b}, {c}});
  t.shift_right(0, b);
  EXPECT_TRUE(matches_recount(t, Blocks{{a}, {b, c}}));
  EXPECT_THROW(t.shift_right(1, c), dynmode::range_error);
}

TEST(PairTable, ShiftsAreInverses) {
  Table t = build({{a, b}, {c}, {a}});
  auto before = snapshot(t);
  t.shift_right(0, b);
  t.shift_left(1, b);
  EXPECT_EQ(snapshot(t), before);
}

TEST(PairTable, IncrementalUpdatesMatchRecount) {
  std::mt19937_64 rng(31);
  for (std::size_t L : {1u, 3u, 6u}) {
    Blocks blocks(L);
    Table t(L);
    for (int step = 0; step < 600; ++step) {
      std::size_t j = rng() % L;
      int op = static_cast<int>(rng() % 4);
      if (op == 0 || blocks[j].empty()) {
        std::uint64_t s = rng() % 5;
        blocks[j].push_back(s);
        t.apply_point(j, s, +1);
      } else if (op == 1) {
        std::size_t at = rng() % blocks[j].size();
        std::uint64_t s = blocks[j][at];
        blocks[j].erase(blocks[j].begin() + static_cast<std::ptrdiff_t>(at));
        t.apply_point(j, s, -1);
      } else if (op == 2 && j > 0) {
        std::uint64_t s = blocks[j].front();
        blocks[j].erase(blocks[j].begin());
        blocks[j - 1].push_back(s);
        t.shift_left(j, s);
      } else if (op == 3 && j + 1 < L) {
        std::uint64_t s = blocks[j].back();
        blocks[j].pop_back();
        blocks[j + 1].insert(blocks[j + 1].begin(), s);
        t.shift_right(j, s);
      }
      if (step % 37 == 0) {
        ASSERT_TRUE(matches_recount(t, blocks));
      }
    }
    EXPECT_TRUE(matches_recount(t, blocks));
    EXPECT_EQ(snapshot(t), snapshot(build(blocks)));
  }
}

TEST(PairTable, CellOutsideTableThrows) {
  Table t(2);
  EXPECT_THROW(t.cell(1, 0), dynmode::range_error);
  EXPECT_THROW(t.cell(0, 2), dynmode::range_error);
  EXPECT_EQ(Table::cell_count(4), 10u);
}
