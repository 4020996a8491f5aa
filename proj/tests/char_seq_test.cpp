#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "dynmode/char_seq.hpp"

using dynmode::char_seq;
using Seq = char_seq<std::uint64_t>;

namespace {
constexpr std::uint64_t a = 'a', b = 'b', c = 'c', d = 'd', x = 'x';
}

TEST(CharSeq, AccessRange) {
  Seq s({a, b, c, d});
  EXPECT_EQ(s.access_range(1, 2), (std::vector<std::uint64_t>{b, c}));
  EXPECT_EQ(Seq({x}).access_range(0, 0), (std::vector<std::uint64_t>{x}));
  EXPECT_EQ(Seq({a, b, a}).access_range(0, 2), (std::vector<std::uint64_t>{a, b, a}));
  EXPECT_EQ(s.size(), 4u);
}

TEST(CharSeq, AccessRangeRejectsBadBounds) {
  Seq s({a, b});
  EXPECT_THROW(s.access_range(0, 2), dynmode::range_error);
  EXPECT_THROW(s.access_range(1, 0), dynmode::range_error);
  EXPECT_THROW(Seq().access_range(0, 0), dynmode::range_error);
}

TEST(CharSeq, InsertAt) {
  Seq s({a, b});
  s.insert_at(1, x);
  EXPECT_EQ(s.to_vector(), (std::vector<std::uint64_t>{a, x, b}));

  Seq empty;
  empty.insert_at(0, a);
  EXPECT_EQ(empty.to_vector(), (std::vector<std::uint64_t>{a}));

  Seq one({a});
  one.insert_at(1, b);
  EXPECT_EQ(one.to_vector(), (std::vector<std::uint64_t>{a, b}));

  EXPECT_THROW(one.insert_at(3, c), dynmode::range_error);
}

TEST(CharSeq, DeleteAt) {
  Seq s({a, b, c});
  EXPECT_EQ(s.delete_at(0), a);
  EXPECT_EQ(s.to_vector(), (std::vector<std::uint64_t>{b, c}));

  Seq one({a});
  EXPECT_EQ(one.delete_at(0), a);
  EXPECT_TRUE(one.empty());
  EXPECT_THROW(one.delete_at(0), dynmode::range_error);

  Seq two({a, b});
  EXPECT_EQ(two.delete_at(1), b);
  EXPECT_EQ(two.to_vector(), (std::vector<std::uint64_t>{a}));
  EXPECT_THROW(two.delete_at(1), dynmode::range_error);
}

TEST(CharSeq, DistinctInsertsReadBackInPositionOrder) {
  Seq s;
  std::vector<std::uint64_t> mirror;
  std::mt19937_64 rng(3);
  for (std::uint64_t k = 0; k < 200; ++k) {
    std::size_t at = rng() % (mirror.size() + 1);
    s.insert_at(at, k);
    mirror.insert(mirror.begin() + static_cast<std::ptrdiff_t>(at), k);
  }
  EXPECT_EQ(s.access_range(0, s.size() - 1), mirror);
}

TEST(CharSeq, MatchesGrowableArrayUnderRandomEdits) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    std::mt19937_64 rng(seed);
    Seq s;
    std::vector<std::uint64_t> mirror;
    for (int step = 0; step < 4000; ++step) {
      if (mirror.empty() || rng() % 3 != 0) {
        std::size_t at = rng() % (mirror.size() + 1);
        std::uint64_t v = rng() % 50;
        s.insert_at(at, v);
        mirror.insert(mirror.begin() + static_cast<std::ptrdiff_t>(at), v);
      } else {
        std::size_t at = rng() % mirror.size();
        ASSERT_EQ(s.delete_at(at), mirror[at]);
        mirror.erase(mirror.begin() + static_cast<std::ptrdiff_t>(at));
      }
      ASSERT_EQ(s.size(), mirror.size());
      if (!mirror.empty() && step % 97 == 0) {
        std::size_t l = rng() % mirror.size();
        std::size_t r = l + rng() % (mirror.size() - l);
        ASSERT_EQ(s.access_range(l, r),
                  std::vector<std::uint64_t>(mirror.begin() + static_cast<std::ptrdiff_t>(l),
                                             mirror.begin() + static_cast<std::ptrdiff_t>(r + 1)));
        ASSERT_EQ(s.at(l), mirror[l]);
      }
    }
    EXPECT_EQ(s.to_vector(), mirror);
  }
}
