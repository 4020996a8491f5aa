#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dynmode/engine.hpp"
#include "dynmode/naive.hpp"
#include "dynmode/trace.hpp"

namespace dynmode::fuzz {

struct options {
  std::uint64_t seed = 1;
  std::size_t ops = 10000;
  std::size_t max_len = 2000;
  std::uint64_t alphabet = 26;
  config cfg{};
  // Full engine audit every this many operations; 0 disables.
  std::size_t audit_every = 0;
  // Operation mix in percent; the remainder are queries.
  unsigned insert_pct = 40;
  unsigned delete_pct = 20;
};

struct report {
  bool ok = true;
  std::size_t operations = 0;  // operations executed, including the failing one
  std::size_t queries = 0;
  std::size_t audits = 0;
  std::string failure;              // empty on success
  std::vector<trace::line> reproducer;  // every operation up to and including the failure

  std::string to_string(const options& opt) const {
    std::ostringstream os;
    os << (ok ? "ok" : "DIVERGENCE") << " seed=" << opt.seed << " strategy=" << dynmode::to_string(opt.cfg.strategy)
       << " alphabet=" << opt.alphabet << " max_len=" << opt.max_len << " operations=" << operations
       << " queries=" << queries << " audits=" << audits << '\n';
    if (!ok) {
      os << failure << '\n';
      os << "# reproducer (" << reproducer.size() << " operations)\n";
      for (const auto& op : reproducer) os << trace::format(op) << '\n';
    }
    return os.str();
  }
};

// Drives engine and oracle with the same seeded random operations and stops
// at the first query whose answers differ (or the first audit failure).
inline report run(const options& opt) {
  report rep;
  std::mt19937_64 rng(opt.seed);
  auto uniform = [&rng](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  engine eng(opt.cfg);
  naive_seq<std::uint64_t> oracle;
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.failure = "operation " + std::to_string(rep.operations) + ": " + why;
  };

  for (std::size_t k = 0; k < opt.ops && rep.ok; ++k) {
    const std::size_t n = oracle.size();
    auto roll = uniform(0, 99);
    trace::line op;
    if (n == 0 || (roll < opt.insert_pct && n < opt.max_len)) {
      op = trace::insert_op{uniform(0, n), uniform(0, opt.alphabet - 1)};
    } else if (roll < opt.insert_pct + opt.delete_pct || (roll < opt.insert_pct && n >= opt.max_len)) {
      op = trace::delete_op{uniform(0, n - 1)};
    } else {
      auto l = uniform(0, n - 1);
      op = trace::query_op{l, uniform(l, n - 1)};
    }
    rep.reproducer.push_back(op);
    ++rep.operations;
    try {
      if (auto* ins = std::get_if<trace::insert_op>(&op)) {
        eng.insert(ins->pos, ins->symbol);
        oracle.insert(ins->pos, ins->symbol);
      } else if (auto* del = std::get_if<trace::delete_op>(&op)) {
        auto a = eng.erase(del->pos);
        auto b = oracle.erase(del->pos);
        if (a != b) fail("delete returned " + std::to_string(a) + ", oracle " + std::to_string(b));
      } else {
        const auto& q = std::get<trace::query_op>(op);
        ++rep.queries;
        auto got = eng.modes(q.l, q.r);
        auto want = oracle.modes(q.l, q.r);
        if (!(got == want)) {
          std::ostringstream os;
          os << trace::format(op) << ": engine \"" << got << "\", oracle \"" << want << '"';
          fail(os.str());
        }
      }
      if (rep.ok && opt.audit_every != 0 && rep.operations % opt.audit_every == 0) {
        ++rep.audits;
        if (auto a = eng.audit(); !a) fail("audit: " + a.violation);
      }
    } catch (const std::exception& e) {
      fail(std::string("exception: ") + e.what());
    }
  }
  return rep;
}

}  // namespace dynmode::fuzz
