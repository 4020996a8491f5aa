// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynmode/bench.hpp"
#include "dynmode/dynmode.hpp"
#include "dynmode/fuzz.hpp"

using namespace dynmode;

namespace {

struct outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

config with(strategy s, bool audit = false) {
  config cfg;
  cfg.strategy = s;
  cfg.audit_mode = audit;
  return cfg;
}

outcome differential() {
  auto t0 = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool ok = true;
  for (strategy s : {strategy::simple_rebuild, strategy::pcn}) {
    for (std::uint64_t alphabet : {2u, 5u, 26u, 1000u}) {
      fuzz::options opt;
      opt.seed = 1000 + alphabet;
      opt.ops = 10000;
      opt.max_len = 2000;
      opt.alphabet = alphabet;
      opt.cfg = with(s);
      auto rep = fuzz::run(opt);
      if (!rep.ok) {
        ok = false;
        detail << " [" << to_string(s) << " sigma=" << alphabet << ": " << rep.failure << "]";
      }
    }
  }
  double secs = seconds_since(t0);
  detail << " 8 runs in " << secs << " s (limit 60)";
  return {ok && secs < 60, detail.str()};
}

outcome regime_stress() {
  std::mt19937_64 rng(2024);
  engine e(with(strategy::pcn, true));
  naive_seq<std::uint64_t> oracle;
  std::size_t ops = 0, queries = 0, bad = 0;
  std::string error;
  auto step = [&](bool grow) {
    if (grow) {
      std::size_t at = rng() % (e.size() + 1);
      std::uint64_t s = rng() % 26;
      e.insert(at, s);
      oracle.insert(at, s);
    } else {
      std::size_t at = rng() % e.size();
      if (e.erase(at) != oracle.erase(at)) ++bad;
    }
    if (++ops % 50 == 0 && e.size() > 0) {
      std::size_t l = rng() % e.size();
      std::size_t r = l + rng() % (e.size() - l);
      ++queries;
      if (!(e.modes(l, r) == oracle.modes(l, r))) ++bad;
    }
  };
  try {
    while (e.size() < 5000) step(rng() % 10 < 8);
    while (e.size() > 8) step(rng() % 10 < 2);
  } catch (const std::exception& ex) {
    error = ex.what();
  }
  auto audit = e.audit();
  const auto& st = e.stats();
  std::ostringstream detail;
  detail << " ops=" << ops << " queries=" << queries << " mismatches=" << bad << " doublings=" << st.doubling_resets
         << " halvings=" << st.halving_resets << " placement_violations=" << st.placement_violations;
  if (!error.empty()) detail << " error: " << error;
  if (!audit.ok) detail << " audit: " << audit.violation;
  bool ok = error.empty() && bad == 0 && audit.ok && st.doubling_resets > 0 && st.halving_resets > 0 &&
            st.placement_violations == 0;
  return {ok, detail.str()};
}

outcome structural_audit() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::size_t audits = 0;
  std::ostringstream detail;
  for (strategy s : {strategy::simple_rebuild, strategy::pcn}) {
    for (std::uint64_t alphabet : {3u, 26u}) {
      fuzz::options opt;
      opt.seed = 77 + alphabet;
      opt.ops = 5000;
      opt.max_len = 300;
      opt.alphabet = alphabet;
      opt.audit_every = 100;
      opt.cfg = with(s);
      auto rep = fuzz::run(opt);
      audits += rep.audits;
      if (!rep.ok) {
        ok = false;
        detail << " [" << to_string(s) << ": " << rep.failure << "]";
      }
    }
  }
  double secs = seconds_since(t0);
  detail << " audits=" << audits << " in " << secs << " s (limit 30)";
  return {ok && secs < 30, detail.str()};
}

outcome update_scaling() {
  std::mt19937_64 rng(4);
  std::vector<double> xs, ys;
  std::ostringstream detail;
  for (std::size_t n : {std::size_t{1} << 14, std::size_t{1} << 17, std::size_t{1} << 20}) {
    auto seq = bench::random_sequence(n, 26, rng);
    engine e(seq);
    auto sample = bench::measure_updates(e, 200, 26, rng);
    std::vector<double> all = sample.insert_ns;
    all.insert(all.end(), sample.delete_ns.begin(), sample.delete_ns.end());
    xs.push_back(static_cast<double>(n));
    ys.push_back(bench::median(all));
    detail << " t(" << n << ")=" << static_cast<long long>(ys.back()) << "ns";
  }
  double slope = bench::loglog_slope(xs, ys);
  double bound = 10 * ys.front() * (xs.back() / xs.front());
  detail << " slope=" << slope << " (want [0.4, 0.9]) linear-bound=" << static_cast<long long>(bound) << "ns";
  return {slope >= 0.4 && slope <= 0.9 && ys.back() < bound, detail.str()};
}

outcome output_sensitivity() {
  std::mt19937_64 rng(5);
  std::ostringstream detail;
  bool exact = true;
  std::vector<double> t;
  for (std::size_t k : {1u, 64u, 4096u}) {
    auto rec = bench::measure_tied_modes(4096, k, 51, 64, config{}, rng);
    if (rec.output_size != k) exact = false;
    t.push_back(rec.median_ns);
    detail << " t(k=" << k << ")=" << static_cast<long long>(rec.median_ns) << "ns modes=" << rec.output_size;
  }
  // Exact mode set, checked against a direct count.
  std::vector<std::uint64_t> seq(4096);
  for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = i % 64;
  std::shuffle(seq.begin(), seq.end(), rng);
  engine e(seq);
  if (!(e.modes(0, seq.size() - 1) == naive_seq<std::uint64_t>(seq).modes(0, seq.size() - 1))) exact = false;
  double ratio = t[2] / t[1];
  detail << " ratio t(4096)/t(64)=" << ratio << " (want [16, 256])";
  return {exact && ratio >= 16 && ratio <= 256, detail.str()};
}

outcome set_intersection() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(6);
  std::size_t pairs = 0, wrong = 0;
  for (int family = 0; family < 200; ++family) {
    const std::size_t universe = 1 + rng() % 30;
    const std::size_t count = 2 + rng() % 19;
    std::vector<std::set<set_family::member>> truth(count);
    std::vector<std::vector<set_family::member>> sets(count);
    const auto density = rng() % 100;
    for (std::size_t k = 0; k < count; ++k) {
      for (set_family::member x = 0; x < universe; ++x) {
        if (rng() % 100 < density) {
          truth[k].insert(x);
          sets[k].push_back(x);
        }
      }
    }
    set_family f(sets, universe);
    auto check = [&] {
      for (std::size_t i = 1; i <= count; ++i) {
        for (std::size_t j = i + 1; j <= count; ++j) {
          std::vector<set_family::member> want;
          std::set_intersection(truth[i - 1].begin(), truth[i - 1].end(), truth[j - 1].begin(), truth[j - 1].end(),
                                std::back_inserter(want));
          ++pairs;
          if (f.intersect(i, j) != !want.empty() || f.enumerate_intersection(i, j) != want) ++wrong;
        }
      }
    };
    check();
    for (int u = 0; u < 100; ++u) {
      std::size_t k = 1 + rng() % count;
      auto x = static_cast<set_family::member>(rng() % universe);
      if (truth[k - 1].count(x)) {
        f.remove_member(k, x);
        truth[k - 1].erase(x);
      } else {
        f.add_member(k, x);
        truth[k - 1].insert(x);
      }
    }
    check();
  }
  double secs = seconds_since(t0);
  std::ostringstream detail;
  detail << " pairs=" << pairs << " wrong=" << wrong << " in " << secs << " s (limit 60)";
  return {wrong == 0 && secs < 60, detail.str()};
}

outcome strategy_equivalence() {
  std::size_t identical = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    fuzz::options opt;
    opt.seed = seed;
    opt.ops = 1000;
    opt.max_len = 200;
    opt.alphabet = 1 + seed % 8;
    std::ostringstream text;
    for (const auto& op : fuzz::run(opt).reproducer) text << trace::format(op) << '\n';
    ++total;
    if (trace::run(text.str(), with(strategy::simple_rebuild)) == trace::run(text.str(), with(strategy::pcn))) {
      ++identical;
    }
  }
  std::ostringstream detail;
  detail << " identical=" << identical << "/" << total;
  return {identical == total, detail.str()};
}

}  // namespace

int main() {
  struct criterion {
    const char* name;
    std::function<outcome()> run;
  };
  const std::vector<criterion> criteria{
      {"differential correctness", differential},
      {"regime stress", regime_stress},
      {"structural audit", structural_audit},
      {"update scaling", update_scaling},
      {"output sensitivity", output_sensitivity},
      {"set intersection", set_intersection},
      {"strategy equivalence", strategy_equivalence},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    outcome out;
    try {
      out = criteria[k].run();
    } catch (const std::exception& e) {
      out = {false, std::string(" exception: ") + e.what()};
    }
    failures += !out.pass;
    std::printf("%s %zu %s:%s\n", out.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
