#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dynmode/engine.hpp"

namespace dynmode::bench {

struct record {
  std::uint64_t n = 0;
  std::uint64_t sigma_prime = 0;
  std::string op;
  double median_ns = 0;
  std::uint64_t output_size = 0;
};

inline constexpr const char* csv_header = "n,sigma_prime,op,median_ns,output_size";

inline void write_csv(std::ostream& os, const std::vector<record>& rows) {
  os << csv_header << '\n';
  for (const record& r : rows) {
    os << r.n << ',' << r.sigma_prime << ',' << r.op << ',' << static_cast<std::uint64_t>(std::llround(r.median_ns))
       << ',' << r.output_size << '\n';
  }
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  return denom == 0 ? 0 : (n * sxy - sx * sy) / denom;
}

template <class F>
double time_ns(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::nano>(t1 - t0).count();
}

struct update_sample {
  std::vector<double> insert_ns;
  std::vector<double> delete_ns;
};

inline std::vector<std::uint64_t> random_sequence(std::size_t n, std::uint64_t alphabet, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> sym(0, alphabet - 1);
  std::vector<std::uint64_t> seq(n);
  for (auto& s : seq) s = sym(rng);
  return seq;
}

inline std::uint64_t distinct(const std::vector<std::uint64_t>& seq) {
  return std::set<std::uint64_t>(seq.begin(), seq.end()).size();
}

// Per-operation latencies of `pairs` insert/delete pairs on a length-n
// sequence; the length oscillates between n and n + 1 so no reset fires.
inline update_sample measure_updates(engine& eng, std::size_t pairs, std::uint64_t alphabet, std::mt19937_64& rng) {
  update_sample out;
  std::uniform_int_distribution<std::uint64_t> sym(0, alphabet - 1);
  for (std::size_t k = 0; k < pairs; ++k) {
    std::size_t n = eng.size();
    std::size_t at = std::uniform_int_distribution<std::size_t>(0, n)(rng);
    std::uint64_t c = sym(rng);
    out.insert_ns.push_back(time_ns([&] { eng.insert(at, c); }));
    std::size_t gone = std::uniform_int_distribution<std::size_t>(0, n)(rng);
    out.delete_ns.push_back(time_ns([&] { eng.erase(gone); }));
  }
  return out;
}

struct options {
  std::vector<std::size_t> sizes{1u << 14, 1u << 17, 1u << 20};
  std::uint64_t alphabet = 26;
  std::string mix = "updates";  // updates | modes | ties | all
  std::size_t repetitions = 20;
  std::vector<std::size_t> ties{1, 64, 4096};
  std::size_t ties_n = 4096;
  std::size_t batch = 64;  // queries per timed batch in the ties benchmark
  config cfg{};
  std::uint64_t seed = 7;
};

// Median full-range query time on a length-n sequence where each of k
// symbols occurs n / k times (n must be a multiple of k).
inline record measure_tied_modes(std::size_t n, std::size_t k, std::size_t repetitions, std::size_t batch,
                                 const config& cfg, std::mt19937_64& rng) {
  std::vector<std::uint64_t> seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = i % k;
  std::shuffle(seq.begin(), seq.end(), rng);
  engine eng(seq, cfg);
  std::vector<double> per_query;
  std::uint64_t produced = 0;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    double ns = time_ns([&] {
      for (std::size_t b = 0; b < batch; ++b) produced = eng.modes(0, n - 1).modes.size();
    });
    per_query.push_back(ns / static_cast<double>(batch));
  }
  return {n, k, "modes_tied", median(per_query), produced};
}

inline std::vector<record> run(const options& opt, std::ostream* summary = nullptr) {
  std::vector<record> rows;
  if (opt.repetitions == 0) return rows;
  std::mt19937_64 rng(opt.seed);
  const bool updates = opt.mix == "updates" || opt.mix == "all";
  const bool queries = opt.mix == "modes" || opt.mix == "all";
  const bool ties = opt.mix == "ties" || opt.mix == "all";

  if (updates || queries) {
    for (std::size_t n : opt.sizes) {
      auto seq = random_sequence(n, opt.alphabet, rng);
      const std::uint64_t sigma = distinct(seq);
      engine eng(seq, opt.cfg);
      if (updates) {
        auto s = measure_updates(eng, opt.repetitions, opt.alphabet, rng);
        rows.push_back({n, sigma, "insert", median(s.insert_ns), 0});
        rows.push_back({n, sigma, "delete", median(s.delete_ns), 0});
      }
      if (queries) {
        std::vector<double> ns;
        std::vector<double> outs;
        for (std::size_t rep = 0; rep < opt.repetitions; ++rep) {
          std::size_t l = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
          std::size_t r = std::uniform_int_distribution<std::size_t>(l, n - 1)(rng);
          std::size_t produced = 0;
          ns.push_back(time_ns([&] { produced = eng.modes(l, r).modes.size(); }));
          outs.push_back(static_cast<double>(produced));
        }
        rows.push_back({n, sigma, "modes", median(ns), static_cast<std::uint64_t>(median(outs))});
      }
    }
  }
  if (ties) {
    for (std::size_t k : opt.ties) {
      if (k == 0 || opt.ties_n % k != 0) continue;
      rows.push_back(measure_tied_modes(opt.ties_n, k, opt.repetitions, opt.batch, opt.cfg, rng));
    }
  }

  if (summary != nullptr) {
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> series;
    for (const record& r : rows) {
      auto& [xs, ys] = series[r.op];
      xs.push_back(static_cast<double>(r.op == "modes_tied" ? r.sigma_prime : r.n));
      ys.push_back(std::max(r.median_ns, 1.0));
    }
    for (const auto& [op, xy] : series) {
      *summary << "# slope " << op << (op == "modes_tied" ? " vs_k " : " vs_n ") << loglog_slope(xy.first, xy.second)
               << '\n';
    }
  }
  return rows;
}

}  // namespace dynmode::bench
