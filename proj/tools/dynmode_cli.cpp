// Command-line front end: trace runner, differential fuzzer, benchmark
// harness and the set-intersection demo.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynmode/bench.hpp"
#include "dynmode/dynmode.hpp"
#include "dynmode/fuzz.hpp"

namespace {

struct engine_flags {
  std::string strategy = "simple-rebuild";
  std::string alpha = "1/3";
  bool audit = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--strategy", strategy, "Block strategy: simple-rebuild or pcn")->capture_default_str();
    cmd.add_option("--alpha", alpha, "Block exponent as num/den")->capture_default_str();
    cmd.add_flag("--audit", audit, "Enable audit-mode assertions");
  }

  dynmode::config to_config() const {
    dynmode::config cfg;
    auto st = dynmode::parse_strategy(strategy);
    if (!st) throw dynmode::config_error("unknown strategy '" + strategy + "'");
    cfg.strategy = *st;
    auto slash = alpha.find('/');
    if (slash == std::string::npos) throw dynmode::config_error("alpha must look like num/den");
    cfg.alpha = {static_cast<unsigned>(std::stoul(alpha.substr(0, slash))),
                 static_cast<unsigned>(std::stoul(alpha.substr(slash + 1)))};
    cfg.audit_mode = audit;
    cfg.validate();
    return cfg;
  }
};

std::istream& open_input(const std::string& path, std::unique_ptr<std::ifstream>& holder) {
  if (path.empty() || path == "-") return std::cin;
  holder = std::make_unique<std::ifstream>(path);
  if (!*holder) throw std::runtime_error("cannot open " + path);
  return *holder;
}

// Family file:
//   U <universe size>
//   S <member> <member> ...     one line per set, members in [0, U)
std::unique_ptr<dynmode::set_family> read_family(std::istream& in, const dynmode::config& cfg) {
  std::string text;
  std::size_t line_no = 0;
  std::optional<std::size_t> universe;
  std::vector<std::vector<dynmode::set_family::member>> sets;
  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream fields(text);
    std::string tag;
    if (!(fields >> tag) || tag.front() == '#') continue;
    if (tag == "U") {
      std::size_t u;
      if (!(fields >> u)) throw dynmode::input_error(line_no, "U needs a universe size");
      universe = u;
    } else if (tag == "S") {
      if (!universe) throw dynmode::input_error(line_no, "S before U");
      std::vector<dynmode::set_family::member> members;
      std::string tok;
      while (fields >> tok) {
        std::uint64_t x;
        try {
          x = std::stoull(tok);
        } catch (const std::exception&) {
          throw dynmode::input_error(line_no, "bad member '" + tok + "'");
        }
        if (x >= *universe) throw dynmode::input_error(line_no, "member " + tok + " outside universe");
        members.push_back(static_cast<dynmode::set_family::member>(x));
      }
      sets.push_back(std::move(members));
    } else {
      throw dynmode::input_error(line_no, "unknown tag '" + tag + "'");
    }
  }
  if (!universe) throw dynmode::input_error(line_no, "missing U line");
  try {
    return std::make_unique<dynmode::set_family>(sets, *universe, cfg);
  } catch (const std::logic_error& e) {
    throw dynmode::input_error(line_no, e.what());
  }
}

// Query stream: "? i j" prints S_i ∩ S_j (or "-"), "+ k x" adds, "- k x" removes.
void run_intersect_queries(dynmode::set_family& family, std::istream& in, std::ostream& out) {
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream fields(text);
    std::string tag;
    if (!(fields >> tag) || tag.front() == '#') continue;
    std::uint64_t a, b;
    if (!(fields >> a >> b)) throw dynmode::input_error(line_no, "expected two numbers after '" + tag + "'");
    try {
      if (tag == "?") {
        auto common = family.enumerate_intersection(a, b);
        if (common.empty()) {
          out << "-\n";
        } else {
          for (std::size_t k = 0; k < common.size(); ++k) out << (k ? " " : "") << common[k];
          out << '\n';
        }
      } else if (tag == "+") {
        family.add_member(a, static_cast<dynmode::set_family::member>(b));
      } else if (tag == "-") {
        family.remove_member(a, static_cast<dynmode::set_family::member>(b));
      } else {
        throw dynmode::input_error(line_no, "unknown query '" + tag + "'");
      }
    } catch (const dynmode::input_error&) {
      throw;
    } catch (const std::logic_error& e) {
      throw dynmode::input_error(line_no, e.what());
    }
  }
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic range mode enumeration"};
  app.require_subcommand(1);

  auto* trace_cmd = app.add_subcommand("trace", "Run an I/D/Q trace and print every query answer");
  engine_flags trace_flags;
  trace_flags.attach(*trace_cmd);
  std::string trace_path;
  trace_cmd->add_option("file", trace_path, "Trace file (default: stdin)");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "Differential fuzzing against the naive oracle");
  engine_flags fuzz_flags;
  fuzz_flags.attach(*fuzz_cmd);
  dynmode::fuzz::options fuzz_opt;
  bool inject_fault = false;
  std::string dump_path;
  fuzz_cmd->add_option("--seed", fuzz_opt.seed)->capture_default_str();
  fuzz_cmd->add_option("--ops", fuzz_opt.ops)->capture_default_str();
  fuzz_cmd->add_option("--max-len", fuzz_opt.max_len)->capture_default_str();
  fuzz_cmd->add_option("--alphabet", fuzz_opt.alphabet)->capture_default_str()->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--audit-every", fuzz_opt.audit_every, "Full audit period in operations (0 = off)")
      ->capture_default_str();
  fuzz_cmd->add_flag("--inject-fault", inject_fault, "Drop the inner-block top from modes (harness self-test)");
  fuzz_cmd->add_option("--dump", dump_path, "Write the reproducer trace here on divergence");

  auto* bench_cmd = app.add_subcommand("bench", "Scaling benchmark, CSV on stdout");
  engine_flags bench_flags;
  bench_flags.attach(*bench_cmd);
  dynmode::bench::options bench_opt;
  std::string sizes = "16384,131072,1048576";
  std::string ties = "1,64,4096";
  bench_cmd->add_option("--sizes", sizes, "Comma-separated sequence lengths")->capture_default_str();
  bench_cmd->add_option("--alphabet", bench_opt.alphabet)->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--mix", bench_opt.mix, "updates | modes | ties | all")
      ->capture_default_str()
      ->check(CLI::IsMember({"updates", "modes", "ties", "all"}));
  bench_cmd->add_option("--repetitions", bench_opt.repetitions)->capture_default_str();
  bench_cmd->add_option("--ties", ties, "Tied alphabet sizes k for the output-size benchmark")->capture_default_str();
  bench_cmd->add_option("--ties-n", bench_opt.ties_n, "Sequence length for the tie benchmark")->capture_default_str();
  bench_cmd->add_option("--seed", bench_opt.seed)->capture_default_str();

  auto* isect_cmd = app.add_subcommand("intersect", "Set intersection through range modes");
  engine_flags isect_flags;
  isect_flags.attach(*isect_cmd);
  std::string family_path, query_path;
  isect_cmd->add_option("family", family_path, "Family file")->required();
  isect_cmd->add_option("queries", query_path, "Query stream (default: stdin)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*trace_cmd) {
      std::unique_ptr<std::ifstream> holder;
      dynmode::trace::run(open_input(trace_path, holder), std::cout, trace_flags.to_config());
      return 0;
    }
    if (*fuzz_cmd) {
      fuzz_opt.cfg = fuzz_flags.to_config();
      if (inject_fault) fuzz_opt.cfg.fault = dynmode::fault::omit_block_top;
      auto rep = dynmode::fuzz::run(fuzz_opt);
      std::cout << rep.to_string(fuzz_opt);
      if (!rep.ok && !dump_path.empty()) {
        std::ofstream dump(dump_path);
        for (const auto& op : rep.reproducer) dump << dynmode::trace::format(op) << '\n';
      }
      return rep.ok ? 0 : 1;
    }
    if (*bench_cmd) {
      bench_opt.cfg = bench_flags.to_config();
      bench_opt.sizes = parse_list(sizes);
      bench_opt.ties = parse_list(ties);
      std::ostringstream summary;
      auto rows = dynmode::bench::run(bench_opt, &summary);
      dynmode::bench::write_csv(std::cout, rows);
      std::cout << summary.str();
      return 0;
    }
    if (*isect_cmd) {
      auto cfg = isect_flags.to_config();
      std::ifstream family_in(family_path);
      if (!family_in) throw std::runtime_error("cannot open " + family_path);
      auto family = read_family(family_in, cfg);
      std::unique_ptr<std::ifstream> holder;
      run_intersect_queries(*family, open_input(query_path, holder), std::cout);
      return 0;
    }
  } catch (const dynmode::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
