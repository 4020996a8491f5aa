#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dynmode/engine.hpp"
#include "dynmode/errors.hpp"

namespace dynmode {

// Trace grammar, one operation per line, 0-based decimal fields:
//   I <pos> <sym>    insert
//   D <pos>          delete
//   Q <l> <r>        print "multiplicity id id ..." for A[l..r]
// Lines starting with '#' and blank lines are skipped.
namespace trace {

struct insert_op {
  std::uint64_t pos;
  std::uint64_t symbol;
  friend bool operator==(const insert_op&, const insert_op&) = default;
};
struct delete_op {
  std::uint64_t pos;
  friend bool operator==(const delete_op&, const delete_op&) = default;
};
struct query_op {
  std::uint64_t l;
  std::uint64_t r;
  friend bool operator==(const query_op&, const query_op&) = default;
};

using line = std::variant<insert_op, delete_op, query_op>;

namespace detail {

inline std::vector<std::string_view> fields(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < text.size()) {
    while (k < text.size() && (text[k] == ' ' || text[k] == '\t' || text[k] == '\r')) ++k;
    std::size_t start = k;
    while (k < text.size() && text[k] != ' ' && text[k] != '\t' && text[k] != '\r') ++k;
    if (k > start) out.push_back(text.substr(start, k - start));
  }
  return out;
}

inline std::uint64_t number(std::string_view f, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc{} || ptr != f.data() + f.size()) {
    throw input_error(line_no, "expected a decimal number, got '" + std::string(f) + "'");
  }
  return v;
}

}  // namespace detail

// nullopt for comments and blank lines.
inline std::optional<line> parse_line(std::string_view text, std::size_t line_no) {
  auto f = detail::fields(text);
  if (f.empty() || f.front().front() == '#') return std::nullopt;
  auto need = [&](std::size_t n) {
    if (f.size() != n) {
      throw input_error(line_no, "'" + std::string(f.front()) + "' takes " + std::to_string(n - 1) + " fields");
    }
  };
  if (f.front() == "I") {
    need(3);
    return insert_op{detail::number(f[1], line_no), detail::number(f[2], line_no)};
  }
  if (f.front() == "D") {
    need(2);
    return delete_op{detail::number(f[1], line_no)};
  }
  if (f.front() == "Q") {
    need(3);
    return query_op{detail::number(f[1], line_no), detail::number(f[2], line_no)};
  }
  throw input_error(line_no, "unknown operation '" + std::string(f.front()) + "'");
}

inline std::string format(const line& op) {
  std::ostringstream os;
  if (auto* ins = std::get_if<insert_op>(&op)) {
    os << "I " << ins->pos << ' ' << ins->symbol;
  } else if (auto* del = std::get_if<delete_op>(&op)) {
    os << "D " << del->pos;
  } else {
    const auto& q = std::get<query_op>(op);
    os << "Q " << q.l << ' ' << q.r;
  }
  return os.str();
}

// Executes a trace against an engine, writing one line per query. Positions
// are validated against the running length; violations abort with the line
// number.
template <class Engine>
void run(std::istream& in, std::ostream& out, Engine& eng) {
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    auto op = parse_line(text, line_no);
    if (!op) continue;
    const std::uint64_t n = eng.size();
    if (auto* ins = std::get_if<insert_op>(&*op)) {
      if (ins->pos > n) throw input_error(line_no, "insert position " + std::to_string(ins->pos) + " beyond length " + std::to_string(n));
      eng.insert(ins->pos, ins->symbol);
    } else if (auto* del = std::get_if<delete_op>(&*op)) {
      if (del->pos >= n) throw input_error(line_no, "delete position " + std::to_string(del->pos) + " out of range for length " + std::to_string(n));
      eng.erase(del->pos);
    } else {
      const auto& q = std::get<query_op>(*op);
      if (q.l > q.r || q.r >= n) {
        throw input_error(line_no, "query range [" + std::to_string(q.l) + ", " + std::to_string(q.r) +
                                       "] invalid for length " + std::to_string(n));
      }
      out << eng.modes(q.l, q.r) << '\n';
    }
  }
}

inline void run(std::istream& in, std::ostream& out, const config& cfg = {}) {
  engine eng(cfg);
  run(in, out, eng);
}

inline std::string run(const std::string& text, const config& cfg = {}) {
  std::istringstream in(text);
  std::ostringstream out;
  run(in, out, cfg);
  return out.str();
}

}  // namespace trace
}  // namespace dynmode
