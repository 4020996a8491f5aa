#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace dynmode {

// All modes of a range: their shared multiplicity and the symbols, ascending.
template <class Symbol>
struct modes_result {
  std::uint64_t multiplicity = 0;
  std::vector<Symbol> modes;

  friend bool operator==(const modes_result&, const modes_result&) = default;

  // "multiplicity id id ...", the canonical text form used by traces.
  friend std::ostream& operator<<(std::ostream& os, const modes_result& r) {
    os << r.multiplicity;
    for (const Symbol& s : r.modes) os << ' ' << s;
    return os;
  }
};

}  // namespace dynmode
