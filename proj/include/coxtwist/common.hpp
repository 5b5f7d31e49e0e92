#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxtwist {

// Error taxonomy, mirrored by the CLI exit codes:
//   ParseError -> 2, CapExceeded -> 3, InternalError -> 4.
// Verification failures are ordinary return values, not exceptions.

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Consistency failures that no valid input can trigger.  Reaching one means the
// build itself is wrong, so these are never caught internally.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

enum class Side { left, right };

// Generator subsets as bitmasks.  Ranks above 64 are rejected at parse time.
using GenSet = std::uint64_t;

std::vector<int> genset_to_list(GenSet s);

// xorshift64*.  <random> distributions are implementation-defined, which would
// break the byte-identical-output contract; this is stable everywhere.
struct DetRng {
  std::uint64_t state;

  explicit DetRng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    std::uint64_t x = state;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state = x;
    return x * 0x2545f4914f6cdd1dull;
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline constexpr std::uint64_t kDefaultSeed = 12345;

}  // namespace coxtwist
