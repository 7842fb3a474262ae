#pragma once
// Allocation metering for per-run working-memory reports.  The replacement
// operator new/delete pair lives in memtrack_impl.hpp, which exactly one
// translation unit per binary must include; binaries without that TU still
// link and run, but Scope::peak() stays 0.

#include <cstddef>
#include <cstdint>

namespace pcon::memtrack {

struct Counters {
  std::uint64_t current = 0;
  std::uint64_t peak = 0;
  bool active = false;
};

inline thread_local Counters tl_counters;

inline bool& implemented() {
  static bool flag = false;  // set by the memtrack_impl.hpp TU
  return flag;
}

inline void on_alloc(std::size_t size) {
  Counters& c = tl_counters;
  c.current += size;
  if (c.current > c.peak) c.peak = c.current;
}

inline void on_free(std::size_t size) {
  Counters& c = tl_counters;
  // A scope reset can strand allocations made before it; clamp instead of
  // letting the counter wrap.
  c.current = size > c.current ? 0 : c.current - size;
}

// Meters this thread's allocations for its lifetime.  Scopes do not nest.
class Scope {
 public:
  Scope() {
    tl_counters.current = 0;
    tl_counters.peak = 0;
    tl_counters.active = true;
  }
  ~Scope() { tl_counters.active = false; }
  Scope(const Scope&) = delete;
  Scope& operator=(const Scope&) = delete;

  std::uint64_t peak() const { return tl_counters.peak; }
};

}  // namespace pcon::memtrack
