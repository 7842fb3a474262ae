// Global operator new/delete replacements backing pcon/memtrack.hpp.
// Include from exactly one translation unit per binary.  Each allocation
// carries a small header recording the malloc base, the requested size, and
// whether a metering scope was active when it was made, so frees decrement
// exactly what their allocation added.

#pragma once

#include <cstdlib>
#include <new>

#include "pcon/memtrack.hpp"

namespace pcon::memtrack::impl {

struct Header {
  void* base;        // pointer returned by malloc
  std::size_t size;  // requested payload size
  bool counted;      // metering scope active at allocation time
};

inline void* allocate(std::size_t size, std::size_t align) {
  if (align < alignof(std::max_align_t)) align = alignof(std::max_align_t);
  std::size_t total = size + sizeof(Header) + align;
  for (;;) {
    void* base = std::malloc(total);
    if (base) {
      auto addr = reinterpret_cast<std::uintptr_t>(base) + sizeof(Header);
      addr = (addr + align - 1) & ~(static_cast<std::uintptr_t>(align) - 1);
      void* user = reinterpret_cast<void*>(addr);
      Header* h = static_cast<Header*>(user) - 1;
      h->base = base;
      h->size = size;
      h->counted = tl_counters.active;
      if (h->counted) on_alloc(size);
      return user;
    }
    std::new_handler handler = std::get_new_handler();
    if (!handler) throw std::bad_alloc();
    handler();
  }
}

inline void release(void* p) noexcept {
  if (!p) return;
  Header* h = static_cast<Header*>(p) - 1;
  if (h->counted) on_free(h->size);
  std::free(h->base);
}

inline const bool registered = [] {
  implemented() = true;
  return true;
}();

}  // namespace pcon::memtrack::impl

void* operator new(std::size_t size) {
  return pcon::memtrack::impl::allocate(size, alignof(std::max_align_t));
}
void* operator new[](std::size_t size) {
  return pcon::memtrack::impl::allocate(size, alignof(std::max_align_t));
}
void* operator new(std::size_t size, std::align_val_t align) {
  return pcon::memtrack::impl::allocate(size, static_cast<std::size_t>(align));
}
void* operator new[](std::size_t size, std::align_val_t align) {
  return pcon::memtrack::impl::allocate(size, static_cast<std::size_t>(align));
}
void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
  try {
    return pcon::memtrack::impl::allocate(size, alignof(std::max_align_t));
  } catch (...) {
    return nullptr;
  }
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
  try {
    return pcon::memtrack::impl::allocate(size, alignof(std::max_align_t));
  } catch (...) {
    return nullptr;
  }
}

void operator delete(void* p) noexcept { pcon::memtrack::impl::release(p); }
void operator delete[](void* p) noexcept { pcon::memtrack::impl::release(p); }
void operator delete(void* p, std::size_t) noexcept {
  pcon::memtrack::impl::release(p);
}
void operator delete[](void* p, std::size_t) noexcept {
  pcon::memtrack::impl::release(p);
}
void operator delete(void* p, std::align_val_t) noexcept {
  pcon::memtrack::impl::release(p);
}
void operator delete[](void* p, std::align_val_t) noexcept {
  pcon::memtrack::impl::release(p);
}
void operator delete(void* p, std::size_t, std::align_val_t) noexcept {
  pcon::memtrack::impl::release(p);
}
void operator delete[](void* p, std::size_t, std::align_val_t) noexcept {
  pcon::memtrack::impl::release(p);
}
void operator delete(void* p, const std::nothrow_t&) noexcept {
  pcon::memtrack::impl::release(p);
}
void operator delete[](void* p, const std::nothrow_t&) noexcept {
  pcon::memtrack::impl::release(p);
}
