#include "protfeat/parallel.h"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace protfeat {

unsigned thread_cap() {
  if (const char *env = std::getenv("FORGE_THREADS")) {
    std::string_view s(env);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return 0;
}

unsigned default_thread_count() {
  if (const unsigned cap = thread_cap(); cap > 0) return cap;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace protfeat
