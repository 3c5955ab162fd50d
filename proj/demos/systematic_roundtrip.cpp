// Encode every message of [2]^3 into a binary word of length 20, read back the 3-gram
// profile, and recover the message from the information arcs.
#include <iostream>

#include "gramcode/gramcode.hpp"

int main() {
  using namespace gramcode;
  const auto s = GramSet::full(2, 3);
  const SystematicLayout layout(s, 2);
  int failures = 0;
  for (std::int64_t a = 0; a < 2; ++a)
    for (std::int64_t b = 0; b < 2; ++b)
      for (std::int64_t c = 0; c < 2; ++c) {
        std::vector<std::int64_t> v{a, b, c};
        auto u = systematic_encode(v, 20, layout);
        auto word = euler_word(u, layout.graph());
        auto back = systematic_restrict(profile(word, s), layout);
        failures += back != v;
        std::cout << a << b << c << " -> " << to_digits(word) << (back == v ? "  ok" : "  MISMATCH") << '\n';
      }
  return failures == 0 ? 0 : 1;
}
