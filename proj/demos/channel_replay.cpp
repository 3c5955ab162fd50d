// Sample a noisy read of a word, store the trace as JSON, and replay it.
#include <iostream>

#include "gramcode/gramcode.hpp"
#include "gramcode/io.hpp"

int main(int argc, char** argv) {
  using namespace gramcode;
  std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 42;
  auto x = parse_dna("ATGCGATTACAGGCTA");
  auto out = transmit(x, 3, {1, 2, 1}, seed);
  auto json = io::trace_to_json(out.trace);
  std::cout << "trace: " << json.dump() << '\n';
  auto replayed = inject(x, 3, io::trace_from_json(nlohmann::json::parse(json.dump())));
  std::cout << "observed: " << to_string(out.observed) << '\n';
  std::cout << "replay " << (replayed == out.observed ? "matches" : "differs") << '\n';
  return replayed == out.observed ? 0 : 1;
}
