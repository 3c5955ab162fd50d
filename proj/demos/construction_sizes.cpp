// Compare the two constructions of a 3-gram code of length 158 that corrects two losses.
#include <iostream>

#include "gramcode/gramcode.hpp"

int main() {
  using namespace gramcode;
  const auto s = GramSet::full(2, 3);
  auto intersect = grc_intersect(reference_code(), 158, s);
  std::cout << "intersection construction: " << intersect.codewords.size() << " codewords\n";

  VarshamovCode small(5, {1, 2, 3}, 2);
  SystematicLayout layout(s, 39);
  auto systematic = systematic_grc(aecc_codewords(small, 39), 158, layout, 3, true);
  std::cout << "systematic construction:   " << systematic.codewords.size() << " codewords\n";
  return 0;
}
