#pragma once

#include "gapmatch/strings.hpp"

namespace fixture {

// Binary example with m = 10, n = 30 whose container sets are known:
// pattern part {0, 1, 3} and text part {8, 12, 13, 15, 21} at k = 2.
inline gapmatch::Instance container_example(std::size_t k = 2) {
  gapmatch::SymbolSeq p = {0, 1, 0, 0, 1, 1, 1, 1, 1, 1};
  gapmatch::SymbolSeq t = {0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1,
                           1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1};
  return gapmatch::Instance::make(p, t, 2, k);
}

}  // namespace fixture
