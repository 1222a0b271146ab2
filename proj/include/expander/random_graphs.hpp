#pragma once

#include <cstdint>

#include "expander/rotation_graph.hpp"

namespace expander {

// Simple connected d-regular graph on n vertices via dart pairing with
// rejection. Deterministic given the seed. Requires n*d even, 1 <= d < n;
// throws NoConvergence when rejection exhausts its attempt budget.
RotationGraph random_regular(std::uint64_t n, std::uint32_t d, std::uint64_t seed);

// Simple connected (c,d)-biregular graph on (nl, nr) vertices via a random
// dart matching with rejection. Requires nl*c == nr*d, c <= nr, d <= nl.
BipartiteGraph random_biregular(std::uint64_t nl, std::uint64_t nr, std::uint32_t c,
                                std::uint32_t d, std::uint64_t seed);

}  // namespace expander
