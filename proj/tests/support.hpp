#pragma once
// Shared generators for the test binaries.

#include <cstdint>
#include <random>
#include <vector>

#include "setm/hfset.hpp"
#include "setm/tapecode.hpp"

namespace setm::testing {

// Random basic code: each new node becomes the next child of a random node.
inline BasicCode random_basic_code(std::mt19937_64& rng, std::size_t max_nodes) {
    std::vector<Path> nodes{Path{}};
    std::vector<std::uint64_t> kids{0};
    const std::size_t n = 1 + rng() % max_nodes;
    while (nodes.size() < n) {
        const std::size_t p = rng() % nodes.size();
        Path c = nodes[p];
        c.push_back(Ordinal::natural(kids[p]++));
        nodes.push_back(c);
        kids.push_back(0);
    }
    return BasicCode(nodes.begin(), nodes.end());
}

// Random set of rank at most `rank`, built from random subsets below.
inline HFSet random_set(std::mt19937_64& rng, std::size_t rank) {
    if (rank == 0) return HFSet{};
    std::vector<HFSet> elems;
    const std::size_t k = rng() % 4;
    for (std::size_t i = 0; i < k; ++i) elems.push_back(random_set(rng, rank - 1));
    return HFSet::of(std::move(elems));
}

inline HFSet S(const char* text) { return HFSet::parse(text); }

}  // namespace setm::testing
