#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gts/linalg.hpp"

namespace gts {

// Minimum-weight perfect matching on a dense graph, with support for
// forbidden pairs. `allowed` is an n x n symmetric 0/1 mask (diagonal
// ignored); `weight` entries are read only where allowed. Returns the mate
// array (mate[v] = partner of v) or nullopt when no perfect matching exists
// over the allowed pairs.
//
// The solver is the classic primal-dual blossom scheme: alternating forests
// grown from exposed vertices over tight edges, blossom contraction and
// expansion, and dual adjustments that create new tight edges. It is exact
// and deterministic: all scans run in fixed index order.
std::optional<std::vector<int>> min_weight_perfect_matching(
    int n, const Matrix& weight, const std::vector<std::uint8_t>& allowed);

}  // namespace gts
