#pragma once

#include "hms/tropical.hpp"

// Shared input fixtures used across the test suites.
namespace fixtures {

/// Pair of pants: the standard simplex, zero weights.
inline hms::WeightedPoints pants() {
    return {{{0, 0}, {1, 0}, {0, 1}}, {0, 0, 0}};
}

/// Unit square, weights (0,0,0,1): two cells, one bounded edge of length 1.
inline hms::WeightedPoints square() {
    return {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 0, 1}};
}

/// Unit square, weights (0,0,0,2): same combinatorics, edge of length 2.
inline hms::WeightedPoints square2() {
    return {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 0, 2}};
}

/// Hexagon with interior point: the interior component is a 6-cycle.
inline hms::WeightedPoints hexagon() {
    return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
            {0, 1, 1, 1, 1, 1, 1}};
}

/// Triangle with interior point: bounded 3-cycle with asymmetric wall
/// degrees (-3, 1) on each inner edge.
inline hms::WeightedPoints triangle_center() {
    return {{{0, 0}, {1, 0}, {0, 1}, {-1, -1}}, {0, 1, 1, 1}};
}

inline std::vector<hms::WeightedPoints> all() {
    return {pants(), square(), square2(), hexagon(), triangle_center()};
}

}  // namespace fixtures
