#pragma once

#include "flatcensus/tiling.hpp"

namespace flatcensus::fixtures {

// one-square torus, E0-W0, N0-S0
inline GluingTable t1() { return {1, {1, 0}, {1, 0}}; }

// two-square pillowcase: E0-W1, E1-W0 (translations), N0-N1, S0-S1 (half-turns)
inline GluingTable p2() { return {2, {3, 2, 1, 0}, {2, 3, 0, 1}}; }

// genus-2 one-cylinder: E_i-W_{i+1}; N0-S1, N1-S0, N2-S3, N3-S2
inline GluingTable g4() { return {4, {3, 6, 5, 0, 7, 2, 1, 4}, {3, 2, 1, 0, 7, 6, 5, 4}}; }

// two-square vertical torus: E0-W0, E1-W1, N0-S1, N1-S0
inline GluingTable v2() { return {2, {1, 0, 3, 2}, {3, 2, 1, 0}}; }

inline MarkedTiling t1m() { return {t1(), {0}}; }
inline MarkedTiling p2m() { return {p2(), {0, 1, 2, 3}}; }
inline MarkedTiling g4m() { return {g4(), {}}; }
inline MarkedTiling v2m() { return {v2(), {0}}; }

}  // namespace flatcensus::fixtures
