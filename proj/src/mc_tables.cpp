#include "svr/mesh.hpp"

namespace svr {

// Edge e connects corners kMcEdgeCorners[e], ids (x<<2)|(y<<1)|z.
const std::array<std::array<int, 2>, 12> kMcEdgeCorners = {{{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3}, {2, 6}, {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7}}};

// Bit e set when edge e crosses the isosurface for that corner config.
const std::array<uint16_t, 256> kMcEdgeTable = {
    0x000, 0x007, 0x019, 0x01e, 0x062, 0x065, 0x07b, 0x07c,
    0x0a8, 0x0af, 0x0b1, 0x0b6, 0x0ca, 0x0cd, 0x0d3, 0x0d4,
    0x304, 0x303, 0x31d, 0x31a, 0x366, 0x361, 0x37f, 0x378,
    0x3ac, 0x3ab, 0x3b5, 0x3b2, 0x3ce, 0x3c9, 0x3d7, 0x3d0,
    0x510, 0x517, 0x509, 0x50e, 0x572, 0x575, 0x56b, 0x56c,
    0x5b8, 0x5bf, 0x5a1, 0x5a6, 0x5da, 0x5dd, 0x5c3, 0x5c4,
    0x614, 0x613, 0x60d, 0x60a, 0x676, 0x671, 0x66f, 0x668,
    0x6bc, 0x6bb, 0x6a5, 0x6a2, 0x6de, 0x6d9, 0x6c7, 0x6c0,
    0xa40, 0xa47, 0xa59, 0xa5e, 0xa22, 0xa25, 0xa3b, 0xa3c,
    0xae8, 0xaef, 0xaf1, 0xaf6, 0xa8a, 0xa8d, 0xa93, 0xa94,
    0x944, 0x943, 0x95d, 0x95a, 0x926, 0x921, 0x93f, 0x938,
    0x9ec, 0x9eb, 0x9f5, 0x9f2, 0x98e, 0x989, 0x997, 0x990,
    0xf50, 0xf57, 0xf49, 0xf4e, 0xf32, 0xf35, 0xf2b, 0xf2c,
    0xff8, 0xfff, 0xfe1, 0xfe6, 0xf9a, 0xf9d, 0xf83, 0xf84,
    0xc54, 0xc53, 0xc4d, 0xc4a, 0xc36, 0xc31, 0xc2f, 0xc28,
    0xcfc, 0xcfb, 0xce5, 0xce2, 0xc9e, 0xc99, 0xc87, 0xc80,
    0xc80, 0xc87, 0xc99, 0xc9e, 0xce2, 0xce5, 0xcfb, 0xcfc,
    0xc28, 0xc2f, 0xc31, 0xc36, 0xc4a, 0xc4d, 0xc53, 0xc54,
    0xf84, 0xf83, 0xf9d, 0xf9a, 0xfe6, 0xfe1, 0xfff, 0xff8,
    0xf2c, 0xf2b, 0xf35, 0xf32, 0xf4e, 0xf49, 0xf57, 0xf50,
    0x990, 0x997, 0x989, 0x98e, 0x9f2, 0x9f5, 0x9eb, 0x9ec,
    0x938, 0x93f, 0x921, 0x926, 0x95a, 0x95d, 0x943, 0x944,
    0xa94, 0xa93, 0xa8d, 0xa8a, 0xaf6, 0xaf1, 0xaef, 0xae8,
    0xa3c, 0xa3b, 0xa25, 0xa22, 0xa5e, 0xa59, 0xa47, 0xa40,
    0x6c0, 0x6c7, 0x6d9, 0x6de, 0x6a2, 0x6a5, 0x6bb, 0x6bc,
    0x668, 0x66f, 0x671, 0x676, 0x60a, 0x60d, 0x613, 0x614,
    0x5c4, 0x5c3, 0x5dd, 0x5da, 0x5a6, 0x5a1, 0x5bf, 0x5b8,
    0x56c, 0x56b, 0x575, 0x572, 0x50e, 0x509, 0x517, 0x510,
    0x3d0, 0x3d7, 0x3c9, 0x3ce, 0x3b2, 0x3b5, 0x3ab, 0x3ac,
    0x378, 0x37f, 0x361, 0x366, 0x31a, 0x31d, 0x303, 0x304,
    0x0d4, 0x0d3, 0x0cd, 0x0ca, 0x0b6, 0x0b1, 0x0af, 0x0a8,
    0x07c, 0x07b, 0x065, 0x062, 0x01e, 0x019, 0x007, 0x000,
};

// Edge-id triangle fans per config, -1 terminated.
const std::array<std::array<int8_t, 16>, 256> kMcTriTable = {{
    {{-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 2, 1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 3, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 2, 1, 3, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 6, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 5, 0, 2, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 3, 4, 0, 5, 3, 0, 6, 5, 0, 1, 6, -1, -1, -1, -1}},
    {{2, 3, 4, 2, 5, 3, 2, 6, 5, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 5, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 7, 3, 0, 5, 7, 0, 1, 5, 0, 2, 1, -1, -1, -1, -1}},
    {{0, 7, 4, 0, 5, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 2, 1, 7, 4, 1, 5, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 7, 3, 1, 6, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 7, 3, 0, 6, 7, 0, 2, 6, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 7, 4, 0, 6, 7, 0, 1, 6, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 7, 4, 2, 6, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 8, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 1, 0, 8, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 2, 0, 8, 9, 0, 4, 8, 0, 3, 4, -1, -1, -1, -1}},
    {{1, 8, 9, 1, 4, 8, 1, 3, 4, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 6, 5, 1, 9, 6, 1, 8, 9, 1, 2, 8, -1, -1, -1, -1}},
    {{0, 6, 5, 0, 9, 6, 0, 8, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 3, 6, 5, 3, 9, 6, 3, 8, 9, 3, 4, 8, -1}},
    {{3, 6, 5, 3, 9, 6, 3, 8, 9, 3, 4, 8, -1, -1, -1, -1}},
    {{2, 8, 9, 3, 5, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 7, 3, 0, 5, 7, 0, 1, 5, 0, 9, 1, 0, 8, 9, -1}},
    {{0, 9, 2, 0, 8, 9, 0, 4, 8, 0, 7, 4, 0, 5, 7, -1}},
    {{1, 8, 9, 1, 4, 8, 1, 7, 4, 1, 5, 7, -1, -1, -1, -1}},
    {{1, 7, 3, 1, 6, 7, 1, 9, 6, 1, 8, 9, 1, 2, 8, -1}},
    {{0, 7, 3, 0, 6, 7, 0, 9, 6, 0, 8, 9, -1, -1, -1, -1}},
    {{0, 1, 2, 4, 6, 7, 4, 9, 6, 4, 8, 9, -1, -1, -1, -1}},
    {{4, 6, 7, 4, 9, 6, 4, 8, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{4, 10, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 2, 1, 0, 8, 2, 0, 10, 8, 0, 4, 10, -1, -1, -1, -1}},
    {{0, 10, 8, 0, 3, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 8, 2, 1, 10, 8, 1, 3, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 6, 5, 4, 10, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 5, 0, 2, 6, 0, 8, 2, 0, 10, 8, 0, 4, 10, -1}},
    {{0, 10, 8, 0, 3, 10, 0, 5, 3, 0, 6, 5, 0, 1, 6, -1}},
    {{2, 10, 8, 2, 3, 10, 2, 5, 3, 2, 6, 5, -1, -1, -1, -1}},
    {{3, 8, 4, 3, 10, 8, 3, 7, 10, 3, 5, 7, -1, -1, -1, -1}},
    {{0, 4, 3, 1, 8, 2, 1, 10, 8, 1, 7, 10, 1, 5, 7, -1}},
    {{0, 10, 8, 0, 7, 10, 0, 5, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 8, 2, 1, 10, 8, 1, 7, 10, 1, 5, 7, -1, -1, -1, -1}},
    {{1, 4, 3, 1, 8, 4, 1, 10, 8, 1, 7, 10, 1, 6, 7, -1}},
    {{0, 4, 3, 2, 10, 8, 2, 7, 10, 2, 6, 7, -1, -1, -1, -1}},
    {{0, 10, 8, 0, 7, 10, 0, 6, 7, 0, 1, 6, -1, -1, -1, -1}},
    {{2, 10, 8, 2, 7, 10, 2, 6, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 10, 9, 2, 4, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 1, 0, 10, 9, 0, 4, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 2, 0, 10, 9, 0, 3, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 10, 9, 1, 3, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 6, 5, 1, 9, 6, 1, 10, 9, 1, 4, 10, 1, 2, 4, -1}},
    {{0, 6, 5, 0, 9, 6, 0, 10, 9, 0, 4, 10, -1, -1, -1, -1}},
    {{0, 1, 2, 3, 6, 5, 3, 9, 6, 3, 10, 9, -1, -1, -1, -1}},
    {{3, 6, 5, 3, 9, 6, 3, 10, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 10, 9, 2, 7, 10, 2, 5, 7, 2, 3, 5, 2, 4, 3, -1}},
    {{0, 4, 3, 1, 10, 9, 1, 7, 10, 1, 5, 7, -1, -1, -1, -1}},
    {{0, 9, 2, 0, 10, 9, 0, 7, 10, 0, 5, 7, -1, -1, -1, -1}},
    {{1, 10, 9, 1, 7, 10, 1, 5, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 3, 1, 2, 4, 6, 10, 9, 6, 7, 10, -1, -1, -1, -1}},
    {{0, 4, 3, 6, 10, 9, 6, 7, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 6, 10, 9, 6, 7, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{6, 10, 9, 6, 7, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{6, 9, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 1, 0, 11, 6, 0, 9, 11, 0, 2, 9, -1, -1, -1, -1}},
    {{0, 3, 4, 6, 9, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 11, 6, 1, 9, 11, 1, 2, 9, 1, 4, 2, 1, 3, 4, -1}},
    {{1, 11, 5, 1, 9, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 11, 5, 0, 9, 11, 0, 2, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 3, 4, 0, 5, 3, 0, 11, 5, 0, 9, 11, 0, 1, 9, -1}},
    {{2, 3, 4, 2, 5, 3, 2, 11, 5, 2, 9, 11, -1, -1, -1, -1}},
    {{3, 11, 7, 3, 9, 11, 3, 6, 9, 3, 5, 6, -1, -1, -1, -1}},
    {{0, 7, 3, 0, 11, 7, 0, 9, 11, 0, 2, 9, 1, 5, 6, -1}},
    {{0, 7, 4, 0, 11, 7, 0, 9, 11, 0, 6, 9, 0, 5, 6, -1}},
    {{1, 5, 6, 2, 7, 4, 2, 11, 7, 2, 9, 11, -1, -1, -1, -1}},
    {{1, 7, 3, 1, 11, 7, 1, 9, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 7, 3, 0, 11, 7, 0, 9, 11, 0, 2, 9, -1, -1, -1, -1}},
    {{0, 7, 4, 0, 11, 7, 0, 9, 11, 0, 1, 9, -1, -1, -1, -1}},
    {{2, 7, 4, 2, 11, 7, 2, 9, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 11, 6, 2, 8, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 1, 0, 11, 6, 0, 8, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 2, 0, 11, 6, 0, 8, 11, 0, 4, 8, 0, 3, 4, -1}},
    {{1, 11, 6, 1, 8, 11, 1, 4, 8, 1, 3, 4, -1, -1, -1, -1}},
    {{1, 11, 5, 1, 8, 11, 1, 2, 8, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 11, 5, 0, 8, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 3, 11, 5, 3, 8, 11, 3, 4, 8, -1, -1, -1, -1}},
    {{3, 11, 5, 3, 8, 11, 3, 4, 8, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 5, 6, 2, 3, 5, 2, 7, 3, 2, 11, 7, 2, 8, 11, -1}},
    {{0, 7, 3, 0, 11, 7, 0, 8, 11, 1, 5, 6, -1, -1, -1, -1}},
    {{0, 6, 2, 0, 5, 6, 4, 11, 7, 4, 8, 11, -1, -1, -1, -1}},
    {{1, 5, 6, 4, 11, 7, 4, 8, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 7, 3, 1, 11, 7, 1, 8, 11, 1, 2, 8, -1, -1, -1, -1}},
    {{0, 7, 3, 0, 11, 7, 0, 8, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 4, 11, 7, 4, 8, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{4, 11, 7, 4, 8, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{4, 9, 8, 4, 6, 9, 4, 11, 6, 4, 10, 11, -1, -1, -1, -1}},
    {{0, 6, 1, 0, 11, 6, 0, 10, 11, 0, 4, 10, 2, 9, 8, -1}},
    {{0, 9, 8, 0, 6, 9, 0, 11, 6, 0, 10, 11, 0, 3, 10, -1}},
    {{1, 11, 6, 1, 10, 11, 1, 3, 10, 2, 9, 8, -1, -1, -1, -1}},
    {{1, 11, 5, 1, 10, 11, 1, 4, 10, 1, 8, 4, 1, 9, 8, -1}},
    {{0, 11, 5, 0, 10, 11, 0, 4, 10, 2, 9, 8, -1, -1, -1, -1}},
    {{0, 9, 8, 0, 1, 9, 3, 11, 5, 3, 10, 11, -1, -1, -1, -1}},
    {{2, 9, 8, 3, 11, 5, 3, 10, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 8, 4, 3, 9, 8, 3, 6, 9, 3, 5, 6, 7, 10, 11, -1}},
    {{0, 4, 3, 1, 5, 6, 2, 9, 8, 7, 10, 11, -1, -1, -1, -1}},
    {{0, 9, 8, 0, 6, 9, 0, 5, 6, 7, 10, 11, -1, -1, -1, -1}},
    {{1, 5, 6, 2, 9, 8, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 3, 1, 8, 4, 1, 9, 8, 7, 10, 11, -1, -1, -1, -1}},
    {{0, 4, 3, 2, 9, 8, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 8, 0, 1, 9, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 9, 8, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 11, 6, 2, 10, 11, 2, 4, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 1, 0, 11, 6, 0, 10, 11, 0, 4, 10, -1, -1, -1, -1}},
    {{0, 6, 2, 0, 11, 6, 0, 10, 11, 0, 3, 10, -1, -1, -1, -1}},
    {{1, 11, 6, 1, 10, 11, 1, 3, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 11, 5, 1, 10, 11, 1, 4, 10, 1, 2, 4, -1, -1, -1, -1}},
    {{0, 11, 5, 0, 10, 11, 0, 4, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 3, 11, 5, 3, 10, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 11, 5, 3, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 5, 6, 2, 3, 5, 2, 4, 3, 7, 10, 11, -1, -1, -1, -1}},
    {{0, 4, 3, 1, 5, 6, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 2, 0, 5, 6, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 5, 6, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 3, 1, 2, 4, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 4, 3, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 7, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{7, 10, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{7, 11, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 2, 1, 7, 11, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 10, 4, 0, 11, 10, 0, 7, 11, 0, 3, 7, -1, -1, -1, -1}},
    {{1, 4, 2, 1, 10, 4, 1, 11, 10, 1, 7, 11, 1, 3, 7, -1}},
    {{1, 7, 5, 1, 10, 7, 1, 11, 10, 1, 6, 11, -1, -1, -1, -1}},
    {{0, 7, 5, 0, 10, 7, 0, 11, 10, 0, 6, 11, 0, 2, 6, -1}},
    {{0, 10, 4, 0, 11, 10, 0, 6, 11, 0, 1, 6, 3, 7, 5, -1}},
    {{2, 10, 4, 2, 11, 10, 2, 6, 11, 3, 7, 5, -1, -1, -1, -1}},
    {{3, 11, 10, 3, 5, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 10, 3, 0, 11, 10, 0, 5, 11, 0, 1, 5, 0, 2, 1, -1}},
    {{0, 10, 4, 0, 11, 10, 0, 5, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 2, 1, 10, 4, 1, 11, 10, 1, 5, 11, -1, -1, -1, -1}},
    {{1, 10, 3, 1, 11, 10, 1, 6, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 10, 3, 0, 11, 10, 0, 6, 11, 0, 2, 6, -1, -1, -1, -1}},
    {{0, 10, 4, 0, 11, 10, 0, 6, 11, 0, 1, 6, -1, -1, -1, -1}},
    {{2, 10, 4, 2, 11, 10, 2, 6, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 11, 9, 2, 7, 11, 2, 10, 7, 2, 8, 10, -1, -1, -1, -1}},
    {{0, 9, 1, 0, 11, 9, 0, 7, 11, 0, 10, 7, 0, 8, 10, -1}},
    {{0, 9, 2, 0, 11, 9, 0, 7, 11, 0, 3, 7, 4, 8, 10, -1}},
    {{1, 11, 9, 1, 7, 11, 1, 3, 7, 4, 8, 10, -1, -1, -1, -1}},
    {{1, 7, 5, 1, 10, 7, 1, 8, 10, 1, 2, 8, 6, 11, 9, -1}},
    {{0, 7, 5, 0, 10, 7, 0, 8, 10, 6, 11, 9, -1, -1, -1, -1}},
    {{0, 1, 2, 3, 7, 5, 4, 8, 10, 6, 11, 9, -1, -1, -1, -1}},
    {{3, 7, 5, 4, 8, 10, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 11, 9, 2, 5, 11, 2, 3, 5, 2, 10, 3, 2, 8, 10, -1}},
    {{0, 10, 3, 0, 8, 10, 1, 11, 9, 1, 5, 11, -1, -1, -1, -1}},
    {{0, 9, 2, 0, 11, 9, 0, 5, 11, 4, 8, 10, -1, -1, -1, -1}},
    {{1, 11, 9, 1, 5, 11, 4, 8, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 10, 3, 1, 8, 10, 1, 2, 8, 6, 11, 9, -1, -1, -1, -1}},
    {{0, 10, 3, 0, 8, 10, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 4, 8, 10, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{4, 8, 10, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{4, 11, 8, 4, 7, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 2, 1, 0, 8, 2, 0, 11, 8, 0, 7, 11, 0, 4, 7, -1}},
    {{0, 11, 8, 0, 7, 11, 0, 3, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 8, 2, 1, 11, 8, 1, 7, 11, 1, 3, 7, -1, -1, -1, -1}},
    {{1, 7, 5, 1, 4, 7, 1, 8, 4, 1, 11, 8, 1, 6, 11, -1}},
    {{0, 7, 5, 0, 4, 7, 2, 11, 8, 2, 6, 11, -1, -1, -1, -1}},
    {{0, 11, 8, 0, 6, 11, 0, 1, 6, 3, 7, 5, -1, -1, -1, -1}},
    {{2, 11, 8, 2, 6, 11, 3, 7, 5, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 8, 4, 3, 11, 8, 3, 5, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 4, 3, 1, 8, 2, 1, 11, 8, 1, 5, 11, -1, -1, -1, -1}},
    {{0, 11, 8, 0, 5, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 8, 2, 1, 11, 8, 1, 5, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 3, 1, 8, 4, 1, 11, 8, 1, 6, 11, -1, -1, -1, -1}},
    {{0, 4, 3, 2, 11, 8, 2, 6, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 11, 8, 0, 6, 11, 0, 1, 6, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 11, 8, 2, 6, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 11, 9, 2, 7, 11, 2, 4, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 1, 0, 11, 9, 0, 7, 11, 0, 4, 7, -1, -1, -1, -1}},
    {{0, 9, 2, 0, 11, 9, 0, 7, 11, 0, 3, 7, -1, -1, -1, -1}},
    {{1, 11, 9, 1, 7, 11, 1, 3, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 7, 5, 1, 4, 7, 1, 2, 4, 6, 11, 9, -1, -1, -1, -1}},
    {{0, 7, 5, 0, 4, 7, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 3, 7, 5, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 7, 5, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 11, 9, 2, 5, 11, 2, 3, 5, 2, 4, 3, -1, -1, -1, -1}},
    {{0, 4, 3, 1, 11, 9, 1, 5, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 2, 0, 11, 9, 0, 5, 11, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 11, 9, 1, 5, 11, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 3, 1, 2, 4, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 4, 3, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 6, 11, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{6, 11, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{6, 10, 7, 6, 9, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 1, 0, 7, 6, 0, 10, 7, 0, 9, 10, 0, 2, 9, -1}},
    {{0, 10, 4, 0, 9, 10, 0, 6, 9, 0, 7, 6, 0, 3, 7, -1}},
    {{1, 7, 6, 1, 3, 7, 2, 10, 4, 2, 9, 10, -1, -1, -1, -1}},
    {{1, 7, 5, 1, 10, 7, 1, 9, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 7, 5, 0, 10, 7, 0, 9, 10, 0, 2, 9, -1, -1, -1, -1}},
    {{0, 10, 4, 0, 9, 10, 0, 1, 9, 3, 7, 5, -1, -1, -1, -1}},
    {{2, 10, 4, 2, 9, 10, 3, 7, 5, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 9, 10, 3, 6, 9, 3, 5, 6, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 10, 3, 0, 9, 10, 0, 2, 9, 1, 5, 6, -1, -1, -1, -1}},
    {{0, 10, 4, 0, 9, 10, 0, 6, 9, 0, 5, 6, -1, -1, -1, -1}},
    {{1, 5, 6, 2, 10, 4, 2, 9, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 10, 3, 1, 9, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 10, 3, 0, 9, 10, 0, 2, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 10, 4, 0, 9, 10, 0, 1, 9, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 10, 4, 2, 9, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 7, 6, 2, 10, 7, 2, 8, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 1, 0, 7, 6, 0, 10, 7, 0, 8, 10, -1, -1, -1, -1}},
    {{0, 6, 2, 0, 7, 6, 0, 3, 7, 4, 8, 10, -1, -1, -1, -1}},
    {{1, 7, 6, 1, 3, 7, 4, 8, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 7, 5, 1, 10, 7, 1, 8, 10, 1, 2, 8, -1, -1, -1, -1}},
    {{0, 7, 5, 0, 10, 7, 0, 8, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 3, 7, 5, 4, 8, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 7, 5, 4, 8, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 5, 6, 2, 3, 5, 2, 10, 3, 2, 8, 10, -1, -1, -1, -1}},
    {{0, 10, 3, 0, 8, 10, 1, 5, 6, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 2, 0, 5, 6, 4, 8, 10, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 5, 6, 4, 8, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 10, 3, 1, 8, 10, 1, 2, 8, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 10, 3, 0, 8, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 4, 8, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{4, 8, 10, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{4, 9, 8, 4, 6, 9, 4, 7, 6, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 1, 0, 7, 6, 0, 4, 7, 2, 9, 8, -1, -1, -1, -1}},
    {{0, 9, 8, 0, 6, 9, 0, 7, 6, 0, 3, 7, -1, -1, -1, -1}},
    {{1, 7, 6, 1, 3, 7, 2, 9, 8, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 7, 5, 1, 4, 7, 1, 8, 4, 1, 9, 8, -1, -1, -1, -1}},
    {{0, 7, 5, 0, 4, 7, 2, 9, 8, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 8, 0, 1, 9, 3, 7, 5, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 9, 8, 3, 7, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 8, 4, 3, 9, 8, 3, 6, 9, 3, 5, 6, -1, -1, -1, -1}},
    {{0, 4, 3, 1, 5, 6, 2, 9, 8, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 8, 0, 6, 9, 0, 5, 6, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 5, 6, 2, 9, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 3, 1, 8, 4, 1, 9, 8, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 4, 3, 2, 9, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 9, 8, 0, 1, 9, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 9, 8, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 7, 6, 2, 4, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 1, 0, 7, 6, 0, 4, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 2, 0, 7, 6, 0, 3, 7, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 7, 6, 1, 3, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 7, 5, 1, 4, 7, 1, 2, 4, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 7, 5, 0, 4, 7, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, 3, 7, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{3, 7, 5, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{2, 5, 6, 2, 3, 5, 2, 4, 3, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 4, 3, 1, 5, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 6, 2, 0, 5, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 5, 6, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{1, 4, 3, 1, 2, 4, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 4, 3, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{0, 1, 2, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
    {{-1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}},
}};

}  // namespace svr
