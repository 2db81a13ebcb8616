#!/usr/bin/env python3
"""Generates the 256-entry marching-cubes lookup tables.

Corner ids are (x<<2)|(y<<1)|z on the unit cube. Edges are the 12 sorted
corner pairs. For every corner-classification config (bit set = value below
iso), iso-contour segments are traced on each face by pairing each
inside->outside crossing with the next crossing along the face cycle; chaining
the segments yields closed polygons, which are fan-triangulated. The face
cycles are counter-clockwise seen from outside, so the pairing is identical
from both sides of a shared face and adjacent cells always agree: the
resulting meshes are watertight, including on ambiguous faces. Triangles are
wound so normals point toward the above-iso side.

Writes src/mc_tables.cpp.
"""

EDGES = [(0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3),
         (2, 6), (3, 7), (4, 5), (4, 6), (5, 7), (6, 7)]
EDGE_ID = {e: i for i, e in enumerate(EDGES)}

# Corner cycles per face, counter-clockwise viewed from outside the cube.
FACES = [
    (4, 6, 7, 5),  # x = 1
    (0, 1, 3, 2),  # x = 0
    (2, 3, 7, 6),  # y = 1
    (0, 4, 5, 1),  # y = 0
    (1, 5, 7, 3),  # z = 1
    (0, 2, 6, 4),  # z = 0
]


def edge_of(a, b):
    return EDGE_ID[(min(a, b), max(a, b))]


def triangulate(config):
    inside = [(config >> c) & 1 for c in range(8)]
    # Directed contour segments: exit edge -> next crossing along the cycle.
    succ = {}
    for face in FACES:
        crossings = []  # (slot, edge id, is_exit)
        for s in range(4):
            a, b = face[s], face[(s + 1) % 4]
            if inside[a] != inside[b]:
                crossings.append((edge_of(a, b), inside[a] == 1))
        for idx, (e, is_exit) in enumerate(crossings):
            if is_exit:
                nxt = crossings[(idx + 1) % len(crossings)][0]
                assert e not in succ
                succ[e] = nxt
    tris = []
    seen = set()
    for start in sorted(succ):
        if start in seen:
            continue
        loop = [start]
        seen.add(start)
        cur = succ[start]
        while cur != start:
            loop.append(cur)
            seen.add(cur)
            cur = succ[cur]
        # Fan; reversed so normals point toward the above-iso region.
        for i in range(1, len(loop) - 1):
            tris.extend([loop[0], loop[i + 1], loop[i]])
    return tris


def main():
    rows = [triangulate(c) for c in range(256)]
    edge_masks = []
    for c in range(256):
        mask = 0
        for a, b in EDGES:
            if ((c >> a) & 1) != ((c >> b) & 1):
                mask |= 1 << EDGES.index((a, b))
        edge_masks.append(mask)
        assert set(rows[c]) == {i for i in range(12) if mask & (1 << i)}
        assert len(rows[c]) <= 15

    out = []
    out.append('#include "svr/mesh.hpp"\n')
    out.append("namespace svr {\n")
    out.append("// Edge e connects corners kMcEdgeCorners[e], ids (x<<2)|(y<<1)|z.")
    pairs = ", ".join("{%d, %d}" % e for e in EDGES)
    out.append("const std::array<std::array<int, 2>, 12> kMcEdgeCorners = {{%s}};\n" % pairs)
    out.append("// Bit e set when edge e crosses the isosurface for that corner config.")
    out.append("const std::array<uint16_t, 256> kMcEdgeTable = {")
    for i in range(0, 256, 8):
        out.append("    " + ", ".join("0x%03x" % m for m in edge_masks[i:i + 8]) + ",")
    out.append("};\n")
    out.append("// Edge-id triangle fans per config, -1 terminated.")
    out.append("const std::array<std::array<int8_t, 16>, 256> kMcTriTable = {{")
    for c in range(256):
        row = rows[c] + [-1] * (16 - len(rows[c]))
        out.append("    {{%s}}," % ", ".join("%d" % v for v in row))
    out.append("}};\n")
    out.append("}  // namespace svr")
    with open("src/mc_tables.cpp", "w") as f:
        f.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
