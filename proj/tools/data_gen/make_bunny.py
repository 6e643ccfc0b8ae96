"""Decimate the Stanford bunny to a closed, genus-0 triangle mesh with <= 100 faces.

Requires pymeshlab (ships the reference bunny in its test data).
Usage: python3 make_bunny.py OUT.obj [target_faces]
"""
import os
import sys

import numpy as np
import pymeshlab


def main():
    out = sys.argv[1]
    target = int(sys.argv[2]) if len(sys.argv) > 2 else 96
    src = os.path.join(os.path.dirname(pymeshlab.__file__), "tests", "sample_meshes", "bunny.obj")
    ms = pymeshlab.MeshSet()
    ms.load_new_mesh(src)
    ms.meshing_remove_duplicate_vertices()
    ms.meshing_remove_unreferenced_vertices()
    ms.meshing_repair_non_manifold_edges()
    ms.meshing_close_holes(maxholesize=2000)
    ms.meshing_decimation_quadric_edge_collapse(
        targetfacenum=target, preservetopology=True, preservenormal=True, qualitythr=0.5,
        optimalplacement=True, planarquadric=True)
    m = ms.current_mesh()
    v = m.vertex_matrix()
    f = m.face_matrix()
    verts = len(v)
    edges = set()
    for tri in f:
        for i in range(3):
            a, b = int(tri[i]), int(tri[(i + 1) % 3])
            edges.add((min(a, b), max(a, b)))
    chi = verts - len(edges) + len(f)
    print(f"V={verts} E={len(edges)} F={len(f)} chi={chi}", file=sys.stderr)
    if chi != 2 or len(f) > 100:
        sys.exit("decimated bunny is not a closed genus-0 mesh within the face budget")
    # unit-ish scale: bounding box diagonal 1, centered
    lo, hi = v.min(axis=0), v.max(axis=0)
    v = (v - (lo + hi) / 2) / np.linalg.norm(hi - lo)
    with open(out, "w") as fh:
        fh.write("# Stanford bunny, hole-filled and quadric-decimated\n")
        for p in v:
            fh.write(f"v {p[0]:.9f} {p[1]:.9f} {p[2]:.9f}\n")
        for tri in f:
            fh.write(f"f {tri[0] + 1} {tri[1] + 1} {tri[2] + 1}\n")


if __name__ == "__main__":
    main()
