"""Generate the vendored polyhedron corpus in the Netlib polyhedra flat-file layout.

Every solid is built as the convex hull of an explicit point set (unit edge
length for the regular-faced families), coplanar hull triangles are merged
into polygon faces, and the result is written with `:number`, `:name`,
`:vertices` and `:solid` sections.

Usage: python3 make_corpus.py OUT_DIR
"""
import itertools
import math
import os
import sys

import numpy as np
from scipy.spatial import ConvexHull

PHI = (1 + math.sqrt(5)) / 2


# ---------------------------------------------------------------- hull utils

def hull_polyhedron(points, tol=1e-7):
    pts = np.asarray(points, dtype=float)
    # drop duplicates
    uniq = []
    for p in pts:
        if not any(np.linalg.norm(p - q) < 1e-9 for q in uniq):
            uniq.append(p)
    pts = np.array(uniq)
    hull = ConvexHull(pts)
    groups = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        for g in groups:
            if np.linalg.norm(g["eq"][:3] - eq[:3]) < tol and abs(g["eq"][3] - eq[3]) < tol:
                g["verts"].update(simplex.tolist())
                break
        else:
            groups.append({"eq": eq, "verts": set(simplex.tolist())})
    used = sorted({v for g in groups for v in g["verts"]})
    remap = {old: new for new, old in enumerate(used)}
    verts = pts[used]
    faces = []
    for g in groups:
        n = g["eq"][:3]
        ids = sorted(g["verts"])
        c = pts[ids].mean(axis=0)
        u = pts[ids[0]] - c
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        ang = [math.atan2(np.dot(pts[i] - c, w), np.dot(pts[i] - c, u)) for i in ids]
        ordered = [i for _, i in sorted(zip(ang, ids))]
        faces.append([remap[i] for i in ordered])
    return verts, faces


def edges_of(faces):
    es = set()
    for f in faces:
        for i in range(len(f)):
            a, b = f[i], f[(i + 1) % len(f)]
            es.add((min(a, b), max(a, b)))
    return es


def edge_lengths(verts, faces):
    return [np.linalg.norm(verts[a] - verts[b]) for a, b in edges_of(faces)]


def normalize_edge(points):
    """Scale a point set so its hull's shortest edge is 1."""
    v, f = hull_polyhedron(points)
    s = min(edge_lengths(v, f))
    return np.asarray(points, dtype=float) / s


def is_regular_faced(points, tol=1e-6):
    v, f = hull_polyhedron(points)
    ls = edge_lengths(v, f)
    return max(ls) - min(ls) < tol


# ------------------------------------------------------------ point builders

def ring(n, z=0.0, phase=0.0, edge=1.0):
    r = edge / (2 * math.sin(math.pi / n))
    return [np.array([r * math.cos(phase + 2 * math.pi * k / n),
                      r * math.sin(phase + 2 * math.pi * k / n), z]) for k in range(n)]


def circumradius(n, edge=1.0):
    return edge / (2 * math.sin(math.pi / n))


def pyramid_height(n):
    return math.sqrt(1 - circumradius(n) ** 2)


def antiprism_height(n):
    r = circumradius(n)
    chord = 2 * r * math.sin(math.pi / (2 * n))
    return math.sqrt(1 - chord ** 2)


def cupola_parts(n, z0=0.0, up=1.0, phase=0.0):
    """Bottom 2n-gon at z0 (vertices at phase + (2j+1)pi/2n) and top n-gon."""
    bottom = ring(2 * n, z0, phase + math.pi / (2 * n))
    r1 = circumradius(n)
    top0 = np.array([r1 * math.cos(phase), r1 * math.sin(phase), 0.0])
    b0 = bottom[0]
    d = math.hypot(top0[0] - b0[0], top0[1] - b0[1])
    h = math.sqrt(1 - d ** 2)
    top = ring(n, z0 + up * h, phase)
    return bottom, top, h


def sign_perms(v):
    out = set()
    for signs in itertools.product([1, -1], repeat=3):
        out.add(tuple(s * x for s, x in zip(signs, v)))
    return [np.array(p) for p in out]


def all_perms(v):
    out = set()
    for p in itertools.permutations(v):
        for q in sign_perms(p):
            out.add(tuple(np.round(q, 12)))
    return [np.array(p) for p in out]


def even_perms(v):
    out = set()
    a, b, c = v
    for p in [(a, b, c), (b, c, a), (c, a, b)]:
        for q in sign_perms(p):
            out.add(tuple(np.round(q, 12)))
    return [np.array(p) for p in out]


def rotation_to_z(axis):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    z = np.array([0.0, 0.0, 1.0])
    v = np.cross(axis, z)
    s = np.linalg.norm(v)
    c = np.dot(axis, z)
    if s < 1e-12:
        return np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    vx = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + vx + vx @ vx * ((1 - c) / s ** 2)


def rotate_about(points, axis, angle, center=None):
    axis = np.asarray(axis, dtype=float) / np.linalg.norm(axis)
    center = np.zeros(3) if center is None else center
    out = []
    for p in points:
        q = p - center
        q = (q * math.cos(angle) + np.cross(axis, q) * math.sin(angle)
             + axis * np.dot(axis, q) * (1 - math.cos(angle)))
        out.append(q + center)
    return out


# ---------------------------------------------------------- uniform solids

def tetrahedron():
    return normalize_edge([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])


def cube():
    return normalize_edge(sign_perms((1, 1, 1)))


def octahedron():
    return normalize_edge(all_perms((1, 0, 0)))


def icosahedron():
    return normalize_edge(even_perms((0, 1, PHI)))


def dodecahedron():
    return normalize_edge(sign_perms((1, 1, 1)) + even_perms((0, 1 / PHI, PHI)))


def truncated_tetrahedron():
    pts = [p for p in all_perms((3, 1, 1)) if sum(1 for x in p if x < 0) % 2 == 0]
    return normalize_edge(pts)


def cuboctahedron():
    return normalize_edge(all_perms((1, 1, 0)))


def truncated_cube():
    return normalize_edge(all_perms((math.sqrt(2) - 1, 1, 1)))


def truncated_octahedron():
    return normalize_edge(all_perms((0, 1, 2)))


def rhombicuboctahedron():
    return normalize_edge(all_perms((1, 1, 1 + math.sqrt(2))))


def truncated_cuboctahedron():
    return normalize_edge(all_perms((1, 1 + math.sqrt(2), 1 + 2 * math.sqrt(2))))


def snub_cube():
    t = 1.8392867552141612  # tribonacci constant
    base = (1, 1 / t, t)
    pts = []
    for perm_sign, perm in [(1, p) for p in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]] + \
                           [(-1, p) for p in [(1, 0, 2), (0, 2, 1), (2, 1, 0)]]:
        for signs in itertools.product([1, -1], repeat=3):
            plus = sum(1 for s in signs if s > 0)
            if (perm_sign > 0 and plus % 2 == 0) or (perm_sign < 0 and plus % 2 == 1):
                pts.append(np.array([signs[i] * base[perm[i]] for i in range(3)]))
    return normalize_edge(pts)


def icosidodecahedron():
    return normalize_edge(all_perms((0, 0, PHI)) + even_perms((0.5, PHI / 2, PHI * PHI / 2)))


def truncated_dodecahedron():
    return normalize_edge(even_perms((0, 1 / PHI, 2 + PHI)) + even_perms((1 / PHI, PHI, 2 * PHI))
                          + even_perms((PHI, 2, PHI + 1)))


def truncated_icosahedron():
    return normalize_edge(even_perms((0, 1, 3 * PHI)) + even_perms((1, 2 + PHI, 2 * PHI))
                          + even_perms((PHI, 2, PHI ** 3)))


def rhombicosidodecahedron():
    return normalize_edge(even_perms((1, 1, PHI ** 3)) + even_perms((PHI ** 2, PHI, 2 * PHI))
                          + even_perms((2 + PHI, 0, PHI ** 2)))


def truncated_icosidodecahedron():
    return normalize_edge(even_perms((1 / PHI, 1 / PHI, 3 + PHI)) + even_perms((2 / PHI, PHI, 1 + 2 * PHI))
                          + even_perms((1 / PHI, PHI ** 2, -1 + 3 * PHI))
                          + even_perms((2 * PHI - 1, 2, 2 + PHI)) + even_perms((PHI, 3, 2 * PHI)))


def snub_dodecahedron():
    # xi is the real root of xi^3 - 2 xi = phi
    xi = 1.7155614996973678
    for _ in range(50):
        xi -= (xi ** 3 - 2 * xi - PHI) / (3 * xi ** 2 - 2)
    a = xi - 1 / xi
    b = xi * PHI + PHI ** 2 + PHI / xi
    gens = [
        (2 * a, 2, 2 * b),
        (a + b / PHI + PHI, -a * PHI + b + 1 / PHI, a / PHI + b * PHI - 1),
        (a + b / PHI - PHI, a * PHI - b + 1 / PHI, a / PHI + b * PHI + 1),
        (-a / PHI + b * PHI + 1, -a + b / PHI - PHI, a * PHI + b - 1 / PHI),
        (-a / PHI + b * PHI - 1, a - b / PHI - PHI, a * PHI + b + 1 / PHI),
    ]
    pts = []
    for g in gens:
        for p in [(g[0], g[1], g[2]), (g[1], g[2], g[0]), (g[2], g[0], g[1])]:
            for signs in itertools.product([1, -1], repeat=3):
                if sum(1 for s in signs if s > 0) % 2 == 0:
                    pts.append(np.array([s * x for s, x in zip(signs, p)]))
    return normalize_edge(pts)


def dual_of(points):
    """Polar dual about the centroid, scaled so its shortest edge is 1."""
    v, f = hull_polyhedron(points)
    c = v.mean(axis=0)
    duals = []
    for face in f:
        p = v[face] - c
        n = np.cross(p[1] - p[0], p[2] - p[0])
        n /= np.linalg.norm(n)
        d = np.dot(n, p[0])
        duals.append(n / d)
    return normalize_edge(duals)


# ------------------------------------------------------------ Johnson parts

def prism(n):
    return ring(n, 0) + ring(n, -1)


def antiprism(n):
    return ring(n, 0) + ring(n, -antiprism_height(n), math.pi / n)


def pyramid(n):
    return ring(n, 0) + [np.array([0, 0, pyramid_height(n)])]


def elongated_pyramid(n):
    return prism(n) + [np.array([0, 0, pyramid_height(n)])]


def gyroelongated_pyramid(n):
    return antiprism(n) + [np.array([0, 0, pyramid_height(n)])]


def dipyramid(n):
    h = pyramid_height(n)
    return ring(n, 0) + [np.array([0, 0, h]), np.array([0, 0, -h])]


def elongated_dipyramid(n):
    h = pyramid_height(n)
    return prism(n) + [np.array([0, 0, h]), np.array([0, 0, -1 - h])]


def gyroelongated_dipyramid(n):
    h = pyramid_height(n)
    ha = antiprism_height(n)
    return antiprism(n) + [np.array([0, 0, h]), np.array([0, 0, -ha - h])]


def cupola(n):
    bottom, top, _ = cupola_parts(n)
    return bottom + top


def rotunda_cap(z0=0.0, up=1.0, phase=0.0):
    """Pentagonal rotunda above (up=1) or below (up=-1) a unit decagon at z0."""
    pts = icosidodecahedron()
    # 5-fold axis through a pentagon centre
    v, f = hull_polyhedron(pts)
    pent = next(face for face in f if len(face) == 5)
    axis = v[pent].mean(axis=0)
    rot = rotation_to_z(axis)
    q = [rot @ p for p in pts]
    cap = [p for p in q if p[2] > -1e-9]
    # align decagon vertex phase with ring(10, phase=...) used by cupolae
    dec = [p for p in cap if abs(p[2]) < 1e-9]
    ang = math.atan2(dec[0][1], dec[0][0])
    target = phase + math.pi / 10
    rz = rotate_about(cap, (0, 0, 1), target - ang)
    out = []
    for p in rz:
        out.append(np.array([p[0], p[1], z0 + up * p[2]]))
    return out


def bicupola(n, gyro):
    bottom, top, h = cupola_parts(n)
    phase = math.pi / n if gyro else 0.0
    low = ring(n, -h, phase)
    return bottom + top + low


def elongated_bicupola(n, gyro):
    bottom, top, h = cupola_parts(n)
    phase = math.pi / n if gyro else 0.0
    low = ring(n, -1 - h, phase)
    return bottom + top + ring(2 * n, -1, math.pi / (2 * n)) + low


def gyroelongated_bicupola(n):
    bottom, top, h = cupola_parts(n)
    ha = antiprism_height(2 * n)
    shift = math.pi / (2 * n)
    b2, t2, _ = cupola_parts(n, z0=-ha, up=-1.0, phase=shift)
    return bottom + top + b2 + t2


def cupola_rotunda(gyro, elongate=0):
    bottom, top, h = cupola_parts(5)
    z = {0: 0.0, 1: -1.0, 2: -antiprism_height(10)}[elongate]
    phase = 0.0
    if elongate == 2:
        phase = math.pi / 10
    ph = (math.pi / 5 if gyro else 0.0) + phase
    rot = rotunda_cap(z, -1.0, ph)
    mid = []
    if elongate:
        mid = ring(10, z, ph + math.pi / 10)
    return bottom + top + mid + rot


def birotunda(elongate=0, gyro=False):
    top = rotunda_cap(0.0, 1.0, 0.0)
    z = {0: 0.0, 1: -1.0, 2: -antiprism_height(10)}[elongate]
    ph = (math.pi / 5 if gyro else 0.0) + (math.pi / 10 if elongate == 2 else 0.0)
    bot = rotunda_cap(z, -1.0, ph)
    return top + bot


def gyrobifastigium():
    h = math.sqrt(3) / 2
    return sign_perms((0.5, 0.5, 0)) + [np.array([0.5, 0, h]), np.array([-0.5, 0, h]),
                                         np.array([0, 0.5, -h]), np.array([0, -0.5, -h])]


def faces_of(points):
    return hull_polyhedron(points)


def face_frame(v, face):
    p = v[face]
    c = p.mean(axis=0)
    n = np.cross(p[1] - p[0], p[2] - p[0])
    n /= np.linalg.norm(n)
    if np.dot(n, c - v.mean(axis=0)) < 0:
        n = -n
    return c, n


def augment_pyramid(points, face_idx):
    v, f = hull_polyhedron(points)
    face = f[face_idx]
    c, n = face_frame(v, face)
    r = np.linalg.norm(v[face[0]] - c)
    h = math.sqrt(1 - r ** 2)
    return list(points) + [c + n * h]


def augment_cupola(points, face_idx):
    """Attach an n-cupola on a regular 2n-gon face; pick the regular-faced phase."""
    v, f = hull_polyhedron(points)
    face = f[face_idx]
    c, n = face_frame(v, face)
    m = len(face) // 2
    rc = circumradius(m)
    r2 = circumradius(2 * m)
    base = v[face]
    d_xy = None
    for choice in (0, 1):
        tops = []
        for k in range(m):
            a = base[(2 * k + choice) % len(face)]
            b = base[(2 * k + choice + 1) % len(face)]
            mid = (a + b) / 2 - c
            mid /= np.linalg.norm(mid)
            tops.append(mid * rc)
        d_xy = np.linalg.norm(tops[0] - (base[choice] - c))
        h = math.sqrt(max(0.0, 1 - d_xy ** 2))
        cand = list(points) + [c + t + n * h for t in tops]
        vv, ff = hull_polyhedron(cand)
        expected = len(f) - 1 + 2 * m + 1
        if is_regular_faced(cand) and len(ff) == expected:
            return cand
    raise RuntimeError("no regular cupola augmentation")


def faces_by_size(points, size):
    v, f = hull_polyhedron(points)
    return v, f, [i for i, face in enumerate(f) if len(face) == size]


def face_normals(v, f, ids):
    return {i: face_frame(v, f[i])[1] for i in ids}


def pick_faces(points, size, relation):
    """Choose face ids of a given size: relation in {'para','meta','tri','single','bi-meta-pair'}."""
    v, f, ids = faces_by_size(points, size)
    normals = face_normals(v, f, ids)
    first = ids[0]
    if relation == "single":
        return [first]
    if relation == "para":
        other = min(ids, key=lambda j: np.dot(normals[first], normals[j]))
        return [first, other]
    # meta: the non-adjacent, non-opposite angle class closest to -1/3 (dodeca/icosa: -1/sqrt5)
    dots = sorted({round(float(np.dot(normals[first], normals[j])), 6) for j in ids if j != first})
    meta_dot = dots[1]  # dots[0] is opposite
    metas = [j for j in ids if j != first and abs(np.dot(normals[first], normals[j]) - meta_dot) < 1e-5]
    if relation == "meta":
        return [first, metas[0]]
    if relation == "tri":
        for a, b in itertools.combinations(metas, 2):
            if abs(np.dot(normals[a], normals[b]) - meta_dot) < 1e-5:
                return [first, a, b]
    raise RuntimeError(relation)


def augment_many(points, size, relation, how):
    ids = pick_faces(points, size, relation)
    v, f = hull_polyhedron(points)
    targets = [face_frame(v, f[i])[0] for i in ids]
    pts = list(points)
    for centre in targets:
        vv, ff = hull_polyhedron(pts)
        idx = min(range(len(ff)), key=lambda i: np.linalg.norm(face_frame(vv, ff[i])[0] - centre)
                  if len(ff[i]) == size else 1e9)
        pts = how(pts, idx)
    return pts


def prism_side_faces(n, which):
    pts = prism(n)
    v, f = hull_polyhedron(pts)
    squares = [i for i, face in enumerate(f) if len(face) == 4]
    # order squares by angle of their centre
    ang = {i: math.atan2(*face_frame(v, f[i])[0][[1, 0]]) for i in squares}
    squares.sort(key=lambda i: ang[i])
    chosen = [squares[k] for k in which]
    centres = [face_frame(v, f[i])[0] for i in chosen]
    for c in centres:
        vv, ff = hull_polyhedron(pts)
        idx = min(range(len(ff)), key=lambda i: np.linalg.norm(face_frame(vv, ff[i])[0] - c))
        pts = augment_pyramid(pts, idx)
    return pts


def icosa_diminish(count):
    pts = icosahedron()
    c = np.mean(pts, axis=0)
    dirs = [(p - c) / np.linalg.norm(p - c) for p in pts]
    first = 0
    meta = [j for j in range(len(pts)) if abs(np.dot(dirs[0], dirs[j]) + 1 / math.sqrt(5)) < 1e-6]
    removed = [first]
    if count >= 2:
        removed.append(meta[0])
    if count >= 3:
        for j in meta[1:]:
            if abs(np.dot(dirs[meta[0]], dirs[j]) + 1 / math.sqrt(5)) < 1e-6:
                removed.append(j)
                break
    return [p for i, p in enumerate(pts) if i not in removed]


def augmented_tridiminished_icosahedron():
    pts = icosa_diminish(3)
    v, f = hull_polyhedron(pts)
    for i, face in enumerate(f):
        if len(face) != 3:
            continue
        c, n = face_frame(v, face)
        r = np.linalg.norm(v[face[0]] - c)
        cand = list(pts) + [c + n * math.sqrt(1 - r * r)]
        vv, ff = hull_polyhedron(cand)
        if len(ff) == 10 and is_regular_faced(cand):
            return cand
    raise RuntimeError("J64")


def rhombicosidodeca_caps(mods):
    """mods: list of 'g' (gyrate) / 'd' (diminish), applied to mutually meta/para caps."""
    pts = rhombicosidodecahedron()
    v, f = hull_polyhedron(pts)
    c0 = v.mean(axis=0)
    pents = [i for i, face in enumerate(f) if len(face) == 5]
    axes = {i: face_frame(v, f[i])[1] for i in pents}
    return pts, axes, pents, c0


def modify_rhombicosidodecahedron(spec):
    """spec: list of (op, relation_to_first) e.g. [('g',None),('d','para')]."""
    pts, axes, pents, c0 = rhombicosidodeca_caps(None)
    first = pents[0]
    a0 = axes[first]
    dots = sorted({round(float(np.dot(a0, axes[j])), 6) for j in pents if j != first})
    meta_dot = dots[1]
    chosen = [first]
    for op, rel in spec[1:]:
        if rel == "para":
            chosen.append(min(pents, key=lambda j: np.dot(a0, axes[j])))
        else:
            for j in pents:
                if j in chosen:
                    continue
                if all(abs(np.dot(axes[k], axes[j]) - meta_dot) < 1e-5 for k in chosen):
                    chosen.append(j)
                    break
    pts = [np.array(p) for p in pts]
    vcap = []
    for (op, _), fid in zip(spec, chosen):
        axis = axes[fid]
        proj = [np.dot(p - c0, axis) for p in pts]
        top = max(proj)
        top_ids = [i for i, h in enumerate(proj) if abs(h - top) < 1e-6]
        assert len(top_ids) == 5
        centre = c0 + axis * top
        if op == "g":
            rotated = rotate_about([pts[i] for i in top_ids], axis, math.pi / 5, centre)
            for i, p in zip(top_ids, rotated):
                pts[i] = p
        else:
            vcap.extend(top_ids)
    return [p for i, p in enumerate(pts) if i not in set(vcap)]


# ------------------------------------------------------------ extra families

def bipyramid_tall(n, h=1.0):
    return ring(n, 0) + [np.array([0, 0, h]), np.array([0, 0, -h])]


def trapezohedron(n):
    return dual_of(antiprism(n))


def frustum(n, scale=0.5, h=0.6):
    return ring(n, 0) + [p * np.array([scale, scale, 1]) + np.array([0, 0, h]) for p in ring(n, 0)]


# ------------------------------------------------------------ catalogue

def catalogue():
    c = []
    add = lambda name, pts, regular=True: c.append((name, pts, regular))
    add("tetrahedron", tetrahedron())
    add("cube", cube())
    add("octahedron", octahedron())
    add("dodecahedron", dodecahedron())
    add("icosahedron", icosahedron())
    arch = [("truncated tetrahedron", truncated_tetrahedron), ("cuboctahedron", cuboctahedron),
            ("truncated cube", truncated_cube), ("truncated octahedron", truncated_octahedron),
            ("rhombicuboctahedron", rhombicuboctahedron),
            ("truncated cuboctahedron", truncated_cuboctahedron), ("snub cube", snub_cube),
            ("icosidodecahedron", icosidodecahedron), ("truncated dodecahedron", truncated_dodecahedron),
            ("truncated icosahedron", truncated_icosahedron),
            ("rhombicosidodecahedron", rhombicosidodecahedron),
            ("truncated icosidodecahedron", truncated_icosidodecahedron),
            ("snub dodecahedron", snub_dodecahedron)]
    for name, fn in arch:
        add(name, fn())
    catalan = [("triakis tetrahedron", truncated_tetrahedron), ("rhombic dodecahedron", cuboctahedron),
               ("triakis octahedron", truncated_cube), ("tetrakis hexahedron", truncated_octahedron),
               ("deltoidal icositetrahedron", rhombicuboctahedron),
               ("disdyakis dodecahedron", truncated_cuboctahedron),
               ("pentagonal icositetrahedron", snub_cube), ("rhombic triacontahedron", icosidodecahedron),
               ("triakis icosahedron", truncated_dodecahedron),
               ("pentakis dodecahedron", truncated_icosahedron),
               ("deltoidal hexecontahedron", rhombicosidodecahedron),
               ("pentagonal hexecontahedron", snub_dodecahedron)]
    for name, fn in catalan:
        add(name, dual_of(fn()), False)
    names = {3: "triangular", 4: "square", 5: "pentagonal", 6: "hexagonal", 7: "heptagonal",
             8: "octagonal", 9: "enneagonal", 10: "decagonal"}
    for n in [3, 5, 6, 7, 8, 9, 10]:
        add(f"{names[n]} prism", prism(n))
    for n in range(4, 11):
        add(f"{names[n]} antiprism", antiprism(n))

    # Johnson solids J1-J83
    J = []
    J += [("square pyramid", pyramid(4)), ("pentagonal pyramid", pyramid(5))]
    J += [("triangular cupola", cupola(3)), ("square cupola", cupola(4)),
          ("pentagonal cupola", cupola(5)), ("pentagonal rotunda", rotunda_cap())]
    J += [("elongated triangular pyramid", elongated_pyramid(3)),
          ("elongated square pyramid", elongated_pyramid(4)),
          ("elongated pentagonal pyramid", elongated_pyramid(5)),
          ("gyroelongated square pyramid", gyroelongated_pyramid(4)),
          ("gyroelongated pentagonal pyramid", gyroelongated_pyramid(5)),
          ("triangular dipyramid", dipyramid(3)), ("pentagonal dipyramid", dipyramid(5)),
          ("elongated triangular dipyramid", elongated_dipyramid(3)),
          ("elongated square dipyramid", elongated_dipyramid(4)),
          ("elongated pentagonal dipyramid", elongated_dipyramid(5)),
          ("gyroelongated square dipyramid", gyroelongated_dipyramid(4))]
    for n in (3, 4, 5):
        b, t, _ = cupola_parts(n)
        J.append((f"elongated {names[n]} cupola", b + t + ring(2 * n, -1, math.pi / (2 * n))))
    J.append(("elongated pentagonal rotunda", rotunda_cap() + ring(10, -1, math.pi / 10)))
    for n in (3, 4, 5):
        b, t, _ = cupola_parts(n)
        J.append((f"gyroelongated {names[n]} cupola",
                  b + t + ring(2 * n, -antiprism_height(2 * n), math.pi / (2 * n) + math.pi / (2 * n))))
    J.append(("gyroelongated pentagonal rotunda",
              rotunda_cap() + ring(10, -antiprism_height(10), math.pi / 10 + math.pi / 10)))
    J.append(("gyrobifastigium", gyrobifastigium()))
    J += [("triangular orthobicupola", bicupola(3, False)), ("square orthobicupola", bicupola(4, False)),
          ("square gyrobicupola", bicupola(4, True)), ("pentagonal orthobicupola", bicupola(5, False)),
          ("pentagonal gyrobicupola", bicupola(5, True))]
    J += [("pentagonal orthocupolarotunda", cupola_rotunda(False)),
          ("pentagonal gyrocupolarotunda", cupola_rotunda(True)),
          ("pentagonal orthobirotunda", birotunda())]
    J += [("elongated triangular orthobicupola", elongated_bicupola(3, False)),
          ("elongated triangular gyrobicupola", elongated_bicupola(3, True)),
          ("elongated square gyrobicupola", elongated_bicupola(4, True)),
          ("elongated pentagonal orthobicupola", elongated_bicupola(5, False)),
          ("elongated pentagonal gyrobicupola", elongated_bicupola(5, True)),
          ("elongated pentagonal orthocupolarotunda", cupola_rotunda(False, 1)),
          ("elongated pentagonal gyrocupolarotunda", cupola_rotunda(True, 1)),
          ("elongated pentagonal orthobirotunda", birotunda(1, False)),
          ("elongated pentagonal gyrobirotunda", birotunda(1, True))]
    J += [("gyroelongated triangular bicupola", gyroelongated_bicupola(3)),
          ("gyroelongated square bicupola", gyroelongated_bicupola(4)),
          ("gyroelongated pentagonal bicupola", gyroelongated_bicupola(5)),
          ("gyroelongated pentagonal cupolarotunda", cupola_rotunda(False, 2)),
          ("gyroelongated pentagonal birotunda", birotunda(2))]
    J += [("augmented triangular prism", prism_side_faces(3, [0])),
          ("biaugmented triangular prism", prism_side_faces(3, [0, 1])),
          ("triaugmented triangular prism", prism_side_faces(3, [0, 1, 2])),
          ("augmented pentagonal prism", prism_side_faces(5, [0])),
          ("biaugmented pentagonal prism", prism_side_faces(5, [0, 2])),
          ("augmented hexagonal prism", prism_side_faces(6, [0])),
          ("parabiaugmented hexagonal prism", prism_side_faces(6, [0, 3])),
          ("metabiaugmented hexagonal prism", prism_side_faces(6, [0, 2])),
          ("triaugmented hexagonal prism", prism_side_faces(6, [0, 2, 4]))]
    d = dodecahedron()
    J += [("augmented dodecahedron", augment_many(d, 5, "single", augment_pyramid)),
          ("parabiaugmented dodecahedron", augment_many(d, 5, "para", augment_pyramid)),
          ("metabiaugmented dodecahedron", augment_many(d, 5, "meta", augment_pyramid)),
          ("triaugmented dodecahedron", augment_many(d, 5, "tri", augment_pyramid))]
    J += [("metabidiminished icosahedron", icosa_diminish(2)),
          ("tridiminished icosahedron", icosa_diminish(3)),
          ("augmented tridiminished icosahedron", augmented_tridiminished_icosahedron())]
    J += [("augmented truncated tetrahedron", augment_many(truncated_tetrahedron(), 6, "single", augment_cupola)),
          ("augmented truncated cube", augment_many(truncated_cube(), 8, "single", augment_cupola)),
          ("biaugmented truncated cube", augment_many(truncated_cube(), 8, "para", augment_cupola))]
    td = truncated_dodecahedron()
    J += [("augmented truncated dodecahedron", augment_many(td, 10, "single", augment_cupola)),
          ("parabiaugmented truncated dodecahedron", augment_many(td, 10, "para", augment_cupola)),
          ("metabiaugmented truncated dodecahedron", augment_many(td, 10, "meta", augment_cupola)),
          ("triaugmented truncated dodecahedron", augment_many(td, 10, "tri", augment_cupola))]
    rid = modify_rhombicosidodecahedron
    J += [("gyrate rhombicosidodecahedron", rid([("g", None)])),
          ("parabigyrate rhombicosidodecahedron", rid([("g", None), ("g", "para")])),
          ("metabigyrate rhombicosidodecahedron", rid([("g", None), ("g", "meta")])),
          ("trigyrate rhombicosidodecahedron", rid([("g", None), ("g", "meta"), ("g", "meta")])),
          ("diminished rhombicosidodecahedron", rid([("d", None)])),
          ("paragyrate diminished rhombicosidodecahedron", rid([("d", None), ("g", "para")])),
          ("metagyrate diminished rhombicosidodecahedron", rid([("d", None), ("g", "meta")])),
          ("bigyrate diminished rhombicosidodecahedron", rid([("d", None), ("g", "meta"), ("g", "meta")])),
          ("parabidiminished rhombicosidodecahedron", rid([("d", None), ("d", "para")])),
          ("metabidiminished rhombicosidodecahedron", rid([("d", None), ("d", "meta")])),
          ("gyrate bidiminished rhombicosidodecahedron", rid([("d", None), ("d", "meta"), ("g", "meta")])),
          ("tridiminished rhombicosidodecahedron", rid([("d", None), ("d", "meta"), ("d", "meta")]))]
    for name, pts in J:
        add(name, pts)

    for n in (6, 7, 8, 9):
        add(f"{names[n]} dipyramid", bipyramid_tall(n), False)
    for n in (4, 5, 6, 7, 8):
        add(f"{names[n]} trapezohedron", trapezohedron(n), False)
    for n in (3, 4, 5, 6):
        add(f"{names[n]} frustum", frustum(n), False)
    return c


def fmt(x):
    s = f"{x:.15f}".rstrip("0")
    if s.endswith("."):
        s += "0"
    return "0.0" if s in ("-0.0",) else s


def write_netlib(path, number, name, verts, faces):
    with open(path, "w") as fh:
        fh.write(f":number\n{number}\n:name\n{name}\n")
        fh.write(f":vertices\n{len(verts)} {len(verts)}\n")
        for p in verts:
            fh.write(" ".join(fmt(x) for x in p) + "\n")
        fh.write(f":solid\n{len(faces)} {max(len(f) for f in faces)}\n")
        for f in faces:
            fh.write(f"{len(f)} " + " ".join(str(i) for i in f) + "\n")


def main():
    out = sys.argv[1]
    os.makedirs(out, exist_ok=True)
    cat = catalogue()
    seen = set()
    for number, (name, pts, regular) in enumerate(cat):
        assert name not in seen, name
        seen.add(name)
        v, f = hull_polyhedron(pts)
        e = len(edges_of(f))
        assert len(v) - e + len(f) == 2, name
        if regular and not is_regular_faced(pts):
            ls = edge_lengths(v, f)
            raise SystemExit(f"{name}: not regular-faced ({min(ls)}..{max(ls)})")
        v = v - v.mean(axis=0)
        fname = f"{number:03d}_" + name.replace(" ", "_") + ".netlib"
        write_netlib(os.path.join(out, fname), number, name, v, f)
        print(f"{number:3d} {name:50s} V={len(v):3d} E={e:3d} F={len(f):3d}")


if __name__ == "__main__":
    main()
