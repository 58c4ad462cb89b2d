"""Polyline tracing of toric sections.

The tracer samples the sign of the square-root-form residual on a regular
grid over the bounding square of the section, extracts crossing segments per
cell (with cell-center disambiguation of saddle cells), refines every edge
crossing by bisection, and chains segments into polylines.

Curves with self-crossings (the bitangent central section, the figure-eight
spirics) need one extra pass: near a node the raw cell topology connects the
branches in whatever way the local signs dictate, which can splice arcs of
different smooth branches into one polyline.  ``_repair_junctions`` splits
polylines at sharp corners, clusters the resulting endpoints, and re-joins
them by tangent continuity.  Nodes that fall exactly on a grid vertex (the
figure-eight spirics do, since their node is the in-plane origin and the grid
is centered) are already resolved by edge-identity chaining and are left
untouched, so their lobes are never merged through the node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .geometry import ParameterError, plane_embed_many
from .section import SectionProblem, section_residual

TRACE_TOL = 1e-12
MAX_BISECT = 60
DEFAULT_RESOLUTION = 512

_CORNER_MAX_DEG = 30.0   # turn that always counts as a corner
_CORNER_MIN_DEG = 10.0   # floor for the adaptive threshold
_CORNER_MEDIAN_FACTOR = 8.0
_SMOOTH_JOIN_SCORE = -0.5
_CLUSTER_JOIN_SCORE = -0.3

# (case -> segments) for corner bits c0=(i,j), c1=(i+1,j), c2=(i+1,j+1),
# c3=(i,j+1); edges 0=bottom 1=right 2=top 3=left.  Cases 5 and 10 are the
# saddle cells resolved by the sign at the cell center.
_CASE_SEGMENTS = {
    1: [(0, 3)], 2: [(0, 1)], 3: [(1, 3)], 4: [(1, 2)],
    6: [(0, 2)], 7: [(2, 3)], 8: [(2, 3)], 9: [(0, 2)],
    11: [(1, 2)], 12: [(1, 3)], 13: [(0, 1)], 14: [(0, 3)],
}
_SADDLE = {
    5: {True: [(0, 1), (2, 3)], False: [(0, 3), (1, 2)]},
    10: {True: [(0, 3), (1, 2)], False: [(0, 1), (2, 3)]},
}


@dataclass(frozen=True)
class SectionCurve:
    """Traced section: polylines in plane coordinates, optional 3D embedding,
    per-polyline closed flags and worst-case residual statistics.

    ``bound`` is the half-side of the tracing square (used for view boxes).
    Closed polylines do not repeat their first point.
    """

    polylines2d: tuple[np.ndarray, ...]
    closed_flags: tuple[bool, ...]
    bound: float
    polylines3d: tuple[np.ndarray, ...] | None = None
    max_torus_residual: float = 0.0
    max_plane_residual: float = 0.0

    @property
    def is_empty(self) -> bool:
        return len(self.polylines2d) == 0

    @property
    def point_count(self) -> int:
        return sum(len(p) for p in self.polylines2d)


def _empty_curve(bound: float) -> SectionCurve:
    return SectionCurve(polylines2d=(), closed_flags=(), bound=bound)


def circles_horizontal(sp: SectionProblem, samples: int = DEFAULT_RESOLUTION) -> SectionCurve:
    """Analytic section for a horizontal plane (|phi| = pi/2).

    The plane z = +/-rho cuts the torus in two concentric circles of radii
    R +/- sqrt(r^2 - rho^2) when rho < r, one circle of radius R at tangency
    (rho = r), and nothing when rho > r.  Sign-based grid tracing cannot see
    the tangent circle (the residual does not change sign across it), hence
    the dedicated path.
    """
    if not sp.is_horizontal:
        raise ValueError("circles_horizontal requires |phi| = pi/2 within 1e-12")
    R, r = sp.torus.R, sp.torus.r
    rho = sp.plane.rho
    bound = math.sqrt(max(0.0, (R + r) ** 2 - rho * rho))
    eps = 1e-12 * max(1.0, r)
    if rho > r + eps:
        return _empty_curve(bound)
    if abs(rho - r) <= eps:
        radii = [R]
    else:
        half = math.sqrt(r * r - rho * rho)
        radii = [R + half, R - half]
    theta = np.linspace(0.0, 2.0 * math.pi, max(16, samples), endpoint=False)
    polys = []
    for s in radii:
        if s <= 0.0:
            continue
        polys.append(np.column_stack([s * np.cos(theta), s * np.sin(theta)]))
    return SectionCurve(polylines2d=tuple(polys),
                        closed_flags=tuple(True for _ in polys),
                        bound=bound)


def trace_section(sp: SectionProblem, resolution: int = DEFAULT_RESOLUTION) -> SectionCurve:
    """Trace the zero set of :func:`toric.section.section_residual`.

    ``resolution`` is the cell count per axis of the sampling grid laid over
    the bounding square of half-side sqrt((R+r)^2 - rho^2) plus a small
    margin.  Every returned vertex is refined to |residual| <= 1e-9 (bisection
    target 1e-12).  Sections touching the plane in isolated points smaller
    than one grid cell may be missed; raise the resolution if needed.
    """
    if resolution < 16:
        raise ParameterError(f"resolution must be >= 16 (got {resolution})")
    if sp.is_horizontal:
        return circles_horizontal(sp, samples=resolution)
    R, r = sp.torus.R, sp.torus.r
    rho = sp.plane.rho
    if rho > R + r:
        # the whole torus lies within distance R+r of the origin
        return _empty_curve(0.0)
    half = math.sqrt(max(0.0, (R + r) ** 2 - rho * rho)) + 2.0 / resolution

    n = int(resolution)
    step = 2.0 * half / n
    # integer-scaled axis keeps the grid mirror symmetric and puts 0.0 on a
    # grid line for even n, so nodes at the in-plane origin are hit exactly
    axis = step * (np.arange(n + 1) - n // 2 - (n % 2) * 0.5)
    T, W = np.meshgrid(axis, axis, indexing="ij")
    F = section_residual(T, W, sp)
    pos = F >= 0.0  # zeros count as positive so exact node vertices chain cleanly

    points, h_id, v_id = _refine_crossings(sp, axis, F, pos)
    if points.shape[0] == 0:
        return _empty_curve(half)
    segments = _cell_segments(sp, axis, pos, h_id, v_id)
    polylines, closed = _chain(points, segments)
    diag = step * math.sqrt(2.0)
    closed = [c or _endpoints_close(p, diag) for p, c in zip(polylines, closed)]
    polylines, closed = _repair_junctions(polylines, closed, step)
    return SectionCurve(polylines2d=tuple(polylines),
                        closed_flags=tuple(closed),
                        bound=half)


def embed_section(curve: SectionCurve, sp: SectionProblem) -> SectionCurve:
    """Map a traced curve into 3D through the plane frame and record the worst
    torus / plane residuals over the embedded points."""
    R, r = sp.torus.R, sp.torus.r
    rho = sp.plane.rho
    frame = sp.frame
    polys3d = []
    max_torus = 0.0
    max_plane = 0.0
    for pts in curve.polylines2d:
        p3 = plane_embed_many(pts, frame)
        polys3d.append(p3)
        radial = np.hypot(p3[:, 0], p3[:, 1])
        tres = (radial - R) ** 2 + p3[:, 2] ** 2 - r * r
        pres = p3 @ frame.normal - rho
        max_torus = max(max_torus, float(np.abs(tres).max()))
        max_plane = max(max_plane, float(np.abs(pres).max()))
    return replace(curve,
                   polylines3d=tuple(polys3d),
                   max_torus_residual=max_torus,
                   max_plane_residual=max_plane)


# ---------------------------------------------------------------------------
# grid machinery


def _refine_crossings(sp, axis, F, pos):
    """Locate and bisect all sign-change crossings on grid edges.

    Returns the stacked crossing points plus two index grids mapping a
    horizontal edge (i, j) / vertical edge (i, j) to its point row (-1 where
    the edge has no crossing).
    """
    h_mask = pos[:-1, :] != pos[1:, :]
    v_mask = pos[:, :-1] != pos[:, 1:]

    hi, hj = np.nonzero(h_mask)
    t_ref = _bisect(lambda x, fx: section_residual(x, fx, sp),
                    axis[hi], axis[hi + 1], F[hi, hj], F[hi + 1, hj],
                    fixed=axis[hj])
    h_pts = np.column_stack([t_ref, axis[hj]])

    vi, vj = np.nonzero(v_mask)
    w_ref = _bisect(lambda x, fx: section_residual(fx, x, sp),
                    axis[vj], axis[vj + 1], F[vi, vj], F[vi, vj + 1],
                    fixed=axis[vi])
    v_pts = np.column_stack([axis[vi], w_ref])

    n_h = len(hi)
    h_id = np.full(h_mask.shape, -1, dtype=np.int64)
    h_id[hi, hj] = np.arange(n_h)
    v_id = np.full(v_mask.shape, -1, dtype=np.int64)
    v_id[vi, vj] = n_h + np.arange(len(vi))
    points = np.vstack([h_pts, v_pts]) if (len(hi) or len(vi)) else np.empty((0, 2))
    return points, h_id, v_id


def _bisect(eval_line, a, b, fa, fb, fixed):
    """Vectorized bisection of f = 0 on [a, b] per edge, where a is relabeled
    to the f >= 0 side.  Stops at |f| <= TRACE_TOL or MAX_BISECT halvings."""
    a = np.asarray(a, dtype=float).copy()
    b = np.asarray(b, dtype=float).copy()
    fa = np.asarray(fa, dtype=float).copy()
    fb = np.asarray(fb, dtype=float).copy()
    swap = fa < 0.0
    a[swap], b[swap] = b[swap], a[swap].copy()
    fa[swap], fb[swap] = fb[swap], fa[swap].copy()

    res = np.empty_like(a)
    done = np.abs(fa) <= TRACE_TOL
    res[done] = a[done]
    hit_b = ~done & (np.abs(fb) <= TRACE_TOL)
    res[hit_b] = b[hit_b]
    done |= hit_b
    for _ in range(MAX_BISECT):
        if done.all():
            break
        mid = 0.5 * (a + b)
        fm = eval_line(mid, fixed)
        a = np.where(~done & (fm >= 0.0), mid, a)
        b = np.where(~done & (fm < 0.0), mid, b)
        hit = ~done & (np.abs(fm) <= TRACE_TOL)
        res[hit] = mid[hit]
        done |= hit
    res[~done] = 0.5 * (a[~done] + b[~done])
    return res


def _cell_segments(sp, axis, pos, h_id, v_id):
    """Per-cell crossing segments as pairs of global crossing-point ids."""
    case = (pos[:-1, :-1] * 1 + pos[1:, :-1] * 2
            + pos[1:, 1:] * 4 + pos[:-1, 1:] * 8).astype(np.int8)

    def edge_ids(ii, jj, e):
        if e == 0:
            return h_id[ii, jj]
        if e == 1:
            return v_id[ii + 1, jj]
        if e == 2:
            return h_id[ii, jj + 1]
        return v_id[ii, jj]

    ai, aj = np.nonzero((case != 0) & (case != 15))
    acase = case[ai, aj]

    segments = []
    for c in sorted(_CASE_SEGMENTS):
        m = acase == c
        if not m.any():
            continue
        ii, jj = ai[m], aj[m]
        for ea, eb in _CASE_SEGMENTS[c]:
            a = edge_ids(ii, jj, ea)
            b = edge_ids(ii, jj, eb)
            ok = (a >= 0) & (b >= 0)
            segments.extend(zip(a[ok].tolist(), b[ok].tolist()))
    for c in sorted(_SADDLE):
        m = acase == c
        ii, jj = ai[m], aj[m]
        for i, j in zip(ii.tolist(), jj.tolist()):
            tc = 0.5 * (axis[i] + axis[i + 1])
            wc = 0.5 * (axis[j] + axis[j + 1])
            segs = _SADDLE[c][bool(section_residual(tc, wc, sp) >= 0.0)]
            edge_pts = (h_id[i, j], v_id[i + 1, j], h_id[i, j + 1], v_id[i, j])
            for ea, eb in segs:
                pa, pb = int(edge_pts[ea]), int(edge_pts[eb])
                if pa >= 0 and pb >= 0:
                    segments.append((pa, pb))
    return segments


def _chain(points, segments):
    """Assemble crossing segments into polylines by shared edge crossings."""
    adj: dict[int, list[int]] = {}
    for a, b in segments:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    used = set()
    polylines = []
    closed = []

    def walk(start, first):
        path = [start, first]
        used.add(_key(start, first))
        cur = first
        while True:
            nxt = None
            for cand in adj.get(cur, ()):
                if _key(cur, cand) not in used:
                    nxt = cand
                    break
            if nxt is None:
                return path, False
            used.add(_key(cur, nxt))
            if nxt == start:
                return path, True
            path.append(nxt)
            cur = nxt

    ends = sorted(p for p, nb in adj.items() if len(nb) == 1)
    for p in ends:
        for q in adj[p]:
            if _key(p, q) in used:
                continue
            path, cyc = walk(p, q)
            polylines.append(points[np.array(path)])
            closed.append(cyc)
    for p in sorted(adj):
        for q in adj[p]:
            if _key(p, q) in used:
                continue
            path, cyc = walk(p, q)
            polylines.append(points[np.array(path)])
            closed.append(cyc)
    return polylines, closed


def _key(a, b):
    return (a, b) if a < b else (b, a)


def _endpoints_close(pts, diag):
    return len(pts) > 2 and float(np.hypot(*(pts[0] - pts[-1]))) <= diag


# ---------------------------------------------------------------------------
# junction repair


def _repair_junctions(polylines, closed, h):
    """Split polylines at sharp corners and re-pair the pieces by tangent
    continuity so that smooth branches survive curve self-crossings.

    Corners landing on an exact shared vertex (node on a grid point) are left
    alone: edge-identity chaining already keeps those lobes separate.
    """
    cleaned = [_dedupe(p) for p in polylines]
    corner_lists = [_corners(p, c) for p, c in zip(cleaned, closed)]
    if not any(corner_lists):
        return cleaned, list(closed)

    shared = _shared_positions(cleaned, corner_lists)
    corner_lists = [
        [i for i in cs if _quantize(p[i]) not in shared]
        for p, cs in zip(cleaned, corner_lists)
    ]
    if not any(corner_lists):
        return cleaned, list(closed)

    arcs, untouched = _split_arcs(cleaned, closed, corner_lists)
    ports = _collect_ports(arcs)
    clusters = _cluster_ports(ports, link=3.0 * h)
    joins = []
    for cluster in clusters:
        joins.extend(_resolve_cluster(cluster, ports, arcs, h))
    merged, merged_closed = _assemble(arcs, joins, ports)
    out = [p for p, _ in untouched] + merged
    out_closed = [c for _, c in untouched] + merged_closed
    return out, out_closed


def _dedupe(pts):
    if len(pts) < 2:
        return pts
    keep = np.ones(len(pts), dtype=bool)
    keep[1:] = np.any(pts[1:] != pts[:-1], axis=1)
    return pts[keep]


def _corners(pts, is_closed):
    """Vertices whose turn angle is an outlier against the polyline's own
    median turn.  The threshold adapts because node crossings can be shallow
    (fat tori cross their bitangent circles at small angles) while the
    baseline turn per segment shrinks with grid resolution."""
    n = len(pts)
    if n < 4:
        return []
    d = np.diff(pts, axis=0)
    if is_closed:
        d = np.vstack([d, pts[0] - pts[-1]])
    norm = np.hypot(d[:, 0], d[:, 1])
    norm[norm == 0.0] = 1.0
    u = d / norm[:, None]
    if is_closed:
        cosv = (u * np.roll(u, 1, axis=0)).sum(axis=1)
        offset = 0
    else:
        cosv = (u[:-1] * u[1:]).sum(axis=1)
        offset = 1
    turn = np.degrees(np.arccos(np.clip(cosv, -1.0, 1.0)))
    threshold = _CORNER_MAX_DEG
    if n >= 16:
        threshold = min(_CORNER_MAX_DEG,
                        max(_CORNER_MIN_DEG,
                            _CORNER_MEDIAN_FACTOR * float(np.median(turn))))
    return [int(i) + offset for i in np.nonzero(turn > threshold)[0]]


def _quantize(p):
    return (int(round(p[0] * 1e9)), int(round(p[1] * 1e9)))


def _shared_positions(polys, corner_lists):
    counts: dict[tuple[int, int], int] = {}
    for pts, cs in zip(polys, corner_lists):
        for i in cs:
            k = _quantize(pts[i])
            counts[k] = counts.get(k, 0) + 1
    return {k for k, c in counts.items() if c >= 2}


class _Arc:
    __slots__ = ("pts", "partner", "dropped")

    def __init__(self, pts):
        self.pts = pts
        self.partner = [None, None]  # port that was originally adjacent per end
        self.dropped = False


def _split_arcs(polys, closed, corner_lists):
    """Cut each cornered polyline into arcs; returns arcs plus the untouched
    polylines.  Original adjacency of the cut ends is recorded so identity
    rejoins can be preferred later."""
    arcs: list[_Arc] = []
    untouched = []
    for pts, is_closed, cs in zip(polys, closed, corner_lists):
        if not cs:
            untouched.append((pts, is_closed))
            continue
        cs = sorted(cs)
        first = len(arcs)
        if is_closed:
            pieces = []
            for a, b in zip(cs, cs[1:]):
                pieces.append(pts[a:b + 1])
            pieces.append(np.vstack([pts[cs[-1]:], pts[:cs[0] + 1]]))
            for piece in pieces:
                arcs.append(_Arc(piece))
            k = len(pieces)
            for idx in range(k):
                arc_id = first + idx
                nxt = first + (idx + 1) % k
                arcs[arc_id].partner[1] = (nxt, 0)
                arcs[nxt].partner[0] = (arc_id, 1)
        else:
            cuts = [0] + cs + [len(pts) - 1]
            pieces = [pts[a:b + 1] for a, b in zip(cuts, cuts[1:]) if b > a]
            for piece in pieces:
                arcs.append(_Arc(piece))
            for idx in range(len(pieces) - 1):
                arc_id = first + idx
                arcs[arc_id].partner[1] = (arc_id + 1, 0)
                arcs[arc_id + 1].partner[0] = (arc_id, 1)
    return arcs, untouched


def _collect_ports(arcs):
    """A port is one end of an arc: (arc_id, end, position, arrival direction)."""
    ports = []
    for aid, arc in enumerate(arcs):
        pts = arc.pts
        for end in (0, 1):
            pos = pts[0] if end == 0 else pts[-1]
            nb = pts[1] if end == 0 else pts[-2]
            d = pos - nb
            norm = math.hypot(d[0], d[1])
            u = d / norm if norm > 0 else np.zeros(2)
            ports.append({"arc": aid, "end": end, "pos": pos, "dir": u})
    return ports


def _cluster_ports(ports, link):
    parent = list(range(len(ports)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(ports)):
        for j in range(i + 1, len(ports)):
            d = ports[i]["pos"] - ports[j]["pos"]
            if math.hypot(d[0], d[1]) <= link:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(len(ports)):
        groups.setdefault(find(i), []).append(i)
    return [sorted(g) for _, g in sorted(groups.items()) if len(g) >= 2]


def _resolve_cluster(cluster, ports, arcs, h):
    """Drop waist fragments, trim arc ends near the node, and pair the
    remaining ports for maximal tangent continuity."""
    centroid = np.mean([ports[i]["pos"] for i in cluster], axis=0)

    live = []
    for i in cluster:
        arc = arcs[ports[i]["arc"]]
        if arc.dropped:
            continue
        if len(arc.pts) <= 6:
            dist = np.hypot(*(arc.pts - centroid).T)
            if dist.max() <= 2.5 * h:
                arc.dropped = True
                continue
        live.append(i)
    live = [i for i in live if not arcs[ports[i]["arc"]].dropped]

    if len(live) >= 3:
        for i in live:
            _trim_port(ports[i], arcs[ports[i]["arc"]], centroid, 2.0 * h)

    def score(i, j):
        return float(ports[i]["dir"] @ ports[j]["dir"])

    def is_partner(i, j):
        pi, pj = ports[i], ports[j]
        return arcs[pi["arc"]].partner[pi["end"]] == (pj["arc"], pj["end"])

    if len(live) == 2:
        i, j = live
        if is_partner(i, j) or score(i, j) < _SMOOTH_JOIN_SCORE:
            return [(i, j)]
        return []
    if len(live) % 2 == 0 and len(live) <= 8:
        best = None
        for matching in _matchings(live):
            total = sum(score(i, j) for i, j in matching)
            identity = sum(1 for i, j in matching if is_partner(i, j))
            key = (total, -identity, matching)
            if best is None or key < best:
                best = key
        return [(i, j) for i, j in best[2] if score(i, j) < _CLUSTER_JOIN_SCORE]
    pairs = sorted(((score(i, j), i, j)
                    for k, i in enumerate(live) for j in live[k + 1:]))
    taken = set()
    joins = []
    for s, i, j in pairs:
        if s >= _SMOOTH_JOIN_SCORE:
            break
        if i in taken or j in taken:
            continue
        taken.update((i, j))
        joins.append((i, j))
    return joins


def _trim_port(port, arc, centroid, radius):
    """Drop leading/trailing vertices of the arc that hug the node, then
    refresh the port position and direction."""
    pts = arc.pts
    if len(pts) <= 2:
        return
    dist = np.hypot(*(pts - centroid).T)
    if port["end"] == 0:
        k = 0
        while k < len(pts) - 2 and dist[k] <= radius:
            k += 1
        if k:
            arc.pts = pts = pts[k:]
    else:
        k = len(pts) - 1
        while k > 1 and dist[k] <= radius:
            k -= 1
        if k < len(pts) - 1:
            arc.pts = pts = pts[:k + 1]
    pos = pts[0] if port["end"] == 0 else pts[-1]
    nb = pts[1] if port["end"] == 0 else pts[-2]
    d = pos - nb
    norm = math.hypot(d[0], d[1])
    port["pos"] = pos
    port["dir"] = d / norm if norm > 0 else np.zeros(2)


def _matchings(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, second in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for sub in _matchings(remaining):
            yield ((first, second),) + sub


def _assemble(arcs, joins, ports):
    """Concatenate arcs along the accepted joins into final polylines."""
    conn: dict[tuple[int, int], tuple[int, int]] = {}
    for i, j in joins:
        pi, pj = ports[i], ports[j]
        if arcs[pi["arc"]].dropped or arcs[pj["arc"]].dropped:
            continue
        conn[(pi["arc"], pi["end"])] = (pj["arc"], pj["end"])
        conn[(pj["arc"], pj["end"])] = (pi["arc"], pi["end"])

    merged = []
    merged_closed = []
    visited = set()
    for aid, arc in enumerate(arcs):
        if arc.dropped or aid in visited:
            continue
        # find a starting end that is not connected, if any (open chain)
        start = None
        cur, cur_end = aid, 0
        seen = set()
        while (cur, cur_end) in conn and (cur, cur_end) not in seen:
            seen.add((cur, cur_end))
            nxt, nxt_end = conn[(cur, cur_end)]
            cur, cur_end = nxt, 1 - nxt_end
        start = (cur, cur_end)

        pts_out = None
        is_closed = False
        cur, enter_end = start
        first_port = (cur, enter_end)
        while True:
            visited.add(cur)
            seg = arcs[cur].pts if enter_end == 0 else arcs[cur].pts[::-1]
            if pts_out is None:
                pts_out = seg
            else:
                if np.array_equal(pts_out[-1], seg[0]):
                    seg = seg[1:]
                pts_out = np.vstack([pts_out, seg])
            exit_end = 1 - enter_end
            nxt = conn.get((cur, exit_end))
            if nxt is None:
                break
            if nxt == first_port or arcs[nxt[0]].dropped or (
                    nxt[0] in visited and nxt[0] != first_port[0]):
                is_closed = nxt == first_port
                break
            cur, enter_end = nxt[0], nxt[1]
            if cur == first_port[0]:
                is_closed = True
                break
        if is_closed and len(pts_out) > 1 and np.array_equal(pts_out[0], pts_out[-1]):
            pts_out = pts_out[:-1]
        merged.append(pts_out)
        merged_closed.append(bool(is_closed))
    return merged, merged_closed
