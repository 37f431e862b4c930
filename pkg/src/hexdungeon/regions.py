"""Dungeon region constructors: jagged boundaries along lattice contours.

A region family is specified by a closed contour walked counterclockwise
(interior on the left) whose sides follow either lattice directions (unit
steps along triangle sides) or altitude directions N/S (unit steps of
length sqrt(3) between lattice points on a vertical altitude line).

Along every lattice-direction unit segment the boundary is jagged: it dips
into the adjacent interior triangle through its center/altitude web.  Each
"tooth" is one of a small menu of lattice paths from segment start P to
segment end B (inner triangle P, B, Q; O its center; m1, m0 the midpoints
of sides PQ and BQ):

    code  path            cells cut from the inner triangle
    '0'   P-B             none (straight)
    '2'   P-O-B           the two base cells on the segment
    '3f'  P-O-m0-B        base cells + the far cell at B against side BQ
    '3b'  P-m1-O-B        base cells + the near cell at P against side PQ
    '4'   P-m1-O-m0-B     base cells + both
    '6'   P-Q-B           the whole triangle

Altitude-direction sides run straight: the altitude line itself already
separates cells exactly.  A region is the set of cells whose (exact)
centroid lies strictly inside the resulting jagged polygon; membership is
decided by an integer-exact even-odd ray cast.

The tooth patterns of the built-in families are locked by two independent
validators: the hexagonal dungeon cell-count formula, and unit-weight
tiling counts against the closed product formulas.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .lattice import (
    BLACK,
    DOWN,
    UP,
    CellRef,
    ExactPoint,
    LatticePoint,
    cell_centroid,
    cell_partners,
    chirality,
    midpoint,
    tri_cells,
    vertex_point,
)

SCHEMA_VERSION = 1

# Unit steps: lattice directions, and altitude (vertical) directions whose
# steps connect lattice points at distance sqrt(3).
DIRS: Dict[str, LatticePoint] = {
    "E": (1, 0), "NE": (0, 1), "NW": (-1, 1),
    "W": (-1, 0), "SW": (0, -1), "SE": (1, -1),
}
ALT: Dict[str, LatticePoint] = {"N": (-1, 2), "S": (1, -2)}


@dataclass(frozen=True)
class ContourParams:
    """Derived data of the five-sided contour with SW/SE/N/NE/NW/f sides."""
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    f_dir: str  # "N" or "S" (which way the closing side runs)
    valid: bool

    def sides(self) -> List[Tuple[str, int]]:
        return [("SW", self.a), ("SE", self.b), ("N", self.c),
                ("NE", self.d), ("NW", self.e), (self.f_dir, self.f)]


def contour(a: int, b: int, c: int) -> ContourParams:
    """Derived side lengths and validity of the contour."""
    if min(a, b, c) < 0:
        raise ValueError("contour parameters must be non-negative")
    d = 2 * b - a - 2 * c
    e = 3 * b - 2 * a - 2 * c
    f = abs(2 * a + c - 2 * b)
    f_dir = "N" if 2 * a + c - 2 * b > 0 else "S"
    valid = b >= 2 and d >= 0 and e >= 0
    return ContourParams(a, b, c, d, e, f, f_dir, valid)


@dataclass(frozen=True)
class Region:
    """A finite set of cells with family metadata."""
    family: str
    params: Tuple[int, ...]
    cells: frozenset

    def __len__(self) -> int:
        return len(self.cells)

    def sorted_cells(self) -> List[CellRef]:
        return sorted(self.cells)


@dataclass(frozen=True)
class RegionReport:
    cell_count: int
    black_count: int
    white_count: int
    connected: bool
    tile_capacity: int


# ---------------------------------------------------------------------------
# Jagged polygon construction and exact membership
# ---------------------------------------------------------------------------

def _rot60(u: LatticePoint) -> LatticePoint:
    return (-u[1], u[0] + u[1])


def _rot300(u: LatticePoint) -> LatticePoint:
    return (u[0] + u[1], -u[0])


def _tooth_points(p: LatticePoint, u: LatticePoint, code: str) -> List[ExactPoint]:
    """Interior polygon vertices of one tooth on segment p -> p+u."""
    if code == "0":
        return []
    outward = code.endswith("o")
    base = code[:-1] if outward else code
    b = (p[0] + u[0], p[1] + u[1])
    q = _rot300(u) if outward else _rot60(u)
    q = (p[0] + q[0], p[1] + q[1])
    vp, vb, vq = vertex_point(p), vertex_point(b), vertex_point(q)
    center = ((vp[0] + vb[0] + vq[0]) // 3, (vp[1] + vb[1] + vq[1]) // 3)
    m1 = midpoint(vp, vq)
    m0 = midpoint(vb, vq)
    if base == "2":
        return [center]
    if base == "3f":
        return [center, m0]
    if base == "3b":
        return [m1, center]
    if base == "4":
        return [m1, center, m0]
    if base == "6":
        return [vq]
    raise ValueError(f"unknown tooth code {code!r}")


def _vertical_tooth_points(p: LatticePoint, step: LatticePoint,
                           code: str) -> List[ExactPoint]:
    """Interior polygon vertices of one altitude-direction unit p -> p+step.

    The altitude segment crosses two triangles (lower through its apex at p,
    upper through its apex at p+step), splitting each in half.  A code may
    additionally bite one boundary cell out of either triangle on either
    side: 'l'/'u' pick the lower/upper triangle, 'e'/'w' the side bitten
    relative to northward travel.  '0' is the straight line.
    """
    if code == "0":
        return []
    a = vertex_point(p)
    b = vertex_point((p[0] + step[0], p[1] + step[1]))
    m = midpoint(a, b)
    lower, upper = (a, b) if step[1] > 0 else (b, a)
    # triangle center: the average of the apex and the two crossed-side ends
    def center(apex):
        return ((apex[0] + 2 * m[0]) // 3, (apex[1] + 2 * m[1]) // 3)
    def sidepoint(apex, east: bool):
        # midpoint of the triangle side leaving the apex eastward/westward:
        # the side endpoint sits at m +- half a lattice unit horizontally
        corner = (m[0] + (18 if east else -18), m[1])
        return ((apex[0] + corner[0]) // 2, (apex[1] + corner[1]) // 2)
    half, where = code[0], code[1]
    east = where == "e"
    if half == "l":
        path = [sidepoint(lower, east), center(lower), m]
    elif half == "u":
        path = [m, center(upper), sidepoint(upper, east)]
    else:
        raise ValueError(f"unknown vertical tooth code {code!r}")
    if step[1] < 0:
        path.reverse()
    return path


SideSpec = Tuple[str, int, object]  # (direction, length, codes or "straight")


def jag_polygon(start: LatticePoint, sides: Sequence[SideSpec]) -> List[ExactPoint]:
    """The closed jagged boundary polygon for the given side specs."""
    pts: List[ExactPoint] = [vertex_point(start)]
    cur = start
    for dirname, length, codes in sides:
        if length == 0:
            continue
        if dirname in ALT:
            step = ALT[dirname]
            if codes == "straight":
                codes = ["0"] * length
            if len(codes) != length:
                raise ValueError("one tooth code per unit segment required")
            for i in range(length):
                pts.extend(_vertical_tooth_points(cur, step, codes[i]))
                cur = (cur[0] + step[0], cur[1] + step[1])
                pts.append(vertex_point(cur))
            continue
        u = DIRS[dirname]
        if codes == "straight":
            codes = ["0"] * length
        if len(codes) != length:
            raise ValueError("one tooth code per unit segment required")
        for i in range(length):
            pts.extend(_tooth_points(cur, u, codes[i]))
            cur = (cur[0] + u[0], cur[1] + u[1])
            pts.append(vertex_point(cur))
    if cur != start:
        raise ValueError(f"contour does not close (ended at {cur})")
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    return pts


def point_in_polygon(pt: ExactPoint, poly: Sequence[ExactPoint]) -> bool:
    """Integer-exact even-odd test; pt must not lie on the boundary."""
    ax, ay = pt
    inside = False
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        if y1 == y2:
            continue
        if (y1 <= ay) != (y2 <= ay):
            num = (x1 - ax) * (y2 - y1) + (x2 - x1) * (ay - y1)
            if num == 0:
                raise ValueError("query point on the polygon boundary")
            if (num > 0) == (y2 > y1):
                inside = not inside
    return inside


def cells_inside(poly: Sequence[ExactPoint]) -> frozenset:
    """All cells whose centroid lies strictly inside the polygon."""
    bs = [b for _, b in poly]
    as_ = [a for a, _ in poly]
    vmin = min(bs) // 18 - 2
    vmax = max(bs) // 18 + 2
    cells = []
    for v in range(vmin, vmax + 1):
        umin = (min(as_) - 18 * v) // 36 - 2
        umax = (max(as_) - 18 * v) // 36 + 2
        for u in range(umin, umax + 1):
            for o in (UP, DOWN):
                for cell in tri_cells((u, v, o)):
                    if point_in_polygon(cell_centroid(cell), poly):
                        cells.append(cell)
    return frozenset(cells)


def region_from_sides(family: str, params: Tuple[int, ...],
                      start: LatticePoint, sides: Sequence[SideSpec]) -> Region:
    return Region(family, params, cells_inside(jag_polygon(start, sides)))


# ---------------------------------------------------------------------------
# Validation and persistence
# ---------------------------------------------------------------------------

def validate(region: Region) -> RegionReport:
    cells = region.cells
    black = sum(1 for c in cells if chirality(c) == BLACK)
    white = len(cells) - black
    connected = _connected(cells)
    return RegionReport(
        cell_count=len(cells),
        black_count=black,
        white_count=white,
        connected=connected,
        tile_capacity=len(cells) // 2,
    )


def _connected(cells: frozenset) -> bool:
    if not cells:
        return True
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        c = stack.pop()
        for p, _ in cell_partners(c):
            if p in cells and p not in seen:
                seen.add(p)
                stack.append(p)
    return len(seen) == len(cells)


def region_to_obj(region: Region) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "family": region.family,
        "params": list(region.params),
        "cells": [list(c) for c in region.sorted_cells()],
    }


def save(region: Region, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(region_to_obj(region), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def region_from_obj(obj: dict) -> Region:
    family = obj["family"]
    params = tuple(int(p) for p in obj["params"])
    raw = obj["cells"]
    cells = []
    for item in raw:
        if len(item) != 5:
            raise ValueError(f"malformed cell entry {item!r}")
        u, v, o, k, s = map(int, item)
        if o not in (UP, DOWN) or not (0 <= k < 3) or not (0 <= s < 3):
            raise ValueError(f"cell fields out of range in {item!r}")
        if s == k:
            raise ValueError(f"invalid cell {item!r}: side equals vertex")
        cells.append((u, v, o, k, s))
    if len(set(cells)) != len(cells):
        raise ValueError("duplicate cell in region file")
    return Region(family, params, frozenset(cells))


def load(path: str) -> Region:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return region_from_obj(obj)
