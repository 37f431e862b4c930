"""Exact model of the G2 lattice: the triangular lattice with all altitudes drawn.

Coordinates
-----------
Lattice points are integer pairs ``(p, q)`` in the basis ``e1 = (1, 0)``,
``e2 = (1/2, sqrt(3)/2)``; the Euclidean point is ``p*e1 + q*e2``.

Unit triangles come in two orientations, each with a fixed vertex labeling::

    Up(u, v):   V0 = (u, v)        V1 = (u+1, v)    V2 = (u, v+1)
    Down(u, v): V0 = (u+1, v+1)    V1 = (u, v+1)    V2 = (u+1, v)

Side ``s`` is the side opposite vertex ``Vs``.  Both labelings list the
vertices counterclockwise, which keeps every formula below orientation-free.

Drawing the three altitudes cuts a unit triangle into six 30-60-90 cells,
the fundamental regions of the G2 lattice.  A cell is addressed by the
5-tuple ``(u, v, o, k, s)``: triangle ``(u, v, o)``, corner vertex ``Vk``,
adjacent side ``s != k``.  Its corners are ``Vk``, the midpoint of side
``s`` and the triangle center.

Each cell has one partner per edge kind; the union of the two cells is the
corresponding tile:

* ``OBTUSE``      same triangle, same side, the other vertex on that side
  (shared leg: center to side midpoint); the union is an obtuse triangle.
* ``KITE``        same triangle, same vertex, the other adjacent side
  (shared hypotenuse: center to vertex); the union is a kite.
* ``EQUILATERAL`` the mirror cell across side ``s`` in the neighboring
  triangle; the union is a small equilateral triangle.

All partner maps reduce to index arithmetic: the two non-``s`` indices sum
with ``s`` to 3, so the "other vertex on side s" is ``3 - s - k`` and the
"other side at vertex k" is ``3 - k - s``.

Planar geometry is exact.  ``ExactPoint (A, B)`` denotes the Euclidean
point ``(A/36, B*sqrt(3)/36)``; lattice vertices, side midpoints, triangle
centers and cell centroids all have integer ``(A, B)``.
"""

from __future__ import annotations

from typing import Iterator, Sequence, Tuple

LatticePoint = Tuple[int, int]
TriRef = Tuple[int, int, int]            # (u, v, orient)
CellRef = Tuple[int, int, int, int, int]  # (u, v, orient, k, s)
ExactPoint = Tuple[int, int]             # (A, B): the point (A/36, B*sqrt(3)/36)

UP, DOWN = 0, 1

OBTUSE, EQUILATERAL, KITE = 0, 1, 2
EDGE_KIND_NAMES = ("obtuse", "equilateral", "kite")
# Weight roles by kind: obtuse tiles carry x, equilateral y, kite z.

BLACK, WHITE = 0, 1


def vertex_point(p: LatticePoint) -> ExactPoint:
    """Exact planar position of a lattice point."""
    return (36 * p[0] + 18 * p[1], 18 * p[1])


def midpoint(p: ExactPoint, q: ExactPoint) -> ExactPoint:
    a, b = p[0] + q[0], p[1] + q[1]
    if a % 2 or b % 2:
        raise ValueError("midpoint not on the exact grid")
    return (a // 2, b // 2)


def tri_vertices(t: TriRef) -> Tuple[LatticePoint, LatticePoint, LatticePoint]:
    """The three corners V0, V1, V2 of a unit triangle (counterclockwise)."""
    u, v, o = t
    if o == UP:
        return ((u, v), (u + 1, v), (u, v + 1))
    return ((u + 1, v + 1), (u, v + 1), (u + 1, v))


def tri_center(t: TriRef) -> ExactPoint:
    u, v, o = t
    if o == UP:
        return (36 * u + 18 * v + 18, 18 * v + 6)
    return (36 * u + 18 * v + 36, 18 * v + 12)


def tri_neighbor(t: TriRef, s: int) -> TriRef:
    """The unit triangle across side s."""
    u, v, o = t
    if o == UP:
        if s == 0:
            return (u, v, DOWN)
        if s == 1:
            return (u - 1, v, DOWN)
        return (u, v - 1, DOWN)
    if s == 0:
        return (u, v, UP)
    if s == 1:
        return (u + 1, v, UP)
    return (u, v + 1, UP)


def tri_cells(t: TriRef) -> Iterator[CellRef]:
    """The six cells of a unit triangle."""
    u, v, o = t
    for k in range(3):
        for s in range(3):
            if s != k:
                yield (u, v, o, k, s)


def obtuse_partner(c: CellRef) -> CellRef:
    u, v, o, k, s = c
    return (u, v, o, 3 - s - k, s)


def kite_partner(c: CellRef) -> CellRef:
    u, v, o, k, s = c
    return (u, v, o, k, 3 - k - s)


def equilateral_partner(c: CellRef) -> CellRef:
    u, v, o, k, s = c
    nu, nv, no = tri_neighbor((u, v, o), s)
    # Crossing side s swaps the two vertex labels on that side.
    return (nu, nv, no, 3 - s - k, s)


def cell_partners(c: CellRef) -> Tuple[Tuple[CellRef, int], ...]:
    """The three (partner, kind) pairs of a cell."""
    return (
        (obtuse_partner(c), OBTUSE),
        (equilateral_partner(c), EQUILATERAL),
        (kite_partner(c), KITE),
    )


def chirality(c: CellRef) -> int:
    """BLACK or WHITE; cells joined by any edge kind differ.

    Equals the handedness of the corner triple (Vk, side midpoint, center):
    with both triangle labelings counterclockwise, the class depends only on
    (s - k) mod 3.
    """
    return BLACK if (c[4] - c[3]) % 3 == 1 else WHITE


def cell_corners(c: CellRef) -> Tuple[ExactPoint, ExactPoint, ExactPoint]:
    """Exact corners (Vk, midpoint of side s, triangle center) of a cell."""
    u, v, o, k, s = c
    t = (u, v, o)
    verts = tri_vertices(t)
    pk = vertex_point(verts[k])
    i, j = [m for m in range(3) if m != s]
    ms = midpoint(vertex_point(verts[i]), vertex_point(verts[j]))
    return pk, ms, tri_center(t)


def cell_centroid(c: CellRef) -> ExactPoint:
    """Exact centroid of the 30-60-90 cell."""
    (a0, b0), (a1, b1), (a2, b2) = cell_corners(c)
    a, b = a0 + a1 + a2, b0 + b1 + b2
    if a % 3 or b % 3:
        raise ValueError("cell centroid not on the exact grid")
    return (a // 3, b // 3)


def cell_triangle(c: CellRef) -> TriRef:
    return (c[0], c[1], c[2])


# ---------------------------------------------------------------------------
# Lattice symmetries.  The point group fixing the origin vertex is dihedral
# of order 12; together with translations it acts on cells and preserves the
# partner structure (and flips or keeps chirality according to handedness).
# ---------------------------------------------------------------------------

def rot60_point(p: LatticePoint) -> LatticePoint:
    """Rotate a lattice point 60 degrees counterclockwise about the origin."""
    return (-p[1], p[0] + p[1])


def reflect_point(p: LatticePoint) -> LatticePoint:
    """Reflect a lattice point across the horizontal axis."""
    return (p[0] + p[1], -p[1])


def rot60_cell(c: CellRef) -> CellRef:
    u, v, o, k, s = c
    if o == UP:
        t = (-v - 1, u + v, DOWN)
    else:
        t = (-v - 1, u + v + 1, UP)
    return (t[0], t[1], t[2], (k + 2) % 3, (s + 2) % 3)


def reflect_cell(c: CellRef) -> CellRef:
    u, v, o, k, s = c
    perm = (1, 0, 2)
    if o == UP:
        t = (u + v, -v - 1, DOWN)
    else:
        t = (u + v + 1, -v - 1, UP)
    return (t[0], t[1], t[2], perm[k], perm[s])


def translate_cell(c: CellRef, du: int, dv: int) -> CellRef:
    return (c[0] + du, c[1] + dv, c[2], c[3], c[4])


def transform_cell(c: CellRef, sym: int) -> CellRef:
    """Apply one of the 12 point-group elements (sym = r + 6*m: rotate by
    60r degrees, then reflect if m)."""
    if not 0 <= sym < 12:
        raise ValueError("sym must be in 0..11")
    if sym >= 6:
        c = reflect_cell(c)
        sym -= 6
    for _ in range(sym):
        c = rot60_cell(c)
    return c


def transform_cells(cells: Sequence[CellRef], sym: int,
                    du: int = 0, dv: int = 0) -> frozenset:
    return frozenset(translate_cell(transform_cell(c, sym), du, dv)
                     for c in cells)
