"""Topograph-driven reduction: wells for definite forms, rivers for
indefinite ones, Pell solutions and minima bounds.

The routines here navigate superbases directly and never call the classical
reduction route; the two are compared in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bqf import BQF, INDEFINITE, POSITIVE_DEFINITE, classify
from .errors import ClassificationError, SquareDiscriminantError
from .lax import (
    STANDARD_SUPERBASE,
    Superbase,
    Vec,
    det,
    lax,
    normalize_superbase,
    vadd,
    vsub,
)

TRIAD_WELL = "triad-well"
CELL_WELL = "cell-well"


@dataclass(frozen=True)
class Well:
    kind: str
    values: tuple[int, int, int]  # sorted u <= v <= w
    vectors: tuple[Vec, Vec, Vec]  # signed, matching values, summing to zero
    orientation: str  # positive / negative / ambiguous


@dataclass(frozen=True)
class MinimumReport:
    mu: int
    witness: Vec
    disc: int


@dataclass(frozen=True)
class RiverPeriod:
    edges: tuple  # ((pos_vec, neg_vec), ...) signed, Q-positive first
    bank: tuple  # ((face_vec, value), ...) the third face at each vertex
    automorph: tuple  # 2x2 integer matrix translating the river one period
    form: BQF


def _descend(q: BQF, start: Superbase):
    """Follow strictly decreasing edges to the flow source. Returns the final
    signed vector triple."""
    vs = list(start.vectors)
    vals = [q(v) for v in vs]
    while True:
        best = None
        for j in range(3):
            p, r = vs[(j + 1) % 3], vs[(j + 2) % 3]
            e = 2 * (vals[(j + 1) % 3] + vals[(j + 2) % 3]) - vals[j]
            drop = vals[j] - e
            if drop > 0 and (best is None or drop > best[0]):
                best = (drop, j, p, r, e)
        if best is None:
            return vs, vals
        _, j, p, r, e = best
        # {p, r, p-r} with p flipped keeps the zero-sum convention
        vs[j] = vsub(p, r)
        vs[(j + 1) % 3] = (-p[0], -p[1])
        vals[j] = e


def find_well(q: BQF, start: Superbase | None = None) -> Well:
    if classify(q) != POSITIVE_DEFINITE:
        raise ClassificationError("well search needs a positive-definite form")
    vs, vals = _descend(q, start or STANDARD_SUPERBASE)
    order = sorted(range(3), key=lambda i: (vals[i], lax(vs[i])))
    u, v, w = (vals[i] for i in order)
    vecs = tuple(vs[i] for i in order)
    kind = CELL_WELL if u + v == w else TRIAD_WELL
    if u == v:
        orientation = "ambiguous"
    else:
        orientation = "positive" if det(vecs[0], vecs[1]) > 0 else "negative"
    return Well(kind, (u, v, w), vecs, orientation)


def gauss_reduced(q: BQF, start: Superbase | None = None) -> BQF:
    """Gauss-reduced form read off the well.

    In the basis (x_u, x_v) of the well the middle coefficient is
    w - u - v; flipping the second basis vector restores det +1 when needed,
    so b = -det(x_u, x_v) * (u + v - w) lands in the SL2 class of q.
    """
    well = find_well(q, start)
    u, v, w = well.values
    b = -det(well.vectors[0], well.vectors[1]) * (u + v - w)
    if b < 0 and (u == v or -b == u):
        b = -b
    return BQF(u, b, v)


def _require_indefinite(q: BQF) -> None:
    if classify(q) != INDEFINITE:
        raise SquareDiscriminantError(
            "river operations need an indefinite nondegenerate form"
        )


def find_river_edge(q: BQF) -> tuple[Vec, Vec]:
    """A lax basis whose faces carry opposite signs; Q-positive vector first."""
    _require_indefinite(q)
    vs = list(STANDARD_SUPERBASE.vectors)
    vals = [q(v) for v in vs]
    for _ in range(10 ** 6):
        for i in range(3):
            for j in range(3):
                if i != j and vals[i] > 0 > vals[j]:
                    return vs[i], vs[j]
        # all values share one sign: walk against the climbing flow
        sign = 1 if vals[0] > 0 else -1
        best = None
        for j in range(3):
            p, r = vs[(j + 1) % 3], vs[(j + 2) % 3]
            e = 2 * (vals[(j + 1) % 3] + vals[(j + 2) % 3]) - vals[j]
            drop = sign * (vals[j] - e)
            if best is None or drop > best[0]:
                best = (drop, j, p, r, e)
        _, j, p, r, e = best
        vs[j] = vsub(p, r)
        vs[(j + 1) % 3] = (-p[0], -p[1])
        vals[j] = e
    raise ClassificationError("river search did not terminate")


def trace_river(q: BQF) -> RiverPeriod:
    """Walk the river one full period; the period is certified by an exact
    Q-preserving change of basis (the automorph)."""
    _require_indefinite(q)
    p0, n0 = find_river_edge(q)
    p, n = p0, n0
    edges = []
    bank = []
    for _ in range(10 ** 6):
        edges.append((p, n))
        r = vadd(p, n)
        qr = q(r)
        bank.append((r, qr))
        if qr > 0:
            p, n = r, n
        elif qr < 0:
            p, n = p, r
        else:
            raise SquareDiscriminantError("form represents zero on the river")
        if q(p) == q(p0) and q(n) == q(n0) and (p, n) != (p0, n0):
            t = _change_of_basis(p0, n0, p, n)
            if t is not None and q.transform(t) == q:
                edges.append((p, n))
                return RiverPeriod(tuple(edges), tuple(bank), t, q)
    raise ClassificationError("river period not found")


def _change_of_basis(p0: Vec, n0: Vec, p1: Vec, n1: Vec):
    """Integer matrix with T p0 = p1, T n0 = n1, if unimodular."""
    d = det(p0, n0)
    if d not in (1, -1):
        return None
    # inverse of the column matrix [p0 n0]
    inv = ((n0[1] * d, -n0[0] * d), (-p0[1] * d, p0[0] * d))
    cols = ((p1[0], n1[0]), (p1[1], n1[1]))
    t = (
        (cols[0][0] * inv[0][0] + cols[0][1] * inv[1][0],
         cols[0][0] * inv[0][1] + cols[0][1] * inv[1][1]),
        (cols[1][0] * inv[0][0] + cols[1][1] * inv[1][0],
         cols[1][0] * inv[0][1] + cols[1][1] * inv[1][1]),
    )
    return t


def _period_faces(period: RiverPeriod):
    faces = {}
    for p, n in period.edges:
        for v in (p, n):
            faces.setdefault(lax(v), period.form(v))
    for r, qr in period.bank:
        faces.setdefault(lax(r), qr)
    return faces


def riverbends(q: BQF) -> list[BQF]:
    """Reduced forms read off the riverbend cells of one period.

    Each bend cell is reported in both orientations; the multiset matches the
    classical reduced cycle.
    """
    period = trace_river(q)
    out = []
    for p, n in period.edges[:-1]:
        u, v = q(p), q(n)
        f = q(vadd(p, n))
        e = q(vsub(p, n))
        if e * f < 0:
            b = det(p, n) * (f - e) // 2
            # the two det +1 readings of the cell; exactly one has b > 0
            for cand in (BQF(u, b, v), BQF(v, -b, u)):
                if cand.b > 0:
                    out.append(cand)
    return out


def minimum_nonzero(q: BQF) -> MinimumReport:
    """Minimum |Q| over the faces adjacent to one river period; by the
    climbing principle this is the global nonzero minimum."""
    period = trace_river(q)
    faces = _period_faces(period)
    mu_vec = min(faces, key=lambda v: (abs(faces[v]), v))
    return MinimumReport(abs(faces[mu_vec]), mu_vec, q.discriminant())


@dataclass(frozen=True)
class PellSolution:
    d: int
    x: int
    y: int
    automorph: tuple


def pell_solve(d: int) -> PellSolution:
    """Fundamental solution of x^2 - D y^2 = 1 from the river of x^2 - D y^2."""
    from .bqf import is_square

    if d < 2 or is_square(d):
        raise SquareDiscriminantError("need a nonsquare D >= 2")
    q = BQF(1, 0, -d)
    period = trace_river(q)
    candidates = []
    faces = _period_faces(period)
    for (x, y), val in faces.items():
        if val == 1 and y != 0:
            candidates.append((abs(x), abs(y)))
    tx, ty = period.automorph[0][0], period.automorph[1][0]
    tv = (abs(tx), abs(ty))
    if faces.get(lax((tx, ty)), q((tx, ty))) == 1 and ty != 0:
        candidates.append(tv)
    x, y = min(candidates)
    assert x * x - d * y * y == 1
    return PellSolution(d, x, y, period.automorph)
