"""The dilinear world over Z[sqrt(sigma)], sigma in {2, 3}.

Faces of the (2*sigma, inf) topograph are red divectors (u, v*sqrt(sigma))
and blue divectors (u*sqrt(sigma), v); edges are dibases (opposite-colour
pairs forming a dilinear matrix of determinant +-1); points are pinwheels of
2*sigma faces generated by x_{k+1} = sqrt(sigma) * x_k - x_{k-1}.

A binary quadratic diform a x^2 + b sqrt(sigma) x y + c y^2 takes integer
values on divectors; its rivers and wells are navigated here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classical import reduce_definite
from .errors import (
    ClassificationError,
    DibasisError,
    PreconditionError,
    SquareDiscriminantError,
)
from .bqf import is_square

RED = "red"
BLUE = "blue"


@dataclass(frozen=True)
class Divector:
    """Coordinates (u, v) meaning (u, v*sqrt(sigma)) if red, else
    (u*sqrt(sigma), v)."""

    color: str
    u: int
    v: int

    def lax(self) -> "Divector":
        if self.u < 0 or (self.u == 0 and self.v < 0):
            return Divector(self.color, -self.u, -self.v)
        return self

    def __neg__(self) -> "Divector":
        return Divector(self.color, -self.u, -self.v)

    def sub(self, other: "Divector") -> "Divector":
        assert self.color == other.color
        return Divector(self.color, self.u - other.u, self.v - other.v)

    def add(self, other: "Divector") -> "Divector":
        assert self.color == other.color
        return Divector(self.color, self.u + other.u, self.v + other.v)

    def times_sqrt(self, sigma: int) -> "Divector":
        """Multiplication by sqrt(sigma) swaps the colour."""
        if self.color == RED:
            return Divector(BLUE, self.u, sigma * self.v)
        return Divector(RED, sigma * self.u, self.v)

    def is_primitive(self, sigma: int) -> bool:
        if self.color == RED:
            return math.gcd(self.u, sigma * self.v) == 1
        return math.gcd(sigma * self.u, self.v) == 1


def dibasis_det(r: Divector, b: Divector, sigma: int) -> int:
    """Determinant of the dilinear matrix with rows r (red) and b (blue)."""
    assert r.color == RED and b.color == BLUE
    return r.u * b.v - sigma * r.v * b.u


def is_dibasis(d1: Divector, d2: Divector, sigma: int) -> bool:
    if d1.color == d2.color:
        return False
    r, b = (d1, d2) if d1.color == RED else (d2, d1)
    return dibasis_det(r, b, sigma) in (1, -1)


@dataclass(frozen=True)
class Pinwheel:
    """Cyclically ordered faces around a point, colours alternating."""

    sigma: int
    faces: tuple  # 2*sigma signed divectors; adjacent pairs are dibases

    def key(self):
        """Canonical label: lax faces up to rotation and reflection."""
        laxed = tuple(f.lax() for f in self.faces)
        keys = [(f.color, f.u, f.v) for f in laxed]
        n = len(keys)
        best = None
        for seq in (keys, keys[::-1]):
            for i in range(n):
                rot = tuple(seq[i:] + seq[:i])
                if best is None or rot < best:
                    best = rot
        return best

    def edges(self):
        n = len(self.faces)
        return [(self.faces[i], self.faces[(i + 1) % n]) for i in range(n)]


def pinwheel_complete(d1: Divector, d2: Divector, sigma: int) -> Pinwheel:
    """The pinwheel generated by the ordered dibasis (d1, d2)."""
    if not is_dibasis(d1, d2, sigma):
        raise DibasisError(f"{d1}, {d2} do not form a dibasis")
    faces = [d1, d2]
    for _ in range(2 * sigma - 2):
        faces.append(faces[-1].times_sqrt(sigma).sub(faces[-2]))
    closure = faces[-1].times_sqrt(sigma).sub(faces[-2])
    assert closure == -d1, "pinwheel recurrence failed to close"
    for i in range(2 * sigma):
        assert is_dibasis(faces[i], faces[(i + 1) % (2 * sigma)], sigma)
    return Pinwheel(sigma, tuple(faces))


@dataclass(frozen=True)
class BQD:
    """Binary quadratic diform Q(x, y) = a x^2 + b sqrt(sigma) x y + c y^2."""

    sigma: int
    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.sigma * (self.b * self.b * self.sigma - 4 * self.a * self.c)

    def __call__(self, d: Divector) -> int:
        s, a, b, c = self.sigma, self.a, self.b, self.c
        if d.color == RED:
            return a * d.u * d.u + b * s * d.u * d.v + c * s * d.v * d.v
        return a * s * d.u * d.u + b * s * d.u * d.v + c * d.v * d.v

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(abs(self.a), abs(self.b)), abs(self.c)) == 1

    def red_blue(self):
        s = self.sigma
        return (self.a, self.b * s, self.c * s), (self.a * s, self.b * s, self.c)


@dataclass(frozen=True)
class DiCellValues:
    u: int
    v: int
    e: int
    f: int
    e2: int
    f2: int
    m: int | None
    n: int | None
    m2: int | None
    n2: int | None
    step: int


def dicell_values(q: BQD, r: Divector, b: Divector) -> DiCellValues:
    """Flanking values of the edge {r, b}; e/e' (and m/m' for sigma = 3) sit
    around the pinwheel generated by (r, b), f/f' (n/n') around the other."""
    sigma = q.sigma
    if r.color != RED:
        r, b = b, r
    if not is_dibasis(r, b, sigma):
        raise DibasisError("cell values need a dibasis")
    sr = r.times_sqrt(sigma)
    sb = b.times_sqrt(sigma)
    u, v = q(r), q(b)
    e, f = q(sr.sub(b)), q(sr.add(b))
    e2, f2 = q(r.sub(sb)), q(r.add(sb))
    m = n = m2 = n2 = None
    if sigma == 3:
        r2 = Divector(RED, 2 * r.u, 2 * r.v)
        b2 = Divector(BLUE, 2 * b.u, 2 * b.v)
        m, n = q(r2.sub(sb)), q(r2.add(sb))
        m2, n2 = q(sr.sub(b2)), q(sr.add(b2))
    step = (f - e) // 2
    return DiCellValues(u, v, e, f, e2, f2, m, n, m2, n2, step)


STANDARD_DIBASIS = (Divector(RED, 1, 0), Divector(BLUE, 0, 1))


def _vertex(seed1: Divector, seed2: Divector, sigma: int) -> Pinwheel:
    return pinwheel_complete(seed1, seed2, sigma)


def _other_vertex(p: Divector, q: Divector, vertex: Pinwheel, sigma: int) -> Pinwheel:
    """The second pinwheel containing the edge {p, q}."""
    for cand in (_vertex(p, -q, sigma), _vertex(p, q, sigma)):
        if cand.key() != vertex.key():
            return cand
    raise DibasisError("edge has no second vertex")


def _vertex_weight(q: BQD, vertex: Pinwheel) -> int:
    return sum(q(f) for f in vertex.faces)


def _incident_edges(vertex: Pinwheel):
    return vertex.edges()


def diform_well(q: BQD, start=None) -> dict:
    """Descend the climbing flow of a positive-definite diform to its source.

    Returns the source pinwheel (faces and values), the flat edges at the
    source, and the classically reduced pair for Q_red, Q_blue.
    """
    if not (q.a > 0 and q.discriminant() < 0):
        raise ClassificationError("well descent needs a positive-definite diform")
    sigma = q.sigma
    r, b = start or STANDARD_DIBASIS
    vertex = _vertex(r, b, sigma)
    weight = _vertex_weight(q, vertex)
    for _ in range(10 ** 6):
        best = None
        for p, s in _incident_edges(vertex):
            nb = _other_vertex(p, s, vertex, sigma)
            w = _vertex_weight(q, nb)
            if w < weight and (best is None or w < best[0]
                               or (w == best[0] and nb.key() < best[1].key())):
                best = (w, nb)
        if best is None:
            break
        weight, vertex = best[0], best[1]
    else:
        raise ClassificationError("well descent did not terminate")
    flats = []
    for p, s in _incident_edges(vertex):
        nb = _other_vertex(p, s, vertex, sigma)
        if _vertex_weight(q, nb) == weight:
            flats.append(tuple(sorted([vertex.key(), nb.key()])))
    red, blue = q.red_blue()
    return {
        "source": vertex,
        "source_values": tuple(q(f) for f in vertex.faces),
        "flat_edges": tuple(sorted(set(flats))),
        "reduced_red": reduce_definite(red),
        "reduced_blue": reduce_definite(blue),
    }


def _find_river_edge(q: BQD):
    """A dibasis whose faces carry opposite signs, positive face first."""
    sigma = q.sigma
    vertex = _vertex(*STANDARD_DIBASIS, sigma)
    for _ in range(10 ** 6):
        vals = [q(f) for f in vertex.faces]
        if 0 in vals:
            raise SquareDiscriminantError("diform represents zero")
        n = len(vals)
        for i in range(n):
            a, b = vals[i], vals[(i + 1) % n]
            if a > 0 > b:
                return vertex.faces[i], vertex.faces[(i + 1) % n], vertex
            if b > 0 > a:
                return vertex.faces[(i + 1) % n], vertex.faces[i], vertex
        sign = 1 if vals[0] > 0 else -1
        weight = sign * sum(vals)
        best = None
        for p, s in _incident_edges(vertex):
            nb = _other_vertex(p, s, vertex, sigma)
            w = sign * _vertex_weight(q, nb)
            if w < weight and (best is None or w < best[0]):
                best = (w, nb)
        if best is None:
            raise ClassificationError("no descent toward the river")
        vertex = best[1]
    raise ClassificationError("river search did not terminate")


@dataclass(frozen=True)
class DiRiverStep:
    pos: Divector
    neg: Divector
    bend: bool


@dataclass(frozen=True)
class DiRiverPeriod:
    steps: tuple
    automorph: tuple  # 2x2 matrix over Z[sqrt(sigma)], entries (x, y) pairs
    mu: int | None
    witness: Divector | None
    exceptional: bool
    form: BQD


def _edge_is_bend(q: BQD, p: Divector, s: Divector) -> bool:
    cv = dicell_values(q, p, s)
    if cv.e * cv.f < 0 or cv.e2 * cv.f2 < 0:
        return True
    if q.sigma == 3 and (cv.m * cv.n < 0 or cv.m2 * cv.n2 < 0):
        return True
    return False


def _raw_coords(d: Divector):
    """(x, y) with each component as (integer part, sqrt(sigma) part)."""
    if d.color == RED:
        return ((d.u, 0), (0, d.v))
    return ((0, d.u), (d.v, 0))


def _qre_mul(a, b, sigma):
    return (a[0] * b[0] + sigma * a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _qre_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _qre_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _change_of_dibasis(e0, e1, sigma):
    """T over Z[sqrt(sigma)] with T e0 = e1 (columnwise), when det e0 = +-1."""
    (p0, q0), (p1, q1) = e0, e1
    m0 = (_raw_coords(p0), _raw_coords(q0))  # columns p0, q0
    c0 = ((m0[0][0], m0[1][0]), (m0[0][1], m0[1][1]))  # row-major
    d = _qre_sub(_qre_mul(c0[0][0], c0[1][1], sigma),
                 _qre_mul(c0[0][1], c0[1][0], sigma))
    if d not in ((1, 0), (-1, 0)):
        return None
    sgn = d[0]

    def scl(v):
        return (sgn * v[0], sgn * v[1])

    inv = ((scl(c0[1][1]), scl((-c0[0][1][0], -c0[0][1][1]))),
           (scl((-c0[1][0][0], -c0[1][0][1])), scl(c0[0][0])))
    m1 = (_raw_coords(p1), _raw_coords(q1))
    c1 = ((m1[0][0], m1[1][0]), (m1[0][1], m1[1][1]))
    t = tuple(
        tuple(
            _qre_add(_qre_mul(c1[i][0], inv[0][j], sigma),
                     _qre_mul(c1[i][1], inv[1][j], sigma))
            for j in range(2)
        )
        for i in range(2)
    )
    return t


def _preserves_form(t, q: BQD) -> bool:
    """Exact Gram check: T^t G T == G with G = [[2a, b*sqrt(s)], [b*sqrt(s), 2c]]."""
    s = q.sigma
    g11, g12, g22 = (2 * q.a, 0), (0, q.b), (2 * q.c, 0)

    def mul(a, b):
        return _qre_mul(a, b, s)

    t11, t12 = t[0]
    t21, t22 = t[1]
    # entries of T^t G T
    def quad(x1, y1, x2, y2):
        # (x1, y1)^t G (x2, y2)
        acc = mul(mul(x1, g11), x2)
        acc = _qre_add(acc, mul(mul(x1, g12), y2))
        acc = _qre_add(acc, mul(mul(y1, g12), x2))
        acc = _qre_add(acc, mul(mul(y1, g22), y2))
        return acc

    col1 = (t11, t21)
    col2 = (t12, t22)
    return (
        quad(*col1, *col1) == g11
        and quad(*col1, *col2) == g12
        and quad(*col2, *col2) == g22
    )


def is_dilinear(t, sigma: int) -> bool:
    """Does the matrix (entries as (x, y) pairs) have a dilinear pattern?"""
    (a, b), (c, d) = t
    plus = a[1] == 0 and d[1] == 0 and b[0] == 0 and c[0] == 0
    minus = a[0] == 0 and d[0] == 0 and b[1] == 0 and c[1] == 0
    return plus or minus


def diform_river(q: BQD, max_steps: int = 10 ** 6) -> DiRiverPeriod:
    """Trace one river period; classify bends and report the minimum.

    A fully straight period marks the exceptional forms excluded by the
    minimum theorems.
    """
    if not q.is_primitive():
        raise PreconditionError("river analysis expects a primitive diform")
    d = q.discriminant()
    if d <= 0 or is_square_diform_disc(q):
        raise SquareDiscriminantError("need a nondegenerate indefinite diform")
    sigma = q.sigma
    p, neg, vertex = _find_river_edge(q)
    p0, n0 = p, neg
    steps = []
    face_values = {}

    def note(face):
        face_values.setdefault(
            (face.color, face.lax().u, face.lax().v), q(face)
        )

    for _ in range(max_steps):
        steps.append(DiRiverStep(p, neg, _edge_is_bend(q, p, neg)))
        for f in vertex.faces:
            note(f)
        # continuation: the unique other sign-separating adjacent pair
        vals = [q(f) for f in vertex.faces]
        n = len(vals)
        crossings = []
        for i in range(n):
            x, y = vertex.faces[i], vertex.faces[(i + 1) % n]
            pair = {x.lax(), y.lax()}
            if pair == {p.lax(), neg.lax()}:
                continue
            if vals[i] * vals[(i + 1) % n] < 0:
                crossings.append((x, y))
        if len(crossings) != 1:
            raise ClassificationError(
                f"river is not a single line at a vertex ({len(crossings)} exits)"
            )
        x, y = crossings[0]
        p, neg = (x, y) if q(x) > 0 else (y, x)
        vertex = _other_vertex(p, neg, vertex, sigma)
        if (q(p), q(neg)) == (q(p0), q(n0)) and (p, neg) != (p0, n0):
            t = _translation_automorph((p0, n0), (p, neg), q)
            if t is not None:
                bends = [s for s in steps if s.bend]
                exceptional = not bends
                mu = wit = None
                if not exceptional:
                    wit_key = min(face_values, key=lambda k: (abs(face_values[k]), k))
                    mu = abs(face_values[wit_key])
                    wit = Divector(*wit_key)
                return DiRiverPeriod(tuple(steps), t, mu, wit, exceptional, q)
    raise ClassificationError("river period not found")


def _qre_det(t, sigma):
    return _qre_sub(_qre_mul(t[0][0], t[1][1], sigma),
                    _qre_mul(t[0][1], t[1][0], sigma))


def _translation_automorph(e0, e1, q: BQD):
    """An orientation-preserving dilinear map carrying the lax edge e0 to e1
    and fixing Q, or None.  Sign flips of e0 reach the same lax edge; maps of
    determinant -1 are reflections of the river, not translations."""
    sigma = q.sigma
    p0, n0 = e0
    for flip in (n0, -n0):
        t = _change_of_dibasis((p0, flip), e1, sigma)
        if (
            t is not None
            and _qre_det(t, sigma) == (1, 0)
            and is_dilinear(t, sigma)
            and _preserves_form(t, q)
        ):
            return t
    return None


def is_square_diform_disc(q: BQD) -> bool:
    return is_square(q.discriminant())


# --- dilinear / congruence conjugation checks ------------------------------

def _dl_plus_samples(sigma: int, count: int, seed: int = 7):
    """Random-ish DL2+ elements built from generators of the + pattern."""
    import random

    rng = random.Random(seed)

    # matrices as ((x, y) pairs); the + pattern has integer diagonal and
    # sqrt(sigma)-multiple off-diagonal entries
    def m(a, b, c, d):
        return ((a, b), (c, d))

    t_up = m((1, 0), (0, 1), (0, 0), (1, 0))
    t_lo = m((1, 0), (0, 0), (0, 1), (1, 0))
    flip = m((-1, 0), (0, 0), (0, 0), (1, 0))
    gens = [t_up, t_lo, flip]
    out = []
    for _ in range(count):
        acc = m((1, 0), (0, 0), (0, 0), (1, 0))
        for _ in range(rng.randint(1, 8)):
            g = rng.choice(gens)
            acc = tuple(
                tuple(
                    _qre_add(
                        _qre_mul(acc[i][0], g[0][j], sigma),
                        _qre_mul(acc[i][1], g[1][j], sigma),
                    )
                    for j in range(2)
                )
                for i in range(2)
            )
        out.append(acc)
    return out


def verify_gamma0_conjugation(sigma: int, count: int = 100) -> dict:
    """Conjugation by diag(1, sqrt(sigma)) carries DL2+ into Gamma_0(sigma)
    and back; verified on generated samples in both directions."""
    import random

    samples = _dl_plus_samples(sigma, count)
    into = 0
    for mat in samples:
        (a, b), (c, d) = mat
        assert a[1] == 0 and d[1] == 0 and b[0] == 0 and c[0] == 0
        # g M g^-1 = [[a, b/sqrt(s)], [c*sqrt(s), d]]
        a2, b2, c2, d2 = a[0], b[1], c[1] * sigma, d[0]
        if a2 * d2 - b2 * c2 in (1, -1) and c2 % sigma == 0:
            into += 1
    rng = random.Random(11)
    gens = (((1, 1), (0, 1)), ((1, 0), (sigma, 1)), ((-1, 0), (0, 1)))
    back = 0
    for _ in range(count):
        acc = ((1, 0), (0, 1))
        for _ in range(rng.randint(1, 8)):
            g = rng.choice(gens)
            acc = (
                (acc[0][0] * g[0][0] + acc[0][1] * g[1][0],
                 acc[0][0] * g[0][1] + acc[0][1] * g[1][1]),
                (acc[1][0] * g[0][0] + acc[1][1] * g[1][0],
                 acc[1][0] * g[0][1] + acc[1][1] * g[1][1]),
            )
        (a2, b2), (c2, d2) = acc
        # g^-1 M g = [[a, b*sqrt(s)], [c/sqrt(s), d]]
        if c2 % sigma == 0:
            back += 1
    return {
        "sigma": sigma,
        "dl_plus_into_gamma0": into,
        "dl_plus_samples": len(samples),
        "gamma0_back_into_dl_plus": back,
        "gamma0_samples": count,
        "ok": into == len(samples) and back == count,
    }
