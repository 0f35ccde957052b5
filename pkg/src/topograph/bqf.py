"""Binary quadratic forms over Z and their local cell identities."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lax import Superbase, Vec, vadd, vsub

POSITIVE_DEFINITE = "positive-definite"
NEGATIVE_DEFINITE = "negative-definite"
INDEFINITE = "indefinite-nondegenerate"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class BQF:
    a: int
    b: int
    c: int

    def __call__(self, v: Vec) -> int:
        x, y = v
        return self.a * x * x + self.b * x * y + self.c * y * y

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(abs(self.a), abs(self.b)), abs(self.c)) == 1

    def transform(self, m) -> "BQF":
        """Coefficients of Q((x,y) -> M.(x,y)); columns of m are the new basis."""
        (p, r), (q, s) = m
        a2 = self((p, q))
        c2 = self((r, s))
        b2 = self((p + r, q + s)) - a2 - c2
        return BQF(a2, b2, c2)


def evaluate(q: BQF, v: Vec) -> int:
    return q(v)


def discriminant(q: BQF) -> int:
    return q.discriminant()


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def classify(q: BQF) -> str:
    d = q.discriminant()
    if d < 0:
        return POSITIVE_DEFINITE if q.a > 0 else NEGATIVE_DEFINITE
    if is_square(d):
        return DEGENERATE
    return INDEFINITE


@dataclass(frozen=True)
class CellValues:
    """Values around one cell: basis values u, v, flanks e = Q(u-v), f = Q(u+v).

    Invariants: e + f = 2(u + v) and disc = (u - v)^2 - e*f.
    """

    u: int
    v: int
    e: int
    f: int
    w: int
    edge: tuple[Vec, Vec]


def cell_values(q: BQF, s: Superbase, edge_index: int) -> CellValues:
    vs = s.vectors
    p, r = vs[(edge_index + 1) % 3], vs[(edge_index + 2) % 3]
    u, v = q(p), q(r)
    e, f = q(vsub(p, r)), q(vadd(p, r))
    w = q(vs[edge_index])
    return CellValues(u, v, e, f, w, (p, r))


TOWARD_F = "toward-f"
TOWARD_E = "toward-e"
FLAT = "flat"


def arrow(q: BQF, s: Superbase, edge_index: int) -> str:
    cv = cell_values(q, s, edge_index)
    if cv.f > cv.e:
        return TOWARD_F
    if cv.e > cv.f:
        return TOWARD_E
    return FLAT
