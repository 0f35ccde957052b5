"""Class groups Cl(D) of primitive binary quadratic forms under Dirichlet
composition, the ambiguous class representing sigma, and the red/blue diform
class relation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .bqf import is_square
from .classical import (
    Form,
    content,
    cycle_fingerprint,
    indefinite_cycle,
    is_reduced_indefinite,
    reduce_definite,
)
from .errors import (
    DivisibilityError,
    InvalidDiscriminantError,
    NotPrimitiveError,
    PreconditionError,
)


def _validate_disc(d: int) -> None:
    if d == 0 or d % 4 not in (0, 1):
        raise InvalidDiscriminantError(f"{d} is not a discriminant")
    if d > 0 and is_square(d):
        raise InvalidDiscriminantError("positive square discriminants unsupported")


def principal_form(d: int) -> Form:
    k = d % 2
    return (1, k, (k * k - d) // 4)


def _enumerate_definite(d: int) -> list[Form]:
    out = []
    amax = math.isqrt(-d // 3) if d < -3 else 1
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (b < 0 and (-b == a or a == c)):
                continue
            if content((a, b, c)) != 1:
                continue
            out.append((a, b, c))
    return sorted(out)


def _enumerate_indefinite(d: int) -> list[Form]:
    """One canonical representative per cycle of reduced indefinite forms."""
    s = math.isqrt(d)
    reps = {}
    for b in range(1, s + 1):
        if (b - d) % 2:
            continue
        m = (d - b * b) // 4  # -ac > 0; parity makes this exact
        for a in _divisors(m):
            for aa in (a, -a):
                c = (b * b - d) // (4 * aa)
                f = (aa, b, c)
                if not is_reduced_indefinite(f, d):
                    continue
                if content(f) != 1:
                    continue
                fp = cycle_fingerprint(f)
                reps.setdefault(fp, min(fp))
    return sorted(reps.values())


def _divisors(m: int) -> list[int]:
    out = set()
    for a in range(1, math.isqrt(m) + 1):
        if m % a == 0:
            out.add(a)
            out.add(m // a)
    return sorted(out)


@dataclass
class ClassGroupTable:
    disc: int
    classes: list  # canonical labels: reduced form (d<0) or cycle fingerprint
    reps: list  # one concrete form per class
    table: list = field(default_factory=list)  # composition, index pairs

    @property
    def h(self) -> int:
        return len(self.classes)

    def class_index(self, form: Form) -> int:
        label = self._label(form)
        return self.classes.index(label)

    def _label(self, form: Form):
        if content(form) != 1:
            raise NotPrimitiveError(f"{form} is imprimitive")
        a, b, c = form
        if b * b - 4 * a * c != self.disc:
            raise InvalidDiscriminantError("wrong discriminant")
        if self.disc < 0:
            return reduce_definite(form)
        return cycle_fingerprint(form)

    def identity_index(self) -> int:
        return self.class_index(principal_form(self.disc))

    def compose_indices(self, i: int, j: int) -> int:
        if self.table:
            return self.table[i][j]
        return self.class_index(compose(self.reps[i], self.reps[j]))

    def build_table(self) -> None:
        self.table = [
            [self.class_index(compose(f, g)) for g in self.reps] for f in self.reps
        ]

    def to_json(self) -> dict:
        a_index = {}
        for sigma in (2, 3):
            if is_diform_discriminant(sigma, self.disc):
                a_index[str(sigma)] = self.class_index(
                    ambiguous_form_A(sigma, self.disc)
                )
            else:
                a_index[str(sigma)] = None
        return {
            "delta": self.disc,
            "h": self.h,
            "classes": [list(f) for f in self.reps],
            "table": self.table,
            "A_class_index": a_index,
        }


def enumerate_classes(d: int) -> ClassGroupTable:
    _validate_disc(d)
    if d < 0:
        classes = _enumerate_definite(d)
        return ClassGroupTable(d, classes, list(classes))
    reps = _enumerate_indefinite(d)
    return ClassGroupTable(d, [cycle_fingerprint(f) for f in reps], reps)


def _represented_coprime_to(form: Form, m: int) -> tuple[Form, tuple[int, int]]:
    """An SL2-equivalent form whose leading coefficient is coprime to m."""
    a, b, c = form
    for bound in (3, 6, 12, 25):
        for x, y in product(range(-bound, bound + 1), repeat=2):
            if math.gcd(x, y) != 1:
                continue
            val = a * x * x + b * x * y + c * y * y
            if val != 0 and math.gcd(val, m) == 1:
                # complete (x, y) to an SL2 matrix as its first column
                g, r, s = _ext_gcd(x, y)
                mtx = ((x, -s), (y, r))
                assert mtx[0][0] * mtx[1][1] - mtx[0][1] * mtx[1][0] == 1
                a2 = val
                c2 = a * s * s - b * s * r + c * r * r
                b2 = 2 * a * x * (-s) + b * (x * r - s * y) + 2 * c * y * r
                return (a2, b2, c2), (x, y)
    raise PreconditionError("no coprime representative found")


def _ext_gcd(x: int, y: int):
    if y == 0:
        return abs(x), (1 if x > 0 else -1), 0
    g, p, q = _ext_gcd(y, x % y)
    return g, q, p - (x // y) * q


def compose(f1: Form, f2: Form) -> Form:
    """Dirichlet composition of primitive forms of one discriminant."""
    if content(f1) != 1 or content(f2) != 1:
        raise NotPrimitiveError("composition needs primitive forms")
    d = f1[1] ** 2 - 4 * f1[0] * f1[2]
    if f2[1] ** 2 - 4 * f2[0] * f2[2] != d:
        raise InvalidDiscriminantError("mismatched discriminants")
    g1, _ = _represented_coprime_to(f1, 2 * d if d else 2)
    a1 = g1[0]
    g2, _ = _represented_coprime_to(f2, 2 * a1)
    a2, b2 = g2[0], g2[1]
    b1 = g1[1]
    # concordant middle coefficient: B = b1 mod 2a1, B = b2 mod 2a2
    bb = _crt(b1, 2 * a1, b2, 2 * a2)
    aa = a1 * a2
    cc = (bb * bb - d) // (4 * aa)
    assert bb * bb - 4 * aa * cc == d
    return (aa, bb, cc)


def _crt(r1: int, m1: int, r2: int, m2: int) -> int:
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        raise PreconditionError("incompatible congruences")
    l = m1 // g * m2
    _, p, _ = _ext_gcd(m1 // g, m2 // g)
    k = ((r2 - r1) // g * p) % (m2 // g)
    return (r1 + m1 * k) % l


def ambiguous_form_A(sigma: int, d: int) -> Form:
    """The form A_D of discriminant D representing sigma; its class is
    2-torsion in Cl(D)."""
    if sigma not in (2, 3):
        raise DivisibilityError("sigma must be 2 or 3")
    if d % sigma:
        raise DivisibilityError("sigma must divide the discriminant")
    q = d // sigma
    if q % 4 == 0:
        return (sigma, 0, -d // (4 * sigma))
    if (q - sigma) % 4 == 0:
        return (sigma, sigma, -(d - sigma * sigma) // (4 * sigma))
    raise InvalidDiscriminantError(f"{d} is not a sigma={sigma} diform discriminant")


def is_diform_discriminant(sigma: int, d: int) -> bool:
    if d == 0 or d % sigma:
        return False
    q = d // sigma
    return q % 4 == 0 or (q - sigma) % 4 == 0


def red_blue_forms(sigma: int, a: int, b: int, c: int) -> tuple[Form, Form]:
    """The restrictions of the diform a x^2 + b sqrt(sigma) x y + c y^2 to red
    and blue divectors."""
    return (a, b * sigma, c * sigma), (a * sigma, b * sigma, c)


def verify_red_blue(sigma: int, a: int, b: int, c: int) -> dict:
    """Check [Q_red] = [A_D] * [Q_blue] in Cl(D) for the diform (a, b, c)."""
    bs = abs(b) * sigma
    pairwise = math.gcd(abs(a), abs(c)) == 1 and (
        b == 0 or (math.gcd(a, bs) == 1 and math.gcd(bs, c) == 1)
    )
    if not pairwise:
        raise PreconditionError("a, b*sigma, c must be pairwise coprime")
    d = sigma * (b * b * sigma - 4 * a * c)
    table = enumerate_classes(d)
    q_red, q_blue = red_blue_forms(sigma, a, b, c)
    i_red = table.class_index(q_red)
    i_blue = table.class_index(q_blue)
    i_a = table.class_index(ambiguous_form_A(sigma, d))
    holds = table.compose_indices(i_a, i_blue) == i_red
    return {
        "sigma": sigma,
        "delta": d,
        "red": list(q_red),
        "blue": list(q_blue),
        "red_class": i_red,
        "blue_class": i_blue,
        "A_class": i_a,
        "relation_holds": holds,
    }


def represents(form: Form, n: int, bound: int | None = None) -> bool:
    """Bounded search: does the form represent n?  The default search box
    |x|, |y| <= 2*(1 + sqrt(|disc|)) is a recorded fixture."""
    a, b, c = form
    if bound is None:
        d = abs(b * b - 4 * a * c)
        bound = 2 * (1 + math.isqrt(d))
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if a * x * x + b * x * y + c * y * y == n:
                return True
    return False


def class_represents(table: ClassGroupTable, index: int, n: int) -> bool:
    """Bounded representation search over every form in the class label (the
    whole reduced cycle for indefinite discriminants)."""
    label = table.classes[index]
    forms = label if table.disc > 0 else (label,)
    return any(represents(f, n) for f in forms)


def find_diform_for_classes(sigma: int, d: int, i1: int, i2: int,
                            table: ClassGroupTable, bound: int = 10):
    """Converse search: a diform whose red/blue classes are (i1, i2)."""
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                if sigma * (b * b * sigma - 4 * a * c) != d:
                    continue
                q_red, q_blue = red_blue_forms(sigma, a, b, c)
                if content(q_red) != 1 or content(q_blue) != 1:
                    continue
                if d < 0 and a < 0:
                    continue
                try:
                    if (table.class_index(q_red) == i1
                            and table.class_index(q_blue) == i2):
                        return (a, b, c)
                except Exception:
                    continue
    return None
