"""Classical (non-topograph) reduction machinery for binary quadratic forms.

This is the textbook route: definite forms are reduced by translation/swap,
indefinite forms by the rho operator, giving cycles of reduced forms.  It is
used by the class-group module and serves as the independent cross-check for
the well/river route.
"""

from __future__ import annotations

import math

from .bqf import BQF, is_square
from .errors import ClassificationError, SquareDiscriminantError

Form = tuple[int, int, int]


def reduce_definite(form: Form) -> Form:
    """Unique reduced representative of a positive-definite form's SL2 class."""
    a, b, c = form
    if b * b - 4 * a * c >= 0 or a <= 0:
        raise ClassificationError("expected a positive-definite form")
    while True:
        if c < a:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            # translate b into (-a, a]
            k = (a - b) // (2 * a)
            b2 = b + 2 * k * a
            c = c + k * b + k * k * a
            b = b2
            continue
        break
    if a == c and b < 0:
        b = -b
    if b == -a:
        b = a
    return (a, b, c)


def is_reduced_indefinite(form: Form, d: int) -> bool:
    a, b, c = form
    if b <= 0 or b * b >= d or a == 0:
        return False
    t = 2 * abs(a)
    # sqrt(d) - b < 2|a| < sqrt(d) + b, decided exactly
    if (t + b) ** 2 <= d:
        return False
    if t - b >= 0 and (t - b) ** 2 >= d:
        return False
    return True


def rho(form: Form, d: int) -> Form:
    """Reduction/cycle step for indefinite forms (Cohen's rho)."""
    a, b, c = form
    s = math.isqrt(d)
    t = 2 * abs(c)
    if abs(c) > s:
        # choose b' = -b mod t with |b'| minimal
        b2 = (-b) % t
        if b2 > t // 2:
            b2 -= t
    else:
        # choose b' = -b mod t with s - t < b' <= s
        b2 = (-b) % t
        b2 += ((s - b2) // t) * t
    c2 = (b2 * b2 - d) // (4 * c)
    return (c, b2, c2)


def indefinite_cycle(form: Form) -> tuple[Form, ...]:
    """The cycle of reduced forms SL2-equivalent to an indefinite form."""
    a, b, c = form
    d = b * b - 4 * a * c
    if d <= 0 or is_square(d):
        raise SquareDiscriminantError("cycle needs a positive nonsquare discriminant")
    f = (a, b, c)
    guard = 0
    while not is_reduced_indefinite(f, d):
        f = rho(f, d)
        guard += 1
        if guard > 10000:
            raise ClassificationError("rho reduction did not terminate")
    start = f
    cycle = [f]
    while True:
        f = rho(f, d)
        if f == start:
            break
        cycle.append(f)
    return tuple(cycle)


def cycle_fingerprint(form: Form) -> tuple[Form, ...]:
    """Canonical SL2-class label for an indefinite form: its sorted cycle."""
    return tuple(sorted(indefinite_cycle(form)))


def reduce_any(form: Form) -> object:
    """Canonical class label: reduced form (definite) or cycle fingerprint."""
    a, b, c = form
    d = b * b - 4 * a * c
    if d < 0:
        if a < 0:
            raise ClassificationError("negative-definite forms have no class here")
        return reduce_definite(form)
    return cycle_fingerprint(form)


def content(form: Form) -> int:
    a, b, c = form
    return math.gcd(math.gcd(abs(a), abs(b)), abs(c))
