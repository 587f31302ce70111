"""Binary quadratic forms of negative discriminant and their class groups.

A form (a, b, c) stands for a*x^2 + b*x*y + c*y^2.  Only positive definite
forms appear here (a > 0, b^2 - 4ac < 0), and a class group is always
realized as the set of primitive reduced forms of one discriminant under
composition.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from math import gcd, isqrt

import numpy as np

from .ntheory import is_squarefree, kronecker, sqrt_mod_prime, squarefree_mask, xgcd


def is_fundamental(D: int) -> bool:
    """True iff D is the discriminant of the ring of integers of an
    imaginary quadratic field.

    >>> is_fundamental(-3), is_fundamental(-4027), is_fundamental(-12)
    (True, True, False)
    """
    if D >= 0:
        return False
    if D % 4 == 1:
        return is_squarefree(-D)
    if D % 4 == 0:
        m = -D // 4
        return m % 4 in (1, 2) and is_squarefree(m)
    return False


def fundamental_mask(limit: int) -> np.ndarray:
    """Boolean array f of length limit+1: f[n] true iff -n is fundamental."""
    n = np.arange(limit + 1, dtype=np.int64)
    sqf = squarefree_mask(limit)
    mask = (n % 4 == 3) & sqf
    # -n = 4m with m = -(n/4); m mod 4 in {2, 3} means n/4 mod 4 in {1, 2}
    quarter = n[::4] // 4
    mask[::4] = ((quarter % 4 == 1) | (quarter % 4 == 2)) & sqf[quarter]
    return mask


@dataclass(frozen=True)
class Discriminant:
    """A negative discriminant, with its fundamentality precomputed."""

    value: int
    fundamental: bool = field(init=False)

    def __post_init__(self):
        if self.value >= 0 or self.value % 4 not in (0, 1):
            raise ValueError(f"{self.value} is not a negative discriminant")
        object.__setattr__(self, "fundamental", is_fundamental(self.value))


def _disc_value(D) -> int:
    v = D.value if isinstance(D, Discriminant) else int(D)
    if v >= 0 or v % 4 not in (0, 1):
        raise ValueError(f"{v} is not a negative discriminant")
    return v


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise ValueError(f"form {(self.a, self.b, self.c)} is not positive definite")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if b < 0 and (abs(b) == a or a == c):
            return False
        return True

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def inverse(self) -> "QuadForm":
        return reduce_form(QuadForm(self.a, -self.b, self.c))

    def __repr__(self):
        return f"({self.a},{self.b},{self.c})"


def principal_form(D) -> QuadForm:
    D = _disc_value(D)
    if D % 2:
        return QuadForm(1, 1, (1 - D) // 4)
    return QuadForm(1, 0, -D // 4)


def reduce_form(f: QuadForm) -> QuadForm:
    """The unique reduced form equivalent to f.

    >>> reduce_form(QuadForm(1, 1, 1))
    (1,1,1)
    >>> reduce_form(QuadForm(6, 1, 2))
    (2,-1,6)
    """
    a, b, c = f.a, f.b, f.c
    D = f.discriminant
    while True:
        # normalize: bring b into (-a, a]
        if not -a < b <= a:
            b = (b + a) % (2 * a) - a
            if b == -a:
                b = a
            c = (b * b - D) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if b < 0 and (a == c or -b == a):
        b = -b
    return QuadForm(a, b, c)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss composition; returns the reduced representative of the product.

    >>> compose(QuadForm(2, 1, 3), QuadForm(2, 1, 3))
    (2,-1,3)
    """
    D = f.discriminant
    if g.discriminant != D:
        raise ValueError(f"discriminant mismatch: {D} vs {g.discriminant}")
    a1, b1, c1 = f.a, f.b, f.c
    a2, b2, c2 = g.a, g.b, g.c
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, u, v = xgcd(s, d)
        x2, y2 = u, -v
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    a3 = v1 * v2
    b3 = b2 + 2 * v2 * r
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce_form(QuadForm(a3, b3, c3))


def form_pow(f: QuadForm, n: int) -> QuadForm:
    """n-th composition power of f (n may be negative)."""
    if n < 0:
        return form_pow(f.inverse(), -n)
    result = principal_form(f.discriminant)
    base = reduce_form(f)
    while n:
        if n & 1:
            result = compose(result, base)
        base = compose(base, base)
        n >>= 1
    return result


def enumerate_reduced(D) -> list[QuadForm]:
    """All primitive reduced forms of discriminant D, ordered by (a, b).

    >>> enumerate_reduced(-23)
    [(1,1,6), (2,-1,3), (2,1,3)]
    """
    D = _disc_value(D)
    absD = -D
    forms = []
    parity = absD & 1
    for a in range(1, isqrt(absD // 3) + 1):
        bs = np.arange(parity, a + 1, 2, dtype=np.int64)
        num = bs * bs + absD
        sel = num % (4 * a) == 0
        bs, num = bs[sel], num[sel]
        cs = num // (4 * a)
        sel = cs >= a
        bs, cs = bs[sel], cs[sel]
        if not len(bs):
            continue
        prim = np.gcd(np.gcd(bs, a), cs) == 1
        for b, c in zip(bs[prim].tolist(), cs[prim].tolist()):
            if 0 < b < a and c > a:
                forms.append(QuadForm(a, -b, c))
            forms.append(QuadForm(a, b, c))
    return sorted(forms, key=lambda f: (f.a, f.b))


def class_number(D) -> int:
    return len(enumerate_reduced(D))


class Inert:
    """Sentinel: the prime is inert, its eigenform coefficient is 0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Inert"


INERT = Inert()


@dataclass(frozen=True)
class Ramified:
    """The prime divides the discriminant; its class has order at most 2."""

    form: QuadForm


def prime_form(D, ell: int):
    """The class of the prime above ell: a reduced QuadForm when ell splits,
    INERT when it is inert, Ramified(form) when ell divides D.

    Ties between the two square roots of D mod 4*ell are broken toward the
    smaller b; either choice gives conjugate classes.
    """
    D = _disc_value(D)
    if ell == 2:
        if D % 8 == 1:
            return reduce_form(QuadForm(2, 1, (1 - D) // 8))
        if D % 2:
            return INERT
        for b in (0, 2):
            if (b * b - D) % 8 == 0:
                return Ramified(reduce_form(QuadForm(2, b, (b * b - D) // 8)))
        raise AssertionError(f"no ramified form above 2 for D={D}")
    sym = kronecker(D, ell)
    if sym == -1:
        return INERT
    if sym == 0:
        for b in range(0, 2 * ell + 1):
            if (b - D) % 2 == 0 and (b * b - D) % (4 * ell) == 0:
                return Ramified(reduce_form(QuadForm(ell, b, (b * b - D) // (4 * ell))))
        raise AssertionError(f"no ramified form above {ell} for D={D}")
    s = sqrt_mod_prime(D % ell, ell)
    b = s if (s - D) % 2 == 0 else ell - s
    return reduce_form(QuadForm(ell, b, (b * b - D) // (4 * ell)))


@dataclass
class ClassGroupRecord:
    disc: int
    fundamental: bool
    class_number: int
    structure: "AbelianGroup"  # noqa: F821 - imported lazily to avoid a cycle
    generators: list  # (QuadForm, order) pairs, aligned with invariant factors

    def factors_string(self) -> str:
        return ";".join(str(d) for d in self.structure.invariant_factors)


def class_group(D) -> ClassGroupRecord:
    """Class number, invariant factors and generators for one discriminant.

    Non-fundamental discriminants are accepted; the record carries the flag.

    >>> class_group(-4027).structure.invariant_factors
    (3, 3)
    """
    from .abelian import structure_from_forms

    D = _disc_value(D)
    forms = enumerate_reduced(D)
    structure, generators = structure_from_forms(forms, with_generators=True)
    return ClassGroupRecord(
        disc=D,
        fundamental=is_fundamental(D),
        class_number=len(forms),
        structure=structure,
        generators=generators,
    )


CACHE_ENV = "QUADCLASS_CACHE"


class ClassGroupCache:
    """Read-through cache of (disc, h, invariant factors) rows.

    The backing file is CSV with header ``disc,h,invariant_factors``; the
    factor chain is semicolon-joined ascending, e.g. ``-4027,9,3;3``.
    """

    HEADER = ["disc", "h", "invariant_factors"]

    def __init__(self, path: str | None = None):
        self.path = path if path is not None else os.environ.get(CACHE_ENV)
        self._rows: dict[int, tuple[int, tuple[int, ...]]] = {}
        self.dirty = False
        if self.path and os.path.exists(self.path):
            self._load()

    def _load(self):
        with open(self.path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != self.HEADER:
                raise ValueError(f"unexpected cache header in {self.path}: {reader.fieldnames}")
            for row in reader:
                factors = tuple(int(t) for t in row["invariant_factors"].split(";") if t)
                self._rows[int(row["disc"])] = (int(row["h"]), factors)

    def get(self, disc: int) -> tuple[int, tuple[int, ...]]:
        disc = _disc_value(disc)
        if disc not in self._rows:
            record = class_group(disc)
            self._rows[disc] = (record.class_number, record.structure.invariant_factors)
            self.dirty = True
        return self._rows[disc]

    def save(self):
        if not self.path or not self.dirty:
            return
        with open(self.path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(self.HEADER)
            for disc in sorted(self._rows, key=abs):
                h, factors = self._rows[disc]
                writer.writerow([disc, h, ";".join(str(d) for d in factors)])
        self.dirty = False
