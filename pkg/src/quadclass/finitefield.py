"""Arithmetic in F_{p^m} and the dihedral trace sets living inside it.

The interesting objects here are small: an element x of multiplicative
order h in the field F_{p^m} where m is the order of p mod h, the
matrix group generated by diag(x, 1/x) and the swap matrix, and the
set of traces that group produces, namely 0 and x^i + x^{-i}.  The
question the rest of the package keeps asking is which subfield those
traces generate, so membership tests are Frobenius fixed-point checks:
t lies in F_{p^s} iff t^(p^s) = t.

Field elements are coefficient vectors modulo a monic modulus
x^m + tail.  The modulus is found by a deterministic search: tails are
enumerated as a base-p counter (0, 1, ..., p-1, x, x+1, ...) and the
first irreducible wins, so a (p, m) pair names the same field on every
run and platform.  Candidate tails are first screened against a stock
of low-degree irreducibles, and survivors get the full Frobenius
(Rabin) test; the screen is an optimization only and rejects nothing
the full test would accept.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .ntheory import divisors, factorize, multiplicative_order

# Degree cap for the screening stock, per characteristic.  Keeps the
# stock around a hundred polynomials; past that the screen costs more
# than the Rabin tests it saves.
_SCREEN_DEGREE = {2: 9, 3: 6, 5: 4, 7: 3}


def _screen_cap(p: int) -> int:
    return _SCREEN_DEGREE.get(p, 2)


def _digits(k: int, p: int) -> list[int]:
    """Base-p digits of k, little-endian, [] for k = 0."""
    out = []
    while k:
        k, r = divmod(k, p)
        out.append(r)
    return out


def _poly_mod(f: list[int], q: list[int], p: int) -> list[int]:
    """Remainder of f by monic q, dense little-endian lists, mod p."""
    f = [c % p for c in f]
    dq = len(q) - 1
    for j in range(len(f) - 1, dq - 1, -1):
        c = f[j]
        if c:
            for i in range(dq + 1):
                f[j - dq + i] = (f[j - dq + i] - c * q[i]) % p
    while len(f) > dq:
        f.pop()
    return f


@lru_cache(maxsize=None)
def _screen_stock(p: int) -> tuple[tuple[int, ...], ...]:
    """All monic irreducibles over F_p up to the screening degree cap,
    built sieve-style: a candidate survives if no earlier stock entry
    of at most half its degree divides it."""
    stock: list[tuple[int, ...]] = []
    for d in range(1, _screen_cap(p) + 1):
        for k in range(p**d):
            tail = _digits(k, p)
            f = tail + [0] * (d - len(tail)) + [1]
            if any(
                not any(_poly_mod(f, list(q), p))
                for q in stock
                if 2 * (len(q) - 1) <= d
            ):
                continue
            stock.append(tuple(f))
    return tuple(stock)


def _trim(vec: np.ndarray) -> np.ndarray:
    nz = np.nonzero(vec)[0]
    return vec[: nz[-1] + 1] if nz.size else vec[:0]


def _poly_gcd_is_one(u: np.ndarray, f: np.ndarray, p: int) -> bool:
    """Whether gcd(u, f) = 1 over F_p.  Little-endian int64 arrays."""
    u, v = _trim(f % p), _trim(u % p)
    while v.size:
        # u mod v by synthetic division; v's lead coefficient inverted once
        inv = pow(int(v[-1]), p - 2, p)
        dv = v.size - 1
        for j in range(u.size - 1, dv - 1, -1):
            c = int(u[j]) * inv % p
            if c:
                u[j - dv : j + 1] = (u[j - dv : j + 1] - c * v) % p
        u, v = v, _trim(u[:dv] if dv else u[:0])
    return u.size == 1


class FieldContext:
    """The field F_{p^m} presented as F_p[x] / (x^m + tail).

    Immutable after construction; build through make_field, which
    caches contexts so a (p, m) pair is constructed once.
    """

    def __init__(self, p: int, m: int, tail: np.ndarray):
        self.p = p
        self.m = m
        self._tail = tail  # length m, little-endian
        self._negtail = _trim((-tail) % p)
        if not self._negtail.size:
            self._negtail = np.zeros(1, dtype=np.int64)
        self.order = p**m
        self._frob: np.ndarray | None = None

    @property
    def modulus(self) -> tuple[int, ...]:
        """Coefficients of x^m + tail, little-endian, length m + 1."""
        return tuple(int(c) for c in self._tail) + (1,)

    def __repr__(self):
        return f"FieldContext(p={self.p}, m={self.m}, modulus={self.modulus})"

    # -- raw vector arithmetic (little-endian int64, length m) --

    def _reduce(self, vec: np.ndarray) -> np.ndarray:
        # Entries stay far below 2^63 through the folds (inputs are < p,
        # one convolve bounds them by m*p^2, each fold multiplies by at
        # most (deg tail + 1)*p), so a single final mod suffices.
        m = self.m
        while vec.size > m:
            if vec.max(initial=0) > 2**40:  # long-tail moduli refold many times
                vec = vec % self.p
            ext = np.convolve(vec[m:], self._negtail)
            if ext.size <= m:
                head = vec[:m].copy()
                head[: ext.size] += ext
                vec = head
            else:
                ext = ext.copy()
                ext[:m] += vec[:m]
                vec = ext
        if vec.size < m:
            out = np.zeros(m, dtype=np.int64)
            out[: vec.size] = vec
            vec = out
        return vec % self.p

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self._reduce(np.convolve(a, b))

    def _sqr(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            out = np.zeros(2 * self.m - 1, dtype=np.int64)
            out[::2] = a
            return self._reduce(out)
        return self._reduce(np.convolve(a, a))

    def _pow(self, a: np.ndarray, e: int) -> np.ndarray:
        out = np.zeros(self.m, dtype=np.int64)
        out[0] = 1
        if e:
            for bit in bin(e)[2:]:
                out = self._sqr(out)
                if bit == "1":
                    out = self._mul(out, a)
        return out

    def _frobenius_matrix(self) -> np.ndarray:
        """Matrix of e -> e^p in the power basis (columns are x^{ip})."""
        if self._frob is None:
            m = self.m
            xvec = np.zeros(m, dtype=np.int64)
            xvec[min(1, m - 1)] = 1 if m > 1 else 0
            if m == 1:
                xp = np.zeros(1, dtype=np.int64)  # x = 0 in F_p[x]/(x)
            else:
                xp = self._pow(xvec, self.p)
            cols = [np.zeros(m, dtype=np.int64)]
            cols[0][0] = 1
            for _ in range(m - 1):
                cols.append(self._mul(cols[-1], xp))
            self._frob = np.stack(cols, axis=1)
        return self._frob

    def frobenius_power(self, s: int) -> np.ndarray:
        """Matrix of e -> e^(p^s)."""
        base = self._frobenius_matrix()
        if s == 1:
            return base
        out = np.eye(self.m, dtype=np.int64)
        for _ in range(s):
            out = (base @ out) % self.p
        return out

    # -- element constructors --

    def element(self, coeffs) -> "FieldElement":
        vec = np.zeros(self.m, dtype=np.int64)
        cs = list(coeffs)
        vec[: len(cs)] = cs
        return FieldElement(self, tuple(int(c) for c in vec % self.p))

    def zero(self) -> "FieldElement":
        return self.element(())

    def one(self) -> "FieldElement":
        return self.element((1,))

    def scalar(self, c: int) -> "FieldElement":
        return self.element((c % self.p,))


@dataclass(frozen=True)
class FieldElement:
    """An element of a FieldContext: coefficients in the power basis."""

    ctx: FieldContext
    coeffs: tuple[int, ...]

    def _vec(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(
            self.ctx,
            tuple(
                (a + b) % self.ctx.p for a, b in zip(self.coeffs, other.coeffs)
            ),
        )

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(
            self.ctx,
            tuple(
                (a - b) % self.ctx.p for a, b in zip(self.coeffs, other.coeffs)
            ),
        )

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.ctx, tuple(-a % self.ctx.p for a in self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        vec = self.ctx._mul(self._vec(), other._vec())
        return FieldElement(self.ctx, tuple(int(c) for c in vec))

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            base = self.inverse()
            e = -e
        else:
            base = self
        vec = self.ctx._pow(base._vec(), e)
        return FieldElement(self.ctx, tuple(int(c) for c in vec))

    def inverse(self) -> "FieldElement":
        if not any(self.coeffs):
            raise ZeroDivisionError("inverting 0")
        return self ** (self.ctx.order - 2)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_subfield(self, s: int) -> bool:
        """Whether self lies in F_{p^s}, i.e. self^(p^s) = self."""
        fs = self.ctx.frobenius_power(s)
        vec = self._vec()
        return bool(np.array_equal((fs @ vec) % self.ctx.p, vec))

    def field_degree(self) -> int:
        """Degree over F_p of the subfield self generates."""
        for s in divisors(self.ctx.m):
            if self.in_subfield(s):
                return s
        raise AssertionError("element outside its own field")

    def __repr__(self):
        p = self.ctx.p
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(
                    ("" if c == 1 and i else str(c))
                    + ("" if i == 0 else "x" if i == 1 else f"x^{i}")
                )
        return "+".join(terms) if terms else "0"


def _is_irreducible(tail: list[int], p: int, m: int) -> bool:
    """Full Frobenius test for x^m + tail: irreducible iff
    x^(p^m) = x mod f and gcd(x^(p^(m/r)) - x, f) = 1 for primes r | m."""
    if m == 1:
        return True
    ctx = FieldContext(
        p, m, np.array(tail + [0] * (m - len(tail)), dtype=np.int64)
    )
    checkpoints = {m // r for r in factorize(m)}
    x = np.zeros(m, dtype=np.int64)
    x[1] = 1
    w = x.copy()
    f = np.array(ctx.modulus, dtype=np.int64)
    for k in range(1, m + 1):
        w = ctx._pow(w, p)
        if k in checkpoints:
            diff = (w - x) % p
            if not _poly_gcd_is_one(diff, f, p):
                return False
    return bool(np.array_equal(w, x))


_field_cache: dict[tuple[int, int], FieldContext] = {}


def make_field(p: int, m: int) -> FieldContext:
    """The field with p^m elements, modulus x^m + tail where tail is
    the first base-p counter value making the polynomial irreducible."""
    if m < 1:
        raise ValueError("extension degree must be at least 1")
    key = (p, m)
    if key in _field_cache:
        return _field_cache[key]
    stock = [
        list(q) for q in _screen_stock(p) if len(q) - 1 < min(m, _screen_cap(p) + 1)
    ]
    xm_mod_q = [_poly_mod([0] * m + [1], q, p) for q in stock]
    k = 0
    while True:
        tail = _digits(k, p)
        if len(tail) > m and m > 1:
            raise AssertionError("ran out of degree-m polynomials")
        screened_out = False
        if m > 1:
            for q, xm in zip(stock, xm_mod_q):
                rem = list(xm)
                t = _poly_mod(tail, q, p) if len(tail) >= len(q) else tail
                for i, c in enumerate(t):
                    rem[i] = (rem[i] + c) % p
                if not any(rem):
                    screened_out = True
                    break
        if not screened_out:
            # any composite of degree m has a factor of degree <= m/2,
            # so within twice the screening cap the screen is the whole
            # test and survivors need no Frobenius run
            if m <= 2 * _screen_cap(p) or _is_irreducible(tail, p, m):
                break
        k += 1
    ctx = FieldContext(
        p, m, np.array(tail + [0] * (m - len(tail)), dtype=np.int64)
    )
    _field_cache[key] = ctx
    return ctx


_root_cache: dict[tuple[int, int, int], "FieldElement"] = {}


def element_of_order(ctx: FieldContext, h: int) -> FieldElement:
    """An element of exact multiplicative order h: g^((p^m - 1)/h) for
    the first field element g, in base-p counter order, for which the
    exact-order check passes."""
    if h < 1 or (ctx.order - 1) % h:
        raise ValueError(f"no element of order {h}: {h} does not divide p^m - 1")
    key = (ctx.p, ctx.m, h)
    cached = _root_cache.get(key)
    if cached is not None and cached.ctx is ctx:
        return cached
    cofactor = (ctx.order - 1) // h
    hfactors = list(factorize(h))
    for k in range(1, ctx.order):
        g = ctx.element(_digits(k, ctx.p))
        z = g**cofactor
        if z.is_zero():
            continue
        # z^h = g^(p^m - 1) = 1 holds automatically; exactness needs
        # z^(h/r) != 1 at every prime r | h
        one = (1,) + (0,) * (ctx.m - 1)
        if any((z ** (h // r)).coeffs == one for r in hfactors):
            continue
        _root_cache[key] = z
        return z
    raise AssertionError("multiplicative group exhausted")  # unreachable


@dataclass(frozen=True)
class TraceSet:
    """Traces of the 2h-element dihedral matrix group: the diagonal
    part diag(x^i, x^-i) contributes x^i + x^-i (i up to h/2, the rest
    repeat), the antidiagonal coset contributes 0."""

    h: int
    ctx: FieldContext
    diagonal: tuple[FieldElement, ...]
    traces: frozenset[FieldElement]

    def __len__(self) -> int:
        return len(self.traces)


def dihedral_trace_set(h: int, p: int) -> TraceSet:
    """All traces of the dihedral group of order 2h realized in 2x2
    matrices over F_{p^m}, m the multiplicative order of p mod h."""
    if gcd(h, p) != 1:
        raise ValueError(f"h = {h} must be coprime to p = {p}")
    m = multiplicative_order(p, h) if h > 1 else 1
    ctx = make_field(p, m)
    x = element_of_order(ctx, h)
    two = ctx.scalar(2)
    diag = [two]
    if h > 1:
        t1 = x + x ** (h - 1)  # x^(h-1) = 1/x, far cheaper than a field inverse
        diag.append(t1)
        for _ in range(2, h // 2 + 1):
            diag.append(t1 * diag[-1] - diag[-2])
    return TraceSet(
        h, ctx, tuple(diag), frozenset(diag) | {ctx.zero()}
    )


def traces_all_in_subfield(ts: TraceSet, s: int) -> bool:
    """Whether every trace lies in F_{p^s} (Frobenius fixed points)."""
    fs = ts.ctx.frobenius_power(s)
    mat = np.array([t.coeffs for t in ts.diagonal], dtype=np.int64)
    return bool(np.array_equal((mat @ fs.T) % ts.ctx.p, mat))


def trace_field_degree(ts: TraceSet) -> int:
    """Degree over F_p of the field generated by all the traces."""
    for s in divisors(ts.ctx.m):
        if traces_all_in_subfield(ts, s):
            return s
    raise AssertionError("traces outside their own field")
