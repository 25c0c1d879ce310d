"""Hom counting into cyclic groups, exact polynomial fitting, truncated power series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .monoid import AbelianGroupStructure


def hom_count_abelian(g: AbelianGroupStructure, n: int) -> int:
    """#Hom(Z^r x prod Z/d_i, Z/n) = n^r * prod gcd(d_i, n)."""
    if n < 1:
        raise ValueError("n must be positive")
    out = n**g.rank
    for d in g.invariant_factors:
        out *= math.gcd(d, n)
    return out


# -- polynomials ---------------------------------------------------------------


@dataclass(frozen=True)
class CountPolynomial:
    coefficients: tuple[int, ...]  # constant term first
    window: tuple[int, ...] = ()
    verification: tuple[int, ...] = ()

    def __call__(self, n):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self):
        return format_polynomial(self.coefficients)


@dataclass(frozen=True)
class NotPolynomial:
    witness: int
    expected: int
    interpolated: Fraction | None = None
    reason: str = "extra sample disagrees with the interpolant"

    def __bool__(self):
        return False


def format_polynomial(coeffs, var: str = "n") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the Lagrange interpolant, exactly."""
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i in range(k):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(k):
            if j == i:
                continue
            # multiply by (x - xs[j])
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d] -= c * xs[j]
                nxt[d + 1] += c
            basis = nxt
            denom *= xs[i] - xs[j]
        for d, c in enumerate(basis):
            coeffs[d] += ys[i] * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def fit_and_verify(samples, extra) -> CountPolynomial | NotPolynomial:
    """Interpolate ``samples`` and accept only an integer polynomial that also matches ``extra``.

    ``samples`` and ``extra`` are sequences of (n, count) pairs.
    """
    samples = [(int(n), int(c)) for n, c in samples]
    extra = [(int(n), int(c)) for n, c in extra]
    if len(samples) < 2 or len({n for n, _ in samples}) != len(samples):
        raise ValueError("need at least two samples at distinct n")
    coeffs = interpolate(samples)
    for n, c in extra:
        v = _eval(coeffs, n)
        if v != c:
            return NotPolynomial(n, c, v)
    if any(c.denominator != 1 for c in coeffs):
        n = samples[-1][0]
        return NotPolynomial(n, samples[-1][1], None, "interpolant has non-integer coefficients")
    return CountPolynomial(tuple(int(c) for c in coeffs), tuple(n for n, _ in samples), tuple(n for n, _ in extra))


# -- power series --------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedPowerSeries:
    """a_0 + a_1 T + ... + a_K T^K with exact rational coefficients, arithmetic mod T^(K+1)."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("a series needs at least the constant term")

    @classmethod
    def zero(cls, order: int):
        return cls((0,) * (order + 1))

    @classmethod
    def one(cls, order: int):
        return cls((1,) + (0,) * order)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k):
        return self.coefficients[k]

    def _check(self, other):
        if other.order != self.order:
            raise ValueError("series have different truncation orders")

    def __add__(self, other):
        self._check(other)
        return TruncatedPowerSeries(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._check(other)
        return TruncatedPowerSeries(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return TruncatedPowerSeries(tuple(-a for a in self.coefficients))

    def __mul__(self, other):
        if not isinstance(other, TruncatedPowerSeries):
            return TruncatedPowerSeries(tuple(a * other for a in self.coefficients))
        self._check(other)
        K = self.order
        a, b = self.coefficients, other.coefficients
        return TruncatedPowerSeries(tuple(sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(K + 1)))

    __rmul__ = __mul__

    def derivative_times_T(self):
        return TruncatedPowerSeries(tuple(k * c for k, c in enumerate(self.coefficients)))

    def exp(self):
        """exp(f) for f with f(0) = 0, from n g_n = sum_k k f_k g_{n-k}."""
        if self.coefficients[0] != 0:
            raise ValueError("exp needs a vanishing constant term")
        f = self.coefficients
        g = [Fraction(1)] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            g[n] = sum(k * f[k] * g[n - k] for k in range(1, n + 1)) / n
        return TruncatedPowerSeries(tuple(g))

    def log(self):
        """log(g) for g with g(0) = 1, inverting the exp recurrence."""
        if self.coefficients[0] != 1:
            raise ValueError("log needs constant term 1")
        g = self.coefficients
        f = [Fraction(0)] * (self.order + 1)
        for n in range(1, self.order + 1):
            f[n] = (n * g[n] - sum(k * f[k] * g[n - k] for k in range(1, n))) / n
        return TruncatedPowerSeries(tuple(f))

    def inverse(self):
        if self.coefficients[0] == 0:
            raise ZeroDivisionError("constant term vanishes")
        a = self.coefficients
        b = [Fraction(1) / a[0]]
        for n in range(1, self.order + 1):
            b.append(-sum(a[k] * b[n - k] for k in range(1, n + 1)) / a[0])
        return TruncatedPowerSeries(tuple(b))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integer coefficients")
        return [int(c) for c in self.coefficients]

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coefficients) + "]"


def series_from_polynomial(coeffs, order: int) -> TruncatedPowerSeries:
    c = list(coeffs)[: order + 1]
    return TruncatedPowerSeries(tuple(c) + (0,) * (order + 1 - len(c)))


def zeta_from_counts(counts: Sequence[int]) -> TruncatedPowerSeries:
    """exp(sum_{n>=1} N_n T^n / n) truncated at order len(counts)."""
    K = len(counts)
    logz = TruncatedPowerSeries((0,) + tuple(Fraction(c, n) for n, c in enumerate(counts, start=1)))
    assert logz.order == K
    return logz.exp()


def _solve(matrix, rhs):
    """Exact Gaussian elimination; returns one solution or None (free variables set to 0)."""
    rows = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(matrix, rhs)]
    ncols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


@dataclass(frozen=True)
class RationalGuess:
    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]
    label: str = "conjectural"

    def __str__(self):
        num = format_polynomial([_int_or(c) for c in self.numerator], "T")
        den = format_polynomial([_int_or(c) for c in self.denominator], "T")
        return f"({num}) / ({den})"


def _int_or(c):
    return int(c) if c.denominator == 1 else c


def pade_guess(series: TruncatedPowerSeries, slack: int = 2) -> RationalGuess | None:
    """Smallest-degree P/Q (Q(0) = 1) agreeing with the series, leaving ``slack`` unused equations.

    The guess is exact on the known coefficients only, so it is labelled conjectural.
    """
    K = series.order
    a = series.coefficients
    for total in range(0, K - slack + 1):
        for m in range(0, total + 1):
            l = total - m
            # unknowns q_1..q_m; equations for n = l+1 .. K: sum_{j=0}^m q_j a_{n-j} = 0
            eqs, rhs = [], []
            for n in range(l + 1, K + 1):
                eqs.append([a[n - j] if n - j >= 0 else 0 for j in range(1, m + 1)])
                rhs.append(-a[n])
            if m == 0:
                if any(r != 0 for r in rhs):
                    continue
                q = []
            else:
                q = _solve(eqs, rhs)
                if q is None:
                    continue
            qfull = [Fraction(1)] + q
            p = [sum(qfull[j] * a[n - j] for j in range(0, min(m, n) + 1)) for n in range(l + 1)]
            return RationalGuess(tuple(p), tuple(qfull))
    return None


# -- Deitmar zeta ------------------------------------------------------------------


@dataclass
class ZetaReport:
    series: TruncatedPowerSeries
    counts: list[int]  # N_1 .. N_K
    mode: str
    p: int
    experimental: bool = False
    guess: RationalGuess | None = None


def zeta_report(s, p: int, order: int, mode: str = "P") -> ZetaReport:
    """Z(p, T) = exp(sum_n N_n T^n / n) with N_n the count into F_1^(p^n - 1).

    P-mode uses the unit groups of the points and needs a torsion-free scheme.
    Q-mode (experimental) evaluates the per-point polynomials fitted to the
    relation-compatible counts.
    """
    from .errors import NotTorsionFree
    from .schemes import is_torsion_free, points

    if order < 1:
        raise ValueError("order must be positive")
    if mode == "P":
        pts = points(s)
        torsion = [pt.label() for pt in pts if not pt.unit_structure.is_torsion_free]
        if torsion:
            raise NotTorsionFree(f"unit groups with torsion at {', '.join(torsion)}")
        counts = [sum(hom_count_abelian(pt.unit_structure, p**n - 1) for pt in pts) for n in range(1, order + 1)]
    elif mode == "Q":
        rep = is_torsion_free(s)
        bad = [lab for lab, v in rep.b_level.items() if not isinstance(v, CountPolynomial)]
        if bad:
            raise NotTorsionFree(f"relation-compatible counts are not polynomial at {', '.join(bad)}")
        counts = [sum(poly(p**n - 1) for poly in rep.b_level.values()) for n in range(1, order + 1)]
    else:
        raise ValueError("mode must be P or Q")
    series = zeta_from_counts(counts)
    if mode == "P" and not series.is_integral():
        raise AssertionError("zeta coefficients of a torsion-free monoidal scheme must be integers")
    return ZetaReport(series, counts, mode, p, mode == "Q", pade_guess(series))


def deitmar_zeta(s, p: int, order: int, mode: str = "P") -> TruncatedPowerSeries:
    return zeta_report(s, p, order, mode).series
