"""Exact arithmetic for torus characters and Cartan elements.

Every pairing ``beta(X)`` is computed in exact Gaussian rationals; floats only
appear when a class expression is finally evaluated (exponentials).  Sign
decisions (regularity, chambers) therefore never see rounding.

Two real slices of the complexified Cartan algebra are supported:

``split``
    ``X`` real; chamber signs are the signs of ``Re beta(X)``.
``compact``
    ``X = i v``; the one-parameter subgroup driving the attracting cells is
    generated by ``v = -i X``, so chamber signs are the signs of
    ``Im beta(X)``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, InvalidInputError, OnWallError, SingularEvaluationError

SLICES = ("split", "compact")


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and rational strings ("3/7", "-2", "0.25")."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise InvalidInputError(f"not a rational number: {x!r}")
    if isinstance(x, np.integer):
        return Fraction(int(x))
    if isinstance(x, np.floating):
        x = float(x)
    if isinstance(x, (int, str)):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational number: {x!r}") from exc
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InvalidInputError(f"not a finite number: {x!r}")
        return Fraction(x)
    raise InvalidInputError(f"not a rational number: {x!r}")


def _check_slice(slice_: str) -> str:
    if slice_ not in SLICES:
        raise InvalidInputError(f"unknown slice {slice_!r}; expected one of {SLICES}")
    return slice_


@dataclass(frozen=True)
class CRational:
    """Exact complex rational ``re + i*im``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_fraction(self.re))
        object.__setattr__(self, "im", as_fraction(self.im))

    @classmethod
    def of(cls, x) -> "CRational":
        if isinstance(x, CRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(as_fraction(x), Fraction(0))

    @classmethod
    def ipow(cls, k: int) -> "CRational":
        return ((ONE, I, -ONE, -I))[k % 4]

    def __add__(self, other):
        other = CRational.of(other)
        return CRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return CRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-CRational.of(other))

    def __rsub__(self, other):
        return CRational.of(other) - self

    def __mul__(self, other):
        o = CRational.of(other)
        return CRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = CRational.of(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return CRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other):
        return CRational.of(other) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "CRational":
        return CRational(self.re, -self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = CRational(0, 0)
ONE = CRational(1, 0)
I = CRational(0, 1)


@dataclass(frozen=True, order=True)
class Weight:
    """Integer character of a rank-r torus."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for c in coeffs:
            if isinstance(c, bool) or int(c) != c:
                raise InvalidInputError(f"weight coefficients must be integers: {coeffs!r}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __neg__(self):
        return Weight(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Weight"):
        _match(self.rank, other.rank)
        return Weight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Weight"):
        return self + (-other)

    def embed(self, offset: int, rank: int) -> "Weight":
        """Place this weight in coordinates ``offset..offset+self.rank`` of a rank-``rank`` torus."""
        out = [0] * rank
        out[offset : offset + self.rank] = self.coeffs
        return Weight(tuple(out))

    def primitive(self) -> "Weight":
        """Primitive representative of the hyperplane ``{beta = 0}``: gcd 1, first nonzero entry positive."""
        if self.is_zero():
            raise InvalidInputError("the zero weight defines no hyperplane")
        g = math.gcd(*self.coeffs)
        lead = next(c for c in self.coeffs if c)
        s = 1 if lead > 0 else -1
        return Weight(tuple(s * c // g for c in self.coeffs))

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


def weight(*coeffs) -> Weight:
    if len(coeffs) == 1 and isinstance(coeffs[0], (tuple, list)):
        coeffs = coeffs[0]
    return Weight(tuple(coeffs))


@dataclass(frozen=True)
class CartanElement:
    """``X = re + i*im`` in the complexified Cartan algebra."""

    re: tuple[Fraction, ...]
    im: tuple[Fraction, ...] = ()

    def __post_init__(self):
        re = tuple(as_fraction(x) for x in self.re)
        im = tuple(as_fraction(x) for x in self.im) if self.im else (Fraction(0),) * len(re)
        if len(re) != len(im):
            raise DimensionError(f"real part has length {len(re)}, imaginary part {len(im)}")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def real(cls, v: Iterable) -> "CartanElement":
        return cls(tuple(v))

    @classmethod
    def imaginary(cls, v: Iterable) -> "CartanElement":
        v = tuple(v)
        return cls((0,) * len(v), v)

    @classmethod
    def on_slice(cls, v: Iterable, slice_: str = "split") -> "CartanElement":
        """The element of the given real slice whose slice coordinates are ``v``."""
        return cls.real(v) if _check_slice(slice_) == "split" else cls.imaginary(v)

    @property
    def rank(self) -> int:
        return len(self.re)

    def coordinate(self, j: int) -> CRational:
        return CRational(self.re[j], self.im[j])

    def scale(self, a) -> "CartanElement":
        a = CRational.of(a)
        zs = [a * self.coordinate(j) for j in range(self.rank)]
        return CartanElement(tuple(z.re for z in zs), tuple(z.im for z in zs))

    def __neg__(self):
        return self.scale(-1)

    def lies_on(self, slice_: str) -> bool:
        if _check_slice(slice_) == "split":
            return not any(self.im)
        return not any(self.re)

    def slice_coordinates(self, slice_: str) -> tuple[Fraction, ...]:
        return self.re if _check_slice(slice_) == "split" else self.im

    def __str__(self):
        return "(" + ", ".join(str(self.coordinate(j)) for j in range(self.rank)) + ")"


def _match(r1: int, r2: int) -> None:
    if r1 != r2:
        raise DimensionError(f"rank mismatch: {r1} != {r2}")


def eval_weight(beta: Weight, X: CartanElement) -> CRational:
    """Exact pairing ``beta(X) = sum_j beta_j X_j``."""
    _match(beta.rank, X.rank)
    re = sum((c * x for c, x in zip(beta.coeffs, X.re)), Fraction(0))
    im = sum((c * x for c, x in zip(beta.coeffs, X.im)), Fraction(0))
    return CRational(re, im)


def pair_linear(form: Sequence[Fraction], X: CartanElement) -> CRational:
    """Pair a rational linear form (e.g. a Hamiltonian value) with ``X``."""
    _match(len(form), X.rank)
    re = sum((as_fraction(c) * x for c, x in zip(form, X.re)), Fraction(0))
    im = sum((as_fraction(c) * x for c, x in zip(form, X.im)), Fraction(0))
    return CRational(re, im)


def slice_sign_value(value: CRational, slice_: str) -> Fraction:
    """The real number whose sign classifies a weight value on the given slice."""
    return value.re if _check_slice(slice_) == "split" else value.im


# ---------------------------------------------------------------------------
# class expressions


@dataclass(frozen=True)
class ClassTerm:
    coeff: CRational = ONE
    exponent: tuple[Fraction, ...] | None = None
    numerator: tuple[Weight, ...] = ()
    denominator: tuple[Weight, ...] = ()
    power_of_i: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", CRational.of(self.coeff))
        if self.exponent is not None:
            object.__setattr__(self, "exponent", tuple(as_fraction(c) for c in self.exponent))
        object.__setattr__(self, "numerator", tuple(self.numerator))
        object.__setattr__(self, "denominator", tuple(self.denominator))
        object.__setattr__(self, "power_of_i", self.power_of_i % 4)

    def exact_factor(self, X: CartanElement) -> CRational:
        """Everything but the exponential, evaluated exactly."""
        val = self.coeff * CRational.ipow(self.power_of_i)
        for beta in self.numerator:
            val = val * eval_weight(beta, X)
        for beta in self.denominator:
            b = eval_weight(beta, X)
            if not b:
                raise SingularEvaluationError(beta)
            val = val / b
        return val

    def exponent_value(self, X: CartanElement) -> CRational:
        if self.exponent is None:
            return ZERO
        return pair_linear(self.exponent, X)


@dataclass(frozen=True)
class ClassExpr:
    """``sum coeff * i^k * exp(<w, X>) * prod beta(X) / prod beta'(X)``."""

    terms: tuple[ClassTerm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def constant(cls, c=1) -> "ClassExpr":
        return cls((ClassTerm(coeff=CRational.of(c)),))

    def __add__(self, other: "ClassExpr") -> "ClassExpr":
        return ClassExpr(self.terms + other.terms)

    def is_exact(self) -> bool:
        return all(t.exponent is None or not any(t.exponent) for t in self.terms)


def eval_class_exact(expr: ClassExpr, X: CartanElement) -> CRational:
    """Exact value; only valid when no term carries a nonzero exponential."""
    if not expr.is_exact():
        raise InvalidInputError("expression has exponential terms; use eval_class")
    total = ZERO
    for t in expr.terms:
        total = total + t.exact_factor(X)
    return total


def eval_class(expr: ClassExpr, X: CartanElement) -> complex:
    parts = []
    for t in expr.terms:
        rational = complex(t.exact_factor(X))
        if t.exponent is None:
            parts.append(rational)
        else:
            parts.append(rational * cmath.exp(complex(t.exponent_value(X))))
    return complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))


# ---------------------------------------------------------------------------
# regularity and chambers


@dataclass(frozen=True)
class Regularity:
    regular: bool
    violations: tuple[Weight, ...]

    def __bool__(self):
        return self.regular


def _check_delta(delta: Iterable[Weight]) -> tuple[Weight, ...]:
    delta = tuple(delta)
    if not delta:
        raise InvalidInputError("weight set is empty")
    for beta in delta:
        if beta.is_zero():
            raise InvalidInputError("the zero weight cannot occur among tangent weights")
    return delta


def canonical_order(delta: Iterable[Weight]) -> tuple[Weight, ...]:
    """Distinct weights, sorted by descending lexicographic order of coefficients."""
    return tuple(sorted(set(delta), reverse=True))


def is_regular(delta: Iterable[Weight], X: CartanElement) -> Regularity:
    delta = canonical_order(_check_delta(delta))
    bad = tuple(beta for beta in delta if not eval_weight(beta, X))
    return Regularity(not bad, bad)


def chamber_id(delta: Iterable[Weight], X: CartanElement, slice_: str = "split") -> tuple[int, ...]:
    """Sign of each weight (canonical order) on the real slice."""
    delta = canonical_order(_check_delta(delta))
    signs = []
    wall = []
    for beta in delta:
        s = slice_sign_value(eval_weight(beta, X), slice_)
        if s == 0:
            wall.append(beta)
        signs.append(1 if s > 0 else -1)
    if wall:
        raise OnWallError(wall)
    return tuple(signs)


def hyperplanes(delta: Iterable[Weight]) -> tuple[Weight, ...]:
    """Primitive normals of the distinct hyperplanes ``{beta = 0}``, canonical order."""
    return canonical_order(beta.primitive() for beta in _check_delta(delta))


def signs_to_label(signs: Iterable[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def chamber_label(delta: Iterable[Weight], X: CartanElement, slice_: str = "split") -> str:
    """Compact chamber name: one sign per hyperplane, e.g. ``"+-"``."""
    return signs_to_label(chamber_id(hyperplanes(delta), X, slice_))


def _rank(rows: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def count_chambers(normals: Sequence[Weight]) -> int:
    """Number of chambers of a central real arrangement (Zaslavsky/Whitney).

    ``r(A) = sum over subsets S of (-1)^(|S| - rank S)``.
    """
    normals = list(normals)
    total = 0
    for k in range(len(normals) + 1):
        for sub in itertools.combinations(normals, k):
            rk = _rank([b.coeffs for b in sub]) if sub else 0
            total += (-1) ** (k - rk)
    return total


@dataclass(frozen=True)
class Chamber:
    label: str
    representative: CartanElement


def enumerate_chambers(
    delta: Iterable[Weight],
    slice_: str = "split",
    seed: int = 0,
    max_draws: int = 2_000_000,
) -> list[Chamber]:
    """All realizable chambers, each with an integer representative on the slice.

    Candidate points are drawn at random (seeded) and classified with exact
    integer sign evaluation; the draw stops once the number of distinct sign
    vectors equals the exact chamber count.
    """
    normals = hyperplanes(delta)
    rank = normals[0].rank
    target = count_chambers(normals)
    A = np.array([b.coeffs for b in normals], dtype=np.int64)
    rng = np.random.default_rng(seed)
    found: dict[str, tuple[int, ...]] = {}
    drawn = 0
    scale = 8
    while len(found) < target and drawn < max_draws:
        batch = rng.integers(-scale, scale + 1, size=(4096, rank), dtype=np.int64)
        vals = batch @ A.T
        ok = np.all(vals != 0, axis=1)
        for v, row in zip(batch[ok], vals[ok]):
            label = signs_to_label(row)
            if label not in found:
                found[label] = tuple(int(x) for x in v)
        drawn += len(batch)
        scale = min(scale * 2, 1 << 20)
    if len(found) != target:
        raise RuntimeError(f"found {len(found)} of {target} chambers after {drawn} draws")
    return [
        Chamber(label, CartanElement.on_slice(found[label], slice_))
        for label in sorted(found)
    ]
