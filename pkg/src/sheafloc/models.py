"""GKM-style combinatorial models of smooth projective torus manifolds.

A model records, for each isolated torus-fixed point, its tangent weights and
the value of the moment map there (a rational linear form on the Cartan
algebra).  Weight convention: on ``CP^n`` with homogeneous coordinate weights
``a_0..a_n`` the tangent weights at ``p_i`` are ``a_j - a_i`` (``j != i``).
The same convention is used by every builder, so a moment map is compatible
with the weights when ``J(q) - J(p)`` is a positive multiple of the weight at
``p`` pointing towards ``q``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DegenerateActionError, DimensionError, InvalidInputError
from .weights import (
    ONE,
    ZERO,
    CartanElement,
    ClassExpr,
    ClassTerm,
    CRational,
    Weight,
    as_fraction,
    canonical_order,
    eval_weight,
)


@dataclass(frozen=True)
class FixedPoint:
    name: str
    tangent_weights: tuple[Weight, ...]
    hamiltonian: tuple[Fraction, ...]
    # per-factor fixed-point index for models built from projective spaces
    coords: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "tangent_weights", tuple(self.tangent_weights))
        object.__setattr__(self, "hamiltonian", tuple(as_fraction(h) for h in self.hamiltonian))
        if self.coords is not None:
            object.__setattr__(self, "coords", tuple(self.coords))

    def den(self, X: CartanElement) -> CRational:
        """Product of the tangent weights evaluated at ``X``."""
        val = ONE
        for beta in self.tangent_weights:
            val = val * eval_weight(beta, X)
        return val


@dataclass(frozen=True)
class ProjectiveFactor:
    """One ``CP^n`` factor: its coordinate weights embedded in the ambient torus."""

    n: int
    coordinate_weights: tuple[Weight, ...]


@dataclass(frozen=True)
class GKMModel:
    rank: int
    dim: int
    fixed_points: tuple[FixedPoint, ...]
    kind: str = "custom"
    factors: tuple[ProjectiveFactor, ...] | None = None
    # builder arguments, kept for serialization
    params: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "fixed_points", tuple(self.fixed_points))
        names = [p.name for p in self.fixed_points]
        if len(set(names)) != len(names):
            raise InvalidInputError(f"fixed-point names are not unique: {names}")
        if not self.fixed_points:
            raise InvalidInputError("a model needs at least one fixed point")
        for p in self.fixed_points:
            if len(p.tangent_weights) != self.dim:
                raise DimensionError(
                    f"{p.name} has {len(p.tangent_weights)} tangent weights, expected {self.dim}"
                )
            if len(p.hamiltonian) != self.rank:
                raise DimensionError(f"{p.name}: hamiltonian has length {len(p.hamiltonian)}")
            for beta in p.tangent_weights:
                if beta.rank != self.rank:
                    raise DimensionError(f"{p.name}: weight {beta} has rank {beta.rank}")
                if beta.is_zero():
                    raise DegenerateActionError(f"{p.name}: zero tangent weight (fixed point not isolated)")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.fixed_points)

    @property
    def delta(self) -> tuple[Weight, ...]:
        """All tangent weights occurring at some fixed point, canonical order."""
        return canonical_order(b for p in self.fixed_points for b in p.tangent_weights)

    def point(self, name: str) -> FixedPoint:
        for p in self.fixed_points:
            if p.name == name:
                return p
        raise KeyError(name)

    def __len__(self):
        return len(self.fixed_points)


def _weights(ws, rank=None) -> tuple[Weight, ...]:
    out = tuple(w if isinstance(w, Weight) else Weight(tuple(w)) for w in ws)
    if rank is not None and any(w.rank != rank for w in out):
        raise DimensionError("coordinate weights must share one rank")
    return out


def build_cpn(n: int, coordinate_weights=None, hamiltonian_levels=None) -> GKMModel:
    """Projective space ``CP^n`` with a diagonal torus action.

    ``coordinate_weights`` defaults to the standard basis of a rank ``n+1``
    torus.  ``hamiltonian_levels`` defaults to ``2*(a_i - mean(a))`` which, for
    ``CP^1`` with weights ``(0),(1)``, puts the moment image at ``[-1, 1]``.
    """
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    if coordinate_weights is None:
        coordinate_weights = [tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)]
    a = _weights(coordinate_weights)
    if len(a) != n + 1:
        raise DimensionError(f"CP^{n} needs {n + 1} coordinate weights, got {len(a)}")
    rank = a[0].rank
    _weights(a, rank)
    if len(set(a)) != len(a):
        raise DegenerateActionError("repeated coordinate weights: torus fixed points are not isolated")
    if hamiltonian_levels is None:
        mean = [sum((Fraction(w.coeffs[j]) for w in a), Fraction(0)) / (n + 1) for j in range(rank)]
        levels = [tuple(2 * (w.coeffs[j] - mean[j]) for j in range(rank)) for w in a]
    else:
        levels = [tuple(as_fraction(x) for x in lv) for lv in hamiltonian_levels]
        if len(levels) != n + 1:
            raise DimensionError(f"need {n + 1} hamiltonian levels")
    points = [
        FixedPoint(
            name=f"p{i}",
            tangent_weights=tuple(a[j] - a[i] for j in range(n + 1) if j != i),
            hamiltonian=levels[i],
            coords=(i,),
        )
        for i in range(n + 1)
    ]
    params = {
        "n": n,
        "coordinate_weights": [list(w.coeffs) for w in a],
        "hamiltonian_levels": [[str(x) for x in lv] for lv in levels],
    }
    return GKMModel(
        rank=rank,
        dim=n,
        fixed_points=points,
        kind="cpn",
        factors=(ProjectiveFactor(n, a),),
        params=params,
    )


def build_flag3(dominant=(2, 1, 0)) -> GKMModel:
    """Full flags in ``C^3``; six fixed points indexed by permutations of 123.

    At the identity the tangent weights are ``e_j - e_i`` for ``i < j``; at
    ``w`` they are the images ``e_w(j) - e_w(i)``.  The moment map value at
    ``w`` is the permuted dominant weight ``w.lambda``.
    """
    lam = tuple(as_fraction(x) for x in dominant)
    if len(lam) != 3:
        raise DimensionError("flag3 needs a length-3 dominant weight")
    if not (lam[0] > lam[1] > lam[2]):
        raise InvalidInputError(f"dominant weight must be strictly decreasing: {dominant}")
    e = [Weight(tuple(int(i == j) for j in range(3))) for i in range(3)]
    points = []
    for w in itertools.permutations(range(3)):
        weights = tuple(e[w[j]] - e[w[i]] for i in range(3) for j in range(i + 1, 3))
        ham = [Fraction(0)] * 3
        for k in range(3):
            ham[w[k]] = lam[k]
        points.append(
            FixedPoint(name="w" + "".join(str(k + 1) for k in w), tangent_weights=weights, hamiltonian=ham)
        )
    return GKMModel(
        rank=3, dim=3, fixed_points=points, kind="flag3", params={"lambda": [str(x) for x in lam]}
    )


def build_product(A: GKMModel, B: GKMModel) -> GKMModel:
    """Product manifold; the torus is ``T_A x T_B`` with block-embedded weights."""
    rank = A.rank + B.rank
    points = []
    for p, q in itertools.product(A.fixed_points, B.fixed_points):
        weights = tuple(b.embed(0, rank) for b in p.tangent_weights) + tuple(
            b.embed(A.rank, rank) for b in q.tangent_weights
        )
        coords = p.coords + q.coords if p.coords is not None and q.coords is not None else None
        points.append(
            FixedPoint(
                name=f"{p.name}*{q.name}",
                tangent_weights=weights,
                hamiltonian=p.hamiltonian + q.hamiltonian,
                coords=coords,
            )
        )
    factors = None
    if A.factors is not None and B.factors is not None:
        factors = tuple(
            ProjectiveFactor(f.n, tuple(w.embed(0, rank) for w in f.coordinate_weights)) for f in A.factors
        ) + tuple(
            ProjectiveFactor(f.n, tuple(w.embed(A.rank, rank) for w in f.coordinate_weights))
            for f in B.factors
        )
    return GKMModel(
        rank=rank,
        dim=A.dim + B.dim,
        fixed_points=points,
        kind="product",
        factors=factors,
        params={"factors": (A, B)},
    )


def build_custom(rank: int, fixed_points: Sequence[Mapping]) -> GKMModel:
    """Model from explicit ``{"name", "tangent_weights", "hamiltonian"}`` records."""
    points = []
    dims = set()
    for rec in fixed_points:
        ws = _weights(rec["tangent_weights"])
        dims.add(len(ws))
        points.append(
            FixedPoint(
                name=str(rec["name"]),
                tangent_weights=ws,
                hamiltonian=rec.get("hamiltonian", [0] * rank),
            )
        )
    if len(dims) != 1:
        raise DimensionError(f"fixed points disagree on dimension: {sorted(dims)}")
    return GKMModel(rank=rank, dim=dims.pop(), fixed_points=points, kind="custom")


# ---------------------------------------------------------------------------
# fixed-point classes


@dataclass(frozen=True)
class FixedPointClass:
    """Restrictions ``alpha(X)_[0](p)`` of an equivariant form, one per fixed point."""

    label: str
    exprs: Mapping[str, ClassExpr]

    def __getitem__(self, name: str) -> ClassExpr:
        return self.exprs[name]


def one_class(model: GKMModel) -> FixedPointClass:
    return FixedPointClass("one", {p.name: ClassExpr.constant(1) for p in model.fixed_points})


def euler_form_class(model: GKMModel) -> FixedPointClass:
    """Equivariant Euler form: ``i^n * Den_p(X)`` at each fixed point."""
    return FixedPointClass(
        "euler",
        {
            p.name: ClassExpr((ClassTerm(numerator=p.tangent_weights, power_of_i=model.dim),))
            for p in model.fixed_points
        },
    )


def exp_hamiltonian_class(model: GKMModel, t=1) -> FixedPointClass:
    """``exp(t <X, J(p)>)`` at each fixed point."""
    t = as_fraction(t)
    return FixedPointClass(
        "exp-hamiltonian",
        {
            p.name: ClassExpr((ClassTerm(exponent=tuple(t * h for h in p.hamiltonian)),))
            for p in model.fixed_points
        },
    )


def inverse_den_sum(model: GKMModel, X: CartanElement) -> CRational:
    """Exact ``sum_p 1/Den_p(X)``; zero for every compact model with ``dim >= 1``."""
    total = ZERO
    for p in model.fixed_points:
        total = total + ONE / p.den(X)
    return total
