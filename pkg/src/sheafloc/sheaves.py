"""Constructible sheaves at the level of Euler characteristics.

A sheaf is stored as a stratification together with, for each stratum ``S``,
its compactly supported Euler characteristic ``chi_c(S)`` and the Euler
characteristic ``e_S`` of the stalks along ``S``.  Everything computed here
(``chi(M, F)``, fixed-point multiplicities, shifts, sums over distinguished
triangles) is linear in the vector ``(e_S)``.

Multiplicities come from the global formula

    m_p(X) = chi(M, F_{O_p}) = sum_S chi_c(S ∩ O_p) * e_S

where ``O_p`` is the attracting cell of ``p`` for the chamber of ``X``.  The
local (costalk) multiplicities are stored separately as oracle data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .errors import (
    IncompatibleStratificationError,
    InconsistentSheafError,
    InvalidInputError,
    UnsupportedSheafError,
)
from .models import GKMModel, build_cpn
from .weights import CartanElement, chamber_label

WILDCARD = "*"

Support = tuple[frozenset, ...]


@dataclass(frozen=True)
class Stratum:
    name: str
    chi_c: int
    stalk_euler: int
    # torus orbits whose union is this stratum; one support set per CP^n factor
    orbits: tuple[Support, ...] | None = None


@dataclass(frozen=True)
class ConstructibleSheaf:
    """Euler-level data of a constructible complex.

    ``kind`` names the stratification: ``constant`` (the single stratum
    ``M``, any stalk value), ``orbit`` (torus orbits), ``preset`` or
    ``custom`` (tables supplied).
    """

    strata: tuple[Stratum, ...]
    kind: str = "custom"
    # cell_tables[chamber][fixed_point][stratum] = chi_c(S ∩ O_p)
    cell_tables: Mapping[str, Mapping[str, Mapping[str, int]]] | None = None
    # costalk_table[chamber][fixed_point] = local multiplicity
    costalk_table: Mapping[str, Mapping[str, int]] | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "strata", tuple(self.strata))
        names = [s.name for s in self.strata]
        if len(set(names)) != len(names):
            raise InvalidInputError(f"stratum names are not unique: {names}")
        if self.kind not in ("constant", "orbit", "preset", "custom"):
            raise InvalidInputError(f"unknown sheaf kind {self.kind!r}")

    @property
    def stalks(self) -> dict[str, int]:
        return {s.name: s.stalk_euler for s in self.strata}

    def stratum(self, name: str) -> Stratum:
        for s in self.strata:
            if s.name == name:
                return s
        raise KeyError(name)

    def with_stalks(self, stalks: Mapping[str, int]) -> "ConstructibleSheaf":
        """Same stratification and tables, new stalk Euler characteristics.

        Costalk data cannot be transported to new stalks and is dropped.
        """
        unknown = set(stalks) - {s.name for s in self.strata}
        if unknown:
            raise InvalidInputError(f"unknown strata: {sorted(unknown)}")
        strata = tuple(replace(s, stalk_euler=int(stalks.get(s.name, s.stalk_euler))) for s in self.strata)
        return replace(self, strata=strata, costalk_table=None)


@dataclass(frozen=True)
class MultiplicityVector:
    chamber: str
    m: Mapping[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.m.values())

    def __getitem__(self, name):
        return self.m[name]


# ---------------------------------------------------------------------------
# builders


def constant_sheaf(model: GKMModel) -> ConstructibleSheaf:
    """``C_M``: one stratum; every attracting cell is an affine space, so
    ``chi(M) = #fixed points`` and every costalk is ``C[-2 dim O_p]``."""
    return ConstructibleSheaf(
        strata=(Stratum("M", chi_c=len(model), stalk_euler=1),),
        kind="constant",
        costalk_table={WILDCARD: {p.name: 1 for p in model.fixed_points}},
        name="constant",
    )


def _support_name(support: Support) -> str:
    return "x".join("{" + ",".join(str(i) for i in sorted(s)) + "}" for s in support)


def _normalize_support(model: GKMModel, key) -> Support:
    factors = model.factors
    if isinstance(key, str):
        key = [[int(x) for x in part.strip("{}").split(",") if x != ""] for part in key.split("x")]
    elif factors is not None and len(factors) == 1 and all(isinstance(i, int) for i in key):
        key = [key]
    support = tuple(frozenset(int(i) for i in part) for part in key)
    if factors is None or len(support) != len(factors):
        raise InvalidInputError(f"orbit support {key!r} does not match the model's factors")
    for s, f in zip(support, factors):
        if not s or not s <= set(range(f.n + 1)):
            raise InvalidInputError(f"orbit support {key!r} is not a nonempty subset of 0..{f.n}")
    return support


def torus_orbits(model: GKMModel) -> list[Support]:
    """All torus orbits of a product of projective spaces, by coordinate support."""
    if model.factors is None:
        raise UnsupportedSheafError(f"torus-orbit strata are only built in for CP^n and products (got {model.kind})")
    per_factor = []
    for f in model.factors:
        idx = range(f.n + 1)
        subsets = [frozenset(c) for k in range(1, f.n + 2) for c in itertools.combinations(idx, k)]
        per_factor.append(subsets)
    return [tuple(s) for s in itertools.product(*per_factor)]


def orbit_sheaf(model: GKMModel, stalks: Mapping | Iterable = ()) -> ConstructibleSheaf:
    """Sheaf constant along torus orbits; ``stalks`` maps orbit supports to ``e``.

    Supports are given per factor, e.g. ``(0, 1)`` on ``CP^n`` or
    ``((0,), (0, 1))`` on a product; unlisted orbits get ``e = 0``.  An orbit
    with support sizes ``k_f`` is ``prod (C^*)^(k_f - 1)``, so only the fixed
    points have nonzero ``chi_c``.
    """
    items = stalks.items() if isinstance(stalks, Mapping) else stalks
    given = {}
    for key, e in items:
        given[_normalize_support(model, key)] = int(e)
    strata = []
    for orbit in torus_orbits(model):
        point = all(len(s) == 1 for s in orbit)
        strata.append(
            Stratum(_support_name(orbit), chi_c=int(point), stalk_euler=given.get(orbit, 0), orbits=(orbit,))
        )
    costalk = {}
    for p in model.fixed_points:
        orbit = tuple(frozenset((i,)) for i in p.coords)
        costalk[p.name] = given.get(orbit, 0)
    return ConstructibleSheaf(
        strata=tuple(strata), kind="orbit", costalk_table={WILDCARD: costalk}, name="orbit"
    )


def extension_by_zero(model: GKMModel, excluded: Iterable) -> ConstructibleSheaf:
    """``j_! C_U`` for ``U`` the complement of the listed torus orbits."""
    excluded = {_normalize_support(model, key) for key in excluded}
    stalks = {o: int(o not in excluded) for o in torus_orbits(model)}
    return replace(orbit_sheaf(model, stalks), name="extension-by-zero")


def halfplane_model() -> GKMModel:
    """``CP^1`` with the split torus of ``SL(2, R)``: ``p0 = 0``, ``p1 = infinity``.

    Coordinate weights ``(1), (0)`` make the tangent weight at ``p0`` equal to
    ``(-1)``, so the chamber ``+`` (``X > 0``) has its big cell at ``p0``.
    """
    return build_cpn(1, [(1,), (0,)])


def cp1_upper_halfplane() -> ConstructibleSheaf:
    """Extension by zero of the constant sheaf on the upper half-plane.

    Strata are the three ``SL(2, R)``-orbits on ``CP^1``: the open upper disk
    ``U``, the circle ``RP^1`` (containing both fixed points ``0`` and
    ``infinity``) and the open lower disk ``L``.  In chamber ``+`` the cells
    are ``O_p0 = CP^1 - {inf}`` and ``O_p1 = {inf}``; the circle meets them
    in an open interval (``chi_c = -1``) and a point.
    """
    strata = (
        Stratum("upper", chi_c=1, stalk_euler=1),
        Stratum("circle", chi_c=0, stalk_euler=0),
        Stratum("lower", chi_c=1, stalk_euler=0),
    )
    cell_tables = {
        "+": {
            "p0": {"upper": 1, "circle": -1, "lower": 1},
            "p1": {"upper": 0, "circle": 1, "lower": 0},
        },
        "-": {
            "p0": {"upper": 0, "circle": 1, "lower": 0},
            "p1": {"upper": 1, "circle": -1, "lower": 1},
        },
    }
    # along the open cell the costalk at a boundary point of U is C[-2]; along the point cell it is the stalk 0
    costalk = {"+": {"p0": 1, "p1": 0}, "-": {"p0": 0, "p1": 1}}
    return ConstructibleSheaf(
        strata=strata, kind="preset", cell_tables=cell_tables, costalk_table=costalk, name="cp1-upper-halfplane"
    )


PRESETS = {"cp1-upper-halfplane": (halfplane_model, cp1_upper_halfplane)}


def preset(name: str) -> tuple[GKMModel, ConstructibleSheaf]:
    try:
        make_model, make_sheaf = PRESETS[name]
    except KeyError:
        raise InvalidInputError(f"unknown preset {name!r}; available: {sorted(PRESETS)}") from None
    return make_model(), make_sheaf()


# ---------------------------------------------------------------------------
# operations


def euler_characteristic(F: ConstructibleSheaf) -> int:
    return sum(s.chi_c * s.stalk_euler for s in F.strata)


def _scale_table(table, factor):
    if table is None:
        return None
    return {ch: {p: factor * v for p, v in row.items()} for ch, row in table.items()}


def shift(F: ConstructibleSheaf, k: int) -> ConstructibleSheaf:
    """``F[k]``: all stalk and costalk Euler characteristics pick up ``(-1)^k``."""
    sign = -1 if k % 2 else 1
    strata = tuple(replace(s, stalk_euler=sign * s.stalk_euler) for s in F.strata)
    return replace(F, strata=strata, costalk_table=_scale_table(F.costalk_table, sign))


def _merge_costalks(a, b):
    if a is None or b is None:
        return None
    out = {}
    for ch in set(a) | set(b):
        ra = a.get(ch, a.get(WILDCARD))
        rb = b.get(ch, b.get(WILDCARD))
        if ra is None or rb is None:
            continue
        out[ch] = {p: ra.get(p, 0) + rb.get(p, 0) for p in set(ra) | set(rb)}
    return out


def add(F1: ConstructibleSheaf, F2: ConstructibleSheaf) -> ConstructibleSheaf:
    """Middle term of a distinguished triangle ``F1 -> F -> F2`` at Euler level."""
    sig1 = [(s.name, s.chi_c, s.orbits) for s in F1.strata]
    sig2 = [(s.name, s.chi_c, s.orbits) for s in F2.strata]
    if sig1 != sig2:
        raise IncompatibleStratificationError("sheaves are stratified differently")
    if (F1.cell_tables or None) != (F2.cell_tables or None):
        raise IncompatibleStratificationError("sheaves carry different cell-intersection tables")
    strata = tuple(replace(a, stalk_euler=a.stalk_euler + b.stalk_euler) for a, b in zip(F1.strata, F2.strata))
    kind = F1.kind if F1.kind == F2.kind else "custom"
    return ConstructibleSheaf(
        strata=strata,
        kind=kind,
        cell_tables=F1.cell_tables,
        costalk_table=_merge_costalks(F1.costalk_table, F2.costalk_table),
        name=f"{F1.name}+{F2.name}",
    )


def validate_table(model: GKMModel, F: ConstructibleSheaf, chamber: str, table) -> list[str]:
    """Additivity identities a cell-intersection table must satisfy.

    The cells partition ``M`` and ``chi_c`` is additive, so for each stratum
    ``sum_p table[p][S] = chi_c(S)``; summing against the stalks then gives
    ``sum_p m_p = chi(M, F)``.
    """
    problems = []
    names = set(model.names)
    strata = {s.name for s in F.strata}
    unknown_p = set(table) - names
    if unknown_p:
        problems.append(f"chamber {chamber}: unknown fixed points {sorted(unknown_p)}")
    for p, row in table.items():
        unknown_s = set(row) - strata
        if unknown_s:
            problems.append(f"chamber {chamber}: {p} lists unknown strata {sorted(unknown_s)}")
    for s in F.strata:
        col = sum(table.get(p, {}).get(s.name, 0) for p in model.names)
        if col != s.chi_c:
            problems.append(f"chamber {chamber}: sum_p chi_c({s.name} ∩ O_p) = {col} != chi_c({s.name}) = {s.chi_c}")
    lhs = sum(table.get(p, {}).get(s.name, 0) * s.stalk_euler for p in model.names for s in F.strata)
    rhs = euler_characteristic(F)
    if lhs != rhs:
        problems.append(f"chamber {chamber}: sum_p sum_S table*e_S = {lhs} != chi(M,F) = {rhs}")
    return problems


def validate(model: GKMModel, F: ConstructibleSheaf) -> list[str]:
    """All consistency checks for user-supplied tables; empty list when clean."""
    problems = []
    if F.kind == "constant":
        if len(F.strata) != 1 or F.strata[0].chi_c != len(model):
            problems.append(f"constant sheaf must have one stratum with chi_c = {len(model)}")
    if F.kind == "orbit" and model.factors is None:
        problems.append("orbit strata need a model built from projective spaces")
    for chamber, table in (F.cell_tables or {}).items():
        problems.extend(validate_table(model, F, chamber, table))
    return problems


def multiplicities(model: GKMModel, F: ConstructibleSheaf, X: CartanElement, slice_: str = "split") -> MultiplicityVector:
    from .bb import cell_intersection_table

    label = chamber_label(model.delta, X, slice_)
    table = cell_intersection_table(model, F, X, slice_)
    stalks = F.stalks
    m = {p: sum(table[p, s] * stalks[s] for s in stalks) for p in model.names}
    return MultiplicityVector(label, m)


def multiplicities_local(model: GKMModel, F: ConstructibleSheaf, X: CartanElement, slice_: str = "split") -> MultiplicityVector:
    """Costalk Euler characteristics, read from the sheaf's stored oracle data."""
    label = chamber_label(model.delta, X, slice_)
    table = F.costalk_table or {}
    row = table.get(label, table.get(WILDCARD))
    if row is None:
        raise UnsupportedSheafError(f"sheaf {F.name or F.kind!r} carries no costalk data for chamber {label}")
    missing = set(model.names) - set(row)
    if missing:
        raise InconsistentSheafError([f"costalk table for chamber {label} misses {sorted(missing)}"])
    return MultiplicityVector(label, {p: int(row[p]) for p in model.names})
