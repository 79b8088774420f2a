"""Bialynicki-Birula cells per chamber.

For a regular ``X`` the one-parameter subgroup generated by the slice
direction of ``X`` splits each tangent space ``T_p M`` into weights with
negative and positive sign; the attracting cell ``O_p`` is isomorphic to the
negative part.  Only the sign pattern of ``X`` enters, so the decomposition is
constant on chambers.  Cells are never realized as sets; we keep their
dimensions and their Euler-characteristic intersections with strata.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistentSheafError
from .models import GKMModel
from .sheaves import WILDCARD, ConstructibleSheaf, validate_table
from .weights import CartanElement, Weight, chamber_label, eval_weight, slice_sign_value


@dataclass(frozen=True)
class BBCell:
    fixed_point: str
    dim_minus: int
    negative_weights: tuple[Weight, ...]


@dataclass(frozen=True)
class BBDecomposition:
    chamber: str
    cells: tuple[BBCell, ...]

    @property
    def dims(self) -> dict[str, int]:
        return {c.fixed_point: c.dim_minus for c in self.cells}


def bb_decompose(model: GKMModel, X: CartanElement, slice_: str = "split") -> BBDecomposition:
    label = chamber_label(model.delta, X, slice_)  # raises OnWallError
    cells = []
    for p in model.fixed_points:
        neg = tuple(b for b in p.tangent_weights if slice_sign_value(eval_weight(b, X), slice_) < 0)
        cells.append(BBCell(p.name, len(neg), neg))
    return BBDecomposition(label, tuple(cells))


def _orbit_cell_chi_c(orbit, coords) -> int:
    # an orbit prod (C^*)^(k_f - 1) lies in a single cell; chi_c vanishes unless it is a point
    return int(all(s == {i} for s, i in zip(orbit, coords)))


def cell_intersection_table(
    model: GKMModel, sheaf: ConstructibleSheaf, X: CartanElement, slice_: str = "split"
) -> dict[tuple[str, str], int]:
    """``chi_c(S ∩ O_p)`` for every fixed point ``p`` and stratum ``S``.

    Built in for the constant sheaf (each cell is affine, ``chi_c = 1``) and
    for torus-orbit strata on products of projective spaces.  Preset and
    custom sheaves supply a table per chamber, which is validated first.
    """
    label = chamber_label(model.delta, X, slice_)
    if sheaf.kind == "constant" and not sheaf.cell_tables:
        (s,) = sheaf.strata
        return {(p, s.name): 1 for p in model.names}
    if sheaf.kind == "orbit" or (not sheaf.cell_tables and all(s.orbits for s in sheaf.strata)):
        if model.factors is None:
            raise InconsistentSheafError([f"orbit strata on a {model.kind} model"])
        return {
            (p.name, s.name): sum(_orbit_cell_chi_c(o, p.coords) for o in s.orbits)
            for p in model.fixed_points
            for s in sheaf.strata
        }
    tables = sheaf.cell_tables or {}
    table = tables.get(label, tables.get(WILDCARD))
    if table is None:
        raise InconsistentSheafError([f"no cell-intersection table for chamber {label}"])
    problems = validate_table(model, sheaf, label, table)
    if problems:
        raise InconsistentSheafError(problems)
    return {(p, s.name): int(table.get(p, {}).get(s.name, 0)) for p in model.names for s in sheaf.strata}
