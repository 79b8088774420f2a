"""Fixed-point localization formulas.

All public operations go through one master sum

    value = sign * (2 pi)^a * i^b * sum_p m_p * alpha_[0](p) / Den_p(X)

and differ only in the prefactor record and the multiplicities.  The
characteristic-cycle formula uses ``(-2 pi i)^n``; Berline-Vergne on the
compact slice uses ``(-2 pi)^n / det^{1/2}(L_p)`` with
``Den_p = i^n det^{1/2}(L_p)``, which is the same ``(-2 pi i)^n``.

With the weight convention of :mod:`sheafloc.models` and the Hamiltonian
paired directly with ``X`` (``alpha_[0](p) = exp<X, J(p)>``), the master sum
is ``i^n`` times the honest integral ``int_M exp(<X, J> + omega)``.  The
factor ``CALIBRATION ** n`` removes it; it is fixed by the ``CP^1``
quadrature and asserted (as the unique choice) in the test suite.  The Euler
form needs no calibration: its restriction ``i^n Den_p`` already absorbs it.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import DomainWarning, SingularEvaluationError
from .models import FixedPointClass, GKMModel, euler_form_class, exp_hamiltonian_class
from .sheaves import ConstructibleSheaf, euler_characteristic, multiplicities
from .weights import CartanElement, enumerate_chambers, eval_class, eval_weight, is_regular

# multiply the master sum by CALIBRATION**n to match exp-Hamiltonian integrals
CALIBRATION = -1j
CALIBRATION_I_POWER = 3  # CALIBRATION == i**3

GAUSS_BONNET_TOL = 1e-9


def calibration(n: int) -> complex:
    return 1j ** ((CALIBRATION_I_POWER * n) % 4)


@dataclass(frozen=True)
class Prefactor:
    two_pi_power: int
    i_power: int
    sign: int

    @property
    def value(self) -> complex:
        return self.sign * (2 * math.pi) ** self.two_pi_power * 1j ** (self.i_power % 4)

    @classmethod
    def master(cls, n: int) -> "Prefactor":
        """``(-2 pi i)^n``."""
        return cls(n, n % 4, (-1) ** n)

    def calibrated(self, n: int) -> "Prefactor":
        return Prefactor(self.two_pi_power, (self.i_power + CALIBRATION_I_POWER * n) % 4, self.sign)

    def as_dict(self) -> dict:
        return {"two_pi_power": self.two_pi_power, "i_power": self.i_power, "sign": self.sign}


@dataclass(frozen=True)
class Term:
    fixed_point: str
    m: int
    numerator: complex
    den: complex


def _fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


@dataclass(frozen=True)
class LocalizationResult:
    value: complex
    terms: tuple[Term, ...]
    prefactor: Prefactor
    chamber: str | None = None
    off_slice: bool = False

    def recompute(self) -> complex:
        """Value rebuilt from the per-term breakdown."""
        return self.prefactor.value * _fsum_complex(t.m * t.numerator / t.den for t in self.terms)

    def as_dict(self) -> dict:
        return {
            "value_re": self.value.real,
            "value_im": self.value.imag,
            "prefactor": self.prefactor.as_dict(),
            "chamber": self.chamber,
            "off_slice": self.off_slice,
            "terms": [
                {
                    "fixed_point": t.fixed_point,
                    "m": t.m,
                    "numerator": {"re": t.numerator.real, "im": t.numerator.imag},
                    "den": {"re": t.den.real, "im": t.den.imag},
                }
                for t in self.terms
            ],
        }


def _require_regular(model: GKMModel, X: CartanElement) -> None:
    reg = is_regular(model.delta, X)
    if not reg:
        raise SingularEvaluationError(reg.violations[0])


def _assemble(model, cls, X, m, prefactor, chamber=None, off_slice=False) -> LocalizationResult:
    terms = []
    for p in model.fixed_points:
        den = p.den(X)
        if not den:
            bad = next(b for b in p.tangent_weights if not eval_weight(b, X))
            raise SingularEvaluationError(bad)
        mult = 1 if m is None else int(m[p.name])
        terms.append(Term(p.name, mult, eval_class(cls[p.name], X), complex(den)))
    total = _fsum_complex(t.m * t.numerator / t.den for t in terms)
    return LocalizationResult(prefactor.value * total, tuple(terms), prefactor, chamber, off_slice)


def bv_localize(model: GKMModel, cls: FixedPointClass, X: CartanElement, slice_: str = "compact") -> LocalizationResult:
    """Berline-Vergne sum over the fixed points (all multiplicities 1).

    Stated for ``X`` on the compact slice; elsewhere the value is still
    computed (analytic continuation) and ``off_slice`` is set.
    """
    _require_regular(model, X)
    off = not X.lies_on(slice_)
    if off:
        warnings.warn(f"X = {X} is not on the {slice_} slice", DomainWarning, stacklevel=2)
    return _assemble(model, cls, X, None, Prefactor.master(model.dim), off_slice=off)


def main_localize(
    model: GKMModel, F: ConstructibleSheaf, cls: FixedPointClass, X: CartanElement, slice_: str = "split"
) -> LocalizationResult:
    """``(-2 pi i)^n sum_k m_k(X) alpha_[0](x_k) / Den_{x_k}(X)``."""
    _require_regular(model, X)
    mv = multiplicities(model, F, X, slice_)
    return _assemble(model, cls, X, mv.m, Prefactor.master(model.dim), chamber=mv.chamber)


@dataclass(frozen=True)
class GaussBonnet:
    localized: complex
    combinatorial: int
    match: bool
    result: LocalizationResult

    def as_dict(self) -> dict:
        loc = self.localized
        return {
            "localized": loc.real if abs(loc.imag) < GAUSS_BONNET_TOL else {"re": loc.real, "im": loc.imag},
            "combinatorial": self.combinatorial,
            "match": self.match,
        }


def gauss_bonnet(
    model: GKMModel, F: ConstructibleSheaf, X: CartanElement, slice_: str = "split", tol: float = GAUSS_BONNET_TOL
) -> GaussBonnet:
    res = main_localize(model, F, euler_form_class(model), X, slice_)
    localized = res.value / (2 * math.pi) ** model.dim
    chi = euler_characteristic(F)
    return GaussBonnet(localized, chi, abs(localized - chi) < tol, res)


def dh_fourier(
    model: GKMModel, F: ConstructibleSheaf, X: CartanElement, slice_: str = "split", t=1
) -> LocalizationResult:
    """Fourier transform of the Duistermaat-Heckman measure at ``X``.

    ``(-2 pi)^n sum_p m_p(X) e^{<X, J(p)>} / Den_p(X)``: the master sum with
    the calibration applied.
    """
    _require_regular(model, X)
    mv = multiplicities(model, F, X, slice_)
    pref = Prefactor.master(model.dim).calibrated(model.dim)
    return _assemble(model, exp_hamiltonian_class(model, t), X, mv.m, pref, chamber=mv.chamber)


@dataclass(frozen=True)
class ChamberRow:
    chamber: str
    X: CartanElement
    m: dict
    value: complex
    total: int


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SHEAFLOC_THREADS", "1")))
    except ValueError:
        return 1


def chamber_scan(
    model: GKMModel, F: ConstructibleSheaf, cls: FixedPointClass, slice_: str = "split", seed: int = 0
) -> list[ChamberRow]:
    """One row per realizable chamber: multiplicities and ``F_alpha`` at a sample point."""
    chambers = enumerate_chambers(model.delta, slice_, seed=seed)

    def row(ch):
        res = main_localize(model, F, cls, ch.representative, slice_)
        m = {t.fixed_point: t.m for t in res.terms}
        return ChamberRow(ch.label, ch.representative, m, res.value, sum(m.values()))

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        return list(pool.map(row, chambers))
