"""Scene files: JSON descriptions of a model, a sheaf, a Cartan element and options.

Rationals are written as strings (``"3/7"``) so nothing passes through a
float.  See ``docs/scene_schema.md`` for the schema.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import InvalidInputError
from .models import GKMModel, build_cpn, build_custom, build_flag3, build_product
from .sheaves import (
    ConstructibleSheaf,
    Stratum,
    constant_sheaf,
    extension_by_zero,
    orbit_sheaf,
    preset,
    shift,
)
from .weights import SLICES, CartanElement, CRational, as_fraction

_TOKEN = re.compile(r"^(?P<re>[+-]?[0-9./]+)?(?:(?P<sign>[+-]?)i(?P<im>[0-9./]*))?$")


def parse_complex(token: str) -> CRational:
    """``"3/2"``, ``"i"``, ``"i1"``, ``"-i1/2"``, ``"1+i2"``."""
    tok = token.strip().replace(" ", "")
    m = _TOKEN.match(tok)
    if not tok or not m:
        raise InvalidInputError(f"cannot parse complex rational {token!r}")
    re_part = as_fraction(m["re"]) if m["re"] else Fraction(0)
    im_part = Fraction(0)
    if "i" in tok:
        im_part = as_fraction(m["im"]) if m["im"] else Fraction(1)
        if m["sign"] == "-":
            im_part = -im_part
    return CRational(re_part, im_part)


def parse_X(text: str) -> CartanElement:
    """Comma-separated complex rationals, e.g. ``"i1"`` or ``"1,-2,i3/2"``."""
    zs = [parse_complex(tok) for tok in text.split(",")]
    return CartanElement(tuple(z.re for z in zs), tuple(z.im for z in zs))


def X_from_json(obj) -> CartanElement:
    if isinstance(obj, str):
        return parse_X(obj)
    if isinstance(obj, list):
        return CartanElement.real(obj)
    re_part = obj.get("re")
    im_part = obj.get("im")
    if re_part is None and im_part is None:
        raise InvalidInputError("X needs 're' and/or 'im'")
    if re_part is None:
        re_part = [0] * len(im_part)
    return CartanElement(tuple(re_part), tuple(im_part or ()))


def X_to_json(X: CartanElement) -> dict:
    return {"re": [str(x) for x in X.re], "im": [str(x) for x in X.im]}


# ---------------------------------------------------------------------------
# models


def model_from_json(d: dict) -> GKMModel:
    try:
        kind = d["kind"]
        if kind == "cpn":
            return build_cpn(int(d["n"]), d.get("coordinate_weights"), d.get("hamiltonian_levels"))
        if kind == "flag3":
            return build_flag3(d.get("lambda", (2, 1, 0)))
        if kind == "product":
            factors = [model_from_json(f) for f in d["factors"]]
            if len(factors) < 2:
                raise InvalidInputError("a product needs at least two factors")
            out = factors[0]
            for f in factors[1:]:
                out = build_product(out, f)
            return out
        if kind == "custom":
            return build_custom(int(d["rank"]), d["fixed_points"])
    except KeyError as exc:
        raise InvalidInputError(f"manifold descriptor is missing {exc}") from None
    raise InvalidInputError(f"unknown manifold kind {kind!r}")


def model_to_json(model: GKMModel) -> dict:
    if model.kind == "cpn":
        return {"kind": "cpn", **model.params}
    if model.kind == "flag3":
        return {"kind": "flag3", **model.params}
    if model.kind == "product":
        return {"kind": "product", "factors": [model_to_json(f) for f in model.params["factors"]]}
    return {
        "kind": "custom",
        "rank": model.rank,
        "fixed_points": [
            {
                "name": p.name,
                "tangent_weights": [list(b.coeffs) for b in p.tangent_weights],
                "hamiltonian": [str(h) for h in p.hamiltonian],
            }
            for p in model.fixed_points
        ],
    }


# ---------------------------------------------------------------------------
# sheaves


def _int_table(obj, depth):
    if depth == 0:
        return int(obj)
    return {str(k): _int_table(v, depth - 1) for k, v in obj.items()}


def sheaf_from_json(d: dict, model: GKMModel) -> ConstructibleSheaf:
    kind = d.get("kind")
    if "strata" in d:
        strata = []
        for s in d["strata"]:
            orbits = None
            if s.get("orbits") is not None:
                orbits = tuple(tuple(frozenset(part) for part in o) for o in s["orbits"])
            strata.append(Stratum(str(s["name"]), int(s["chi_c"]), int(s["stalk_euler"]), orbits))
        F = ConstructibleSheaf(
            strata=tuple(strata),
            kind=kind or "custom",
            cell_tables=_int_table(d["cell_tables"], 3) if d.get("cell_tables") else None,
            costalk_table=_int_table(d["costalk_tables"], 2) if d.get("costalk_tables") else None,
            name=d.get("name", ""),
        )
    elif kind == "constant":
        F = constant_sheaf(model)
    elif kind == "orbit":
        if "excluded" in d:
            F = extension_by_zero(model, [tuple(x) if isinstance(x, list) else x for x in d["excluded"]])
        else:
            F = orbit_sheaf(model, [(_support_key(s["support"]), s["euler"]) for s in d.get("stalks", [])])
    elif kind == "preset":
        _, F = preset(d["name"])
    else:
        raise InvalidInputError(f"unknown sheaf kind {kind!r}")
    if d.get("shift"):
        F = shift(F, int(d["shift"]))
    return F


def _support_key(obj):
    if isinstance(obj, str):
        return obj
    if obj and isinstance(obj[0], list):
        return tuple(tuple(x) for x in obj)
    return tuple(obj)


def sheaf_to_json(F: ConstructibleSheaf) -> dict:
    out = {
        "kind": F.kind,
        "name": F.name,
        "strata": [
            {
                "name": s.name,
                "chi_c": s.chi_c,
                "stalk_euler": s.stalk_euler,
                "orbits": None if s.orbits is None else [[sorted(part) for part in o] for o in s.orbits],
            }
            for s in F.strata
        ],
    }
    if F.cell_tables:
        out["cell_tables"] = {ch: {p: dict(row) for p, row in t.items()} for ch, t in F.cell_tables.items()}
    if F.costalk_table:
        out["costalk_tables"] = {ch: dict(row) for ch, row in F.costalk_table.items()}
    return out


# ---------------------------------------------------------------------------
# scenes


@dataclass(frozen=True)
class Scene:
    model: GKMModel
    sheaf: ConstructibleSheaf
    X: CartanElement | None = None
    slice: str = "split"
    tolerance: float = 1e-9
    seed: int = 0


def scene_from_json(d: dict) -> Scene:
    if not isinstance(d, dict):
        raise InvalidInputError("scene must be a JSON object")
    sheaf_d = d.get("sheaf", {"kind": "constant"})
    man = d.get("manifold")
    if man is None or man.get("kind") == "preset":
        if sheaf_d.get("kind") != "preset":
            raise InvalidInputError("scene needs a 'manifold' unless the sheaf is a preset")
        model, _ = preset(sheaf_d["name"])
    else:
        model = model_from_json(man)
    sheaf = sheaf_from_json(sheaf_d, model)
    X = X_from_json(d["X"]) if d.get("X") is not None else None
    if X is not None and X.rank != model.rank:
        raise InvalidInputError(f"X has length {X.rank}, model rank is {model.rank}")
    opts = d.get("options", {})
    slice_ = opts.get("slice", "split")
    if slice_ not in SLICES:
        raise InvalidInputError(f"unknown slice {slice_!r}")
    return Scene(model, sheaf, X, slice_, float(opts.get("tolerance", 1e-9)), int(opts.get("seed", 0)))


def scene_to_json(scene: Scene) -> dict:
    d = {
        "manifold": model_to_json(scene.model),
        "sheaf": sheaf_to_json(scene.sheaf),
        "options": {"slice": scene.slice, "tolerance": scene.tolerance, "seed": scene.seed},
    }
    if scene.X is not None:
        d["X"] = X_to_json(scene.X)
    return d


def loads_scene(text: str) -> Scene:
    return scene_from_json(json.loads(text))


def load_scene(path) -> Scene:
    return loads_scene(Path(path).read_text(encoding="utf-8"))
