"""Finite positive measures on the closed unit disc and their moments.

A measure is a sum of closed-form components.  The (i, j)-th moment is

    mu{i, j} = integral of conj(zeta)**i * zeta**j  d mu(zeta)

and every component kind below has an exact expression for it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

#: atoms with |point| >= 1 - BOUNDARY_TOL are treated as lying on the circle
BOUNDARY_TOL = 1e-12


class MeasureError(ValueError):
    """Raised for an invalid measure description."""


@dataclass(frozen=True)
class Atom:
    point: complex
    mass: float


@dataclass(frozen=True)
class CircleUniform:
    mass: float


@dataclass(frozen=True)
class CircleArc:
    """Uniform density on the arc [start_angle, end_angle]; ``mass`` is the total mass."""

    start_angle: float
    end_angle: float
    mass: float


@dataclass(frozen=True)
class AreaDisc:
    """``mass`` times normalized area measure on the disc |z| < radius."""

    radius: float
    mass: float


MeasureComponent = Union[Atom, CircleUniform, CircleArc, AreaDisc]


def _validate(c: MeasureComponent) -> None:
    if not (c.mass >= 0 and math.isfinite(c.mass)):
        raise MeasureError(f"mass must be a finite nonnegative number, got {c.mass!r}")
    if isinstance(c, Atom):
        if abs(c.point) > 1 + BOUNDARY_TOL:
            raise MeasureError(f"atom {c.point!r} lies outside the closed unit disc")
    elif isinstance(c, CircleArc):
        a, b = c.start_angle, c.end_angle
        if not (a < b <= a + 2 * math.pi + 1e-15):
            raise MeasureError(f"arc needs start < end <= start + 2*pi, got ({a}, {b})")
    elif isinstance(c, AreaDisc):
        if not (0 < c.radius <= 1):
            raise MeasureError(f"area_disc radius must lie in (0, 1], got {c.radius!r}")
    elif not isinstance(c, CircleUniform):
        raise MeasureError(f"unknown component {c!r}")


@dataclass(frozen=True)
class MeasureSpec:
    components: tuple[MeasureComponent, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        for c in self.components:
            _validate(c)

    @property
    def total_mass(self) -> float:
        return float(sum(c.mass for c in self.components))

    def __add__(self, other: "MeasureSpec") -> "MeasureSpec":
        return MeasureSpec(self.components + other.components)

    def is_zero(self) -> bool:
        return all(c.mass == 0 for c in self.components)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        out = []
        for c in self.components:
            if isinstance(c, Atom):
                p = complex(c.point)
                out.append({"type": "atom", "point": [p.real, p.imag], "mass": c.mass})
            elif isinstance(c, CircleUniform):
                out.append({"type": "circle_uniform", "mass": c.mass})
            elif isinstance(c, CircleArc):
                out.append({"type": "circle_arc", "start_angle": c.start_angle,
                            "end_angle": c.end_angle, "mass": c.mass})
            else:
                out.append({"type": "area_disc", "radius": c.radius, "mass": c.mass})
        return {"components": out}

    @classmethod
    def from_dict(cls, data: dict) -> "MeasureSpec":
        if not isinstance(data, dict) or not isinstance(data.get("components"), list):
            raise MeasureError('measure JSON must be an object with a "components" list')
        comps = []
        for raw in data["components"]:
            try:
                kind = raw["type"]
                mass = float(raw["mass"])
                if kind == "atom":
                    re, im = raw["point"]
                    comps.append(Atom(complex(float(re), float(im)), mass))
                elif kind == "circle_uniform":
                    comps.append(CircleUniform(mass))
                elif kind == "circle_arc":
                    comps.append(CircleArc(float(raw["start_angle"]), float(raw["end_angle"]), mass))
                elif kind == "area_disc":
                    comps.append(AreaDisc(float(raw["radius"]), mass))
                else:
                    raise MeasureError(f"unknown component type {kind!r}")
            except (KeyError, TypeError, ValueError) as exc:
                if isinstance(exc, MeasureError):
                    raise
                raise MeasureError(f"malformed component {raw!r}: {exc}") from exc
        return cls(tuple(comps))

    @classmethod
    def from_json(cls, text: str) -> "MeasureSpec":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def load_measure(path) -> MeasureSpec:
    with open(path) as fh:
        return MeasureSpec.from_dict(json.load(fh))


def on_boundary(c: MeasureComponent) -> bool:
    if isinstance(c, Atom):
        return abs(c.point) >= 1 - BOUNDARY_TOL
    return isinstance(c, (CircleUniform, CircleArc))


def split_interior_boundary(spec: MeasureSpec) -> tuple[MeasureSpec, MeasureSpec]:
    """Split into the restrictions to the open disc and to the unit circle."""
    inner = tuple(c for c in spec.components if not on_boundary(c))
    outer = tuple(c for c in spec.components if on_boundary(c))
    return MeasureSpec(inner), MeasureSpec(outer)


# -- moments ---------------------------------------------------------------

def _component_moments(c: MeasureComponent, i: np.ndarray, j: np.ndarray) -> np.ndarray:
    # i, j are broadcastable integer arrays
    if isinstance(c, Atom):
        a = complex(c.point)
        return c.mass * np.power(a.conjugate(), i) * np.power(a, j)
    diag = (i == j)
    if isinstance(c, CircleUniform):
        return np.where(diag, c.mass, 0.0).astype(complex)
    if isinstance(c, AreaDisc):
        return np.where(diag, c.mass * np.power(c.radius, 2.0 * i) / (i + 1.0), 0.0).astype(complex)
    # circle arc
    t1, t2 = c.start_angle, c.end_angle
    d = (j - i).astype(float)
    safe = np.where(diag, 1.0, d)
    val = (np.exp(1j * safe * t2) - np.exp(1j * safe * t1)) / (1j * safe * (t2 - t1))
    return c.mass * np.where(diag, 1.0 + 0j, val)


def moment(spec: MeasureSpec, i: int, j: int) -> complex:
    """Exact moment integral of conj(zeta)**i zeta**j against ``spec``."""
    if i < 0 or j < 0:
        raise ValueError("moment indices must be nonnegative")
    ii, jj = np.asarray(i), np.asarray(j)
    return complex(sum((_component_moments(c, ii, jj) for c in spec.components), 0j))


def weighted_moment(spec: MeasureSpec, i: int, j: int, n: int) -> complex:
    """Moment against the weight (1 - |zeta|^2)**n, by binomial expansion."""
    if n < 0:
        raise ValueError("weight exponent must be nonnegative")
    return complex(sum((-1) ** l * math.comb(n, l) * moment(spec, i + l, j + l)
                       for l in range(n + 1)))


@dataclass(frozen=True)
class MomentTable:
    """Moments mu{i, j} for 0 <= i <= max_i, 0 <= j <= max_j (``entries[i, j]``)."""

    entries: np.ndarray

    @property
    def max_i(self) -> int:
        return self.entries.shape[0] - 1

    @property
    def max_j(self) -> int:
        return self.entries.shape[1] - 1

    def __getitem__(self, ij):
        return complex(self.entries[ij])

    def weighted(self, i: int, j: int, n: int) -> complex:
        return complex(sum((-1) ** l * math.comb(n, l) * self.entries[i + l, j + l]
                           for l in range(n + 1)))

    def hermitian_defect(self) -> float:
        k = min(self.entries.shape)
        sq = self.entries[:k, :k]
        return float(np.max(np.abs(sq - sq.conj().T), initial=0.0))


def moment_table(spec: MeasureSpec, max_i: int, max_j: int | None = None) -> MomentTable:
    if max_j is None:
        max_j = max_i
    i = np.arange(max_i + 1)[:, None]
    j = np.arange(max_j + 1)[None, :]
    out = np.zeros((max_i + 1, max_j + 1), dtype=complex)
    for c in spec.components:
        out += _component_moments(c, i, j)
    return MomentTable(out)


# -- seeded random measures --------------------------------------------------

def random_measure(rng: np.random.Generator, kinds=("atom", "circle_uniform", "circle_arc",
                                                     "area_disc", "boundary_atom")) -> MeasureSpec:
    """A mixture with one component of each requested kind and random masses.

    Interior atoms are kept inside |z| <= 0.85 so potentials stay moderate.
    """
    comps: list[MeasureComponent] = []
    for kind in kinds:
        mass = float(rng.uniform(0.1, 1.0))
        if kind == "atom":
            r = 0.85 * math.sqrt(rng.uniform())
            comps.append(Atom(complex(r * np.exp(2j * math.pi * rng.uniform())), mass))
        elif kind == "boundary_atom":
            comps.append(Atom(complex(np.exp(2j * math.pi * rng.uniform())), mass))
        elif kind == "circle_uniform":
            comps.append(CircleUniform(mass))
        elif kind == "circle_arc":
            a = float(rng.uniform(0, 2 * math.pi))
            comps.append(CircleArc(a, a + float(rng.uniform(0.2, 2 * math.pi)), mass))
        elif kind == "area_disc":
            comps.append(AreaDisc(float(rng.uniform(0.2, 1.0)), mass))
        else:
            raise ValueError(f"unknown kind {kind!r}")
    return MeasureSpec(tuple(comps))


def random_pairs(seed: int, count: int) -> list[tuple[MeasureSpec, MeasureSpec]]:
    rng = np.random.default_rng(seed)
    return [(random_measure(rng), random_measure(rng)) for _ in range(count)]
