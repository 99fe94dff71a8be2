"""Complex polynomials in one and two variables.

``Poly1`` stores coefficients a_0..a_d with trailing zeros trimmed.
``Poly2`` stores a sparse map (m, n) -> coefficient of z1**m z2**n with no
zero entries.  Both are immutable.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

import numpy as np


class Poly1:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex] = ()):
        c = [complex(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    def __call__(self, z):
        out = 0j * np.asarray(z)
        for a in reversed(self.coeffs):
            out = out * z + a
        return out

    def derivative(self) -> "Poly1":
        return Poly1(k * a for k, a in enumerate(self.coeffs) if k)

    def __eq__(self, other):
        return isinstance(other, Poly1) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly1({list(self.coeffs)})"

    def __add__(self, other: "Poly1") -> "Poly1":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        for k, b in enumerate(other.coeffs):
            a[k] += b
        return Poly1(a)

    def __neg__(self):
        return Poly1(-a for a in self.coeffs)

    def __sub__(self, other: "Poly1") -> "Poly1":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly1):
            if not self.coeffs or not other.coeffs:
                return Poly1()
            return Poly1(np.convolve(self.coeffs, other.coeffs))
        return Poly1(a * other for a in self.coeffs)

    __rmul__ = __mul__

    def to_poly2(self, axis: int = 1) -> "Poly2":
        if axis == 1:
            return Poly2({(k, 0): a for k, a in enumerate(self.coeffs)})
        return Poly2({(0, k): a for k, a in enumerate(self.coeffs)})


class Poly2:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], complex] | None = None):
        clean = {}
        for (m, n), a in (terms or {}).items():
            if m < 0 or n < 0:
                raise ValueError(f"negative exponent ({m}, {n})")
            a = complex(a)
            if a != 0:
                clean[(int(m), int(n))] = a
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, m: int, n: int, coeff: complex = 1.0) -> "Poly2":
        return cls({(m, n): coeff})

    @classmethod
    def constant(cls, c: complex) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def from_array(cls, a: np.ndarray) -> "Poly2":
        return cls({(m, n): a[m, n] for m, n in zip(*np.nonzero(a))})

    @property
    def degrees(self) -> tuple[int, int]:
        """(deg in z1, deg in z2); (-1, -1) for the zero polynomial."""
        if not self.terms:
            return (-1, -1)
        return (max(m for m, _ in self.terms), max(n for _, n in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def to_array(self, M: int | None = None, N: int | None = None) -> np.ndarray:
        d1, d2 = self.degrees
        M = d1 if M is None else M
        N = d2 if N is None else N
        if d1 > M or d2 > N:
            raise ValueError(f"bidegree {self.degrees} exceeds ({M}, {N})")
        out = np.zeros((max(M, 0) + 1, max(N, 0) + 1), dtype=complex)
        for (m, n), a in self.terms.items():
            out[m, n] = a
        return out

    def __call__(self, z1, z2):
        out = 0j * np.asarray(z1) * np.asarray(z2)
        for (m, n), a in self.terms.items():
            out = out + a * np.power(z1, m) * np.power(z2, n)
        return out

    def __eq__(self, other):
        return isinstance(other, Poly2) and self.terms == other.terms

    def __repr__(self):
        return f"Poly2({self.terms})"

    def __add__(self, other: "Poly2") -> "Poly2":
        t = dict(self.terms)
        for k, a in other.terms.items():
            t[k] = t.get(k, 0j) + a
        return Poly2(t)

    def __neg__(self):
        return Poly2({k: -a for k, a in self.terms.items()})

    def __sub__(self, other: "Poly2") -> "Poly2":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly2):
            t: dict = {}
            for (m, n), a in self.terms.items():
                for (p, q), b in other.terms.items():
                    t[(m + p, n + q)] = t.get((m + p, n + q), 0j) + a * b
            return Poly2(t)
        return Poly2({k: a * other for k, a in self.terms.items()})

    __rmul__ = __mul__

    def shift(self, k: int = 0, l: int = 0) -> "Poly2":
        """Multiply by z1**k z2**l."""
        return Poly2({(m + k, n + l): a for (m, n), a in self.terms.items()})

    def max_abs_coeff(self) -> float:
        return max((abs(a) for a in self.terms.values()), default=0.0)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"terms": [{"m": m, "n": n, "re": a.real, "im": a.imag}
                          for (m, n), a in self.terms.items()]}

    @classmethod
    def from_dict(cls, data: dict) -> "Poly2":
        try:
            return cls({(int(t["m"]), int(t["n"])): complex(float(t["re"]), float(t.get("im", 0.0)))
                        for t in data["terms"]})
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc


def load_poly(path) -> Poly2:
    with open(path) as fh:
        return Poly2.from_dict(json.load(fh))


def hardy_norm_sq(p: Poly1 | Poly2) -> float:
    """Squared H^2 norm: the sum of squared coefficient moduli."""
    vals = p.coeffs if isinstance(p, Poly1) else p.terms.values()
    return float(sum(abs(a) ** 2 for a in vals))


def difference_quotient(g: Poly1, zeta: complex) -> Poly1:
    """(g - g(zeta)) / (z - zeta) by synthetic division."""
    c = g.coeffs
    if len(c) <= 1:
        return Poly1()
    q = [0j] * (len(c) - 1)
    acc = 0j
    for k in range(len(c) - 1, 0, -1):
        acc = acc * zeta + c[k]
        q[k - 1] = acc
    return Poly1(q)


def dilate(f: Poly2, R1: float, R2: float) -> Poly2:
    """f(R1 z1, R2 z2)."""
    return Poly2({(m, n): a * R1 ** m * R2 ** n for (m, n), a in f.terms.items()})


def slice_decompose(f: Poly2, axis: int) -> list[Poly1]:
    """Write f as a sum over powers of the ``axis`` variable.

    axis=2 gives [p_0, p_1, ...] with f = sum_n p_n(z1) z2**n;
    axis=1 gives [q_0, q_1, ...] with f = sum_m q_m(z2) z1**m.
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    if f.is_zero():
        return []
    d1, d2 = f.degrees
    a = f.to_array()
    if axis == 2:
        return [Poly1(a[:, n]) for n in range(d2 + 1)]
    return [Poly1(a[m, :]) for m in range(d1 + 1)]


def assemble_slices(slices: list[Poly1], axis: int) -> Poly2:
    t = {}
    for k, p in enumerate(slices):
        for j, a in enumerate(p.coeffs):
            t[(j, k) if axis == 2 else (k, j)] = a
    return Poly2(t)
