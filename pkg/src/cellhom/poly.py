"""Finitely supported integer polynomials in one variable t, used for Poincare series."""

from __future__ import annotations

from typing import Iterable, Mapping


class GradedPolynomial:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        clean = {}
        for d, c in items:
            d, c = int(d), int(c)
            if d < 0:
                raise ValueError(f"negative degree {d}")
            if c:
                clean[d] = clean.get(d, 0) + c
        self._coeffs = {d: c for d, c in sorted(clean.items()) if c}

    @classmethod
    def one(cls) -> GradedPolynomial:
        return cls({0: 1})

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._coeffs)

    @property
    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def __getitem__(self, d: int) -> int:
        return self._coeffs.get(d, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __add__(self, other: GradedPolynomial) -> GradedPolynomial:
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, 0) + c
        return GradedPolynomial(out)

    def __mul__(self, other: GradedPolynomial) -> GradedPolynomial:
        out: dict[int, int] = {}
        for d1, c1 in self._coeffs.items():
            for d2, c2 in other._coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return GradedPolynomial(out)

    def __call__(self, t: int) -> int:
        return sum(c * t ** d for d, c in self._coeffs.items())

    def sparse(self) -> str:
        """Degree:coefficient pairs, e.g. ``0:1 2:1``."""
        return " ".join(f"{d}:{c}" for d, c in self._coeffs.items()) or "0:0"

    @classmethod
    def parse_sparse(cls, text: str) -> GradedPolynomial:
        coeffs: dict[int, int] = {}
        for tok in text.replace(",", " ").split():
            d, sep, c = tok.partition(":")
            if not sep:
                raise ValueError(f"expected degree:coefficient, got {tok!r}")
            coeffs[int(d)] = coeffs.get(int(d), 0) + int(c)
        return cls(coeffs)

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for d, c in self._coeffs.items():
            mag = abs(c)
            if d == 0:
                term = str(mag)
            else:
                var = "t" if d == 1 else f"t^{d}"
                term = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"GradedPolynomial({self._coeffs!r})"
