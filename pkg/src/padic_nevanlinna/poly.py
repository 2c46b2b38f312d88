"""Sparse multivariate polynomials over Q.

A :class:`Poly` maps exponent tuples to nonzero ``Fraction`` coefficients.
It is deliberately small: the hypersurface, variety and binary-form code
only needs evaluation, partial derivatives, ring operations and linear
substitution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .valuation import as_fraction

__all__ = ["Poly"]

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Poly:
    nvars: int
    terms: tuple[tuple[Exponent, Fraction], ...]  # sorted, zero-free

    @classmethod
    def from_dict(cls, nvars: int, terms: Mapping[Exponent, object] | Iterable) -> "Poly":
        acc: dict[Exponent, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has {len(exp)} entries, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            acc[exp] = acc.get(exp, Fraction(0)) + as_fraction(coef)
        return cls(nvars, tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, ())

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        exp = [0] * nvars
        exp[i] = 1
        return cls.from_dict(nvars, {tuple(exp): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        """The linear form ``sum c_i x_i``."""
        n = len(coeffs)
        return cls.from_dict(n, {tuple(int(j == i) for j in range(n)): c
                                 for i, c in enumerate(coeffs)})

    # -- basic properties -------------------------------------------------------

    @property
    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> set[int]:
        return {sum(e) for e, _ in self.terms}

    @property
    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.degrees)

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different numbers of variables")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        acc = self.as_dict
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return Poly.from_dict(self.nvars, acc)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = as_fraction(other)
            return Poly.from_dict(self.nvars, {e: c * a for e, a in self.terms})
        self._check(other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Poly.from_dict(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- calculus and substitution ----------------------------------------------

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms:
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def diff(self, i: int) -> "Poly":
        acc: dict[Exponent, Fraction] = {}
        for e, c in self.terms:
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                acc[tuple(e2)] = c * e[i]
        return Poly.from_dict(self.nvars, acc)

    def gradient(self) -> list["Poly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose with ``x_i -> images[i]`` (all images in a common ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            raise ValueError("no images")
        m = images[0].nvars
        powers: dict[tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        total = Poly.zero(m)
        for e, c in self.terms:
            term = Poly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def permute(self, perm: Sequence[int]) -> "Poly":
        """Rename ``x_i -> x_{perm[i]}``."""
        acc = {}
        for e, c in self.terms:
            new = [0] * self.nvars
            for i, k in enumerate(e):
                new[perm[i]] = k
            acc[tuple(new)] = c
        return Poly.from_dict(self.nvars, acc)

    # -- io -------------------------------------------------------------------

    def to_terms(self) -> list[list]:
        """``[[coef_str, [exponents...]], ...]``, the scenario-file literal."""
        return [[str(c), list(e)] for e, c in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = [f"x{i}" for i in range(self.nvars)]
        return _render(self, names)


def _render(poly: Poly, names: Sequence[str]) -> str:
    out = []
    for e, c in sorted(poly.terms, key=lambda t: tuple(-k for k in t[0])):
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        elif c == -1:
            out.append("-" + mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out).replace("+ -", "- ")
