"""Finite Puiseux polynomials over Q and constant-coefficient/Euler operators.

Variables are indexed from 0 in the API; the text format prints them
1-based (``x1``, ``x2``, ...). Differentiation of ``x^a`` with rational
``a`` uses the falling factorial ``a (a-1) ... (a-m+1)``, so integer
monomials of low degree are annihilated exactly as usual.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import IntMatrix, format_rat

ExpVec = tuple  # tuple[Fraction, ...]


def exp_vec(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def falling_factorial(a: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for k in range(m):
        out *= a - k
        if not out:
            break
    return out


class PuiseuxPoly:
    """A finite sum ``sum c_a x^a`` with rational exponents and coefficients.

    Zero coefficients are never stored, so two polynomials are equal iff
    their term dictionaries are equal.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence, object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[Fraction, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            e = exp_vec(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = clean.get(e, Fraction(0)) + Fraction(c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int) -> PuiseuxPoly:
        return cls._raw(nvars, {})

    @classmethod
    def monomial(cls, exponent: Sequence, coeff=1) -> PuiseuxPoly:
        return cls(len(exponent), {tuple(exponent): coeff})

    @property
    def terms(self) -> dict[tuple[Fraction, ...], Fraction]:
        return dict(self._terms)

    def support(self) -> set[tuple[Fraction, ...]]:
        return set(self._terms)

    def coefficient(self, exponent: Sequence) -> Fraction:
        return self._terms.get(exp_vec(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: PuiseuxPoly):
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different numbers of variables")

    def __add__(self, other: PuiseuxPoly) -> PuiseuxPoly:
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return PuiseuxPoly._raw(self.nvars, out)

    def __neg__(self) -> PuiseuxPoly:
        return PuiseuxPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: PuiseuxPoly) -> PuiseuxPoly:
        return self + (-other)

    def scale(self, c) -> PuiseuxPoly:
        c = Fraction(c)
        if not c:
            return PuiseuxPoly.zero(self.nvars)
        return PuiseuxPoly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PuiseuxPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return PuiseuxPoly(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def sorted_terms(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        """Terms in graded-lex order, largest first."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [f"x{i + 1}^({format_rat(a)})" for i, a in enumerate(e) if a]
            parts.append(" * ".join([format_rat(c)] + factors))
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"PuiseuxPoly({self.nvars}, {self.to_text()!r})"

    def variables(self) -> set[int]:
        """Indices of variables with a nonzero exponent in some term."""
        return {i for e in self._terms for i, a in enumerate(e) if a}


@dataclass(frozen=True)
class ToricBinomial:
    """The operator ``d^u_plus - d^u_minus`` with disjoint supports."""

    u_plus: tuple[int, ...]
    u_minus: tuple[int, ...]

    def __post_init__(self):
        if len(self.u_plus) != len(self.u_minus):
            raise ValueError("u_plus and u_minus must have equal length")
        if any(a < 0 or b < 0 for a, b in zip(self.u_plus, self.u_minus)):
            raise ValueError("exponents must be nonnegative")
        if any(a and b for a, b in zip(self.u_plus, self.u_minus)):
            raise ValueError("u_plus and u_minus must have disjoint supports")

    @classmethod
    def from_vector(cls, u: Sequence[int]) -> ToricBinomial:
        return cls(tuple(max(x, 0) for x in u), tuple(max(-x, 0) for x in u))

    @property
    def nvars(self) -> int:
        return len(self.u_plus)

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.u_plus, self.u_minus))

    def __str__(self):
        return f"{_dmono(self.u_plus)} - {_dmono(self.u_minus)}"


def _dmono(e: Sequence[int]) -> str:
    parts = [f"d{i + 1}" if a == 1 else f"d{i + 1}^{a}" for i, a in enumerate(e) if a]
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class EulerOperator:
    """``sum_j coeffs[j] x_j d_j - shift``."""

    coeffs: tuple[int, ...]
    shift: Fraction

    def __str__(self):
        body = " + ".join(f"{c}*x{j + 1}*d{j + 1}" for j, c in enumerate(self.coeffs) if c)
        return f"{body or '0'} - {format_rat(self.shift)}"


def apply_partial_power(p: PuiseuxPoly, var: int, m: int) -> PuiseuxPoly:
    """``d_var^m`` applied to ``p``."""
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    if m == 0:
        return p
    out = {}
    for e, c in p:
        f = falling_factorial(e[var], m)
        if f:
            e2 = e[:var] + (e[var] - m,) + e[var + 1:]
            out[e2] = c * f
    return PuiseuxPoly._raw(p.nvars, out)


def apply_derivative(p: PuiseuxPoly, exponent: Sequence[int]) -> PuiseuxPoly:
    """The monomial operator ``d^exponent`` applied to ``p``."""
    if len(exponent) != p.nvars:
        raise ValueError("operator and polynomial have different numbers of variables")
    for var, m in enumerate(exponent):
        if m:
            p = apply_partial_power(p, var, m)
            if p.is_zero():
                break
    return p


def apply_toric(op: ToricBinomial, p: PuiseuxPoly) -> PuiseuxPoly:
    return apply_derivative(p, op.u_plus) - apply_derivative(p, op.u_minus)


def apply_euler(op: EulerOperator, p: PuiseuxPoly) -> PuiseuxPoly:
    if len(op.coeffs) != p.nvars:
        raise ValueError("operator and polynomial have different numbers of variables")
    out = {}
    for e, c in p:
        f = sum(a * x for a, x in zip(op.coeffs, e)) - op.shift
        if f:
            out[e] = c * f
    return PuiseuxPoly._raw(p.nvars, out)


def support_degrees(p: PuiseuxPoly, A: IntMatrix) -> set[tuple[Fraction, ...]]:
    """The set of multidegrees ``A @ a`` over the exponents ``a`` of ``p``."""
    if A.cols != p.nvars:
        raise ValueError("matrix columns must match the number of variables")
    return {tuple(A.apply(e)) for e in p.support()}


def pad_variables(p: PuiseuxPoly, n: int) -> PuiseuxPoly:
    """Embed ``p`` into ``n >= p.nvars`` variables by zero-padding exponents."""
    if n < p.nvars:
        raise ValueError("cannot pad to fewer variables")
    pad = (Fraction(0),) * (n - p.nvars)
    return PuiseuxPoly._raw(n, {e + pad: c for e, c in p})
