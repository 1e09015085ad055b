"""Binomial Groebner bases and toric ideals.

All ideals handled here are generated by pure differences of monomials
``x^a - x^b``. Reducing such a binomial against a Groebner basis of the
same kind amounts to rewriting each of its two monomials to a normal
monomial, so binomiality is structural: a step that fails to decrease a
monomial in the order is reported as :class:`NonBinomialReduction`.

Saturation by ``x_v`` uses the reverse-lex trick: with a (weighted)
graded reverse-lex order in which ``x_v`` is the cheapest variable, the
Groebner basis elements divided by their largest common power of ``x_v``
generate ``I : x_v^oo``. That needs the ideal to be homogeneous for the
weights, which holds for any positive vector in the row space of ``A``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .linalg import IntMatrix, integer_kernel_basis
from .puiseux import ToricBinomial, _dmono

Monomial = tuple  # tuple[int, ...]


class NonBinomialReduction(RuntimeError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse-lex (optionally with a designated cheapest variable) or graded lex.

    ``weights`` grades the monomials; ``None`` means the standard degree.
    """

    kind: str = "grevlex"
    cheapest: int | None = None
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "grlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def degree(self, m: Monomial) -> int:
        if self.weights is None:
            return sum(m)
        return sum(w * a for w, a in zip(self.weights, m))

    def key(self, m: Monomial) -> tuple:
        """Sort key; larger key means larger monomial."""
        if self.kind == "grlex":
            return (self.degree(m), tuple(m))
        n = len(m)
        perm = list(range(n))
        if self.cheapest is not None:
            perm.remove(self.cheapest)
            perm.append(self.cheapest)
        # smaller exponent in the last variable wins ties
        return (self.degree(m), tuple(-m[perm[i]] for i in reversed(range(n))))


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class Binomial:
    """``x^lead - x^trail``; ``lead`` is the larger term once oriented."""

    lead: Monomial
    trail: Monomial

    def __post_init__(self):
        if len(self.lead) != len(self.trail):
            raise ValueError("lead and trail must have the same length")
        if self.lead == self.trail:
            raise ValueError("a binomial needs two distinct monomials")
        if any(a < 0 for a in self.lead + self.trail):
            raise ValueError("exponents must be nonnegative")

    @classmethod
    def from_vector(cls, u: Sequence[int]) -> Binomial:
        return cls(tuple(max(x, 0) for x in u), tuple(max(-x, 0) for x in u))

    @property
    def nvars(self) -> int:
        return len(self.lead)

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.lead, self.trail))

    def oriented(self, order: MonomialOrder) -> Binomial:
        if order.key(self.lead) < order.key(self.trail):
            return Binomial(self.trail, self.lead)
        return self

    def is_saturated(self) -> bool:
        return not any(a and b for a, b in zip(self.lead, self.trail))

    def to_operator(self) -> ToricBinomial:
        return ToricBinomial.from_vector(self.vector)

    def __str__(self):
        return f"{_dmono(self.lead)} - {_dmono(self.trail)}"


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def reduce_monomial(m: Monomial, basis: Sequence[Binomial], order: MonomialOrder) -> Monomial:
    """Normal monomial of ``x^m`` modulo a binomial Groebner basis."""
    while True:
        for g in basis:
            if _divides(g.lead, m):
                new = tuple(x - a + b for x, a, b in zip(m, g.lead, g.trail))
                if order.key(new) >= order.key(m):
                    raise NonBinomialReduction(f"reduction by {g} did not decrease {m}")
                m = new
                break
        else:
            return m


def normal_form(b: Binomial, basis: Sequence[Binomial], order: MonomialOrder = GREVLEX) -> Binomial | None:
    """Fully reduced form of ``b``, or ``None`` when it reduces to zero."""
    p = reduce_monomial(b.lead, basis, order)
    q = reduce_monomial(b.trail, basis, order)
    if p == q:
        return None
    return Binomial(p, q).oriented(order)


def buchberger_binomial(gens: Sequence[Binomial], order: MonomialOrder = GREVLEX) -> list[Binomial]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy; pairs with coprime leading monomials are
    skipped.
    """
    G: list[Binomial] = []
    pairs: list = []
    counter = 0

    def add(g: Binomial):
        nonlocal counter
        G.append(g)
        j = len(G) - 1
        for i in range(j):
            L = _lcm(G[i].lead, g.lead)
            heapq.heappush(pairs, (order.degree(L), order.key(L), counter, i, j))
            counter += 1

    for g in gens:
        nf = normal_form(g.oriented(order), G, order)
        if nf is not None:
            add(nf)

    while pairs:
        _, _, _, i, j = heapq.heappop(pairs)
        f, g = G[i], G[j]
        if all(not (a and b) for a, b in zip(f.lead, g.lead)):
            continue
        L = _lcm(f.lead, g.lead)
        s1 = tuple(l - a + b for l, a, b in zip(L, f.lead, f.trail))
        s2 = tuple(l - a + b for l, a, b in zip(L, g.lead, g.trail))
        if s1 == s2:
            continue
        nf = normal_form(Binomial(s1, s2), G, order)
        if nf is not None:
            add(nf)

    return _reduce_basis(G, order)


def _reduce_basis(G: Sequence[Binomial], order: MonomialOrder) -> list[Binomial]:
    minimal: list[Binomial] = []
    for g in sorted(G, key=lambda g: order.key(g.lead)):
        if not any(_divides(h.lead, g.lead) for h in minimal):
            minimal.append(g)
    reduced = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        t = reduce_monomial(g.trail, others, order)
        reduced.append(Binomial(g.lead, t))
    return sorted(reduced, key=lambda g: (sum(g.lead), g.lead, g.trail))


def is_groebner(G: Sequence[Binomial], order: MonomialOrder = GREVLEX) -> bool:
    """Every S-pair of ``G`` reduces to zero."""
    for f, g in product(G, repeat=2):
        if f is g:
            continue
        L = _lcm(f.lead, g.lead)
        s1 = tuple(l - a + b for l, a, b in zip(L, f.lead, f.trail))
        s2 = tuple(l - a + b for l, a, b in zip(L, g.lead, g.trail))
        if s1 != s2 and normal_form(Binomial(s1, s2), G, order) is not None:
            return False
    return True


def reduces_to_zero(b: Binomial, basis: Sequence[Binomial], order: MonomialOrder = GREVLEX) -> bool:
    return normal_form(b, basis, order) is None


def same_ideal(gens1: Sequence[Binomial], gens2: Sequence[Binomial], order: MonomialOrder = GREVLEX) -> bool:
    """Ideal equality by mutual reduction to zero against each side's Groebner basis."""
    G1 = buchberger_binomial(gens1, order)
    G2 = buchberger_binomial(gens2, order)
    return all(reduces_to_zero(g, G2, order) for g in gens1) and all(
        reduces_to_zero(g, G1, order) for g in gens2
    )


def lattice_ideal_generators(K: IntMatrix) -> list[Binomial]:
    """One binomial ``d^(k+) - d^(k-)`` per column ``k`` of ``K``."""
    return [Binomial.from_vector(c) for c in K.columns() if any(c)]


def saturate_variable(
    gens: Sequence[Binomial], var: int, weights: Sequence[int] | None = None
) -> list[Binomial]:
    """Generators of ``(gens) : x_var^oo``.

    ``weights`` must make every generator homogeneous; the default is the
    standard grading.
    """
    if not gens:
        return []
    order = MonomialOrder("grevlex", cheapest=var, weights=tuple(weights) if weights else None)
    out = []
    seen = set()
    for g in buchberger_binomial(gens, order):
        k = min(g.lead[var], g.trail[var])
        lead = g.lead[:var] + (g.lead[var] - k,) + g.lead[var + 1:]
        trail = g.trail[:var] + (g.trail[var] - k,) + g.trail[var + 1:]
        b = Binomial(lead, trail)
        if b not in seen:
            seen.add(b)
            out.append(b)
    return out


def positive_grading(A: IntMatrix) -> tuple[int, ...]:
    """A strictly positive integer vector in the row space of ``A``.

    Tries single rows first, then signed sums of rows.
    """
    for i in range(A.rows):
        r = A.row(i)
        if all(x > 0 for x in r):
            return r
        if all(x < 0 for x in r):
            return tuple(-x for x in r)
    for signs in product((1, -1, 0), repeat=A.rows):
        w = tuple(sum(s * A[i, j] for i, s in enumerate(signs)) for j in range(A.cols))
        if all(x > 0 for x in w):
            return w
    raise ValueError("no positive grading found in the row space of A")


@lru_cache(maxsize=64)
def toric_generating_set(A: IntMatrix) -> tuple[Binomial, ...]:
    """A reduced Groebner basis (grevlex, graded by the row space of ``A``) of the toric ideal.

    Computed from a kernel lattice basis by saturating each variable in
    turn. Every element is checked to have both terms of the same
    ``A``-degree.
    """
    K = integer_kernel_basis(A)
    if K.cols == 0:
        return ()
    w = positive_grading(A)
    gens = lattice_ideal_generators(K)
    for v in range(A.cols):
        gens = saturate_variable(gens, v, weights=w)
    basis = buchberger_binomial(gens, MonomialOrder("grevlex", weights=w))
    for b in basis:
        if A.apply(b.lead) != A.apply(b.trail):
            raise AssertionError(f"{b} is not homogeneous for A")
    return tuple(basis)


def toric_order(A: IntMatrix) -> MonomialOrder:
    """The order :func:`toric_generating_set` uses for ``A``."""
    return MonomialOrder("grevlex", weights=positive_grading(A))
