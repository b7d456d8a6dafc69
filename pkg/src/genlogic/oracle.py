"""Slow, independent reference implementations used to cross-check the engine.

Everything here is written for transparency over speed: sums follow the
defining expressions term by term, subsets are enumerated from the full
lattice, and limits are taken symbolically with polynomials rather than by
score bookkeeping. Exact rational arithmetic throughout.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .data import ModelDistribution
from .engine import UNDEFINED, Query, SubsetAnalysis
from .formulas import Formula
from .worlds import World, evaluate


@dataclass(frozen=True)
class LimitPolynomial:
    """A polynomial in mu with rational coefficients, in (1 - mu) powers.

    Stored low degree first over the variable e = 1 - mu, so the behaviour
    as mu -> 1 is read off the lowest nonzero coefficient. mu itself is
    1 - e, i.e. coefficients (1, -1).
    """

    coeffs: tuple[Fraction, ...]

    def __add__(self, other: "LimitPolynomial") -> "LimitPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return LimitPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "LimitPolynomial") -> "LimitPolynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return LimitPolynomial(tuple(out))

    def scaled(self, c) -> "LimitPolynomial":
        c = Fraction(c)
        return LimitPolynomial(tuple(c * x for x in self.coeffs))

    def lowest_term(self) -> tuple[int, Fraction]:
        """(degree, coefficient) of the lowest nonzero term; (-1, 0) if zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i, c
        return -1, Fraction(0)

    def at(self, mu: Fraction) -> Fraction:
        e = 1 - Fraction(mu)
        total = Fraction(0)
        power = Fraction(1)
        for c in self.coeffs:
            total += c * power
            power *= e
        return total


_ONE = LimitPolynomial((Fraction(1),))
_MU = LimitPolynomial((Fraction(1), Fraction(-1)))
_ONE_MINUS_MU = LimitPolynomial((Fraction(0), Fraction(1)))


def _world_poly(assignment: Sequence[tuple[Formula, bool]], world: World) -> LimitPolynomial:
    poly = _ONE
    for f, wanted in assignment:
        holds = evaluate(f, world)
        poly = poly * (_MU if holds == wanted else _ONE_MINUS_MU)
    return poly


def joint_bruteforce(assignment: Sequence[tuple[Formula, bool]],
                     dist: ModelDistribution, mu) -> Fraction:
    """p(each formula has its assigned truth value) at an explicit mu.

    mu may be 1 (degenerate indicator factors) or any rational in (0, 1).
    Sums the defining mixture term by term.
    """
    mu = Fraction(mu)
    if not 0 < mu <= 1:
        raise ValueError("mu must lie in (0, 1]")
    total = Fraction(0)
    for w, m in zip(dist.worlds, dist.weights):
        total += Fraction(m) * _world_poly(assignment, w).at(mu)
    return total


def cond_bruteforce(query: Query, dist: ModelDistribution, mu):
    """p(conclusion | premises) at an explicit mu, or UNDEFINED."""
    premises = [(p, True) for p in query.premises]
    den = joint_bruteforce(premises, dist, mu)
    if den == 0:
        return UNDEFINED
    num = joint_bruteforce(premises + [(query.conclusion, True)], dist, mu)
    return num / den


def limit_bruteforce(query: Query, dist: ModelDistribution):
    """p(conclusion | premises) as mu -> 1, taken symbolically.

    Builds numerator and denominator as polynomials in (1 - mu) and
    compares their lowest nonzero terms. UNDEFINED only when the
    denominator is identically zero (no possible worlds at all).
    """
    num = LimitPolynomial((Fraction(0),))
    den = LimitPolynomial((Fraction(0),))
    assignment = [(p, True) for p in query.premises]
    for w, m in zip(dist.worlds, dist.weights):
        if m <= 0:
            continue
        poly = _world_poly(assignment, w).scaled(m)
        den = den + poly
        if evaluate(query.conclusion, w):
            num = num + poly
    dd, dc = den.lowest_term()
    if dd < 0:
        return UNDEFINED
    nd, nc = num.lowest_term()
    if nd < 0 or nd > dd:
        return Fraction(0)
    # The numerator's terms are a subset of the denominator's, so nd >= dd.
    return nc / dc


def mcs_bruteforce(premises: Sequence[Formula],
                   worlds: Sequence[World]) -> SubsetAnalysis:
    """Cardinality-maximal consistent subsets by walking the subset lattice."""
    return _subsets_bruteforce(premises, worlds)


def mps_bruteforce(premises: Sequence[Formula],
                   dist: ModelDistribution) -> SubsetAnalysis:
    """Cardinality-maximal possible subsets by walking the subset lattice."""
    return _subsets_bruteforce(premises, dist.support())


def _subsets_bruteforce(premises, worlds) -> SubsetAnalysis:
    formulas = list(dict.fromkeys(premises))
    if len(formulas) > 12:
        raise ValueError("brute-force subset walk is capped at 12 distinct formulas")
    worlds = list(worlds)
    if not worlds:
        raise ValueError("no worlds to judge consistency against")
    for size in range(len(formulas), -1, -1):
        found: set[frozenset[Formula]] = set()
        union: list[World] = []
        for combo in combinations(formulas, size):
            sat = [w for w in worlds
                   if all(evaluate(f, w) for f in combo)]
            if sat:
                found.add(frozenset(combo))
                for w in sat:
                    if w not in union:
                        union.append(w)
        if found:
            return SubsetAnalysis(frozenset(found), tuple(union))
    raise AssertionError("unreachable: the empty subset is always satisfiable")


def allnn_bruteforce(train_bits: Sequence[Sequence[int]],
                     test_bits: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hamming distances by direct disagreement counts, row by row.

    Takes plain 0/1 sequences; capped at 1000 rows per side to keep the
    quadratic loop honest but finite.
    """
    if len(train_bits) > 1000 or len(test_bits) > 1000:
        raise ValueError("brute-force neighbour scan is capped at 1000 rows per side")
    train = [tuple(row) for row in train_bits]
    out = []
    for trow in test_bits:
        trow = tuple(trow)
        out.append([sum(map(operator.ne, row, trow)) for row in train])
    return out
