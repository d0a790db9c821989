"""Series and filtered Euler characteristics, and the subdivision invariance check."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Mapping

from . import subdivision
from .category import FinCategory, is_acyclic
from .nerve import Chain, enumerate_nondegenerate_chains, hom_count_matrix, nondegenerate_counts
from .series import (
    NoCertificate,
    PoleAtMinusOne,
    Polynomial,
    RationalFunction,
    eval_at_minus_one,
    fit_rational,
    resolvent_series,
)


class LevelUnavailable(LookupError):
    pass


# -- series Euler characteristic ------------------------------------------

def series_generating_function(cat: FinCategory) -> RationalFunction:
    """Closed form of ``sum_n #N_n t^n`` over non-degenerate chains."""
    return resolvent_series(hom_count_matrix(cat))


def chi_series(cat: FinCategory) -> Fraction:
    """Raises :class:`PoleAtMinusOne` when the characteristic is undefined."""
    return eval_at_minus_one(series_generating_function(cat))


def alternating_chain_sum(cat: FinCategory) -> int:
    """``sum_n (-1)^n #N_n`` for an acyclic category, where the sum is finite."""
    if not is_acyclic(cat):
        raise ValueError("chain counts of a non-acyclic category do not terminate")
    counts = nondegenerate_counts(cat, len(cat.objects))
    return sum((-1) ** n * c for n, c in enumerate(counts))


# -- filtered acyclic categories -------------------------------------------

class FilteredAcyclicCategory:
    """An acyclic category with an N-filtration, exposed level by level.

    Subclasses provide the objects at each filtration value and, for each
    object, the number of non-identity morphisms into it from each object
    of strictly lower filtration.
    """

    #: every level above this one is empty; ``None`` when unbounded or unknown
    max_level: int | None = None

    def objects_at(self, n: int) -> list[Hashable]:
        raise NotImplementedError

    def hom_counts_into(self, y: Hashable) -> Mapping[Hashable, int]:
        raise NotImplementedError

    def level_of(self, y: Hashable) -> int:
        raise NotImplementedError


class NaturalNumbers(FilteredAcyclicCategory):
    """The poset 0 < 1 < 2 < ... filtered by the identity."""

    def objects_at(self, n: int) -> list[int]:
        return [n]

    def hom_counts_into(self, y: int) -> dict[int, int]:
        return {m: 1 for m in range(y)}

    def level_of(self, y: int) -> int:
        return y


class SubdivisionFiltration(FilteredAcyclicCategory):
    """The subdivision of a finite category filtered by chain length."""

    def __init__(self, cat: FinCategory, budget: int | None = None):
        self.cat = cat
        self.budget = subdivision.default_budget() if budget is None else budget
        self._levels: list[list[Chain]] = []
        self._seen = 0
        self.max_level = len(cat.objects) - 1 if is_acyclic(cat) else None

    def objects_at(self, n: int) -> list[Chain]:
        if self.max_level is not None and n > self.max_level:
            return []
        while len(self._levels) <= n:
            k = len(self._levels)
            level = []
            for X in enumerate_nondegenerate_chains(self.cat, k):
                level.append(X)
                self._seen += 1
                if self._seen > self.budget:
                    raise subdivision.BudgetExceeded(
                        f"more than {self.budget} subdivision objects up to level {k}"
                    )
            self._levels.append(level)
        return self._levels[n]

    def hom_counts_into(self, y: Chain) -> dict[Chain, int]:
        return subdivision.hom_counts_into(self.cat, y)

    def level_of(self, y: Chain) -> int:
        return y.length


class FilteredFinite(FilteredAcyclicCategory):
    """A finite acyclic category together with an explicit filtration."""

    def __init__(self, cat: FinCategory, mu: Mapping[str, int]):
        if not is_acyclic(cat):
            raise ValueError("filtered categories must be acyclic")
        for m in cat.morphisms:
            x, y = cat.source(m), cat.target(m)
            if x != y and not mu[x] < mu[y]:
                raise ValueError(f"filtration does not strictly increase along {m!r}")
        self.cat = cat
        self.mu = dict(mu)
        self.max_level = max(self.mu.values(), default=-1)
        self._by_level: dict[int, list[str]] = {}
        for x in cat.objects:
            self._by_level.setdefault(self.mu[x], []).append(x)

    def objects_at(self, n: int) -> list[str]:
        return self._by_level.get(n, [])

    def hom_counts_into(self, y: str) -> dict[str, int]:
        return {x: len(self.cat.hom(x, y)) for x in self.cat.objects if x != y and self.cat.hom(x, y)}

    def level_of(self, y: str) -> int:
        return self.mu[y]


@dataclass
class FilteredCountTable:
    """``table[n][i]`` counts non-degenerate i-chains whose top object sits at level n."""

    table: list[list[int]]
    per_object: dict[Hashable, list[int]] = field(default_factory=dict, repr=False)

    def __getitem__(self, n: int) -> list[int]:
        return self.table[n]


def filtered_counts(F: FilteredAcyclicCategory, N: int) -> FilteredCountTable:
    """Chain counts by level, via ``c_i(Y) = sum_X c_{i-1}(X) #Hom(X, Y)`` over lower levels."""
    per_object: dict[Hashable, list[int]] = {}
    table = []
    for n in range(N + 1):
        try:
            level = F.objects_at(n)
        except (IndexError, KeyError) as exc:
            raise LevelUnavailable(f"level {n} is not available") from exc
        row = [0] * (n + 1)
        for Y in level:
            counts = [1] + [0] * n
            for X, h in F.hom_counts_into(Y).items():
                cx = per_object.get(X)
                if cx is None or F.level_of(X) >= n:
                    raise LevelUnavailable(f"morphism into level {n} from outside lower levels")
                for i, c in enumerate(cx):
                    counts[i + 1] += c * h
            per_object[Y] = counts
            for i, c in enumerate(counts):
                row[i] += c
        table.append(row)
    return FilteredCountTable(table, per_object)


def filtered_counts_by_enumeration(cat: FinCategory, mu: Mapping[str, int], N: int) -> list[list[int]]:
    """Direct chain enumeration: ``#{i-chains with max filtration n}``."""
    table = [[0] * (n + 1) for n in range(N + 1)]
    for i in itertools.count():
        found = False
        for chain in enumerate_nondegenerate_chains(cat, i):
            found = True
            top = max(mu[x] for x in chain.objects)
            if top <= N:
                if i > top:
                    raise AssertionError(f"{i}-chain with top level {top}")
                table[top][i] += 1
        if not found:
            return table


def f_chi_prefix(F: FilteredAcyclicCategory | FilteredCountTable, N: int | None = None) -> list[int]:
    counts = F if isinstance(F, FilteredCountTable) else filtered_counts(F, N)
    rows = counts.table if N is None else counts.table[:N + 1]
    return [(-1) ** n * sum((-1) ** i * c for i, c in enumerate(row)) for n, row in enumerate(rows)]


@dataclass
class FilteredEuler:
    value: Fraction
    certificate: RationalFunction
    prefix: list[int]
    exact: bool  # certificate is the whole (finite) series rather than a verified fit


def chi_fil(F: FilteredAcyclicCategory, N: int) -> FilteredEuler:
    """Evaluate the filtered series at t = -1 through a rational certificate.

    When every level above ``N`` is known to be empty the prefix is the
    whole series. Otherwise the prefix must admit a verified rational fit;
    :class:`NoCertificate` or :class:`PoleAtMinusOne` is raised if not.
    """
    prefix = f_chi_prefix(F, N)
    if F.max_level is not None and N >= F.max_level:
        cert = RationalFunction(Polynomial(prefix))
        return FilteredEuler(eval_at_minus_one(cert), cert, prefix, exact=True)
    if N < 3:
        raise ValueError("an unbounded filtration needs depth at least 3")
    cert = fit_rational(prefix)
    return FilteredEuler(eval_at_minus_one(cert), cert, prefix, exact=False)


# -- invariance ------------------------------------------------------------

def _fraction_str(x: Fraction | None) -> str | None:
    return None if x is None else str(x)


@dataclass
class InvarianceReport:
    depth: int
    chain_counts: list[int]
    filtered_prefix: list[int]
    chi_series: Fraction | None
    chi_fil: Fraction | None
    certificate: RationalFunction | None
    violations: list[dict]

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        num, den = self.certificate.integer_coefficients() if self.certificate else (None, None)
        return {
            "chi_series": _fraction_str(self.chi_series),
            "chi_fil": _fraction_str(self.chi_fil),
            "certificate_num": num,
            "certificate_den": den,
            "corollary_checked_up_to": self.depth,
            "chain_counts": self.chain_counts,
            "filtered_prefix": self.filtered_prefix,
            "violations": self.violations,
        }


def check_invariance(cat: FinCategory, N: int = 8, budget: int | None = None) -> InvarianceReport:
    """Compare chain counts with the alternating filtered counts of the subdivision, and both Euler characteristics."""
    violations: list[dict] = []
    counts = nondegenerate_counts(cat, N)
    F = SubdivisionFiltration(cat, budget)
    table = filtered_counts(F, N)
    prefix = f_chi_prefix(table)
    for n, (a, b) in enumerate(zip(counts, prefix)):
        if a != b:
            violations.append({"kind": "corollary", "n": n, "chains": a, "alternating": b})
    for Y, cs in table.per_object.items():
        if any(c for c in cs[Y.length + 1:]):
            violations.append({"kind": "emptiness", "chain": Y.encode()})

    chi_s = chi_f = cert = None
    try:
        chi_s = chi_series(cat)
    except PoleAtMinusOne as exc:
        violations.append({"kind": "chi_series_undefined", "detail": str(exc)})
    try:
        result = chi_fil(F, N)
        chi_f, cert = result.value, result.certificate
    except (NoCertificate, PoleAtMinusOne) as exc:
        violations.append({"kind": "chi_fil_undefined", "detail": str(exc)})
    if chi_s is not None and chi_f is not None and chi_s != chi_f:
        violations.append({"kind": "chi_mismatch", "chi_series": str(chi_s), "chi_fil": str(chi_f)})
    return InvarianceReport(N, counts, prefix, chi_s, chi_f, cert, violations)


@dataclass
class ChainDivisibility:
    chain: Chain
    counts: list[int]
    quotient: Polynomial
    remainder: Fraction


def per_chain_divisibility(cat: FinCategory, max_length: int, budget: int | None = None) -> list[ChainDivisibility]:
    """For every chain ``f`` of length ``q <= max_length``, divide ``sum_i c_i(f) s^i - s^q`` by ``1 + s``.

    ``c_i(f)`` counts i-chains of the subdivision ending at ``f``.
    """
    table = filtered_counts(SubdivisionFiltration(cat, budget), max_length)
    out = []
    for Y, cs in table.per_object.items():
        P = Polynomial(cs) - Polynomial.monomial(Y.length)
        quot, rem = divmod(P, Polynomial([1, 1]))
        out.append(ChainDivisibility(Y, cs, quot, rem[0]))
    return out
