"""Nerve and non-degenerate nerve of a finite category."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .category import FinCategory

_SPECIAL = set("|:,()")


def encode_id(part: str) -> str:
    """Wrap an id in parentheses when it contains separator characters."""
    return f"({part})" if _SPECIAL & set(part) else part


@dataclass(frozen=True, order=True)
class Chain:
    """A composable string ``x0 -f1-> x1 -> ... -fn-> xn``.

    Length-0 chains are single objects.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.objects) != len(self.morphisms) + 1:
            raise ValueError("a chain of length n has n + 1 objects")

    @property
    def length(self) -> int:
        return len(self.morphisms)

    def encode(self) -> str:
        parts = [encode_id(self.objects[0])]
        for f, x in zip(self.morphisms, self.objects[1:]):
            parts += [encode_id(f), encode_id(x)]
        return "|".join(parts)

    def __str__(self) -> str:
        return self.encode()

    @classmethod
    def from_morphisms(cls, cat: FinCategory, morphisms) -> "Chain":
        morphisms = tuple(morphisms)
        if not morphisms:
            raise ValueError("use Chain((x,)) for a length-0 chain")
        objs = [cat.source(morphisms[0])]
        for f in morphisms:
            if cat.source(f) != objs[-1]:
                raise ValueError(f"{f!r} is not composable with its predecessor")
            objs.append(cat.target(f))
        return cls(tuple(objs), morphisms)


def is_nondegenerate(cat: FinCategory, chain: Chain) -> bool:
    return not any(cat.is_identity(f) for f in chain.morphisms)


def enumerate_nondegenerate_chains(cat: FinCategory, n: int) -> Iterator[Chain]:
    """Yield every element of the non-degenerate n-simplices, lexicographically by morphism ids."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        for x in cat.objects:
            yield Chain((x,))
        return

    def extend(objs: list[str], mors: list[str]) -> Iterator[Chain]:
        if len(mors) == n:
            yield Chain(tuple(objs), tuple(mors))
            return
        for f in cat.nonidentity_from(objs[-1]):
            objs.append(cat.target(f))
            mors.append(f)
            yield from extend(objs, mors)
            objs.pop()
            mors.pop()

    for m in cat.morphisms:
        if not cat.is_identity(m):
            yield from extend([cat.source(m), cat.target(m)], [m])


@dataclass(frozen=True)
class HomCountMatrix:
    """``entries[i][j]`` counts non-identity morphisms ``objects[i] -> objects[j]``."""

    objects: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def __len__(self) -> int:
        return len(self.objects)

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def hom_count_matrix(cat: FinCategory) -> HomCountMatrix:
    rows = tuple(
        tuple(len(cat.hom(x, y)) - (1 if x == y else 0) for y in cat.objects)
        for x in cat.objects
    )
    return HomCountMatrix(cat.objects, rows)


def nondegenerate_counts(cat: FinCategory, N: int) -> list[int]:
    """``[#N0, ..., #NN]`` via ``1^T A^n 1`` with exact integer arithmetic."""
    A = hom_count_matrix(cat).entries
    size = len(A)
    vec = [1] * size
    counts = []
    for _ in range(N + 1):
        counts.append(sum(vec))
        vec = [sum(A[i][j] * vec[j] for j in range(size) if A[i][j]) for i in range(size)]
    return counts


def counts_by_enumeration(cat: FinCategory, N: int) -> list[int]:
    return [sum(1 for _ in enumerate_nondegenerate_chains(cat, n)) for n in range(N + 1)]


def face(cat: FinCategory, chain: Chain, i: int) -> Chain:
    """Face operator ``d_i``: drop the object at position ``i``, composing if it is interior."""
    q = chain.length
    if not 0 <= i <= q or q == 0:
        raise ValueError("face index out of range")
    objs = chain.objects[:i] + chain.objects[i + 1:]
    mors = list(chain.morphisms)
    if i == 0:
        mors = mors[1:]
    elif i == q:
        mors = mors[:-1]
    else:
        mors[i - 1:i + 1] = [cat.compose(mors[i], mors[i - 1])]
    return Chain(objs, tuple(mors))
