"""Level truncations of the barycentric subdivision of a finite category.

Objects of the subdivision are non-degenerate chains. A morphism
``X -> Y`` is a class of strictly increasing maps ``f: [q_X] -> [q_Y]``
with ``Y o f = X``; two maps are directly related when, position by
position, the segment of ``Y`` between their values composes to an
identity. Classes are the connected components of that relation.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .category import CategorySpec, FinCategory, is_acyclic, is_poset, validate
from .nerve import Chain, encode_id, enumerate_nondegenerate_chains

DEFAULT_BUDGET = 10**6

SdObject = Chain
Injection = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    pass


class NotComposable(ValueError):
    pass


def default_budget() -> int:
    value = os.environ.get("EULERCAT_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


@dataclass(frozen=True)
class SdMorphism:
    source: Chain
    target: Chain
    canonical: Injection
    representatives: tuple[Injection, ...] = field(compare=False, hash=False)

    @property
    def is_identity(self) -> bool:
        return self.source == self.target

    def encode(self) -> str:
        return ":".join([
            encode_id(self.source.encode()),
            encode_id(self.target.encode()),
            ",".join(map(str, self.canonical)),
        ])


class _Segments:
    """Composites ``Y(a -> b)`` of a chain, and its classes of identity-equivalent positions."""

    __slots__ = ("comp", "pos_class")

    def __init__(self, cat: FinCategory, Y: Chain):
        q = Y.length
        comp: list[list[str | None]] = [[None] * (q + 1) for _ in range(q + 1)]
        for a in range(q + 1):
            comp[a][a] = cat.identity(Y.objects[a])
            for b in range(a + 1, q + 1):
                comp[a][b] = cat.compose(Y.morphisms[b - 1], comp[a][b - 1])
        self.comp = comp
        # identity-equivalence of positions is transitive, so the least member labels each class
        self.pos_class = [
            next(a for a in range(b + 1) if cat.is_identity(comp[a][b])) for b in range(q + 1)
        ]


@lru_cache(maxsize=None)
def _segments(cat: FinCategory, Y: Chain) -> _Segments:
    return _Segments(cat, Y)


def compatible_injections(cat: FinCategory, X: Chain, Y: Chain) -> list[Injection]:
    """Strictly increasing ``f: [q_X] -> [q_Y]`` with ``Y o f = X``, lexicographically."""
    qx, qy = X.length, Y.length
    if qx > qy:
        return []
    comp = _segments(cat, Y).comp
    out: list[Injection] = []
    f: list[int] = []

    def extend(i: int, lo: int) -> None:
        if i > qx:
            out.append(tuple(f))
            return
        for j in range(lo, qy - (qx - i) + 1):
            if Y.objects[j] != X.objects[i]:
                continue
            if i and comp[f[-1]][j] != X.morphisms[i - 1]:
                continue
            f.append(j)
            extend(i + 1, j + 1)
            f.pop()

    extend(0, 0)
    return out


def directly_related(cat: FinCategory, Y: Chain, f: Injection, g: Injection) -> bool:
    comp = _segments(cat, Y).comp
    for a, b in zip(f, g):
        lo, hi = min(a, b), max(a, b)
        if not cat.is_identity(comp[lo][hi]):
            return False
    return True


def _components(cat: FinCategory, Y: Chain, injections: list[Injection]) -> list[list[Injection]]:
    parent = list(range(len(injections)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(injections)), 2):
        if directly_related(cat, Y, injections[i], injections[j]):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[Injection]] = {}
    for i, f in enumerate(injections):
        groups.setdefault(find(i), []).append(f)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def sd_objects_at_level(cat: FinCategory, n: int) -> list[Chain]:
    return list(enumerate_nondegenerate_chains(cat, n))


@lru_cache(maxsize=None)
def _sd_hom(cat: FinCategory, X: Chain, Y: Chain) -> tuple[SdMorphism, ...]:
    classes = _components(cat, Y, compatible_injections(cat, X, Y))
    return tuple(SdMorphism(X, Y, reps[0], tuple(reps)) for reps in classes)


def sd_hom(cat: FinCategory, X: Chain, Y: Chain) -> list[SdMorphism]:
    """All morphisms ``X -> Y`` of the subdivision, ordered by canonical representative."""
    return list(_sd_hom(cat, X, Y))


def sd_identity(X: Chain) -> SdMorphism:
    idx = tuple(range(X.length + 1))
    return SdMorphism(X, X, idx, (idx,))


def sd_compose(cat: FinCategory, m2: SdMorphism, m1: SdMorphism) -> SdMorphism:
    """``m2 o m1``, computed on canonical representatives."""
    if m1.target != m2.source:
        raise NotComposable(f"{m1.encode()} does not end where {m2.encode()} starts")
    h = tuple(m2.canonical[i] for i in m1.canonical)
    for m in _sd_hom(cat, m1.source, m2.target):
        if h in m.representatives:
            return m
    raise AssertionError("composite of compatible injections is not compatible")


def pull_back(cat: FinCategory, Y: Chain, f: Injection) -> Chain | None:
    """The chain ``Y o f``, or ``None`` if it is degenerate."""
    comp = _segments(cat, Y).comp
    mors = tuple(comp[a][b] for a, b in zip(f, f[1:]))
    if any(cat.is_identity(m) for m in mors):
        return None
    return Chain(tuple(Y.objects[j] for j in f), mors)


def hom_counts_into(cat: FinCategory, Y: Chain) -> dict[Chain, int]:
    """``#Hom(X, Y)`` for every ``X`` with a non-identity morphism into ``Y``.

    Every injection into ``Y`` determines its source chain, and two
    injections with the same source are in one class exactly when they hit
    the same identity-equivalence class of ``Y`` at every position.
    """
    seg = _segments(cat, Y)
    keys: dict[Chain, set[tuple[int, ...]]] = {}
    n = Y.length
    for m in range(n):
        for f in itertools.combinations(range(n + 1), m + 1):
            X = pull_back(cat, Y, f)
            if X is not None:
                keys.setdefault(X, set()).add(tuple(seg.pos_class[j] for j in f))
    return {X: len(k) for X, k in keys.items()}


def _classes_into(cat: FinCategory, Y: Chain) -> dict[Chain, list[SdMorphism]]:
    """Non-identity hom-sets into ``Y``, with classes from the relation graph."""
    grouped: dict[Chain, list[Injection]] = {}
    n = Y.length
    for m in range(n):
        for f in itertools.combinations(range(n + 1), m + 1):
            X = pull_back(cat, Y, f)
            if X is not None:
                grouped.setdefault(X, []).append(f)
    return {
        X: [SdMorphism(X, Y, reps[0], tuple(reps)) for reps in _components(cat, Y, injs)]
        for X, injs in grouped.items()
    }


@dataclass
class SdTruncation:
    """Full subcategory of the subdivision on chains of length at most ``max_level``."""

    base: FinCategory
    max_level: int
    levels: list[list[Chain]]
    homs: dict[tuple[Chain, Chain], list[SdMorphism]]

    @property
    def objects(self) -> list[Chain]:
        return [X for level in self.levels for X in level]

    def hom(self, X: Chain, Y: Chain) -> list[SdMorphism]:
        if X == Y:
            return [sd_identity(X)]
        return self.homs.get((X, Y), [])

    def hom_count(self, X: Chain, Y: Chain) -> int:
        return len(self.hom(X, Y))

    def morphism_count(self) -> int:
        return len(self.objects) + sum(len(v) for v in self.homs.values())

    def to_category(self, check_associativity: bool = False) -> FinCategory:
        """The truncation as a :class:`FinCategory` with encoded chain ids."""
        objects = self.objects
        names = {X: X.encode() for X in objects}
        if len(set(names.values())) != len(names):
            raise AssertionError("chain encoding is not injective")
        spec = CategorySpec(objects=list(names.values()), morphisms=[], identities={})
        lookup: dict[tuple[Chain, Chain, Injection], str] = {}
        incoming: dict[Chain, list[SdMorphism]] = {X: [] for X in objects}
        outgoing: dict[Chain, list[SdMorphism]] = {X: [] for X in objects}
        all_morphisms = [sd_identity(X) for X in objects]
        for ms in self.homs.values():
            all_morphisms.extend(ms)
        for m in all_morphisms:
            mid = m.encode()
            spec.morphisms.append((mid, names[m.source], names[m.target]))
            for rep in m.representatives:
                lookup[(m.source, m.target, rep)] = mid
            incoming[m.target].append(m)
            outgoing[m.source].append(m)
            if m.is_identity:
                spec.identities[names[m.source]] = mid
        for Y in objects:
            for m1 in incoming[Y]:
                for m2 in outgoing[Y]:
                    h = tuple(m2.canonical[i] for i in m1.canonical)
                    spec.compose[(m2.encode(), m1.encode())] = lookup[(m1.source, m2.target, h)]
        return validate(spec, check_associativity=check_associativity)

    def to_dot(self) -> str:
        lines = ["digraph sd {", "  rankdir=BT;"]
        for level, objs in enumerate(self.levels):
            names = " ".join(f'"{X.encode()}"' for X in objs)
            lines.append(f"  {{ rank=same; /* level {level} */ {names} }}")
        for (X, Y), ms in sorted(self.homs.items(), key=lambda kv: (kv[0][1].length, kv[0][1], kv[0][0])):
            label = f' [label="{len(ms)}"]' if len(ms) > 1 else ""
            lines.append(f'  "{X.encode()}" -> "{Y.encode()}"{label};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def iter_levels(cat: FinCategory, budget: int | None = None) -> Iterator[list[Chain]]:
    """Objects level by level; stops after the first empty level of an acyclic base."""
    budget = default_budget() if budget is None else budget
    total = 0
    acyclic = is_acyclic(cat)
    for n in itertools.count():
        level = []
        for X in enumerate_nondegenerate_chains(cat, n):
            level.append(X)
            total += 1
            if total > budget:
                raise BudgetExceeded(f"more than {budget} subdivision objects up to level {n}")
        yield level
        if acyclic and not level:
            return


def sd_truncate(cat: FinCategory, N: int, budget: int | None = None) -> SdTruncation:
    budget = default_budget() if budget is None else budget
    levels: list[list[Chain]] = []
    for n, level in enumerate(iter_levels(cat, budget)):
        if n > N:
            break
        levels.append(level)
    while len(levels) <= N:
        levels.append([])
    homs: dict[tuple[Chain, Chain], list[SdMorphism]] = {}
    pairs = 0
    for level in levels[1:]:
        for Y in level:
            for X, ms in _classes_into(cat, Y).items():
                homs[(X, Y)] = ms
                pairs += len(ms)
                if pairs > budget:
                    raise BudgetExceeded(f"more than {budget} subdivision morphisms")
    return SdTruncation(cat, N, levels, homs)


@dataclass
class Section3Report:
    depth: int
    acyclic: bool
    poset: bool
    trivial_endomorphisms: bool
    double_subdivision_max_hom: int

    @property
    def poset_criterion_holds(self) -> bool:
        return self.poset == self.trivial_endomorphisms

    @property
    def ok(self) -> bool:
        return self.acyclic and self.poset_criterion_holds and self.double_subdivision_max_hom <= 1

    def as_dict(self) -> dict:
        return {
            "depth": self.depth,
            "acyclic": self.acyclic,
            "poset": self.poset,
            "trivial_endomorphisms": self.trivial_endomorphisms,
            "poset_criterion_holds": self.poset_criterion_holds,
            "double_subdivision_max_hom": self.double_subdivision_max_hom,
            "ok": self.ok,
        }


def verify_section3(cat: FinCategory, N: int, budget: int | None = None) -> Section3Report:
    """Check acyclicity, the poset criterion and poset-ness of the double subdivision on level-``N`` truncations.

    Only levels up to ``N`` are inspected, so the poset criterion is
    meaningful for ``N >= 1``.
    """
    trunc = sd_truncate(cat, N, budget)
    sd_cat = trunc.to_category()
    double = sd_truncate(sd_cat, N, budget)
    max_hom = max((len(ms) for ms in double.homs.values()), default=1)
    return Section3Report(
        depth=N,
        acyclic=is_acyclic(sd_cat),
        poset=is_poset(sd_cat),
        trivial_endomorphisms=all(len(cat.end(x)) == 1 for x in cat.objects),
        double_subdivision_max_hom=max(max_hom, 1),
    )
