"""Seeded random posets and small categories for property tests and the CLI."""

from __future__ import annotations

import random

from .category import CategoryError, CategorySpec, FinCategory, from_poset, validate


def random_poset(n: int, rng: random.Random | int | None = None, density: float = 0.5) -> FinCategory:
    """Transitive closure of a random DAG on ``n`` elements named ``p0 ... p{n-1}``."""
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    order = list(range(n))
    rng.shuffle(order)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                leq[order[a]][order[b]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    return from_poset([f"p{i}" for i in range(n)], leq)


def adjoin(base: FinCategory, extras: list[tuple[str, str, str]]) -> CategorySpec:
    """Adjoin morphisms ``(name, x, y)`` to a poset, each standing in for the unique ``x -> y``.

    A composite of two non-identity morphisms is computed on the stand-ins,
    except that two endomorphisms of one object compose to the left factor.
    """
    spec = base.to_spec()
    ident = set(spec.identities.values())
    flat = {m: m for m in base.morphisms}
    for name, x, y in extras:
        spec.morphisms.append((name, x, y))
        flat[name] = base.hom(x, y)[0]
    src = {m: s for m, s, _ in spec.morphisms}
    tgt = {m: t for m, _, t in spec.morphisms}
    spec.compose = {}
    for f in src:
        for g in src:
            if tgt[f] != src[g]:
                continue
            if f in ident:
                h = g
            elif g in ident:
                h = f
            elif flat[g] in ident and flat[f] in ident:
                h = g
            else:
                h = base.compose(flat[g], flat[f])
            spec.compose[(g, f)] = h
    return spec


def random_category(
    n: int,
    rng: random.Random | int | None = None,
    parallel: int = 1,
    idempotents: int = 0,
    density: float = 0.5,
) -> FinCategory:
    """A random poset with extra parallel arrows and idempotent endomorphisms adjoined.

    Candidate tables that fail validation are rejected and redrawn.
    """
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    for _ in range(100):
        base = random_poset(n, rng, density)
        strict = [(x, y) for x in base.objects for y in base.objects if x != y and base.hom(x, y)]
        extras = []
        for k in range(parallel):
            if strict:
                extras.append((f"u{k}", *rng.choice(strict)))
        for k in range(idempotents):
            x = rng.choice(base.objects)
            extras.append((f"e{k}", x, x))
        spec = adjoin(base, extras)
        try:
            return validate(spec)
        except CategoryError:
            continue
    raise RuntimeError("could not complete a random category table")
