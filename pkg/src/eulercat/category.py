"""Finite categories given by a total composition table.

A category is stored extensionally: its objects, its morphisms with
source and target, an explicit identity per object and the full table
of composites ``g o f`` for every pair with ``target(f) == source(g)``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

ID_PATTERN = re.compile(r"^[A-Za-z0-9_.|:,()-]+$")


class CategoryError(Exception):
    """Base class for every validation failure."""


class MissingComposite(CategoryError):
    def __init__(self, g: str, f: str):
        super().__init__(f"composable pair ({g}, {f}) has no composite")
        self.g, self.f = g, f


class MalformedComposite(CategoryError):
    """A table entry that is not composable or whose composite has the wrong type."""


class IdentityLawViolation(CategoryError):
    pass


class AssociativityViolation(CategoryError):
    def __init__(self, h: str, g: str, f: str):
        super().__init__(f"associativity fails for ({h}, {g}, {f})")
        self.triple = (h, g, f)


class DanglingId(CategoryError):
    pass


class NotAPartialOrder(CategoryError):
    pass


class NotAMonoid(CategoryError):
    pass


class ParseError(CategoryError):
    def __init__(self, message: str, location: str | None = None):
        text = f"{location}: {message}" if location else message
        super().__init__(text)
        self.location = location


@dataclass
class CategorySpec:
    """Raw, unvalidated description of a finite category."""

    objects: list[str]
    morphisms: list[tuple[str, str, str]]
    identities: dict[str, str]
    compose: dict[tuple[str, str], str] = field(default_factory=dict)


class FinCategory:
    """A validated finite category. Treat instances as immutable."""

    __slots__ = (
        "objects", "morphisms", "identities", "_src", "_tgt", "_compose",
        "_hom", "_identity_set", "_nonid_out",
    )

    def __init__(self, spec: CategorySpec, check_associativity: bool = True):
        _validate_into(self, spec, check_associativity)

    # -- basic accessors ------------------------------------------------
    def source(self, m: str) -> str:
        return self._src[m]

    def target(self, m: str) -> str:
        return self._tgt[m]

    def identity(self, x: str) -> str:
        return self.identities[x]

    def is_identity(self, m: str) -> bool:
        return m in self._identity_set

    def compose(self, g: str, f: str) -> str:
        """Return ``g o f`` (first ``f``, then ``g``)."""
        return self._compose[(g, f)]

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._hom.get((x, y), ())

    def end(self, x: str) -> tuple[str, ...]:
        return self.hom(x, x)

    def nonidentity_from(self, x: str) -> tuple[str, ...]:
        """Non-identity morphisms with source ``x``, in id order."""
        return self._nonid_out[x]

    def composable_pairs(self) -> Iterable[tuple[str, str]]:
        return iter(self._compose)

    def order_witness(self) -> list[list[bool]]:
        """``w[i][j]`` is true iff some morphism goes objects[i] -> objects[j]."""
        return [[bool(self.hom(x, y)) for y in self.objects] for x in self.objects]

    def to_spec(self) -> CategorySpec:
        return CategorySpec(
            objects=list(self.objects),
            morphisms=[(m, self._src[m], self._tgt[m]) for m in self.morphisms],
            identities=dict(self.identities),
            compose=dict(self._compose),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self._src == other._src
            and self._tgt == other._tgt
            and self.identities == other.identities
            and self._compose == other._compose
        )

    def __hash__(self) -> int:
        return hash((self.objects, self.morphisms))

    def __repr__(self) -> str:
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate(spec: CategorySpec, check_associativity: bool = True) -> FinCategory:
    return FinCategory(spec, check_associativity)


def _validate_into(cat: FinCategory, spec: CategorySpec, check_assoc: bool) -> None:
    objects = sorted(spec.objects)
    if len(set(objects)) != len(objects):
        raise DanglingId("duplicate object id")
    obj_set = set(objects)
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    for m, s, t in spec.morphisms:
        if m in src:
            raise DanglingId(f"duplicate morphism id {m!r}")
        for x in (s, t):
            if x not in obj_set:
                raise DanglingId(f"morphism {m!r} refers to unknown object {x!r}")
        src[m], tgt[m] = s, t

    for x in objects:
        if x not in spec.identities:
            raise IdentityLawViolation(f"object {x!r} has no identity")
    for x, e in spec.identities.items():
        if x not in obj_set:
            raise DanglingId(f"identity given for unknown object {x!r}")
        if e not in src:
            raise DanglingId(f"identity {e!r} of {x!r} is not a morphism")
        if src[e] != x or tgt[e] != x:
            raise IdentityLawViolation(f"identity {e!r} of {x!r} is not an endomorphism of {x!r}")
    if len(set(spec.identities.values())) != len(spec.identities):
        raise IdentityLawViolation("one morphism is the identity of two objects")

    compose: dict[tuple[str, str], str] = {}
    for (g, f), h in spec.compose.items():
        for m in (g, f, h):
            if m not in src:
                raise DanglingId(f"composition entry ({g}, {f}) -> {h} names unknown morphism {m!r}")
        if tgt[f] != src[g]:
            raise MalformedComposite(f"({g}, {f}) is not composable")
        if src[h] != src[f] or tgt[h] != tgt[g]:
            raise MalformedComposite(f"composite of ({g}, {f}) is {h!r} with the wrong source or target")
        compose[(g, f)] = h

    morphisms = sorted(src)
    by_source: dict[str, list[str]] = {x: [] for x in objects}
    for m in morphisms:
        by_source[src[m]].append(m)
    for f in morphisms:
        for g in by_source[tgt[f]]:
            if (g, f) not in compose:
                raise MissingComposite(g, f)

    for m in morphisms:
        if compose[(spec.identities[tgt[m]], m)] != m or compose[(m, spec.identities[src[m]])] != m:
            raise IdentityLawViolation(f"identity law fails for {m!r}")

    if check_assoc:
        for f in morphisms:
            for g in by_source[tgt[f]]:
                gf = compose[(g, f)]
                for h in by_source[tgt[g]]:
                    if compose[(h, gf)] != compose[(compose[(h, g)], f)]:
                        raise AssociativityViolation(h, g, f)

    hom: dict[tuple[str, str], list[str]] = {}
    for m in morphisms:
        hom.setdefault((src[m], tgt[m]), []).append(m)

    identity_set = frozenset(spec.identities.values())
    cat.objects = tuple(objects)
    cat.morphisms = tuple(morphisms)
    cat.identities = dict(spec.identities)
    cat._src = src
    cat._tgt = tgt
    cat._compose = compose
    cat._hom = {k: tuple(v) for k, v in hom.items()}
    cat._identity_set = identity_set
    cat._nonid_out = {
        x: tuple(m for m in by_source[x] if m not in identity_set) for x in objects
    }


# -- predicates ------------------------------------------------------------

def is_acyclic(cat: FinCategory) -> bool:
    for x in cat.objects:
        if len(cat.end(x)) != 1:
            return False
    for x, y in itertools.combinations(cat.objects, 2):
        if cat.hom(x, y) and cat.hom(y, x):
            return False
    return True


def is_poset(cat: FinCategory) -> bool:
    if not is_acyclic(cat):
        return False
    return all(len(cat.hom(x, y)) <= 1 for x in cat.objects for y in cat.objects)


# -- constructors ----------------------------------------------------------

def from_poset(elements: Sequence[str], leq: Sequence[Sequence[bool]]) -> FinCategory:
    """Category of a finite poset; the morphism ``x <= y`` is named ``x:y``."""
    n = len(elements)
    if len(leq) != n or any(len(row) != n for row in leq):
        raise NotAPartialOrder("relation matrix must be square over the elements")
    for i in range(n):
        if not leq[i][i]:
            raise NotAPartialOrder(f"not reflexive at {elements[i]!r}")
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise NotAPartialOrder(f"not antisymmetric at {elements[i]!r}, {elements[j]!r}")
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    raise NotAPartialOrder(
                        f"not transitive at {elements[i]!r}, {elements[j]!r}, {elements[k]!r}"
                    )

    def name(i: int, j: int) -> str:
        return f"{elements[i]}:{elements[j]}"

    pairs = [(i, j) for i in range(n) for j in range(n) if leq[i][j]]
    spec = CategorySpec(
        objects=list(elements),
        morphisms=[(name(i, j), elements[i], elements[j]) for i, j in pairs],
        identities={elements[i]: name(i, i) for i in range(n)},
    )
    for i, j in pairs:
        for k in range(n):
            if leq[j][k]:
                spec.compose[(name(j, k), name(i, j))] = name(i, k)
    return validate(spec, check_associativity=False)


def from_relation(pairs: Iterable[tuple[str, str]], elements: Iterable[str] = ()) -> FinCategory:
    """Poset generated by the reflexive-transitive closure of ``pairs``."""
    pairs = list(pairs)
    elems = sorted(set(elements) | {a for p in pairs for a in p})
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        leq[index[a]][index[b]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    return from_poset(elems, leq)


def from_monoid(
    elements: Sequence[str],
    table: Mapping[tuple[str, str], str] | Sequence[Sequence[str]],
    obj: str = "o",
) -> FinCategory:
    """One-object category of a finite monoid.

    ``table`` maps ``(a, b)`` to the product ``a * b`` (apply ``b`` first),
    or is a square list with ``table[i][j] = elements[i] * elements[j]``.
    """
    elems = list(elements)
    if isinstance(table, Mapping):
        mul = dict(table)
    else:
        mul = {(a, b): table[i][j] for i, a in enumerate(elems) for j, b in enumerate(elems)}
    eset = set(elems)
    for a in elems:
        for b in elems:
            if mul.get((a, b)) not in eset:
                raise NotAMonoid(f"product {a} * {b} missing or outside the carrier")
    units = [e for e in elems if all(mul[(e, a)] == a and mul[(a, e)] == a for a in elems)]
    if not units:
        raise NotAMonoid("no two-sided unit")
    for a, b, c in itertools.product(elems, repeat=3):
        if mul[(a, mul[(b, c)])] != mul[(mul[(a, b)], c)]:
            raise NotAMonoid(f"not associative at ({a}, {b}, {c})")
    spec = CategorySpec(
        objects=[obj],
        morphisms=[(e, obj, obj) for e in elems],
        identities={obj: units[0]},
        compose=mul,
    )
    return validate(spec, check_associativity=False)


def cyclic_group(k: int, obj: str = "x") -> FinCategory:
    """The cyclic group of order ``k`` as a one-object category (elements ``e``, ``s``, ``s2``...)."""
    names = ["e"] + ["s" if i == 1 else f"s{i}" for i in range(1, k)]
    table = [[names[(i + j) % k] for j in range(k)] for i in range(k)]
    return from_monoid(names, table, obj=obj)


def discrete(objects: Iterable[str]) -> FinCategory:
    objs = list(objects)
    return from_poset(objs, [[i == j for j in range(len(objs))] for i in range(len(objs))])


# -- serialization ---------------------------------------------------------

def serialize(cat: FinCategory | CategorySpec) -> str:
    spec = cat.to_spec() if isinstance(cat, FinCategory) else cat
    doc = {
        "objects": sorted(spec.objects),
        "morphisms": [list(t) for t in sorted(spec.morphisms)],
        "identities": {x: spec.identities[x] for x in sorted(spec.identities)},
        "compose": [[g, f, h] for (g, f), h in sorted(spec.compose.items())],
    }
    def dump(v) -> str:
        return json.dumps(v, ensure_ascii=False)

    lines = ["{"]
    lines.append(f'  "objects": {dump(doc["objects"])},')
    for key in ("morphisms", "compose"):
        items = doc[key]
        body = ",\n".join(f"    {dump(t)}" for t in items)
        lines.append(f'  "{key}": [\n{body}\n  ],' if items else f'  "{key}": [],')
        if key == "morphisms":
            lines.append(f'  "identities": {dump(doc["identities"])},')
    lines[-1] = lines[-1].rstrip(",")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _check_id(value: object, where: str) -> str:
    if not isinstance(value, str) or not ID_PATTERN.match(value):
        raise ParseError(f"invalid id {value!r}", where)
    return value


def parse(text: str) -> CategorySpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "line 1")
    for key in ("objects", "morphisms", "identities", "compose"):
        if key not in doc:
            raise ParseError("missing key", key)

    if not isinstance(doc["objects"], list):
        raise ParseError("must be a list", "objects")
    objects = [_check_id(x, f"objects[{i}]") for i, x in enumerate(doc["objects"])]

    if not isinstance(doc["morphisms"], list):
        raise ParseError("must be a list", "morphisms")
    morphisms = []
    for i, entry in enumerate(doc["morphisms"]):
        where = f"morphisms[{i}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError("expected [id, source, target]", where)
        morphisms.append(tuple(_check_id(v, where) for v in entry))

    if not isinstance(doc["identities"], dict):
        raise ParseError("must be a mapping", "identities")
    identities = {
        _check_id(k, "identities"): _check_id(v, f"identities[{k}]")
        for k, v in doc["identities"].items()
    }

    if not isinstance(doc["compose"], list):
        raise ParseError("must be a list", "compose")
    compose = {}
    for i, entry in enumerate(doc["compose"]):
        where = f"compose[{i}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise ParseError("expected [g, f, g∘f]", where)
        g, f, h = (_check_id(v, where) for v in entry)
        if (g, f) in compose:
            raise ParseError(f"duplicate entry for ({g}, {f})", where)
        compose[(g, f)] = h
    return CategorySpec(objects, morphisms, identities, compose)


def load(path) -> FinCategory:
    with open(path, encoding="utf-8") as fh:
        return validate(parse(fh.read()))
