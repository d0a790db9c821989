"""Brute-force check of the alternating-sum identity for tuples modulo a sparse equivalence.

For ``[n] = {0, ..., n}`` with an equivalence that never relates
neighbours, let ``A_k`` be the strictly increasing ``(k+1)``-tuples,
``B_k`` those with two adjacent entries equivalent, and ``C_k`` the
remaining tuples up to entrywise equivalence. With ``beta_k = #B_k`` and
``gamma_k = sum over classes of (size - 1)``, both

    sum_{k=0}^{n-1} (-1)^k (beta_k + gamma_k)   and   sum_{k=-1}^{n} (-1)^k #C_k

vanish.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

DEFAULT_BOUND = 7


class InvalidPartition(ValueError):
    pass


@dataclass(frozen=True)
class HanakiInstance:
    """``labels[i]`` is the block of ``i``; equal labels mean equivalent."""

    labels: tuple[int, ...]

    def __post_init__(self):
        if not self.labels:
            raise InvalidPartition("the ground set [n] is never empty")
        for i in range(len(self.labels) - 1):
            if self.labels[i] == self.labels[i + 1]:
                raise InvalidPartition(f"{i} and {i + 1} are equivalent")

    @property
    def n(self) -> int:
        return len(self.labels) - 1

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> "HanakiInstance":
        elems = sorted(x for b in blocks for x in b)
        if elems != list(range(len(elems))):
            raise InvalidPartition("blocks must partition {0, ..., n}")
        labels = [0] * len(elems)
        for k, b in enumerate(blocks):
            for x in b:
                labels[x] = k
        return cls(tuple(labels))

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, b in enumerate(self.labels):
            out.setdefault(b, []).append(i)
        return sorted(out.values())


@dataclass
class HanakiStats:
    """Per-``k`` statistics; list index ``k + 1`` holds the value for ``k = -1 ... n``."""

    n: int
    beta: list[int]
    gamma: list[int]
    classes: list[int]

    @property
    def beta_gamma_sum(self) -> int:
        return sum((-1) ** k * (self.beta[k + 1] + self.gamma[k + 1]) for k in range(self.n))

    @property
    def class_sum(self) -> int:
        return sum((-1) ** k * self.classes[k + 1] for k in range(-1, self.n + 1))

    @property
    def ok(self) -> bool:
        return self.beta_gamma_sum == 0 and self.class_sum == 0


def hanaki_stats(inst: HanakiInstance) -> HanakiStats:
    n, lab = inst.n, inst.labels
    beta, gamma, classes = [0], [0], [1]
    for k in range(n + 1):
        b = 0
        groups: dict[tuple[int, ...], int] = {}
        for t in itertools.combinations(range(n + 1), k + 1):
            if any(lab[t[m]] == lab[t[m + 1]] for m in range(k)):
                b += 1
            else:
                key = tuple(lab[i] for i in t)
                groups[key] = groups.get(key, 0) + 1
        beta.append(b)
        gamma.append(sum(size - 1 for size in groups.values()))
        classes.append(len(groups))
    return HanakiStats(n, beta, gamma, classes)


def valid_partitions(n: int) -> Iterator[HanakiInstance]:
    """Every equivalence on ``[n]`` relating no two consecutive integers, as restricted growth strings."""

    def grow(labels: list[int], top: int) -> Iterator[HanakiInstance]:
        if len(labels) == n + 1:
            yield HanakiInstance(tuple(labels))
            return
        for b in range(top + 2):
            if b != labels[-1]:
                labels.append(b)
                yield from grow(labels, max(top, b))
                labels.pop()

    yield from grow([0], 0)


@dataclass
class HanakiReport:
    n_max: int
    instances: dict[int, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "instances": {str(n): c for n, c in self.instances.items()},
            "total_instances": sum(self.instances.values()),
            "failures": self.failures,
        }


def hanaki_exhaustive(n_max: int, bound: int = DEFAULT_BOUND) -> HanakiReport:
    if not 0 <= n_max <= bound:
        raise ValueError(f"n_max must lie in [0, {bound}]")
    report = HanakiReport(n_max)
    for n in range(n_max + 1):
        count = 0
        for inst in valid_partitions(n):
            count += 1
            stats = hanaki_stats(inst)
            if not stats.ok:
                report.failures.append({
                    "n": n,
                    "blocks": inst.blocks(),
                    "beta_gamma_sum": stats.beta_gamma_sum,
                    "class_sum": stats.class_sum,
                })
        report.instances[n] = count
    return report
