"""Non-monotonic conditionals and executable checks of the KLM postulates.

``A ~> B`` holds in an extended context when every most-typical object
having ``A`` also has ``B``: ``min A ⊆ B'``.  The negated form ``A ~> ¬B``
holds when no most-typical ``A``-object has ``B``: ``min A ∩ B' = ∅``.

When ``A' = ∅`` the minimised derivation is empty, so ``A ~> B`` and
``A ~> ¬B`` both hold for every ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .context import FormalContext, from_mask
from .errors import ArityError, BoundExceededError
from .preference import ExtendedContext

__all__ = [
    "ARITY",
    "Conditional",
    "LLEMode",
    "Postulate",
    "PostulateReport",
    "VerifyMode",
    "check_lemma1",
    "check_lemma2",
    "check_postulate",
    "consequences",
    "holds",
    "verify_klm",
]

DEFAULT_EXHAUSTIVE_BOUND = 6


class Postulate(str, Enum):
    REFLEXIVITY = "Reflexivity"
    LLE = "LLE"
    RW = "RW"
    CUT = "Cut"
    AND = "And"
    CM = "CM"
    RM = "RM"
    LEMMA1 = "Lemma1"
    LEMMA2 = "Lemma2"


ARITY = {
    Postulate.REFLEXIVITY: 1,
    Postulate.LLE: 3,
    Postulate.RW: 3,
    Postulate.CUT: 3,
    Postulate.AND: 3,
    Postulate.CM: 3,
    Postulate.RM: 3,
    Postulate.LEMMA1: 2,
    Postulate.LEMMA2: 2,
}


class LLEMode(str, Enum):
    SEMANTIC = "semantic"  # A ≡ B iff A' = B'
    SYNTACTIC = "syntactic"  # A ≡ B iff A = B


class VerifyMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class Conditional:
    premise: frozenset[int]
    conclusion: frozenset[int]
    negated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "premise", frozenset(self.premise))
        object.__setattr__(self, "conclusion", frozenset(self.conclusion))

    @classmethod
    def of(cls, ctx: FormalContext, premise: Iterable[str], conclusion: Iterable[str],
           negated: bool = False) -> "Conditional":
        return cls(ctx.attrs(*premise), ctx.attrs(*conclusion), negated)


def _holds(ext: ExtendedContext, premise: int, conclusion: int) -> bool:
    return ext.min_mask(premise) & ~ext.context.extent_mask(conclusion) == 0


def _holds_not(ext: ExtendedContext, premise: int, conclusion: int) -> bool:
    return ext.min_mask(premise) & ext.context.extent_mask(conclusion) == 0


def holds(ext: ExtendedContext, c: Conditional) -> bool:
    ctx = ext.context
    premise, conclusion = ctx.attr_mask(c.premise), ctx.attr_mask(c.conclusion)
    if c.negated:
        return _holds_not(ext, premise, conclusion)
    return _holds(ext, premise, conclusion)


def consequences(ext: ExtendedContext, attributes: Iterable[int]) -> frozenset[int]:
    """Everything ``A`` defeasibly entails: ``B ⊆ consequences(A)`` iff ``A ~> B``."""
    return from_mask(ext.min_return_mask(ext.context.attr_mask(attributes)))


def _check(ext: ExtendedContext, p: Postulate, sets: Sequence[int], lle: LLEMode) -> bool:
    ctx = ext.context
    ext_of = ctx.extent_mask
    h = lambda a, b: _holds(ext, a, b)  # noqa: E731
    if p is Postulate.REFLEXIVITY:
        (a,) = sets
        return h(a, a)
    if p is Postulate.LEMMA1:
        a, b = sets
        return ext_of(a) & ext_of(b) == ext_of(a | b)
    if p is Postulate.LEMMA2:
        a, b = sets
        return not h(a, b) or ext.min_mask(a) == ext.min_mask(a | b)
    a, b, c = sets
    if p is Postulate.LLE:
        equivalent = a == b if lle is LLEMode.SYNTACTIC else ext_of(a) == ext_of(b)
        return not (equivalent and h(a, c)) or h(b, c)
    if p is Postulate.RW:
        implication = ext_of(a) & ~ext_of(b) == 0
        return not (implication and h(c, a)) or h(c, b)
    if p is Postulate.CUT:
        return not (h(a | b, c) and h(a, b)) or h(a, c)
    if p is Postulate.AND:
        return not (h(a, b) and h(a, c)) or h(a, b | c)
    if p is Postulate.CM:
        return not (h(a, b) and h(a, c)) or h(a | b, c)
    if p is Postulate.RM:
        return not (h(a, b) and not _holds_not(ext, a, c)) or h(a | c, b)
    raise ValueError(f"unknown postulate {p!r}")  # pragma: no cover


def check_postulate(
    ext: ExtendedContext,
    postulate: Postulate | str,
    instantiation: Sequence[Iterable[int]],
    *,
    lle: LLEMode | str = LLEMode.SEMANTIC,
) -> bool:
    """Whether one instance of a rule holds in ``ext``.

    The instance holds when some antecedent fails or the consequent holds.
    Argument order follows the rule as usually written, e.g. ``(A, B, C)``
    for RM means ``A ~> B, A !~> ¬C  ⊢  A ∪ C ~> B``.
    """
    p = Postulate(postulate)
    if len(instantiation) != ARITY[p]:
        raise ArityError(f"{p.value} takes {ARITY[p]} attribute sets, got {len(instantiation)}")
    sets = [ext.context.attr_mask(s) for s in instantiation]
    return _check(ext, p, sets, LLEMode(lle))


def check_lemma1(ctx: FormalContext, a: Iterable[int], b: Iterable[int]) -> bool:
    """``A' ∩ B' = (A ∪ B)'``."""
    a_mask, b_mask = ctx.attr_mask(a), ctx.attr_mask(b)
    return ctx.extent_mask(a_mask) & ctx.extent_mask(b_mask) == ctx.extent_mask(a_mask | b_mask)


def check_lemma2(ext: ExtendedContext, a: Iterable[int], b: Iterable[int]) -> bool:
    """If ``A ~> B`` then ``min A = min (A ∪ B)``; vacuously true otherwise."""
    return check_postulate(ext, Postulate.LEMMA2, (a, b))


@dataclass(frozen=True)
class PostulateReport:
    postulate: Postulate
    checked: int
    violations: tuple[tuple[frozenset[int], ...], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, ctx: FormalContext) -> dict:
        return {
            "postulate": self.postulate.value,
            "checked": self.checked,
            "violations": [[ctx.attribute_names(s) for s in w] for w in self.violations],
        }


def _tables(ext: ExtendedContext) -> tuple[np.ndarray, np.ndarray]:
    ctx = ext.context
    size = 1 << ctx.n_attributes
    dtype = np.int64 if ctx.n_objects < 63 else object
    extents = np.array([ctx.extent_mask(b) for b in range(size)], dtype=dtype)
    minimal = np.array([ext.order.minimal_mask(int(e)) for e in extents], dtype=dtype)
    return extents, minimal


def _exhaustive_violations(ext: ExtendedContext, lle: LLEMode) -> dict[Postulate, np.ndarray]:
    extents, minimal = _tables(ext)
    n = len(extents)
    idx = np.arange(n)
    union = idx[:, None] | idx[None, :]
    # H[a, b]: a ~> b;  N[a, c]: a ~> ¬c
    H = (minimal[:, None] & ~extents[None, :]) == 0
    N = (minimal[:, None] & extents[None, :]) == 0
    H = H.astype(bool)
    N = N.astype(bool)
    if lle is LLEMode.SYNTACTIC:
        equiv = np.eye(n, dtype=bool)
    else:
        equiv = (extents[:, None] == extents[None, :]).astype(bool)
    implies = ((extents[:, None] & ~extents[None, :]) == 0).astype(bool)
    HT = H.T
    a3 = idx[:, None, None]
    b3 = idx[None, :, None]
    return {
        Postulate.REFLEXIVITY: ~np.diagonal(H)[:, None],
        Postulate.LLE: equiv[:, :, None] & H[:, None, :] & ~H[None, :, :],
        Postulate.RW: implies[:, :, None] & HT[:, None, :] & ~HT[None, :, :],
        Postulate.CUT: H[union] & H[:, :, None] & ~H[:, None, :],
        Postulate.AND: H[:, :, None] & H[:, None, :] & ~H[a3, union[None, :, :]],
        Postulate.CM: H[:, :, None] & H[:, None, :] & ~H[union],
        Postulate.RM: H[:, :, None] & ~N[:, None, :] & ~H[union[:, None, :], b3],
        Postulate.LEMMA1: (extents[:, None] & extents[None, :]) != extents[union],
        Postulate.LEMMA2: H & (minimal[:, None] != minimal[union]),
    }


def verify_klm(
    ext: ExtendedContext,
    mode: VerifyMode | str = VerifyMode.EXHAUSTIVE,
    sample_count: int = 1000,
    seed: int = 0,
    *,
    max_attributes: int = DEFAULT_EXHAUSTIVE_BOUND,
    lle: LLEMode | str = LLEMode.SEMANTIC,
) -> list[PostulateReport]:
    """Check every postulate (and both lemmas) and report violating instances.

    Exhaustive mode covers all tuples over the powerset of M and needs
    ``|M| <= max_attributes``.  Sampled mode draws ``sample_count`` uniform
    tuples per postulate from a seed-derived stream per postulate.
    """
    mode = VerifyMode(mode)
    lle = LLEMode(lle)
    ctx = ext.context
    reports = []
    if mode is VerifyMode.EXHAUSTIVE:
        if ctx.n_attributes > max_attributes:
            raise BoundExceededError(
                f"exhaustive check needs |M| <= {max_attributes}, context has {ctx.n_attributes}"
            )
        for p, bad in _exhaustive_violations(ext, lle).items():
            arity = ARITY[p]
            witnesses = tuple(
                tuple(from_mask(int(i)) for i in row[:arity]) for row in np.argwhere(bad)
            )
            reports.append(PostulateReport(p, (1 << ctx.n_attributes) ** arity, witnesses))
        return reports

    if sample_count < 1:
        raise ValueError("sampled mode needs sample_count >= 1")
    streams = np.random.SeedSequence(seed).spawn(len(Postulate))
    m = ctx.n_attributes
    for p, stream in zip(Postulate, streams):
        rng = np.random.default_rng(stream)
        arity = ARITY[p]
        bits = rng.integers(0, 2, size=(sample_count, arity, m))
        weights = [1 << j for j in range(m)]
        witnesses = []
        for draw in bits:
            sets = [sum(w for w, bit in zip(weights, row) if bit) for row in draw]
            if not _check(ext, p, sets, lle):
                witnesses.append(tuple(from_mask(s) for s in sets))
        reports.append(PostulateReport(p, sample_count, tuple(witnesses)))
    return reports
