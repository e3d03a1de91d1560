"""Small worked-example contexts used in docs and tests."""

from __future__ import annotations

from .context import FormalContext
from .preference import ExtendedContext, build_order


def animals() -> FormalContext:
    """Four animal species and where they live / whether they fly."""
    return FormalContext.from_intents(
        {
            "orca": ["northern", "southern", "antarctic"],
            "duck": ["northern", "southern", "flies", "bird"],
            "robin": ["northern", "southern", "flies", "bird"],
            "penguin": ["southern", "antarctic", "bird"],
        },
        ["northern", "southern", "flies", "antarctic", "bird"],
    )


def animals_ext(pairs=(("duck", "penguin"), ("robin", "penguin"))) -> ExtendedContext:
    ctx = animals()
    return ExtendedContext(ctx, build_order(ctx, pairs))


def greek() -> FormalContext:
    return FormalContext.from_intents(
        {
            "Jason": ["warrior", "hero"],
            "Achilles": ["warrior", "demigod", "hero"],
            "Minos": ["demigod"],
        },
        ["warrior", "demigod", "hero"],
    )


def greek_ext() -> ExtendedContext:
    ctx = greek()
    return ExtendedContext(ctx, build_order(ctx, [("Achilles", "Jason"), ("Achilles", "Minos")]))


def meet_failure() -> FormalContext:
    """Five-concept lattice whose typical concepts are not meet-closed."""
    return FormalContext.from_intents(
        {"a": ["X"], "b": ["X", "Y"], "c": ["X", "Y", "Z"], "d": ["Y"]},
        ["X", "Y", "Z"],
    )


def meet_failure_ext() -> ExtendedContext:
    ctx = meet_failure()
    return ExtendedContext(ctx, build_order(ctx, [("c", "b"), ("a", "c"), ("d", "c")]))


def join_failure() -> FormalContext:
    """Six-concept lattice whose typical concepts have no top."""
    return FormalContext.from_intents(
        {"a": ["X", "Z"], "b": ["Y", "Z"], "c": ["X", "Y", "Z"], "d": ["Y"]},
        ["X", "Y", "Z"],
    )


def join_failure_ext() -> ExtendedContext:
    ctx = join_failure()
    return ExtendedContext(ctx, build_order(ctx, [("a", "b"), ("a", "c"), ("a", "d")]))
