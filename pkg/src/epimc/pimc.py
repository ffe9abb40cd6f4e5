"""Perfect Information Monte Carlo: per-sample determinized action scoring.

Each iteration samples one world consistent with the searcher's infostate,
applies every root action to it, and scores the successor with the perfect
information leaf evaluator.  The action with the best mean score wins, ties
broken by smallest action id so that fixed seeds give fixed choices.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Iterator

from .evaluators import AlphaBeta, RandomRollout
from .game import InfostateKey
from .sampling import BeliefSampler


@dataclass(frozen=True)
class Budget:
    """Per-move search budget: a fixed iteration count (reproducible) or a
    wall-clock allowance in milliseconds (not reproducible)."""

    kind: str  # "iterations" or "ms"
    amount: int

    def __post_init__(self):
        if self.kind not in ("iterations", "ms"):
            raise ValueError(f"unknown budget kind {self.kind!r}")
        if self.amount <= 0:
            raise ValueError("budget must be positive")

    def iterations(self) -> Iterator[int]:
        """Yield once per whole search iteration until the budget is spent.

        Wall-clock budgets never cut an iteration in half: the check happens
        between iterations, so every started iteration completes and the
        per-action sample counts stay equal.
        """
        if self.kind == "iterations":
            yield from range(self.amount)
        else:
            deadline = time.perf_counter() + self.amount / 1000.0
            i = 0
            while time.perf_counter() < deadline:
                yield i
                i += 1

    @staticmethod
    def parse(text: str) -> "Budget":
        kind, _, amount = text.partition(":")
        if kind in ("iters", "iterations"):
            return Budget("iterations", int(amount))
        if kind == "ms":
            return Budget("ms", int(amount))
        raise ValueError(f"bad budget {text!r}; expected iters:K or ms:K")


def iterations(count: int) -> Budget:
    return Budget("iterations", count)


def pimc_scores(key: InfostateKey, budget: Budget, sampler: BeliefSampler,
                evaluator, rng: random.Random) -> dict[int, tuple[float, int]]:
    """Accumulated (score, count) per legal action over sampled worlds."""
    totals: dict[int, float] = {}
    counts: dict[int, int] = {}
    player = key.player
    for _ in budget.iterations():
        world = sampler.sample_world(key, rng).current
        assert world.current_player() == player, "sampled world not ours to move"
        for a in world.legal_actions():
            v = evaluator.evaluate(world.step(a), player, rng)
            totals[a] = totals.get(a, 0.0) + v
            counts[a] = counts.get(a, 0) + 1
    return {a: (totals[a], counts[a]) for a in totals}


def best_mean_action(scores: dict[int, tuple[float, int]]) -> int:
    """Argmax of mean score; ties go to the smallest action id."""
    return min(scores, key=lambda a: (-scores[a][0] / scores[a][1], a))


def pimc_choose(key: InfostateKey, budget: Budget, sampler: BeliefSampler,
                evaluator, rng: random.Random) -> int:
    scores = pimc_scores(key, budget, sampler, evaluator, rng)
    if not scores:
        raise RuntimeError("PIMC completed zero iterations")
    return best_mean_action(scores)


__all__ = ["AlphaBeta", "Budget", "RandomRollout", "best_mean_action",
           "iterations", "pimc_choose", "pimc_scores"]
