"""Perfect-information leaf evaluators for determinized world states.

Both evaluators score a fully visible world state for a given player:
``RandomRollout`` averages uniformly random playouts, ``AlphaBeta`` computes
the exact minimax value of the determinized game (both players assumed to
see everything).  Terminal states always return their stored payoff.
"""

from __future__ import annotations

import random
from typing import Optional

from .game import WorldState

_EXACT, _LOWER, _UPPER = 0, 1, 2


class EvaluatorBudgetError(Exception):
    """Alpha-beta exceeded its node budget; never degrade to a heuristic."""


class RandomRollout:
    """Mean return of n uniformly random playouts (default n=1; the search
    loop above already averages across samples)."""

    def __init__(self, n_rollouts: int = 1):
        if n_rollouts < 1:
            raise ValueError("need at least one rollout")
        self.n_rollouts = n_rollouts

    def evaluate(self, state: WorldState, for_player: int,
                 rng: random.Random) -> float:
        if state.current_player() is None:
            return state.returns()[for_player]
        total = 0.0
        for _ in range(self.n_rollouts):
            s = state
            while s.current_player() is not None:
                acts = s.legal_actions()
                s = s.step(acts[rng.randrange(len(acts))])
            total += s.returns()[for_player]
        return total / self.n_rollouts


class AlphaBeta:
    """Exact minimax with alpha-beta pruning over the determinized game.

    Actions are explored in engine order; an optional transposition table
    (off by default, keyed on hashable states) caches exact and bound values
    across calls.  Exceeding ``node_cap`` raises instead of guessing.
    """

    def __init__(self, node_cap: int = 5_000_000, use_tt: bool = False):
        self.node_cap = node_cap
        self.use_tt = use_tt
        self._tt: dict = {}
        self._nodes = 0

    def evaluate(self, state: WorldState, for_player: int,
                 rng: Optional[random.Random] = None) -> float:
        self._nodes = 0
        return self._search(state, float("-inf"), float("inf"), for_player)

    def _search(self, state, alpha, beta, player) -> float:
        self._nodes += 1
        if self._nodes > self.node_cap:
            raise EvaluatorBudgetError(f"alpha-beta exceeded {self.node_cap} nodes")
        actor = state.current_player()
        if actor is None:
            return state.returns()[player]
        key = None
        if self.use_tt:
            key = (state, player)
            hit = self._tt.get(key)
            if hit is not None:
                flag, v = hit
                if flag == _EXACT:
                    return v
                if flag == _LOWER:
                    alpha = max(alpha, v)
                else:
                    beta = min(beta, v)
                if alpha >= beta:
                    return v
        a0, b0 = alpha, beta
        if actor == player:
            v = float("-inf")
            for a in state.legal_actions():
                v = max(v, self._search(state.step(a), alpha, beta, player))
                alpha = max(alpha, v)
                if alpha >= beta:
                    break
        else:
            v = float("inf")
            for a in state.legal_actions():
                v = min(v, self._search(state.step(a), alpha, beta, player))
                beta = min(beta, v)
                if alpha >= beta:
                    break
        if self.use_tt:
            flag = _LOWER if v >= b0 else _UPPER if v <= a0 else _EXACT
            self._tt[key] = (flag, v)
        return v


def make_evaluator(kind: str, **kwargs):
    if kind == "rollout":
        return RandomRollout(n_rollouts=kwargs.get("rollouts", 1))
    if kind == "alphabeta":
        return AlphaBeta(node_cap=kwargs.get("node_cap", 5_000_000),
                         use_tt=kwargs.get("use_tt", True))
    raise ValueError(f"unknown evaluator {kind!r}")
