"""Comparison agents: single-observer IS-MCTS, recursive PIMC, and random.

IS-MCTS grows one tree from the searcher's perspective; each iteration
re-determinizes the hidden information, descends by UCT restricted to moves
legal in that determinization (availability-corrected), expands one node,
rolls out uniformly, and backpropagates returns from the perspective of the
player who owns each edge.

IIMC scores each root action by playing the sampled world to completion
with both seats controlled by small inner PIMC searches.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

from .game import InfostateKey
from .pimc import Budget, best_mean_action, iterations, pimc_choose
from .sampling import BeliefSampler, default_sampler


def random_choose(legal_actions: Sequence[int], rng: random.Random) -> int:
    """Uniform choice among the legal actions."""
    if not legal_actions:
        raise ValueError("no legal actions")
    return legal_actions[rng.randrange(len(legal_actions))]


class IsMctsNode:
    """Per-infostate UCT statistics: action -> [visits, total value, avail]."""

    __slots__ = ("children",)

    def __init__(self):
        self.children: dict[int, list] = {}


def ismcts_search(key: InfostateKey, budget: Budget, sampler: BeliefSampler,
                  rng: random.Random, c: float = 1.0
                  ) -> dict[InfostateKey, IsMctsNode]:
    """Grow the infostate-keyed UCT tree and return the node table.

    Nodes are indexed by the acting player's own infostate in the
    determinized world, so positions one player cannot tell apart share
    statistics (the second player's reply node in a deal-then-play game is
    one node regardless of what the hidden deal was).
    """
    table: dict[InfostateKey, IsMctsNode] = {}
    for _ in budget.iterations():
        h = sampler.sample_world(key, rng)
        path: list[tuple[list, int]] = []
        while h.state.current_player() is not None:
            actor = h.state.current_player()
            node_key = h.infostate_key(actor)
            node = table.get(node_key)
            if node is None:
                node = IsMctsNode()
                table[node_key] = node
            acts = h.state.legal_actions()
            untried = [a for a in acts if a not in node.children]
            if untried:
                a = untried[rng.randrange(len(untried))]
                stats = node.children[a] = [0, 0.0, 1]
                path.append((stats, actor))
                h = h.child(a)
                break
            best, best_stats, best_score = None, None, -math.inf
            for a in acts:
                stats = node.children[a]
                stats[2] += 1
                score = (stats[1] / stats[0]
                         + c * math.sqrt(math.log(stats[2]) / stats[0]))
                if score > best_score:
                    best, best_stats, best_score = a, stats, score
            path.append((best_stats, actor))
            h = h.child(best)
        state = h.state
        while state.current_player() is not None:
            acts = state.legal_actions()
            state = state.step(acts[rng.randrange(len(acts))])
        returns = state.returns()
        for stats, actor in path:
            stats[0] += 1
            stats[1] += returns[actor]
    return table


def ismcts_choose(key: InfostateKey, budget: Budget, sampler: BeliefSampler,
                  rng: random.Random, c: float = 1.0) -> int:
    """Most-visited root action after determinized UCT iterations."""
    table = ismcts_search(key, budget, sampler, rng, c)
    root = table.get(key)
    if root is None or not root.children:
        raise RuntimeError("IS-MCTS completed zero iterations")
    return min(root.children, key=lambda a: (-root.children[a][0], a))


def iimc_choose(key: InfostateKey, budget: Budget, sampler: BeliefSampler,
                evaluator, level2_samples: int, rng: random.Random) -> int:
    """PIMC whose per-world playouts are steered by inner PIMC searches."""
    player = key.player
    game = sampler.game
    inner_budget = iterations(level2_samples)
    inner_samplers = {p: default_sampler(game, p) for p in range(game.num_players)}
    totals: dict[int, float] = {}
    counts: dict[int, int] = {}
    for _ in budget.iterations():
        h = sampler.sample_world(key, rng)
        for a in h.current.legal_actions():
            cur = h.child(a)
            while cur.current.current_player() is not None:
                q = cur.current.current_player()
                legal = cur.current.legal_actions()
                if len(legal) == 1:
                    cur = cur.child(legal[0])
                    continue
                move = pimc_choose(cur.infostate_key(q), inner_budget,
                                   inner_samplers[q], evaluator, rng)
                cur = cur.child(move)
            v = cur.current.returns()[player]
            totals[a] = totals.get(a, 0.0) + v
            counts[a] = counts.get(a, 0) + 1
    if not totals:
        raise RuntimeError("IIMC completed zero iterations")
    return best_mean_action({a: (totals[a], counts[a]) for a in totals})
