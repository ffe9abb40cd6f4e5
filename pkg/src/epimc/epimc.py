"""Extended PIMC: postpone the leaf evaluator behind a depth-d subgame.

Every sampling iteration walks one random action per step through the
sampled world ("explore one action per sampling iteration"), materializing
an approximation game whose nodes are identified by the path of
(action, joint observation) signatures from the searcher's current
infostate.  Frontier nodes (depth d or terminal) accumulate leaf-evaluator
values; the finished subgame is handed to a fusion-free solver that picks
the root action on infostates rather than worlds.

The exhaustive all-actions walk is available behind ``explore="all"``; with
depth 1 it makes the subgame's root statistics coincide with PIMC's.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .game import InfostateKey, Trace, WorldState, extend_trace
from .pimc import Budget
from .sampling import BeliefSampler

ObsSig = tuple[Optional[str], ...]


class EmptySubgameError(Exception):
    """No query completed; there is nothing to solve."""


class SubgameNode:
    __slots__ = ("node_id", "parent", "depth", "actor", "keys", "children",
                 "by_action", "value_sum", "visits")

    def __init__(self, node_id: int, parent: Optional[int], depth: int,
                 actor: Optional[int], keys: tuple[Trace, ...]):
        self.node_id = node_id
        self.parent = parent
        self.depth = depth
        self.actor = actor                      # None at terminal-reached nodes
        self.keys = keys                        # per-player traces relative to the root
        self.children: dict[tuple[int, ObsSig], int] = {}
        self.by_action: dict[int, list[int]] = {}
        self.value_sum = 0.0
        self.visits = 0

    @property
    def is_frontier(self) -> bool:
        return not self.children

    def mean_value(self) -> float:
        return self.value_sum / self.visits


class SubgameTree:
    """Arena of subgame nodes rooted at the searcher's current infostate."""

    def __init__(self, searcher: int, depth: int, num_players: int = 2):
        self.searcher = searcher
        self.depth = depth
        self.num_players = num_players
        root = SubgameNode(0, None, 0, searcher, ((),) * num_players)
        self.nodes: list[SubgameNode] = [root]

    @property
    def root(self) -> SubgameNode:
        return self.nodes[0]

    def child(self, node: SubgameNode, action: int, obs: ObsSig,
              next_actor: Optional[int]) -> SubgameNode:
        """Fetch or create the node for one (action, observation) signature."""
        cid = node.children.get((action, obs))
        if cid is not None:
            got = self.nodes[cid]
            assert got.actor == next_actor, "inconsistent actor inside a node"
            return got
        keys = tuple(
            extend_trace(node.keys[p], p, node.actor, action, obs[p])
            for p in range(self.num_players))
        got = SubgameNode(len(self.nodes), node.node_id, node.depth + 1,
                          next_actor, keys)
        self.nodes.append(got)
        node.children[(action, obs)] = got.node_id
        node.by_action.setdefault(action, []).append(got.node_id)
        return got

    def infosets(self) -> dict[tuple[int, Trace], list[SubgameNode]]:
        """Internal nodes grouped by (acting player, that player's trace)."""
        groups: dict[tuple[int, Trace], list[SubgameNode]] = {}
        for node in self.nodes:
            if node.children:
                groups.setdefault((node.actor, node.keys[node.actor]), []).append(node)
        return groups


def query(tree: SubgameTree, node: SubgameNode, world: WorldState, depth: int,
          evaluator, rng: random.Random, explore: str = "one") -> None:
    """One determinized walk from `node`, accumulating a leaf value at the
    frontier (depth exhausted or terminal world).

    Exploration modes: ``one`` walks a single uniformly random action per
    step (one leaf evaluation per sampled world); ``all`` expands every
    action at every step (|A|^d evaluations, exact trees on small games);
    ``root`` expands every action at the subgame root but walks one random
    action below it, matching the per-sample evaluation count of plain
    per-action scoring.
    """
    node.visits += 1
    actor = world.current_player()
    if depth == 0 or actor is None:
        node.value_sum += evaluator.evaluate(world, tree.searcher, rng)
        return
    acts = world.legal_actions()
    if explore == "one" or (explore == "root" and node.depth > 0):
        acts = (acts[rng.randrange(len(acts))],)
    elif explore not in ("all", "root"):
        raise ValueError(f"unknown exploration mode {explore!r}")
    for a in acts:
        nxt, obs = world.apply(a)
        child = tree.child(node, a, obs, nxt.current_player())
        query(tree, child, nxt, depth - 1, evaluator, rng, explore)


def build_subgame(depth: int, key: InfostateKey, budget: Budget,
                  sampler: BeliefSampler, evaluator, rng: random.Random,
                  explore: str = "one") -> SubgameTree:
    if depth < 1:
        raise ValueError("subgame depth must be >= 1")
    tree = SubgameTree(searcher=key.player, depth=depth)
    for _ in budget.iterations():
        world = sampler.sample_world(key, rng).current
        query(tree, tree.root, world, depth, evaluator, rng, explore)
    if tree.root.visits == 0 or not tree.root.children:
        raise EmptySubgameError("budget produced no completed queries")
    return tree


def epimc_choose(depth: int, key: InfostateKey, budget: Budget,
                 sampler: BeliefSampler, evaluator,
                 subgame_solver: Callable[[SubgameTree], tuple],
                 rng: random.Random, explore: str = "one") -> int:
    """Sample-and-query until the budget is spent, then let the solver pick."""
    tree = build_subgame(depth, key, budget, sampler, evaluator, rng, explore)
    return subgame_solver(tree)[0]
