"""Fusion-free resolution of a subgame tree.

Both solvers operate on infostates of the approximation game: nodes are
grouped by (acting player, that player's relative trace), and every node in
a group receives the same action distribution, which is exactly what rules
out strategy fusion inside the subgame.

* Information Set Search: backward induction over infosets.  At each infoset
  the action value is the visit-weighted average of member-node child values
  (chance over observation outcomes weighted by edge visits); the searcher
  maximizes, the opponent minimizes.  All values are from the searcher's
  perspective.
* CFR+: regret matching with nonnegative regret floors, alternating updates
  and linearly weighted average strategies, converging to a subgame Nash
  equilibrium for two-player zero-sum trees.

Actions never visited at a node are excluded from the solve rather than
imputed; on fully queried subgames this is vacuous.
"""

from __future__ import annotations

from typing import Optional

from .epimc import SubgameNode, SubgameTree
from .game import Trace

InfosetId = tuple[int, Trace]
Policy = dict[InfosetId, dict[int, float]]


class SolverError(Exception):
    pass


def _argmax(values: dict[int, float]) -> int:
    return min(values, key=lambda a: (-values[a], a))


def _argmin(values: dict[int, float]) -> int:
    return min(values, key=lambda a: (values[a], a))


class _Iss:
    """Backward induction with one shared strategy per infoset.

    Every infoset's action values are visit-weighted averages over its member
    nodes, and every infoset commits to the uniform mixture over its exactly
    tied optimal actions.  Backup is asymmetric on purpose:

    * the searcher's own internal nodes take their infoset's pooled value
      (max over actions of the weighted average), which aggregates every
      frontier sample behind that infostate instead of conditioning on
      hidden details the searcher cannot know;
    * opponent nodes apply the opponent's shared strategy node by node, so
      the searcher's root actions keep distinct values even when one
      opponent infoset spans all of them (the normal case under private
      observations).

    Settling is memoized recursion over nodes and infosets.  An infoset's
    owner perceives every own action, so no infoset can contain both a node
    and its descendant and the recursion bottoms out; the busy guards are
    insurance that any unforeseen coupling degrades locally instead of
    looping.
    """

    def __init__(self, tree: SubgameTree):
        self.tree = tree
        self.groups = tree.infosets()
        self.of_node: dict[int, InfosetId] = {}
        for ik, nodes in self.groups.items():
            for n in nodes:
                self.of_node[n.node_id] = ik
        self._strategy: dict[InfosetId, dict[int, float]] = {}
        self._ivalue: dict[InfosetId, float] = {}
        self._nvalue: dict[int, float] = {}
        self._busy: set[int] = set()
        self._busy_ik: set[InfosetId] = set()

    def node_value(self, node: SubgameNode) -> float:
        got = self._nvalue.get(node.node_id)
        if got is not None:
            return got
        if node.is_frontier:
            if node.visits == 0:
                raise SolverError("frontier node without visits")
            v = node.mean_value()
        elif node.node_id in self._busy:
            return 0.0  # unreachable coupling loop; neutral provisional value
        else:
            self._busy.add(node.node_id)
            try:
                ik = self.of_node[node.node_id]
                if node.actor == self.tree.searcher:
                    self._settle(ik)
                    got_iv = self._ivalue.get(ik)
                    if got_iv is None:  # settling in flight above us
                        got_iv = max(self._edge_value(node, a)
                                     for a in sorted(node.by_action))
                    v = got_iv
                else:
                    mix = self.strategy(ik)
                    present = [a for a in mix if a in node.by_action]
                    norm = sum(mix[a] for a in present)
                    if not present or norm <= 0.0:
                        # shared strategy never sampled here; use what was
                        present = sorted(node.by_action)
                        mix = {a: 1.0 for a in present}
                        norm = float(len(present))
                    v = sum(mix[a] / norm * self._edge_value(node, a)
                            for a in present)
            finally:
                self._busy.discard(node.node_id)
        self._nvalue[node.node_id] = v
        return v

    def _edge_value(self, node: SubgameNode, action: int) -> float:
        """Chance-expected child value of one action at one node."""
        kids = [self.tree.nodes[c] for c in node.by_action[action]]
        total = sum(k.visits for k in kids)
        if all(k.is_frontier for k in kids):
            # same weighted mean, without the mean/visits round trip, so a
            # fully frontier edge reproduces a flat accumulator bit for bit
            if any(k.visits == 0 for k in kids):
                raise SolverError("frontier node without visits")
            return sum(k.value_sum for k in kids) / total
        return sum(k.visits * self.node_value(k) for k in kids) / total

    def action_values(self, ik: InfosetId) -> dict[int, float]:
        nodes = self.groups[ik]
        actions = sorted({a for n in nodes for a in n.by_action})
        out: dict[int, float] = {}
        for a in actions:
            num = den = 0.0
            for n in nodes:
                if a in n.by_action:
                    num += n.visits * self._edge_value(n, a)
                    den += n.visits
            if den == 0:
                raise SolverError("infoset with zero total weight")
            out[a] = num / den
        return out

    def _settle(self, ik: InfosetId) -> None:
        if ik in self._ivalue or ik in self._busy_ik:
            return
        self._busy_ik.add(ik)
        try:
            values = self.action_values(ik)
        finally:
            self._busy_ik.discard(ik)
        opt = (max(values.values()) if ik[0] == self.tree.searcher
               else min(values.values()))
        tied = sorted(a for a, v in values.items() if v == opt)
        self._strategy[ik] = {a: 1.0 / len(tied) for a in tied}
        self._ivalue[ik] = opt

    def strategy(self, ik: InfosetId) -> dict[int, float]:
        got = self._strategy.get(ik)
        if got is not None:
            return got
        if ik in self._busy_ik:
            actions = sorted({a for n in self.groups[ik] for a in n.by_action})
            return {a: 1.0 / len(actions) for a in actions}
        self._settle(ik)
        return self._strategy[ik]


def iss_solve(tree: SubgameTree) -> tuple[Optional[int], float]:
    """Backward induction over infosets; returns (root action, root value)."""
    root = tree.root
    if root.is_frontier:
        return None, root.mean_value()
    if root.actor != tree.searcher:
        raise SolverError("subgame root must be a searcher decision")
    iss = _Iss(tree)
    values = iss.action_values((root.actor, root.keys[root.actor]))
    best = _argmax(values)
    return best, values[best]


def iss_policy(tree: SubgameTree) -> Policy:
    """The ISS decision at every internal infoset: the uniform mixture over
    exactly tied optimal actions (a single action when the optimum is unique)."""
    iss = _Iss(tree)
    return {ik: dict(iss.strategy(ik)) for ik in iss.groups}


class _CfrInfoset:
    __slots__ = ("actions", "regret", "strat_sum")

    def __init__(self, actions: list[int]):
        self.actions = actions
        self.regret = {a: 0.0 for a in actions}
        self.strat_sum = {a: 0.0 for a in actions}

    def strategy(self) -> dict[int, float]:
        total = sum(self.regret.values())
        if total <= 0.0:
            p = 1.0 / len(self.actions)
            return {a: p for a in self.actions}
        return {a: r / total for a, r in self.regret.items()}

    def average(self) -> dict[int, float]:
        total = sum(self.strat_sum.values())
        if total <= 0.0:
            p = 1.0 / len(self.actions)
            return {a: p for a in self.actions}
        return {a: s / total for a, s in self.strat_sum.items()}


def _restrict(sigma: dict[int, float], present: list[int]) -> dict[int, float]:
    norm = sum(sigma.get(a, 0.0) for a in present)
    if norm <= 0.0:
        p = 1.0 / len(present)
        return {a: p for a in present}
    return {a: sigma.get(a, 0.0) / norm for a in present}


def cfrplus_solve(tree: SubgameTree, iterations: int = 1000
                  ) -> tuple[Optional[int], Policy]:
    """CFR+ over the subgame; returns the root action with the highest
    average-strategy probability and the full average policy."""
    if tree.num_players != 2:
        raise SolverError("CFR+ solver requires a two-player subgame")
    root = tree.root
    if root.is_frontier:
        return None, {}
    groups = tree.infosets()
    infosets = {ik: _CfrInfoset(sorted({a for n in ns for a in n.by_action}))
                for ik, ns in groups.items()}
    of_node = {n.node_id: ik for ik, ns in groups.items() for n in ns}
    nodes = tree.nodes

    def walk(node: SubgameNode, player: int, pi_me: float, pi_opp: float,
             weight: float) -> float:
        if node.is_frontier:
            v = node.mean_value()
            return v if player == tree.searcher else -v
        info = infosets[of_node[node.node_id]]
        present = [a for a in info.actions if a in node.by_action]
        sigma = _restrict(info.strategy(), present)

        def edge(a: int, pm: float, po: float) -> float:
            kids = [nodes[c] for c in node.by_action[a]]
            total = sum(k.visits for k in kids)
            return sum(k.visits / total
                       * walk(k, player, pm, po * k.visits / total, weight)
                       for k in kids)

        if node.actor == player:
            vals = {a: edge(a, pi_me * sigma[a], pi_opp) for a in present}
            v = sum(sigma[a] * vals[a] for a in present)
            for a in present:
                info.regret[a] = max(info.regret[a] + pi_opp * (vals[a] - v), 0.0)
                info.strat_sum[a] += weight * pi_me * sigma[a]
            return v
        return sum(sigma[a] * edge(a, pi_me, pi_opp * sigma[a]) for a in present)

    for t in range(1, iterations + 1):
        for player in (0, 1):
            walk(root, player, 1.0, 1.0, float(t))

    policy: Policy = {ik: info.average() for ik, info in infosets.items()}
    root_avg = policy[(root.actor, root.keys[root.actor])]
    best = min(root_avg, key=lambda a: (-root_avg[a], a))
    return best, policy


def _node_policy(policy: Policy, node: SubgameNode, present: list[int]
                 ) -> dict[int, float]:
    dist = policy.get((node.actor, node.keys[node.actor]))
    if dist is None:
        p = 1.0 / len(present)
        return {a: p for a in present}
    return _restrict(dist, present)


def expected_value(tree: SubgameTree, policy: Policy) -> float:
    """Searcher-perspective value of a full policy profile on the subgame."""
    nodes = tree.nodes

    def walk(node: SubgameNode) -> float:
        if node.is_frontier:
            return node.mean_value()
        present = sorted(node.by_action)
        dist = _node_policy(policy, node, present)
        v = 0.0
        for a in present:
            kids = [nodes[c] for c in node.by_action[a]]
            total = sum(k.visits for k in kids)
            v += dist.get(a, 0.0) * sum(k.visits / total * walk(k) for k in kids)
        return v

    return walk(tree.root)


def best_response_value(tree: SubgameTree, policy: Policy, br_player: int) -> float:
    """Value (for ``br_player``) of the infoset-consistent best response
    against ``policy``.  Exact on fully queried subgames."""
    nodes = tree.nodes
    sign = 1.0 if br_player == tree.searcher else -1.0

    # Opponent-and-chance reach of every node; the best responder's own
    # actions contribute reach 1 (counterfactual weighting).
    reach = [0.0] * len(nodes)
    reach[0] = 1.0
    for node in nodes:
        if node.is_frontier:
            continue
        present = sorted(node.by_action)
        dist = (None if node.actor == br_player
                else _node_policy(policy, node, present))
        for a in present:
            kids = [nodes[c] for c in node.by_action[a]]
            total = sum(k.visits for k in kids)
            base = 1.0 if dist is None else dist.get(a, 0.0)
            for k in kids:
                reach[k.node_id] = reach[node.node_id] * base * k.visits / total

    groups = tree.infosets()
    of_node = {n.node_id: ik for ik, ns in groups.items() for n in ns}
    choice: dict[InfosetId, int] = {}

    def edge_value(node: SubgameNode, a: int) -> float:
        kids = [nodes[c] for c in node.by_action[a]]
        total = sum(k.visits for k in kids)
        return sum(k.visits / total * node_value(k) for k in kids)

    def node_value(node: SubgameNode) -> float:
        if node.is_frontier:
            return sign * node.mean_value()
        present = sorted(node.by_action)
        if node.actor == br_player:
            a = infoset_choice(of_node[node.node_id])
            if a not in node.by_action:  # sparse tree: best local fallback
                return max(edge_value(node, b) for b in present)
            return edge_value(node, a)
        dist = _node_policy(policy, node, present)
        return sum(dist.get(a, 0.0) * edge_value(node, a) for a in present)

    def infoset_choice(ik: InfosetId) -> int:
        cached = choice.get(ik)
        if cached is not None:
            return cached
        members = groups[ik]
        cf: dict[int, float] = {}
        for a in sorted({a for n in members for a in n.by_action}):
            cf[a] = sum(reach[n.node_id] * edge_value(n, a)
                        for n in members if a in n.by_action)
        best = _argmax(cf)
        choice[ik] = best
        return best

    return node_value(tree.root)


def exploitability(tree: SubgameTree, policy: Policy) -> float:
    """Sum of both players' best-response gains; zero exactly at equilibrium."""
    return (best_response_value(tree, policy, 0)
            + best_response_value(tree, policy, 1))
