"""Strategy-fusion detection and counting on fully enumerable games.

A policy maps every non-terminal history to a distribution over the acting
player's actions.  An infostate *creates strategy fusion* when two of its
member histories at which the owning player acts receive different
distributions: a real player cannot implement such a policy because the
histories are indistinguishable to them.  SF(policy) counts the infostates
(over all players) that create fusion; SF = 0 means the policy is
implementable without fusion.

The depth-d policy measured here mirrors what postponed-evaluator search
produces: infostate-level backward induction (exact leaf values, uniform
world weights) for decisions strictly inside depth d, and a per-world
evaluator-greedy action beyond, which is exactly the mechanism that creates
fusion in plain determinized search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .evaluators import AlphaBeta
from .game import Game, History, InfostateKey

PolicyOracle = Callable[[History], dict[int, float]]
Witness = tuple[History, History]


class EnumerationCapError(Exception):
    pass


class GameIndex:
    """Every history of a game, grouped into infostates for both players."""

    def __init__(self, game: Game, cap: int = 1_000_000):
        roots = game.enumerate_initial_states()
        if roots is None:
            raise EnumerationCapError(f"{game.name}: initial states not enumerable")
        self.game = game
        self.histories: list[History] = []
        self.infosets: dict[InfostateKey, list[History]] = {}
        stack = [History.root(game, r) for r in roots]
        while stack:
            h = stack.pop()
            self.histories.append(h)
            if len(self.histories) > cap:
                raise EnumerationCapError(f"game enumeration exceeded cap {cap}")
            for p in range(game.num_players):
                self.infosets.setdefault(h.infostate_key(p), []).append(h)
            if h.state.current_player() is not None:
                for a in h.state.legal_actions():
                    stack.append(h.child(a))

    def decision_members(self, key: InfostateKey) -> list[History]:
        """Member histories at which the infostate's owner is the one to act."""
        return [h for h in self.infosets.get(key, ())
                if h.state.current_player() == key.player]

    def horizon(self) -> int:
        return max(h.length for h in self.histories)


def enumerate_game(game: Game, cap: int = 1_000_000) -> GameIndex:
    return GameIndex(game, cap)


def _distance(a: dict[int, float], b: dict[int, float]) -> float:
    keys = set(a) | set(b)
    return max(abs(a.get(k, 0.0) - b.get(k, 0.0)) for k in keys) if keys else 0.0


def creates_fusion(policy: PolicyOracle, index: GameIndex, key: InfostateKey,
                   tolerance: float = 1e-9) -> tuple[bool, Optional[Witness]]:
    """Does the policy give distinguishable treatment to indistinguishable
    histories?  Returns the flag and a witnessing pair when it does."""
    members = index.decision_members(key)
    dists = [policy(h) for h in members]
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if _distance(dists[i], dists[j]) > tolerance:
                return True, (members[i], members[j])
    return False, None


@dataclass
class FusionReport:
    label: str
    horizon: int
    sf: int
    flags: dict[InfostateKey, Optional[Witness]] = field(repr=False, default_factory=dict)

    def fused_infostates(self) -> list[InfostateKey]:
        return [k for k, w in self.flags.items() if w is not None]


def sf_count(policy: PolicyOracle, index: GameIndex, label: str = "",
             tolerance: float = 1e-9) -> FusionReport:
    """SF(policy): the number of infostates, over all players, that create
    strategy fusion under the given policy."""
    flags: dict[InfostateKey, Optional[Witness]] = {}
    total = 0
    for key in index.infosets:
        fused, witness = creates_fusion(policy, index, key, tolerance)
        flags[key] = witness
        if fused:
            total += 1
    return FusionReport(label=label, horizon=index.horizon(), sf=total, flags=flags)


class DepthLimitedPolicy:
    """Anti-fused play inside depth d, per-world greedy play beyond.

    Inside: decisions at histories shallower than d are solved by backward
    induction over infostates with exact per-world leaf values at the depth-d
    frontier, uniform weights over member histories, maximizing for player 0
    and minimizing for player 1; every infostate gets one action.
    Beyond: the acting player takes the action an exact evaluator prefers in
    that specific world, ignoring what it can actually distinguish.
    """

    def __init__(self, index: GameIndex, depth: int):
        if depth < 1:
            raise ValueError("depth must be >= 1")
        self.index = index
        self.depth = depth
        self._eval = AlphaBeta(use_tt=True)
        self._groups: dict[InfostateKey, list[History]] = {}
        for h in index.histories:
            actor = h.state.current_player()
            if actor is not None and h.length < depth:
                self._groups.setdefault(h.infostate_key(actor), []).append(h)
        self._choice: dict[InfostateKey, int] = {}
        self._value: dict[InfostateKey, float] = {}

    def _history_value(self, h: History) -> float:
        """Player-0 value: exact at/beyond the frontier, infoset-level inside."""
        actor = h.state.current_player()
        if actor is None or h.length >= self.depth:
            return self._eval.evaluate(h.state, 0)
        return self._infoset_value(h.infostate_key(actor))

    def _infoset_value(self, key: InfostateKey) -> float:
        got = self._value.get(key)
        if got is not None:
            return got
        members = self._groups[key]
        actions = members[0].state.legal_actions()
        values = {
            a: sum(self._history_value(h.child(a)) for h in members) / len(members)
            for a in actions}
        if key.player == 0:
            choice = min(values, key=lambda a: (-values[a], a))
        else:
            choice = min(values, key=lambda a: (values[a], a))
        self._choice[key] = choice
        self._value[key] = values[choice]
        return values[choice]

    def __call__(self, h: History) -> dict[int, float]:
        actor = h.state.current_player()
        assert actor is not None, "policy queried at a terminal history"
        if h.length < self.depth:
            key = h.infostate_key(actor)
            self._infoset_value(key)
            return {self._choice[key]: 1.0}
        values = {a: self._eval.evaluate(h.state.step(a), actor)
                  for a in h.state.legal_actions()}
        return {min(values, key=lambda a: (-values[a], a)): 1.0}


def depth_limited_policy(index: GameIndex, depth: int) -> DepthLimitedPolicy:
    return DepthLimitedPolicy(index, depth)


@dataclass
class PropositionsReport:
    game: str
    horizon: int
    sf_by_depth: dict[int, int]
    monotone: bool                 # deeper reasoning never adds fusion
    strictly_reduced: bool         # positive SF shrinks at some tested deeper d
    vanishes_at_horizon: Optional[bool]  # None when the horizon was not tested

    def all_hold(self) -> bool:
        return self.monotone and self.strictly_reduced and self.vanishes_at_horizon is not False


def verify_propositions(game: Game, depths: list[int], cap: int = 1_000_000,
                        tolerance: float = 1e-9) -> PropositionsReport:
    """Measure SF of the depth-d policy at each depth and check that it is
    non-increasing, strictly reducible while positive, and zero at the horizon."""
    index = enumerate_game(game, cap)
    sf = {d: sf_count(depth_limited_policy(index, d), index,
                      label=f"d={d}", tolerance=tolerance).sf
          for d in depths}
    ds = sorted(sf)
    monotone = all(sf[a] >= sf[b] for a, b in zip(ds, ds[1:]))
    strictly = True
    for i, d in enumerate(ds):
        deeper = ds[i + 1:]
        if sf[d] > 0 and deeper and not any(sf[b] < sf[d] for b in deeper):
            strictly = False
    horizon = index.horizon()
    vanishes = (sf[horizon] == 0) if horizon in sf else None
    return PropositionsReport(game=game.name, horizon=horizon, sf_by_depth=sf,
                              monotone=monotone, strictly_reduced=strictly,
                              vanishes_at_horizon=vanishes)
