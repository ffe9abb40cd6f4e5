"""Belief sampling: produce full histories consistent with one player's infostate.

Three strategies cover the in-scope games:

* ``enumerate`` — exhaustively list H(s) (guarded by a node cap) and draw
  uniformly.  Exact, used for small games and for uniformity testing.
* ``deal`` — game-specific redealing of unseen cards / replacement of unseen
  ships, exactly uniform over consistent worlds (games expose
  ``resample_consistent``).
* ``reject`` — replay the player's own trace against randomly imputed hidden
  opponent moves, restarting on any observation mismatch.  Samples are
  consistent but distributed as the proposal conditioned on acceptance, not
  exactly uniform.

``auto`` picks the conventional default per game: deal-based where available,
rejection with an enumeration fallback for phantom games, plain enumeration
otherwise.
"""

from __future__ import annotations

import random
from typing import Optional

from .game import Game, History, InfostateKey, extend_trace


class SamplerError(Exception):
    """No consistent history could be produced."""


class EnumerationCapError(SamplerError):
    """Enumerating H(s) would exceed the node cap."""


def enumerate_consistent(game: Game, key: InfostateKey,
                         cap: int = 1_000_000) -> list[History]:
    """All histories whose trace for ``key.player`` equals the key's trace.

    Histories extended by transitions the player cannot perceive (hidden
    failed probes) are members too.  Raises EnumerationCapError when the
    walk would visit more than ``cap`` histories.
    """
    p, target = key.player, key.trace
    roots = game.enumerate_initial_states()
    if roots is None:
        raise EnumerationCapError(f"{game.name}: initial states not enumerable")

    out: list[History] = []
    stack: list[tuple[History, tuple]] = []
    visited = 0
    for root in roots:
        h = History.root(game, root)
        ro = h.obs[p]
        t = ((None, ro),) if ro is not None else ()
        if t == target[:len(t)]:
            stack.append((h, t))
    while stack:
        h, t = stack.pop()
        visited += 1
        if visited > cap:
            raise EnumerationCapError(f"H(s) enumeration exceeded cap {cap}")
        if t == target:
            out.append(h)
        if h.state.current_player() is None:
            continue
        for a in h.state.legal_actions():
            ch = h.child(a)
            ct = extend_trace(t, p, h.state.current_player(), a, ch.obs[p])
            if len(ct) <= len(target) and ct == target[:len(ct)]:
                stack.append((ch, ct))
    return out


def _replay_once(game: Game, key: InfostateKey, rng: random.Random,
                 root: History) -> Optional[History]:
    """One rejection proposal: force own recorded moves, randomize hidden
    opponent turns, fail on any observation mismatch."""
    p, target = key.player, key.trace
    horizon = game.max_game_length()
    h = root
    i = 0
    ro = h.obs[p]
    if ro is not None:
        if not target or target[0] != (None, ro):
            return None
        i = 1
    while i < len(target):
        actor = h.state.current_player()
        if actor is None or h.length > horizon:
            return None
        if actor == p:
            a = target[i][0]
            if a is None or a not in h.state.legal_actions():
                return None
            h = h.child(a)
            if (a, h.obs[p]) != target[i]:
                return None
            i += 1
        else:
            acts = h.state.legal_actions()
            h = h.child(acts[rng.randrange(len(acts))])
            o = h.obs[p]
            if o is None:
                continue
            if target[i] != (None, o):
                return None
            i += 1
    return h


class BeliefSampler:
    """Sampling(s): histories consistent with one player's infostate.

    The sampler is stateless apart from a per-key enumeration cache; pass a
    fresh or shared rng per call as needed.
    """

    def __init__(self, game: Game, player: int, strategy: str = "auto",
                 max_tries: int = 10_000, node_cap: int = 1_000_000,
                 fallback_after: int = 300, cycle: bool = False):
        self.game = game
        self.player = player
        self.max_tries = max_tries
        self.node_cap = node_cap
        self.cycle = cycle
        self._cache: dict[InfostateKey, list[History]] = {}
        self._cursor: dict[InfostateKey, int] = {}
        if strategy == "auto":
            if hasattr(game, "resample_consistent"):
                self._chain = ["deal"]
            elif game.enumerate_initial_states() is not None:
                self._chain = (["reject", "enumerate"]
                               if game.max_game_length() > 4 else ["enumerate"])
            else:
                self._chain = ["reject"]
            self._reject_tries = fallback_after if len(self._chain) > 1 else max_tries
        else:
            self._chain = [strategy]
            self._reject_tries = max_tries

    def enumerate_consistent(self, key: InfostateKey) -> list[History]:
        hs = self._cache.get(key)
        if hs is None:
            hs = enumerate_consistent(self.game, key, self.node_cap)
            if len(self._cache) > 8:
                self._cache.clear()
                self._cursor.clear()
            self._cache[key] = hs
        return hs

    def sample_world(self, key: InfostateKey, rng: random.Random) -> History:
        err: Optional[SamplerError] = None
        for strat in self._chain:
            try:
                return getattr(self, "_sample_" + strat)(key, rng)
            except SamplerError as e:
                err = e
        raise err  # type: ignore[misc]

    def _sample_enumerate(self, key, rng) -> History:
        hs = self.enumerate_consistent(key)
        if not hs:
            raise SamplerError("no consistent history")
        if self.cycle:
            i = self._cursor.get(key, 0)
            self._cursor[key] = i + 1
            return hs[i % len(hs)]
        return hs[rng.randrange(len(hs))]

    def _sample_deal(self, key, rng) -> History:
        return self.game.resample_consistent(key, rng)

    def _sample_reject(self, key, rng) -> History:
        roots = self.game.enumerate_initial_states()
        if roots is None:
            raise SamplerError(
                f"{self.game.name}: rejection needs enumerable initial states")
        for _ in range(self._reject_tries):
            root = History.root(self.game, roots[rng.randrange(len(roots))])
            h = _replay_once(self.game, key, rng, root)
            if h is not None:
                return h
        raise SamplerError(
            f"rejection sampling failed after {self._reject_tries} tries")


def default_sampler(game: Game, player: int, **kwargs) -> BeliefSampler:
    return BeliefSampler(game, player, strategy="auto", **kwargs)
