"""Core abstractions for two-player zero-sum games with hidden information.

Games are modeled as alternating-move, finite-horizon games run by a referee:
exactly one player acts in every non-terminal state, all chance is resolved
in the initial deal, and every transition hands each player an observation
(or ``None`` when the transition is imperceptible to that player, e.g. a
hidden probe by the opponent in a phantom game).

A player's infostate is the canonical trace of their own actions interleaved
with the observations they actually perceived.  Two histories are
indistinguishable to a player exactly when their traces are equal.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

# Action id used for the non-acting player's "null" move.
NOOP = -1

# One trace entry: (own action or None, perceived observation or None).
Entry = tuple[Optional[int], Optional[str]]
Trace = tuple[Entry, ...]


@dataclass(frozen=True, slots=True)
class InfostateKey:
    """Canonical encoding of everything one player has seen and done."""

    player: int
    trace: Trace

    def __len__(self) -> int:
        return len(self.trace)


def extend_trace(trace: Trace, player: int, actor: int, action: int,
                 obs: Optional[str]) -> Trace:
    """Append whatever `player` perceives of one transition to their trace.

    A transition is invisible to a player who neither acted nor observed
    anything; such transitions leave the trace unchanged (hidden failed
    probes in phantom games rely on this).
    """
    if actor == player:
        return trace + ((action, obs),)
    if obs is not None:
        return trace + ((None, obs),)
    return trace


class WorldState(ABC):
    """Ground-truth game position.  Value semantics: apply() returns a new state."""

    @abstractmethod
    def current_player(self) -> Optional[int]:
        """Acting player index, or None when terminal."""

    @abstractmethod
    def legal_actions(self) -> Sequence[int]:
        """Legal action ids for the acting player.  Empty only at terminals."""

    @abstractmethod
    def apply(self, action: int) -> tuple["WorldState", tuple[Optional[str], ...]]:
        """Apply a legal action; return the successor and per-player observations."""

    def step(self, action: int) -> "WorldState":
        """Successor state without observation payloads (rollout fast path)."""
        return self.apply(action)[0]

    @abstractmethod
    def returns(self) -> tuple[float, ...]:
        """Per-player terminal payoffs.  Only valid at terminal states."""

    def is_terminal(self) -> bool:
        return self.current_player() is None


class Game(ABC):
    """Factory and metadata for one game; states carry the rules themselves."""

    name: str = "?"
    num_players: int = 2

    @abstractmethod
    def initial_state(self) -> WorldState:
        """Root state.  Any chance (deals, placements) is resolved here from
        the game's seed; mid-game transitions are deterministic."""

    def initial_observations(self, state: WorldState) -> tuple[Optional[str], ...]:
        """What each player perceives of the root (e.g. their dealt hand)."""
        return (None,) * self.num_players

    def enumerate_initial_states(self) -> Optional[list[WorldState]]:
        """All possible roots (uniform chance), or None when not enumerable.

        Games without root chance return the singleton root.
        """
        return [self.initial_state()]

    @abstractmethod
    def max_game_length(self) -> int:
        """Static horizon: no playout exceeds this many transitions."""


class History:
    """A path of (state, action) steps from the root, stored as a parent chain."""

    __slots__ = ("game", "parent", "state", "action", "obs", "length")

    def __init__(self, game: Game, parent: Optional["History"], state: WorldState,
                 action: Optional[int], obs: tuple[Optional[str], ...], length: int):
        self.game = game
        self.parent = parent
        self.state = state
        self.action = action
        self.obs = obs
        self.length = length

    @classmethod
    def root(cls, game: Game, state: Optional[WorldState] = None) -> "History":
        s = game.initial_state() if state is None else state
        return cls(game, None, s, None, game.initial_observations(s), 0)

    def child(self, action: int) -> "History":
        nxt, obs = self.state.apply(action)
        return History(self.game, self, nxt, action, obs, self.length + 1)

    @property
    def current(self) -> WorldState:
        return self.state

    def chain(self) -> list["History"]:
        """Nodes from root to self, inclusive."""
        out: list[History] = []
        h: Optional[History] = self
        while h is not None:
            out.append(h)
            h = h.parent
        out.reverse()
        return out

    def steps(self) -> Iterator[tuple[WorldState, int]]:
        """(state, action) pairs along the path, excluding the final state."""
        nodes = self.chain()
        for prev, nxt in zip(nodes, nodes[1:]):
            yield prev.state, nxt.action  # type: ignore[misc]

    def actions(self) -> list[int]:
        return [h.action for h in self.chain()[1:]]  # type: ignore[list-item]

    def trace(self, player: int) -> Trace:
        nodes = self.chain()
        root_obs = nodes[0].obs[player]
        t: Trace = ((None, root_obs),) if root_obs is not None else ()
        for prev, nxt in zip(nodes, nodes[1:]):
            actor = prev.state.current_player()
            t = extend_trace(t, player, actor, nxt.action, nxt.obs[player])
        return t

    def infostate_key(self, player: int) -> InfostateKey:
        return InfostateKey(player, self.trace(player))


def infostate_of(history: History, player: int) -> InfostateKey:
    """The unique infostate a history induces for one player."""
    return history.infostate_key(player)


def legal_actions(state: WorldState, player: int) -> Sequence[int]:
    """Actions available to `player`: the real set for the actor, noop otherwise."""
    actor = state.current_player()
    if actor is None:
        raise ValueError("legal_actions called on a terminal state")
    if actor == player:
        return state.legal_actions()
    return (NOOP,)


def replay(game: Game, actions: Sequence[int],
           root: Optional[WorldState] = None) -> History:
    """Fold a recorded action sequence into a History from the (given) root."""
    h = History.root(game, root)
    for a in actions:
        h = h.child(a)
    return h
