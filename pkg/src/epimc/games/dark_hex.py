"""Dark Hex: Hex on an n x n rhombus where opponent stones are invisible.

Player 0 connects the west and east edges, player 1 the north and south
edges.  Probing an occupied cell reveals that cell to the prober and keeps
them on turn; the opponent perceives nothing of failed probes.  Hex has no
draws: a full board always contains a winning chain for someone.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..game import Game, WorldState

# Axial neighbour offsets on the rhombus.
_NEIGHBOURS = ((-1, 0), (1, 0), (0, -1), (0, 1), (-1, 1), (1, -1))


def _connected(mask: int, n: int, player: int) -> bool:
    """True when `player`'s stones link their two opposite edges."""
    if player == 0:
        starts = [r * n for r in range(n) if mask >> (r * n) & 1]
        goal = lambda r, c: c == n - 1
    else:
        starts = [c for c in range(n) if mask >> c & 1]
        goal = lambda r, c: r == n - 1
    seen = 0
    stack = starts
    while stack:
        cell = stack.pop()
        if seen >> cell & 1:
            continue
        seen |= 1 << cell
        r, c = divmod(cell, n)
        if goal(r, c):
            return True
        for dr, dc in _NEIGHBOURS:
            rr, cc = r + dr, c + dc
            if 0 <= rr < n and 0 <= cc < n:
                nxt = rr * n + cc
                if mask >> nxt & 1 and not seen >> nxt & 1:
                    stack.append(nxt)
    return False


class DarkHexState(WorldState):
    __slots__ = ("n", "masks", "revealed", "to_act", "winner")

    def __init__(self, n, masks=(0, 0), revealed=(0, 0), to_act=0, winner=None):
        self.n = n
        self.masks = masks
        self.revealed = revealed
        self.to_act = to_act
        self.winner = winner

    def current_player(self) -> Optional[int]:
        return None if self.winner is not None else self.to_act

    def legal_actions(self) -> Sequence[int]:
        p = self.to_act
        known = self.masks[p] | self.revealed[p]
        return [c for c in range(self.n * self.n) if not known >> c & 1]

    def step(self, action: int) -> "DarkHexState":
        p = self.to_act
        bit = 1 << action
        if self.masks[1 - p] & bit:
            rev = (self.revealed[0] | bit, self.revealed[1]) if p == 0 else \
                  (self.revealed[0], self.revealed[1] | bit)
            return DarkHexState(self.n, self.masks, rev, p, None)
        mask = self.masks[p] | bit
        masks = (mask, self.masks[1]) if p == 0 else (self.masks[0], mask)
        winner = p if _connected(mask, self.n, p) else None
        return DarkHexState(self.n, masks, self.revealed, 1 - p, winner)

    def apply(self, action: int):
        p = self.to_act
        o = 1 - p
        bit = 1 << action
        if self.masks[o] & bit:
            rev = list(self.revealed)
            rev[p] |= bit
            nxt = DarkHexState(self.n, self.masks, tuple(rev), p, None)
            return nxt, ("I", None) if p == 0 else (None, "I")
        masks = list(self.masks)
        masks[p] |= bit
        winner = p if _connected(masks[p], self.n, p) else None
        nxt = DarkHexState(self.n, tuple(masks), self.revealed, o, winner)
        mine, theirs = "L", "O"
        if winner is not None:
            mine += f"!{winner}"
            theirs += f"!{winner}"
        return nxt, (mine, theirs) if p == 0 else (theirs, mine)

    def returns(self) -> tuple[float, float]:
        return (1.0, -1.0) if self.winner == 0 else (-1.0, 1.0)

    def __eq__(self, other):
        return (isinstance(other, DarkHexState) and self.n == other.n
                and self.masks == other.masks and self.revealed == other.revealed
                and self.to_act == other.to_act and self.winner == other.winner)

    def __hash__(self):
        return hash((self.n, self.masks, self.revealed, self.to_act, self.winner))


class DarkHexGame(Game):
    def __init__(self, size: int):
        if size not in (3, 4):
            raise ValueError(f"unsupported dark hex size {size}")
        self.size = size
        self.name = f"dark_hex{size}"

    def initial_state(self) -> DarkHexState:
        return DarkHexState(self.size)

    def max_game_length(self) -> int:
        n2 = self.size * self.size
        return 2 * n2 - 1  # n^2 successes plus at most n^2-1 failed probes


def dark_hex_game(size: int = 3) -> DarkHexGame:
    return DarkHexGame(size)
