"""Phantom Tic-Tac-Toe: tic-tac-toe where only the referee sees the board.

A move onto a cell occupied by the opponent is a legal *probe* that fails:
the prober is told "illegal", the cell is revealed to them, and they stay on
turn until they find a free cell.  The waiting player perceives nothing of
failed probes and only a turn signal when the opponent finally succeeds.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..game import Game, WorldState

LINES = (
    0b111000000, 0b000111000, 0b000000111,   # rows
    0b100100100, 0b010010010, 0b001001001,   # cols
    0b100010001, 0b001010100,                # diagonals
)
FULL = 0b111111111


def _has_line(mask: int) -> bool:
    for line in LINES:
        if mask & line == line:
            return True
    return False


class PhantomTttState(WorldState):
    __slots__ = ("masks", "revealed", "to_act", "winner")

    def __init__(self, masks=(0, 0), revealed=(0, 0), to_act=0, winner=None):
        self.masks = masks          # stones per player, bitmask
        self.revealed = revealed    # opponent stones each player has probed into
        self.to_act = to_act
        self.winner = winner        # None=running, 0/1=winner, -1=draw

    def current_player(self) -> Optional[int]:
        return None if self.winner is not None else self.to_act

    def legal_actions(self) -> Sequence[int]:
        p = self.to_act
        known = self.masks[p] | self.revealed[p]
        return [c for c in range(9) if not known >> c & 1]

    def step(self, action: int) -> "PhantomTttState":
        p = self.to_act
        bit = 1 << action
        if self.masks[1 - p] & bit:
            rev = (self.revealed[0] | bit, self.revealed[1]) if p == 0 else \
                  (self.revealed[0], self.revealed[1] | bit)
            return PhantomTttState(self.masks, rev, p, None)
        mask = self.masks[p] | bit
        masks = (mask, self.masks[1]) if p == 0 else (self.masks[0], mask)
        winner = None
        if _has_line(mask):
            winner = p
        elif masks[0] | masks[1] == FULL:
            winner = -1
        return PhantomTttState(masks, self.revealed, 1 - p, winner)

    def apply(self, action: int):
        p = self.to_act
        o = 1 - p
        bit = 1 << action
        if self.masks[o] & bit:
            rev = list(self.revealed)
            rev[p] |= bit
            nxt = PhantomTttState(self.masks, tuple(rev), p, None)
            return nxt, ("I", None) if p == 0 else (None, "I")
        masks = list(self.masks)
        masks[p] |= bit
        winner = None
        if _has_line(masks[p]):
            winner = p
        elif masks[0] | masks[1] == FULL:
            winner = -1
        nxt = PhantomTttState(tuple(masks), self.revealed, o, winner)
        mine, theirs = "L", "O"
        if winner is not None:
            tag = "!D" if winner == -1 else f"!{winner}"
            mine += tag
            theirs += tag
        return nxt, (mine, theirs) if p == 0 else (theirs, mine)

    def returns(self) -> tuple[float, float]:
        if self.winner == 0:
            return (1.0, -1.0)
        if self.winner == 1:
            return (-1.0, 1.0)
        return (0.0, 0.0)

    def __eq__(self, other):
        return (isinstance(other, PhantomTttState)
                and self.masks == other.masks and self.revealed == other.revealed
                and self.to_act == other.to_act and self.winner == other.winner)

    def __hash__(self):
        return hash((self.masks, self.revealed, self.to_act, self.winner))

    def __repr__(self):
        cells = "".join(
            "X" if self.masks[0] >> c & 1 else "O" if self.masks[1] >> c & 1 else "."
            for c in range(9))
        return f"PTTT({cells},to={self.to_act})"


class PhantomTttGame(Game):
    name = "phantom_ttt"

    def initial_state(self) -> PhantomTttState:
        return PhantomTttState()

    def max_game_length(self) -> int:
        # 9 successful placements plus at most 4 failed probes per player.
        return 17


def phantom_ttt_game() -> PhantomTttGame:
    return PhantomTttGame()
