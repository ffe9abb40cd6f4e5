"""Rock-Paper-Scissors variant with a guaranteed exit option.

Player 0 either leaves for a fixed payoff of -0.6 or commits to playing one
of Rock/Paper/Scissors.  Player 1 only learns that player 0 chose to play
(observation "Play") and responds; standard RPS payoffs of +/-1 and 0 apply.
The whole game has four non-terminal world states and is the canonical
strategy-fusion showcase: per-world best responses for player 1 differ, so a
determinized evaluator values every play action at -1 and walks away.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..game import Game, WorldState

LEAVE, ROCK, PAPER, SCISSORS = 0, 1, 2, 3
LEAVE_VALUE = -0.6


class RpsState(WorldState):
    __slots__ = ("p0_move", "p1_move")

    def __init__(self, p0_move: Optional[int] = None, p1_move: Optional[int] = None):
        self.p0_move = p0_move
        self.p1_move = p1_move

    def current_player(self) -> Optional[int]:
        if self.p0_move is None:
            return 0
        if self.p0_move == LEAVE or self.p1_move is not None:
            return None
        return 1

    def legal_actions(self) -> Sequence[int]:
        if self.p0_move is None:
            return (LEAVE, ROCK, PAPER, SCISSORS)
        return (0, 1, 2)  # player 1: Rock, Paper, Scissors

    def apply(self, action: int):
        if self.p0_move is None:
            if action == LEAVE:
                nxt = RpsState(LEAVE)
                r = nxt.returns()
                return nxt, (f"E{r[0]:g}", f"E{r[1]:g}")
            return RpsState(action), (None, "Play")
        nxt = RpsState(self.p0_move, action)
        r = nxt.returns()
        return nxt, (f"E{r[0]:g}", f"E{r[1]:g}")

    def returns(self) -> tuple[float, float]:
        if self.p0_move == LEAVE:
            return (LEAVE_VALUE, -LEAVE_VALUE)
        diff = (self.p0_move - 1 - self.p1_move) % 3
        v = 0.0 if diff == 0 else (1.0 if diff == 1 else -1.0)
        return (v, -v)

    def __eq__(self, other):
        return (isinstance(other, RpsState)
                and self.p0_move == other.p0_move and self.p1_move == other.p1_move)

    def __hash__(self):
        return hash((self.p0_move, self.p1_move))

    def __repr__(self):
        names = {None: "-", LEAVE: "L", ROCK: "R", PAPER: "P", SCISSORS: "S"}
        return f"Rps({names[self.p0_move]},{self.p1_move})"


class RpsVariantGame(Game):
    name = "rps"

    def initial_state(self) -> RpsState:
        return RpsState()

    def max_game_length(self) -> int:
        return 2


def rps_variant_game() -> RpsVariantGame:
    return RpsVariantGame()
