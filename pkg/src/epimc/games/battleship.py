"""Battleship on a 3x3 grid with a 2x1 and a 1x1 ship.

Each player secretly picks a full fleet layout (one action from the 84 legal
layouts), then the players alternate shots.  Shot results are public:
miss/hit/sunk called out to both sides.  The game ends when one fleet is
destroyed; a player's payoff is the value of opponent ships they sank minus
the value of ships they lost, where a ship is worth its cell count.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from ..game import Game, History, InfostateKey, WorldState

ROWS = COLS = 3
N_CELLS = 9


def _two_cell_masks() -> list[int]:
    masks = []
    for r in range(ROWS):
        for c in range(COLS - 1):
            masks.append(1 << (r * COLS + c) | 1 << (r * COLS + c + 1))
    for r in range(ROWS - 1):
        for c in range(COLS):
            masks.append(1 << (r * COLS + c) | 1 << ((r + 1) * COLS + c))
    return masks


# A layout is (mask of the 2x1 ship, mask of the 1x1 ship).
LAYOUTS: list[tuple[int, int]] = [
    (m2, 1 << cell)
    for m2 in _two_cell_masks()
    for cell in range(N_CELLS)
    if not m2 >> cell & 1
]
FLEET_VALUE = 3


def _fleet_mask(layout: tuple[int, int]) -> int:
    return layout[0] | layout[1]


def _shot_result(layout: tuple[int, int], shots_before: int, cell: int) -> str:
    """'m', 'h', or 's' for a shot at `cell` given prior shots at this fleet."""
    bit = 1 << cell
    if not _fleet_mask(layout) & bit:
        return "m"
    after = shots_before | bit
    for ship in layout:
        if ship & bit and ship & ~after == 0:
            return "s"
    return "h"


class BattleshipState(WorldState):
    __slots__ = ("layouts", "shots", "to_act")

    def __init__(self, layouts=(None, None), shots=(0, 0), to_act=0):
        self.layouts = layouts   # layout id per player, None until placed
        self.shots = shots       # cells each player has fired at
        self.to_act = to_act

    def _destroyed(self, player: int) -> bool:
        fleet = _fleet_mask(LAYOUTS[self.layouts[player]])
        return fleet & ~self.shots[1 - player] == 0

    def current_player(self) -> Optional[int]:
        if self.layouts[0] is None:
            return 0
        if self.layouts[1] is None:
            return 1
        if self._destroyed(0) or self._destroyed(1):
            return None
        return self.to_act

    def legal_actions(self) -> Sequence[int]:
        p = self.current_player()
        if self.layouts[p] is None:
            return range(len(LAYOUTS))
        return [c for c in range(N_CELLS) if not self.shots[p] >> c & 1]

    def apply(self, action: int):
        p = self.current_player()
        if self.layouts[p] is None:
            layouts = list(self.layouts)
            layouts[p] = action
            nxt = BattleshipState(tuple(layouts), self.shots, 0)
            return nxt, (None, "P") if p == 0 else ("P", None)
        target = LAYOUTS[self.layouts[1 - p]]
        result = _shot_result(target, self.shots[p], action)
        shots = list(self.shots)
        shots[p] |= 1 << action
        nxt = BattleshipState(self.layouts, tuple(shots), 1 - p)
        obs = f"{action}{result}"
        if nxt.current_player() is None:
            r = nxt.returns()
            return nxt, (f"{obs}|E{r[0]:g}", f"{obs}|E{r[1]:g}")
        return nxt, (obs, obs)

    def returns(self) -> tuple[float, float]:
        sunk = [0, 0]
        for p in (0, 1):
            for ship in LAYOUTS[self.layouts[1 - p]]:
                if ship & ~self.shots[p] == 0:
                    sunk[p] += bin(ship).count("1")
        v = float(sunk[0] - sunk[1])
        return (v, -v)

    def __eq__(self, other):
        return (isinstance(other, BattleshipState) and self.layouts == other.layouts
                and self.shots == other.shots and self.to_act == other.to_act)

    def __hash__(self):
        return hash((self.layouts, self.shots, self.to_act))


class BattleshipGame(Game):
    name = "battleship"

    def __init__(self, rows: int = 3, cols: int = 3):
        if (rows, cols) != (3, 3):
            raise ValueError("only the 3x3 board with ships [2x1, 1x1] is supported")

    def initial_state(self) -> BattleshipState:
        return BattleshipState()

    def max_game_length(self) -> int:
        return 2 + 2 * N_CELLS

    def resample_consistent(self, key: InfostateKey, rng: random.Random) -> History:
        """Redraw the opponent's fleet uniformly among layouts that reproduce
        every shot result we have observed, then replay the public record."""
        me = key.player
        my_layout = None
        opp_placed = False
        shot_record: list[tuple[int, int, str]] = []  # (shooter, cell, result)
        for action, obs in key.trace:
            if obs == "P":
                opp_placed = True
            elif action is not None and obs is None:
                my_layout = action
            else:
                body = obs.split("|")[0]
                cell, result = int(body[:-1]), body[-1]
                shooter = me if action is not None else 1 - me
                shot_record.append((shooter, cell, result))

        my_shots = [(c, r) for shooter, c, r in shot_record if shooter == me]
        consistent = []
        for lid, layout in enumerate(LAYOUTS):
            fired = 0
            for cell, result in my_shots:
                if _shot_result(layout, fired, cell) != result:
                    break
                fired |= 1 << cell
            else:
                consistent.append(lid)
        opp_layout = rng.choice(consistent) if consistent else None

        actions: list[int] = []
        if me == 0:
            if my_layout is not None:
                actions.append(my_layout)
            if opp_placed:
                actions.append(opp_layout)
        else:
            if opp_placed:
                actions.append(opp_layout)
            if my_layout is not None:
                actions.append(my_layout)
        actions.extend(cell for _, cell, _ in shot_record)

        h = History.root(self)
        for a in actions:
            h = h.child(a)
        return h


def battleship_game(**kwargs) -> BattleshipGame:
    return BattleshipGame(**kwargs)
