"""Game registry and plain-text configuration parsing.

A game config is either a registered name ("phantom_ttt") or a key=value
text file:

    game=dark_hex
    size=3
    seed=11

Recognized keys: game, size (dark_hex), seed (card/toy_card deals), and the
card-game counts deck_size/subset_size/hand_size.
"""

from __future__ import annotations

import os

from .battleship import BattleshipGame, battleship_game
from .dark_hex import DarkHexGame, dark_hex_game
from .phantom_ttt import PhantomTttGame, phantom_ttt_game
from .rps import RpsVariantGame, rps_variant_game
from .trick_games import CardGame, ToyCardGame, card_game, toy_card_game

__all__ = [
    "BattleshipGame", "CardGame", "DarkHexGame", "PhantomTttGame",
    "RpsVariantGame", "ToyCardGame", "battleship_game", "card_game",
    "dark_hex_game", "make_game", "parse_game_config", "phantom_ttt_game",
    "rps_variant_game", "toy_card_game",
]

_INT_KEYS = {"size", "seed", "deck_size", "subset_size", "hand_size", "rows", "cols"}


def make_game(name: str, **params):
    if name == "rps":
        return rps_variant_game()
    if name == "phantom_ttt":
        return phantom_ttt_game()
    if name == "dark_hex":
        return dark_hex_game(params.get("size", 3))
    if name == "battleship":
        return battleship_game(rows=params.get("rows", 3), cols=params.get("cols", 3))
    if name == "card":
        return card_game(seed=params.get("seed", 0),
                         deck_size=params.get("deck_size", 52),
                         subset_size=params.get("subset_size", 22),
                         hand_size=params.get("hand_size", 8))
    if name == "toy_card":
        return toy_card_game(seed=params.get("seed", 0),
                             deck_size=params.get("deck_size", 6),
                             hand_size=params.get("hand_size", 2))
    raise ValueError(f"unknown game {name!r}")


def parse_game_config(spec: str) -> tuple[str, dict]:
    """Parse a game name or a key=value config file into (name, params)."""
    params: dict = {}
    if os.path.exists(spec):
        with open(spec) as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                k, _, v = line.partition("=")
                k, v = k.strip(), v.strip()
                params[k] = int(v) if k in _INT_KEYS else v
        name = params.pop("game", None)
        if name is None:
            raise ValueError(f"config file {spec} has no game= entry")
        return name, params
    return spec, params
