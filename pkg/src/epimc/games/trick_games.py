"""Trick-taking card games: the 22-card game and a tiny enumerable variant.

Rules shared by both: the trick leader may play any card; the follower must
follow the led suit if able, otherwise may discard anything but cannot win
the trick.  The highest-ranked card of the led suit wins, the winner leads
the next trick, and whoever takes strictly more tricks wins the game (equal
tricks is a draw).  There is no trump suit.

Deals are the only chance: a public subset of the deck is split into two
private hands plus a hidden pile, all resolved from the game seed.  Both
games support exact belief resampling: the opponent's unseen cards are
redrawn uniformly, subject to the voids they have revealed by discarding.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from ..game import Game, History, InfostateKey, WorldState


@dataclass(frozen=True, slots=True)
class TrickConfig:
    ranks_per_suit: int
    hand_size: int

    def suit(self, card: int) -> int:
        return card // self.ranks_per_suit

    def rank(self, card: int) -> int:
        return card % self.ranks_per_suit


class TrickState(WorldState):
    __slots__ = ("cfg", "hands", "led", "leader", "tricks", "to_act")

    def __init__(self, cfg, hands, led=None, leader=0, tricks=(0, 0), to_act=0):
        self.cfg = cfg
        self.hands = hands          # (frozenset, frozenset) of card ids
        self.led = led              # card currently led, or None between tricks
        self.leader = leader
        self.tricks = tricks
        self.to_act = to_act

    def current_player(self) -> Optional[int]:
        if not self.hands[0] and not self.hands[1] and self.led is None:
            return None
        return self.to_act

    def legal_actions(self) -> Sequence[int]:
        hand = self.hands[self.to_act]
        if self.led is not None:
            led_suit = self.cfg.suit(self.led)
            follow = [c for c in hand if self.cfg.suit(c) == led_suit]
            if follow:
                return sorted(follow)
        return sorted(hand)

    def step(self, action: int) -> "TrickState":
        cfg = self.cfg
        p = self.to_act
        hand = self.hands[p] - {action}
        hands = (hand, self.hands[1]) if p == 0 else (self.hands[0], hand)
        if self.led is None:
            return TrickState(cfg, hands, action, p, self.tricks, 1 - p)
        follower_wins = (cfg.suit(action) == cfg.suit(self.led)
                         and cfg.rank(action) > cfg.rank(self.led))
        winner = p if follower_wins else self.leader
        tricks = ((self.tricks[0] + 1, self.tricks[1]) if winner == 0
                  else (self.tricks[0], self.tricks[1] + 1))
        return TrickState(cfg, hands, None, winner, tricks, winner)

    def apply(self, action: int):
        cfg = self.cfg
        p = self.to_act
        hands = list(self.hands)
        hands[p] = hands[p] - {action}
        if self.led is None:
            nxt = TrickState(cfg, tuple(hands), action, p, self.tricks, 1 - p)
            obs = f"c{action}"
            return nxt, (obs, obs)
        follower_wins = (cfg.suit(action) == cfg.suit(self.led)
                         and cfg.rank(action) > cfg.rank(self.led))
        winner = p if follower_wins else self.leader
        tricks = list(self.tricks)
        tricks[winner] += 1
        nxt = TrickState(cfg, tuple(hands), None, winner, tuple(tricks), winner)
        obs = f"c{action}"
        if nxt.current_player() is None:
            r = nxt.returns()
            return nxt, (f"{obs}|E{r[0]:g}", f"{obs}|E{r[1]:g}")
        return nxt, (obs, obs)

    def returns(self) -> tuple[float, float]:
        t0, t1 = self.tricks
        if t0 > t1:
            return (1.0, -1.0)
        if t1 > t0:
            return (-1.0, 1.0)
        return (0.0, 0.0)

    def __eq__(self, other):
        return (isinstance(other, TrickState) and self.cfg == other.cfg
                and self.hands == other.hands and self.led == other.led
                and self.leader == other.leader and self.tricks == other.tricks
                and self.to_act == other.to_act)

    def __hash__(self):
        return hash((self.hands, self.led, self.leader, self.tricks, self.to_act))

    def __repr__(self):
        h0 = ",".join(map(str, sorted(self.hands[0])))
        h1 = ",".join(map(str, sorted(self.hands[1])))
        return f"Trick([{h0}]v[{h1}],led={self.led},tricks={self.tricks})"


class _TrickGameBase(Game):
    """Deal bookkeeping and belief resampling shared by both card games."""

    cfg: TrickConfig
    public_cards: frozenset[int]

    def _root_from_deal(self, hand0, hand1) -> TrickState:
        return TrickState(self.cfg, (frozenset(hand0), frozenset(hand1)))

    def initial_observations(self, state) -> tuple[str, str]:
        return tuple(
            "h:" + ",".join(map(str, sorted(state.hands[p]))) for p in (0, 1))

    def max_game_length(self) -> int:
        return 2 * self.cfg.hand_size

    def resample_consistent(self, key: InfostateKey, rng: random.Random) -> History:
        """Redeal the cards we cannot see, respecting revealed voids, and
        replay the public play sequence.  Uniform over consistent deals."""
        me = key.player
        opp = 1 - me
        trace = key.trace
        assert trace and trace[0][1] is not None and trace[0][1].startswith("h:")
        my_hand0 = frozenset(int(c) for c in trace[0][1][2:].split(",") if c)

        plays = []
        for action, obs in trace[1:]:
            card = action if action is not None else int(obs.split("|")[0][1:])
            plays.append(card)

        # Walk the public sequence to find who played what and where the
        # opponent exposed a void by discarding off the led suit.
        opp_played: list[int] = []
        void_suits: set[int] = set()
        to_act, leader, led = 0, 0, None
        for card in plays:
            if to_act == opp:
                opp_played.append(card)
                if led is not None and self.cfg.suit(card) != self.cfg.suit(led):
                    void_suits.add(self.cfg.suit(led))
            if led is None:
                led, to_act = card, 1 - to_act
            else:
                follower_wins = (self.cfg.suit(card) == self.cfg.suit(led)
                                 and self.cfg.rank(card) > self.cfg.rank(led))
                winner = to_act if follower_wins else leader
                led, leader, to_act = None, winner, winner

        unseen = self.public_cards - my_hand0 - frozenset(opp_played)
        eligible = sorted(c for c in unseen if self.cfg.suit(c) not in void_suits)
        need = self.cfg.hand_size - len(opp_played)
        opp_now = rng.sample(eligible, need)
        opp_hand0 = frozenset(opp_now) | frozenset(opp_played)

        deal = (my_hand0, opp_hand0) if me == 0 else (opp_hand0, my_hand0)
        h = History.root(self, self._root_from_deal(*deal))
        for card in plays:
            h = h.child(card)
        return h


class CardGame(_TrickGameBase):
    """Two 8-card hands and 6 hidden cards drawn from a public 22-card subset."""

    name = "card"

    def __init__(self, seed: int = 0, deck_size: int = 52, subset_size: int = 22,
                 hand_size: int = 8):
        hidden = subset_size - 2 * hand_size
        if hidden < 0 or subset_size > deck_size:
            raise ValueError("card counts must satisfy 2*hand + hidden = subset <= deck")
        self.cfg = TrickConfig(ranks_per_suit=13, hand_size=hand_size)
        self.seed = seed
        self.deck_size = deck_size
        self.subset_size = subset_size
        rng = random.Random(seed)
        drawn = rng.sample(range(deck_size), subset_size)
        self.public_cards = frozenset(drawn)
        self._hand0 = frozenset(drawn[:hand_size])
        self._hand1 = frozenset(drawn[hand_size:2 * hand_size])

    def initial_state(self) -> TrickState:
        return self._root_from_deal(self._hand0, self._hand1)

    def enumerate_initial_states(self):
        return None  # deals are far too numerous; use resampling instead


class ToyCardGame(_TrickGameBase):
    """Single-suit miniature: 2-card hands from a 6-card deck, 2 hidden, 2 tricks.

    Small enough to enumerate every deal and history, which is what the
    strategy-fusion metric needs.
    """

    name = "toy_card"

    def __init__(self, seed: int = 0, deck_size: int = 6, hand_size: int = 2):
        hidden = deck_size - 2 * hand_size
        if hidden < 0:
            raise ValueError("deck must cover both hands")
        self.cfg = TrickConfig(ranks_per_suit=deck_size, hand_size=hand_size)
        self.seed = seed
        self.deck_size = deck_size
        self.public_cards = frozenset(range(deck_size))

    def initial_state(self) -> TrickState:
        rng = random.Random(self.seed)
        drawn = rng.sample(range(self.deck_size), 2 * self.cfg.hand_size)
        k = self.cfg.hand_size
        return self._root_from_deal(drawn[:k], drawn[k:])

    def enumerate_initial_states(self):
        k = self.cfg.hand_size
        cards = range(self.deck_size)
        roots = []
        for h0 in itertools.combinations(cards, k):
            rest = [c for c in cards if c not in h0]
            for h1 in itertools.combinations(rest, k):
                roots.append(self._root_from_deal(h0, h1))
        return roots


def card_game(seed: int = 0, **kwargs) -> CardGame:
    return CardGame(seed=seed, **kwargs)


def toy_card_game(seed: int = 0, **kwargs) -> ToyCardGame:
    return ToyCardGame(seed=seed, **kwargs)
