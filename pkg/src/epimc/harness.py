"""Seat-alternated match runner with seeded reproducibility.

Games are played in pairs: both games of a pair share one deal seed and one
rng per seat, with the two agents swapping seats. Identical agents therefore
mirror each other exactly and score 50% by construction, and re-running a
config with iteration budgets reproduces every record byte for byte.

The referee owns the world state; agents only ever receive their own
infostate key and legal actions.  Records go to newline-delimited JSON, one
game per line, and summaries append to a CSV keyed by (game, agents, budget).
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Optional

from .agents import AgentSpec, DecisionContext, build_agent
from .game import History
from .games import make_game
from .pimc import Budget

SUMMARY_FIELDS = ["game", "agent_a", "agent_b", "budget_a", "budget_b",
                  "num_games", "wins", "draws", "losses", "win_rate",
                  "ci_low", "ci_high", "master_seed", "reproducible"]


def derive_seed(master: int, *path) -> int:
    """Stable per-purpose seed stream split from the master seed."""
    text = ":".join([str(master), *map(str, path)])
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


@dataclass(frozen=True)
class MatchConfig:
    game_name: str
    agent_a: AgentSpec
    agent_b: AgentSpec
    num_games: int
    budget_a: Budget
    budget_b: Budget
    master_seed: int = 0
    game_params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.num_games % 2 != 0:
            raise ValueError("num_games must be even for an exact seat split")


@dataclass
class MatchRecord:
    game_index: int
    seed: int
    seat_of_a: int
    seats: tuple[str, str]
    moves: list[tuple[int, int, float]]  # (player, action, elapsed ms)
    returns: tuple[float, float]
    a_return: float

    def to_json(self) -> str:
        return json.dumps({
            "game_index": self.game_index,
            "seed": self.seed,
            "seat_of_a": self.seat_of_a,
            "seats": list(self.seats),
            "moves": [[p, a, round(ms, 3)] for p, a, ms in self.moves],
            "returns": list(self.returns),
            "a_return": self.a_return,
        })

    @staticmethod
    def from_json(line: str) -> "MatchRecord":
        d = json.loads(line)
        return MatchRecord(
            game_index=d["game_index"], seed=d["seed"], seat_of_a=d["seat_of_a"],
            seats=tuple(d["seats"]),
            moves=[(p, a, ms) for p, a, ms in d["moves"]],
            returns=tuple(d["returns"]), a_return=d["a_return"])


@dataclass
class ResultSummary:
    game: str
    agent_a: str
    agent_b: str
    budget_a: str
    budget_b: str
    num_games: int
    wins: int
    draws: int
    losses: int
    win_rate: float      # percent; draws count half
    ci_low: float        # 95% normal-approximation bounds, clamped to [0, 100]
    ci_high: float
    master_seed: int
    reproducible: bool   # False for wall-clock budgets

    def row(self) -> dict:
        return {k: getattr(self, k) for k in SUMMARY_FIELDS}


def _budget_label(b: Budget) -> str:
    return f"{'iters' if b.kind == 'iterations' else 'ms'}:{b.amount}"


def play_game(cfg: MatchConfig, game_index: int) -> MatchRecord:
    """Play one seat-assigned game under the config's derived seed streams."""
    pair, seat_of_a = divmod(game_index, 2)
    seed = derive_seed(cfg.master_seed, "deal", pair)
    game = make_game(cfg.game_name, **{**cfg.game_params, "seed": seed})

    specs = [None, None]
    budgets = [None, None]
    specs[seat_of_a], budgets[seat_of_a] = cfg.agent_a, cfg.budget_a
    specs[1 - seat_of_a], budgets[1 - seat_of_a] = cfg.agent_b, cfg.budget_b
    agents = [
        build_agent(specs[s], game, s, budgets[s],
                    derive_seed(cfg.master_seed, "agent", pair, s))
        for s in (0, 1)
    ]

    h = History.root(game)
    moves: list[tuple[int, int, float]] = []
    horizon = game.max_game_length()
    while h.state.current_player() is not None:
        if len(moves) > horizon:
            raise RuntimeError(f"{game.name}: game exceeded horizon {horizon}")
        p = h.state.current_player()
        ctx = DecisionContext(h.infostate_key(p), tuple(h.state.legal_actions()))
        t0 = time.perf_counter()
        action = agents[p].choose(ctx)
        # Elapsed budget per move: the iteration allowance is itself the
        # deterministic record for iteration budgets (records must be
        # byte-reproducible); wall-clock budgets record measured ms.
        if budgets[p].kind == "iterations":
            elapsed = float(budgets[p].amount)
        else:
            elapsed = (time.perf_counter() - t0) * 1000.0
        moves.append((p, action, elapsed))
        h = h.child(action)
    returns = h.state.returns()
    return MatchRecord(game_index=game_index, seed=seed, seat_of_a=seat_of_a,
                       seats=(specs[0].label(), specs[1].label()),
                       moves=moves, returns=returns,
                       a_return=returns[seat_of_a])


def summarize(cfg: MatchConfig, records: list[MatchRecord]) -> ResultSummary:
    wins = sum(1 for r in records if r.a_return > 0)
    losses = sum(1 for r in records if r.a_return < 0)
    draws = len(records) - wins - losses
    n = len(records)
    p = (wins + 0.5 * draws) / n if n else 0.0
    half = 1.96 * math.sqrt(p * (1 - p) / n) if n else 0.0
    return ResultSummary(
        game=cfg.game_name, agent_a=cfg.agent_a.label(), agent_b=cfg.agent_b.label(),
        budget_a=_budget_label(cfg.budget_a), budget_b=_budget_label(cfg.budget_b),
        num_games=n, wins=wins, draws=draws, losses=losses,
        win_rate=round(100 * p, 3),
        ci_low=round(max(0.0, 100 * (p - half)), 3),
        ci_high=round(min(100.0, 100 * (p + half)), 3),
        master_seed=cfg.master_seed,
        reproducible=(cfg.budget_a.kind == "iterations"
                      and cfg.budget_b.kind == "iterations"))


def _worker(args) -> MatchRecord:
    cfg, i = args
    return play_game(cfg, i)


def run_match(cfg: MatchConfig, workers: int = 1,
              progress=None) -> tuple[list[MatchRecord], ResultSummary]:
    """Play every game of the match; per-game seeds are index-derived, so
    worker parallelism cannot change any outcome."""
    indices = range(cfg.num_games)
    if workers > 1:
        with Pool(workers) as pool:
            records = []
            for rec in pool.imap(_worker, [(cfg, i) for i in indices]):
                records.append(rec)
                if progress:
                    progress(rec)
    else:
        records = []
        for i in indices:
            records.append(play_game(cfg, i))
            if progress:
                progress(records[-1])
    records.sort(key=lambda r: r.game_index)
    return records, summarize(cfg, records)


def emit_results(records: list[MatchRecord], summary: ResultSummary,
                 out_dir: str) -> tuple[str, str]:
    """Write one JSON record per line plus an appended CSV summary row."""
    os.makedirs(out_dir, exist_ok=True)
    records_path = os.path.join(out_dir, "records.jsonl")
    with open(records_path, "w") as f:
        for r in records:
            f.write(r.to_json() + "\n")
    summary_path = os.path.join(out_dir, "summary.csv")
    new_file = not os.path.exists(summary_path)
    with open(summary_path, "a", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=SUMMARY_FIELDS)
        if new_file:
            writer.writeheader()
        writer.writerow(summary.row())
    return records_path, summary_path


def read_records(path: str) -> list[MatchRecord]:
    with open(path) as f:
        return [MatchRecord.from_json(line) for line in f if line.strip()]


def summary_from_records(cfg: MatchConfig, path: str) -> ResultSummary:
    """Independent recomputation of the summary from emitted records."""
    return summarize(cfg, read_records(path))
