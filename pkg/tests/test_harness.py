"""Tournament harness: seat symmetry, reproducibility, records, referee."""

import json
import os
import random

import pytest

from epimc.agents import Agent, AgentSpec, DecisionContext
from epimc.game import History, WorldState
from epimc.harness import (MatchConfig, MatchRecord, derive_seed, emit_results,
                           play_game, read_records, run_match, summarize,
                           summary_from_records)
from epimc.pimc import Budget

from toygames import CanaryGame

ITER4 = Budget("iterations", 4)


def small_cfg(agent_a="random", agent_b="random", game="phantom_ttt", n=20,
              seed=3, **params):
    return MatchConfig(game_name=game, agent_a=AgentSpec.parse(agent_a),
                       agent_b=AgentSpec.parse(agent_b), num_games=n,
                       budget_a=ITER4, budget_b=ITER4, master_seed=seed,
                       game_params=params)


def test_odd_game_count_rejected():
    with pytest.raises(ValueError):
        small_cfg(n=7)


def test_self_play_mirrors_to_exactly_fifty_percent():
    for agents in (("random", "random"), ("pimc", "pimc")):
        cfg = small_cfg(*agents, n=10)
        _, summary = run_match(cfg)
        assert summary.win_rate == 50.0
        assert summary.wins == summary.losses


def test_random_self_play_large_sample_near_fifty():
    cfg = small_cfg(n=1000, seed=8)
    records, summary = run_match(cfg)
    assert 45.0 <= summary.win_rate <= 55.0
    assert summary.wins + summary.draws + summary.losses == 1000


def test_seat_alternation_and_shared_pair_seeds():
    cfg = small_cfg(n=6)
    records, _ = run_match(cfg)
    assert [r.seat_of_a for r in records] == [0, 1, 0, 1, 0, 1]
    assert records[0].seed == records[1].seed
    assert records[0].seed != records[2].seed


def test_reproducible_byte_identical_outputs(tmp_path):
    outs = []
    for run in (1, 2):
        cfg = small_cfg(n=12, seed=77)
        records, summary = run_match(cfg)
        path, _ = emit_results(records, summary, str(tmp_path / f"r{run}"))
        outs.append(open(path, "rb").read())
    assert outs[0] == outs[1]


def test_round_trip_and_independent_summary(tmp_path):
    cfg = small_cfg(n=30, seed=5)
    records, summary = run_match(cfg)
    rec_path, sum_path = emit_results(records, summary, str(tmp_path / "out"))
    back = read_records(rec_path)
    assert len(back) == 30
    assert [r.to_json() for r in back] == [r.to_json() for r in records]
    again = summary_from_records(cfg, rec_path)
    assert again == summary
    # summary row appended with a header
    lines = open(sum_path).read().strip().splitlines()
    assert len(lines) == 2 and lines[0].startswith("game,")


def test_two_budget_runs_share_summary_file(tmp_path):
    out = str(tmp_path / "multi")
    for iters in (4, 8):
        cfg = MatchConfig(game_name="phantom_ttt",
                          agent_a=AgentSpec.parse("random"),
                          agent_b=AgentSpec.parse("random"), num_games=4,
                          budget_a=Budget("iterations", iters),
                          budget_b=Budget("iterations", iters), master_seed=1)
        records, summary = run_match(cfg)
        emit_results(records, summary, out)
    rows = open(os.path.join(out, "summary.csv")).read().strip().splitlines()
    assert len(rows) == 3
    assert rows[1].split(",")[0] == rows[2].split(",")[0] == "phantom_ttt"


def test_parallel_workers_reproduce_serial_results():
    cfg = small_cfg(n=16, seed=13)
    serial, s1 = run_match(cfg, workers=1)
    parallel, s2 = run_match(cfg, workers=2)
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
    assert s1 == s2


def test_ci_bounds_clamped_and_consistent():
    cfg = small_cfg(n=4, seed=2)
    records, summary = run_match(cfg)
    assert 0.0 <= summary.ci_low <= summary.win_rate <= summary.ci_high <= 100.0


class SnoopingAgent(Agent):
    """Asserts the referee hands over nothing but key and legal actions."""

    seen_keys: list = []

    def __init__(self):
        super().__init__("snoop", random.Random(0))

    def choose(self, ctx):
        assert set(ctx.__dataclass_fields__) == {"key", "legal_actions"}
        assert not isinstance(getattr(ctx, "key"), WorldState)
        SnoopingAgent.seen_keys.append(ctx.key)
        return ctx.legal_actions[0]


def test_referee_never_leaks_hidden_state():
    # Identical decision contexts for worlds differing only in the hidden
    # payload: an agent cannot behave differently, so nothing leaked.
    SnoopingAgent.seen_keys = []
    for hidden_seed in (0, 1):
        game = CanaryGame(seed=hidden_seed)
        h = History.root(game)
        agent = SnoopingAgent()
        p = h.state.current_player()
        agent.choose(DecisionContext(h.infostate_key(p),
                                     tuple(h.state.legal_actions())))
    k0, k1 = SnoopingAgent.seen_keys
    assert k0 == k1


def test_canary_game_hides_its_bit_from_samplers_too():
    game = CanaryGame(seed=0)
    h = History.root(game)
    keys = {History.root(CanaryGame(seed=s)).infostate_key(0) for s in range(4)}
    assert len(keys) == 1
    assert h.infostate_key(0).trace == ()


def test_derive_seed_stable_and_distinct():
    assert derive_seed(5, "deal", 0) == derive_seed(5, "deal", 0)
    assert derive_seed(5, "deal", 0) != derive_seed(5, "deal", 1)
    assert derive_seed(5, "deal", 0) != derive_seed(6, "deal", 0)


def test_play_game_records_moves_and_returns():
    cfg = small_cfg(n=2, game="toy_card", seed=9)
    rec = play_game(cfg, 0)
    assert rec.returns[0] == -rec.returns[1]
    assert all(ms >= 0 for _, _, ms in rec.moves)
    assert rec.a_return == rec.returns[0]
    parsed = MatchRecord.from_json(rec.to_json())
    assert parsed.to_json() == rec.to_json()


def test_wallclock_budget_runs_and_flags_nonreproducible():
    cfg = MatchConfig(game_name="rps", agent_a=AgentSpec.parse("pimc"),
                      agent_b=AgentSpec.parse("random"), num_games=2,
                      budget_a=Budget("ms", 30), budget_b=Budget("ms", 30),
                      master_seed=4)
    records, summary = run_match(cfg)
    assert summary.reproducible is False
    assert len(records) == 2
    for rec in records:
        assert all(ms >= 0 for _, _, ms in rec.moves)
