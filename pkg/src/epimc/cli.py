"""Command line front end.

    epimc run --game phantom_ttt --agent-a epimc:depth=3 --agent-b pimc \\
              --games 300 --budget iters:1000 --seed 7 --out results/

    epimc fusion --game rps --depths 1,2

``run`` plays a seat-alternated match and writes records.jsonl plus an
appended summary.csv row under --out.  ``fusion`` measures the strategy
fusion of depth-limited policies on an enumerable game and checks that it
shrinks with depth and vanishes at the horizon.
"""

from __future__ import annotations

import argparse
import sys

from .agents import AgentSpec
from .fusion import verify_propositions
from .games import make_game, parse_game_config
from .harness import MatchConfig, emit_results, run_match
from .pimc import Budget


def _add_agent_passthrough(p: argparse.ArgumentParser) -> None:
    p.add_argument("--depth", type=int, help="subgame depth for epimc agents")
    p.add_argument("--solver", choices=["iss", "cfrplus"],
                   help="subgame solver for epimc agents")
    p.add_argument("--explore", choices=["one", "all"],
                   help="actions expanded per query step for epimc agents")
    p.add_argument("--uct-c", type=float, dest="uct_c",
                   help="exploration constant for ismcts agents")
    p.add_argument("--level2-samples", type=int, dest="level2_samples",
                   help="inner determinizations per decision for iimc agents")
    p.add_argument("--cfr-iterations", type=int, dest="cfr_iterations",
                   help="iterations for the cfrplus subgame solver")
    p.add_argument("--rollouts", type=int,
                   help="rollouts per leaf evaluation (default 1)")
    p.add_argument("--evaluator", choices=["rollout", "alphabeta"],
                   help="perfect information leaf evaluator")


def _agent_defaults(args) -> dict:
    keys = ("depth", "solver", "explore", "uct_c", "level2_samples",
            "cfr_iterations", "rollouts", "evaluator")
    return {k: v for k in keys if (v := getattr(args, k, None)) is not None}


def cmd_run(args) -> int:
    name, params = parse_game_config(args.game)
    defaults = _agent_defaults(args)
    budget = Budget.parse(args.budget)
    cfg = MatchConfig(
        game_name=name,
        agent_a=AgentSpec.parse(args.agent_a, defaults),
        agent_b=AgentSpec.parse(args.agent_b, defaults),
        num_games=args.games,
        budget_a=Budget.parse(args.budget_a) if args.budget_a else budget,
        budget_b=Budget.parse(args.budget_b) if args.budget_b else budget,
        master_seed=args.seed,
        game_params=params,
    )

    done = [0]

    def progress(_rec):
        done[0] += 1
        if not args.quiet and (done[0] % 10 == 0 or done[0] == cfg.num_games):
            print(f"  {done[0]}/{cfg.num_games} games", file=sys.stderr)

    records, summary = run_match(cfg, workers=args.workers, progress=progress)
    records_path, summary_path = emit_results(records, summary, args.out)
    print(f"{summary.agent_a} vs {summary.agent_b} on {summary.game}: "
          f"{summary.wins}W {summary.draws}D {summary.losses}L  "
          f"win rate {summary.win_rate:.1f}% "
          f"[{summary.ci_low:.1f}, {summary.ci_high:.1f}]")
    print(f"records: {records_path}\nsummary: {summary_path}")
    return 0


def cmd_fusion(args) -> int:
    name, params = parse_game_config(args.game)
    game = make_game(name, **params)
    depths = [int(d) for d in args.depths.split(",")]
    report = verify_propositions(game, depths, cap=args.cap,
                                 tolerance=args.tolerance)
    print(f"game={report.game} horizon={report.horizon}")
    for d in sorted(report.sf_by_depth):
        print(f"depth={d} SF={report.sf_by_depth[d]}")
    print(f"monotone_non_increasing={'PASS' if report.monotone else 'FAIL'}")
    print(f"strict_reduction_while_positive="
          f"{'PASS' if report.strictly_reduced else 'FAIL'}")
    if report.vanishes_at_horizon is None:
        print("vanishes_at_horizon=NOT TESTED (horizon depth not in --depths)")
    else:
        print(f"vanishes_at_horizon="
              f"{'PASS' if report.vanishes_at_horizon else 'FAIL'}")
    return 0 if report.all_hold() else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="epimc",
        description="Determinized search agents and benchmark harness for "
                    "imperfect-information games.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="play a seat-alternated match")
    run_p.add_argument("--game", required=True,
                       help="game name or key=value config file")
    run_p.add_argument("--agent-a", required=True, help="agent spec, e.g. epimc:depth=3")
    run_p.add_argument("--agent-b", required=True, help="agent spec, e.g. pimc")
    run_p.add_argument("--games", type=int, required=True, help="even game count")
    run_p.add_argument("--budget", required=True, help="iters:K or ms:K per move")
    run_p.add_argument("--budget-a", help="override agent A's budget")
    run_p.add_argument("--budget-b", help="override agent B's budget")
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--out", required=True, help="output directory")
    run_p.add_argument("--workers", type=int, default=1)
    run_p.add_argument("--quiet", action="store_true")
    _add_agent_passthrough(run_p)
    run_p.set_defaults(func=cmd_run)

    fus_p = sub.add_parser("fusion", help="strategy-fusion report for a game")
    fus_p.add_argument("--game", required=True)
    fus_p.add_argument("--depths", required=True, help="comma list, e.g. 1,2,3,4")
    fus_p.add_argument("--cap", type=int, default=1_000_000)
    fus_p.add_argument("--tolerance", type=float, default=1e-9)
    fus_p.set_defaults(func=cmd_fusion)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
