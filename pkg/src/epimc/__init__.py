"""Determinized search for imperfect-information games.

PIMC evaluates each root action across sampled worlds with a perfect
information leaf evaluator; EPIMC postpones that evaluator behind a depth-d
subgame solved on infostates, which removes strategy fusion inside the
subgame.  The package also ships the benchmark games, belief samplers,
IS-MCTS/IIMC/random baselines, a strategy-fusion metric, and a tournament
harness.
"""

from .agents import AgentSpec, DecisionContext, build_agent
from .epimc import EmptySubgameError, SubgameNode, SubgameTree, build_subgame, epimc_choose, query
from .evaluators import AlphaBeta, EvaluatorBudgetError, RandomRollout
from .game import (NOOP, Game, History, InfostateKey, WorldState, infostate_of,
                   legal_actions, replay)
from .pimc import Budget, iterations, pimc_choose, pimc_scores
from .sampling import (BeliefSampler, EnumerationCapError, SamplerError,
                       default_sampler, enumerate_consistent)
from .solvers import (SolverError, best_response_value, cfrplus_solve,
                      expected_value, exploitability, iss_policy, iss_solve)

__version__ = "0.1.0"

__all__ = [
    "AgentSpec", "AlphaBeta", "BeliefSampler", "Budget", "DecisionContext",
    "EmptySubgameError", "EnumerationCapError", "EvaluatorBudgetError", "Game",
    "History", "InfostateKey", "NOOP", "RandomRollout", "SamplerError",
    "SolverError", "SubgameNode", "SubgameTree", "WorldState", "best_response_value",
    "build_agent", "build_subgame", "cfrplus_solve", "default_sampler",
    "enumerate_consistent", "epimc_choose", "expected_value", "exploitability",
    "infostate_of", "iss_policy", "iss_solve", "iterations", "legal_actions",
    "pimc_choose", "pimc_scores", "query", "replay",
]
