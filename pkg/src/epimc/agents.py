"""Shared agent contract and agent construction from command-line specs.

Agents only ever see a DecisionContext: their own infostate key and the
legal actions at it.  World states stay with the referee; belief access
goes through the sampler, which reconstructs worlds from the key alone.

Spec strings name an agent kind with optional comma-separated parameters,
e.g. ``pimc``, ``epimc:depth=3,solver=iss``, ``ismcts:uct_c=1``,
``iimc:level2_samples=5``, ``random``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import partial
from typing import Optional

from . import baselines
from .epimc import epimc_choose
from .evaluators import AlphaBeta, RandomRollout
from .game import Game, InfostateKey
from .pimc import Budget, pimc_choose
from .sampling import BeliefSampler, default_sampler
from .solvers import cfrplus_solve, iss_solve

AGENT_KINDS = ("pimc", "epimc", "ismcts", "iimc", "random")

_INT_PARAMS = {"depth", "level2_samples", "cfr_iterations", "rollouts",
               "max_tries", "node_cap"}
_FLOAT_PARAMS = {"uct_c"}


@dataclass(frozen=True)
class DecisionContext:
    """Everything an agent may legitimately see at its turn."""

    key: InfostateKey
    legal_actions: tuple[int, ...]


@dataclass(frozen=True)
class AgentSpec:
    kind: str
    params: dict = field(default_factory=dict)

    @staticmethod
    def parse(text: str, defaults: Optional[dict] = None) -> "AgentSpec":
        kind, _, rest = text.partition(":")
        if kind not in AGENT_KINDS:
            raise ValueError(f"unknown agent kind {kind!r}")
        params = dict(defaults or {})
        if rest:
            for item in rest.split(","):
                k, _, v = item.partition("=")
                k = k.strip()
                if k in _INT_PARAMS:
                    params[k] = int(v)
                elif k in _FLOAT_PARAMS:
                    params[k] = float(v)
                else:
                    params[k] = v.strip()
        return AgentSpec(kind, params)

    def label(self) -> str:
        if not self.params:
            return self.kind
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.kind}:{inner}"


class Agent:
    """Base agent: subclasses implement _search; one-action turns shortcut."""

    def __init__(self, name: str, rng: random.Random):
        self.name = name
        self.rng = rng

    def choose(self, ctx: DecisionContext) -> int:
        if len(ctx.legal_actions) == 1:
            return ctx.legal_actions[0]
        return self._search(ctx)

    def _search(self, ctx: DecisionContext) -> int:
        raise NotImplementedError


class RandomAgent(Agent):
    def _search(self, ctx):
        return baselines.random_choose(ctx.legal_actions, self.rng)


class PimcAgent(Agent):
    def __init__(self, name, rng, sampler, evaluator, budget):
        super().__init__(name, rng)
        self.sampler = sampler
        self.evaluator = evaluator
        self.budget = budget

    def _search(self, ctx):
        return pimc_choose(ctx.key, self.budget, self.sampler, self.evaluator,
                           self.rng)


class EpimcAgent(Agent):
    def __init__(self, name, rng, sampler, evaluator, budget, depth, solver,
                 explore):
        super().__init__(name, rng)
        self.sampler = sampler
        self.evaluator = evaluator
        self.budget = budget
        self.depth = depth
        self.solver = solver
        self.explore = explore

    def _search(self, ctx):
        return epimc_choose(self.depth, ctx.key, self.budget, self.sampler,
                            self.evaluator, self.solver, self.rng, self.explore)


class IsmctsAgent(Agent):
    def __init__(self, name, rng, sampler, budget, uct_c):
        super().__init__(name, rng)
        self.sampler = sampler
        self.budget = budget
        self.uct_c = uct_c

    def _search(self, ctx):
        return baselines.ismcts_choose(ctx.key, self.budget, self.sampler,
                                       self.rng, self.uct_c)


class IimcAgent(Agent):
    def __init__(self, name, rng, sampler, evaluator, budget, level2_samples):
        super().__init__(name, rng)
        self.sampler = sampler
        self.evaluator = evaluator
        self.budget = budget
        self.level2_samples = level2_samples

    def _search(self, ctx):
        return baselines.iimc_choose(ctx.key, self.budget, self.sampler,
                                     self.evaluator, self.level2_samples,
                                     self.rng)


def _make_evaluator(params: dict):
    kind = params.get("evaluator", "rollout")
    if kind == "rollout":
        return RandomRollout(n_rollouts=params.get("rollouts", 1))
    if kind == "alphabeta":
        return AlphaBeta(use_tt=True)
    raise ValueError(f"unknown evaluator {kind!r}")


def build_agent(spec: AgentSpec, game: Game, player: int, budget: Budget,
                seed: int) -> Agent:
    """Instantiate one seat's agent with its own rng and belief sampler."""
    rng = random.Random(seed)
    name = spec.label()
    p = spec.params
    if spec.kind == "random":
        return RandomAgent(name, rng)
    sampler = default_sampler(game, player)
    if spec.kind == "pimc":
        return PimcAgent(name, rng, sampler, _make_evaluator(p), budget)
    if spec.kind == "epimc":
        solver_name = p.get("solver", "iss")
        if solver_name == "iss":
            solver = iss_solve
        elif solver_name == "cfrplus":
            solver = partial(cfrplus_solve,
                             iterations=p.get("cfr_iterations", 1000))
        else:
            raise ValueError(f"unknown subgame solver {solver_name!r}")
        return EpimcAgent(name, rng, sampler, _make_evaluator(p), budget,
                          depth=p.get("depth", 3), solver=solver,
                          explore=p.get("explore", "one"))
    if spec.kind == "ismcts":
        return IsmctsAgent(name, rng, sampler, budget, uct_c=p.get("uct_c", 1.0))
    if spec.kind == "iimc":
        return IimcAgent(name, rng, sampler, _make_evaluator(p), budget,
                         level2_samples=p.get("level2_samples", 5))
    raise ValueError(f"unknown agent kind {spec.kind!r}")
