"""Randomized cross-checks between the two sandwich routes."""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field

from .axioms import validate_function
from .feasibility import sandwich_greedy, sandwich_lp_oracle
from .generators import random_mesh, random_pair, random_quasi_pair


@dataclass
class CrosscheckConfig:
    seed: int = 0
    sizes: tuple[int, ...] = (4, 5)
    pairs_per_size: int = 100
    quasi_pairs: int = 0  # extra quasi-copula pairs (not necessarily imprecise)
    uniform: bool | None = None  # None mixes uniform and random meshes


@dataclass
class CrosscheckResult:
    config: CrosscheckConfig
    total: int = 0
    agree: int = 0
    feasible: int = 0
    kinds: Counter = field(default_factory=Counter)
    disagreements: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.agree == self.total


def _sound(res, A, B) -> bool:
    if res.feasible:
        C = res.copula
        return A <= C <= B and validate_function(C, cap=0).is_discrete_copula
    return res.witness.holds_for(A, B)


def run_crosscheck(cfg: CrosscheckConfig) -> CrosscheckResult:
    rng = random.Random(cfg.seed)
    out = CrosscheckResult(cfg)
    t = time.perf_counter()

    def one(A, B, kind):
        g, o = sandwich_greedy(A, B), sandwich_lp_oracle(A, B)
        out.total += 1
        out.kinds[kind] += 1
        if g.feasible == o.feasible and _sound(g, A, B) and _sound(o, A, B):
            out.agree += 1
        else:
            out.disagreements.append((A, B, kind))
        out.feasible += g.feasible

    for n in cfg.sizes:
        for _ in range(cfg.pairs_per_size):
            A, B, kind = random_pair(random_mesh(rng, n, n, cfg.uniform), rng)
            one(A, B, kind)
    for _ in range(cfg.quasi_pairs):
        n = rng.choice(cfg.sizes)
        A, B = random_quasi_pair(random_mesh(rng, n, n, cfg.uniform), rng)
        one(A, B, "quasi")
    out.seconds = time.perf_counter() - t
    return out
