"""Metrics and experiment harness.

Spearman rank correlation scores model-vs-human relatedness judgments;
relatedness itself is read off the full spread-then-game pipeline. The
experiment runners measure load balance, budget utilization, and
cycles-to-equilibrium for the game model against the baselines.
"""

from __future__ import annotations

import math
import random
from collections.abc import Mapping
from dataclasses import dataclass

from .baselines import CobwebParams, run_cobweb, run_traditional
from .errors import ValidationError
from .game import GameOutcome, GameParams, rescale_to_budget, run_game
from .generate import complete_network, generate_network
from .network import PairJudgment, SemanticNetwork, total_weight_sum
from .spreading import ActivationState, SpreadParams, run_spread

__all__ = [
    "EvalReport",
    "spearman",
    "average_ranks",
    "has_ties",
    "run_pipeline",
    "relatedness",
    "evaluate_pairs",
    "load_balance",
    "utilization",
    "cycles_to_equilibrium",
    "COBWEB_GRID",
    "load_balance_experiment",
    "utilization_experiment",
]


@dataclass(frozen=True)
class EvalReport:
    """Relatedness evaluation result: rho plus the per-pair score table."""

    rho: float
    pairs: tuple[tuple[str, str, float, float], ...]
    n_pairs: int
    tie_warning: bool

    def __post_init__(self) -> None:
        if not -1.0 <= self.rho <= 1.0:
            raise ValidationError(f"rho {self.rho} outside [-1, 1]")
        if self.n_pairs != len(self.pairs) or self.n_pairs < 2:
            raise ValidationError("report needs at least 2 pairs and a matching count")


def average_ranks(values: list[float]) -> list[float]:
    """1-based ranks; tied values share the average of their positions."""
    n = len(values)
    order = sorted(range(n), key=lambda i: values[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and values[order[j + 1]] == values[order[i]]:
            j += 1
        avg = (i + j + 2) / 2.0
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def has_ties(values: list[float]) -> bool:
    return len(set(values)) < len(values)


def _pearson(xs: list[float], ys: list[float]) -> float:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0.0 or vy == 0.0:
        raise ValidationError("zero rank variance: correlation undefined")
    return cov / math.sqrt(vx * vy)


def spearman(xs: list[float], ys: list[float]) -> float:
    """Rank correlation of two equally long samples.

    Tie-free samples use the squared-rank-difference form, which is
    exact (monotone agreement gives +1.0, reversal gives -1.0). Samples
    with ties fall back to the Pearson correlation of the average-rank
    vectors.
    """
    if len(xs) != len(ys):
        raise ValidationError(f"length mismatch: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise ValidationError("need at least 2 observations")
    rx = average_ranks(list(xs))
    ry = average_ranks(list(ys))
    if has_ties(list(xs)) or has_ties(list(ys)):
        rho = _pearson(rx, ry)
    else:
        d_sq = sum((a - b) ** 2 for a, b in zip(rx, ry))
        rho = 1.0 - 6.0 * d_sq / (n * (n * n - 1))
    return min(1.0, max(-1.0, rho))


def run_pipeline(
    net: SemanticNetwork,
    sources: Mapping[int, float],
    sp: SpreadParams,
    gp: GameParams,
) -> GameOutcome:
    """Spread from the sources, rescale to the game budget, then play the game."""
    spread_final = run_spread(net, sources, sp)
    return run_game(net, rescale_to_budget(spread_final, gp.budget), gp)


def relatedness(
    net: SemanticNetwork,
    a: int,
    b: int,
    sp: SpreadParams,
    gp: GameParams | None,
) -> float:
    """Model relatedness of two concepts, in [0, 1].

    Seeds one concept with the whole budget, runs the pipeline, and
    reads the other concept's final energy relative to the maximum;
    the two directions are averaged, so the score is symmetric. Pass
    gp=None to score from spreading alone (no game phase).
    """
    for nid in (a, b):
        if not net.has_node(nid):
            raise ValidationError(f"unknown node id {nid}")
    if total_weight_sum(net) <= 0:
        raise ValidationError("relatedness undefined on an edgeless network")

    def one_direction(src: int, dst: int) -> float:
        sources = {src: sp.budget}
        if gp is None:
            final = run_spread(net, sources, sp)
        else:
            final = run_pipeline(net, sources, sp, gp).final
        peak = max(final.held.values())
        if peak <= 0.0:
            return 0.0
        return final.held[dst] / peak

    return (one_direction(a, b) + one_direction(b, a)) / 2.0


def evaluate_pairs(
    net: SemanticNetwork,
    pairs: list[PairJudgment],
    sp: SpreadParams,
    gp: GameParams | None,
) -> EvalReport:
    """Score every pair with the model and rank-correlate against humans."""
    if len(pairs) < 2:
        raise ValidationError("need at least 2 pairs to correlate")
    table = []
    for p in pairs:
        ia = net.id_by_label(p.label_a)
        ib = net.id_by_label(p.label_b)
        model = relatedness(net, ia, ib, sp, gp)
        table.append((p.label_a, p.label_b, p.human_score, model))
    humans = [row[2] for row in table]
    models = [row[3] for row in table]
    rho = spearman(humans, models)
    return EvalReport(
        rho=rho,
        pairs=tuple(table),
        n_pairs=len(table),
        tie_warning=has_ties(humans) or has_ties(models),
    )


def load_balance(state: ActivationState) -> float:
    """Population standard deviation of held energies (0 iff uniform)."""
    values = [state.held[nid] for nid in sorted(state.held)]
    if len(values) < 2:
        raise ValidationError("load balance needs at least 2 nodes")
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / len(values))


def utilization(
    allocations: Mapping[int, float], demands: Mapping[int, float], budget: float
) -> float:
    """Fraction of the budget that lands within demand: sum(min(a_i, d_i)) / budget."""
    if budget <= 0:
        raise ValidationError(f"budget {budget} must be positive")
    if set(allocations) != set(demands):
        raise ValidationError("allocations and demands keyed over different nodes")
    useful = sum(min(allocations[k], demands[k]) for k in sorted(allocations))
    return min(1.0, max(0.0, useful / budget))


def cycles_to_equilibrium(result) -> int:
    """Recorded rounds (game) or iterations (cobweb) to reach equilibrium.

    Non-converged runs report the round cap; check the result's
    `converged` flag to tell saturation from genuine convergence.
    """
    for attr in ("rounds", "iters"):
        count = getattr(result, attr, None)
        if count is not None:
            return count
    raise ValidationError(f"no cycle count on {type(result).__name__}")


# Adjustment-rate / slope grid for the cobweb comparison experiments;
# combos with r * 2s >= 1 oscillate without settling.
COBWEB_GRID: tuple[tuple[float, float], ...] = tuple(
    (r, s) for r in (0.2, 0.5, 0.9) for s in (0.5, 1.0, 2.0)
)


def _default_params(budget: float, delta: float = 0.2) -> tuple[SpreadParams, GameParams]:
    sp = SpreadParams(delta=delta, fire_threshold=1e-6 * budget, max_steps=20, budget=budget)
    gp = GameParams(epsilon=1e-3 * budget, max_rounds=100, delta=delta, budget=budget)
    return sp, gp


def load_balance_experiment(
    seeds: int,
    n: int = 30,
    edge_prob: float = 0.15,
    budget: float = 100.0,
    delta: float = 0.2,
    base_seed: int = 0,
) -> list[dict]:
    """Final-state dispersion of the game model vs. spreading alone.

    One random connected network per seed, a single full-budget source;
    rows carry the population std-dev of both models' final states.
    """
    sp, gp = _default_params(budget, delta)
    rows = []
    for k in range(seeds):
        seed = base_seed + k
        net = generate_network(n, edge_prob, seed)
        source = random.Random(seed).randrange(n)
        sources = {source: budget}
        traditional = run_traditional(net, sources, sp)
        outcome = run_pipeline(net, sources, sp, gp)
        rows.append(
            {
                "seed": seed,
                "snm_stddev": load_balance(outcome.final),
                "traditional_stddev": load_balance(traditional),
                "snm_rounds": outcome.rounds,
                "snm_converged": outcome.converged,
            }
        )
    return rows


def utilization_experiment(
    seeds: int,
    budget: float = 100.0,
    n_nodes: int = 6,
    demand: float = 20.0,
    delta: float = 0.2,
    base_seed: int = 0,
    met_tol: float = 1e-6,
) -> list[dict]:
    """Budget utilization and cycle counts: game model vs. cobweb grid.

    The scenario is a symmetric network of n_nodes concepts, each
    demanding the same energy; seeds vary the initial distribution.
    Both models start from the identical initial values. Cobweb runs
    once per (r, slope) grid combo; a demand counts as met when the
    allocation reaches it within met_tol.
    """
    net = complete_network(n_nodes, 1.0)
    demands = {i: demand for i in range(n_nodes)}
    sp, gp = _default_params(budget, delta)
    rows = []
    for k in range(seeds):
        seed = base_seed + k
        rng = random.Random(seed)
        raw = [rng.random() + 1e-9 for _ in range(n_nodes)]
        scale = budget / sum(raw)
        initial = {i: raw[i] * scale for i in range(n_nodes)}

        outcome = run_pipeline(net, initial, sp, gp)
        held = {i: outcome.final.held[i] for i in range(n_nodes)}
        row = {
            "seed": seed,
            "snm_util": utilization(held, demands, budget),
            "snm_rounds": cycles_to_equilibrium(outcome),
            "snm_converged": outcome.converged,
            "snm_all_met": all(held[i] >= demand - met_tol for i in range(n_nodes)),
        }
        cobweb_utils = []
        for r, slope in COBWEB_GRID:
            params = CobwebParams(
                r=r,
                demand_intercept=2 * demand,
                demand_slope=slope,
                supply_intercept=0.0,
                supply_slope=slope,
                max_iters=100,
                tol=1e-6,
            )
            run = run_cobweb([(initial[i], demand) for i in range(n_nodes)], params, budget)
            util = utilization(run.allocations, demands, budget)
            cobweb_utils.append(util)
            tag = f"r{r}_s{slope}"
            row[f"cobweb_util_{tag}"] = util
            row[f"cobweb_iters_{tag}"] = run.iters
            row[f"cobweb_converged_{tag}"] = run.converged
            row[f"cobweb_all_met_{tag}"] = all(
                run.allocations[i] >= demand - met_tol for i in range(n_nodes)
            )
        row["cobweb_mean_util"] = sum(cobweb_utils) / len(cobweb_utils)
        rows.append(row)
    return rows
