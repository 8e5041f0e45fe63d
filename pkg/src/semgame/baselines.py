"""Comparison baselines: cobweb supply/demand dynamics and plain spreading.

The cobweb model adjusts each node's activation value by the lagged gap
between a linear demand curve and a linear supply curve evaluated at
the naive expectation (last period's value). It stands in for
equilibrium seeking without the attention game; plain spreading stands
in for allocation without any adjustment at all.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .errors import ValidationError
from .network import SemanticNetwork
from .spreading import ActivationState, SpreadParams, run_spread

__all__ = [
    "CobwebParams",
    "CobwebState",
    "CobwebTraceRow",
    "CobwebRun",
    "cobweb_step",
    "run_cobweb",
    "run_traditional",
]


@dataclass(frozen=True)
class CobwebParams:
    """Linear demand D(o) = demand_intercept - demand_slope * o and
    supply S(o') = supply_intercept + supply_slope * o', with adjustment
    rate r applied to the excess demand each iteration."""

    r: float
    demand_intercept: float
    demand_slope: float
    supply_intercept: float
    supply_slope: float
    max_iters: int = 100
    tol: float = 1e-6

    def __post_init__(self) -> None:
        if self.demand_slope < 0 or self.supply_slope < 0:
            raise ValidationError("demand/supply slopes must be >= 0")
        if self.max_iters < 1:
            raise ValidationError(f"max_iters {self.max_iters} < 1")
        if self.tol <= 0:
            raise ValidationError(f"tol {self.tol} must be positive")

    def demand(self, o: float) -> float:
        return self.demand_intercept - self.demand_slope * o

    def supply(self, expected: float) -> float:
        return self.supply_intercept + self.supply_slope * expected


@dataclass(frozen=True)
class CobwebState:
    o: float
    expected: float
    incoming: float


@dataclass(frozen=True)
class CobwebTraceRow:
    iteration: int
    node: int
    o: float
    excess_demand: float
    allocated: float


@dataclass(frozen=True)
class CobwebRun:
    allocations: dict[int, float]
    iters: int
    converged: bool
    final_values: dict[int, float]
    trace: tuple[CobwebTraceRow, ...]


def cobweb_step(state: CobwebState, params: CobwebParams) -> CobwebState:
    """One lagged adjustment: o moves by r times the excess demand.

    Expectations are naive: next period's expected value is this
    period's actual. The incoming base value carries forward unchanged.
    """
    excess = params.demand(state.o) - params.supply(state.expected)
    return CobwebState(
        o=state.incoming + params.r * excess,
        expected=state.o,
        incoming=state.incoming,
    )


def run_cobweb(
    nodes: list[tuple[float, float]],
    params: CobwebParams,
    budget: float,
) -> CobwebRun:
    """Iterate per-node cobweb recurrences, granting budget greedily each cycle.

    `nodes` is a list of (initial value, demand target) pairs. Each
    node's base incoming value is chosen so its demand target is the
    fixed point of its recurrence; whether the oscillation around that
    point settles is governed by r and the curve slopes. Budget is
    granted in node order every cycle: each node receives
    min(max(o, 0), remaining). Convergence means every node's value
    moved less than tol in the last cycle.
    """
    if budget <= 0:
        raise ValidationError(f"budget {budget} must be positive")
    states: dict[int, CobwebState] = {}
    for idx, (initial_o, target) in enumerate(nodes):
        base = target - params.r * (params.demand(target) - params.supply(target))
        states[idx] = CobwebState(o=float(initial_o), expected=float(initial_o), incoming=base)

    allocations = {idx: 0.0 for idx in states}
    trace: list[CobwebTraceRow] = []
    converged = False
    iters = 0
    for iteration in range(1, params.max_iters + 1):
        iters = iteration
        remaining = budget
        all_quiet = True
        for idx in sorted(states):
            prev = states[idx]
            excess = params.demand(prev.o) - params.supply(prev.expected)
            nxt = cobweb_step(prev, params)
            states[idx] = nxt
            # Quiet means the value stopped moving AND sits at a genuine
            # fixed point; the residual test keeps periodic orbits with
            # repeated values from masquerading as equilibria.
            residual = nxt.incoming + params.r * (params.demand(nxt.o) - params.supply(nxt.o)) - nxt.o
            if abs(nxt.o - prev.o) >= params.tol or abs(residual) >= params.tol:
                all_quiet = False
            granted = min(max(nxt.o, 0.0), remaining)
            remaining -= granted
            allocations[idx] = granted
            trace.append(CobwebTraceRow(iteration, idx, nxt.o, excess, granted))
        if all_quiet:
            converged = True
            break

    return CobwebRun(
        allocations=allocations,
        iters=iters,
        converged=converged,
        final_values={idx: st.o for idx, st in states.items()},
        trace=tuple(trace),
    )


def run_traditional(
    net: SemanticNetwork, sources: Mapping[int, float], params: SpreadParams
) -> ActivationState:
    """Fixed-allocation baseline: spreading only, no game adjustment."""
    return run_spread(net, sources, params)
