"""Game-theoretic attention allocation under a fixed energy budget.

Each round, nodes holding enough energy to pass screening are offered a
redistribution (one spreading step over the participant set). Every
participant independently weighs the gain of the offer against the
global cost of changing the distribution and accepts or rejects it;
accepted values are committed and the whole distribution is rescaled so
total energy stays at the budget. Rounds repeat until the distribution
stops moving (Nash equilibrium of the accept/reject game) or the round
limit is hit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import ValidationError
from .network import SemanticNetwork
from .spreading import ActivationState, _arrivals, check_state

__all__ = [
    "Strategy",
    "GameParams",
    "RoundRecord",
    "GameOutcome",
    "screen",
    "cost",
    "gain",
    "utility",
    "rescale_to_budget",
    "best_response_round",
    "run_game",
    "verify_nash",
    "rank_nodes",
]


class Strategy(Enum):
    ACCEPT = "accept"
    REJECT = "reject"


@dataclass(frozen=True)
class GameParams:
    """Knobs for the attention game.

    `screen_threshold`, when set, replaces every node's own activation
    threshold for screening. `epsilon` bounds the per-round distribution
    change (RMS) below which the game counts as converged.
    """

    epsilon: float = 0.1
    max_rounds: int = 100
    screen_threshold: float | None = None
    delta: float = 0.2
    budget: float = 100.0

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValidationError(f"epsilon {self.epsilon} must be positive")
        if self.max_rounds < 1:
            raise ValidationError(f"max_rounds {self.max_rounds} < 1")
        if self.screen_threshold is not None and self.screen_threshold < 0:
            raise ValidationError(f"screen_threshold {self.screen_threshold} < 0")
        if not 0.0 <= self.delta <= 1.0:
            raise ValidationError(f"delta {self.delta} outside [0, 1]")
        if self.budget <= 0:
            raise ValidationError(f"budget {self.budget} must be positive")


@dataclass(frozen=True)
class RoundRecord:
    """What one round produced: committed state, choices, realized utilities."""

    index: int
    state: ActivationState
    strategies: dict[int, Strategy]
    utilities: dict[int, float]
    cost: float


@dataclass(frozen=True)
class GameOutcome:
    final: ActivationState
    strategies: dict[int, Strategy]
    utilities: dict[int, float]
    rounds: int
    converged: bool
    round_costs: tuple[float, ...]
    history: tuple[RoundRecord, ...]
    initial: ActivationState


def screen(state: ActivationState, threshold: float) -> frozenset[int]:
    """Nodes holding at least `threshold` energy (boundary inclusive)."""
    if threshold < 0:
        raise ValidationError(f"screen threshold {threshold} < 0")
    return frozenset(nid for nid, held in state.held.items() if held >= threshold)


def _participants(net: SemanticNetwork, state: ActivationState, params: GameParams) -> list[int]:
    """Screened participant set for a round, ascending id order."""
    if params.screen_threshold is not None:
        return sorted(screen(state, params.screen_threshold))
    return sorted(
        nid for nid in net.node_ids() if state.held.get(nid, 0.0) >= net.node(nid).threshold
    )


def cost(current: ActivationState, proposal: ActivationState) -> float:
    """Root-mean-square change between the proposed and current distributions."""
    if set(current.held) != set(proposal.incoming):
        raise ValidationError("cost: states keyed over different node sets")
    n = len(current.held)
    if n == 0:
        raise ValidationError("cost: empty states")
    total = 0.0
    for nid in sorted(current.held):
        d = proposal.incoming[nid] - current.held[nid]
        total += d * d
    return math.sqrt(total / n)


def gain(
    net: SemanticNetwork,
    i: int,
    current: ActivationState,
    proposal: ActivationState,
    delta: float,
) -> float:
    """Damped mean activation increase across node i's neighborhood.

    The neighborhood change is raised to the power (1 - delta) as a
    signed power (sign preserved, magnitude damped), then averaged over
    the neighbor count. Undefined for nodes without neighbors.
    """
    nbrs = net.neighbors(i)
    if not nbrs:
        raise ValidationError(f"gain undefined for node {i}: no neighbors")
    change = 0.0
    for x, _ in nbrs:
        change += proposal.incoming.get(x, 0.0) - current.held.get(x, 0.0)
    if change == 0.0:
        return 0.0
    return math.copysign(abs(change) ** (1.0 - delta), change) / len(nbrs)


def utility(g: float, c: float) -> float:
    """Net benefit of accepting a proposal: gain minus cost."""
    return g - c


def rescale_to_budget(state: ActivationState, budget: float) -> ActivationState:
    """Scale all energies so held values sum to the budget (no-op on zero states)."""
    total = sum(state.held[nid] for nid in sorted(state.held))
    if total <= 0.0:
        return state
    scale = budget / total
    held = {nid: state.held[nid] * scale for nid in state.held}
    incoming = {nid: state.incoming[nid] * scale for nid in state.incoming}
    return ActivationState(state.t, incoming, held, state.activated)


def _propose(net: SemanticNetwork, state: ActivationState, participants: list[int], delta: float) -> ActivationState:
    """Offer state: incoming carries the redistribution, held stays current."""
    arriving = _arrivals(net, state.held, frozenset(participants), delta)
    incoming = {nid: state.held.get(nid, 0.0) + arriving[nid] for nid in net.node_ids()}
    return ActivationState(state.t + 1, incoming, dict(state.held), frozenset(participants))


def _play_round(
    net: SemanticNetwork, state: ActivationState, params: GameParams
) -> tuple[ActivationState, dict[int, Strategy], dict[int, float]]:
    participants = _participants(net, state, params)
    if not participants:
        return state, {}, {}

    proposal = _propose(net, state, participants, params.delta)
    c = cost(state, proposal)

    strategies: dict[int, Strategy] = {}
    utilities: dict[int, float] = {}
    for i in participants:
        if not net.neighbors(i):
            # Nothing is offered to an isolated node; rejecting is the
            # only meaningful move and costs nothing.
            strategies[i] = Strategy.REJECT
            utilities[i] = 0.0
            continue
        u_accept = utility(gain(net, i, state, proposal, params.delta), c)
        if u_accept > 0.0:
            strategies[i] = Strategy.ACCEPT
            utilities[i] = u_accept
        else:
            strategies[i] = Strategy.REJECT
            utilities[i] = 0.0

    held = {}
    for nid in net.node_ids():
        if strategies.get(nid) is Strategy.ACCEPT:
            held[nid] = proposal.incoming[nid]
        else:
            held[nid] = state.held.get(nid, 0.0)
    accepted = frozenset(i for i, s in strategies.items() if s is Strategy.ACCEPT)
    committed = ActivationState(state.t + 1, dict(held), held, accepted)
    return rescale_to_budget(committed, params.budget), strategies, utilities


def best_response_round(
    net: SemanticNetwork, state: ActivationState, params: GameParams
) -> tuple[ActivationState, dict[int, Strategy]]:
    """Play one round: screen, propose, decide per node, commit, rescale."""
    new_state, strategies, _ = _play_round(net, state, params)
    return new_state, strategies


def run_game(net: SemanticNetwork, initial: ActivationState, params: GameParams) -> GameOutcome:
    """Iterate rounds until the distribution change drops below epsilon.

    Deterministic: identical inputs give identical outcomes. The outcome
    keeps the full round history so equilibria can be re-verified.
    """
    check_state(net, initial)
    total = sum(initial.held.values())
    if total > params.budget * (1 + 1e-12):
        raise ValidationError(f"initial energy {total} exceeds budget {params.budget}")

    state = initial
    history: list[RoundRecord] = []
    converged = False
    for round_index in range(1, params.max_rounds + 1):
        new_state, strategies, utilities = _play_round(net, state, params)
        round_cost = cost(state, new_state)
        history.append(RoundRecord(round_index, new_state, strategies, utilities, round_cost))
        state = new_state
        if round_cost < params.epsilon:
            converged = True
            break

    last = history[-1]
    return GameOutcome(
        final=state,
        strategies=last.strategies,
        utilities=last.utilities,
        rounds=len(history),
        converged=converged,
        round_costs=tuple(r.cost for r in history),
        history=tuple(history),
        initial=initial,
    )


def verify_nash(net: SemanticNetwork, outcome: GameOutcome, params: GameParams) -> bool:
    """Check that no participant could gain by unilaterally switching strategy.

    Reconstructs the final round's offer from the state that entered it
    and compares both strategies for every participant.
    """
    if outcome.rounds == 0:
        return True
    pre = outcome.initial if outcome.rounds == 1 else outcome.history[-2].state
    participants = _participants(net, pre, params)
    if set(participants) != set(outcome.strategies):
        return False
    if not participants:
        return True

    proposal = _propose(net, pre, participants, params.delta)
    c = cost(pre, proposal)
    for i in participants:
        u_accept = (
            utility(gain(net, i, pre, proposal, params.delta), c) if net.neighbors(i) else 0.0
        )
        chosen = outcome.strategies[i]
        u_chosen = u_accept if chosen is Strategy.ACCEPT else 0.0
        u_other = 0.0 if chosen is Strategy.ACCEPT else u_accept
        if u_other > u_chosen:
            return False
    return True


def rank_nodes(state: ActivationState, k: int) -> list[tuple[int, float]]:
    """Top-k nodes by held energy, descending; ties broken by ascending id."""
    if k < 1:
        raise ValidationError(f"k {k} must be >= 1")
    ordered = sorted(state.held.items(), key=lambda item: (-item[1], item[0]))
    return ordered[:k]
