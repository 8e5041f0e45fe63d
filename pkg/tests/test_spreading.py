"""Spreading activation: per-edge transfer, stepping, full runs, attention."""

import itertools
import math
import random

import pytest

from semgame.errors import ValidationError
from semgame.network import build_network, ConceptNode, WeightedEdge
from semgame.spreading import (
    ActivationState,
    SpreadParams,
    attention,
    edge_spread,
    initial_activation,
    iter_spread,
    run_spread,
    seed_state,
    step,
)

from conftest import chain_net, quick_net
from oracles import step_oracle


class TestEdgeSpread:
    def test_basic_attenuation(self):
        assert edge_spread(1.0, 0.5, 0.2) == 0.4
        assert edge_spread(1.0, 0.5, 0.2) == 1.0 * 0.5 * (1 - 0.2)

    def test_total_attenuation(self):
        assert edge_spread(1.0, 0.5, 1.0) == 0.0

    def test_scaled_source(self):
        assert edge_spread(2.0, 0.3, 0.1) == 2.0 * 0.3 * (1 - 0.1)
        assert edge_spread(2.0, 0.3, 0.1) == pytest.approx(0.54)

    def test_never_exceeds_source(self):
        rng = random.Random(5)
        for _ in range(200):
            o, w, d = rng.uniform(0, 10), rng.random(), rng.random()
            out = edge_spread(o, w, d)
            assert 0.0 <= out <= o


class TestStep:
    def test_no_activated_nodes_only_ticks(self):
        net = quick_net(3, [(0, 1, 0.5)])
        state = ActivationState(0, {0: 1.0, 1: 0.0, 2: 0.0}, {0: 1.0, 1: 0.0, 2: 0.0}, frozenset())
        nxt = step(net, state, SpreadParams())
        assert nxt.t == 1
        assert dict(nxt.held) == dict(state.held)
        assert nxt.activated == frozenset()

    def test_single_edge_transfer(self):
        net = quick_net(2, [(0, 1, 0.5)])
        state = seed_state(net, {0: 1.0})
        nxt = step(net, state, SpreadParams(delta=0.0, fire_threshold=0.0, budget=1.0))
        assert nxt.held[1] == 0.5
        assert nxt.held[0] == 1.0
        assert nxt.activated == frozenset({1})

    def test_receiver_below_fire_threshold_does_not_fire(self):
        net = quick_net(2, [(0, 1, 0.5)])
        state = seed_state(net, {0: 1.0})
        nxt = step(net, state, SpreadParams(delta=0.0, fire_threshold=0.6, budget=1.0))
        assert nxt.held[1] == 0.5
        assert nxt.activated == frozenset()

    def test_two_steps_match_adjacency_oracle(self):
        """4-node graph stepped twice against the dense-matrix oracle."""
        edges = [(0, 1, 0.5), (1, 2, 0.25), (2, 3, 1.0), (0, 3, 0.75)]
        net = quick_net(4, edges)
        params = SpreadParams(delta=0.3, fire_threshold=1e-6, budget=2.0)
        state = seed_state(net, {0: 2.0})
        held = dict(state.held)
        activated = set(state.activated)
        for _ in range(2):
            state = step(net, state, params)
            held, activated = step_oracle(4, edges, held, activated, 0.3, 1e-6)
            assert dict(state.held) == held
            assert set(state.activated) == activated

    def test_deterministic(self):
        net = quick_net(5, [(0, 1, 0.4), (1, 2, 0.6), (2, 3, 0.8), (3, 4, 0.2), (0, 4, 0.9)])
        params = SpreadParams()
        a = step(net, seed_state(net, {0: 50.0, 2: 25.0}), params)
        b = step(net, seed_state(net, {0: 50.0, 2: 25.0}), params)
        assert a == b

    def test_brute_force_equivalence_small_graphs(self):
        """step matches the exhaustive-adjacency oracle on a weight-grid sample.

        The full sweep over every small network lives in the acceptance
        suite; this keeps a fast sample in the unit tests.
        """
        weights = (0.0, 0.25, 0.5, 1.0)
        pairs = list(itertools.combinations(range(3), 2))
        for combo in itertools.product(weights, repeat=len(pairs)):
            edges = [(a, b, w) for (a, b), w in zip(pairs, combo) if w > 0.0]
            net = quick_net(3, edges)
            params = SpreadParams(delta=0.25, fire_threshold=1e-6, budget=1.0)
            state = seed_state(net, {0: 1.0})
            held = dict(state.held)
            activated = set(state.activated)
            for _ in range(3):
                state = step(net, state, params)
                held, activated = step_oracle(3, edges, held, activated, 0.25, 1e-6)
                assert dict(state.held) == held
                assert set(state.activated) == activated


class TestRunSpread:
    def test_isolated_source_stops_at_one_step(self):
        net = quick_net(3, [(1, 2, 0.5)])
        final = run_spread(net, {0: 1.0}, SpreadParams(budget=1.0))
        assert final.t == 1
        assert final.held[0] == 1.0
        assert final.activated == frozenset()

    def test_chain_geometric_attenuation(self):
        net = chain_net([1.0, 1.0])
        params = SpreadParams(delta=0.5, fire_threshold=1e-9, max_steps=2, budget=1.0)
        final = run_spread(net, {0: 1.0}, params)
        assert final.held[1] == 0.5
        assert final.held[2] == 0.25

    def test_three_steps_equal_manual_composition(self):
        """run_spread(max_steps=3) is step applied three times."""
        rng = random.Random(8)
        edges = [
            (a, b, rng.random())
            for a in range(8)
            for b in range(a + 1, 8)
            if rng.random() < 0.4
        ]
        net = quick_net(8, edges)
        params = SpreadParams(delta=0.2, fire_threshold=1e-6, max_steps=3, budget=10.0)
        final = run_spread(net, {0: 6.0, 3: 4.0}, params)
        manual = seed_state(net, {0: 6.0, 3: 4.0})
        for _ in range(3):
            if not manual.activated:
                break
            manual = step(net, manual, params)
        assert final == manual

    def test_empty_sources_rejected(self):
        with pytest.raises(ValidationError, match="non-empty"):
            run_spread(quick_net(2, []), {}, SpreadParams())

    def test_unknown_source_rejected(self):
        with pytest.raises(ValidationError, match="source id 9"):
            run_spread(quick_net(2, []), {9: 1.0}, SpreadParams())

    def test_over_budget_sources_rejected(self):
        with pytest.raises(ValidationError, match="exceeds budget"):
            run_spread(quick_net(2, []), {0: 2.0, 1: 3.0}, SpreadParams(budget=4.0))

    def test_negative_source_rejected(self):
        with pytest.raises(ValidationError, match="negative"):
            run_spread(quick_net(2, []), {0: -1.0}, SpreadParams())

    def test_delta_one_stops_immediately(self):
        """Full attenuation: no energy ever leaves a source."""
        net = quick_net(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)])
        final = run_spread(net, {0: 5.0}, SpreadParams(delta=1.0, budget=5.0))
        assert final.t == 1
        assert final.held == {0: 5.0, 1: 0.0, 2: 0.0, 3: 0.0}

    def test_iter_spread_yields_seed_first(self):
        net = quick_net(2, [(0, 1, 0.5)])
        states = list(iter_spread(net, {0: 1.0}, SpreadParams(budget=1.0)))
        assert states[0].t == 0
        assert [s.t for s in states] == list(range(len(states)))


class TestSpreadingProperties:
    def test_attenuation_bound_on_chains(self):
        """First arrival k hops out is exactly the per-hop product, below (1-d)^k."""
        for delta in (0.1, 0.4, 0.7):
            weights = [0.9, 0.8, 0.6, 1.0]
            net = chain_net(weights)
            k = len(weights)
            params = SpreadParams(delta=delta, fire_threshold=0.0, max_steps=k, budget=3.0)
            final = run_spread(net, {0: 3.0}, params)
            expected = 3.0
            for w in weights:
                expected = edge_spread(expected, w, delta)
            assert final.held[k] == expected
            assert final.held[k] <= 3.0 * (1 - delta) ** k + 1e-12

    def test_monotone_in_edge_weight(self):
        """A heavier edge never delivers less in one step, all else fixed."""
        params = SpreadParams(delta=0.3, fire_threshold=0.0, budget=1.0)
        delivered = []
        for w in (0.1, 0.2, 0.5, 0.8, 1.0):
            net = quick_net(2, [(0, 1, w)])
            nxt = step(net, seed_state(net, {0: 1.0}), params)
            delivered.append(nxt.held[1])
        assert delivered == sorted(delivered)
        assert len(set(delivered)) == len(delivered)

    def test_incoming_bounded_by_neighbor_count(self):
        """A node can receive from at most (n-1) neighbors in one step."""
        rng = random.Random(31)
        for seed in range(5):
            n = rng.randrange(3, 10)
            edges = [
                (a, b, rng.random())
                for a in range(n)
                for b in range(a + 1, n)
                if rng.random() < 0.6
            ]
            net = quick_net(n, edges)
            held = {i: rng.uniform(0, 5) for i in range(n)}
            state = ActivationState(0, dict(held), held, frozenset(range(n)))
            params = SpreadParams(delta=0.3, fire_threshold=0.0, budget=100.0)
            nxt = step(net, state, params)
            bound = (n - 1) * max(held.values()) * (1 - params.delta)
            for nid in range(n):
                assert nxt.held[nid] - held[nid] <= bound + 1e-12

    def test_state_validation_rejects_unknown_ids(self):
        net = quick_net(2, [(0, 1, 0.5)])
        bad = ActivationState(0, {5: 1.0}, {5: 1.0}, frozenset({5}))
        with pytest.raises(ValidationError, match="unknown node"):
            from semgame.spreading import check_state

            check_state(net, bad)


class TestAttention:
    def test_single_edge_ratio_collapses(self):
        net = quick_net(2, [(0, 1, 0.4)])
        state = seed_state(net, {0: 1.0})
        assert attention(net, state, 0) == 1.0

    def test_star_leaves_equal(self):
        """Symmetric star with equal held values gives equal leaf attention."""
        net = quick_net(5, [(0, i, 0.5) for i in range(1, 5)])
        held = {0: 0.0, 1: 2.0, 2: 2.0, 3: 2.0, 4: 2.0}
        state = ActivationState(0, dict(held), held, frozenset())
        values = {attention(net, state, i) for i in range(1, 5)}
        assert len(values) == 1

    def test_matches_raw_sum_recomputation(self):
        rng = random.Random(11)
        edges = [
            (a, b, rng.random())
            for a in range(7)
            for b in range(a + 1, 7)
            if rng.random() < 0.5
        ]
        net = quick_net(7, edges)
        held = {i: rng.uniform(0, 5) for i in range(7)}
        state = ActivationState(0, dict(held), held, frozenset())
        total = sum(w for _, _, w in edges)
        for x in range(7):
            incident = sum(w for a, b, w in edges if x in (a, b))
            assert attention(net, state, x) == pytest.approx(incident / total * held[x])

    def test_edgeless_network_rejected(self):
        net = quick_net(3, [])
        state = seed_state(net, {0: 1.0})
        with pytest.raises(ValidationError, match="edgeless"):
            attention(net, state, 0)

    def test_invariant_under_relabeling(self):
        """Attention depends on structure, not on the id values chosen."""
        edges = [(0, 1, 0.3), (1, 2, 0.9), (0, 2, 0.6)]
        net = quick_net(3, edges)
        held = {0: 1.0, 1: 2.0, 2: 3.0}
        state = ActivationState(0, dict(held), held, frozenset())

        mapping = {0: 10, 1: 7, 2: 42}
        nodes = [ConceptNode(id=mapping[i], label=f"m{i}") for i in range(3)]
        renamed = build_network(
            nodes, [WeightedEdge(mapping[a], mapping[b], w) for a, b, w in edges]
        )
        perm_held = {mapping[i]: held[i] for i in range(3)}
        perm_state = ActivationState(0, dict(perm_held), perm_held, frozenset())
        for i in range(3):
            assert attention(net, state, i) == attention(renamed, perm_state, mapping[i])


class TestInitialActivation:
    def test_empty_history(self):
        assert initial_activation((), now=10.0) == 0.0

    def test_single_event_age_one(self):
        assert initial_activation((9.0,), now=10.0, decay=0.5) == 0.0

    def test_matches_scalar_oracle(self):
        ages = (1.0, 2.0, 4.0)
        history = tuple(10.0 - a for a in ages)
        expected = math.log(1.0 + 2.0 ** -0.5 + 4.0 ** -0.5)
        assert initial_activation(history, now=10.0, decay=0.5) == pytest.approx(expected, rel=1e-15)

    def test_clamped_at_zero_for_stale_history(self):
        assert initial_activation((0.0,), now=100.0, decay=0.5) == 0.0

    def test_same_moment_events_ignored(self):
        assert initial_activation((10.0,), now=10.0) == 0.0

    def test_future_timestamp_rejected(self):
        with pytest.raises(ValidationError, match="future"):
            initial_activation((11.0,), now=10.0)

    def test_nonpositive_decay_rejected(self):
        with pytest.raises(ValidationError, match="decay"):
            initial_activation((1.0,), now=10.0, decay=0.0)
