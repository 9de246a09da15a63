import numpy as np
import pytest

from helpers import TRIANGLE, TWO_K2, TWO_PATHS, graph_with_components
from specmix.dynamics import (Verdict, integrate_flow, integrate_matrix_flow, random_unit_vectors,
                              stability_cross_check)
from specmix.errors import StepTooLarge
from specmix.graph import connected_components, parse_graph
from specmix.linalg import jacobi_eigh
from specmix.operator import build_operator


def test_triangle_decays_and_grows():
    op = build_operator(parse_graph(TRIANGLE))
    rng = np.random.default_rng(0)
    flow = integrate_flow(op, 0.5, random_unit_vectors(rng, 3, 1)[:, 0])
    assert flow.classification is Verdict.DECAYS and flow.energy_nonincreasing()

    w, v = jacobi_eigh(op.evaluate(2.0), vectors=True)
    assert w[0] < 0
    q0 = v[:, 0] + 0.1 * v[:, 1]
    flow = integrate_flow(op, 2.0, q0, t_end=10.0)
    assert flow.classification is Verdict.GROWS and flow.energy_nonincreasing()


def test_zero_matrix_inconclusive():
    op = build_operator(parse_graph("n 3"))
    flow = integrate_flow(op, 1.0, np.array([1.0, 2.0, 3.0]))
    assert flow.classification is Verdict.INCONCLUSIVE
    assert flow.final_norm == pytest.approx(flow.initial_norm)


def test_step_too_large_and_bad_input():
    op = build_operator(parse_graph(TRIANGLE))
    with pytest.raises(StepTooLarge):
        integrate_flow(op, 1.0, np.ones(3), dt=1.0)
    with pytest.raises(ValueError):
        integrate_flow(op, 1.0, np.zeros(3))


def test_overflow_reported_as_growth():
    m = np.array([[-400.0]])
    flow, = integrate_matrix_flow(m, np.array([1.0]), dt=0.005, t_end=1000.0)
    assert flow.overflow and flow.classification is Verdict.GROWS


def test_cross_check_examples():
    rep = stability_cross_check(parse_graph(TWO_PATHS), 0.01, trials=3)
    assert rep.expected is Verdict.DECAYS and rep.empirical == [Verdict.DECAYS] * 3
    rep = stability_cross_check(parse_graph(TWO_K2), 0.01, trials=3)
    assert rep.expected is Verdict.GROWS and rep.agrees
    rep = stability_cross_check(parse_graph("n 4\ng 1 2\ng 2 3\ng 3 4"), 5.0, trials=3)
    assert rep.expected is Verdict.CONVERGES and rep.agrees
    with pytest.raises(ValueError):
        stability_cross_check(parse_graph(TRIANGLE), 0.1, trials=0)


def test_thermalisation_to_mean():
    g = parse_graph("n 4\ng 1 2\ng 2 3\ng 3 4\ng 1 4")
    q0 = np.array([1.0, -2.0, 0.5, 4.0])
    flow = integrate_flow(build_operator(g), 1.0, q0, t_end=60.0)
    assert np.allclose(flow.final_state, q0.mean(), atol=1e-8)


def test_kernel_conservation_without_saddles():
    rng = np.random.default_rng(2)
    for _ in range(10):
        sizes = list(rng.integers(1, 5, size=rng.integers(1, 4)))
        g = graph_with_components(rng, sizes, p_h_within=0, p_h_between=0)
        comp = connected_components(g)
        op = build_operator(g)
        q0 = rng.standard_normal(g.n)
        flow = integrate_flow(op, 1.0, q0, dt=0.01, t_end=5.0)
        for i in range(comp.r):
            ind = comp.indicator(i)
            assert abs(ind @ flow.final_state - ind @ q0) <= 1e-8


def test_energy_nonincreasing_random():
    rng = np.random.default_rng(3)
    for _ in range(10):
        g = graph_with_components(rng, [int(rng.integers(2, 6))] * 2, p_h_between=0.4)
        m = build_operator(g).evaluate(float(rng.uniform(0.01, 3)))
        for flow in integrate_matrix_flow(m, random_unit_vectors(rng, g.n, 3), dt=0.01, t_end=20.0):
            assert flow.energy_nonincreasing()


def test_csv_output():
    flow = integrate_flow(build_operator(parse_graph(TRIANGLE)), 0.5, np.ones(3), t_end=0.05)
    lines = flow.to_csv().splitlines()
    assert lines[0] == "t,norm,potential" and len(lines) == 7
