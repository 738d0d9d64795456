import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohomkern.errors import ConstructionFailure, ModulusMismatch, NoSolution
from cohomkern.group_ring import (
    FreeModuleBasis,
    RingElement,
    format_element,
    full_ring,
    left_translate,
    parse_element,
    special_element,
    trivial_module,
)
from conftest import GRID, grid_group, grid_id, grid_sequence

SMALL = [c for c in GRID if c[0] * c[1] <= 20]


def brute_product(a: RingElement, b: RingElement) -> np.ndarray:
    G, m = a.group, a.modulus
    out = np.zeros(G.order, dtype=np.int64)
    for g in range(G.order):
        for h in range(G.order):
            out[G.mul(g, h)] += a.coeffs[g] * b.coeffs[h]
    return out % m


def elements(G, m):
    return st.lists(st.integers(0, m - 1), min_size=G.order, max_size=G.order).map(
        lambda c: RingElement(G, m, c))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_ring_axioms(case, data):
    G = grid_group(*case)
    m = G.d ** 2
    a, b, c = (data.draw(elements(G, m)) for _ in range(3))
    assert np.all((a * b).coeffs == brute_product(a, b))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    one = RingElement.basis(G, m, 0)
    assert one * a == a == a * one
    assert np.all(a.coeffs @ b.right_matrix() % m == (a * b).coeffs)


@pytest.mark.parametrize("case", GRID, ids=grid_id)
def test_trace_idempotent_relations(case):
    G = grid_group(*case)
    m = G.d ** 2
    T_tau = special_element(G, "T_tau", m)
    T_sigma = special_element(G, "T_sigma", m)
    assert T_tau * T_tau == G.d * T_tau
    assert T_sigma * T_sigma == G.s * T_sigma
    tau = RingElement.basis(G, m, G.tau)
    assert (RingElement.basis(G, m, 0) - tau) * T_tau == RingElement.zero(G, m)


def test_parse_and_format_roundtrip(s3):
    m = 9
    x = RingElement(s3, m, [1, 0, 2, 0, 8, 3])
    assert parse_element(format_element(x), s3, m) == x
    assert parse_element("0", s3, m).is_zero()
    assert parse_element("2*t^1 s^1 + t^0 s^0", s3, m) == (
        2 * RingElement.monomial(s3, m, 1, 1) + RingElement.monomial(s3, m, 0, 0))
    with pytest.raises(ValueError):
        parse_element("s^1 t^1", s3, m)
    with pytest.raises(ValueError):
        parse_element("3·x^2", s3, m)


def test_modulus_mismatch(s3):
    with pytest.raises(ModulusMismatch):
        RingElement.basis(s3, 9, 1) + RingElement.basis(s3, 3, 1)


def test_integer_ring_elements(s3):
    a = RingElement(s3, 0, [5, -2, 0, 0, 1, 0])
    assert repr(a).endswith("over Z)")
    assert (a * a).coeffs.min() < 0  # no reduction over Z


@pytest.mark.parametrize("case", SMALL, ids=grid_id)
def test_action_matrices_row_convention(case):
    seq = grid_sequence(*case)
    G = seq.group
    for M in seq.modules:
        act = M.action
        for g in range(G.order):
            for h in range(G.order):
                assert np.all(act[G.mul(g, h)] % M.modulus == act[h] @ act[g] % M.modulus)
        for g in range(G.order):
            moved = left_translate(G, M.elements, g)
            assert np.all(act[g] @ M.elements % M.modulus == moved % M.modulus)


@pytest.mark.parametrize("case", SMALL, ids=grid_id)
def test_tau_permutes_m2_basis(case):
    seq = grid_sequence(*case)
    A = seq.modules[1].action[seq.group.tau] % seq.modulus
    d = seq.d
    assert np.all(A == np.roll(np.eye(d, dtype=np.int64), 1, axis=1))


def test_free_module_basis_coordinates(s3):
    M = full_ring(s3, 9)
    X = np.arange(12).reshape(2, 6) % 9
    assert np.all(M.coords(X) == X)
    T = special_element(s3, "T_tau", 0)
    one_dim = FreeModuleBasis("T", s3, 9, [T])
    with pytest.raises(NoSolution):
        one_dim.coords(np.eye(6, dtype=np.int64)[:1])
    with pytest.raises(ConstructionFailure):
        FreeModuleBasis("dep", s3, 9, [T, 2 * T])


def test_trivial_module_action(s3):
    M = trivial_module(s3, 3, rank=2)
    assert M.rank == 2 and np.all(M.act == np.eye(2))
    assert M.is_map_equivariant(M, np.array([[1, 2], [0, 1]]))
