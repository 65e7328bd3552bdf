import itertools

import numpy as np
import pytest

from graphdecode import (
    CodeConstructionError,
    LogicalClass,
    Syndrome,
    build_code,
    check_matrix,
    cycle_graph,
    distance,
    logical_class,
    multiply,
    pauli_from_supports,
    random_graph,
    syndrome_of,
    syndrome_via_t,
)
from graphdecode.code import (
    distance_via_normalizer,
    generator_rank,
    in_stabilizer_group,
    parse_code_definition,
)
from graphdecode.graph import graph_state_stabilizers
from graphdecode.pauli import PauliOperator, commutes, identity, parse_pauli


def test_build_c5(c5):
    s = graph_state_stabilizers(cycle_graph(5))
    assert len(c5.generators) == 4
    assert c5.generators[0] == multiply(s[4], s[0])
    assert c5.q_set == {1, 2, 3, 4}
    assert c5.logical_z == s[4]


def test_build_c11_partial_support(codes):
    code = codes["c11q"]
    s = graph_state_stabilizers(cycle_graph(11))
    assert code.generators[0] == s[0]
    assert code.generators[1] == s[1]
    for i in range(3, 11):
        assert code.generators[i - 1] == multiply(s[10], s[i - 1])


def test_support_n_only_gives_distance_one():
    code = build_code(cycle_graph(6), {6})
    assert code.q_set == frozenset()
    assert code.generators == tuple(graph_state_stabilizers(cycle_graph(6))[:5])
    assert distance(code) == 1


def test_build_rejects_missing_n():
    with pytest.raises(CodeConstructionError):
        build_code(cycle_graph(5), {1, 2})
    with pytest.raises(CodeConstructionError):
        build_code(cycle_graph(5), {5, 6})


@pytest.mark.parametrize("key", ["c5", "c9", "c11", "c11q"])
def test_generators_commute_and_logicals_anticommute(codes, key):
    code = codes[key]
    ops = [*code.generators, code.logical_x, code.logical_z]
    for k in code.generators:
        assert all(commutes(k, o) for o in ops)
    assert not commutes(code.logical_x, code.logical_z)
    assert generator_rank(code) == code.n - 1
    assert generator_rank(code, [code.logical_z]) == code.n


def test_syndrome_examples(c5):
    x1 = pauli_from_supports(5, x_set={1})
    z3 = pauli_from_supports(5, z_set={3})
    assert syndrome_of(c5, identity(5)).bits == (1, 1, 1, 1)
    assert syndrome_of(c5, x1).bits == (-1, 1, -1, -1)
    assert syndrome_of(c5, z3).bits == (1, 1, -1, 1)
    assert syndrome_via_t(c5, set(), {1}).bits == (-1, 1, -1, -1)
    assert syndrome_via_t(c5, {3}, set()).bits == (1, 1, -1, 1)
    assert syndrome_via_t(c5, set(), set()).bits == (1, 1, 1, 1)
    assert syndrome_of(c5, c5.logical_z).bits == (1, 1, 1, 1)


def test_syndrome_via_t_exhaustive_c5(c5):
    for x, z in itertools.product(range(32), repeat=2):
        p = PauliOperator(5, x, z)
        assert syndrome_via_t(c5, p.z_support, p.x_support) == syndrome_of(c5, p)


@pytest.mark.parametrize("key", ["c9", "c11", "c11q"])
def test_syndrome_via_t_sampled(codes, key):
    code = codes[key]
    rng = np.random.default_rng(11)
    for _ in range(500):
        x, z = (int(v) for v in rng.integers(0, 1 << code.n, 2))
        p = PauliOperator(code.n, x, z)
        assert syndrome_via_t(code, p.z_support, p.x_support) == syndrome_of(code, p)


def test_syndrome_is_homomorphism(codes):
    code = codes["c9"]
    rng = np.random.default_rng(5)
    for _ in range(300):
        a, b = (PauliOperator(9, *(int(v) for v in rng.integers(0, 512, 2))) for _ in range(2))
        sa, sb = syndrome_of(code, a).bits, syndrome_of(code, b).bits
        assert syndrome_of(code, multiply(a, b)).bits == tuple(u * v for u, v in zip(sa, sb))


def test_check_matrix_gives_binary_syndrome(c5):
    h = check_matrix(c5)
    assert h.shape == (4, 10)
    rng = np.random.default_rng(2)
    for _ in range(100):
        x, z = (int(v) for v in rng.integers(0, 32, 2))
        p = PauliOperator(5, x, z)
        vec = np.array([x >> q & 1 for q in range(5)] + [z >> q & 1 for q in range(5)])
        assert tuple(h.astype(int) @ vec % 2) == syndrome_of(c5, p).binary
    x1 = np.zeros(10, int)
    x1[0] = 1
    assert tuple(h.astype(int) @ x1 % 2) == (1, 0, 1, 1)


def test_syndrome_parse_forms():
    assert Syndrome.parse("-++-") == Syndrome((-1, 1, 1, -1))
    assert Syndrome.parse("1001") == Syndrome((-1, 1, 1, -1))
    s = Syndrome.parse("-+-")
    assert s.mask == 0b101 and s.negative_vertices == {1, 3}
    assert Syndrome.from_mask(s.mask, 3) == s
    with pytest.raises(ValueError):
        Syndrome.parse("+x-")


def test_logical_class_examples(c5):
    assert logical_class(c5, identity(5)) is LogicalClass.I
    assert logical_class(c5, c5.logical_z) is LogicalClass.Z
    assert logical_class(c5, c5.logical_x) is LogicalClass.X
    assert logical_class(c5, multiply(c5.logical_x, c5.logical_z)) is LogicalClass.Y
    assert logical_class(c5, pauli_from_supports(5, x_set={1})) is LogicalClass.NOT_IN_NORMALIZER
    for k in c5.generators:
        assert logical_class(c5, k) is LogicalClass.I
        assert in_stabilizer_group(c5, k)
    assert not in_stabilizer_group(c5, c5.logical_z)


def test_size_mismatch(c5):
    with pytest.raises(ValueError):
        syndrome_of(c5, identity(4))
    with pytest.raises(ValueError):
        logical_class(c5, identity(6))


@pytest.mark.parametrize("key", ["c5", "c9", "c11", "c11q"])
def test_distance_two_routes(codes, key):
    code = codes[key]
    assert distance(code) == distance_via_normalizer(code)


@pytest.mark.parametrize("seed", range(8))
def test_distance_two_routes_random(seed):
    n = 4 + seed % 4
    g = random_graph(n, 0.5, seed)
    code = build_code(g, {n, 1 + seed % (n - 1)})
    assert distance(code) == distance_via_normalizer(code)


def test_every_graph_stabilizer_is_a_cycle_logical(codes):
    # on a cycle each S_i weighs 3 and is either a generator factor or Zbar
    code = codes["c11"]
    for s in graph_state_stabilizers(cycle_graph(11)):
        assert s.weight == 3
        assert logical_class(code, s) in (LogicalClass.Z, LogicalClass.I)


def test_parse_code_definition(tmp_path):
    code = parse_code_definition("cycle:5\nLx 1 2 3 4 5\n")
    assert code.n == 5 and code.logical_x == parse_pauli("ZZZZZ")
    (tmp_path / "g.txt").write_text("n 4\ne 1 2\ne 2 3\ne 3 4\n")
    code = parse_code_definition("graph g.txt\nLx 2 4\n", base_dir=tmp_path)
    assert code.q_set == {2}
    with pytest.raises(CodeConstructionError):
        parse_code_definition("cycle:5\n")
    with pytest.raises(CodeConstructionError):
        parse_code_definition("cycle:5\nLx a b\n")
