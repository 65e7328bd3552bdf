import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from graphdecode.gf2 import gf2_in_rowspan, gf2_nullspace, gf2_rank, gf2_solve


def span(rows):
    out = set()
    for bits in itertools.product((0, 1), repeat=len(rows)):
        v = 0
        for b, r in zip(bits, rows):
            if b:
                v ^= r
        out.add(v)
    return out


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 63), max_size=7), st.integers(0, 63))
def test_against_span_enumeration(rows, vec):
    sp = span(rows)
    assert gf2_rank(rows) == (len(sp).bit_length() - 1)
    assert gf2_in_rowspan(vec, rows) == (vec in sp)
    sol = gf2_solve(rows, vec)
    if vec in sp:
        acc = 0
        for i in sol:
            acc ^= rows[i]
        assert acc == vec
    else:
        assert sol is None


def test_nullspace():
    rng = np.random.default_rng(3)
    m = rng.integers(0, 2, size=(4, 9), dtype=np.uint8)
    basis = gf2_nullspace(m)
    assert len(basis) == 9 - gf2_rank([int("".join(map(str, r)), 2) for r in m])
    for v in basis:
        assert not np.any((m.astype(int) @ v.astype(int)) % 2)
