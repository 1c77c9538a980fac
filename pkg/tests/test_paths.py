import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigvar.paths import (
    AxisPath,
    FillingExhausted,
    PLPath,
    SignatureJacobian,
    axis_signature,
    axis_signature_entry,
    axis_signature_tensor,
    filling_shape,
    is_defective,
    jacobian_rank,
    rank_probe,
    signature_pl,
)
from sigvar.linalg import rank as exact_rank
from sigvar.poly import Poly
from sigvar.tensor import is_group_like, log_truncated, tensor_product
from sigvar.words import lie_dimension

fr = st.fractions(min_value=-3, max_value=3, max_denominator=3)
shapes = st.lists(st.integers(1, 3), min_size=1, max_size=5).map(tuple)


def axis_paths(max_len=5):
    return shapes.flatmap(
        lambda s: st.lists(fr, min_size=len(s), max_size=len(s)).map(lambda a: AxisPath(s, tuple(a)))
    )


def pl_paths(d=2, max_steps=3):
    step = st.tuples(*[fr] * d)
    return st.lists(step, min_size=1, max_size=max_steps).map(lambda s: PLPath(d, tuple(s)))


def test_worked_example_entries():
    nu = (1, 2, 1, 3, 2, 3, 1, 4)
    a = Poly.variables(8)
    expected = {
        (1, 2, 3, 4): a[0] * a[1] * a[3] * a[7] + a[0] * a[1] * a[5] * a[7] + a[0] * a[4] * a[5] * a[7] + a[2] * a[4] * a[5] * a[7],
        (2, 3, 1, 4): a[1] * a[3] * a[6] * a[7] + a[1] * a[5] * a[6] * a[7] + a[4] * a[5] * a[6] * a[7],
        (4, 1, 2, 3): Poly(8),
        (1, 1, 2, 4): (a[0] ** 2 * a[1] * a[7] + a[0] ** 2 * a[4] * a[7] + a[2] ** 2 * a[4] * a[7]) / 2 + a[0] * a[2] * a[4] * a[7],
    }
    for w, p in expected.items():
        assert axis_signature_entry(nu, None, w) == p


@given(axis_paths())
def test_closed_form_agrees_with_chen_product(path):
    d = max(path.shape)
    assert axis_signature_tensor(path, 3, d) == signature_pl(path.to_pl(d), 3)


@given(pl_paths(), pl_paths())
def test_chen_identity(x, y):
    assert signature_pl(x.concat(y), 3) == tensor_product(signature_pl(x, 3), signature_pl(y, 3))


@given(pl_paths(d=3))
def test_signatures_are_group_like(x):
    assert is_group_like(signature_pl(x, 3), d=3)


@given(axis_paths())
def test_zero_length_step_is_neutral(path):
    padded = AxisPath(path.shape + (1,), path.lengths + (Fraction(0),))
    d = max(path.shape)
    assert axis_signature_tensor(padded, 3, d) == axis_signature_tensor(path, 3, d)


def test_single_segment_log_is_linear():
    x = PLPath(2, ((Fraction(1), Fraction(2)),))
    lg = log_truncated(signature_pl(x, 3))
    assert lg.entries == {(1,): 1, (2,): 2}


@pytest.mark.parametrize("shape,k", [((1, 2, 1), 2), ((1, 2, 1, 2), 3), ((1, 2, 3, 1), 2)])
def test_jacobian_matches_symbolic_derivatives(shape, k):
    rng = random.Random(7)
    pt = tuple(Fraction(rng.randint(-9, 9)) for _ in shape)
    jac = SignatureJacobian.at(shape, k, pt)
    sym = axis_signature(shape, None, k)
    oracle = [[sym[w].diff(i)(pt) for i in range(len(shape))] for w in jac.words]
    assert jac.matrix == oracle
    assert jac.rank() == exact_rank(oracle)


def test_known_ranks():
    assert jacobian_rank((1, 2), 2) == 2
    assert jacobian_rank((1, 2, 1, 2), 2) == 3
    assert jacobian_rank((1, 2, 1, 2), 3) == 4
    assert jacobian_rank((1, 2, 1, 2, 3), 3) == 5


def test_rank_never_exceeds_universal_dimension():
    # the signature map lands in the group-like elements, of dimension dim Lie^k
    for shape in [(1, 2, 1, 2, 1, 2), (1, 2, 1, 2, 1, 2, 1)]:
        assert jacobian_rank(shape, 3) <= lie_dimension(2, 3)


def test_concatenation_keeps_defectiveness():
    rng = random.Random(11)
    base = (1, 2, 1, 2)
    assert is_defective(base, 2)
    for _ in range(5):
        ext = tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 3)))
        assert is_defective(base + ext, 2)
        assert is_defective(ext + base, 2)


def test_rank_probe_report_is_reproducible():
    a = rank_probe((1, 2, 1, 3), 2, seed=5).to_json()
    b = rank_probe((1, 2, 1, 3), 2, seed=5).to_json()
    assert a == b and a["kind"] == "generic rank (probabilistic)"
    assert rank_probe((1, 2), 2, point=(1, 1)).to_json()["kind"] == "rank at point"


def test_rank_at_degenerate_point():
    assert jacobian_rank((1, 2), 2, point=(0, 0)) == 0


def test_filling_shapes():
    assert filling_shape(2, 2) == (1, 2, 1)
    assert filling_shape(2, 3) == (1, 2, 1, 2, 1)
    shape = filling_shape(3, 2)
    assert jacobian_rank(shape, 2) == len(shape)
    with pytest.raises(FillingExhausted):
        filling_shape(2, 3, max_len=3)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        AxisPath((), ())
    with pytest.raises(ValueError):
        AxisPath((1, 2), (1,))
    with pytest.raises(ValueError):
        PLPath(2, ((1, 2, 3),))


def test_json_round_trips():
    p = AxisPath((1, 2, 1), (1, 2, Fraction(-3)))
    assert AxisPath.from_json(p.to_json()) == p
    q = PLPath(2, ((1, 0), (0, Fraction(1, 2))))
    assert PLPath.from_json(q.to_json()) == q
