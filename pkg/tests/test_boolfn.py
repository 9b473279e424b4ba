import itertools
from fractions import Fraction

import pytest

from l2mbqc import boolfn
from l2mbqc.boolfn import (
    AffineForm,
    BooleanFunction,
    affine_distance,
    all_affine_forms,
    kmaj_nonlinearity,
    make_named,
    nonlinearity,
    parity_expansion,
)


def brute_nonlinearity(f, affine=True):
    """Independent route: explicit minimum over enumerated affine forms."""
    forms = (
        all_affine_forms(f.arity)
        if affine
        else (AffineForm(f.arity, m, 0) for m in range(1 << f.arity))
    )
    return min(affine_distance(f, l) for l in forms)


def all_functions(n):
    for bits in range(1 << (1 << n)):
        yield BooleanFunction(n, tuple((bits >> i) & 1 for i in range(1 << n)))


# ---------------------------------------------------------------------------
# evaluation and named constructors

def test_evaluate_named_examples():
    assert make_named("and")(1, 1) == 1
    assert make_named("xnand")(0, 1, 0) == 0
    assert make_named("maj", 3)(1, 0, 1) == 1


def test_xnand_truth_table_rows():
    xnand = make_named("xnand")
    expected = {
        (0, 0, 0): 1, (0, 0, 1): 1, (0, 1, 0): 0, (0, 1, 1): 1,
        (1, 0, 0): 1, (1, 0, 1): 0, (1, 1, 0): 0, (1, 1, 1): 0,
    }
    for bits, out in expected.items():
        assert xnand(*bits) == out


def test_xnand_duplicated_input_is_nand():
    xnand, nand = make_named("xnand"), make_named("nand")
    for b0, b1 in itertools.product((0, 1), repeat=2):
        assert xnand(b0, b1, b1) == nand(b0, b1)


def test_maj1_is_identity():
    m = make_named("maj", 1)
    assert m.table == (0, 1)


def test_const_and_errors():
    assert make_named("const1", 3).table == (1,) * 8
    assert make_named("const0", 0).table == (0,)
    with pytest.raises(ValueError):
        make_named("maj", 4)
    with pytest.raises(ValueError):
        make_named("maj")
    with pytest.raises(ValueError):
        make_named("frobnicate")


def test_evaluate_arity_mismatch():
    with pytest.raises(ValueError):
        boolfn.evaluate(make_named("and"), (1, 0, 1))


def test_decomposition_identities():
    # 3-MAJ and XNAND from a single AND plus parities
    maj, xnand = make_named("maj", 3), make_named("xnand")
    for a, b, c in itertools.product((0, 1), repeat=3):
        assert ((a ^ b) & (a ^ c)) ^ a == maj(a, b, c)
        assert ((a ^ b) & (a ^ b ^ c)) ^ a ^ 1 == xnand(a, b, c)


# ---------------------------------------------------------------------------
# affine distance and nonlinearity

def test_affine_distance_examples():
    and2 = make_named("and")
    assert affine_distance(and2, AffineForm(2, 0, 0)) == 1  # constant 0
    for l in all_affine_forms(3):
        assert affine_distance(l.truth_table(), l) == 0
    maj3 = make_named("maj", 3)
    x1 = AffineForm(3, 0b001, 0)
    assert affine_distance(maj3, x1) == 2
    disagreements = [
        i for i in range(8) if maj3.table[i] != x1.evaluate_index(i)
    ]
    assert disagreements == [0b001, 0b110]  # input strings 100 and 011


def test_affine_distance_arity_mismatch():
    with pytest.raises(ValueError):
        affine_distance(make_named("and"), AffineForm(3, 1, 0))


def test_nonlinearity_examples():
    assert nonlinearity(make_named("and")) == 1
    for l in all_affine_forms(3):
        assert nonlinearity(l.truth_table()) == 0
    assert nonlinearity(make_named("maj", 3)) == 2 == kmaj_nonlinearity(3)


def test_nonlinearity_matches_enumeration():
    import random

    rng = random.Random(20240817)
    for n in (1, 2, 3, 4):
        for _ in range(25):
            f = BooleanFunction(
                n, tuple(rng.randrange(2) for _ in range(1 << n))
            )
            assert nonlinearity(f) == brute_nonlinearity(f)
            assert nonlinearity(f, affine=False) == brute_nonlinearity(f, affine=False)


def test_strictly_linear_flag():
    const1 = make_named("const1", 2)
    assert nonlinearity(const1) == 0
    assert nonlinearity(const1, affine=False) == 2


def test_nonlinearity_zero_iff_affine_n3():
    affine_tables = {l.truth_table().table for l in all_affine_forms(3)}
    for f in all_functions(3):
        assert (nonlinearity(f) == 0) == (f.table in affine_tables)


@pytest.mark.parametrize(
    "k,expected", [(1, 0), (3, 2), (5, 10), (7, 44), (9, 186)]
)
def test_kmaj_nonlinearity_closed_form(k, expected):
    assert kmaj_nonlinearity(k) == expected


@pytest.mark.parametrize("k", [1, 3, 5, 7])
def test_kmaj_nonlinearity_matches_brute_force(k):
    assert kmaj_nonlinearity(k) == brute_nonlinearity(make_named("maj", k))


def test_kmaj_nonlinearity_rejects_even_or_negative_k():
    for k in (0, 2, -3):
        with pytest.raises(ValueError):
            kmaj_nonlinearity(k)


def test_nonlinearity_arity_cap():
    with pytest.raises(ValueError):
        nonlinearity(BooleanFunction(17, (0,) * (1 << 17)))


# ---------------------------------------------------------------------------
# parity expansion

def summation_coefficients(f):
    """Direct-summation oracle for the parity expansion."""
    n = f.arity
    out = {}
    for mask in range(1 << n):
        total = 0
        for x in range(1 << n):
            sign = -1 if bin(mask & x).count("1") & 1 else 1
            total += f.table[x] * sign
        out[mask] = Fraction(total, 1 << n)
    return out


def test_parity_expansion_and():
    expansion = parity_expansion(make_named("and"))
    q = Fraction(1, 4)
    assert expansion.coefficients == {0b00: q, 0b01: -q, 0b10: -q, 0b11: q}
    assert expansion.coefficients == summation_coefficients(make_named("and"))


def test_parity_expansion_const0_and_xor():
    zero = parity_expansion(make_named("const0", 2))
    assert all(c == 0 for c in zero.coefficients.values())
    xor = parity_expansion(make_named("xor"))
    assert xor.nonzero() == {0b00: Fraction(1, 2), 0b11: Fraction(-1, 2)}
    assert xor.coefficients == summation_coefficients(make_named("xor"))


def test_parity_expansion_reconstructs_exactly():
    import random

    rng = random.Random(99)
    samples = list(all_functions(2))
    samples += [
        BooleanFunction(4, tuple(rng.randrange(2) for _ in range(16)))
        for _ in range(40)
    ]
    for f in samples:
        expansion = parity_expansion(f)
        for x in range(1 << f.arity):
            assert expansion.evaluate_index(x) == f.table[x]
        # sum of all coefficients gives the value at the all-zeros input
        assert sum(expansion.coefficients.values()) == f.table[0]


# ---------------------------------------------------------------------------
# text format

def test_text_roundtrip():
    for f in (
        make_named("and"),
        make_named("xnand"),
        make_named("maj", 5),
        make_named("const1", 0),
    ):
        assert boolfn.from_text(boolfn.to_text(f)) == f


def test_text_format_shape():
    assert boolfn.to_text(make_named("and")) == "n=2\n8\n"


def test_text_errors_carry_line_numbers():
    with pytest.raises(ValueError, match="line 1"):
        boolfn.from_text("m=2\n8\n")
    with pytest.raises(ValueError, match="line 2"):
        boolfn.from_text("n=2\nzz\n")
    with pytest.raises(ValueError, match="line 2"):
        boolfn.from_text("n=1\nff\n")  # more bits than 2^1


def test_table_validation():
    with pytest.raises(ValueError):
        BooleanFunction(2, (0, 1, 0))
    with pytest.raises(ValueError):
        BooleanFunction(1, (0, 2))
