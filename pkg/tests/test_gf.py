import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oigraph.gf import GF, canonical_modulus, parse_field, poly_is_irreducible, primitive_unit


def f9():
    return GF(3, 2)


# --- independent oracle: GF(9) = F_3[t]/(t^2+1), elements encoded c0 + 3*c1


def oracle9_mul(a, b):
    a0, a1 = a % 3, a // 3
    b0, b1 = b % 3, b // 3
    return (a0 * b0 - a1 * b1) % 3 + 3 * ((a0 * b1 + a1 * b0) % 3)


def oracle9_add(a, b):
    return (a % 3 + b % 3) % 3 + 3 * ((a // 3 + b // 3) % 3)


def test_field_construction():
    f = GF(3)
    assert (f.p, f.e, f.q) == (3, 1, 3)
    assert f9().q == 9
    with pytest.raises(ValueError):
        GF(2, 1)
    with pytest.raises(ValueError):
        GF(9, 1)  # composite
    with pytest.raises(ValueError):
        GF(3, 0)
    with pytest.raises(ValueError):
        GF(3, 2, (0, 0, 1))  # t^2 is reducible


def test_canonical_modulus_is_first_irreducible_sympy_oracle():
    sympy = pytest.importorskip("sympy")
    t = sympy.symbols("t")
    for p, e in [(3, 2), (3, 3), (5, 2), (7, 2)]:
        expected = None
        for tail in itertools.product(range(p), repeat=e):
            poly = sympy.Poly(
                sum(c * t**i for i, c in enumerate(tail)) + t**e, t, modulus=p
            )
            if poly.is_irreducible:
                expected = tuple(tail) + (1,)
                break
        assert canonical_modulus(p, e) == expected


def test_canonical_modulus_values():
    assert canonical_modulus(3, 2) == (1, 0, 1)  # t^2 + 1
    assert canonical_modulus(3, 3) == (1, 0, 2, 1)  # t^3 + 2t^2 + 1


def test_irreducibility_degree4():
    sympy = pytest.importorskip("sympy")
    t = sympy.symbols("t")
    for tail in itertools.product(range(3), repeat=4):
        coeffs = list(tail) + [1]
        poly = sympy.Poly(sum(c * t**i for i, c in enumerate(coeffs)), t, modulus=3)
        assert poly_is_irreducible(coeffs, 3) == poly.is_irreducible


def test_extension_arithmetic_matches_hand_oracle():
    f = f9()
    for a in range(9):
        for b in range(9):
            assert f.mul(a, b) == oracle9_mul(a, b)
            assert f.add(a, b) == oracle9_add(a, b)


def test_arith_examples():
    f3, f5 = GF(3), GF(5)
    assert f3.add(1, 2) == 0
    assert f5.inv(2) == 3
    t = f9().element((0, 1))
    assert f9().mul(t, t) == 2  # t^2 = -1 under the canonical modulus


def test_inverse_and_division():
    for f in [GF(3), GF(5), f9(), GF(3, 3)]:
        for a in f.units():
            assert f.mul(a, f.inv(a)) == 1
        with pytest.raises(ZeroDivisionError):
            f.inv(0)


def test_square_classes_partition():
    for f in [GF(3), GF(5), GF(7), f9(), GF(3, 3), GF(3, 4)]:
        squares = [a for a in f.units() if f.is_square(a)]
        assert len(squares) == (f.q - 1) // 2
        z = f.canonical_nonsquare()
        for a in f.units():
            assert f.is_square(a) != f.is_square(f.mul(a, z))


def test_is_square_euler_equivalence():
    for f in [GF(5), f9(), GF(3, 3)]:
        for a in f.units():
            assert f.is_square(a) == (f.pow(a, (f.q - 1) // 2) == 1)


def test_is_square_examples():
    assert GF(3).is_square(1) and not GF(3).is_square(2)
    assert GF(5).is_square(4)
    assert f9().is_square(2)  # 2 = -1 = t^2
    with pytest.raises(ValueError):
        GF(3).is_square(0)


def test_canonical_nonsquare_values():
    assert GF(3).canonical_nonsquare() == 2
    assert GF(5).canonical_nonsquare() == 2
    # in GF(9) the squares of the unit group are {1, 2, t, 2t}; the least
    # non-square in coefficient-lex order is 1 + t (encoded 4)
    f = f9()
    sq = {f.mul(a, a) for a in f.units()}
    assert sq == {1, 2, 3, 6}
    assert f.canonical_nonsquare() == 4
    assert f.coeffs(4) == (1, 1)


def test_sqrt_of_square():
    assert GF(5).sqrt_of_square(4) == 2
    assert GF(3).sqrt_of_square(1) == 1
    f = f9()
    assert f.sqrt_of_square(2) == f.element((0, 1))  # t, not 2t
    for fld in [GF(7), f, GF(3, 3)]:
        for a in fld.units():
            if fld.is_square(a):
                b = fld.sqrt_of_square(a)
                assert fld.mul(b, b) == a
    with pytest.raises(ValueError):
        GF(3).sqrt_of_square(2)


def test_frobenius():
    f = f9()
    t = f.element((0, 1))
    assert f.frobenius(t, 1) == f.neg(t)  # t^3 = -t
    for a in f.elements():
        assert f.frobenius(a, 0) == a
        assert f.frobenius(f.frobenius(a, 1), 1) == a
    # automorphism property, exhaustive at q <= 27
    for fld in [f, GF(3, 3)]:
        for j in range(fld.e):
            for a in fld.elements():
                for b in fld.elements():
                    assert fld.frobenius(fld.add(a, b), j) == fld.add(
                        fld.frobenius(a, j), fld.frobenius(b, j)
                    )
                    assert fld.frobenius(fld.mul(a, b), j) == fld.mul(
                        fld.frobenius(a, j), fld.frobenius(b, j)
                    )
    with pytest.raises(ValueError):
        f.frobenius(1, 2)


def test_minus_one_square_iff_q_mod_4():
    for f in [GF(3), GF(5), GF(7), GF(11), GF(13), f9(), GF(3, 3)]:
        assert f.is_square(f.neg(1)) == (f.q % 4 == 1)
        assert f.minus_one_is_square() == (f.q % 4 == 1)


@settings(max_examples=60)
@given(st.sampled_from([3, 5, 7, 11]), st.data())
def test_prime_field_ring_axioms(p, data):
    f = GF(p)
    a = data.draw(st.integers(0, p - 1))
    b = data.draw(st.integers(0, p - 1))
    c = data.draw(st.integers(0, p - 1))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.sub(a, b) == f.add(a, f.neg(b))
    assert f.pow(a, 3) == f.mul(a, f.mul(a, a))


def test_coeff_roundtrip():
    for f in [GF(3), f9(), GF(3, 3), GF(5, 2)]:
        for a in f.elements():
            assert f.element(f.coeffs(a)) == a


def test_parse_field():
    assert parse_field("3") == GF(3)
    assert parse_field("9") == f9()
    assert parse_field("3^2") == f9()
    assert parse_field("27") == GF(3, 3)
    with pytest.raises(ValueError):
        parse_field("2")
    with pytest.raises(ValueError):
        parse_field("12")
    f_alt = parse_field("9", modulus=(2, 2, 1))
    assert f_alt.modulus == (2, 2, 1) and f_alt != f9()


def test_primitive_unit():
    assert primitive_unit(GF(3)) == 2
    assert primitive_unit(GF(5)) == 2
    g = primitive_unit(f9())
    seen = set()
    x = 1
    for _ in range(8):
        x = f9().mul(x, g)
        seen.add(x)
    assert len(seen) == 8


def test_untabled_extension_field():
    # GF(3^6) = 729 exceeds the table cap; arithmetic must still be exact
    f = GF(3, 6)
    assert f._mul_table is None
    g = f.element((1, 1, 0, 0, 0, 0))
    assert f.mul(g, f.inv(g)) == 1
    assert f.frobenius(g, 3) == f.pow(g, 27)
