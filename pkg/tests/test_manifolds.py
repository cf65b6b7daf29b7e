import json
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from indexforge.algebra import GradedClass, Partition, ahat_class, l_class, partitions
from indexforge.manifolds import (
    CP1_C1,
    DescriptorError,
    ManifoldDescriptor,
    ManifoldLibrary,
    cp1,
    cp1_twist_power,
    cpn,
    descriptor_from_json,
    descriptor_to_json,
    direct_sum,
    hpn,
    k3,
    load_descriptor,
    pair,
    point,
    power,
    product,
    reverse_orientation,
    save_descriptor,
    torus,
    twist_ch_coefficient,
)

P1 = GradedClass.p(1, 4)


def test_pairing_examples():
    assert pair(P1, k3()) == -48
    assert pair(GradedClass.one(4), k3()) == 0
    hp2 = (GradedClass.p(2, 8) * 7 - GradedClass.p(1, 8) ** 2)
    assert pair(hp2, hpn(2)) / 45 == 1
    assert pair(GradedClass.euler(4), k3()) == 24


def test_pairing_dimension_mismatch():
    with pytest.raises(ValueError):
        pair(GradedClass.p(1, 8), k3())


def test_reverse_orientation():
    assert pair(P1, reverse_orientation(k3())) == 48
    assert reverse_orientation(reverse_orientation(k3())) == k3()
    assert pair(l_class(8), reverse_orientation(hpn(2))) == -1
    assert hpn(2).p_number((1, 1)) == 4 and hpn(2).p_number((2,)) == 7
    s2 = GradedClass.p(1, 8) ** 2 - GradedClass.p(2, 8) * 2
    assert pair(s2, hpn(2)) == -10


def test_product_examples():
    assert product(k3(), point()) == k3()
    kk = product(k3(), k3())
    assert kk.p_number((2,)) == 2304
    assert kk.p_number((1, 1)) == 4608
    m = product(power(cp1(), 3), k3())
    assert m.dim == 10 and m.surface_factors == 3
    assert m.base == k3()


# independent oracle: p(A x B) = p(A) p(B) expanded in truncated cohomology rings

def _factor(name, tag=""):
    """``(generator, top power, quarter-degree of generator, total class, descriptor)``."""
    if name == "K3":
        w = sp.Symbol(f"w{tag}")
        return w, 1, 1, 1 - 48 * w, k3()
    if name in ("CP2", "CP4"):
        n = int(name[2:])
        h = sp.Symbol(f"h{tag}")
        return h, n, sp.Rational(1, 2), sp.expand((1 + h**2) ** (n + 1)), cpn(n)
    if name.startswith("HP"):
        j = int(name[2:])
        u = sp.Symbol(f"u{tag}")
        total = sp.series((1 + u) ** (2 * j + 2) / (1 + 4 * u), u, 0, j + 1).removeO()
        return u, j, 1, sp.expand(total), hpn(j)
    raise KeyError(name)


def _oracle_numbers(names):
    factors = [_factor(n, str(i)) for i, n in enumerate(names)]
    t = sp.Symbol("t")
    total = sp.Integer(1)
    for var, _, weight, p, _ in factors:
        total = sp.expand(total * p.subs(var, var * t ** int(4 * weight)))
    dim = sum(4 * top * weight for _, top, weight, _, _ in factors)
    poly = sp.Poly(total, t)
    pclass = {i: poly.coeff_monomial(t ** (4 * i)) for i in range(int(dim) // 4 + 1)}
    gens = [f[0] for f in factors]
    topmon = sp.Mul(*[var**top for var, top, _, _, _ in factors])
    out = {}
    for I in partitions(int(dim) // 4):
        prod = sp.Mul(*[pclass[i] for i in I])
        out[I] = Fraction(str(sp.Poly(sp.expand(prod), *gens).coeff_monomial(topmon)))
    return out


@pytest.mark.parametrize("names", [("K3", "K3"), ("HP2", "HP2"), ("CP2", "CP2"), ("K3", "HP2"),
                                   ("K3", "K3", "K3"), ("CP2", "HP3"), ("CP4", "K3"), ("HP2", "K3", "CP2")])
def test_whitney_products_against_sympy(names):
    M = point()
    for n in names:
        M = product(M, _factor(n)[4])
    expected = _oracle_numbers(names)
    assert M.pontryagin_numbers == expected


def test_hpn_and_cpn_signature_gates():
    for j in range(1, 5):
        assert pair(l_class(4 * j), hpn(j)) == (1 if j % 2 == 0 else 0)
        assert pair(ahat_class(4 * j), hpn(j)) == 0
    for n in (2, 4, 6):
        assert pair(l_class(2 * n), cpn(n)) == 1


def test_cp1_twist_power():
    assert cp1_twist_power(0) == ((),)
    assert twist_ch_coefficient(cp1_twist_power(2), 1) == -4
    assert twist_ch_coefficient(cp1_twist_power(3), 3) == -8
    for j in range(6):
        for k in range(j + 2):
            from math import comb
            assert twist_ch_coefficient(cp1_twist_power(j), k) == (comb(j, k) * CP1_C1**k if k <= j else 0)


def test_twist_pairing_on_surfaces():
    M = product(cp1(), k3())
    c = GradedClass.ch(1, 6) * GradedClass.p(1, 6)
    assert pair(c, M, ((3,),)) == 3 * -48
    assert pair(c, M, direct_sum(((3,),), ((-1,),))) == 2 * -48
    assert pair(c, reverse_orientation(M), ((3,),)) == 3 * 48
    with pytest.raises(ValueError):
        pair(c, M, ((1, 2),))
    rank = GradedClass.ch(0, 4) * GradedClass.p(1, 4)
    assert pair(rank, k3(), ((), (), ())) == 3 * -48


@given(st.sampled_from(["K3", "HP2", "CP2", "HP3"]), st.sampled_from(["K3", "CP2", "HP2"]))
def test_orientation_reversal_negates_pairings(a, b):
    A, B = _factor(a)[4], _factor(b)[4]
    M = product(A, B)
    for c in (l_class(M.dim), ahat_class(M.dim)):
        assert pair(c, reverse_orientation(M)) == -pair(c, M)
        assert pair(c, product(reverse_orientation(A), B)) == -pair(c, M)


@given(st.sampled_from(["K3", "HP2", "CP2", "HP3", "CP4"]), st.sampled_from(["K3", "CP2", "HP2"]))
def test_product_signature_multiplicative(a, b):
    A, B = _factor(a)[4], _factor(b)[4]
    M = product(A, B)
    assert pair(l_class(M.dim), M) == A.signature * B.signature == M.signature


def test_json_roundtrip(tmp_path):
    for M in (k3(), hpn(2), product(cp1(), k3()), reverse_orientation(cpn(2)), torus(2)):
        save_descriptor(M, tmp_path / "m.json")
        assert load_descriptor(tmp_path / "m.json") == M


def _k3_json(**changes):
    data = descriptor_to_json(k3())
    data.update(changes)
    return data


def test_schema_errors(tmp_path):
    with pytest.raises(DescriptorError, match="unknown field"):
        descriptor_from_json(_k3_json(colour="red"))
    data = _k3_json()
    del data["spin"]
    with pytest.raises(DescriptorError, match="missing"):
        descriptor_from_json(data)
    with pytest.raises(DescriptorError, match="partitions"):
        descriptor_from_json({"name": "X", "dim": 8, "pontryagin_numbers": {"2": 7}, "euler_char": 3, "spin": True})
    with pytest.raises(DescriptorError, match="signature"):
        descriptor_from_json(_k3_json(signature=-15))
    with pytest.raises(DescriptorError, match="A-hat"):
        descriptor_from_json({"name": "CP2", "dim": 4, "pontryagin_numbers": {"1": 3}, "euler_char": 3,
                              "signature": 1, "spin": True})
    with pytest.raises(DescriptorError, match="pontryagin_numbers\\['x'\\]"):
        descriptor_from_json(_k3_json(pontryagin_numbers={"x": 1}))
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "K3",\n "dim": }')
    with pytest.raises(DescriptorError, match="line 2"):
        load_descriptor(bad)


def test_shipped_library_passes_gates():
    lib = ManifoldLibrary()
    assert {"point", "CP1", "T2", "CP2", "K3", "HP2", "HP3", "T4", "T6", "T8"} <= set(lib.names())
    assert lib.get("K3") == k3()
    assert lib.get("CP1^2*K3").pontryagin_numbers == product(product(cp1(), cp1()), k3()).pontryagin_numbers
    assert lib.get("HP4") == hpn(4)
    with pytest.raises(KeyError):
        lib.get("Enriques")


def test_library_from_env(tmp_path, monkeypatch):
    save_descriptor(k3(), tmp_path / "k3.json")
    monkeypatch.setenv("INDEXFORGE_MANIFOLDS", str(tmp_path))
    assert ManifoldLibrary().names() == ["K3"]
    monkeypatch.setenv("INDEXFORGE_MANIFOLDS", str(tmp_path / "nope"))
    with pytest.raises(DescriptorError):
        ManifoldLibrary()


def test_descriptor_validation():
    with pytest.raises(DescriptorError):
        ManifoldDescriptor("X", 8, {Partition((2,)): 1}, euler_char=0)
    with pytest.raises(DescriptorError):
        ManifoldDescriptor("X", 4, {(1,): 0}, orientation=2)
    assert torus(4).pontryagin_numbers == {Partition((1,)): 0}
