"""Index evaluation, coefficient matching and Thom matrices.

An index density in dimension ``n`` is linear in the twist character::

    omega_n = sum_k ch_k(xi) * sum_I b_{k,I} p_I,      |I| = (n - 2k) / 4.

:func:`coefficient_match` recovers the ``b_{k,I}`` from index values alone by
evaluating on ``(CP1)^k x M_J`` twisted by ``xi^{(x)k}``, where ``M_J`` runs
over products of generator manifolds; nonsingularity of the Thom matrices
makes the answer unique.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from . import manifolds as mf
from .algebra import GradedClass, Monomial, Partition, partitions
from .linalg import SingularMatrixError, determinant, solve
from .manifolds import ManifoldDescriptor, pair
from .operators import OperatorSpec, twisted_integrand

__all__ = [
    "StructureError",
    "CoefficientVector",
    "coefficient_keys",
    "evaluate_index",
    "index_oracle",
    "induced_oracle",
    "coefficient_match",
    "default_generators",
    "generator_product",
    "thom_matrix",
    "thom_determinant",
    "random_evaluations",
]

IndexOracle = Callable[[ManifoldDescriptor, tuple], Fraction]


class StructureError(ValueError):
    """The manifold lacks the structure the operator needs (e.g. a spin structure)."""


@lru_cache(maxsize=None)
def _twisted(spec: OperatorSpec) -> GradedClass:
    return twisted_integrand(spec)


def evaluate_index(spec: OperatorSpec, M: ManifoldDescriptor, twist=None) -> Fraction:
    """``<ch(twist) * integrand(spec), [M]>``.

    Raises
    ------
    ValueError
        When ``M.dim != spec.n``.
    StructureError
        When ``spec`` needs a spin structure and ``M`` is not spin.
    """
    if M.dim != spec.n:
        raise ValueError(f"{spec.name} is defined in dimension {spec.n}, but {M.name} has dimension {M.dim}")
    if spec.requires_spin and not M.spin:
        raise StructureError(f"{spec.name} needs a spin manifold; {M.name} is not spin")
    return pair(_twisted(spec), M, twist)


def index_oracle(spec: OperatorSpec) -> IndexOracle:
    return lambda M, twist=None: evaluate_index(spec, M, twist)


# ---------------------------------------------------------------------------
# coefficient vectors

def coefficient_keys(n: int) -> list[tuple[int, Partition]]:
    """``(k, I)`` with ``|I| = (n - 2k)/4``, by decreasing ``k`` then partition order."""
    keys = []
    for k in range(n // 2, -1, -1):
        if (n - 2 * k) % 4 == 0:
            keys.extend((k, I) for I in partitions((n - 2 * k) // 4))
    return keys


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """The coefficients ``b_{k,I}`` of an index density."""

    n: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        keys = set(coefficient_keys(self.n))
        clean = {}
        for (k, I), v in self.entries.items():
            key = (int(k), Partition(I))
            if key not in keys:
                raise ValueError(f"(k={k}, I={Partition(I)}) is not a coefficient slot in dimension {self.n}")
            clean[key] = Fraction(v)
        object.__setattr__(self, "entries", {key: clean.get(key, Fraction(0)) for key in coefficient_keys(self.n)})

    @classmethod
    def from_class(cls, c: GradedClass) -> "CoefficientVector":
        """Read off ``b_{k,I}`` from the top-degree part of a twisted class."""
        entries = {}
        for mon, v in c.top().terms.items():
            if mon.e or len(mon.ch) != 1:
                raise ValueError(f"monomial {mon.label()} is not of the form ch_k * p_I")
            entries[(mon.ch[0], mon.p)] = v
        return cls(c.n, entries)

    def as_class(self) -> GradedClass:
        return GradedClass(self.n, {Monomial(I, 0, (k,)): v for (k, I), v in self.entries.items()})

    def nonzero(self) -> dict:
        return {key: v for key, v in self.entries.items() if v}

    def to_json(self) -> list[dict]:
        return [{"k": k, "partition": str(I), "value": str(v)} for (k, I), v in self.entries.items()]

    def __eq__(self, other):
        return isinstance(other, CoefficientVector) and self.n == other.n and self.entries == other.entries

    def __repr__(self):
        body = ", ".join(f"(k={k}, {I}): {v}" for (k, I), v in self.nonzero().items())
        return f"CoefficientVector(n={self.n}, {{{body}}})"


def induced_oracle(vector: CoefficientVector) -> IndexOracle:
    """The index functional of the density ``sum b_{k,I} ch_k p_I``."""
    c = vector.as_class()
    return lambda M, twist=None: pair(c, M, twist)


# ---------------------------------------------------------------------------
# generators and Thom matrices

def default_generators(kmax: int) -> dict[int, ManifoldDescriptor]:
    """``{1: K3, i: HP^i}`` for ``i = 2..kmax``."""
    gens = {1: mf.k3()} if kmax >= 1 else {}
    for i in range(2, kmax + 1):
        gens[i] = mf.hpn(i)
    return gens


def generator_product(J: Partition, generators: Mapping[int, ManifoldDescriptor]) -> ManifoldDescriptor:
    """``M_J = M_{j_1} x ... x M_{j_r}`` (a point for the empty partition)."""
    M = mf.point()
    for i in J:
        if i not in generators:
            raise ValueError(f"no generator manifold of dimension {4 * i} supplied")
        if generators[i].dim != 4 * i:
            raise ValueError(f"generator for i = {i} has dimension {generators[i].dim}, expected {4 * i}")
        M = mf.product(M, generators[i])
    return M


def thom_matrix(k: int, generators: Mapping[int, ManifoldDescriptor] | None = None) -> list[list[Fraction]]:
    """``(p_I[M_J])`` with rows ``J`` and columns ``I`` over the partitions of ``k``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    gens = default_generators(k) if generators is None else generators
    parts = partitions(k)
    rows = []
    for J in parts:
        M = generator_product(J, gens)
        rows.append([M.p_number(I) for I in parts])
    return rows


def thom_determinant(k: int, generators=None) -> Fraction:
    return determinant(thom_matrix(k, generators))


def coefficient_match(oracle: IndexOracle, n: int, generators=None, c1_integral: int | None = None) -> CoefficientVector:
    """Recover the density coefficients of an index functional.

    For each ``k`` with ``(n - 2k)/4 = w`` a non-negative integer, the
    oracle is evaluated on ``(CP1)^k x M_J`` (``J`` a partition of ``w``)
    twisted by ``xi^{(x)k}``; this gives ``c^k * sum_I b_{k,I} p_I[M_J]``
    with ``c = CP1_C1`` (or ``c1_integral``), a linear system whose matrix
    is the Thom matrix.  Any nonzero ``c`` gives the same vector.

    Raises
    ------
    SingularMatrixError
        If a Thom block is singular; the message names the block.
    """
    gens = default_generators(n // 4) if generators is None else generators
    c = Fraction(mf.CP1_C1 if c1_integral is None else c1_integral)
    if not c:
        raise ValueError("the CP1 twist must have nonzero c1-integral")
    entries = {}
    for k in range(n // 2, -1, -1):
        if (n - 2 * k) % 4:
            continue
        w = (n - 2 * k) // 4
        parts = partitions(w)
        surfaces = mf.power(mf.cp1(), k)
        twist = mf.cp1_twist_power(k, c)
        matrix, rhs = [], []
        for J in parts:
            MJ = generator_product(J, gens)
            M = mf.product(surfaces, MJ) if k else MJ
            rhs.append(Fraction(oracle(M, twist)) / c**k)
            matrix.append([MJ.p_number(I) for I in parts])
        try:
            sol = solve(matrix, rhs)
        except SingularMatrixError as exc:
            raise SingularMatrixError(f"Thom block k={k}, partitions of {w}: {exc}") from None
        for I, v in zip(parts, sol):
            entries[(k, I)] = v
    return CoefficientVector(n, entries)


def random_evaluations(n: int, count: int = 20, seed: int = 0, spin_only: bool = True,
                       generators=None) -> list[tuple[ManifoldDescriptor, tuple]]:
    """Random twisted generator products for held-out validation.

    Each sample is ``S_1 x .. x S_k x M_J`` with surfaces drawn from
    ``{CP1, T2}``, ``M_J`` a product of generators (alternatives for
    ``i = 1, 2`` are drawn from ``{K3, CP2}`` and ``{HP2, K3 x K3}``), random
    orientation and 1-3 line-bundle summands with random ``c1``-integrals.
    """
    rng = random.Random(seed)
    ks = [k for k in range(n // 2 + 1) if (n - 2 * k) % 4 == 0]
    gens = default_generators(n // 4) if generators is None else generators
    alt = {1: [gens.get(1, mf.k3())] + ([] if spin_only else [mf.cpn(2)])}
    if n // 4 >= 2:
        alt[2] = [gens.get(2, mf.hpn(2)), mf.product(mf.k3(), mf.k3())]
    out = []
    for _ in range(count):
        k = rng.choice(ks)
        J = rng.choice(partitions((n - 2 * k) // 4))
        M = mf.point()
        for _s in range(k):
            M = mf.product(M, rng.choice([mf.cp1(), mf.torus(2)]))
        for i in J:
            M = mf.product(M, rng.choice(alt.get(i, [gens[i]])))
        if rng.random() < 0.5:
            M = mf.reverse_orientation(M)
        twist = tuple(tuple(rng.randint(-4, 4) for _ in range(k)) for _ in range(rng.randint(1, 3)))
        out.append((M, twist))
    return out
