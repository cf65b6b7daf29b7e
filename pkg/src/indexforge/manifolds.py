"""Manifold descriptors: Pontryagin numbers, pairings and products.

A descriptor records what characteristic-number computations need: the
Pontryagin numbers ``p_I[M]`` (for the ``+1`` orientation), the Euler
characteristic, the signature and the spin flag.  Twists are line bundles
living on 2-dimensional factors (``CP1`` or ``T2``) of
``M = S_1 x ... x S_j x B``: each summand of a twist is the tuple of its
``c1``-integrals over ``S_1 .. S_j``.

JSON schema (one object per file)::

    {
      "name": "K3", "dim": 4, "orientation": 1,
      "pontryagin_numbers": {"1": -48},
      "euler_char": 24, "signature": -16, "spin": true,
      "surface_factors": 0,                      # optional
      "base": { ...descriptor of B... }           # optional, needs surface_factors
    }

Values may be integers or ``"num/den"`` strings.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product as cartesian
from math import comb
from pathlib import Path
from typing import Iterable, Mapping

from .algebra import GradedClass, Partition, ahat_class, l_class, partitions

__all__ = [
    "CP1_C1",
    "DescriptorError",
    "ManifoldDescriptor",
    "ManifoldLibrary",
    "pair",
    "product",
    "power",
    "reverse_orientation",
    "cp1_twist_power",
    "twist_ch_coefficient",
    "direct_sum",
    "load_descriptor",
    "save_descriptor",
    "descriptor_from_json",
    "descriptor_to_json",
    "check_gates",
    "point",
    "cp1",
    "torus",
    "cpn",
    "hpn",
    "k3",
    "default_library_path",
]

# c1-integral of the twisting line bundle on each CP1 factor (see cp1_twist_power)
CP1_C1 = -2

_FIELDS = {"name", "dim", "orientation", "pontryagin_numbers", "euler_char", "signature", "spin",
           "surface_factors", "base"}
_REQUIRED = {"name", "dim", "pontryagin_numbers", "euler_char", "spin"}


class DescriptorError(ValueError):
    """A malformed or inconsistent manifold descriptor."""


def _frac(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise DescriptorError(f"{where}: expected a rational, got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise DescriptorError(f"{where}: expected a rational, got {x!r}") from None


@dataclass(frozen=True, eq=False)
class ManifoldDescriptor:
    """Characteristic-number data of a closed oriented manifold.

    Attributes
    ----------
    name : str
    dim : int
    orientation : int
        ``+1`` or ``-1``; stored numbers refer to the ``+1`` orientation and
        every e-free pairing is multiplied by this sign.
    pontryagin_numbers : dict Partition -> Fraction
        Keyed by exactly the partitions of ``dim / 4`` (empty otherwise).
    euler_char : int
    signature : int or None
        For the ``+1`` orientation; ``None`` unless ``dim % 4 == 0``.
    spin : bool
    surface_factors : int
        Number ``j`` of leading 2-dimensional factors carrying twists.
    base : ManifoldDescriptor or None
        The remaining factor ``B`` (a point when omitted and ``dim == 2j``).
    """

    name: str
    dim: int
    pontryagin_numbers: dict = field(default_factory=dict)
    euler_char: int = 0
    signature: int | None = None
    spin: bool = False
    orientation: int = 1
    surface_factors: int = 0
    base: "ManifoldDescriptor | None" = None

    def __post_init__(self):
        if self.dim < 0:
            raise DescriptorError(f"{self.name}: dimension must be non-negative")
        if self.orientation not in (1, -1):
            raise DescriptorError(f"{self.name}: orientation must be +1 or -1, got {self.orientation}")
        nums = {Partition(k) if not isinstance(k, str) else Partition.parse(k): Fraction(v)
                for k, v in self.pontryagin_numbers.items()}
        expected = set(partitions(self.dim // 4)) if self.dim % 4 == 0 else set()
        if set(nums) != expected:
            missing = sorted(str(p) for p in expected - set(nums))
            extra = sorted(str(p) for p in set(nums) - expected)
            raise DescriptorError(
                f"{self.name}: pontryagin_numbers must be keyed by the partitions of {self.dim // 4 if self.dim % 4 == 0 else 'dim/4'}"
                + (f"; missing {missing}" if missing else "") + (f"; unexpected {extra}" if extra else "")
            )
        object.__setattr__(self, "pontryagin_numbers", nums)
        if self.dim % 4 and self.signature not in (None, 0):
            raise DescriptorError(f"{self.name}: signature is only defined when 4 divides dim")
        if self.surface_factors < 0 or 2 * self.surface_factors > self.dim:
            raise DescriptorError(f"{self.name}: surface_factors must lie in 0..dim/2")
        if self.base is not None and self.base.dim != self.dim - 2 * self.surface_factors:
            raise DescriptorError(f"{self.name}: base has dimension {self.base.dim}, expected {self.dim - 2 * self.surface_factors}")
        if self.surface_factors and self.base is None and self.dim != 2 * self.surface_factors:
            raise DescriptorError(f"{self.name}: a base descriptor is required when dim > 2 * surface_factors")

    @property
    def effective_signature(self) -> int:
        """Signature for the current orientation (0 when undefined)."""
        return self.orientation * (self.signature or 0)

    @property
    def base_or_point(self) -> "ManifoldDescriptor":
        if self.base is not None:
            return self.base
        if self.surface_factors:
            return point()
        return self

    def p_number(self, I) -> Fraction:
        """``p_I[M]`` for the current orientation."""
        I = Partition(I)
        if 4 * I.weight != self.dim:
            return Fraction(0)
        return self.orientation * self.pontryagin_numbers.get(I, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, ManifoldDescriptor):
            return NotImplemented
        return descriptor_to_json(self) == descriptor_to_json(other)

    def __repr__(self):
        sign = "" if self.orientation == 1 else "-"
        return f"ManifoldDescriptor({sign}{self.name}, dim={self.dim})"


# ---------------------------------------------------------------------------
# constructors

def point() -> ManifoldDescriptor:
    return ManifoldDescriptor("point", 0, {(): 1}, euler_char=1, signature=1, spin=True)


def cp1() -> ManifoldDescriptor:
    return ManifoldDescriptor("CP1", 2, {}, euler_char=2, spin=True, surface_factors=1)


def torus(n: int = 2) -> ManifoldDescriptor:
    """The flat torus ``T^n``; all characteristic numbers vanish."""
    nums = {p: 0 for p in partitions(n // 4)} if n % 4 == 0 else {}
    sig = 0 if n % 4 == 0 else None
    if n == 0:
        return point()
    return ManifoldDescriptor(f"T{n}", n, nums, euler_char=0, signature=sig, spin=True,
                              surface_factors=1 if n == 2 else 0)


def _numbers_from_total_class(coeffs: list[int], top: int) -> dict:
    """Pontryagin numbers from ``p_i = coeffs[i] u^i`` with ``u^top[M] = 1``."""
    out = {}
    for I in partitions(top):
        v = Fraction(1)
        for i in I:
            v *= coeffs[i] if i < len(coeffs) else 0
        out[I] = v
    return out


def hpn(j: int) -> ManifoldDescriptor:
    """Quaternionic projective space ``HP^j`` (dimension ``4j``).

    Total Pontryagin class ``(1+u)^(2j+2) (1+4u)^(-1)`` with ``u^j[HP^j] = 1``.
    """
    if j < 1:
        raise ValueError("HP^j needs j >= 1")
    coeffs = []
    for i in range(j + 1):
        coeffs.append(sum(comb(2 * j + 2, i - k) * (-4) ** k for k in range(i + 1)))
    return ManifoldDescriptor(f"HP{j}", 4 * j, _numbers_from_total_class(coeffs, j), euler_char=j + 1,
                              signature=1 if j % 2 == 0 else 0, spin=True)


def cpn(n: int) -> ManifoldDescriptor:
    """Complex projective space ``CP^n`` for even ``n`` (``p = (1+h^2)^(n+1)``)."""
    if n < 2 or n % 2:
        raise ValueError("CP^n is provided for even n >= 2 (4 | real dimension)")
    coeffs = [comb(n + 1, i) for i in range(n // 2 + 1)]
    return ManifoldDescriptor(f"CP{n}", 2 * n, _numbers_from_total_class(coeffs, n // 2),
                              euler_char=n + 1, signature=1, spin=False)


def k3() -> ManifoldDescriptor:
    return ManifoldDescriptor("K3", 4, {(1,): -48}, euler_char=24, signature=-16, spin=True)


# ---------------------------------------------------------------------------
# operations

def reverse_orientation(M: ManifoldDescriptor) -> ManifoldDescriptor:
    return replace(M, orientation=-M.orientation)


def _whitney_numbers(A: ManifoldDescriptor, B: ManifoldDescriptor) -> dict:
    """Raw Pontryagin numbers of ``A x B`` from ``p(A x B) = p(A) p(B)``."""
    n = A.dim + B.dim
    if n % 4:
        return {}
    out = {}
    for I in partitions(n // 4):
        total = Fraction(0)
        # each p_i splits as sum_{a+b=i} p_a(A) p_b(B); p_0 = 1
        for split in cartesian(*[range(i + 1) for i in I]):
            J = Partition(a for a in split if a)
            K = Partition(i - a for i, a in zip(I, split) if i - a)
            if 4 * J.weight != A.dim or 4 * K.weight != B.dim:
                continue
            total += A.pontryagin_numbers.get(J, 0) * B.pontryagin_numbers.get(K, 0)
        out[I] = total
    return out


def _dim0(M: ManifoldDescriptor) -> bool:
    return M.dim == 0


def product(A: ManifoldDescriptor, B: ManifoldDescriptor, name: str | None = None) -> ManifoldDescriptor:
    """The product ``A x B``.

    Pontryagin numbers follow the Whitney product formula; Euler
    characteristics and signatures multiply; spin iff both factors are spin.
    Surface factors of both sides are moved to the front.
    """
    if _dim0(A) and A.orientation == 1 and A.name == "point":
        return B if name is None else replace(B, name=name)
    if _dim0(B) and B.orientation == 1 and B.name == "point":
        return A if name is None else replace(A, name=name)
    nums = _whitney_numbers(A, B)
    n = A.dim + B.dim
    sig = None
    if n % 4 == 0:
        sig = (A.signature or 0) * (B.signature or 0)
    j = A.surface_factors + B.surface_factors
    base = None
    if j:
        base_a, base_b = A.base_or_point, B.base_or_point
        if A.surface_factors == 0:
            base_a = A
        if B.surface_factors == 0:
            base_b = B
        base = product(base_a, base_b)
        if base.dim == 0 and base.orientation == 1:
            base = None
    return ManifoldDescriptor(
        name or f"{A.name}*{B.name}",
        n,
        nums,
        euler_char=A.euler_char * B.euler_char,
        signature=sig,
        spin=A.spin and B.spin,
        orientation=A.orientation * B.orientation,
        surface_factors=j,
        base=base,
    )


def power(M: ManifoldDescriptor, k: int) -> ManifoldDescriptor:
    if k < 0:
        raise ValueError("power must be non-negative")
    out = point()
    for _ in range(k):
        out = product(out, M)
    return replace(out, name=f"{M.name}^{k}") if k > 1 else out


# ---------------------------------------------------------------------------
# twists

def cp1_twist_power(j: int, c1_integral: int | None = None) -> tuple:
    """Twist ``xi^{(x)j}`` on ``(CP1)^j x M``, with ``xi`` pulled back from each factor.

    One line-bundle summand whose ``c1`` integrates to ``CP1_C1`` (default
    ``-2``) over every CP1 factor.  ``j = 0`` is the trivial line bundle.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    a = CP1_C1 if c1_integral is None else c1_integral
    return ((a,) * j,)


def direct_sum(*twists) -> tuple:
    """Whitney sum of twists (concatenation of their line-bundle summands)."""
    out = []
    for t in twists:
        out.extend(t)
    return tuple(out)


def _elementary(values, k: int) -> Fraction:
    if k == 0:
        return Fraction(1)
    e = [Fraction(1)] + [Fraction(0)] * k
    for v in values:
        for i in range(k, 0, -1):
            e[i] += e[i - 1] * v
    return e[k]


def twist_ch_coefficient(twist, k: int) -> Fraction:
    """Total coefficient of ``ch_k``: ``sum_summands e_k(c1-integrals)``.

    For ``cp1_twist_power(j)`` this is ``binomial(j, k) * (-2)^k``.
    """
    return sum((_elementary(s, k) for s in twist), Fraction(0))


def _normalize_twist(twist, j: int) -> tuple:
    if twist is None:
        return ((0,) * j,)
    out = []
    for s in twist:
        s = tuple(Fraction(a) for a in s)
        if len(s) > j:
            raise ValueError(f"twist summand {s} has {len(s)} c1-integrals but the manifold has {j} surface factors")
        out.append(s + (Fraction(0),) * (j - len(s)))
    return tuple(out)


# ---------------------------------------------------------------------------
# pairing

def pair(c: GradedClass, M: ManifoldDescriptor, twist=None) -> Fraction:
    """``<c, [M]>`` for the degree-``dim M`` part of ``c``.

    Parameters
    ----------
    c : GradedClass
        Must have ambient dimension ``M.dim``.
    M : ManifoldDescriptor
    twist : sequence of tuples, optional
        Line-bundle summands (c1-integrals per surface factor) giving the
        values of the ``ch_k`` generators; the trivial line bundle if omitted.

    Notes
    -----
    ``p_I`` pairs to ``p_I[M]``, ``e`` to the Euler characteristic and
    ``ch_k p_I`` to ``[k = j] * sum_s prod(a_s) * p_I[B]`` on
    ``M = S_1 x .. x S_j x B``; ``ch_0`` is the rank.  Every e-free pairing
    carries the orientation sign.
    """
    if c.n != M.dim:
        raise ValueError(f"class lives in dimension {c.n} but {M.name} has dimension {M.dim}")
    j = M.surface_factors
    summands = _normalize_twist(twist, j)
    rank = len(summands)
    B = M.base_or_point
    total = Fraction(0)
    for mon, coeff in c.terms.items():
        if mon.degree(M.dim) != M.dim:
            continue
        if len(mon.ch) > 1:
            raise ValueError(f"monomial {mon.label()} has several ch factors; only one twist slot is supported")
        k = mon.ch[0] if mon.ch else None
        if mon.e:
            if M.euler_char is None:
                raise ValueError(f"{M.name}: Euler characteristic needed to pair {mon.label()}")
            value = Fraction(M.euler_char) * (rank if k == 0 else 1)
        elif k is None:
            value = M.p_number(mon.p)
        elif k == 0:
            value = rank * M.p_number(mon.p)
        elif k != j:
            value = Fraction(0)
        else:
            prod_a = sum((_prod(s) for s in summands), Fraction(0))
            value = M.orientation * prod_a * (B.pontryagin_numbers.get(mon.p, 0) if 4 * mon.p.weight == B.dim else 0)
        total += coeff * value
    return total


def _prod(values) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out


# ---------------------------------------------------------------------------
# gates and JSON

def check_gates(M: ManifoldDescriptor) -> None:
    """Raise ``DescriptorError`` unless ``L[M] = signature`` and, for spin ``M``, ``A-hat[M]`` is an integer."""
    if M.dim == 0 or M.dim % 2:
        return
    if M.dim % 4 == 0 and M.signature is not None:
        lval = pair(l_class(M.dim), M)
        if lval != M.effective_signature:
            raise DescriptorError(
                f"{M.name}: L-genus pairs to {lval} but the declared signature is {M.effective_signature}"
            )
    if M.spin:
        a = pair(ahat_class(M.dim), M)
        if a.denominator != 1:
            raise DescriptorError(f"{M.name}: declared spin but the A-hat genus {a} is not an integer")


def _num_json(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def descriptor_to_json(M: ManifoldDescriptor) -> dict:
    order = {p: i for i, p in enumerate(partitions(M.dim // 4))} if M.dim % 4 == 0 else {}
    out = {
        "name": M.name,
        "dim": M.dim,
        "orientation": M.orientation,
        "pontryagin_numbers": {str(p): _num_json(v) for p, v in
                               sorted(M.pontryagin_numbers.items(), key=lambda kv: order.get(kv[0], 0))},
        "euler_char": M.euler_char,
        "signature": M.signature,
        "spin": M.spin,
    }
    if M.surface_factors:
        out["surface_factors"] = M.surface_factors
    if M.base is not None:
        out["base"] = descriptor_to_json(M.base)
    return out


def descriptor_from_json(data, source: str = "<descriptor>", gate: bool = True) -> ManifoldDescriptor:
    """Validate a JSON object and build a descriptor; errors name the field."""
    if not isinstance(data, dict):
        raise DescriptorError(f"{source}: top level must be an object")
    unknown = sorted(set(data) - _FIELDS)
    if unknown:
        raise DescriptorError(f"{source}: unknown field(s) {unknown}")
    missing = sorted(_REQUIRED - set(data))
    if missing:
        raise DescriptorError(f"{source}: missing field(s) {missing}")
    name = data["name"]
    if not isinstance(name, str) or not re.fullmatch(r"[A-Za-z0-9_.+*^-]+", name):
        raise DescriptorError(f"{source}.name: expected a name of letters, digits and '_.+-*^'")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise DescriptorError(f"{source}.dim: expected a non-negative integer")
    orientation = data.get("orientation", 1)
    if orientation not in (1, -1) or isinstance(orientation, bool):
        raise DescriptorError(f"{source}.orientation: expected 1 or -1")
    raw = data["pontryagin_numbers"]
    if not isinstance(raw, dict):
        raise DescriptorError(f"{source}.pontryagin_numbers: expected an object keyed by partitions")
    nums = {}
    for key, value in raw.items():
        try:
            p = Partition.parse(key)
        except ValueError as exc:
            raise DescriptorError(f"{source}.pontryagin_numbers[{key!r}]: {exc}") from None
        if p in nums:
            raise DescriptorError(f"{source}.pontryagin_numbers[{key!r}]: duplicate partition")
        nums[p] = _frac(value, f"{source}.pontryagin_numbers[{key!r}]")
    chi = data["euler_char"]
    if not isinstance(chi, int) or isinstance(chi, bool):
        raise DescriptorError(f"{source}.euler_char: expected an integer")
    sig = data.get("signature")
    if sig is not None and (not isinstance(sig, int) or isinstance(sig, bool)):
        raise DescriptorError(f"{source}.signature: expected an integer or null")
    spin = data["spin"]
    if not isinstance(spin, bool):
        raise DescriptorError(f"{source}.spin: expected true or false")
    j = data.get("surface_factors", 0)
    if not isinstance(j, int) or isinstance(j, bool) or j < 0:
        raise DescriptorError(f"{source}.surface_factors: expected a non-negative integer")
    base = None
    if "base" in data and data["base"] is not None:
        base = descriptor_from_json(data["base"], f"{source}.base", gate=False)
    M = ManifoldDescriptor(name, dim, nums, euler_char=chi, signature=sig, spin=spin,
                           orientation=orientation, surface_factors=j, base=base)
    if gate:
        check_gates(M)
    return M


def load_descriptor(path) -> ManifoldDescriptor:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DescriptorError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return descriptor_from_json(data, str(path))


def save_descriptor(M: ManifoldDescriptor, path) -> None:
    Path(path).write_text(json.dumps(descriptor_to_json(M), indent=2) + "\n")


# ---------------------------------------------------------------------------
# library

def default_library_path() -> Path:
    """``$INDEXFORGE_MANIFOLDS`` if set, else the descriptors shipped with the package."""
    env = os.environ.get("INDEXFORGE_MANIFOLDS")
    if env:
        return Path(env)
    return Path(__file__).parent / "data" / "manifolds"


class ManifoldLibrary:
    """Named descriptors loaded from a directory of ``*.json`` files.

    Names resolve to a loaded file first, then to the built-in families
    ``point``, ``T<n>``, ``HP<j>`` and ``CP<n>``.  ``A*B`` forms products and
    ``A^k`` powers, e.g. ``"CP1^2*K3"``.
    """

    def __init__(self, path=None):
        self.path = Path(path) if path is not None else default_library_path()
        if not self.path.is_dir():
            raise DescriptorError(f"{self.path}: manifold library directory not found")
        self._items: dict[str, ManifoldDescriptor] = {}
        for file in sorted(self.path.glob("*.json")):
            M = load_descriptor(file)
            if M.name in self._items:
                raise DescriptorError(f"{file}: duplicate manifold name {M.name!r}")
            self._items[M.name] = M

    def names(self) -> list[str]:
        return list(self._items)

    def __iter__(self):
        return iter(self._items.values())

    def __contains__(self, name):
        try:
            self.get(name)
        except KeyError:
            return False
        return True

    def _atom(self, name: str) -> ManifoldDescriptor:
        if name in self._items:
            return self._items[name]
        if name == "point":
            return point()
        m = re.fullmatch(r"(T|HP|CP)(\d+)", name)
        if m:
            kind, k = m.group(1), int(m.group(2))
            try:
                if kind == "T" and k % 2 == 0:
                    return torus(k)
                if kind == "HP":
                    return hpn(k)
                if kind == "CP":
                    return cp1() if k == 1 else cpn(k)
            except ValueError:
                pass
        raise KeyError(f"unknown manifold {name!r}; known: {', '.join(self.names())}")

    def get(self, spec: str) -> ManifoldDescriptor:
        """Resolve a name or product expression."""
        spec = spec.strip()
        if not spec:
            raise KeyError("empty manifold name")
        if spec in self._items:
            return self._items[spec]
        out = None
        for factor in spec.split("*"):
            factor = factor.strip()
            m = re.fullmatch(r"(.+?)\^(\d+)", factor)
            M = power(self._atom(m.group(1)), int(m.group(2))) if m else self._atom(factor)
            out = M if out is None else product(out, M)
        return replace(out, name=spec) if "*" in spec or "^" in spec else out
