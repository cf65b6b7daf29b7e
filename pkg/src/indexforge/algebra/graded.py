"""The truncated graded ring of characteristic classes.

Generators and degrees, for ambient dimension ``n = 2l``:

* ``p_i`` (Pontryagin class), degree ``4i``, ``1 <= i <= l``
* ``e`` (Euler class), degree ``n``; ``e * e`` is rewritten to ``p_l``
* ``ch_k`` (Chern character component of a twist bundle), degree ``2k``

Everything above ``max_degree`` (default ``n``) is dropped.
"""
from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import NamedTuple

from .partitions import Partition


class Monomial(NamedTuple):
    p: Partition = Partition()
    e: int = 0
    ch: tuple = ()

    @classmethod
    def make(cls, p=(), e: int = 0, ch=()) -> "Monomial":
        return cls(Partition(p), int(e), tuple(sorted((int(k) for k in ch), reverse=True)))

    def degree(self, n: int) -> int:
        return 4 * sum(self.p) + n * self.e + 2 * sum(self.ch)

    def label(self) -> str:
        factors = []
        for k in sorted(set(self.ch), reverse=True):
            m = self.ch.count(k)
            factors.append(f"ch{k}" + (f"^{m}" if m > 1 else ""))
        if self.e:
            factors.append("e" + (f"^{self.e}" if self.e > 1 else ""))
        for i in sorted(set(self.p), reverse=True):
            m = self.p.count(i)
            factors.append(f"p{i}" + (f"^{m}" if m > 1 else ""))
        return "*".join(factors) if factors else "1"

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        text = text.strip()
        if text == "1":
            return cls()
        p, ch, e = [], [], 0
        for factor in text.split("*"):
            m = re.fullmatch(r"(ch|p|e)(\d*)(?:\^(\d+))?", factor.strip())
            if not m:
                raise ValueError(f"malformed monomial factor {factor!r}")
            kind, idx, power = m.group(1), m.group(2), int(m.group(3) or 1)
            if kind == "e":
                if idx:
                    raise ValueError(f"malformed monomial factor {factor!r}")
                e += power
            elif not idx:
                raise ValueError(f"missing index in {factor!r}")
            elif kind == "p":
                p += [int(idx)] * power
            else:
                ch += [int(idx)] * power
        return cls.make(p, e, ch)


ONE = Monomial()


def _sort_key(mon: Monomial, n: int):
    return (mon.degree(n), [-k for k in mon.ch], mon.e, [-i for i in mon.p])


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class GradedClass:
    """An element of the truncated characteristic-class ring.

    Values are immutable; all operations return new instances.

    Parameters
    ----------
    n : int
        Ambient (even) dimension; fixes the degree of ``e`` and the range of
        the Pontryagin generators.
    terms : mapping Monomial -> rational, optional
    max_degree : int, optional
        Truncation degree, ``n`` unless given.  Use ``2 * n`` when ``e * e``
        must survive (e.g. before dividing by the Euler class).
    """

    __slots__ = ("n", "max_degree", "_terms")

    def __init__(self, n: int, terms=None, max_degree: int | None = None):
        if n < 0 or n % 2:
            raise ValueError(f"ambient dimension must be even and non-negative, got {n}")
        self.n = n
        self.max_degree = n if max_degree is None else int(max_degree)
        l = n // 2
        out: dict[Monomial, Fraction] = {}
        for mon, c in (terms or {}).items():
            c = _q(c)
            if not c:
                continue
            mon = self._normal(Monomial.make(*mon) if not isinstance(mon, Monomial) else mon, l)
            if mon is None or mon.degree(n) > self.max_degree:
                continue
            out[mon] = out.get(mon, 0) + c
        self._terms = MappingProxyType({m: c for m, c in out.items() if c})

    @staticmethod
    def _normal(mon: Monomial, l: int):
        if any(i > l for i in mon.p):
            raise ValueError(f"p_i with i > {l} is not a generator in dimension {2 * l}")
        if mon.e and l == 0:
            raise ValueError("no Euler class in dimension 0")
        if mon.e >= 2:
            q, r = divmod(mon.e, 2)
            mon = Monomial(mon.p + Partition((l,) * q), r, mon.ch)
        return mon

    # constructors -------------------------------------------------------------
    @classmethod
    def scalar(cls, c, n: int, max_degree: int | None = None) -> "GradedClass":
        return cls(n, {ONE: c}, max_degree)

    @classmethod
    def one(cls, n: int, max_degree: int | None = None) -> "GradedClass":
        return cls.scalar(1, n, max_degree)

    @classmethod
    def zero(cls, n: int, max_degree: int | None = None) -> "GradedClass":
        return cls(n, {}, max_degree)

    @classmethod
    def p(cls, i: int, n: int, max_degree: int | None = None) -> "GradedClass":
        return cls(n, {Monomial.make((i,)): 1}, max_degree)

    @classmethod
    def euler(cls, n: int, max_degree: int | None = None) -> "GradedClass":
        return cls(n, {Monomial.make(e=1): 1}, max_degree)

    @classmethod
    def ch(cls, k: int, n: int, max_degree: int | None = None) -> "GradedClass":
        return cls(n, {Monomial.make(ch=(k,)): 1}, max_degree)

    @classmethod
    def chern_character(cls, n: int, max_degree: int | None = None) -> "GradedClass":
        """The generic twist character ``ch_0 + ch_1 + ...`` up to the cap."""
        top = (n if max_degree is None else max_degree) // 2
        return cls(n, {Monomial.make(ch=(k,)): 1 for k in range(top + 1)}, max_degree)

    # access -------------------------------------------------------------------
    @property
    def terms(self):
        return self._terms

    def items(self):
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0], self.n))

    def coefficient(self, mon) -> Fraction:
        if not isinstance(mon, Monomial):
            mon = Monomial.parse(mon) if isinstance(mon, str) else Monomial.make(*mon)
        return self._terms.get(mon, Fraction(0))

    def __getitem__(self, label: str) -> Fraction:
        return self.coefficient(label)

    def is_zero(self) -> bool:
        return not self._terms

    def homogeneous(self, d: int) -> "GradedClass":
        return GradedClass(self.n, {m: c for m, c in self._terms.items() if m.degree(self.n) == d}, self.max_degree)

    def top(self) -> "GradedClass":
        """The degree-``n`` part."""
        return self.homogeneous(self.n)

    def truncate(self, d: int) -> "GradedClass":
        if d > self.max_degree:
            raise ValueError("cannot raise the truncation degree of a class")
        return GradedClass(self.n, self._terms, d)

    def degree0(self) -> Fraction:
        return self._terms.get(ONE, Fraction(0))

    def uses_euler(self) -> bool:
        return any(m.e for m in self._terms)

    def uses_twist(self) -> bool:
        return any(m.ch for m in self._terms)

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            if other.n != self.n:
                raise ValueError(f"ambient dimensions differ: {self.n} vs {other.n}")
            return other
        return GradedClass.scalar(other, self.n, self.max_degree)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return GradedClass(self.n, terms, min(self.max_degree, other.max_degree))

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.n, {m: -c for m, c in self._terms.items()}, self.max_degree)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedClass):
            c = _q(other)
            return GradedClass(self.n, {m: c * v for m, v in self._terms.items()}, self.max_degree)
        other = self._coerce(other)
        cap = min(self.max_degree, other.max_degree)
        n, l = self.n, self.n // 2
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            d1 = m1.degree(n)
            for m2, c2 in other._terms.items():
                if d1 + m2.degree(n) > cap:
                    continue
                mon = self._normal(
                    Monomial(m1.p + m2.p, m1.e + m2.e, tuple(sorted(m1.ch + m2.ch, reverse=True))), l
                )
                out[mon] = out.get(mon, 0) + c1 * c2
        return GradedClass(n, out, cap)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = GradedClass.one(self.n, self.max_degree)
        for _ in range(k):
            result = result * self
        return result

    def exp(self) -> "GradedClass":
        """``exp`` of a class without degree-0 part (a finite sum after truncation)."""
        if self.degree0():
            raise ValueError("exp needs a class with vanishing degree-0 part")
        result = GradedClass.one(self.n, self.max_degree)
        term = result
        k = 1
        while True:
            term = term * self * Fraction(1, k)
            if term.is_zero():
                return result
            result = result + term
            k += 1

    def inverse(self) -> "GradedClass":
        """Multiplicative inverse; needs an invertible degree-0 part."""
        c0 = self.degree0()
        if not c0:
            raise ZeroDivisionError("degree-0 part vanishes")
        nil = 1 - self * (1 / c0)
        result = GradedClass.one(self.n, self.max_degree)
        power = result
        while True:
            power = power * nil
            if power.is_zero():
                return result * (1 / c0)
            result = result + power

    def div_euler(self) -> "GradedClass":
        """Divide by the Euler class.

        Every monomial must contain exactly one factor ``e``; the quotient
        lives in a ring capped ``n`` degrees lower.
        """
        if self.n == 0:
            raise ValueError("no Euler class in dimension 0")
        bad = [m.label() for m in self._terms if m.e != 1]
        if bad:
            raise ValueError(f"class is not divisible by e; offending monomials: {bad}")
        return GradedClass(
            self.n, {Monomial(m.p, 0, m.ch): c for m, c in self._terms.items()}, self.max_degree - self.n
        )

    def flip_euler(self) -> "GradedClass":
        """Substitute ``e -> -e`` (orientation reversal of the Euler class)."""
        return GradedClass(self.n, {m: (-c if m.e else c) for m, c in self._terms.items()}, self.max_degree)

    def __eq__(self, other):
        if isinstance(other, GradedClass):
            return self.n == other.n and dict(self._terms) == dict(other._terms)
        if isinstance(other, (int, Fraction)):
            return dict(self._terms) == ({ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    # presentation -------------------------------------------------------------
    def to_json(self) -> dict[str, str]:
        """Monomial label -> exact rational string, in canonical order."""
        return {m.label(): str(c) for m, c in self.items()}

    @classmethod
    def from_json(cls, data: dict, n: int, max_degree: int | None = None) -> "GradedClass":
        return cls(n, {Monomial.parse(k): Fraction(v) for k, v in data.items()}, max_degree)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            if m == ONE:
                parts.append(str(c))
            elif c == 1:
                parts.append(m.label())
            elif c == -1:
                parts.append("-" + m.label())
            else:
                parts.append(f"({c})*{m.label()}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"GradedClass(n={self.n}, {self})"
