"""Dominant weights of Spin(n) and SO(n), dimensions and elliptic gradients.

Weights are tuples of ``m = n // 2`` rationals, all integers or all
half-integers.  Targets ``eps`` in the decomposition of ``R^n (x) V_lambda``
are encoded as integers: ``+i`` for ``+eps_i``, ``-i`` for ``-eps_i`` and
``0`` for the zero weight (odd ``n`` only).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable

__all__ = [
    "DominantWeight",
    "GradientSelector",
    "is_dominant",
    "weyl_dim",
    "fegan_targets",
    "shift",
    "classify_minimal_elliptic",
    "is_elliptic_gradient",
    "elliptic_gradients",
    "passes_adjoint_test",
    "dim_defect",
    "module_type",
    "dominant_weights",
    "target_label",
    "parse_target",
]

HALF = Fraction(1, 2)


def _weight_tuple(lam) -> tuple[Fraction, ...]:
    if isinstance(lam, DominantWeight):
        return lam.entries
    if isinstance(lam, str):
        return tuple(Fraction(tok.strip()) for tok in lam.split(",") if tok.strip())
    return tuple(Fraction(x) for x in lam)


def is_dominant(lam, n: int) -> bool:
    """Check the dominance chain and integrality homogeneity for ``Spin(n)``."""
    try:
        w = _weight_tuple(lam)
    except (ValueError, ZeroDivisionError):
        return False
    if n < 2 or len(w) != n // 2:
        return False
    if not w:
        return True
    integral = [x.denominator == 1 for x in w]
    half = [x.denominator == 2 for x in w]
    if not (all(integral) or all(half)):
        return False
    if any(w[i] < w[i + 1] for i in range(len(w) - 2)):
        return False
    if n % 2 == 0:
        return len(w) == 1 or w[-2] >= abs(w[-1])
    return (len(w) == 1 or w[-2] >= w[-1]) and w[-1] >= 0


@dataclass(frozen=True)
class DominantWeight:
    """A dominant weight ``lambda`` of ``Spin(n)``.

    Parameters
    ----------
    entries : sequence of rationals, or ``"a,b,..."``
    n : int
    """

    entries: tuple
    n: int

    def __init__(self, entries, n: int):
        w = _weight_tuple(entries)
        if not is_dominant(w, n):
            raise ValueError(f"{_fmt(w)} is not a dominant weight for Spin({n})")
        object.__setattr__(self, "entries", w)
        object.__setattr__(self, "n", int(n))

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def is_integral(self) -> bool:
        """True for SO(n) weights (all entries integers)."""
        return all(x.denominator == 1 for x in self.entries)

    @property
    def even(self) -> bool:
        return self.n % 2 == 0

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return _fmt(self.entries)

    def to_json(self) -> list[str]:
        return [str(x) for x in self.entries]


def _fmt(w) -> str:
    return "(" + ", ".join(str(x) for x in w) + ")"


def _as_weight(lam, n: int) -> DominantWeight:
    if isinstance(lam, DominantWeight):
        if lam.n != n:
            raise ValueError(f"weight belongs to Spin({lam.n}), not Spin({n})")
        return lam
    return DominantWeight(lam, n)


# ---------------------------------------------------------------------------
# dimensions

@lru_cache(maxsize=None)
def _rho(n: int) -> tuple[Fraction, ...]:
    m = n // 2
    if n % 2 == 0:
        return tuple(Fraction(m - i) for i in range(1, m + 1))
    return tuple(Fraction(m - i) + HALF for i in range(1, m + 1))


@lru_cache(maxsize=None)
def _positive_roots(n: int) -> tuple:
    m = n // 2
    roots = []
    for i, j in combinations(range(m), 2):
        for sign in (1, -1):
            r = [0] * m
            r[i], r[j] = 1, sign
            roots.append(tuple(r))
    if n % 2:
        for i in range(m):
            r = [0] * m
            r[i] = 1
            roots.append(tuple(r))
    return tuple(roots)


def weyl_dim(lam, n: int) -> int:
    """Dimension of ``V_lambda`` by Weyl's formula ``prod <lambda+rho, a> / <rho, a>``.

    Examples
    --------
    >>> weyl_dim((1, 0), 4)
    4
    >>> weyl_dim(("1/2", "1/2", "1/2"), 6)
    4
    """
    return _weyl_dim(_as_weight(lam, n).entries, n)


@lru_cache(maxsize=None)
def _weyl_dim(w: tuple, n: int) -> int:
    rho = _rho(n)
    num, den = Fraction(1), Fraction(1)
    for a in _positive_roots(n):
        num *= sum((x + r) * c for x, r, c in zip(w, rho, a))
        den *= sum(r * c for r, c in zip(rho, a))
    d = num / den
    assert d.denominator == 1 and d > 0, "Weyl formula must give a positive integer"
    return int(d)


# ---------------------------------------------------------------------------
# targets

def target_label(eps: int) -> str:
    """``+2 -> "+e2"``, ``-1 -> "-e1"``, ``0 -> "0"``."""
    if eps == 0:
        return "0"
    return f"{'+' if eps > 0 else '-'}e{abs(eps)}"


def parse_target(text: str) -> int:
    text = text.strip()
    if text == "0":
        return 0
    sign = -1 if text.startswith("-") else 1
    body = text.lstrip("+-")
    if not body.startswith("e") or not body[1:].isdigit():
        raise ValueError(f"malformed target {text!r}; expected like +e1, -e2 or 0")
    return sign * int(body[1:])


def _target_key(eps: int):
    return (abs(eps) if eps else 10**9, -eps)


def shift(lam, eps: int) -> tuple[Fraction, ...]:
    """The weight ``lambda + eps`` (not checked for dominance)."""
    w = list(_weight_tuple(lam))
    if eps:
        w[abs(eps) - 1] += 1 if eps > 0 else -1
    return tuple(w)


def fegan_targets(lam, n: int) -> tuple[int, ...]:
    """Labels of the irreducible summands of ``R^n (x) V_lambda``.

    ``+-eps_i`` whenever ``lambda +- eps_i`` is dominant, plus ``0`` for odd
    ``n`` when ``lambda_m != 0``.  Each summand occurs once.
    """
    w = _as_weight(lam, n)
    out = []
    for i in range(1, w.m + 1):
        for eps in (i, -i):
            if is_dominant(shift(w, eps), n):
                out.append(eps)
    if n % 2 and w.m and w.entries[-1] != 0:
        out.append(0)
    return tuple(sorted(out, key=_target_key))


# ---------------------------------------------------------------------------
# classification

@dataclass(frozen=True)
class GradientSelector:
    """A weight and a set of targets, naming the operator ``D_{lambda, I}``."""

    weight: DominantWeight
    targets: frozenset

    def __init__(self, weight, targets: Iterable, n: int | None = None):
        if not isinstance(weight, DominantWeight):
            if n is None:
                raise ValueError("n is required when the weight is not a DominantWeight")
            weight = DominantWeight(weight, n)
        ts = frozenset(parse_target(t) if isinstance(t, str) else int(t) for t in targets)
        allowed = set(fegan_targets(weight, weight.n))
        bad = ts - allowed
        if bad:
            raise ValueError(
                f"targets {sorted(target_label(t) for t in bad)} do not occur in R^{weight.n} (x) V{weight}"
            )
        if not ts:
            raise ValueError("a selector needs at least one target")
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "targets", ts)

    @property
    def labels(self) -> list[str]:
        return [target_label(t) for t in sorted(self.targets, key=_target_key)]


def _sorted_sets(sets):
    return sorted(sets, key=lambda s: (len(s), [_target_key(t) for t in sorted(s, key=_target_key)]))


def classify_minimal_elliptic(lam, n: int) -> list[frozenset]:
    """Target sets ``I`` for which ``D*D`` is minimal elliptic.

    Table-driven from the known classification, keeping only sets whose
    members are actual summands of ``R^n (x) V_lambda``.
    """
    return list(_classify(_as_weight(lam, n)))


@lru_cache(maxsize=None)
def _classify(w: DominantWeight) -> tuple:
    n = w.n
    m, last = w.m, (w.entries[-1] if w.m else Fraction(0))
    sets: list[frozenset] = []
    if n % 2:
        sets.append(frozenset({1}))
        if not w.is_integral:
            sets.append(frozenset({0}))
        sets += [frozenset({-i, i + 1}) for i in range(1, m)]
        if w.is_integral:
            sets.append(frozenset({-m, 0}))
    else:
        sets.append(frozenset({1}))
        if last > 0:
            sets.append(frozenset({-m}))
        if last < 0:
            sets.append(frozenset({m}))
        sets += [frozenset({-i, i + 1}) for i in range(1, m - 1)]
        if m >= 2 and last >= 0:
            sets.append(frozenset({-(m - 1), m}))
        if m >= 2 and last <= 0:
            sets.append(frozenset({-(m - 1), -m}))
    allowed = set(fegan_targets(w, n)) | {0}
    kept = []
    for s in sets:
        if s <= allowed and (0 not in s or 0 in fegan_targets(w, n)) and s not in kept:
            kept.append(s)
    return tuple(_sorted_sets(kept))


def elliptic_gradients(lam, n: int) -> list[frozenset]:
    """Target sets ``I`` making ``D_{lambda, I}`` elliptic (the corollary's list)."""
    w = _as_weight(lam, n)
    e = w.entries
    out = []
    if n == 4:
        l1, l2 = e
        if l2 >= 0 and l1 == l2 + 1:
            out.append(frozenset({-1, 2}))
        if l2 <= 0 and l1 == 1 - l2:
            out.append(frozenset({-1, -2}))
    if n % 2 and not w.is_integral:
        out.append(frozenset({0}))
    if n % 2 == 0 and w.m:
        if e[-1] == HALF:
            out.append(frozenset({-w.m}))
        if e[-1] == -HALF:
            out.append(frozenset({w.m}))
    return _sorted_sets(out)


def is_elliptic_gradient(selector: GradientSelector, n: int | None = None) -> bool:
    """True iff the selector is one of the elliptic generalized gradients."""
    if n is not None and n != selector.weight.n:
        raise ValueError("selector weight dimension differs from n")
    return selector.targets in elliptic_gradients(selector.weight, selector.weight.n)


def passes_adjoint_test(lam, targets: Iterable[int], n: int) -> bool:
    """Brute-force necessary conditions for ``D_{lambda, I}`` to be elliptic.

    ``I`` must contain a minimal-elliptic set (injectivity of the symbol),
    every ``eps`` in ``I`` must have ``{-eps}`` minimal elliptic for
    ``lambda + eps`` (the adjoint restricts to overdetermined elliptic
    gradients) and the dimensions on both sides must agree.
    """
    w = _as_weight(lam, n)
    I = frozenset(targets)
    if not I or not I <= set(fegan_targets(w, n)):
        return False
    if not any(s <= I for s in _classify(w)):
        return False
    for eps in I:
        if frozenset({-eps}) not in _classify(DominantWeight(shift(w, eps), n)):
            return False
    return weyl_dim(w, n) == sum(weyl_dim(shift(w, eps), n) for eps in I)


def dim_defect(lam, branch: str = "+") -> int:
    """``dim V_{l - e1} + dim V_{l +- e2} - dim V_l`` for ``Spin(4)``.

    The ``+`` branch needs ``l1 - 1 >= l2 >= 0``, the ``-`` branch
    ``l1 - 1 >= -l2 >= 0``.
    """
    w = _as_weight(lam, 4)
    l1, l2 = w.entries
    if branch not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    s = 1 if branch == "+" else -1
    if not (l1 - 1 >= s * l2 >= 0):
        raise ValueError(f"dim_defect branch {branch} needs l1 - 1 >= {'' if s > 0 else '-'}l2 >= 0, got {w}")
    return weyl_dim(shift(w, -1), 4) + weyl_dim(shift(w, 2 * s), 4) - weyl_dim(w, 4)


def module_type(lam, n: int) -> tuple[str, DominantWeight]:
    """Type ``"I"`` iff ``lambda_m = 0``, with the conjugate weight ``lambda-bar``."""
    if n % 2:
        raise ValueError("module types are defined for even n")
    w = _as_weight(lam, n)
    conj = DominantWeight(w.entries[:-1] + (-w.entries[-1],), n)
    return ("I" if w.entries[-1] == 0 else "II"), conj


def dominant_weights(n: int, max_entry) -> list[DominantWeight]:
    """All dominant weights of ``Spin(n)`` with ``|entries| <= max_entry``."""
    m = n // 2
    bound = Fraction(max_entry)
    out = []
    for offset in (Fraction(0), HALF):
        values = []
        v = -bound
        while v <= bound:
            if (v - offset).denominator == 1:
                values.append(v)
            v += HALF
        for w in product(values, repeat=m):
            if is_dominant(w, n):
                out.append(DominantWeight(w, n))
    return out
