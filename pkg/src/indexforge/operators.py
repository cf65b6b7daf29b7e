"""Catalog of chiral geometric operators and their index integrands.

Families
--------
``dirac``             Dirac operator, integrand ``A-hat``.
``higher-dirac``      ``D_j`` on the weight ``(3/2,..,3/2,1/2,..,1/2)`` (``j`` entries 3/2),
                      integrand ``(ch Lambda^j T_C + ch Lambda^{j-1} T_C) A-hat``.
``rarita-schwinger``  ``D_1``.
``higher-signature``  ``P_mu`` in dimension 4, density ``(1 + mu) p1 / 3``.

Integrands are untwisted; :func:`twisted_integrand` multiplies by the twist
character ``ch_0 + ch_1 + ...``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    GradedClass,
    ahat_class,
    ahat_inverse_expr,
    chern_root_expression,
    exterior_power_character,
    l_class,
    tangent_character,
)
from .spin_rep import DominantWeight, weyl_dim

__all__ = [
    "FAMILIES",
    "ALIASES",
    "OperatorSpec",
    "ChiralData",
    "SignatureCharacters",
    "higher_dirac_integrand",
    "rarita_schwinger_integrand",
    "dirac_integrand",
    "dirac_euler_quotient",
    "c1",
    "signature_ch_closed_form",
    "signature_offdiag_closed_form",
    "signature_ch_recurrence",
    "higher_signature_bundles",
    "higher_signature_integrand",
    "twisted_integrand",
]

FAMILIES = ("dirac", "higher-dirac", "rarita-schwinger", "higher-signature")
ALIASES = {
    "dirac": "dirac",
    "higher-dirac": "higher-dirac",
    "higherdirac": "higher-dirac",
    "rarita-schwinger": "rarita-schwinger",
    "rs": "rarita-schwinger",
    "higher-signature": "higher-signature",
    "signature": "higher-signature",
}

HALF = Fraction(1, 2)


def _sign_l(n: int) -> int:
    return -1 if (n // 2) % 2 else 1


# ---------------------------------------------------------------------------
# Dirac family

def dirac_integrand(n: int) -> GradedClass:
    return ahat_class(n)


def higher_dirac_integrand(j: int, n: int) -> GradedClass:
    """``(ch Lambda^j T_C + ch Lambda^{j-1} T_C) * A-hat`` through degree ``n``.

    Parameters
    ----------
    j : int
        ``0 <= j <= n/2 - 1``; ``j = 0`` is the Dirac operator.
    n : int
        Even ambient dimension.
    """
    l = n // 2
    if n % 2 or n < 2:
        raise ValueError(f"higher Dirac operators need even n >= 2, got {n}")
    if not 0 <= j <= l - 1:
        raise ValueError(f"j must lie in 0..{l - 1} for n = {n}, got {j}")
    ch = exterior_power_character(j, n) + exterior_power_character(j - 1, n)
    return ch * ahat_class(n)


def rarita_schwinger_integrand(n: int) -> GradedClass:
    """``(ch T_C + 1) * A-hat``; the same as ``higher_dirac_integrand(1, n)``."""
    return higher_dirac_integrand(1, n)


def dirac_euler_quotient(n: int, max_degree: int | None = None) -> GradedClass:
    """``(ch S+ - ch S-) / e`` for the spinor bundle.

    The root expression is ``prod_j 2 sinh(x_j/2) / x_j``; the overall factor
    ``(-1)^l`` is chosen so that ``(-1)^l * quotient * A-hat^2 = A-hat``, i.e.
    so that the Dirac integrand comes out as ``A-hat`` with degree-0 part 1.
    """
    if n % 2 or n < 2:
        raise ValueError(f"need even n >= 2, got {n}")
    return chern_root_expression(ahat_inverse_expr(), n, max_degree) * _sign_l(n)


# ---------------------------------------------------------------------------
# higher signature operators (n = 4)

def c1(branch: str, max_degree: int = 4) -> GradedClass:
    """``c1^+- = p1 +- 2e``, the degree-4 part of ``ch V_{(1, +-1)}``."""
    s = _branch_sign(branch)
    return GradedClass.p(1, 4, max_degree) + GradedClass.euler(4, max_degree) * (2 * s)


def _branch_sign(branch: str) -> int:
    if branch in ("+", "plus", 1):
        return 1
    if branch in ("-", "minus", -1):
        return -1
    raise ValueError(f"branch must be '+' or '-', got {branch!r}")


def _check_mu(mu) -> int:
    if int(mu) != mu or mu < 0:
        raise ValueError(f"mu must be a non-negative integer, got {mu}")
    return int(mu)


def signature_ch_closed_form(mu: int, branch: str = "+") -> GradedClass:
    """``ch V_{(mu, +-mu)} = 1 + 2mu + (mu/6 + mu^2/2 + mu^3/3) c1^+-`` (n = 4)."""
    mu = _check_mu(mu)
    coeff = Fraction(mu, 6) + Fraction(mu**2, 2) + Fraction(mu**3, 3)
    return GradedClass.scalar(1 + 2 * mu, 4) + c1(branch) * coeff


def signature_offdiag_closed_form(mu: int, branch: str = "+") -> GradedClass:
    """``ch V_{(mu+1, +-mu)}`` through degree 4.

    Degree 0 is ``dim V_{(mu+1, mu)} = 4(mu+1)``; degree 4 is
    ``(2/3)(mu^3 + 3mu^2 + 2mu) c1^+- + sum_k (-1)^(mu-k) (1+2k) p1``.
    """
    mu = _check_mu(mu)
    alt = sum((-1) ** (mu - k) * (1 + 2 * k) for k in range(mu + 1))
    return (
        GradedClass.scalar(4 * (mu + 1), 4)
        + c1(branch) * (Fraction(2, 3) * (mu**3 + 3 * mu**2 + 2 * mu))
        + GradedClass.p(1, 4) * alt
    )


@dataclass(frozen=True)
class SignatureCharacters:
    """Characters generated by the tensor-product recurrences.

    ``diagonal[mu] = ch V_{(mu, +-mu)}`` and
    ``off_diagonal[mu] = ch V_{(mu+1, +-mu)}`` for ``mu = 0..mu_max``.
    """

    branch: str
    diagonal: list = field(default_factory=list)
    off_diagonal: list = field(default_factory=list)


def signature_ch_recurrence(mu_max: int, branch: str = "+", max_degree: int = 4) -> SignatureCharacters:
    """Run the Chern-character recurrences from the tensor-product splittings.

    ``B_{mu+1} = B_mu (B_1 - 1) - B_{mu-1}`` and ``A_mu = B_mu ch T - A_{mu-1}``
    with ``B_mu = ch V_{(mu, +-mu)}``, ``A_mu = ch V_{(mu+1, +-mu)}``,
    ``A_{-1} = 0``.  The seeds ``ch V_{(1, +-1)} = 3 + c + c^2/12`` and
    ``ch T_C`` are exact through degree 8, so ``max_degree`` may be 4 or 8.
    """
    if mu_max < 1:
        raise ValueError("mu_max must be at least 1")
    if max_degree not in (4, 8):
        raise ValueError("max_degree must be 4 or 8")
    c = c1(branch, max_degree)
    one = GradedClass.one(4, max_degree)
    b1 = one * 3 + c + c * c * Fraction(1, 12)
    ch_t = tangent_character(4, max_degree)
    diag = [one, b1]
    for mu in range(1, mu_max):
        diag.append(diag[mu] * (b1 - 1) - diag[mu - 1])
    off = []
    prev = GradedClass.zero(4, max_degree)
    for mu in range(mu_max + 1):
        prev = diag[mu] * ch_t - prev
        off.append(prev)
    return SignatureCharacters(branch if branch in ("+", "-") else ("+" if _branch_sign(branch) > 0 else "-"),
                               diag[: mu_max + 1], off)


def higher_signature_bundles(mu: int, max_degree: int = 4) -> tuple[GradedClass, GradedClass]:
    """``(ch W+, ch W-)`` for ``P_mu``.

    ``P~+`` maps ``V_{(mu+1,mu)}`` to ``V_{(mu,mu)} + V_{(mu+1,mu+1)}`` and
    ``P~-`` maps ``V_{(mu+1,-mu)}`` to ``V_{(mu,-mu)} + V_{(mu+1,-(mu+1))}``;
    ``W+`` is the source of ``P~+`` plus the target of ``P~-``.
    """
    mu = _check_mu(mu)
    plus = signature_ch_recurrence(mu + 1, "+", max_degree)
    minus = signature_ch_recurrence(mu + 1, "-", max_degree)
    w_plus = plus.off_diagonal[mu] + minus.diagonal[mu] + minus.diagonal[mu + 1]
    w_minus = plus.diagonal[mu] + plus.diagonal[mu + 1] + minus.off_diagonal[mu]
    return w_plus, w_minus


def higher_signature_integrand(mu: int, character_degree: int = 4) -> GradedClass:
    """Index density (degree-4 part) of ``P_mu^+`` on an oriented 4-manifold.

    Assembled as ``(-1)^l (ch W+ - ch W-) / e * A-hat^2``.  With the
    characters taken through ``character_degree = 4`` (the truncation of the
    characteristic-class ring, and the degree of the closed forms) the
    quotient is the constant ``-4(1 + mu)`` and the density is
    ``(1 + mu) p1 / 3``.

    ``character_degree = 8`` keeps the degree-8 parts of the characters,
    which also feed the degree-4 part of the quotient.  The density is then
    ``-(1 + mu)(2mu^2 + 4mu + 1) p1 / 3``: ``-L`` at ``mu = 0`` and not
    linear in ``mu``.  The same degree-4 truncation applied to the spinor
    bundle gives ``-p1/12`` instead of ``-p1/24``, so the default is tied to
    the truncated ring rather than to the full character calculus.
    """
    if character_degree not in (4, 8):
        raise ValueError("character_degree must be 4 or 8")
    w_plus, w_minus = higher_signature_bundles(mu, character_degree)
    quotient = (w_plus - w_minus).div_euler()
    # the quotient is known only through degree character_degree - 4; higher terms are dropped
    quotient = GradedClass(4, quotient.terms, 4)
    ahat = ahat_class(4)
    return ((quotient * ahat * ahat) * _sign_l(4)).top()


# ---------------------------------------------------------------------------
# specs

@dataclass(frozen=True)
class ChiralData:
    """Weights of the two chiral halves ``V+`` and ``V-``.

    Orientation reversal swaps the halves, see :meth:`reversed`.
    """

    positive: tuple
    negative: tuple
    n: int

    @property
    def rank_positive(self) -> int:
        return sum(weyl_dim(w, self.n) for w in self.positive)

    @property
    def rank_negative(self) -> int:
        return sum(weyl_dim(w, self.n) for w in self.negative)

    def reversed(self) -> "ChiralData":
        return ChiralData(self.negative, self.positive, self.n)


def _conj(w: DominantWeight) -> DominantWeight:
    return DominantWeight(w.entries[:-1] + (-w.entries[-1],), w.n)


@dataclass(frozen=True)
class OperatorSpec:
    """A cataloged chiral operator.

    Parameters
    ----------
    family : str
        One of :data:`FAMILIES` or an alias.
    n : int
        Even ambient dimension.
    j : int
        Order of the higher Dirac operator (``higher-dirac`` only).
    mu : int
        Parameter of the higher signature operator (``higher-signature`` only).
    """

    family: str
    n: int
    j: int = 0
    mu: int = 0

    def __post_init__(self):
        fam = ALIASES.get(str(self.family).lower())
        if fam is None:
            raise ValueError(f"unknown operator family {self.family!r}; choose from {', '.join(FAMILIES)}")
        object.__setattr__(self, "family", fam)
        n = self.n
        if n < 2 or n % 2:
            raise ValueError(f"operators are cataloged in even dimensions >= 2, got n = {n}")
        if fam == "rarita-schwinger":
            object.__setattr__(self, "j", 1)
        if fam == "dirac":
            object.__setattr__(self, "j", 0)
        if fam in ("higher-dirac", "rarita-schwinger") and not 0 <= self.j <= n // 2 - 1:
            raise ValueError(f"higher Dirac order j must lie in 0..{n // 2 - 1} for n = {n}, got {self.j}")
        if fam == "higher-signature":
            if n != 4:
                raise ValueError(f"higher signature operators exist only for n = 4, got {n}")
            _check_mu(self.mu)

    @property
    def requires_spin(self) -> bool:
        return self.family != "higher-signature"

    @property
    def structure(self) -> str:
        return "spin" if self.requires_spin else "oriented"

    @property
    def name(self) -> str:
        if self.family == "higher-dirac":
            return f"higher-dirac(j={self.j})"
        if self.family == "higher-signature":
            return f"higher-signature(mu={self.mu})"
        return self.family

    def integrand(self) -> GradedClass:
        if self.family == "higher-signature":
            return higher_signature_integrand(self.mu)
        return higher_dirac_integrand(self.j, self.n)

    def chiral_data(self) -> ChiralData:
        n, m = self.n, self.n // 2
        if self.family == "higher-signature":
            mu = self.mu
            pos = tuple(DominantWeight(w, 4) for w in ((mu + 1, mu), (mu, -mu), (mu + 1, -(mu + 1))))
            return ChiralData(pos, tuple(_conj(w) for w in pos), 4)
        lam = DominantWeight((Fraction(3, 2),) * self.j + (HALF,) * (m - self.j), n)
        return ChiralData((lam,), (_conj(lam),), n)


def twisted_integrand(spec: OperatorSpec, twist_ch: GradedClass | None = None) -> GradedClass:
    """``ch(xi) * integrand``; the generic character ``ch_0 + ch_1 + ...`` by default."""
    ch = GradedClass.chern_character(spec.n) if twist_ch is None else twist_ch
    return ch * spec.integrand()


def signature_integrand(n: int) -> GradedClass:
    """The L-polynomial (kept for cross-checks of ``higher_signature_integrand``)."""
    return l_class(n)
