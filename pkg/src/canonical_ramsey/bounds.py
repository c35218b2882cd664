"""
Bound arithmetic for weak canonical Ramsey numbers.

Everything is exact integer / rational arithmetic.  The only transcendental
quantity, ``log k``, is bracketed by certified rational bounds.  Iterated
exponentials that are too large to materialise are kept as
:class:`TowerBound` values.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, log10, prod
from typing import NamedTuple, Union

__all__ = [
    "DIGIT_CAP",
    "Power",
    "TowerBound",
    "BoundParams",
    "ScheduleBound",
    "Inversion",
    "log_bracket",
    "schedule",
    "wer_upper",
    "wer_upper_bracket",
    "ramsey_step_bound",
    "z_sum_bound",
    "r3_bound",
    "r4_bound",
    "r4_bound_via_steps",
    "bound_params",
    "wer3_exponent",
    "wer3_bound",
    "wer3_chain_bound",
    "invert_wer",
]

# towers whose next level would have more decimal digits than this stay symbolic
DIGIT_CAP = 20_000


# -- certified logarithm -----------------------------------------------------

def _atanh_bracket(y: Fraction, bits: int):
    """Rational bounds on atanh(y) for 0 <= y <= 1/3, width below 2**-bits."""
    tol = Fraction(1, 2 ** (bits + 2))
    total = Fraction(0)
    y2 = y * y
    term = y
    j = 0
    while True:
        total += term / (2 * j + 1)
        term *= y2
        j += 1
        # tail of the series is at most term / ((2j+1)(1 - y^2))
        tail = term / ((2 * j + 1) * (1 - y2))
        if tail < tol:
            return total, total + tail


@functools.lru_cache(maxsize=None)
def _ln2_bracket(bits: int):
    lo, hi = _atanh_bracket(Fraction(1, 3), bits + 8)
    return 2 * lo, 2 * hi


@functools.lru_cache(maxsize=4096)
def log_bracket(k: int, bits: int = 64):
    """``(lo, hi)`` rationals with ``lo <= ln k <= hi`` and ``hi - lo < 2**-bits``.

    Uses ``ln k = e ln 2 + 2 atanh((r-1)/(r+1))`` with ``r = k / 2**e`` in
    ``[1, 2)``, so the series argument never exceeds 1/3.
    """
    if k < 1:
        raise ValueError("log_bracket needs k >= 1")
    if k == 1:
        return Fraction(0), Fraction(0)
    e = k.bit_length() - 1
    r = Fraction(k, 2 ** e)
    scale = max(e, 1).bit_length()
    l2lo, l2hi = _ln2_bracket(bits + scale + 2)
    alo, ahi = _atanh_bracket((r - 1) / (r + 1), bits + 4) if r != 1 else (Fraction(0), Fraction(0))
    return e * l2lo + 2 * alo, e * l2hi + 2 * ahi


# -- symbolic towers ---------------------------------------------------------

@dataclass(frozen=True)
class Power:
    """``base ** exp`` kept unevaluated; ``base`` may be a symbol such as ``"k"``."""

    base: Union[int, str]
    exp: int

    @property
    def value(self) -> int:
        if isinstance(self.base, str):
            raise TypeError(f"symbolic power {self} has no numeric value")
        return self.base ** self.exp

    def __str__(self):
        return f"{self.base}^{self.exp}"


def _ilog(value: int, base: int) -> int:
    """floor(log_base(value)) for value >= 1, exact."""
    if value < 1:
        raise ValueError("ilog needs value >= 1")
    if base & (base - 1) == 0:
        return (value.bit_length() - 1) // (base.bit_length() - 1)
    guess = max(int((value.bit_length() - 1) * log10(2) / log10(base)) - 2, 0)
    while base ** (guess + 1) <= value:
        guess += 1
    while guess > 0 and base ** guess > value:
        guess -= 1
    return guess


@functools.total_ordering
class TowerBound:
    """The number ``base ^ base ^ ... ^ top`` with ``height`` exponentiations.

    ``height == 0`` is a plain integer.  Construction normalises: levels are
    collapsed while the result would have at most :data:`DIGIT_CAP` digits.
    Towers compare with ints and with towers of the same base.
    """

    __slots__ = ("base", "height", "top")

    def __init__(self, base: int, height: int, top):
        if height < 0:
            raise ValueError("tower height must be >= 0")
        if height and base < 2:
            raise ValueError("tower base must be >= 2")
        self.base = base
        self.height = height
        self.top = top
        self._normalise()

    def _normalise(self):
        while self.height > 0:
            top = self.top
            if isinstance(top, Power):
                if isinstance(top.base, str) or top.exp > DIGIT_CAP / log10(max(top.base, 2)):
                    return
                top = top.value
            # int/float comparison is exact in Python, so huge tops cannot overflow here
            if top > DIGIT_CAP / log10(self.base):
                return
            self.top = self.base ** top
            self.height -= 1
        if isinstance(self.top, Power) and not isinstance(self.top.base, str):
            if self.top.exp <= DIGIT_CAP / log10(max(self.top.base, 2)):
                self.top = self.top.value

    @property
    def exact(self) -> bool:
        return self.height == 0 and isinstance(self.top, int)

    @property
    def value(self) -> int:
        if not self.exact:
            raise OverflowError(f"{self} is too large to materialise")
        return self.top

    def __int__(self):
        return self.value

    def _top_int(self) -> int:
        top = self.top
        return top.value if isinstance(top, Power) else top

    def lowered(self) -> "TowerBound":
        """The exponent of the outermost power (height reduced by one)."""
        if self.height == 0:
            raise ValueError("height-0 tower has no exponent")
        return TowerBound(self.base, self.height - 1, self.top)

    def _cmp(self, other) -> int:
        if isinstance(other, int):
            other = TowerBound(self.base, 0, other)
        if not isinstance(other, TowerBound):
            return NotImplemented
        a, b = self, other
        if a.height and b.height and a.base != b.base:
            raise TypeError("towers with different bases are not comparable")
        sign = 1
        if a.height < b.height:
            a, b, sign = b, a, -1
        base = a.base
        # strip common levels: base^x is strictly increasing
        while b.height > 0:
            a, b = a.lowered(), b.lowered()
        if a.height == 0:
            x, y = a._top_int(), b._top_int()
            return sign * ((x > y) - (x < y))
        y = b._top_int()
        if y < 1:
            return sign
        # compare base^(a') against y via a' versus floor(log_base y)
        lg = _ilog(y, base)
        inner = a.lowered()._cmp(lg)
        if inner > 0:
            return sign
        if inner < 0:
            return -sign
        return sign * (0 if base ** lg == y else -1)

    def __eq__(self, other):
        try:
            c = self._cmp(other)
        except TypeError:
            return False
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __hash__(self):
        if self.exact:
            return hash(self.top)
        return hash((self.base, self.height, str(self.top)))

    def __str__(self):
        top = self.top
        if isinstance(top, int) and top.bit_length() > 200:
            digits = _ilog(top, 10) + 1
            text = str(top) if self.height == 0 and digits <= 4000 else f"<{digits}-digit integer>"
        else:
            text = f"({top})" if isinstance(top, Power) else str(top)
        if self.height == 0:
            return text
        return "^".join([str(self.base)] * self.height + [text])

    def __repr__(self):
        return f"TowerBound(base={self.base}, height={self.height}, top={self.top!r})"


# -- the pair-coloring schedule ----------------------------------------------

class ScheduleBound(NamedTuple):
    m_dprime: int
    m_prime: int
    delta: Fraction
    m_dd: Fraction
    n_required: int


def schedule(k1: int, k2: int) -> ScheduleBound:
    """Parameter schedule for the whomog-or-rainbow pipeline.

    ``m'' = ceil(k2**3 / 2)`` so that a maximal rainbow set in an
    ``m''``-vertex coloring with all color degrees <= 1 has size >= k2;
    ``m' = ceil(3 m'' / 2)``, ``delta = (m' - m'') / m'**3``,
    ``m = 3 / delta`` and ``n = ceil(3 / delta**(k1 - 3))``.
    """
    if k1 < 4:
        raise ValueError("k1 must be >= 4")
    if k2 < 2:
        raise ValueError("k2 must be >= 2")
    m_dprime = -(-k2 ** 3 // 2)
    m_prime = -(-3 * m_dprime // 2)
    delta = Fraction(m_prime - m_dprime, m_prime ** 3)
    m_dd = 3 / delta
    n_required = ceil(3 / delta ** (k1 - 3))
    return ScheduleBound(m_dprime, m_prime, delta, m_dd, n_required)


def wer_upper_bracket(k1: int, k2: int, C_const=1):
    """Bracket of ``(C k2)**(6 k1 - 18) / (ln k2)**(2 k1 - 6)``."""
    if k1 < 4:
        raise ValueError("k1 must be >= 4")
    if k2 < 2:
        raise ValueError("k2 must be >= 2 (log k2 must be positive)")
    C_const = Fraction(C_const)
    if C_const <= 0:
        raise ValueError("C must be positive")
    num = (C_const * k2) ** (6 * k1 - 18)
    lo, hi = log_bracket(k2)
    p = 2 * k1 - 6
    return num / hi ** p, num / lo ** p


def wer_upper(k1: int, k2: int, C_const=1) -> Fraction:
    """Upper bracket of the closed-form WER upper bound (natural log)."""
    return wer_upper_bracket(k1, k2, C_const)[1]


class Inversion(NamedTuple):
    k2: int
    below_threshold: bool


def invert_wer(d: int, n: int, C_const=None) -> Inversion:
    """Largest ``k2`` with ``WER(d+3, k2) <= n`` under the chosen bound.

    With ``C_const=None`` the bound is the implementation's schedule
    (:func:`schedule`'s ``n_required``); otherwise the closed form
    :func:`wer_upper` with that constant.  When even ``k2 = 2`` needs more
    than ``n`` points the result is ``Inversion(1, True)``.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    k1 = d + 3

    def bound(k):
        if C_const is None:
            return schedule(k1, k).n_required
        return wer_upper(k1, k, C_const)

    if bound(2) > n:
        return Inversion(1, True)
    lo, hi = 2, 3
    while bound(hi) <= n:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) <= n:
            lo = mid
        else:
            hi = mid
    return Inversion(lo, False)


# -- hypergraph Ramsey bounds --------------------------------------------------

def _check_ks(ks) -> tuple:
    ks = tuple(int(k) for k in ks)
    if len(ks) < 2:
        raise ValueError("need at least two color targets")
    if any(k < 1 for k in ks):
        raise ValueError("color targets must be >= 1")
    return ks


@dataclass(frozen=True)
class BoundParams:
    ks: tuple
    P: int
    S: int
    s_e: int | None = None
    p_e: int | None = None
    f_e: int | None = None


def bound_params(ks, e: int | None = None) -> BoundParams:
    """``P`` and ``S`` over ``k_1..k_(c-1)``; with ``e`` also s(e), p(e), f(e)."""
    ks = _check_ks(ks)
    head = ks[:-1]
    s_e = p_e = f_e = None
    if e is not None:
        terms = (e, e + 2, e + 2, e, e + 2, e)
        s_e = sum(terms)
        p_e = prod(terms)
        f_e = (36 * p_e) ** (s_e - 5)
    return BoundParams(ks=ks, P=prod(head), S=sum(head), s_e=s_e, p_e=p_e, f_e=f_e)


def ramsey_step_bound(a: int, ks, prev, tight: bool = False) -> TowerBound:
    """One step up in arity: ``R_a(k) <= c ** (R_(a-1)(k - 1) ** (a - 1))``.

    ``prev`` is an int or a tower with base ``c`` and height 1.  With
    ``tight=True`` the exponent is ``C(prev, a-1) + a - 2`` instead.
    """
    if a < 3:
        raise ValueError("a must be >= 3")
    ks = _check_ks(ks)
    c = len(ks)
    if isinstance(prev, TowerBound) and prev.exact:
        prev = prev.value
    if isinstance(prev, TowerBound):
        if tight:
            raise ValueError("the binomial refinement needs an integer prev")
        if prev.base != c or prev.height != 1:
            raise ValueError("tower prev must have base c and height 1")
        # (c^t)^(a-1) = c^((a-1) t)
        return TowerBound(c, 2, (a - 1) * prev._top_int())
    if prev < 1:
        raise ValueError("prev must be >= 1")
    exponent = comb(prev, a - 1) + a - 2 if tight else prev ** (a - 1)
    return TowerBound(c, 1, exponent)


def z_sum_bound(ks) -> int:
    """``P (k_c + S) ** (S + 2)``, bounding the total length of the strings in Z."""
    p = bound_params(ks)
    return p.P * (p.ks[-1] + p.S) ** (p.S + 2)


def r3_bound(ks) -> TowerBound:
    """``R_3(k_1..k_c) <= c ** (P (k_c + S) ** (S + 2))``."""
    ks = _check_ks(ks)
    return TowerBound(len(ks), 1, z_sum_bound(ks))


def r4_bound(ks) -> TowerBound:
    """``R_4(k_1..k_c) <= c ** c ** (3 P (k_c + S - c) ** (S + 2 - c))``."""
    p = bound_params(ks)
    c = len(p.ks)
    expo = p.S + 2 - c
    if expo < 0:
        raise ValueError(f"exponent S + 2 - c = {expo} is negative")
    base = p.ks[-1] + p.S - c
    top = 3 * p.P * base ** expo
    return TowerBound(c, 2, top)


def r4_bound_via_steps(ks) -> TowerBound:
    """``R_4`` bounded by one arity step applied to :func:`r3_bound` of ``k - 1``."""
    ks = _check_ks(ks)
    if any(k < 2 for k in ks):
        raise ValueError("every k_i must be >= 2")
    prev = r3_bound([k - 1 for k in ks])
    return ramsey_step_bound(4, ks, prev)


def wer3_exponent(e: int) -> int:
    """``5 s(e) - 24`` with ``s(e) = 6 e + 6``."""
    return 5 * (6 * e + 6) - 24


def wer3_bound(e: int, k) -> TowerBound:
    """``2 ^ 2 ^ (k ^ (5 s(e) - 24))``; ``k`` may be an int or a symbol string."""
    if e < 4:
        raise ValueError("e must be >= 4")
    if isinstance(k, int) and k < 2:
        raise ValueError("k must be >= 2")
    return TowerBound(2, 2, Power(k, wer3_exponent(e)))


def wer3_chain_bound(e: int, k: int) -> TowerBound:
    """The 4-ary Ramsey bound on ``(e, e+2, e+2, e, e+2, e, k**5)``."""
    return r4_bound((e, e + 2, e + 2, e, e + 2, e, k ** 5))
