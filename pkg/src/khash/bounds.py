"""Asymptotic rate bounds for (q,k)-hash codes.

Every bound is returned as its n -> infinity limit, in units of
log_q|C| / n.  Rational bounds carry an exact ``Fraction``; logarithmic ones
carry an exact value only when the logarithm happens to be rational (for
example log_8 4 = 2/3), and a float otherwise.

Naming of the bounds follows their origin:

=============  ===========================================================
Recursive      1 - log_q(k-1), the double counting bound
FredmanKomlos  (q^(k-1 falling)/q^(k-1)) log_q(q-k+2)
FKLower        probabilistic lower bound for general codes
KornerMarton   minimum over j of the Korner-Marton family
BlackburnWild  1/(k-1), limit of (k-1) q^ceil(n/(k-1))
MainTheorem    delta / S(q,k) for linear codes of relative distance delta
PlotkinCor     main theorem combined with the Plotkin bound
AaltonenCor    main theorem combined with the q-ary first LP bound
LinearLower    random-coding lower bound for linear codes, q >= C(k,2)
=============  ===========================================================
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .gf import factorint

ROOT_TOL = 1e-12
BISECT_MAX_ITER = 200


class BoundDomainError(ValueError):
    """Parameters outside the range where a bound is stated."""


class RootBracketError(RuntimeError):
    """The LP-bound equation has no sign change on its bracket."""


class BoundId(str, enum.Enum):
    Recursive = "Recursive"
    FredmanKomlos = "FredmanKomlos"
    FKLower = "FKLower"
    KornerMarton = "KornerMarton"
    BlackburnWild = "BlackburnWild"
    MainTheorem = "MainTheorem"
    PlotkinCor = "PlotkinCor"
    AaltonenCor = "AaltonenCor"
    LinearLower = "LinearLower"

    def __str__(self):
        return self.value


def ceil_decimals(x, digits: int = 4) -> str:
    """Round upwards at the given decimal and format, e.g. 0.21971 -> '0.2198'."""
    scale = 10**digits
    if isinstance(x, Fraction):
        v = math.ceil(x * scale)
    else:
        # absorb float noise sitting just above a representable boundary
        v = math.ceil(x * scale - 1e-7)
    return f"{v // scale}.{v % scale:0{digits}d}"


@dataclass(frozen=True)
class Rate:
    approx: float
    exact: Fraction | None = None

    @classmethod
    def from_exact(cls, value) -> "Rate":
        value = Fraction(value)
        return cls(float(value), value)

    def ceil4(self) -> str:
        return ceil_decimals(self.exact if self.exact is not None else self.approx)

    def display(self) -> str:
        if self.exact is not None:
            return f"{self.exact.numerator}/{self.exact.denominator}"
        return self.ceil4()

    def __float__(self):
        return self.approx


@dataclass(frozen=True)
class BoundReport:
    q: int
    k: int
    bound_id: BoundId
    rate: Rate
    detail: dict = field(default_factory=dict)


# -- helpers ------------------------------------------------------------------

def _check_qk(q: int, k: int) -> None:
    if int(q) != q or int(k) != k:
        raise BoundDomainError("q and k must be integers")
    if k < 3 or q < k:
        raise BoundDomainError(f"need q >= k >= 3, got q={q}, k={k}")


def falling_factorial(a: int, i: int) -> int:
    if i < 0:
        raise ValueError("falling factorial needs i >= 0")
    out = 1
    for t in range(i):
        out *= a - t
    return out


def falling_ratio(q: int, i: int) -> Fraction:
    """q^(i falling) / q^i."""
    return Fraction(falling_factorial(q, i), q**i)


@lru_cache(maxsize=4096)
def _perfect_power_base(q: int) -> tuple[int, int]:
    """(r, g) with q == r**g and g maximal."""
    f = factorint(q)
    g = math.gcd(*f.values())
    r = 1
    for p, e in f.items():
        r *= p ** (e // g)
    return r, g


def _power_of(x: int, r: int) -> int | None:
    if x < 1:
        return None
    h = 0
    while x % r == 0:
        x //= r
        h += 1
    return h if x == 1 else None


def log_exact(q: int, x) -> Fraction | None:
    """log_q(x) as a Fraction when it is rational, else None.

    With q = r^g and r not a perfect power, log_q(x) is rational exactly
    when x is an integral (possibly negative) power r^h, giving h/g.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("logarithm of a non-positive number")
    r, g = _perfect_power_base(q)
    hn = _power_of(x.numerator, r)
    hd = _power_of(x.denominator, r)
    if hn is None or hd is None:
        return None
    return Fraction(hn - hd, g)


def _ln(x: Fraction) -> float:
    # math.log accepts big integers, so huge numerators/denominators never overflow
    return math.log(x.numerator) - math.log(x.denominator)


def log_q(q: int, x) -> float:
    return _ln(Fraction(x)) / math.log(q)


def _scaled_log_rate(coef: Fraction, q: int, arg) -> Rate:
    """Rate for coef * log_q(arg), exact when the logarithm is rational."""
    ex = log_exact(q, arg)
    if ex is not None:
        return Rate.from_exact(coef * ex)
    return Rate(float(coef) * log_q(q, arg))


# -- classical bounds -----------------------------------------------------------

def rate_recursive(q: int, k: int) -> Rate:
    _check_qk(q, k)
    return _scaled_log_rate(Fraction(1), q, Fraction(q, k - 1))


def rate_fredman_komlos(q: int, k: int) -> Rate:
    _check_qk(q, k)
    return _scaled_log_rate(falling_ratio(q, k - 1), q, q - k + 2)


def rate_lower_fk(q: int, k: int) -> Rate:
    _check_qk(q, k)
    gap = 1 - falling_ratio(q, k)
    return _scaled_log_rate(Fraction(-1, k - 1), q, gap)


def korner_marton_terms(q: int, k: int) -> list[Rate]:
    _check_qk(q, k)
    return [
        _scaled_log_rate(falling_ratio(q, j + 1), q, Fraction(q - j, k - j - 1))
        for j in range(k - 1)
    ]


def rate_korner_marton(q: int, k: int) -> BoundReport:
    terms = korner_marton_terms(q, k)
    best = 0
    for j, t in enumerate(terms):
        if t.approx < terms[best].approx:
            best = j
    return BoundReport(q, k, BoundId.KornerMarton, terms[best], {"j": best})


def rate_blackburn_wild(q: int, k: int) -> Rate:
    _check_qk(q, k)
    return Rate.from_exact(Fraction(1, k - 1))


def size_blackburn_wild(q: int, k: int, n: int) -> int:
    _check_qk(q, k)
    if n < 1:
        raise BoundDomainError("length must be >= 1")
    return (k - 1) * q ** (-(-n // (k - 1)))


# -- the linear-code bounds --------------------------------------------------------

def hash_sum_S(q: int, k: int) -> Fraction:
    """S(q,k) = sum_{i=1}^{k-2} (q-1)^i / (q-2)^(i falling), exactly.

    Evaluated inside-out, T <- 1 + (q-1)/(q-2-i) * T, keeping a single
    numerator/denominator pair so large k stays linear in big-int work.
    """
    _check_qk(q, k)
    a, b = q - 1, q - 2
    num, den = 1, 1
    for i in range(k - 3, 0, -1):
        num, den = (b - i) * den + a * num, (b - i) * den
    return Fraction(a * num, b * den)


def rate_main_theorem(q: int, k: int, delta) -> Rate:
    if not 0 <= delta <= 1:
        raise BoundDomainError(f"relative distance {delta} outside [0, 1]")
    s = hash_sum_S(q, k)
    if isinstance(delta, (int, Fraction)):
        return Rate.from_exact(Fraction(delta) / s)
    return Rate(float(delta) / float(s))


def rate_plotkin_corollary(q: int, k: int) -> Rate:
    s = hash_sum_S(q, k)
    return Rate.from_exact(1 / (1 + Fraction(q, q - 1) * s))


def entropy_q(q: int, t: float) -> float:
    """q-ary entropy with 0 log 0 = 0."""
    if not 0 <= t <= 1:
        raise BoundDomainError(f"entropy argument {t} outside [0, 1]")
    lq = math.log(q)
    out = 0.0
    if t > 0:
        out += t * (math.log(q - 1) - math.log(t)) / lq
    if t < 1:
        out -= (1 - t) * math.log1p(-t) / lq
    return out


def _lp_argument(q: int, x: float) -> float:
    arg = (q - 1 - (q - 2) * x - 2 * math.sqrt((q - 1) * x * (1 - x))) / q
    # the argument has a double zero at x = (q-1)/q; clip rounding below 0
    return min(max(arg, 0.0), 1.0)


def aaltonen_rhs(q: int, x: float) -> float:
    if not 0 <= x <= (q - 1) / q + 1e-15:
        raise BoundDomainError(f"x={x} outside [0, (q-1)/q]")
    return entropy_q(q, _lp_argument(q, x))


def _lp_gap(q: int, s: float, x: float) -> float:
    return x / s - aaltonen_rhs(q, x)


def rate_aaltonen_corollary(q: int, k: int) -> BoundReport:
    """Bisect x/S = LP(x) on [1e-12, (q-1)/q] and return delta*/S."""
    s = float(hash_sum_S(q, k))
    lo, hi = 1e-12, (q - 1) / q
    f_lo, f_hi = _lp_gap(q, s, lo), _lp_gap(q, s, hi)
    if not (f_lo < 0 < f_hi):
        raise RootBracketError(f"no sign change for q={q}, k={k}: f={f_lo}, {f_hi}")
    iters = 0
    for iters in range(1, BISECT_MAX_ITER + 1):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = _lp_gap(q, s, mid)
        if f_mid < 0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    root, residual = (lo, -f_lo) if -f_lo <= f_hi else (hi, f_hi)
    detail = {"delta_star": root, "residual": abs(residual), "iterations": iters}
    return BoundReport(q, k, BoundId.AaltonenCor, Rate(root / s), detail)


def lp_gap_sign_changes(q: int, k: int, points: int = 1000) -> int:
    """Sign changes of x/S - LP(x) on a uniform grid over (0, (q-1)/q]."""
    s = float(hash_sum_S(q, k))
    top = (q - 1) / q
    signs = [_lp_gap(q, s, top * i / points) > 0 for i in range(1, points + 1)]
    return sum(a != b for a, b in zip(signs, signs[1:]))


def rate_linear_lower(q: int, k: int) -> BoundReport:
    if k < 3:
        raise BoundDomainError("need k >= 3")
    pairs = k * (k - 1) // 2
    if q < pairs:
        raise BoundDomainError(f"linear lower bound is stated for q >= C(k,2) = {pairs}, got q={q}")
    t1 = rate_lower_fk(q, k)
    t2 = _scaled_log_rate(Fraction(1, k - 2), q, Fraction(q, pairs))
    term, rate = (1, t1) if t1.approx <= t2.approx else (2, t2)
    return BoundReport(q, k, BoundId.LinearLower, rate, {"term": term, "term1": t1.approx, "term2": t2.approx})


def is_degenerate(q: int, k: int) -> bool:
    """q <= 2k-4 with k > 3: no 2-dimensional linear k-hash codes, rate 0."""
    return k > 3 and q <= 2 * k - 4


# -- comparisons with Korner-Marton ----------------------------------------------

def _km_mp(q: int, k: int, dps: int = 50):
    with mpmath.workdps(dps):
        return min(
            mpmath.mpf(falling_factorial(q, j + 1)) / mpmath.mpf(q) ** (j + 1)
            * mpmath.log(mpmath.mpf(q - j) / (k - j - 1), q)
            for j in range(k - 1)
        )


@dataclass(frozen=True)
class Comparison:
    q: int
    k: int
    plotkin: Rate
    korner_marton: BoundReport
    margin: float
    improves: bool


def km_vs_corollary4(q: int, k: int) -> Comparison:
    """Does the Plotkin corollary beat Korner-Marton at (q, k)?

    The margin KM - Cor4 is computed in double precision; when it is within
    1e-9 of zero the sign is settled with 50-digit mpmath arithmetic.
    """
    cor4 = rate_plotkin_corollary(q, k)
    km = rate_korner_marton(q, k)
    if km.rate.exact is not None:
        margin_exact = km.rate.exact - cor4.exact
        return Comparison(q, k, cor4, km, float(margin_exact), margin_exact > 0)
    margin = km.rate.approx - cor4.approx
    if abs(margin) < 1e-9:
        with mpmath.workdps(50):
            m = _km_mp(q, k) - mpmath.mpf(cor4.exact.numerator) / cor4.exact.denominator
            return Comparison(q, k, cor4, km, float(m), m > 0)
    return Comparison(q, k, cor4, km, margin, margin > 0)


def conjecture_margin(q: int, k: int) -> float:
    """KM(q,k) - Cor4(q,k) in O(k) float work, for long sweeps.

    Margins closer to zero than 1e-9 are recomputed by ``km_vs_corollary4``.
    """
    _check_qk(q, k)
    lq = math.log(q)
    ratio, km = 1.0, math.inf
    for j in range(k - 1):
        ratio *= (q - j) / q
        km = min(km, ratio * (math.log(q - j) - math.log(k - j - 1)) / lq)
    a, b = q - 1, q - 2
    t = 1.0
    for i in range(k - 3, 0, -1):
        t = 1.0 + a / (b - i) * t
    s = a / b * t
    margin = km - 1.0 / (1.0 + q / (q - 1) * s)
    if abs(margin) < 1e-9:
        return km_vs_corollary4(q, k).margin
    return margin


def theorem7_chain(q: int, k: int) -> dict:
    """Values and link verdicts for the chain
    KM >= F*log_q(q/(k-1)) >= (1/2)((q-k+2)/q)^(k-2) >= (1/2)(1-(k-2)^2/q)
    >= 1/(k-1) > Cor4, where F = q^(k-1 falling)/q^(k-1).
    """
    _check_qk(q, k)
    if k < 4 or q < k * k:
        raise BoundDomainError(f"chain is stated for k >= 4 and q >= k^2, got q={q}, k={k}")
    km = rate_korner_marton(q, k).rate.approx
    last = _scaled_log_rate(falling_ratio(q, k - 1), q, Fraction(q, k - 1)).approx
    power = Fraction(q - k + 2, q) ** (k - 2) / 2
    bern = (1 - Fraction((k - 2) ** 2, q)) / 2
    inv = Fraction(1, k - 1)
    cor4 = rate_plotkin_corollary(q, k).exact
    eps = 1e-12
    links = {
        "km>=last_term": km >= last - eps,
        "last_term>=power": last >= float(power) - eps,
        "power>=bernoulli": power >= bern,
        "bernoulli>=1/(k-1)": bern >= inv,
        "1/(k-1)>cor4": inv > cor4,
    }
    values = {"km": km, "last_term": last, "power": power, "bernoulli": bern, "inv": inv, "cor4": cor4}
    return {"values": values, "links": links, "holds": all(links.values())}


def theorem7_chain_check(q: int, k: int) -> bool:
    return theorem7_chain(q, k)["holds"]


# -- uniform dispatch for sweeps ---------------------------------------------------

def _as_report(q, k, bid, rate):
    return BoundReport(q, k, bid, rate, {})


EVALUATORS = {
    BoundId.Recursive: lambda q, k: _as_report(q, k, BoundId.Recursive, rate_recursive(q, k)),
    BoundId.FredmanKomlos: lambda q, k: _as_report(q, k, BoundId.FredmanKomlos, rate_fredman_komlos(q, k)),
    BoundId.FKLower: lambda q, k: _as_report(q, k, BoundId.FKLower, rate_lower_fk(q, k)),
    BoundId.KornerMarton: rate_korner_marton,
    BoundId.BlackburnWild: lambda q, k: _as_report(q, k, BoundId.BlackburnWild, rate_blackburn_wild(q, k)),
    BoundId.PlotkinCor: lambda q, k: _as_report(q, k, BoundId.PlotkinCor, rate_plotkin_corollary(q, k)),
    BoundId.AaltonenCor: rate_aaltonen_corollary,
    BoundId.LinearLower: rate_linear_lower,
}


def evaluate(bound_id: BoundId | str, q: int, k: int) -> BoundReport:
    """Evaluate a bound by identifier (MainTheorem needs a distance and is excluded)."""
    bid = BoundId(bound_id)
    if bid not in EVALUATORS:
        raise BoundDomainError(f"{bid} cannot be evaluated from (q, k) alone")
    return EVALUATORS[bid](q, k)
