"""Brute-force checks of the hyperplane covering bounds.

Jamison: hyperplanes avoiding the origin that cover F_q^m \\ {0} number at
least m(q-1).  Bruen: if every nonzero point is covered t times, at least
(m+t-1)(q-1).  The multicover lemma for codes turns Bruen's bound into a
dimension bound for subcodes avoiding the symbols of a few pivot codewords.

These functions never prove anything.  They evaluate the inequalities on
explicit instances so that a bug in the surrounding code shows up as a
violation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import GeneratorMatrix, encode, messages, rank
from .gf import FieldSpec

MAX_POINTS = 5 * 10**5


class InstanceError(ValueError):
    """An instance violates a hypothesis; the message names which one."""


@dataclass(frozen=True)
class HyperplaneMultiset:
    """Planes {v : v.g = b} in F_q^m with g != 0 and b != 0."""

    field: FieldSpec
    m: int
    planes: tuple = ()

    def __post_init__(self):
        planes = tuple((tuple(int(x) for x in g), int(b)) for g, b in self.planes)
        object.__setattr__(self, "planes", planes)
        for g, b in planes:
            if len(g) != self.m:
                raise InstanceError(f"normal vector {g} does not have length {self.m}")
            if not any(g):
                raise InstanceError("normal vector is zero")
            if b == 0:
                raise InstanceError("hyperplane passes through the origin (b = 0)")
            if max(g) >= self.field.q or not 0 < b < self.field.q:
                raise InstanceError("entries must be field elements")

    def __len__(self):
        return len(self.planes)


def _points(field: FieldSpec, m: int) -> np.ndarray:
    if field.q**m > MAX_POINTS:
        raise InstanceError(f"{field.q}^{m} points exceed the enumeration limit")
    return messages(field.q, m)


def incidence(H: HyperplaneMultiset) -> np.ndarray:
    """Boolean (planes x nonzero points) membership matrix."""
    P = _points(H.field, H.m)[1:]
    if not H.planes:
        return np.zeros((0, len(P)), dtype=bool)
    G = np.array([g for g, _ in H.planes], dtype=np.uint8)
    b = np.array([b for _, b in H.planes], dtype=np.uint8)
    dots = encode(H.field, P, G.T)  # (points, planes)
    return (dots == b[None, :]).T


def min_coverage(H: HyperplaneMultiset) -> int:
    """Least number of planes through any nonzero point (0 if one is missed)."""
    return int(incidence(H).sum(axis=0).min())


def bruen_holds(H: HyperplaneMultiset) -> bool:
    t = min_coverage(H)
    return len(H) >= (H.m + t - 1) * (H.field.q - 1)


def jamison_holds(H: HyperplaneMultiset) -> bool:
    """Jamison's bound, applicable when H covers every nonzero point."""
    if min_coverage(H) < 1:
        raise InstanceError("the planes do not cover every nonzero point")
    return len(H) >= H.m * (H.field.q - 1)


def distinct_planes(field: FieldSpec, m: int) -> list:
    """Each plane avoiding 0 once: normal vector with leading entry 1, b != 0."""
    out = []
    for g in messages(field.q, m)[1:]:
        if int(g[np.nonzero(g)[0][0]]) == 1:
            out.extend((tuple(int(x) for x in g), b) for b in range(1, field.q))
    return out


def find_tight_cover(field: FieldSpec, m: int, t: int) -> HyperplaneMultiset | None:
    """First multiset of exactly (m+t-1)(q-1) planes covering every nonzero point t times."""
    size = (m + t - 1) * (field.q - 1)
    planes = distinct_planes(field, m)
    full = incidence(HyperplaneMultiset(field, m, tuple(planes))).astype(np.int32)
    for combo in itertools.combinations_with_replacement(range(len(planes)), size):
        if full[list(combo)].sum(axis=0).min() >= t:
            return HyperplaneMultiset(field, m, tuple(planes[i] for i in combo))
    return None


def random_plane(field: FieldSpec, m: int, rng) -> tuple:
    while True:
        g = rng.integers(0, field.q, size=m)
        if g.any():
            return tuple(int(x) for x in g), int(rng.integers(1, field.q))


def random_cover(field: FieldSpec, m: int, t: int, rng, extra: int = 0) -> HyperplaneMultiset:
    """Random t-fold cover, pruned to be minimal, then padded with ``extra`` planes.

    Planes are drawn until every nonzero point is hit t times; afterwards
    planes are dropped in random order whenever coverage stays >= t, which
    pushes instances towards the extremal size.
    """
    planes = []
    cover = np.zeros(field.q**m - 1, dtype=np.int64)
    while cover.min() < t:
        p = random_plane(field, m, rng)
        planes.append(p)
        cover += incidence(HyperplaneMultiset(field, m, (p,)))[0]
    inc = incidence(HyperplaneMultiset(field, m, tuple(planes))).astype(np.int64)
    keep = np.ones(len(planes), dtype=bool)
    for i in rng.permutation(len(planes)):
        if (cover - inc[i]).min() >= t:
            cover -= inc[i]
            keep[i] = False
    chosen = [p for p, k in zip(planes, keep) if k]
    chosen += [random_plane(field, m, rng) for _ in range(extra)]
    return HyperplaneMultiset(field, m, tuple(chosen))


# -- multicover lemma ----------------------------------------------------------------

@dataclass(frozen=True)
class MulticoverInstance:
    field: FieldSpec
    d: int
    code: GeneratorMatrix
    pivots: np.ndarray
    subcode: GeneratorMatrix | None

    @property
    def ell(self) -> int:
        return len(self.pivots)

    @property
    def m(self) -> int:
        return self.code.m

    def validate(self) -> None:
        F, q = self.field, self.field.q
        X = np.asarray(self.pivots, dtype=np.uint8)
        ell, m, d = len(X), self.code.m, self.d
        if self.code.field != F or self.code.n != d:
            raise InstanceError("code is not a length-d code over the field")
        if X.ndim != 2 or X.shape[1] != d:
            raise InstanceError("pivots must be ell words of length d")
        if not ell <= q - 1 <= m:
            raise InstanceError(f"need ell <= q-1 <= m, got ell={ell}, q={q}, m={m}")
        if (X == 0).any():
            raise InstanceError("a pivot codeword contains a zero")
        for i in range(d):
            if len(set(X[:, i].tolist())) != ell:
                raise InstanceError(f"pivots are not pairwise distinct in coordinate {i}")
        if rank(F, X) != ell:
            raise InstanceError("pivots are linearly dependent")
        if rank(F, np.vstack([self.code.rows, X])) != m:
            raise InstanceError("a pivot is not a codeword of C")
        sub_dim = 0 if self.subcode is None else self.subcode.m
        if sub_dim != m - ell:
            raise InstanceError(f"subcode dimension {sub_dim} != m - ell = {m - ell}")
        if self.subcode is not None:
            if self.subcode.field != F or self.subcode.n != d:
                raise InstanceError("subcode is not a length-d code over the field")
            if rank(F, np.vstack([self.code.rows, self.subcode.rows])) != m:
                raise InstanceError("subcode is not contained in C")
            if rank(F, np.vstack([X, self.subcode.rows])) != m:
                raise InstanceError("subcode meets the span of the pivots outside 0")


def lemma3_coverage(inst: MulticoverInstance) -> int:
    """t = min over nonzero c in C' of #{i : c_i not in {0, pivot symbols at i}}."""
    if inst.subcode is None:
        return 0
    q = inst.field.q
    if q**inst.subcode.m > MAX_POINTS:
        raise InstanceError("subcode too large to enumerate")
    allowed = np.ones((inst.d, q), dtype=bool)
    allowed[:, 0] = False
    X = np.asarray(inst.pivots, dtype=np.intp)
    for row in X:
        allowed[np.arange(inst.d), row] = False
    words = encode(inst.field, messages(q, inst.subcode.m)[1:], inst.subcode.rows)
    hits = allowed[np.arange(inst.d)[None, :], words].sum(axis=1)
    return int(hits.min())


def lemma3_holds(inst: MulticoverInstance) -> tuple[int, bool]:
    """(t, m - ell <= (q-ell-1)/(q-1) d - t + 1) after validating the instance.

    The inequality is a consequence of Bruen's bound only when t >= 1; for
    t = 0 it is evaluated but carries no guarantee.
    """
    inst.validate()
    q, ell = inst.field.q, inst.ell
    t = lemma3_coverage(inst)
    rhs = Fraction(q - ell - 1, q - 1) * inst.d - t + 1
    return t, inst.m - ell <= rhs


def random_multicover_instance(field: FieldSpec, ell: int, m: int, d: int, rng, max_tries: int = 1000) -> MulticoverInstance:
    """Pivots by rejection (zero-free, coordinatewise distinct, independent),
    then a random complement subcode, rank-checked."""
    q = field.q
    if not 1 <= ell <= q - 2 or m < q - 1 or d < m:
        raise InstanceError(f"bad sizes ell={ell}, m={m}, d={d} for q={q}")
    nonzero = np.arange(1, q)
    for _ in range(max_tries):
        X = np.stack([rng.permutation(nonzero)[:ell] for _ in range(d)], axis=1).astype(np.uint8)
        if rank(field, X) == ell:
            break
    else:
        raise InstanceError("could not draw independent pivots")
    for _ in range(max_tries):
        Y = rng.integers(0, q, size=(m - ell, d), dtype=np.uint8)
        if rank(field, np.vstack([X, Y])) == m:
            break
    else:
        raise InstanceError("could not draw a complement subcode")
    code = GeneratorMatrix(field, np.vstack([X, Y]))
    sub = GeneratorMatrix(field, Y) if m > ell else None
    return MulticoverInstance(field, d, code, X, sub)


# -- randomized suites -------------------------------------------------------------

@dataclass
class SuiteResult:
    trials: int
    violations: list
    tight: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations


def bruen_suite(field: FieldSpec, m: int, trials: int, seed: int) -> SuiteResult:
    """Random t-fold covers (t in 1..3, up to 2 extra planes), one seed per trial."""
    res = SuiteResult(trials, [])
    for trial in range(trials):
        rng = np.random.default_rng([seed, field.q, m, trial])
        t = int(rng.integers(1, 4))
        H = random_cover(field, m, t, rng, extra=int(rng.integers(0, 3)))
        tt = min_coverage(H)
        bound = (m + tt - 1) * (field.q - 1)
        if len(H) < bound:
            res.violations.append(H)
        elif len(H) == bound:
            res.tight += 1
    return res


def lemma3_suite(field: FieldSpec, trials: int, seed: int, max_tries: int = 1000) -> SuiteResult:
    """Random valid instances with t >= 1 (the range where the lemma applies)."""
    q = field.q
    res = SuiteResult(trials, [])
    for trial in range(trials):
        rng = np.random.default_rng([seed, q, trial])
        for _ in range(max_tries):
            ell = int(rng.integers(1, q - 1))
            m = int(rng.integers(q - 1, q + 2))
            d = int(rng.integers(m, 3 * m + 5))
            inst = random_multicover_instance(field, ell, m, d, rng)
            t, holds = lemma3_holds(inst)
            if t >= 1:
                break
        else:
            raise InstanceError("could not draw an instance with t >= 1")
        if not holds:
            res.violations.append(inst)
        rhs = Fraction(q - inst.ell - 1, q - 1) * inst.d - t + 1
        if inst.m - inst.ell == rhs:
            res.tight += 1
    return res
