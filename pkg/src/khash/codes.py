"""Linear codes over GF(q): enumeration, minimum distance and k-hash checks.

Codewords are uint8 numpy rows of field-element indices.  Messages u in
F_q^m are ordered by their base-q index with u[0] the most significant
digit, so codeword 0 is always the zero word.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .gf import FieldSpec, parse_field

MAX_CODEWORDS = 2**20
NAIVE_MAX_CODEWORDS = 200
DEFAULT_BUDGET = 10**9
MAX_REJECTIONS = 1000


class CodeError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, work, progress):
        super().__init__(f"work budget exceeded after {work} comparisons ({progress:.1%} of the search)")
        self.work = work
        self.progress = progress


# -- linear algebra over the field --------------------------------------------

def row_reduce(field: FieldSpec, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    add, mul, neg, inv = field.tables()
    A = np.array(M, dtype=np.uint8, copy=True)
    if A.ndim != 2:
        A = A.reshape(-1, A.shape[-1] if A.size else 0)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = mul[inv[A[r, c]], A[r]]
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = add[A[i], mul[neg[A[i, c]], A[r]]]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(field: FieldSpec, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(row_reduce(field, M)[1])


def messages(q: int, m: int) -> np.ndarray:
    """All u in F_q^m, row i holding the base-q digits of i (most significant first)."""
    idx = np.arange(q**m)
    out = np.empty((q**m, m), dtype=np.uint8)
    for j in range(m):
        out[:, m - 1 - j] = idx % q
        idx //= q
    return out


def encode(field: FieldSpec, U, rows) -> np.ndarray:
    """Codewords U @ rows over the field, for a (N, m) message array U."""
    add, mul, _, _ = field.tables()
    U = np.asarray(U, dtype=np.uint8)
    rows = np.asarray(rows, dtype=np.uint8)
    out = np.zeros((U.shape[0], rows.shape[1]), dtype=np.uint8)
    for j in range(rows.shape[0]):
        out = add[out, mul[U[:, j : j + 1], rows[j : j + 1, :]]]
    return out


# -- generator matrices -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Full-rank m x n generator matrix; the code is its row space."""

    field: FieldSpec
    rows: np.ndarray

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.int64)
        if rows.ndim != 2 or rows.shape[0] < 1:
            raise CodeError("generator matrix must be a non-empty 2-d array")
        if rows.min() < 0 or rows.max() >= self.field.q:
            raise CodeError(f"entries must lie in [0, {self.field.q})")
        rows = rows.astype(np.uint8)
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        if self.m > self.n:
            raise CodeError(f"dimension {self.m} exceeds length {self.n}")
        if rank(self.field, rows) != self.m:
            raise CodeError("generator matrix is not of full rank")

    @property
    def m(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorMatrix)
            and self.field == other.field
            and np.array_equal(self.rows, other.rows)
        )

    def __repr__(self):
        return f"GeneratorMatrix(q={self.field.q}, m={self.m}, n={self.n}, rows={self.rows.tolist()})"


def codeword_array(G: GeneratorMatrix) -> np.ndarray:
    q, m = G.field.q, G.m
    if q**m > MAX_CODEWORDS:
        raise CodeError(f"{q}^{m} codewords exceed the enumeration limit {MAX_CODEWORDS}")
    return encode(G.field, messages(q, m), G.rows)


def enumerate_codewords(G: GeneratorMatrix):
    """Yield every codeword uG as a tuple, in message order."""
    for w in codeword_array(G):
        yield tuple(int(v) for v in w)


def min_distance(G: GeneratorMatrix) -> int:
    words = codeword_array(G)
    return int(np.count_nonzero(words[1:], axis=1).min())


def min_weight_codeword(G: GeneratorMatrix) -> np.ndarray:
    words = codeword_array(G)[1:]
    weights = np.count_nonzero(words, axis=1)
    return words[int(np.argmin(weights))]


# -- k-hash verification ------------------------------------------------------------

@dataclass(frozen=True)
class HashWitness:
    """k distinct codewords that collide (some pair agrees) in every coordinate."""

    codewords: tuple
    messages: tuple = ()

    @property
    def k(self) -> int:
        return len(self.codewords)


def validate_witness(codewords, k: int) -> bool:
    """Check the definition directly: k distinct words, no coordinate all-distinct."""
    words = [tuple(int(v) for v in w) for w in codewords]
    if len(words) != k or len(set(words)) != k:
        return False
    n = len(words[0])
    if any(len(w) != n for w in words):
        return False
    return all(len({w[i] for w in words}) < k for i in range(n))


def is_k_hash(G: GeneratorMatrix, k: int, budget: int = DEFAULT_BUDGET) -> HashWitness | None:
    """None if the code is k-hash, otherwise a witness.

    By linearity only k-subsets containing 0 need testing: translating a
    subset by one of its members keeps per-coordinate distinctness.
    """
    if k < 2:
        raise CodeError("k must be at least 2")
    words = codeword_array(G)
    status, found, work, progress = kernels.scan_khash(words[1:], k, budget)
    if status == kernels.HASHED:
        return None
    if status == kernels.BUDGET:
        raise BudgetExceeded(work, progress)
    picked = (0,) + tuple(i + 1 for i in found)
    msgs = messages(G.field.q, G.m)
    witness = HashWitness(
        tuple(tuple(int(v) for v in words[i]) for i in picked),
        tuple(tuple(int(v) for v in msgs[i]) for i in picked),
    )
    if not validate_witness(witness.codewords, k):  # pragma: no cover - would be a kernel bug
        raise AssertionError(f"invalid witness produced: {witness}")
    return witness


def is_k_hash_naive(G: GeneratorMatrix, k: int) -> HashWitness | None:
    """Oracle: try every k-subset of codewords against the definition."""
    if G.field.q**G.m > NAIVE_MAX_CODEWORDS:
        raise CodeError(f"naive check limited to {NAIVE_MAX_CODEWORDS} codewords")
    words = list(enumerate_codewords(G))
    n = G.n
    for combo in itertools.combinations(words, k):
        if not any(len({w[i] for w in combo}) == k for i in range(n)):
            return HashWitness(tuple(combo))
    return None


# -- random codes and search ----------------------------------------------------------

def random_linear_code(field: FieldSpec, n: int, m: int, seed) -> GeneratorMatrix:
    """Uniform full-rank m x n matrix by rejection, deterministic per seed."""
    if not 1 <= m <= n:
        raise CodeError(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_REJECTIONS):
        M = rng.integers(0, field.q, size=(m, n), dtype=np.uint8)
        if rank(field, M) == m:
            return GeneratorMatrix(field, M)
    raise CodeError(f"no full-rank matrix after {MAX_REJECTIONS} draws")


def normalized_columns(field: FieldSpec, m: int) -> np.ndarray:
    """Zero column plus every column whose first nonzero entry is 1."""
    cols = messages(field.q, m)
    keep = [True] + [int(c[np.nonzero(c)[0][0]]) == 1 for c in cols[1:]]
    return cols[np.array(keep)]


class _WitnessCache:
    """Recently seen failing message tuples, tried before a full scan."""

    def __init__(self, size=64):
        self.size = size
        self.items: list[np.ndarray] = []

    def rejects(self, field, rows, k) -> bool:
        for pos, U in enumerate(self.items):
            words = encode(field, U, rows)
            distinct = [len(set(words[:, i].tolist())) == k for i in range(words.shape[1])]
            if not any(distinct):
                if pos:
                    self.items.insert(0, self.items.pop(pos))
                return True
        return False

    def add(self, U):
        self.items.insert(0, np.asarray(U, dtype=np.uint8))
        del self.items[self.size :]


def _exhaustive_dimension(field: FieldSpec, n: int, k: int, m: int, budget: int):
    """First k-hash code [I_m | A] with A's columns a sorted multiset of
    normalized columns, or None when none exists."""
    ident = np.eye(m, dtype=np.uint8)
    cols = normalized_columns(field, m)
    cache = _WitnessCache()
    for combo in itertools.combinations_with_replacement(range(len(cols)), n - m):
        rows = np.hstack([ident, cols[list(combo)].T]) if combo else ident
        if cache.rejects(field, rows, k):
            continue
        G = GeneratorMatrix(field, rows)
        w = is_k_hash(G, k, budget)
        if w is None:
            return G
        cache.add(w.messages)
    return None


def max_linear_khash_dimension(
    field: FieldSpec, n: int, k: int, mode: str = "exhaustive",
    trials: int = 100, seed: int = 0, budget: int = DEFAULT_BUDGET,
) -> tuple[int, GeneratorMatrix]:
    """Largest m with an [n, m] linear k-hash code over the field.

    Subcodes of k-hash codes are k-hash, so m is raised until it fails.
    ``exhaustive`` is exact (q <= 4, n <= 6); ``random`` returns a lower
    bound from ``trials`` random codes per dimension.
    """
    if n < 1:
        raise CodeError("length must be >= 1")
    if mode == "exhaustive":
        if field.q > 4 or n > 6:
            raise CodeError("exhaustive search is limited to q <= 4 and n <= 6")
        search = lambda m: _exhaustive_dimension(field, n, k, m, budget)
    elif mode == "random":
        if trials < 1:
            raise CodeError("need at least one trial")

        def search(m):
            for t in range(trials):
                G = random_linear_code(field, n, m, [seed, m, t])
                if is_k_hash(G, k, budget) is None:
                    return G
            return None
    else:
        raise CodeError(f"unknown search mode {mode!r}")

    best = None
    for m in range(1, n + 1):
        G = search(m)
        if G is None:
            break
        best = G
    if best is None:  # pragma: no cover - [1 0 ... 0] is always k-hash
        raise CodeError("no code found")
    return best.m, best


# -- file formats ---------------------------------------------------------------------

def parse_code(text: str) -> GeneratorMatrix:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CodeError("empty code file")
    head = lines[0].split()
    if len(head) < 3:
        raise CodeError("header must be 'q n m' (optionally followed by 'mod c0 ... ce')")
    field = parse_field(" ".join([head[0]] + head[3:]))
    n, m = int(head[1]), int(head[2])
    body = lines[1:]
    if len(body) != m:
        raise CodeError(f"expected {m} rows, found {len(body)}")
    rows = [[int(v) for v in ln.split()] for ln in body]
    if any(len(r) != n for r in rows):
        raise CodeError(f"every row must have {n} entries")
    return GeneratorMatrix(field, np.array(rows, dtype=np.int64))


def read_code(path) -> GeneratorMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read())


def format_code(G: GeneratorMatrix) -> str:
    f = G.field
    head = f"{f.q} {G.n} {G.m}" if f.e == 1 else f"{f.p}^{f.e} {G.n} {G.m} mod " + " ".join(map(str, f.modulus))
    body = [" ".join(map(str, row)) for row in G.rows.tolist()]
    return "\n".join([head] + body) + "\n"


def format_witness(witness: HashWitness | None, k: int) -> str:
    if witness is None:
        return f"verdict: {k}-hash\n"
    body = [" ".join(map(str, w)) for w in witness.codewords]
    return "\n".join(body + [f"verdict: not {k}-hash"]) + "\n"


def khash_work_estimate(G: GeneratorMatrix, k: int) -> int:
    """Upper estimate of coordinate comparisons for is_k_hash."""
    return math.comb(G.field.q**G.m - 1, k - 1) * G.n
