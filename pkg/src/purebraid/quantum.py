"""
The gl(N) braid invariant J for the defining representation, expanded in h
with q = e^h and truncated at order M.

The braiding on V (x) V is

    R(e_a (x) e_a) = q e_a (x) e_a
    R(e_a (x) e_b) = e_b (x) e_a + [a < b] (q - q^-1) e_a (x) e_b     (a != b)

so R is the flip at h = 0 and satisfies R - R^-1 = (q - q^-1) Id. J of a
word is the matrix product, in word order, of R^{+-1} acting on the tensor
slots (k, k+1). Permutation operators act by (Q_sigma)(e_{a_1} (x) ... ) =
e_{a_sigma(1)} (x) ..., and traces are tr_sigma(E) = tr(Q_sigma E).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .braid import (
    DOUBLE,
    OVER,
    BraidWord,
    Permutation,
    SingularBraidWord,
    braids_equal,
    chord_diagram_of_singular,
    is_pure,
    underlying_permutation,
)
from .errors import BudgetExceeded, InputError, PurityError
from .series import SeriesMatrix, SeriesScalar
from .weights import w_sigma

DEFAULT_ORDER = 4
MAX_DIMENSION = 81

# One double point contributes (q - q^-1) = 2h + O(h^3); measured by
# measure_kappa() on a single-chord braid and frozen here.
KAPPA = 2


def _scaled(kind: str, order: int) -> list[int]:
    """k! * (coefficient of h^k) for q, q^-1 and q - q^-1."""
    if kind == "q":
        return [1] * (order + 1)
    if kind == "qinv":
        return [(-1) ** k for k in range(order + 1)]
    if kind == "diff":
        return [1 - (-1) ** k for k in range(order + 1)]
    raise ValueError(kind)


def q_minus_q_inverse(order: int) -> SeriesScalar:
    return SeriesScalar.exp(1, order) - SeriesScalar.exp(-1, order)


def _check_params(N: int, M: int):
    if N < 2:
        raise InputError(f"N must be at least 2, got {N}", kind="range")
    if M < 1:
        raise InputError(f"truncation order must be at least 1, got {M}", kind="range")


def r_matrix(N: int, M: int = DEFAULT_ORDER) -> SeriesMatrix:
    _check_params(N, M)
    dim = N * N
    data = np.zeros((M + 1, dim, dim), dtype=object)
    data[:] = 0
    q, diff = _scaled("q", M), _scaled("diff", M)
    for a in range(N):
        for b in range(N):
            col = a * N + b
            if a == b:
                data[:, col, col] = q
            else:
                data[0, b * N + a, col] = 1
                if a < b:
                    data[:, col, col] = diff
    return SeriesMatrix(data, strands=2, base=N)


def _slot_tables(N: int, n: int, k: int):
    """For each basis index: its image under swapping slots k, k+1, and the pair (a, b)."""
    dim = N**n
    swap = np.empty(dim, dtype=np.int64)
    left = np.empty(dim, dtype=np.int64)
    right = np.empty(dim, dtype=np.int64)
    stride = N ** (n - k - 1)   # slot k+1 (1-based) has this place value
    for idx in range(dim):
        a = (idx // (stride * N)) % N
        b = (idx // stride) % N
        swap[idx] = idx + (b - a) * stride * N + (a - b) * stride
        left[idx], right[idx] = a, b
    return swap, left, right


class _Letters:
    """Right multiplication by R^{+-1} or (q - q^-1) on N^n-dimensional series matrices."""

    def __init__(self, N: int, n: int, M: int):
        self.N, self.n, self.M = N, n, M
        self.binom = [[math.comb(k, i) for i in range(k + 1)] for k in range(M + 1)]
        self.tables = {k: _slot_tables(N, n, k) for k in range(1, n)}
        self.q, self.qinv, self.diff = _scaled("q", M), _scaled("qinv", M), _scaled("diff", M)

    def _times_scalar(self, X: np.ndarray, hat_per_column) -> np.ndarray:
        """Columnwise multiplication by scalar series given as (M+1, D) scaled coefficients."""
        out = np.zeros_like(X)
        for k in range(self.M + 1):
            acc = X[k] * 0
            for i in range(k + 1):
                w = hat_per_column[i]
                if np.any(w != 0):
                    acc = acc + X[k - i] * (w * self.binom[k][i])
            out[k] = acc
        return out

    def apply(self, X: np.ndarray, k: int, mark) -> np.ndarray:
        if mark == DOUBLE:
            hat = np.array([[d] * X.shape[1] for d in self.diff], dtype=object)
            return self._times_scalar(X, hat)
        swap, left, right = self.tables[k]
        dim = X.shape[1]
        hat = np.zeros((self.M + 1, dim), dtype=object)
        hat[:] = 0
        equal = left == right
        if mark == 1:
            hat[:, equal] = np.array(self.q, dtype=object)[:, None]
            hat[:, left < right] = np.array(self.diff, dtype=object)[:, None]
        else:
            hat[:, equal] = np.array(self.qinv, dtype=object)[:, None]
            hat[:, left > right] = -np.array(self.diff, dtype=object)[:, None]
        out = self._times_scalar(X, hat)
        offdiag = ~equal
        out[:, :, offdiag] = out[:, :, offdiag] + X[:, :, swap[offdiag]]
        return out


def _guard(N: int, n: int, max_dimension: int):
    if N**n > max_dimension:
        raise BudgetExceeded(f"dimension {N}^{n} = {N**n} exceeds the limit {max_dimension}")


def _product(N: int, n: int, M: int, letters, max_dimension: int) -> SeriesMatrix:
    _check_params(N, M)
    _guard(N, n, max_dimension)
    ident = SeriesMatrix.identity(N**n, M, strands=n, base=N)
    X = ident.scaled
    ops = _Letters(N, n, M)
    for k, mark in letters:
        X = ops.apply(X, k, mark)
    return SeriesMatrix(X, strands=n, base=N)


def j_invariant(b: BraidWord, N: int, M: int = DEFAULT_ORDER,
                max_dimension: int = MAX_DIMENSION) -> SeriesMatrix:
    return _product(N, b.strands, M, b.letters, max_dimension)


def j_singular(s: SingularBraidWord, N: int, M: int = DEFAULT_ORDER,
               max_dimension: int = MAX_DIMENSION) -> SeriesMatrix:
    """Each double point becomes R - R^-1, which equals (q - q^-1) Id."""
    letters = [(k, DOUBLE if mark == DOUBLE else (1 if mark == OVER else -1))
               for k, mark in s.letters]
    return _product(N, s.strands, M, letters, max_dimension)


def local_operator(R: SeriesMatrix, k: int, n: int, N: int) -> SeriesMatrix:
    """R acting on tensor slots k, k+1 of (C^N)^(x)n, as a dense series matrix."""
    M = R.order
    out = SeriesMatrix.identity(N ** (k - 1), M).kron(R).kron(SeriesMatrix.identity(N ** (n - k - 1), M))
    return SeriesMatrix(out.scaled, strands=n, base=N)


def permutation_source_indices(sigma: Permutation, N: int) -> np.ndarray:
    """src[a] = index of the multi-index a o sigma^-1, so tr(Q_sigma E) = sum_a E[src[a], a]."""
    n = sigma.size
    inv = sigma.inverse()
    src = np.empty(N**n, dtype=np.int64)
    for idx, digits in enumerate(itertools.product(range(N), repeat=n)):
        moved = [digits[inv(i + 1) - 1] for i in range(n)]
        val = 0
        for d in moved:
            val = val * N + d
        src[idx] = val
    return src


def trace_sigma(E: SeriesMatrix, sigma: Permutation, N: int | None = None) -> SeriesScalar:
    N = N if N is not None else E.base
    if N is None or N**sigma.size != E.dimension:
        raise InputError(f"sigma on {sigma.size} points does not match dimension {E.dimension}")
    src = permutation_source_indices(sigma, N)
    cols = np.arange(E.dimension)
    coeffs = []
    for k in range(E.order + 1):
        total = sum(E.scaled[k][src, cols].tolist())
        coeffs.append(Fraction(total) / math.factorial(k))
    return SeriesScalar(tuple(coeffs))


def all_permutations(n: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


# -- consistency with weight systems ----------------------------------------

def strand_correction(s: SingularBraidWord) -> Permutation:
    """Permutation relating tensor slots at the top to starting positions.

    For a singular braid with pure resolution this is the identity; it is
    kept explicit so the comparison below states its convention.
    """
    return underlying_permutation(s.resolution())


@dataclass(frozen=True)
class ConsistencyResult:
    degree: int
    quantum: Fraction
    weight: int
    kappa: int

    @property
    def holds(self) -> bool:
        return self.quantum == Fraction(self.kappa**self.degree * self.weight)


def weight_consistency_values(s: SingularBraidWord, sigma: Permutation, N: int,
                              M: int | None = None, kappa: int = KAPPA) -> ConsistencyResult:
    if not is_pure(s.resolution()):
        raise PurityError("the all-over resolution of the singular braid is not pure")
    m = s.double_points
    M = max(m, 1) if M is None else M
    if M < m:
        raise InputError(f"truncation order {M} below the number of double points {m}", kind="range")
    pi = strand_correction(s)
    tr = trace_sigma(j_singular(s, N, M), pi.then(sigma), N)
    weight = w_sigma(chord_diagram_of_singular(s), sigma)(N)
    return ConsistencyResult(m, tr.coefficient(m), weight, kappa)


def weight_consistency(s: SingularBraidWord, sigma: Permutation, N: int,
                       M: int | None = None, kappa: int = KAPPA) -> bool:
    return weight_consistency_values(s, sigma, N, M, kappa).holds


def measure_kappa() -> Fraction:
    """Ratio of the h^1 trace coefficient to W_sigma for the one-chord braid ``d1 s1`` on 2 strands."""
    from .braid import parse_singular_braid

    s = parse_singular_braid("n=2; d1 s1")
    sigma = Permutation.identity(2)
    tr = trace_sigma(j_singular(s, 2, 1), sigma, 2)
    return tr.coefficient(1) / w_sigma(chord_diagram_of_singular(s), sigma)(2)


# -- separation --------------------------------------------------------------

@dataclass(frozen=True)
class SeparationReport:
    separated: bool
    degree: int | None = None
    sigma: Permutation | None = None
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    oracle_equal: bool | None = None
    N: int = 0
    M: int = 0

    @property
    def needs_more(self) -> bool:
        """The oracle says the braids differ but no trace coefficient did."""
        return not self.separated and self.oracle_equal is False

    def lines(self) -> list[str]:
        if self.separated:
            first = (f"separated=true degree={self.degree} sigma={self.sigma.cycle_notation()} "
                     f"lhs={self.lhs} rhs={self.rhs}")
        else:
            first = f"separated=false N={self.N} M={self.M}"
        out = [first, f"oracle={'equal' if self.oracle_equal else 'unequal'}"]
        if self.needs_more:
            out.append("flag=increase N or M")
        return out

    def to_dict(self) -> dict:
        return {
            "separated": self.separated,
            "degree": self.degree,
            "sigma": self.sigma.cycle_notation() if self.sigma else None,
            "lhs": str(self.lhs) if self.lhs is not None else None,
            "rhs": str(self.rhs) if self.rhs is not None else None,
            "oracle": "equal" if self.oracle_equal else "unequal",
            "flag": "increase N or M" if self.needs_more else None,
            "N": self.N,
            "M": self.M,
        }


def separate(a: BraidWord, b: BraidWord, N: int, M: int = DEFAULT_ORDER,
             max_dimension: int = MAX_DIMENSION) -> SeparationReport:
    if a.strands != b.strands:
        raise InputError(f"strand mismatch: {a.strands} vs {b.strands}")
    for w in (a, b):
        if not is_pure(w):
            raise PurityError(f"braid is not pure: {w}")
    ja = j_invariant(a, N, M, max_dimension)
    jb = j_invariant(b, N, M, max_dimension)
    equal = braids_equal(a, b)
    perms = all_permutations(a.strands)
    traces = [(sigma, trace_sigma(ja, sigma, N), trace_sigma(jb, sigma, N)) for sigma in perms]
    for m in range(M + 1):
        for sigma, ta, tb in traces:
            if ta.coefficient(m) != tb.coefficient(m):
                return SeparationReport(True, m, sigma, ta.coefficient(m), tb.coefficient(m),
                                        equal, N, M)
    return SeparationReport(False, oracle_equal=equal, N=N, M=M)
