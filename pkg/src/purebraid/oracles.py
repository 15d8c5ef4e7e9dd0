"""
Independent reference computations used by the self-test and the test-suite.

None of these share code paths with the routines they check.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .braid import BraidWord, Permutation


# -- Artin's faithful action of B_n on the free group F_n --------------------

def _reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _inverse(word):
    return [-x for x in reversed(word)]


def artin_images(b: BraidWord) -> list[list[int]]:
    """Images of the free generators x_1..x_n under the action of b."""
    images = [[j] for j in range(1, b.strands + 1)]
    for k, e in b.letters:
        # sigma_k: x_k -> x_k x_{k+1} x_k^-1, x_{k+1} -> x_k ; inverse for e = -1
        if e == 1:
            sub = {k: [k, k + 1, -k], k + 1: [k]}
        else:
            sub = {k: [k + 1], k + 1: [-(k + 1), k, k + 1]}

        def apply(word):
            out = []
            for x in word:
                g = abs(x)
                img = sub.get(g, [g])
                out.extend(img if x > 0 else _inverse(img))
            return _reduce(out)

        images = [apply(w) for w in images]
    return images


def artin_trivial(b: BraidWord) -> bool:
    return all(w == [j] for j, w in enumerate(artin_images(b), start=1))


# -- Hilbert series of the non-decreasing basis ------------------------------

def hilbert_counts(n: int, max_degree: int) -> list[int]:
    """Coefficients of prod_{nu=2}^{n} 1/(1 - (nu-1) x) up to x^max_degree."""
    series = [1] + [0] * max_degree
    for nu in range(2, n + 1):
        geometric = [(nu - 1) ** k for k in range(max_degree + 1)]
        series = [sum(series[i] * geometric[d - i] for i in range(d + 1))
                  for d in range(max_degree + 1)]
    return series


# -- dense gl(N) operators ---------------------------------------------------

def elementary(N: int, a: int, b: int) -> np.ndarray:
    e = np.zeros((N, N), dtype=np.int64)
    e[a, b] = 1
    return e


def casimir_two_tensor(N: int) -> np.ndarray:
    """sum_{a,b} E_ab (x) E_ba, the metric dual of tr(XY) on gl(N)."""
    return sum(np.kron(elementary(N, a, b), elementary(N, b, a))
               for a in range(N) for b in range(N))


def flip(N: int) -> np.ndarray:
    out = np.zeros((N * N, N * N), dtype=np.int64)
    for a in range(N):
        for b in range(N):
            out[b * N + a, a * N + b] = 1
    return out


def chord_operator(N: int, n: int, i: int, j: int) -> np.ndarray:
    """sum_{a,b} E_ab in slot i and E_ba in slot j, identity elsewhere."""
    total = np.zeros((N**n, N**n), dtype=np.int64)
    for a in range(N):
        for b in range(N):
            factors = [np.eye(N, dtype=np.int64)] * n
            factors = list(factors)
            factors[i - 1] = elementary(N, a, b)
            factors[j - 1] = elementary(N, b, a)
            op = factors[0]
            for f in factors[1:]:
                op = np.kron(op, f)
            total += op
    return total


def permutation_operator(N: int, sigma: Permutation) -> np.ndarray:
    """Q with Q(e_{a_1} (x) ... (x) e_{a_n}) = e_{a_sigma(1)} (x) ... (x) e_{a_sigma(n)}."""
    n = sigma.size
    dim = N**n
    Q = np.zeros((dim, dim), dtype=np.int64)
    digits = list(itertools.product(range(N), repeat=n))
    index = {d: idx for idx, d in enumerate(digits)}
    for col, d in enumerate(digits):
        image = tuple(d[sigma(i + 1) - 1] for i in range(n))
        Q[index[image], col] = 1
    return Q


def dense_weight(N: int, n: int, chords, sigma: Permutation, cache: dict | None = None) -> int:
    """tr(Q_sigma T_1 ... T_m) with T_t the chord operators, multiplied in word order."""
    cache = {} if cache is None else cache
    E = np.eye(N**n, dtype=np.int64)
    for i, j in chords:
        key = (N, n, i, j)
        if key not in cache:
            cache[key] = chord_operator(N, n, i, j)
        E = E @ cache[key]
    return int(np.trace(permutation_operator(N, sigma) @ E))


# -- series ------------------------------------------------------------------

def q_minus_q_inverse_by_factorials(order: int) -> list[Fraction]:
    """e^h - e^-h from the factorial expansion: 2 h^k / k! for odd k."""
    return [Fraction(2, math.factorial(k)) if k % 2 else Fraction(0) for k in range(order + 1)]
