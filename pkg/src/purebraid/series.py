"""Exact power series in h truncated at a fixed order, scalar and matrix valued."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from .errors import InputError


@dataclass(frozen=True)
class SeriesScalar:
    """c_0 + c_1 h + ... + c_M h^M with rational c_k, computed modulo h^(M+1)."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def constant(cls, value, order: int) -> "SeriesScalar":
        return cls((Fraction(value),) + (Fraction(0),) * order)

    @classmethod
    def exp(cls, scale: int, order: int) -> "SeriesScalar":
        """e^(scale*h)."""
        return cls(tuple(Fraction(scale**k, math.factorial(k)) for k in range(order + 1)))

    def _check(self, other: "SeriesScalar"):
        if other.order != self.order:
            raise InputError(f"truncation mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "SeriesScalar") -> "SeriesScalar":
        self._check(other)
        return SeriesScalar(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return SeriesScalar(tuple(-a for a in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SeriesScalar):
            return SeriesScalar(tuple(a * other for a in self.coefficients))
        self._check(other)
        a, b = self.coefficients, other.coefficients
        return SeriesScalar(tuple(sum(a[i] * b[k - i] for i in range(k + 1))
                                  for k in range(self.order + 1)))

    __rmul__ = __mul__

    def inverse(self) -> "SeriesScalar":
        a = self.coefficients
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [1 / a[0]]
        for k in range(1, self.order + 1):
            out.append(-sum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0])
        return SeriesScalar(tuple(out))

    def coefficient(self, k: int) -> Fraction:
        return self.coefficients[k] if k <= self.order else Fraction(0)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __str__(self):
        return format_series(self)


def format_series(s: SeriesScalar) -> str:
    parts = []
    for k, c in enumerate(s.coefficients):
        text = str(c)
        if k == 0:
            parts.append(text)
        elif k == 1:
            parts.append(f"{text}*h")
        else:
            parts.append(f"{text}*h^{k}")
    return " + ".join(parts) + f" (mod h^{s.order + 1})"


def _binomial_rows(order: int) -> list[list[int]]:
    return [[math.comb(k, i) for i in range(k + 1)] for k in range(order + 1)]


class SeriesMatrix:
    """Square matrix over truncated series.

    Stored as an object array ``scaled`` of shape (M+1, D, D) whose slice k
    holds ``k! * (coefficient of h^k)``. In that scaling the exponential
    series have integer entries and the Cauchy product becomes a binomial
    convolution, so braid computations stay in Python integers.
    """

    def __init__(self, scaled: np.ndarray, strands: int | None = None, base: int | None = None):
        if scaled.ndim != 3 or scaled.shape[1] != scaled.shape[2]:
            raise InputError("series matrix data must have shape (M+1, D, D)")
        self.scaled = scaled
        self.strands = strands
        self.base = base
        if strands is not None and base is not None and base**strands != scaled.shape[1]:
            raise InputError(f"dimension {scaled.shape[1]} is not {base}^{strands}")

    @property
    def order(self) -> int:
        return self.scaled.shape[0] - 1

    @property
    def dimension(self) -> int:
        return self.scaled.shape[1]

    @classmethod
    def identity(cls, dimension: int, order: int, strands=None, base=None) -> "SeriesMatrix":
        data = np.zeros((order + 1, dimension, dimension), dtype=object)
        data[:] = 0
        for a in range(dimension):
            data[0, a, a] = 1
        return cls(data, strands, base)

    @classmethod
    def from_coefficients(cls, coefficients: Sequence, strands=None, base=None) -> "SeriesMatrix":
        """Build from ordinary coefficient matrices (index = power of h)."""
        data = np.array([np.array(c, dtype=object) * math.factorial(k)
                         for k, c in enumerate(coefficients)], dtype=object)
        return cls(data, strands, base)

    def coefficient(self, k: int) -> np.ndarray:
        """Ordinary coefficient of h^k as an object array of Fractions."""
        f = math.factorial(k)
        return np.vectorize(lambda x: Fraction(x) / f, otypes=[object])(self.scaled[k])

    def entry(self, a: int, b: int) -> SeriesScalar:
        return SeriesScalar(tuple(Fraction(self.scaled[k, a, b]) / math.factorial(k)
                                  for k in range(self.order + 1)))

    def _like(self, data) -> "SeriesMatrix":
        return SeriesMatrix(data, self.strands, self.base)

    def _check(self, other: "SeriesMatrix"):
        if other.order != self.order or other.dimension != self.dimension:
            raise InputError("series matrices differ in order or dimension")

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check(other)
        return self._like(self.scaled + other.scaled)

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check(other)
        return self._like(self.scaled - other.scaled)

    def __matmul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check(other)
        binom = _binomial_rows(self.order)
        out = np.empty_like(self.scaled)
        for k in range(self.order + 1):
            acc = None
            for i in range(k + 1):
                term = (self.scaled[i] @ other.scaled[k - i]) * binom[k][i]
                acc = term if acc is None else acc + term
            out[k] = acc
        return self._like(out)

    def scale_series(self, s: SeriesScalar) -> "SeriesMatrix":
        """Multiply every entry by the scalar series s."""
        if s.order != self.order:
            raise InputError("truncation mismatch")
        hat = [s.coefficients[k] * math.factorial(k) for k in range(self.order + 1)]
        hat = [int(x) if x.denominator == 1 else x for x in hat]
        out = np.empty_like(self.scaled)
        binom = _binomial_rows(self.order)
        for k in range(self.order + 1):
            acc = self.scaled[k] * 0
            for i in range(k + 1):
                if hat[i]:
                    acc = acc + self.scaled[k - i] * (binom[k][i] * hat[i])
            out[k] = acc
        return self._like(out)

    def kron(self, other: "SeriesMatrix") -> "SeriesMatrix":
        if other.order != self.order:
            raise InputError("truncation mismatch")
        binom = _binomial_rows(self.order)
        out = []
        for k in range(self.order + 1):
            acc = None
            for i in range(k + 1):
                term = np.kron(self.scaled[i], other.scaled[k - i]) * binom[k][i]
                acc = term if acc is None else acc + term
            out.append(acc)
        return SeriesMatrix(np.array(out, dtype=object))

    def inverse(self) -> "SeriesMatrix":
        """Inverse over truncated series; needs an invertible constant term."""
        a0 = sympy.Matrix(self.coefficient(0).tolist())
        if a0.det() == 0:
            raise ZeroDivisionError("constant term is singular")
        inv0 = np.array(a0.inv().tolist(), dtype=object)
        inv0 = np.vectorize(lambda x: Fraction(int(x.p), int(x.q)), otypes=[object])(inv0)
        coeffs = [self.coefficient(k) for k in range(self.order + 1)]
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = sum(coeffs[i] @ out[k - i] for i in range(1, k + 1))
            out.append(-(inv0 @ acc))
        return SeriesMatrix.from_coefficients(out, self.strands, self.base)

    def is_zero(self) -> bool:
        return not np.any(self.scaled != 0)

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.scaled.shape == other.scaled.shape and not np.any(self.scaled != other.scaled)

    def lowest_nonzero_order(self) -> int | None:
        for k in range(self.order + 1):
            if np.any(self.scaled[k] != 0):
                return k
        return None
