"""Truncated Taylor arithmetic (Taylor-mode differentiation along a curve).

A scalar jet stores the Taylor coefficients ``c[k] = f^(k)(s0) / k!`` of a
function of the curve parameter; a vector jet stores one coefficient row per
order.  Products are truncated convolutions, so any quantity assembled from
curve derivatives (frames, curvatures) keeps analytically exact derivatives
up to the surviving order.  Binary operations truncate to the shorter
operand; each ``derivative`` call costs one order.
"""

from math import factorial

import numpy as np

from .errors import DomainError


class RJet:
    """Scalar truncated Taylor series; ``c[k] = f^(k)/k!``."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)

    @classmethod
    def constant(cls, value: float, order: int) -> "RJet":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return self.c.size - 1

    @property
    def value(self) -> float:
        return float(self.c[0])

    def derivative_value(self, k: int) -> float:
        """k-th derivative of the underlying function at the base point."""
        if k > self.order:
            raise DomainError(f"jet of order {self.order} has no derivative {k}")
        return float(self.c[k]) * factorial(k)

    def _aligned(self, other: "RJet"):
        m = min(self.order, other.order)
        return self.c[: m + 1], other.c[: m + 1]

    def __add__(self, other: "RJet") -> "RJet":
        a, b = self._aligned(other)
        return RJet(a + b)

    def __sub__(self, other: "RJet") -> "RJet":
        a, b = self._aligned(other)
        return RJet(a - b)

    def __mul__(self, other: "RJet") -> "RJet":
        a, b = self._aligned(other)
        m = a.size
        out = np.zeros(m)
        for k in range(m):
            out[k] = np.dot(a[: k + 1], b[k::-1])
        return RJet(out)

    def __truediv__(self, other: "RJet") -> "RJet":
        a, b = self._aligned(other)
        if b[0] == 0.0:
            raise ZeroDivisionError("jet division by a jet with zero value")
        m = a.size
        out = np.zeros(m)
        for k in range(m):
            acc = a[k] - np.dot(out[:k], b[k:0:-1]) if k else a[0]
            out[k] = acc / b[0]
        return RJet(out)

    def sqrt(self) -> "RJet":
        if self.c[0] <= 0.0:
            raise DomainError("jet sqrt requires a strictly positive value")
        m = self.c.size
        out = np.zeros(m)
        out[0] = np.sqrt(self.c[0])
        for k in range(1, m):
            acc = self.c[k] - np.dot(out[1:k], out[k - 1 : 0 : -1])
            out[k] = acc / (2.0 * out[0])
        return RJet(out)

    def derivative(self) -> "RJet":
        if self.order < 1:
            raise DomainError("cannot differentiate an order-0 jet")
        k = np.arange(1, self.c.size)
        return RJet(self.c[1:] * k)


class VJet:
    """Vector truncated Taylor series; row k holds the order-k coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)
        if self.c.ndim != 2:
            raise DomainError("vector jet coefficients must be a 2-d array")

    @classmethod
    def from_derivatives(cls, derivs) -> "VJet":
        """Build from raw derivative vectors [W, W', W'', ...]."""
        rows = [np.asarray(d, dtype=float) / factorial(k) for k, d in enumerate(derivs)]
        return cls(np.vstack(rows))

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.c.shape[1]

    @property
    def value(self) -> np.ndarray:
        return self.c[0].copy()

    def _aligned(self, other: "VJet"):
        m = min(self.order, other.order)
        return self.c[: m + 1], other.c[: m + 1]

    def __add__(self, other: "VJet") -> "VJet":
        a, b = self._aligned(other)
        return VJet(a + b)

    def __sub__(self, other: "VJet") -> "VJet":
        a, b = self._aligned(other)
        return VJet(a - b)

    def scale(self, s: RJet) -> "VJet":
        m = min(self.order, s.order)
        out = np.zeros((m + 1, self.dim))
        for k in range(m + 1):
            for j in range(k + 1):
                out[k] += s.c[j] * self.c[k - j]
        return VJet(out)

    def dot(self, other: "VJet") -> RJet:
        a, b = self._aligned(other)
        m = a.shape[0]
        out = np.zeros(m)
        for k in range(m):
            for j in range(k + 1):
                out[k] += np.dot(a[j], b[k - j])
        return RJet(out)

    def norm_sq(self) -> RJet:
        return self.dot(self)

    def derivative(self) -> "VJet":
        if self.order < 1:
            raise DomainError("cannot differentiate an order-0 vector jet")
        k = np.arange(1, self.c.shape[0])[:, None]
        return VJet(self.c[1:] * k)

    def map_linear(self, fn) -> "VJet":
        """Apply a linear map (given as vector -> vector) row by row."""
        return VJet(np.vstack([fn(row) for row in self.c]))
