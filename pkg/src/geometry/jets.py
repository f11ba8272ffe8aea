"""
Second-order forward-mode differentiation in two variables.

A ``Jet`` carries a value, its gradient and its Hessian with respect to
two seed variables. Parametrizations written with the functions below
run unchanged on floats, arrays or jets, so patches get exact first and
second partials from the same formula that evaluates them.
"""

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

Number = Union[float, int, np.floating]


@dataclass(frozen=True)
class Jet:
    value: float
    grad: np.ndarray
    hess: np.ndarray

    # numpy operands defer to the reflected Jet operators
    __array_ufunc__ = None

    @classmethod
    def variable(cls, value: float, index: int) -> "Jet":
        grad = np.zeros(2)
        grad[index] = 1.0
        return cls(float(value), grad, np.zeros((2, 2)))

    @classmethod
    def constant(cls, value: float) -> "Jet":
        return cls(float(value), np.zeros(2), np.zeros((2, 2)))

    def apply(self, f0: float, f1: float, f2: float) -> "Jet":
        """Chain rule for a scalar function with f(v), f'(v), f''(v) given."""
        return Jet(
            float(f0),
            f1 * self.grad,
            f1 * self.hess + f2 * np.outer(self.grad, self.grad),
        )

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value + other.value, self.grad + other.grad, self.hess + other.hess)
        return Jet(self.value + float(other), self.grad, self.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, -self.grad, -self.hess)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            cross = np.outer(self.grad, other.grad)
            return Jet(
                self.value * other.value,
                self.grad * other.value + self.value * other.grad,
                self.hess * other.value + self.value * other.hess + cross + cross.T,
            )
        c = float(other)
        return Jet(self.value * c, self.grad * c, self.hess * c)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        v = self.value
        return self.apply(1.0 / v, -1.0 / v ** 2, 2.0 / v ** 3)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / float(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * float(other)

    def __pow__(self, p: Number):
        p = float(p)
        if p == 0.0:
            return Jet.constant(1.0)
        v = self.value
        if p.is_integer():
            n = int(p)
            f1 = n * v ** (n - 1)
            f2 = n * (n - 1) * v ** (n - 2) if n != 1 else 0.0
            return self.apply(v ** n, f1, f2)
        return self.apply(v ** p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2))


Scalar = Union[Jet, float, np.ndarray]


def variables(u: float, v: float) -> tuple[Jet, Jet]:
    return Jet.variable(u, 0), Jet.variable(v, 1)


def value_of(a: Scalar):
    return a.value if isinstance(a, Jet) else a


def sin(a: Scalar):
    if isinstance(a, Jet):
        s, c = np.sin(a.value), np.cos(a.value)
        return a.apply(s, c, -s)
    return np.sin(a)


def cos(a: Scalar):
    if isinstance(a, Jet):
        s, c = np.sin(a.value), np.cos(a.value)
        return a.apply(c, -s, -c)
    return np.cos(a)


def exp(a: Scalar):
    if isinstance(a, Jet):
        e = np.exp(a.value)
        return a.apply(e, e, e)
    return np.exp(a)


def log(a: Scalar):
    if isinstance(a, Jet):
        v = a.value
        return a.apply(np.log(v), 1.0 / v, -1.0 / v ** 2)
    return np.log(a)


def sqrt(a: Scalar):
    if isinstance(a, Jet):
        r = np.sqrt(a.value)
        return a.apply(r, 0.5 / r, -0.25 / (r * a.value))
    return np.sqrt(a)


def arccos(a: Scalar):
    if isinstance(a, Jet):
        v = a.value
        w = 1.0 - v * v
        return a.apply(np.arccos(v), -1.0 / np.sqrt(w), -v / w ** 1.5)
    return np.arccos(a)


def lift(a: Scalar, fn: Callable[[float], tuple[float, float, float]]):
    """Apply a scalar function known through (f, f', f'') at a point."""
    if isinstance(a, Jet):
        return a.apply(*fn(a.value))
    return fn(a)[0]
