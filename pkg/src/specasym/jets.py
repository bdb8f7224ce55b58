"""Truncated multivariate Taylor jets with matrix coefficients.

A jet of order ``N`` in ``n`` variables is stored as an array whose
first axis runs over the multi-indices ``a`` with ``|a| <= N`` in graded
order; entry ``a`` holds the Taylor coefficient ``f_a`` so that
``f(x0 + h) = sum_a f_a h**a``.  The trailing two axes are the matrix
shape and the axes in between are batch axes, which broadcast.

Because the ordering is graded, truncating a jet to a lower order is a
leading slice.
"""
from __future__ import annotations

import functools
import itertools
import math

import numpy as np

__all__ = [
    "JetIndex",
    "jet_index",
    "jet_mul",
    "jet_inv",
    "jet_derivative",
    "jet_truncate",
    "monomial_jet",
    "power_of_norm_jet",
]


class JetIndex:
    """Graded multi-index bookkeeping for ``n`` variables up to order ``N``."""

    def __init__(self, n: int, order: int):
        self.n = n
        self.order = order
        alphas = []
        for d in range(order + 1):
            # reverse lexicographic inside each degree keeps x1-heavy first
            block = [a for a in itertools.product(range(d + 1), repeat=n) if sum(a) == d]
            block.sort(reverse=True)
            alphas.extend(block)
        self.alphas = np.array(alphas, dtype=np.int64).reshape(-1, n)
        self.size = len(alphas)
        self.position = {a: i for i, a in enumerate(alphas)}
        self.degrees = self.alphas.sum(axis=1)
        self.count_upto = [int(np.sum(self.degrees <= d)) for d in range(order + 1)]
        self.factorials = np.array(
            [math.prod(math.factorial(int(v)) for v in a) for a in alphas], dtype=float
        )

    @functools.cached_property
    def add_table(self) -> list[np.ndarray]:
        """``add_table[i][j]`` is the position of ``alpha_i + alpha_j``.

        Only ``j < count_upto[N - |alpha_i|]`` is stored.
        """
        table = []
        for i, a in enumerate(self.alphas):
            cnt = self.count_upto[self.order - int(self.degrees[i])]
            table.append(
                np.array(
                    [self.position[tuple(int(v) for v in a + b)] for b in self.alphas[:cnt]],
                    dtype=np.int64,
                )
            )
        return table

    @functools.cached_property
    def split_pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """For each target ``c``: index arrays of pairs ``a + b = c`` with ``a != 0``."""
        out = []
        for c in self.alphas:
            left, right = [], []
            for i, a in enumerate(self.alphas[: self.count_upto[int(c.sum())]]):
                b = c - a
                if i == 0 or np.any(b < 0):
                    continue
                left.append(i)
                right.append(self.position[tuple(int(v) for v in b)])
            out.append((np.array(left, dtype=np.int64), np.array(right, dtype=np.int64)))
        return out

    def derivative_map(self, beta: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
        """Source positions and factors for differentiating by ``beta``.

        The result has order ``N - |beta|``; its coefficient ``a`` equals
        ``(a + beta)! / a!`` times the source coefficient ``a + beta``.
        """
        return _derivative_map(self.n, self.order, tuple(beta))


@functools.lru_cache(maxsize=None)
def jet_index(n: int, order: int) -> JetIndex:
    return JetIndex(n, order)


@functools.lru_cache(maxsize=None)
def _derivative_map(n: int, order: int, beta: tuple[int, ...]):
    idx = jet_index(n, order)
    out_order = order - sum(beta)
    if out_order < 0:
        raise ValueError("derivative order exceeds jet order")
    sub = jet_index(n, out_order)
    src = np.empty(sub.size, dtype=np.int64)
    fac = np.empty(sub.size, dtype=float)
    b = np.array(beta)
    for i, a in enumerate(sub.alphas):
        src[i] = idx.position[tuple(int(v) for v in a + b)]
        fac[i] = math.prod(
            math.factorial(int(ai + bi)) / math.factorial(int(ai)) for ai, bi in zip(a, b)
        )
    return src, fac


def jet_truncate(arr: np.ndarray, n: int, order: int) -> np.ndarray:
    count = jet_index(n, order).size
    if arr.shape[0] < count:
        raise ValueError("jet is shorter than the requested order")
    return arr[:count]


def jet_order(arr: np.ndarray, n: int) -> int:
    size = arr.shape[0]
    order = 0
    while math.comb(n + order, order) < size:
        order += 1
    if math.comb(n + order, order) != size:
        raise ValueError("coefficient axis does not match a graded jet")
    return order


def _matmul_into(acc, a, b, small: bool):
    """``acc += a @ b``; elementwise for small matrices, which numpy handles faster."""
    if not small:
        acc += a @ b
        return acc
    for q in range(a.shape[-1]):
        acc += a[..., :, q : q + 1] * b[..., q : q + 1, :]
    return acc


def jet_mul(a: np.ndarray, b: np.ndarray, n: int, order: int) -> np.ndarray:
    """Matrix product of two jets truncated at ``order``."""
    idx = jet_index(n, order)
    a = a[: idx.size]
    b = b[: idx.size]
    batch = np.broadcast_shapes(a.shape[1:-2], b.shape[1:-2])
    dtype = np.result_type(a.dtype, b.dtype)
    out = np.zeros((idx.size,) + batch + (a.shape[-2], b.shape[-1]), dtype=dtype)
    small = a.shape[-1] <= 4
    table = idx.add_table
    for i in range(idx.size):
        ai = a[i]
        if not ai.any():
            continue
        cnt = table[i].shape[0]
        acc = np.zeros((cnt,) + batch + (a.shape[-2], b.shape[-1]), dtype=dtype)
        out[table[i]] += _matmul_into(acc, ai, b[:cnt], small)
    return out


def jet_inv(a: np.ndarray, n: int, order: int) -> np.ndarray:
    """Inverse of a matrix jet whose constant coefficient is invertible."""
    idx = jet_index(n, order)
    a = a[: idx.size]
    inv0 = np.linalg.inv(a[0])
    out = np.zeros(a.shape, dtype=np.result_type(a.dtype, np.complex128))
    out[0] = inv0
    pairs = idx.split_pairs
    for c in range(1, idx.size):
        left, right = pairs[c]
        acc = np.sum(a[left] @ out[right], axis=0)
        out[c] = -(inv0 @ acc)
    return out


def jet_derivative(arr: np.ndarray, n: int, order: int, beta) -> np.ndarray:
    """Jet of ``d^beta f`` (order ``order - |beta|``) from the jet of ``f``."""
    beta = tuple(int(v) for v in beta)
    if not any(beta):
        return arr[: jet_index(n, order).size]
    src, fac = _derivative_map(n, order, beta)
    return arr[src] * fac.reshape((-1,) + (1,) * (arr.ndim - 1))


def monomial_jet(xi0: np.ndarray, beta, order: int) -> np.ndarray:
    """Scalar jet of ``xi**beta`` at base points ``xi0`` of shape ``(B, n)``.

    Returned shape is ``(C, B)``.
    """
    xi0 = np.asarray(xi0, dtype=float)
    n = xi0.shape[-1]
    idx = jet_index(n, order)
    beta = np.asarray(beta, dtype=np.int64)
    out = np.zeros((idx.size,) + xi0.shape[:-1], dtype=float)
    for i, a in enumerate(idx.alphas):
        if np.any(a > beta):
            continue
        coef = math.prod(math.comb(int(bb), int(aa)) for aa, bb in zip(a, beta))
        out[i] = coef * np.prod(xi0 ** (beta - a), axis=-1)
    return out


def power_of_norm_jet(xi0: np.ndarray, s: float, order: int) -> np.ndarray:
    """Scalar jet of ``|xi|**s`` at base points ``xi0`` of shape ``(B, n)``.

    Uses ``|xi0 + h|**2 = u0 + delta`` with nilpotent ``delta`` and the
    binomial series of ``(u0 + delta)**(s/2)``.
    """
    xi0 = np.asarray(xi0, dtype=float)
    n = xi0.shape[-1]
    idx = jet_index(n, order)
    u = np.zeros((idx.size,) + xi0.shape[:-1] + (1, 1))
    for j in range(n):
        e = [0] * n
        e[j] = 2
        u[..., 0, 0] += monomial_jet(xi0, e, order)
    u0 = u[0, ..., 0, 0].copy()
    delta = u.copy()
    delta[0] = 0.0
    half = 0.5 * s
    out = np.zeros_like(u)
    out[0, ..., 0, 0] = u0**half
    term = np.zeros_like(u)
    term[0] = 1.0
    coeff = 1.0
    for k in range(1, order + 1):
        term = jet_mul(term, delta, n, order)
        coeff = coeff * (half - k + 1) / k
        out += (coeff * u0 ** (half - k))[..., None, None] * term
    return out[..., 0, 0]
