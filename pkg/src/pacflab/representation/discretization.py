"""
PACFLab Kernel Discretization

Quadrature rule for the m-sums of d_k(n): exact integer nodes
0..mid_len-1 continued over [mid_len - 1/2, inf) by Gauss-Legendre
panels in the log variable. Panels have unit width and start at the
end of the integer block, so a narrower span is a prefix of a wider one.
"""

import math

import numpy as np
from numpy.polynomial import legendre
from numpy.typing import NDArray
from scipy import linalg

from pacflab.beta.models import BetaSequence
from pacflab.core.errors import DivergenceError, LengthError

PANEL_WIDTH = 1.0


class KernelDiscretization:
    """
    Nodes x_i and weights w_i such that sum_m f(m) ~ sum_i w_i f(x_i).

    For a lag n the symmetrized kernel A_ij = sqrt(w_i) beta(x_i + x_j + n) sqrt(w_j)
    and g_i = sqrt(w_i) beta(x_i + n) give d_k(n) = g^T A^(k-2) g for k >= 2.
    """

    def __init__(self, beta: BetaSequence, mid_len: int, tail_span: float, tail_nodes: int):
        self.beta = beta
        self.mid_len = mid_len
        self.tail_span = tail_span
        self.tail_nodes = tail_nodes
        integer_nodes = np.arange(mid_len, dtype=np.float64)
        tail_x, tail_w = self._tail_rule(mid_len, tail_span, tail_nodes)
        if beta.extension.is_zero:
            tail_x, tail_w = tail_x[:0], tail_w[:0]
        self.panels = len(tail_x) // tail_nodes
        self.nodes = np.concatenate((integer_nodes, tail_x))
        self.weights = np.concatenate((np.ones(mid_len), tail_w))
        self._root_w = np.sqrt(self.weights)
        self._pair_index = np.add.outer(np.arange(mid_len), np.arange(mid_len))

    @staticmethod
    def _tail_rule(
        mid_len: int,
        tail_span: float,
        tail_nodes: int,
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        panels = math.ceil(tail_span / PANEL_WIDTH)
        if panels == 0:
            return np.zeros(0), np.zeros(0)
        t, w = legendre.leggauss(tail_nodes)
        starts = np.arange(panels) * PANEL_WIDTH
        tau = (starts[:, None] + (t[None, :] + 1.0) * PANEL_WIDTH / 2.0).ravel()
        base = np.tile(w * PANEL_WIDTH / 2.0, panels)
        x = (mid_len - 0.5) * np.exp(tau)
        return x, base * x

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def half_span_size(self) -> int:
        """Node count of the same rule with half the panels."""
        return self.mid_len + self.tail_nodes * (self.panels // 2)

    def required_length(self, n: int) -> int:
        return n + 2 * (self.mid_len - 1)

    def operator(self, n: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """(A, g) for lag n."""
        if self.beta.n_max < self.required_length(n):
            raise LengthError(
                f"beta covers 0..{self.beta.n_max}, lag {n} needs {self.required_length(n)}",
                available=self.beta.n_max,
                required=self.required_length(n),
            )
        m = self.mid_len
        values = self.beta.values
        h = np.empty(self.size)
        h[:m] = values[n : n + m]
        kernel = np.empty((self.size, self.size))
        kernel[:m, :m] = values[self._pair_index + n]
        if self.size > m:
            tail = self.nodes[m:]
            h[m:] = self.beta.extension(tail + n)
            cross = self.beta.extension(np.add.outer(self.nodes[:m], tail) + n)
            kernel[:m, m:] = cross
            kernel[m:, :m] = cross.T
            kernel[m:, m:] = self.beta.extension(np.add.outer(tail, tail) + n)
        g = self._root_w * h
        a = self._root_w[:, None] * kernel * self._root_w[None, :]
        return a, g

    def iterate(self, n: int, k_max: int) -> NDArray[np.float64]:
        """d_1(n)..d_k_max(n) by repeated application of the kernel."""
        a, g = self.operator(n)
        d = np.zeros(k_max)
        d[0] = self.beta.values[n]
        if k_max >= 2:
            d[1] = g @ g
        w = g
        for k in range(3, k_max + 1):
            w = a @ w
            d[k - 1] = g @ w
        return d

    def resolvent_sums(self, n: int) -> tuple[float, float]:
        """
        (sum_{k odd >= 3} d_k, sum_{k even >= 2} d_k) in closed form.

        With S- = g^T (I - A)^-1 g and S+ = g^T (I + A)^-1 g the odd part is
        (S- - S+)/2 and the even part (S- + S+)/2. Both factorizations exist
        exactly when the spectral radius of A is below 1.
        """
        full, _ = self.nested_resolvent_sums(n)
        return full

    def nested_resolvent_sums(self, n: int) -> tuple[tuple[float, float], tuple[float, float]]:
        """
        Resolvent sums on all nodes and on the half-span node set.

        The half-span nodes are a leading block of the full set, so the
        leading block of each Cholesky factor is the factor of the smaller
        problem and its forward solve is the head of the full one.
        """
        a, g = self.operator(n)
        identity = np.eye(self.size)
        head = self.half_span_size
        full: list[float] = []
        half: list[float] = []
        for sign in (-1.0, 1.0):
            try:
                factor, _ = linalg.cho_factor(identity + sign * a, lower=True)
            except linalg.LinAlgError as exc:
                raise DivergenceError(
                    f"outer series does not contract at lag {n}",
                    lag=n,
                ) from exc
            y = linalg.solve_triangular(factor, g, lower=True)
            full.append(float(y @ y))
            half.append(float(y[:head] @ y[:head]))
        return _split(*full), _split(*half)


def _split(s_minus: float, s_plus: float) -> tuple[float, float]:
    return (s_minus - s_plus) / 2.0, (s_minus + s_plus) / 2.0
