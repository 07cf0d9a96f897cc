#!/usr/bin/python
from enum import Enum
import numpy as np
from math import pi

from util.util import NonConvergenceError, SingularCircleError

from typing import Callable, Dict, List, Sequence


class EnumNorm(Enum):
    """
    Specify whether a vector of complex numbers is measured with the euclidean
    norm or with the max norm
    """
    EUCLIDEAN = 0
    MAX       = 1

    @classmethod
    def names(self) -> List[str]:
        return list(self.__members__.keys())


QUADRATURE_PARAMS = { 'start': 2 ** 12, 'cap': 2 ** 18, 'tol': 1e-8 }

# zeros closer than this to the circle make the integrand singular
SINGULAR_GAP = 1e-12

# zeros within this distance of the circle shift the nodes off their argument
NEAR_GAP = 1e-2


def circle_points(r: float, N: int, offset: float = 0) -> np.ndarray:
    """
    Return N points r e^{i theta_k} on the circle of radius r where

        theta_k = offset + 2 pi k / N

    Params
    ------
    r
        radius of the circle, in (0, 1)
    N
        number of equally spaced nodes
    offset
        angle of the first node

    Returns
    ------
    numpy array of shape (N,) of complex points
    """
    theta = offset + 2 * pi * np.arange(N) / N
    return r * np.exp(1j * theta)


def vector_norm(V: np.ndarray, norm: EnumNorm = EnumNorm.MAX) -> np.ndarray:
    """
    Norm of complex vectors stored along the first axis of V, so an array of
    shape (n, N) gives N norms

    Params
    ------
    V
        numpy array of shape (n, ...) with n components
    norm
        euclidean or max

    Returns
    ------
    numpy array of shape V.shape[1:]
    """
    A = np.abs(V)
    if norm == EnumNorm.MAX:
        return np.max(A, axis = 0)
    elif norm == EnumNorm.EUCLIDEAN:
        return np.sqrt(np.sum(A ** 2, axis = 0))
    else:
        raise ValueError(f"Norm must be of type EnumNorm, but it's {norm}")


def node_offset(N: int, near: Sequence[complex]) -> float:
    """
    Angle of the first node such that the argument of the nearest of the given
    near-zeros falls halfway between two nodes of an N-point grid
    """
    if not len(near):
        return 0.0
    a = np.angle(near[0])
    return float(np.mod(a + pi / N, 2 * pi / N))


def check_circle(r: float, zeros: Sequence[complex]) -> List[complex]:
    """
    Given the zeros of the integrand's holomorphic part, fail if one of them
    lies on the circle of radius r, and return those close to it, nearest
    first
    """
    gaps = sorted(((abs(abs(a) - r), a) for a in zeros), key = lambda g: g[0])
    if gaps and gaps[0][0] < SINGULAR_GAP:
        raise SingularCircleError(
            f"Zero {gaps[0][1]} lies on the circle of radius {r}; perturb r")

    return [ a for (g, a) in gaps if g < NEAR_GAP ]


def circle_mean(
        fn: Callable[[np.ndarray], np.ndarray], r: float,
        near: Sequence[complex] = (), params: Dict[str, float] = {}
    ) -> float:
    """
    Average of fn over the circle of radius r

        (1/2pi) int_0^{2pi} fn(r e^{i theta}) d theta

    with the periodic trapezoidal rule on a uniform grid. The number of nodes
    starts at params['start'] and doubles until two successive values differ
    by less than params['tol'], up to params['cap'] nodes.

    Params
    ------
    fn
        vectorised real function of complex points
    r
        radius of the circle
    near
        zeros of the integrand lying close to the circle (as returned by
        `check_circle`); the grid is shifted half a step off the nearest
    params
        overrides for 'start', 'cap' and 'tol'

    Returns
    ------
    the circle average as a float
    """
    params = QUADRATURE_PARAMS | params
    N = int(params['start'])
    prev = np.mean(fn(circle_points(r, N, node_offset(N, near))))

    while N < params['cap']:
        N *= 2
        curr = np.mean(fn(circle_points(r, N, node_offset(N, near))))
        if abs(curr - prev) < params['tol']:
            return float(curr)
        prev = curr

    raise NonConvergenceError(
        f"Circle average at r = {r} did not reach tolerance {params['tol']} with {N} nodes")
