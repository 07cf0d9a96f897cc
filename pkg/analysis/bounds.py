#!/usr/bin/python
"""
Exact integer arithmetic behind the degree bounds: the jet parameters of
order k = n + 1, the decomposition d = eps + (r + k) delta, the threshold on
the degree and the bound on the Gauss map of a minimal surface.

Everything here is a Python int or a Fraction; no floating point.
"""
from fractions import Fraction

from util.util import DomainError, log

from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple


class JetParameters(NamedTuple):
    """
    Tuple container for the constants of a hypersurface in CP^n at jet order
    k = n + 1. `r0` is the product form; `r0_sum` the sum form, and
    `r0_agree` whether they coincide.
    """
    n: int
    k: int
    k_prime: int
    delta: int
    r0: int
    r0_sum: int
    r0_agree: bool


class Decomposition(NamedTuple):
    """
    d = epsilon + (r + k) delta with k <= epsilon <= k + delta - 1, and
    whether r > 2 delta^(k-1) k' + delta^(k-1) k (epsilon + k delta)
    """
    d: int
    epsilon: int
    r: int
    holds: bool


class Threshold(NamedTuple):
    threshold: int
    stated: int
    ok: bool


class TwistRatios(NamedTuple):
    """
    Exact ratios m/m_tilde per alpha, and their limit as alpha grows
    """
    alphas: List[int]
    ratios: List[Fraction]
    limit: Fraction
    ok: bool


def jet_parameters(n: int) -> JetParameters:
    """
    k = n + 1, k' = k(k+1)/2, delta = (k+1)n + k and

        r0 = delta^(k-1) (delta+1) (delta+2)

    compared with the sum form 2 delta^(k-1) k' + delta^(k-1) (delta+1)^2.
    The two agree iff 2k' = delta + 1; a disagreement is reported, never
    reconciled, and the product form is the one used.
    """
    if n < 1:
        raise DomainError(f"Dimension n = {n} must be at least 1")

    k = n + 1
    k_prime = k * (k + 1) // 2
    delta = (k + 1) * n + k
    r0 = delta ** (k - 1) * (delta + 1) * (delta + 2)
    r0_sum = 2 * delta ** (k - 1) * k_prime + delta ** (k - 1) * (delta + 1) ** 2

    if r0 != r0_sum:
        log(f"Found r0 = {r0} but the sum form gives {r0_sum} for n = {n}; using {r0}")

    return JetParameters(n, k, k_prime, delta, r0, r0_sum, r0 == r0_sum)


def key_inequality(n: int) -> bool:
    """
    k (k + delta - 1 + k delta) < (delta + 1)^2
    """
    p = jet_parameters(n)
    k, delta = p.k, p.delta
    return k * (k + delta - 1 + k * delta) < (delta + 1) ** 2


def degree_threshold(n: int) -> int:
    """
    (r0 + k) delta + 2 delta, the degree from which the decomposition is
    guaranteed
    """
    p = jet_parameters(n)
    return (p.r0 + p.k) * p.delta + 2 * p.delta


def r_bound(n: int, epsilon: int) -> int:
    """
    2 delta^(k-1) k' + delta^(k-1) k (epsilon + k delta), which r must exceed
    """
    p = jet_parameters(n)
    return 2 * p.delta ** (p.k - 1) * p.k_prime + p.delta ** (p.k - 1) * p.k * (epsilon + p.k * p.delta)


def decompose_degree(n: int, d: int) -> Optional[Decomposition]:
    """
    Write d = epsilon + (r + k) delta with epsilon the unique integer in
    [k, k + delta - 1] congruent to d - k delta modulo delta.

    Returns None (infeasible) below the threshold (r0 + k) delta + 2 delta.
    Infeasibility at the threshold says nothing about smaller degrees.
    """
    if d < 1:
        raise DomainError(f"Degree d = {d} must be at least 1")

    p = jet_parameters(n)
    if d < degree_threshold(n):
        return None

    k, delta = p.k, p.delta
    epsilon = k + (d - k * delta - k) % delta
    r = (d - epsilon) // delta - k
    holds = r > r_bound(n, epsilon)
    if not holds:
        log(f"Found d = {d}, n = {n}: r = {r} does not exceed {r_bound(n, epsilon)}")

    return Decomposition(d, epsilon, r, holds)


def stated_bound(n: int) -> int:
    """
    (n+1)^(n+3) (n+2)^(n+3). A curve in CP^n avoiding a generic hypersurface
    of at least this degree is not transcendental; avoidance_check in
    analysis.nevanlinna samples that statement.
    """
    if n < 1:
        raise DomainError(f"Dimension n = {n} must be at least 1")
    return (n + 1) ** (n + 3) * (n + 2) ** (n + 3)


def threshold_vs_stated_bound(n: int) -> Threshold:
    """
    The exact threshold (r0 + k) delta + 2 delta, the stated bound
    (n+1)^(n+3) (n+2)^(n+3) and whether the former is below the latter
    """
    threshold, stated = degree_threshold(n), stated_bound(n)
    return Threshold(threshold, stated, threshold < stated)


def main_theorem_bound(n: int) -> int:
    """
    n^(n+2) (n+1)^(n+2), the degree bound for the Gauss map of a minimal
    surface in R^n, which lands in CP^(n-1).

    The expected optimal bound is n(n+1)/2, the count of hyperplanes such a
    Gauss map can omit. It is a conjecture and nothing here computes with it.
    """
    if n < 2:
        raise DomainError(f"Ambient dimension n = {n} must be at least 2")
    return n ** (n + 2) * (n + 1) ** (n + 2)


def fujimoto_regime(n: int, q: int) -> bool:
    """
    Whether q hyperplanes in CP^n give a Wronskian differential with
    m_tilde = q - (n+1) > 2m = n(n+1)
    """
    return q - (n + 1) > n * (n + 1)


def twist_ratio_limit(
        n: int, alphas: Iterable[int], d: Optional[int] = None,
        beta: int = 0, beta_tilde: int = 0
    ) -> TwistRatios:
    """
    Exact ratios m/m_tilde with

        m       = beta + alpha delta^(k-1) k'
        m_tilde = -beta_tilde + alpha (r - delta^(k-1) k (epsilon + k delta))

    for a feasible decomposition of d (the threshold degree by default), and
    their limit delta^(k-1) k' / (r - delta^(k-1) k (epsilon + k delta)),
    which must be below 1/2. beta and beta_tilde are existential constants
    with no computable value; they default to 0, so every conclusion drawn
    here is asymptotic in alpha.

    Params
    ------
    n
        dimension
    alphas
        positive integers
    d
        degree, at least the threshold
    beta, beta_tilde
        placeholders for the unknown constants

    Returns
    ------
    TwistRatios
    """
    p = jet_parameters(n)
    d = degree_threshold(n) if d is None else d
    dec = decompose_degree(n, d)
    if dec is None or not dec.holds:
        raise DomainError(f"Degree d = {d} has no feasible decomposition for n = {n}")

    alphas = list(alphas)
    if any(a < 1 for a in alphas):
        raise DomainError('Values of alpha must be positive integers')

    grow = p.delta ** (p.k - 1) * p.k_prime
    twist = dec.r - p.delta ** (p.k - 1) * p.k * (dec.epsilon + p.k * p.delta)

    ratios = []
    for alpha in alphas:
        m_tilde = -beta_tilde + alpha * twist
        if m_tilde == 0:
            raise DomainError(f"Vanishing order is zero at alpha = {alpha}")
        ratios.append(Fraction(beta + alpha * grow, m_tilde))

    limit = Fraction(grow, twist)
    log('Twist ratios are asymptotic in alpha: beta and beta_tilde are placeholders')

    return TwistRatios(alphas, ratios, limit, limit < Fraction(1, 2))


BOUNDS_HEADER = [ 'n', 'k', "k'", 'delta', 'r0', 'threshold', 'stated_bound', 'ok' ]


def bounds_table(ns: Iterable[int]) -> List[List[Any]]:
    """
    Rows n, k, k', delta, r0, threshold, stated_bound, ok for each n
    """
    rows = []
    for n in ns:
        p = jet_parameters(n)
        t = threshold_vs_stated_bound(n)
        rows.append([ n, p.k, p.k_prime, p.delta, p.r0, t.threshold, t.stated, t.ok ])

    return rows
