#!/usr/bin/python
"""
Value distribution of holomorphic maps from the unit disc to CP^n: divisors
and their truncated counting functions, the proximity and order functions of
a curve, the First Main Theorem defect, the transcendence ratio and the
circle integrals behind the logarithmic derivative estimates.

Curves have polynomial or rational components with exact coefficients, so
that the divisor of a pullback is computed exactly. Circle averages use the
adaptive periodic trapezoid of util.geometry.
"""
from math import inf, log as ln, pi
import numpy as np
import sympy as sp
from sympy.polys.domains import QQ, QQ_I, ZZ, ZZ_I

from analysis.bounds import stated_bound
from jets.germ import RADIUS_SLACK, Germ
from util.geometry import EnumNorm, QUADRATURE_PARAMS, check_circle, circle_mean, vector_norm
from util.util import INFINITY, ContainmentError, DomainError, PoleError, check_grid, \
    check_radius, log

from typing import Any, Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union


z = sp.Symbol('z')

# roots of a numerically factored pullback closer than this are one zero
CLUSTER_GAP = 1e-6

Truncation = Optional[Union[int, str]]


def parse_disc_function(expr: Union[str, sp.Expr]) -> sp.Expr:
    """
    Read a function of z from a string such as '1 - z^2/4' or '1/(1-z)', with
    decimals read as exact rationals
    """
    if isinstance(expr, sp.Basic):
        return expr
    try:
        return sp.sympify(str(expr).replace('^', '**'), locals = { 'z': z }, rational = True)
    except (sp.SympifyError, SyntaxError, TypeError) as e:
        raise DomainError(f"Cannot read {expr!r} as a function of z: {e}")


def lambdify_disc(expr: sp.Expr) -> Callable[[np.ndarray], np.ndarray]:
    """
    Vectorised complex evaluation of a function of z; constants are broadcast
    to the shape of the input
    """
    fn = sp.lambdify(z, expr, 'numpy')
    def evaluate(Z: np.ndarray) -> np.ndarray:
        Z = np.asarray(Z, dtype = complex)
        return np.broadcast_to(np.asarray(fn(Z), dtype = complex), Z.shape)
    return evaluate


def polynomial_roots(poly: sp.Poly) -> List[complex]:
    """
    Numerical roots of a univariate sympy polynomial
    """
    if poly.degree() < 1:
        return []
    return [ complex(a) for a in np.roots([ complex(c) for c in poly.all_coeffs() ]) ]


class DiscDivisor:
    """
    A finite sum of points a_i of the unit disc with positive multiplicities
    alpha_i; the multiplicity at the origin is kept in its own slot.
    """
    def __init__(self, support: Iterable[Tuple[complex, int]] = (), origin: int = 0) -> None:
        if origin < 0:
            raise DomainError(f"Origin multiplicity {origin} must be non-negative")

        self.origin = int(origin)
        self.points = {}
        for (a, alpha) in support:
            a = complex(a)
            if alpha < 1 or int(alpha) != alpha:
                raise DomainError(f"Multiplicity {alpha} at {a} must be a positive integer")
            if abs(a) >= 1:
                raise DomainError(f"Point {a} lies outside the unit disc")
            if a == 0:
                self.origin += int(alpha)
                continue
            if a in self.points:
                raise DomainError(f"Point {a} appears twice in the support")
            self.points[a] = int(alpha)


    @property
    def support(self) -> List[Tuple[complex, int]]:
        return sorted(self.points.items(), key = lambda p: (abs(p[0]), np.angle(p[0])))


    @property
    def degree(self) -> int:
        return self.origin + sum(self.points.values())


    def __add__(self, other: 'DiscDivisor') -> 'DiscDivisor':
        points = dict(self.points)
        for (a, alpha) in other.points.items():
            points[a] = points.get(a, 0) + alpha
        return DiscDivisor(points.items(), self.origin + other.origin)


    def __repr__(self) -> str:
        return f"DiscDivisor(origin = {self.origin}, support = {self.support})"


def _truncate(alpha: int, k: Truncation) -> int:
    if k is None or k == INFINITY or k == inf:
        return alpha
    if k < 1:
        raise DomainError(f"Truncation level k = {k} must be at least 1")
    return min(int(k), alpha)


def truncated_degree(E: DiscDivisor, t: float, k: Truncation = None) -> int:
    """
    n^[k](t, E): the sum of min(k, alpha_i) over the points with |a_i| < t,
    the origin included. k = None (or 'inf') means no truncation.
    """
    t = check_radius(t)
    return _truncate(E.origin, k) + sum(_truncate(alpha, k)
                                        for (a, alpha) in E.points.items() if abs(a) < t)


def counting_function(E: DiscDivisor, r: float, k: Truncation = None) -> float:
    """
    N^[k](r, E) in closed form

        N = min(k, n(0)) log r + sum_{0 < |a_i| < r} min(k, alpha_i) log(r / |a_i|)

    The integral of n(t)/t from 0 diverges when E charges the origin, hence the
    usual correction n(0) log r.
    """
    r = check_radius(r)
    N = _truncate(E.origin, k) * ln(r)
    for (a, alpha) in E.support:
        if abs(a) < r:
            N += _truncate(alpha, k) * ln(r / abs(a))
    return N


class ProjectiveCurve:
    """
    A holomorphic map f = [f_0 : ... : f_n] from the disc of radius r_max < 1 to
    CP^n, given by polynomial components in z with exact coefficients and no
    common zero. Use `from_components` to clear denominators and common factors
    from arbitrary rational components.
    """
    def __init__(self, components: Sequence[Any], r_max: float = 0.95) -> None:
        components = [ sp.expand(parse_disc_function(c)) for c in components ]
        if len(components) < 2:
            raise DomainError('A curve in CP^n needs at least two components')
        if all(c == 0 for c in components):
            raise DomainError('All components vanish identically')
        for c in components:
            if not c.is_polynomial(z):
                raise DomainError(f"Component {c} is not a polynomial in z")
        if sp.Poly(sp.gcd_list([ c for c in components if c != 0 ]), z).degree() > 0:
            raise DomainError("Components share a common zero, reduce them with from_components")

        self.components = tuple(components)
        self.r_max = check_radius(r_max)
        self.fns = [ lambdify_disc(c) for c in components ]


    @classmethod
    def from_components(self,
            components: Sequence[Any], r_max: float = 0.95, primitive: bool = False
        ) -> 'ProjectiveCurve':
        """
        Reduced representation of [f_0 : ... : f_n] for rational components:
        multiply through by the monic lcm of the denominators, then divide by
        the monic gcd of the numerators. With `primitive` the numeric
        denominators of the coefficients are cleared as well.
        """
        exprs = [ sp.together(parse_disc_function(c)) for c in components ]
        dens = [ sp.Poly(sp.fraction(e)[1], z) for e in exprs ]
        lcm = sp.Poly(1, z)
        for den in dens:
            lcm = lcm.lcm(den)
        lcm = lcm.monic().as_expr() if lcm.degree() > 0 else sp.Integer(1)

        polys = [ sp.expand(sp.cancel(e * lcm)) for e in exprs ]
        for p in polys:
            if not p.is_polynomial(z):
                raise DomainError(f"Component {p} is not rational in z")

        nonzero = [ p for p in polys if p != 0 ]
        if not nonzero:
            raise DomainError('All components vanish identically')
        gcd = sp.Poly(sp.gcd_list(nonzero), z)
        if gcd.degree() > 0:
            g = gcd.monic().as_expr()
            polys = [ sp.expand(sp.cancel(p / g)) for p in polys ]

        if primitive:
            scale = sp.ilcm(*[ sp.fraction(part)[1]
                               for p in polys for c in sp.Poly(p, z).coeffs()
                               for part in c.as_real_imag() ], 1)
            polys = [ sp.expand(p * scale) for p in polys ]

        return self(polys, r_max)


    @property
    def n(self) -> int:
        return len(self.components) - 1


    def values(self, Z: np.ndarray) -> np.ndarray:
        """
        Components at the points Z, as an array of shape (n+1, *Z.shape)
        """
        return np.stack([ fn(Z) for fn in self.fns ])


    def norm(self, Z: np.ndarray, norm: EnumNorm = EnumNorm.MAX) -> np.ndarray:
        """
        ||f(z)|| = max_i |f_i(z)|
        """
        return vector_norm(self.values(Z), norm)


    def scaled(self, c: Any) -> 'ProjectiveCurve':
        """
        The representation c f of the same map
        """
        c = parse_disc_function(c) if isinstance(c, str) else sp.nsimplify(c)
        return ProjectiveCurve([ c * f for f in self.components ], self.r_max)


    def is_constant(self) -> bool:
        """
        True iff all components are proportional, i.e. every f_i f_j' - f_j f_i'
        vanishes identically
        """
        fs = self.components
        return all(sp.expand(fs[i] * sp.diff(fs[j], z) - fs[j] * sp.diff(fs[i], z)) == 0
                   for i in range(len(fs)) for j in range(i + 1, len(fs)))


    def __repr__(self) -> str:
        return '[' + ' : '.join(str(c) for c in self.components) + ']'


class GermCurve:
    """
    A curve whose components are germs of holomorphic functions on the disc,
    only used to sample growth (the transcendence ratio)
    """
    def __init__(self, germs: Sequence[Germ], r_max: Optional[float] = None) -> None:
        if len(germs) < 2:
            raise DomainError('A curve in CP^n needs at least two components')
        self.germs = [ g.to_float() if g.exact else g for g in germs ]
        trusted = RADIUS_SLACK * min(g.radius for g in germs)
        self.r_max = check_radius(min(0.99 * trusted, 0.99) if r_max is None else r_max)

    @property
    def n(self) -> int:
        return len(self.germs) - 1

    def values(self, Z: np.ndarray) -> np.ndarray:
        return np.stack([ g.values(Z) for g in self.germs ])

    def norm(self, Z: np.ndarray, norm: EnumNorm = EnumNorm.MAX) -> np.ndarray:
        return vector_norm(self.values(Z), norm)


class Hypersurface:
    """
    D = {Q = 0} for a homogeneous polynomial Q in z0, ..., zn of degree d >= 1
    with exact coefficients. ||Q|| is the largest modulus of a coefficient.
    """
    def __init__(self, Q: Union[str, sp.Expr], n: int) -> None:
        if n < 1:
            raise DomainError(f"Dimension n = {n} must be at least 1")

        self.n = n
        self.symbols = sp.symbols(f"z0:{n + 1}")
        names = { str(s): s for s in self.symbols }
        if isinstance(Q, str):
            try:
                Q = sp.sympify(Q.replace('^', '**'), locals = names, rational = True)
            except (sp.SympifyError, SyntaxError, TypeError) as e:
                raise DomainError(f"Cannot read hypersurface {Q!r}: {e}")

        extra = Q.free_symbols - set(self.symbols)
        if extra:
            raise DomainError(f"Hypersurface uses unknown variables {sorted(map(str, extra))}")

        poly = sp.Poly(Q, *self.symbols)
        if poly.is_zero:
            raise DomainError('The zero polynomial does not define a hypersurface')
        self.d = poly.total_degree()
        if self.d < 1:
            raise DomainError('A hypersurface needs degree d >= 1')

        lam = sp.Symbol('lam')
        scaled = Q.subs({ s: lam * s for s in self.symbols }, simultaneous = True)
        if sp.expand(scaled - lam ** self.d * Q) != 0:
            raise DomainError(f"Q = {Q} is not homogeneous")

        self.Q = Q
        self.norm = max(abs(complex(c)) for c in poly.coeffs())


    @classmethod
    def from_dict(self, data: Dict[str, Any]) -> 'Hypersurface':
        """
        Read {"n": 1, "Q": "z1"}
        """
        if 'n' not in data or 'Q' not in data:
            raise DomainError('Hypersurface needs the keys "n" and "Q"')
        return Hypersurface(str(data['Q']), int(data['n']))


    def pullback(self, f: ProjectiveCurve) -> sp.Expr:
        """
        Q(f_0(z), ..., f_n(z)) expanded as a polynomial in z
        """
        if f.n != self.n:
            raise DomainError(f"Curve in CP^{f.n} cannot be pulled back to a hypersurface of CP^{self.n}")
        return sp.expand(self.Q.subs(dict(zip(self.symbols, f.components)), simultaneous = True))


    def __repr__(self) -> str:
        return f"{{{self.Q} = 0}}"


def __pullback_poly(f: ProjectiveCurve, D: Hypersurface) -> sp.Poly:
    poly = sp.Poly(D.pullback(f), z)
    if poly.is_zero:
        raise ContainmentError(f"Q(f) vanishes identically: the curve {f} lies in {D}")
    return poly


def __pullback_zeros(poly: sp.Poly) -> Tuple[int, List[Tuple[complex, int]]]:
    """
    Multiplicity at the origin and the other zeros of the pullback with their
    multiplicities, through square-free factorization when the coefficients
    are (Gaussian) rationals, by clustering numerical roots otherwise
    """
    coeffs = poly.all_coeffs()
    m0 = 0
    while not coeffs[-1 - m0]:
        m0 += 1
    rest = sp.Poly(coeffs[:len(coeffs) - m0], z)

    if rest.degree() < 1:
        return m0, []

    if rest.domain in (ZZ, QQ, ZZ_I, QQ_I):
        zeros = []
        for (factor, mult) in sp.sqf_list(rest)[1]:
            zeros += [ (a, mult) for a in polynomial_roots(factor) ]
        return m0, zeros

    clusters = []
    for a in polynomial_roots(rest):
        for c in clusters:
            if abs(c[0] - a) < CLUSTER_GAP * max(1, abs(a)):
                c[1].append(a)
                break
        else:
            clusters.append([ a, [ a ] ])
    return m0, [ (complex(np.mean(pts)), len(pts)) for (_, pts) in clusters ]


def divisor_of_pullback(f: ProjectiveCurve, D: Hypersurface, r_max: Optional[float] = None) -> DiscDivisor:
    """
    (Q o f)_0: the zeros of Q(f) in |z| <= r_max with their multiplicities.

    Raises ContainmentError when Q(f) vanishes identically.
    """
    r_max = f.r_max if r_max is None else check_radius(r_max)
    m0, zeros = __pullback_zeros(__pullback_poly(f, D))
    return DiscDivisor([ (a, mult) for (a, mult) in zeros if abs(a) <= r_max ], m0)


def __check_in_disc(f: Any, r: float) -> float:
    r = check_radius(r)
    if r > f.r_max:
        raise DomainError(f"Radius r = {r} exceeds the admissible radius {f.r_max} of the curve")
    return r


def proximity_function(
        f: ProjectiveCurve, D: Hypersurface, r: float, params: Dict[str, float] = {}
    ) -> float:
    """
    m_f(r, D) = (1/2pi) int log( ||f||^d ||Q|| / |Q(f)| ) dtheta on |z| = r

    Raises SingularCircleError when Q(f) has a zero on the circle. A negative
    value is reported, it happens when |Q(f)| exceeds ||Q|| ||f||^d, which the
    max norms allow for Q with several monomials.
    """
    r = __check_in_disc(f, r)
    poly = __pullback_poly(f, D)
    m0, zeros = __pullback_zeros(poly)
    near = check_circle(r, [ a for (a, _) in zeros ])

    Qf = lambdify_disc(poly.as_expr())
    def integrand(Z: np.ndarray) -> np.ndarray:
        return D.d * np.log(f.norm(Z)) + np.log(D.norm) - np.log(np.abs(Qf(Z)))

    m = circle_mean(integrand, r, near, params)
    tol = (QUADRATURE_PARAMS | params)['tol']
    if m < -tol:
        log(f"Found negative proximity m = {m} at r = {r}: |Q(f)| exceeds ||Q|| ||f||^d somewhere")

    return m


def order_function(f: Union[ProjectiveCurve, GermCurve], r: float, params: Dict[str, float] = {}) -> float:
    """
    T_f(r) = (1/2pi) int log ||f(r e^{i theta})|| dtheta
    """
    r = __check_in_disc(f, r)
    return circle_mean(lambda Z: np.log(f.norm(Z)), r, (), params)


def fmt_table(
        f: ProjectiveCurve, D: Hypersurface, r_grid: Sequence[float], params: Dict[str, float] = {}
    ) -> List[List[float]]:
    """
    Rows r, m, N, T, defect with defect = m + N - d T. By the First Main
    Theorem (on 0 < r < 1) the defect column is constant up to quadrature
    error; with the origin correction of N it equals log ||Q|| - log |c|, c the
    leading Taylor coefficient of Q(f) at 0.
    """
    r_grid = check_grid(r_grid)
    for r in r_grid:
        __check_in_disc(f, r)

    E = divisor_of_pullback(f, D)
    log(f"Computing m + N - dT for {f} and {D} on {len(r_grid)} radii in (0, 1)")
    log('First Main Theorem is read on the disc, 0 < r < 1; radii r > 1 lie outside it')

    rows = []
    for r in r_grid:
        m = proximity_function(f, D, r, params)
        N = counting_function(E, r)
        T = order_function(f, r, params)
        rows.append([ r, m, N, T, m + N - D.d * T ])

    return rows


FMT_HEADER = [ 'r', 'm', 'N', 'T', 'defect' ]


def fmt_defect(
        f: ProjectiveCurve, D: Hypersurface, r_grid: Sequence[float], params: Dict[str, float] = {}
    ) -> List[float]:
    """
    m_f(r, D) + N_f(r, D) - d T_f(r) at each radius of the grid
    """
    return [ row[-1] for row in fmt_table(f, D, r_grid, params) ]


def __log_scale(r: float) -> float:
    return ln(1 / (1 - r))


def transcendence_ratio(
        f: Union[ProjectiveCurve, GermCurve], r_grid: Sequence[float], params: Dict[str, float] = {}
    ) -> List[float]:
    """
    T_f(r) / log(1/(1-r)) on the grid. The curve is transcendental when these
    ratios are unbounded as r -> 1; a finite grid only samples the limsup and
    cannot decide it.
    """
    r_grid = check_grid(r_grid)
    return [ order_function(f, r, params) / __log_scale(r) for r in r_grid ]


class AvoidanceCheck(NamedTuple):
    """
    The hypotheses of the non-transcendence statement for a curve f and a
    hypersurface D (degree at least (n+1)^(n+3) (n+2)^(n+3), f avoids D), and
    the sampled transcendence ratios its conclusion bounds
    """
    degree: int
    stated: int
    degree_ok: bool
    avoids: bool
    applies: bool
    ratios: List[float]
    bounded: bool


def avoidance_check(
        f: ProjectiveCurve, D: Hypersurface, r_grid: Sequence[float], tol: float = 1e-9
    ) -> AvoidanceCheck:
    """
    A curve avoiding a generic hypersurface of degree d >= (n+1)^(n+3) (n+2)^(n+3)
    is not transcendental. Genericity of D cannot be tested, so `applies` only
    records the degree and the avoidance on |z| <= r_max.

    The sampled ratios count as bounded when the last one does not exceed the
    largest earlier one by more than tol; like transcendence_ratio this is a
    witness on the grid, not a decision about the limsup.
    """
    if not isinstance(f, ProjectiveCurve):
        raise DomainError('Avoidance needs a curve with polynomial components')
    if D.n != f.n:
        raise DomainError(f"Hypersurface lives in CP^{D.n} but the curve maps to CP^{f.n}")
    r_grid = check_grid(r_grid)
    if len(r_grid) < 2:
        raise DomainError('Need at least two radii to sample the ratios')

    try:
        E = divisor_of_pullback(f, D)
        avoids = E.origin == 0 and not E.support
    except ContainmentError:
        log('Found the curve inside the hypersurface')
        avoids = False

    stated = stated_bound(f.n)
    ratios = transcendence_ratio(f, r_grid)
    bounded = ratios[-1] <= max(ratios[:-1]) + tol
    return AvoidanceCheck(D.d, stated, D.d >= stated, avoids, D.d >= stated and avoids, ratios, bounded)


def __singular_points(phi: sp.Expr) -> List[complex]:
    """
    Zeros and poles of phi that can be located, i.e. roots of its numerator
    and denominator when these are polynomials in z
    """
    points = []
    for part in sp.fraction(sp.cancel(sp.together(phi))):
        if part.has(z) and part.is_polynomial(z):
            points += polynomial_roots(sp.Poly(part, z))
    return points


def __log_derivative_terms(
        phis: Sequence[Any], lambdas: Sequence[int], r_grid: Sequence[float]
    ) -> Tuple[List[Callable[[np.ndarray], np.ndarray]], List[complex]]:
    fns, singular = [], []
    reach = max(r_grid)
    for (phi, lam) in zip(phis, lambdas):
        if int(lam) != lam or lam < 1:
            raise DomainError(f"Order lambda = {lam} must be a positive integer")
        phi = parse_disc_function(phi)
        points = __singular_points(phi)
        inside = [ a for a in points if abs(a) <= reach ]
        if inside:
            raise PoleError(f"phi = {phi} has a zero or a pole at {inside[0]} inside |z| <= {reach}")

        g = sp.cancel(sp.diff(phi, z) / phi)
        fns.append(lambdify_disc(sp.diff(g, z, int(lam) - 1)))
        singular += points

    return fns, singular


def __circle_integral(
        fn: Callable[[np.ndarray], np.ndarray], r: float, singular: Sequence[complex],
        params: Dict[str, float]
    ) -> float:
    near = check_circle(r, singular)
    def integrand(Z: np.ndarray) -> np.ndarray:
        values = fn(Z)
        if not np.all(np.isfinite(values)):
            raise PoleError(f"Integrand is not finite on |z| = {r}")
        return values
    return 2 * pi * circle_mean(integrand, r, near, params)


def ldl_ratio(
        phi: Any, lam: int, r_grid: Sequence[float], params: Dict[str, float] = {}
    ) -> List[float]:
    """
    For each r

        int_0^{2pi} |(d/dz)^(lam-1) (phi'/phi)(r e^{i theta})| dtheta
        -------------------------------------------------------------
                    (1-r)^(-lam) log(1/(1-r))

    Ratio data only: the estimate holds outside an exceptional set of finite
    logarithmic measure, which no grid can certify.

    Raises PoleError when phi has a zero (or a pole) in the sampled disc.
    """
    r_grid = check_grid(r_grid)
    (fn, ), singular = __log_derivative_terms([ phi ], [ lam ], r_grid)

    return [ __circle_integral(lambda Z: np.abs(fn(Z)), r, singular, params)
             * (1 - r) ** lam / __log_scale(r) for r in r_grid ]


def ldl_product_ratio(
        phis: Sequence[Any], lambdas: Sequence[int], t: float, r_grid: Sequence[float],
        params: Dict[str, float] = {}
    ) -> List[float]:
    """
    For each r, with s = t (lambda_1 + ... + lambda_n),

        int_0^{2pi} |prod_j (d/dz)^(lambda_j-1) (phi_j'/phi_j)|^t dtheta
        ----------------------------------------------------------------
                   (1-r)^(-s) (log(1/(1-r)))^s

    Needs 0 < t n < 1 for the n functions.
    """
    if len(phis) != len(lambdas) or not phis:
        raise DomainError('Need one order lambda for each of at least one function')
    if t <= 0 or t * len(phis) >= 1:
        raise DomainError(f"Exponent t = {t} must satisfy 0 < t n < 1 with n = {len(phis)}")

    r_grid = check_grid(r_grid)
    fns, singular = __log_derivative_terms(phis, lambdas, r_grid)
    s = t * sum(lambdas)

    def integrand(Z: np.ndarray) -> np.ndarray:
        return np.abs(np.prod([ fn(Z) for fn in fns ], axis = 0)) ** t

    return [ __circle_integral(integrand, r, singular, params)
             * (1 - r) ** s / __log_scale(r) ** s for r in r_grid ]
