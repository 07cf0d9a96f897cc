#!/usr/bin/python
"""
Minimal surfaces in R^n given by Weierstrass-type data phi = df/dz on the
disc: conformality, the Gauss map [phi_1 : ... : phi_n], the induced area
form, and the radial integrals that decide the last step of the degeneracy
argument for Gauss maps.
"""
from enum import Enum
from math import log as ln, pi
import numpy as np
import sympy as sp
from scipy.integrate import quad
from scipy.special import gamma, gammaincc, hyp2f1

from analysis.nevanlinna import ProjectiveCurve, lambdify_disc, parse_disc_function, \
    polynomial_roots, z
from jets.algebra import EnumJet, JetCoordinate
from jets.germ import JetVector, evaluate
from jets.wronskian import WronskianDifferential
from util.geometry import EnumNorm, check_circle, circle_mean, vector_norm
from util.util import DomainError, PoleError, check_grid, check_radius, log

from typing import Any, Dict, FrozenSet, List, NamedTuple, Optional, Sequence


class WeierstrassSurface:
    """
    Generating data phi = (phi_1, ..., phi_n) of a minimal immersion of the
    disc of radius r_max into R^n, with phi_i = df_i/dz rational in z
    """
    def __init__(self, phi: Sequence[Any], r_max: float = 0.95, name: str = '') -> None:
        phi = [ sp.cancel(parse_disc_function(p)) for p in phi ]
        if len(phi) < 2:
            raise DomainError('Weierstrass data needs at least two components')
        if all(p == 0 for p in phi):
            raise DomainError('Weierstrass data vanishes identically')

        self.r_max = check_radius(r_max)
        for p in phi:
            den = sp.fraction(sp.together(p))[1]
            if not den.is_polynomial(z) or not sp.fraction(sp.together(p))[0].is_polynomial(z):
                raise DomainError(f"Component {p} is not rational in z")
            poles = [ a for a in polynomial_roots(sp.Poly(den, z)) if abs(a) <= self.r_max ]
            if poles:
                raise PoleError(f"Component {p} has a pole at {poles[0]} inside |z| <= {self.r_max}")

        self.phi = tuple(phi)
        self.name = name
        self.fns = [ lambdify_disc(p) for p in phi ]


    @property
    def n(self) -> int:
        return len(self.phi)


    def values(self, Z: np.ndarray) -> np.ndarray:
        return np.stack([ fn(Z) for fn in self.fns ])


    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ''
        return label + '(' + ', '.join(str(p) for p in self.phi) + ')'


def weierstrass(F: Any, G: Any, r_max: float = 0.95, name: str = '') -> WeierstrassSurface:
    """
    The surface in R^3 with phi = (F (1 - G^2)/2, i F (1 + G^2)/2, F G), which
    is conformal for any F, G
    """
    F, G = parse_disc_function(F), parse_disc_function(G)
    phi = [ F * (1 - G ** 2) / 2, sp.I * F * (1 + G ** 2) / 2, F * G ]
    return WeierstrassSurface(phi, r_max, name)


# the catenoid data is shifted by 2 so that its pole stays off the disc
PRESETS = {
    'plane':    lambda: WeierstrassSurface([ 1, sp.I, 0 ], name = 'plane'),
    'enneper':  lambda: weierstrass(1, z, name = 'enneper'),
    'catenoid': lambda: weierstrass(1 / (z + 2) ** 2, z + 2, name = 'catenoid'),
}


def preset(name: str) -> WeierstrassSurface:
    if name.lower() not in PRESETS:
        raise DomainError(f"Unknown surface {name!r}, expected one of {sorted(PRESETS)}")
    return PRESETS[name.lower()]()


def verify_conformality(s: WeierstrassSurface) -> bool:
    """
    Exact check of phi_1^2 + ... + phi_n^2 = 0
    """
    return sp.cancel(sum(p ** 2 for p in s.phi)) == 0


class GaussMapCurve(ProjectiveCurve):
    """
    The Gauss map [phi_1 : ... : phi_n] of a minimal surface, in reduced form.
    Components listed in `conjugated` are evaluated complex conjugated, which
    only serves to build non-holomorphic controls.
    """
    def __init__(self,
            components: Sequence[Any], r_max: float = 0.95, conjugated: FrozenSet[int] = frozenset()
        ) -> None:
        super().__init__(components, r_max)
        self.conjugated = frozenset(conjugated)

    def values(self, Z: np.ndarray) -> np.ndarray:
        return np.stack([ np.conj(fn(Z)) if i in self.conjugated else fn(Z)
                          for (i, fn) in enumerate(self.fns) ])


def gauss_map(s: WeierstrassSurface) -> GaussMapCurve:
    """
    Reduced representation of z -> [df/dz] in CP^(n-1): denominators and
    common factors of phi are cleared, numeric denominators as well
    """
    if not verify_conformality(s):
        raise DomainError(f"Data {s} is not conformal: sum of phi_i^2 does not vanish")
    curve = ProjectiveCurve.from_components(s.phi, s.r_max, primitive = True)
    return GaussMapCurve(curve.components, curve.r_max)


def conjugate_component(g: GaussMapCurve, i: int) -> GaussMapCurve:
    """
    Copy of g with the component of index i (starting at 0) replaced by its
    complex conjugate
    """
    if not 0 <= i <= g.n:
        raise DomainError(f"Component index {i} out of range 0..{g.n}")
    return GaussMapCurve(g.components, g.r_max, g.conjugated | { i })


HOLOMORPHY_PARAMS = { 'h': 1e-5, 'floor': 1e-12 }


def holomorphy_residual(g: GaussMapCurve, samples: Sequence[complex], params: Dict[str, float] = {}) -> float:
    """
    Largest central-difference estimate of |d/dzbar| of the affine chart of g
    over the samples, with d/dzbar = (d/dx + i d/dy)/2. At each sample the
    chart divides by the component of largest modulus.

    Raises DomainError at an indeterminacy point (all components vanish).
    """
    params = HOLOMORPHY_PARAMS | params
    h = params['h']

    residual = 0.0
    for z0 in samples:
        z0 = complex(z0)
        if abs(z0) > g.r_max:
            raise DomainError(f"Sample {z0} lies outside the admissible disc |z| <= {g.r_max}")

        V = g.values(np.array([ z0 ]))[:, 0]
        pivot = int(np.argmax(np.abs(V)))
        if abs(V[pivot]) < params['floor']:
            raise DomainError(f"Gauss map is indeterminate at {z0}")

        def chart(w: complex) -> np.ndarray:
            W = g.values(np.array([ w ]))[:, 0]
            return np.delete(W, pivot) / W[pivot]

        dx = (chart(z0 + h) - chart(z0 - h)) / (2 * h)
        dy = (chart(z0 + 1j * h) - chart(z0 - 1j * h)) / (2 * h)
        residual = max(residual, float(np.max(np.abs((dx + 1j * dy) / 2))))

    return residual


def area_form_density(s: WeierstrassSurface, z0: Any, norm: EnumNorm = EnumNorm.EUCLIDEAN) -> Any:
    """
    2 ||phi(z)||^2, the density of the induced area form with respect to
    du dv; accepts a point or an array of points
    """
    Z = np.asarray(z0, dtype = complex)
    density = 2 * vector_norm(s.values(Z), norm) ** 2
    return float(density) if density.ndim == 0 else density


def reconstruct_immersion(s: WeierstrassSurface, z0: complex) -> np.ndarray:
    """
    The immersion x(z) = 2 Re int_0^z phi(w) dw, integrated term by term
    """
    x = []
    for p in s.phi:
        primitive = sp.integrate(p, z)
        primitive = primitive - primitive.subs(z, 0)
        x.append(2 * complex(lambdify_disc(primitive)(np.array(z0))).real)
    return np.array(x)


class EnumModel(Enum):
    """
    Model functions h for the divergence demonstration: h = 1, or
    h = |1/(1-z)| which is log-harmonic and nonvanishing on the disc
    """
    CONSTANT = 0
    POLE     = 1

    @classmethod
    def names(self) -> List[str]:
        return list(self.__members__.keys())

    @staticmethod
    def from_str(label: str) -> 'EnumModel':
        if label.upper() not in EnumModel.__members__:
            raise DomainError(f"Unknown model {label!r}, expected one of {EnumModel.names()}")
        return EnumModel[label.upper()]


def __check_eps(eps_grid: Sequence[float]) -> List[float]:
    eps_grid = [ float(e) for e in eps_grid ]
    if not eps_grid:
        raise DomainError('Need at least one value of eps')
    if any(not 0 < e < 1 for e in eps_grid):
        raise DomainError('Values of eps must lie in (0, 1)')
    if any(a <= b for (a, b) in zip(eps_grid, eps_grid[1:])):
        raise DomainError('Values of eps must be strictly decreasing')
    return eps_grid


def __cumulative(integrand: Any, limits: Sequence[float]) -> List[float]:
    """
    int_0^L integrand for each L of an increasing list, one quadrature per
    segment
    """
    total, start, values = 0.0, 0.0, []
    for end in limits:
        part, _ = quad(integrand, start, end, epsabs = 1e-13, epsrel = 1e-12, limit = 200)
        total += part
        values.append(total)
        start = end
    return values


def yau_integral_divergence(
        p: float, model: EnumModel, eps_grid: Sequence[float]
    ) -> List[float]:
    """
    Partial integrals of h^p dsigma over |z| <= 1 - eps for the flat metric of
    the plane preset (density 4). The angular average of |1-z|^(-p) on
    |z| = rho is the hypergeometric value 2F1(p/2, p/2; 1; rho^2).

    The flat metric on the disc is not complete, so this only shows how the
    integrals behave; the constant model converges to the finite flat area.
    """
    if p <= 0:
        raise DomainError(f"Exponent p = {p} must be positive")
    eps_grid = __check_eps(eps_grid)

    density = area_form_density(preset('plane'), 0)
    log('Flat metric on the disc is incomplete: the partial integrals only illustrate divergence')

    if model == EnumModel.CONSTANT:
        angular = lambda rho: 2 * pi
    elif model == EnumModel.POLE:
        angular = lambda rho: 2 * pi * hyp2f1(p / 2, p / 2, 1, rho ** 2)
    else:
        raise DomainError(f"Model must be of type EnumModel, but it's {model}")

    return __cumulative(lambda rho: density * rho * angular(rho), [ 1 - e for e in eps_grid ])


class EnumVerdict(Enum):
    CONVERGING = 0
    DIVERGING  = 1

    def __str__(self) -> str:
        return self.name.lower()


class ProofIntegral(NamedTuple):
    """
    Partial integrals per eps, the verdict and, when converging, a bound on the
    remaining tail
    """
    values: List[float]
    verdict: EnumVerdict
    tail_bound: Optional[float]


PROOF_EPS = [ 10.0 ** -e for e in range(1, 17) ]


def proof_integral_convergence(a: float, eps_grid: Optional[Sequence[float]] = None) -> ProofIntegral:
    """
    Partial integrals

        int_0^{1-eps} r (1-r)^(-a) (log 1/(1-r))^a dr

    computed in s = log(1/(1-r)), where the integrand becomes
    (1 - e^-s) e^((a-1)s) s^a. Consecutive slabs of s then decay like
    e^((a-1)s), so the verdict follows the ratio: "converging" for a < 1 and
    "diverging" for a >= 1, where the integrand is bounded below by a positive
    constant and the partial values grow past any bound.

    When converging, the tail beyond the last eps is bounded by

        int_S^inf e^((a-1)s) s^a ds = Gamma(a+1, (1-a)S) / (1-a)^(a+1)

    For a close to 1 the slab differences on a short grid still grow (they
    peak near s = a/(1-a)); the verdict does not depend on the grid reaching
    that peak.

    Params
    ------
    a
        the ratio 2m/m_tilde, positive
    eps_grid
        strictly decreasing values in (0, 1), 10^-1 ... 10^-16 by default

    Returns
    ------
    ProofIntegral
    """
    if a <= 0:
        raise DomainError(f"Ratio 2m/m_tilde = {a} must be positive")
    eps_grid = __check_eps(PROOF_EPS if eps_grid is None else eps_grid)
    if len(eps_grid) < 4:
        raise DomainError('Need at least four values of eps to judge convergence')

    integrand = lambda s: (1 - np.exp(-s)) * np.exp((a - 1) * s) * s ** a
    limits = [ ln(1 / e) for e in eps_grid ]
    values = __cumulative(integrand, limits)

    if a >= 1:
        return ProofIntegral(values, EnumVerdict.DIVERGING, None)

    diffs = np.diff(values)
    if diffs[-1] >= diffs[-2]:
        log(f"Differences still grow at eps = {eps_grid[-1]}, they peak near s = {a / (1 - a):.4g}")

    s = limits[-1]
    tail = gamma(a + 1) * gammaincc(a + 1, (1 - a) * s) / (1 - a) ** (a + 1)
    return ProofIntegral(values, EnumVerdict.CONVERGING, float(tail))


def __affine_jet(w: WronskianDifferential, f: ProjectiveCurve) -> Any:
    """
    Vectorised jet of the affine curve x_i = f_i / f_0 up to order n, and the
    affine coordinates themselves
    """
    n = w.arrangement.n
    xs = [ sp.cancel(c / f.components[0]) for c in f.components[1:] ]
    derivs = { JetCoordinate(EnumJet.PLAIN, i + 1, j): lambdify_disc(sp.diff(x, z, j))
               for (i, x) in enumerate(xs) for j in range(1, n + 1) }
    return [ lambdify_disc(x) for x in xs ], derivs


def jet_norm_circle_integral(
        w: WronskianDifferential, f: ProjectiveCurve, r_grid: Sequence[float],
        params: Dict[str, float] = {}
    ) -> List[float]:
    """
    For each r

        int_0^{2pi} |omega(j_n f)|^(2/m_tilde) ||f||^2 / |f_0|^2 dtheta
        ---------------------------------------------------------------
              (1-r)^(-2m/m_tilde) (log 1/(1-r))^(2m/m_tilde)

    with omega the Wronskian differential of weight m and vanishing order
    m_tilde evaluated on the affine curve f_i/f_0. The integrand equals
    (|W(f)| / prod |L_j(f)|)^(2/m_tilde) ||f||^2 and does not depend on the
    representation of f.

    Raises SingularCircleError when f_0 or one of the forms L_j(f) vanishes on
    a sampled circle.
    """
    a = w.arrangement
    m, m_tilde = w.weight, w.vanishing_order
    if m_tilde <= 2 * m:
        raise DomainError(f"Need m_tilde > 2m, got m = {m}, m_tilde = {m_tilde}")
    if f.n != a.n:
        raise DomainError(f"Curve in CP^{f.n} does not match the arrangement in CP^{a.n}")

    if f.components[0] == 0:
        raise DomainError(f"Curve {f} lies in the hyperplane at infinity")

    r_grid = check_grid(r_grid)
    for r in r_grid:
        if r > f.r_max:
            raise DomainError(f"Radius r = {r} exceeds the admissible radius {f.r_max} of the curve")

    zeros = polynomial_roots(sp.Poly(f.components[0], z))
    for form in a.forms:
        L = sum(sp.Rational(c.numerator, c.denominator) * fc for (c, fc) in zip(form, f.components))
        if sp.expand(L) == 0:
            raise DomainError(f"Curve {f} lies in the hyperplane {[ str(c) for c in form ]}")
        zeros += polynomial_roots(sp.Poly(L, z))

    xs, derivs = __affine_jet(w, f)

    def integrand(Z: np.ndarray) -> np.ndarray:
        jv = JetVector({ c: fn(Z) for (c, fn) in derivs.items() }, a.n)
        x = [ fn(Z) for fn in xs ]
        omega = evaluate(w.numerator, jv) * np.ones_like(Z)
        for i in range(1, a.q + 1):
            omega = omega / a.value(i, x)
        return np.abs(omega) ** (2 / m_tilde) * f.norm(Z) ** 2 / np.abs(f.values(Z)[0]) ** 2

    ratios = []
    for r in r_grid:
        near = check_circle(r, zeros)
        scale = (1 - r) ** (-2 * m / m_tilde) * ln(1 / (1 - r)) ** (2 * m / m_tilde)
        ratios.append(2 * pi * circle_mean(integrand, r, near, params) / scale)

    return ratios
