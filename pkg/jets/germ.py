#!/usr/bin/python
"""
Truncated power series for holomorphic germs (C, 0) -> C and the jets they
define.

A germ is held in one of two kernels: exact, with QQ_I coefficients, for the
identity tests, or floating, with a complex numpy array, for the paths that
feed quadrature. An exact germ may be converted to floating point, never the
other way round.
"""
from math import comb, factorial, inf
import numpy as np

from sympy.polys.domains import QQ_I

from jets.algebra import JET_PARAMS, EnumJet, JetCoordinate, JetPolynomial, \
    faa_di_bruno_log, exact, is_exact, numeric, power, to_complex
from util.util import DomainError, InsufficientOrderError, PoleError

from typing import Any, Dict, Iterable, List, Sequence, Set, Tuple, Union


# jets are only evaluated within this fraction of the validated radius
RADIUS_SLACK = 0.9


class Germ:
    """
    A holomorphic germ given by its Taylor coefficients c_0, ..., c_K about
    `base_point`, known exactly up to the truncation order K. The radius is the
    one the caller vouches for: infinite for polynomials, the disc on which the
    truncated series is trusted otherwise.
    """
    default_params = { 'k': JET_PARAMS['k'] }

    def __init__(self,
            coefficients: Sequence[Any], base_point: Any = 0, radius: float = inf,
            exact: bool = None
        ) -> None:
        if not len(coefficients):
            raise DomainError('A germ needs at least one coefficient')

        if exact is None:
            exact = all(not isinstance(c, (float, complex, np.number)) for c in coefficients)

        if exact:
            self.coefficients = tuple(_exact(c) for c in coefficients)
        else:
            self.coefficients = np.array([ complex(to_complex(c)) for c in coefficients ],
                                         dtype = complex)

        self.exact = exact
        self.base_point = base_point
        self.radius = radius


    @classmethod
    def polynomial(self,
            coefficients: Sequence[Any], params: Dict[str, int] = {}, K: int = None
        ) -> 'Germ':
        """
        Germ of a polynomial c_0 + c_1 z + ... , padded with zeros up to the
        truncation order K = 2k + 4 (or the degree, if larger)
        """
        params = Germ.default_params | params
        if K is None:
            K = 2 * params['k'] + 4
        K = max(K, len(coefficients) - 1)
        exact = all(not isinstance(c, (float, complex, np.number)) for c in coefficients)
        zero = 0 if exact else 0.0
        return Germ(list(coefficients) + [ zero ] * (K + 1 - len(coefficients)),
                    radius = inf, exact = exact)


    @property
    def K(self) -> int:
        return len(self.coefficients) - 1


    def to_float(self) -> 'Germ':
        """
        Lossy conversion to the floating kernel
        """
        return Germ(self.coefficients, self.base_point, self.radius, exact = False)


    def __unify(self, other: Any) -> Tuple['Germ', 'Germ']:
        if not isinstance(other, Germ):
            s = numeric(other)
            zero = QQ_I(0) if is_exact(s) else 0j
            other = Germ([ s ] + [ zero ] * self.K, self.base_point, inf, is_exact(s))
        if self.exact and other.exact:
            return self, other
        return self.to_float() if self.exact else self, \
               other.to_float() if other.exact else other


    def __wrap(self, coefficients: Any, exact: bool, radius: float) -> 'Germ':
        return Germ(coefficients, self.base_point, radius, exact)


    def __add__(self, other: Any) -> 'Germ':
        a, b = self.__unify(other)
        K = min(a.K, b.K)
        if a.exact:
            coeffs = [ x + y for (x, y) in zip(a.coefficients[:K + 1], b.coefficients[:K + 1]) ]
        else:
            coeffs = a.coefficients[:K + 1] + b.coefficients[:K + 1]
        return self.__wrap(coeffs, a.exact, min(a.radius, b.radius))

    __radd__ = __add__

    def __neg__(self) -> 'Germ':
        if self.exact:
            return self.__wrap([ -c for c in self.coefficients ], True, self.radius)
        return self.__wrap(-self.coefficients, False, self.radius)

    def __sub__(self, other: Any) -> 'Germ':
        return self + (-other)

    def __rsub__(self, other: Any) -> 'Germ':
        return (-self) + other

    def __mul__(self, other: Any) -> 'Germ':
        a, b = self.__unify(other)
        K = min(a.K, b.K)
        if a.exact:
            coeffs = [ sum((a.coefficients[m] * b.coefficients[n - m] for m in range(n + 1)),
                           QQ_I(0))
                       for n in range(K + 1) ]
        else:
            coeffs = np.convolve(a.coefficients[:K + 1], b.coefficients[:K + 1])[:K + 1]
        return self.__wrap(coeffs, a.exact, min(a.radius, b.radius))

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Germ) or self.exact != other.exact:
            return False
        if self.exact:
            return self.coefficients == other.coefficients
        return np.array_equal(self.coefficients, other.coefficients)

    def __hash__(self) -> int:
        if self.exact:
            return hash((True, self.coefficients))
        return hash((False, tuple(self.coefficients.tolist())))

    def __repr__(self) -> str:
        kernel = 'exact' if self.exact else 'float'
        return f"Germ({kernel}, K = {self.K}, radius = {self.radius})"


    def derivative(self) -> 'Germ':
        """
        Termwise derivative; the truncation order drops by one
        """
        if self.K < 1:
            raise InsufficientOrderError('Cannot differentiate a germ truncated at order 0')
        if self.exact:
            coeffs = [ n * self.coefficients[n] for n in range(1, self.K + 1) ]
        else:
            coeffs = np.arange(1, self.K + 1) * self.coefficients[1:]
        return self.__wrap(coeffs, self.exact, self.radius)


    def reciprocal(self) -> 'Germ':
        """
        Series of 1/f, defined when c_0 != 0, from the recurrence

            b_0 = 1/c_0,    b_n = -(1/c_0) sum_{m=1}^{n} c_m b_{n-m}
        """
        c = self.coefficients
        if not c[0]:
            raise PoleError('Reciprocal of a germ vanishing at its base point')

        one = QQ_I(1) if self.exact else 1.0
        inv = one / c[0]
        b = [ inv ]
        for n in range(1, self.K + 1):
            b.append(-inv * sum((c[m] * b[n - m] for m in range(1, n + 1)), 0 * one))
        return self.__wrap(b, self.exact, self.radius)


    def log_derivative(self) -> 'Germ':
        """
        Series of f'/f = (log f)'
        """
        return self.derivative() * self.reciprocal()


    def compose_homothety(self, lam: Any) -> 'Germ':
        """
        Series of f(lam z): c_j -> c_j lam^j. The trusted radius shrinks by |lam|.
        """
        lam = numeric(lam)
        germ = self if (self.exact and is_exact(lam)) else self.to_float()
        if not is_exact(lam):
            lam = complex(lam)
        coeffs = [ c * power(lam, j) for (j, c) in enumerate(germ.coefficients) ]
        scale = abs(to_complex(lam))
        radius = inf if scale == 0 else germ.radius / scale
        return Germ(coeffs, germ.base_point, radius, germ.exact)


    def __local(self, z: Any) -> Tuple['Germ', Any]:
        """
        Bring z into the kernel of this germ and measure it from the base point,
        refusing points beyond the trusted radius
        """
        z, base = numeric(z), numeric(self.base_point)
        germ = self
        if self.exact and is_exact(z) and is_exact(base):
            local = z - base
        else:
            germ = self.to_float()
            local = complex(to_complex(z)) - complex(to_complex(base))

        if abs(to_complex(local)) >= RADIUS_SLACK * self.radius:
            raise InsufficientOrderError(
                f"Point {to_complex(z)} lies beyond {RADIUS_SLACK} of the trusted radius {self.radius}")

        return germ, local


    def recenter(self, z: Any) -> 'Germ':
        """
        Taylor recentering at the absolute point z

            b_m = sum_{n >= m} c_n C(n, m) (z - base)^(n - m)

        The truncation order is kept, so for a series (rather than a polynomial)
        the new coefficients are only as good as the tail that was dropped.
        """
        germ, local = self.__local(z)
        c = germ.coefficients
        coeffs = [ sum((c[n] * comb(n, m) * power(local, n - m) for n in range(m, germ.K + 1)),
                       0 * c[0])
                   for m in range(germ.K + 1) ]
        base = numeric(z) if germ.exact else complex(to_complex(numeric(z)))
        return Germ(coeffs, base, self.radius - abs(to_complex(local)), germ.exact)


    def derivative_at(self, j: int, z: Any) -> Any:
        """
        The j-th derivative f^(j)(z), with z an absolute point

            f^(j)(z) = sum_{n >= j} c_n n!/(n - j)! (z - base)^(n - j)

        exact when both the germ and z are exact
        """
        if j > self.K:
            raise InsufficientOrderError(f"Derivative of order {j} needs truncation order >= {j}, germ has K = {self.K}")

        germ, local = self.__local(z)
        c = germ.coefficients
        terms = [ c[n] * (factorial(n) // factorial(n - j)) * power(local, n - j)
                  for n in range(j, germ.K + 1) ]
        return sum(terms, 0 * c[0])


    def value_at(self, z: Any) -> Any:
        return self.derivative_at(0, z)


    def values(self, Z: np.ndarray) -> np.ndarray:
        """
        Vectorised floating evaluation at an array of absolute points
        """
        Z = np.asarray(Z, dtype = complex) - complex(to_complex(numeric(self.base_point)))
        if np.any(np.abs(Z) >= RADIUS_SLACK * self.radius):
            raise InsufficientOrderError(f"Points lie beyond {RADIUS_SLACK} of the trusted radius {self.radius}")
        return np.polyval(self.to_float().coefficients[::-1], Z)


def _exact(c: Any) -> Any:
    return exact(c)


def compose_homothety(f: Germ, lam: Any) -> Germ:
    """
    Germ of f o phi_lam where phi_lam(z) = lam z
    """
    return f.compose_homothety(lam)


class JetVector:
    """
    The numeric jet of a tuple of germs at a point: a map from jet coordinates
    to values, exact or floating (possibly numpy arrays of values)
    """
    def __init__(self, values: Dict[JetCoordinate, Any], k: int = 0, z: Any = None) -> None:
        self.values = dict(values)
        self.k = k
        self.z = z

    def __getitem__(self, coord: JetCoordinate) -> Any:
        if coord not in self.values:
            raise DomainError(f"Jet does not contain the coordinate {coord}")
        return self.values[coord]

    def __contains__(self, coord: JetCoordinate) -> bool:
        return coord in self.values

    def __len__(self) -> int:
        return len(self.values)

    def get(self, kind: EnumJet, i: int, j: int) -> Any:
        return self[JetCoordinate(kind, i, j)]

    def items(self) -> Iterable[Tuple[JetCoordinate, Any]]:
        return sorted(self.values.items(), key = lambda cv: cv[0].key())

    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.values.values())


def jet_of(
        f: Sequence[Germ], k: int, z: Any, divisor_vars: Iterable[int] = ()
    ) -> JetVector:
    """
    Jet of order k of the tuple of germs f at the point z.

    The plain coordinates d^j z_i take the values f_i^(j)(z); for every
    divisor variable i the ratios (d^s z_i)/z_i take f_i^(s)(z)/f_i(z) and the
    log coordinates d^j log z_i are obtained from them by the Faa di Bruno
    expansion.

    Params
    ------
    f
        germs, variable i (starting at 1) is f[i - 1]
    k
        jet order
    z
        point of evaluation; exact inputs give an exact jet
    divisor_vars
        indices of the variables along which log coordinates are wanted

    Returns
    ------
    JetVector
    """
    if isinstance(f, Germ):
        f = [ f ]
    if k < 1:
        raise DomainError(f"Jet order k = {k} must be at least 1")

    divisor_vars = set(divisor_vars)
    if any(not 1 <= i <= len(f) for i in divisor_vars):
        raise DomainError(f"Divisor variables {sorted(divisor_vars)} out of range 1..{len(f)}")

    values = {}
    for (idx, g) in enumerate(f):
        i = idx + 1
        if g.K < k:
            raise InsufficientOrderError(f"Germ of variable {i} truncated at K = {g.K} < k = {k}")

        derivs = [ g.derivative_at(j, z) for j in range(k + 1) ]
        for j in range(1, k + 1):
            values[JetCoordinate(EnumJet.PLAIN, i, j)] = derivs[j]

        if i not in divisor_vars:
            continue
        if not derivs[0]:
            raise PoleError(f"Divisor variable {i} vanishes at z = {to_complex(numeric(z))}")

        ratios = { JetCoordinate(EnumJet.RATIO, i, s): derivs[s] / derivs[0]
                   for s in range(1, k + 1) }
        values |= ratios
        for j in range(1, k + 1):
            values[JetCoordinate(EnumJet.LOG, i, j)] = evaluate(
                faa_di_bruno_log(i, j, k), JetVector(ratios))

    return JetVector(values, k, z)


def evaluate(p: JetPolynomial, jv: JetVector) -> Any:
    """
    Value of the jet polynomial p at the jet jv: exact when every value used
    is exact, floating (or a numpy array) otherwise

    Raises DomainError when jv misses a coordinate of p.
    """
    coords = p.coordinates()
    missing = [ c for c in coords if c not in jv ]
    if missing:
        raise DomainError(f"Jet misses coordinates {', '.join(map(str, missing))}")

    values = { c: jv[c] for c in coords }
    exact_mode = all(is_exact(v) for v in values.values())
    if not exact_mode:
        values = { c: to_complex(v) for (c, v) in values.items() }

    total = QQ_I(0) if exact_mode else 0j
    for term in p.terms:
        value = term.coefficient if exact_mode else to_complex(term.coefficient)
        for (c, e) in term.factors:
            value = value * power(values[c], e)
        total = total + value

    return total
