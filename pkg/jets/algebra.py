#!/usr/bin/python
"""
Exact algebra of weighted jet coordinates.

A jet differential is a polynomial in the coordinates

    d[i]^j      the j-th derivative d^j z_i of the i-th coordinate
    dlog[i]^j   the j-th derivative d^j log z_i of a divisor variable
    ratio[i]^j  the quotient (d^j z_i) / z_i of a divisor variable

each of weight j. Coefficients are exact complex rationals (sympy's QQ_I), so
all identities in this module are tested exactly.

The text grammar accepted by `JetPolynomial.parse` writes monomials such as

    3*(dlog[1]^2)*(d[2]^1)^2 + (1/2-I)*ratio[1]^1

where the order after the bracket may be omitted when it is 1, an outer ^e is
an integer power, and complex coefficients a+b*I are parenthesised.
"""
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import factorial
import operator
import re

import sympy as sp
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.polyerrors import BasePolynomialError
from sympy.utilities.iterables import partitions

from util.util import DomainError

from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union


JET_PARAMS = { 'k': 6 }

MIXED = 'mixed'


class EnumJet(Enum):
    """
    The three kinds of jet coordinates. The integer value fixes the canonical
    order of factors with the same variable.
    """
    PLAIN = 0
    LOG   = 1
    RATIO = 2

    __tokens__ = { 'PLAIN': 'd', 'LOG': 'dlog', 'RATIO': 'ratio' }

    def token(self) -> str:
        return self.__tokens__[self.name]

    @staticmethod
    def from_token(token: str) -> 'EnumJet':
        for kind in EnumJet.members():
            if kind.token() == token:
                return kind
        raise DomainError(f"Unknown jet coordinate {token}")

    @classmethod
    def names(self) -> List[str]:
        return list(self.__members__.keys())

    @classmethod
    def members(self) -> List['EnumJet']:
        return list(self.__members__.values())


class EnumBasis(Enum):
    """
    Direction of the rewriting between the two local trivializations of
    logarithmic jet differentials
    """
    LOG_TO_RATIO = 0
    RATIO_TO_LOG = 1

    @classmethod
    def names(self) -> List[str]:
        return list(self.__members__.keys())


class JetCoordinate(NamedTuple):
    kind: EnumJet
    variable: int
    order: int

    @property
    def weight(self) -> int:
        return self.order

    def key(self) -> Tuple[int, int, int]:
        return (self.variable, self.kind.value, self.order)

    def __str__(self) -> str:
        return f"{self.kind.token()}[{self.variable}]^{self.order}"


Factors = Tuple[Tuple[JetCoordinate, int], ...]


class JetMonomial(NamedTuple):
    """
    A product of powers of jet coordinates with an exact coefficient
    """
    factors: Factors
    coefficient: Any

    @property
    def weight(self) -> int:
        return sum(c.weight * e for (c, e) in self.factors)


def exact(value: Any) -> Any:
    """
    Coerce an integer, a Fraction, a string such as '1/3' or '2-I/2', a sympy
    number or a QQ/QQ_I element into an exact complex rational in QQ_I.
    Floating point input is refused, it cannot be made exact honestly.
    """
    if QQ_I.of_type(value):
        return value
    if QQ.of_type(value):
        return QQ_I(value, QQ(0))
    if isinstance(value, bool):
        return QQ_I(int(value))
    if isinstance(value, int):
        return QQ_I(value)
    if isinstance(value, Fraction):
        return QQ_I(QQ(value.numerator, value.denominator), QQ(0))
    if isinstance(value, (float, complex)):
        raise DomainError(f"Floating value {value} cannot be used as an exact coefficient")
    if isinstance(value, str):
        value = sp.sympify(value, rational = True)
    if isinstance(value, sp.Basic):
        try:
            return QQ_I.from_sympy(sp.nsimplify(value) if value.has(sp.Float) else value)
        except (BasePolynomialError, TypeError, ValueError):
            raise DomainError(f"{value} is not an exact complex rational")

    raise DomainError(f"Cannot coerce {value!r} to an exact complex rational")


def is_exact(value: Any) -> bool:
    return QQ_I.of_type(value)


def to_complex(value: Any) -> Any:
    """
    Convert an exact QQ_I value to a Python complex; other values (floats,
    complex numbers, numpy arrays) are returned unchanged
    """
    if QQ_I.of_type(value):
        return complex(float(value.x), float(value.y))
    return value


def to_fraction(q: Any) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def power(value: Any, e: int) -> Any:
    """
    Non-negative integer power by repeated multiplication, valid for QQ_I
    elements, complex numbers and numpy arrays alike
    """
    if e == 0:
        return QQ_I(1) if QQ_I.of_type(value) else value ** 0
    return reduce(operator.mul, [ value ] * e)


def format_exact(c: Any) -> str:
    """
    Print a QQ_I coefficient as 'p/q' when real and as '(a+b*I)' otherwise
    """
    x, y = to_fraction(c.x), to_fraction(c.y)
    if not y:
        return str(x)
    if not x:
        return f"({y}*I)"
    sign = '+' if y > 0 else '-'
    return f"({x}{sign}{abs(y)}*I)"


class JetPolynomial:
    """
    A polynomial in jet coordinates with exact complex rational coefficients.

    Terms are held in a dictionary keyed by the canonical tuple of factors
    ((coordinate, exponent), ...) sorted by (variable, kind, order). Values
    are immutable: every operation returns a new polynomial.
    """
    TOKEN = re.compile(r'(dlog|ratio|d)\[\s*(\d+)\s*\](?:\^(\d+))?')

    def __init__(self, terms: Dict[Factors, Any] = {}) -> None:
        self._terms = { f: c for (f, c) in terms.items() if c }


    @classmethod
    def variable(self, kind: EnumJet, i: int, j: int) -> 'JetPolynomial':
        """
        The polynomial consisting of the single coordinate of the given kind
        for variable i and order j
        """
        if i < 1 or j < 1:
            raise DomainError(f"Jet coordinates need variable >= 1 and order >= 1, got ({i}, {j})")
        return JetPolynomial({ ((JetCoordinate(kind, i, j), 1), ): QQ_I(1) })


    @classmethod
    def constant(self, c: Any) -> 'JetPolynomial':
        return JetPolynomial({ (): exact(c) })


    @classmethod
    def parse(self, text: str) -> 'JetPolynomial':
        """
        Read a polynomial written in the grammar of this module. Every token
        d[i]^j, dlog[i]^j or ratio[i]^j becomes a sympy symbol, and sympy
        expands the expression over QQ_I.
        """
        coords = {}
        def symbol(m: re.Match) -> str:
            kind  = EnumJet.from_token(m.group(1))
            i, j  = int(m.group(2)), int(m.group(3) or 1)
            coord = JetPolynomial.variable(kind, i, j)
            name  = f"{kind.token()}_{i}_{j}"
            coords[name] = coord
            return name

        source = self.TOKEN.sub(symbol, text)
        gens = { name: sp.Symbol(name) for name in coords }
        try:
            expr = sp.sympify(source, locals = gens | { 'I': sp.I }, rational = True)
        except (sp.SympifyError, SyntaxError, TypeError) as e:
            raise DomainError(f"Cannot parse jet polynomial {text!r}: {e}")

        if not gens:
            return JetPolynomial.constant(expr)

        names = sorted(gens)
        try:
            poly = sp.Poly(expr, *[ gens[n] for n in names ], domain = QQ_I)
        except BasePolynomialError as e:
            raise DomainError(f"{text!r} is not a polynomial in jet coordinates: {e}")

        result = JetPolynomial()
        for (monom, c) in poly.terms():
            term = JetPolynomial.constant(c)
            for (name, e) in zip(names, monom):
                term = term * (coords[name] ** e)
            result = result + term

        return result


    @property
    def terms(self) -> List[JetMonomial]:
        """
        Terms in canonical order, lexicographic in their sorted factors
        """
        keys = sorted(self._terms, key = lambda f: [ (c.key(), e) for (c, e) in f ])
        return [ JetMonomial(f, self._terms[f]) for f in keys ]


    @property
    def declared_weight(self) -> Union[int, str]:
        return weight_of(self)


    def coordinates(self) -> List[JetCoordinate]:
        coords = { c for f in self._terms for (c, _) in f }
        return sorted(coords, key = lambda c: c.key())


    def max_order(self) -> int:
        return max((c.order for c in self.coordinates()), default = 0)


    def is_zero(self) -> bool:
        return not self._terms


    def substitute(self, mapping: Dict[JetCoordinate, 'JetPolynomial']) -> 'JetPolynomial':
        """
        Replace each coordinate in `mapping` by the given polynomial, leaving
        the other coordinates in place
        """
        result = JetPolynomial()
        for (factors, c) in self._terms.items():
            term = JetPolynomial({ (): c })
            for (coord, e) in factors:
                base = mapping.get(coord, JetPolynomial({ ((coord, 1), ): QQ_I(1) }))
                term = term * base ** e
            result = result + term

        return result


    def __add__(self, other: Any) -> 'JetPolynomial':
        other = _lift(other)
        terms = dict(self._terms)
        for (f, c) in other._terms.items():
            terms[f] = terms[f] + c if f in terms else c
        return JetPolynomial(terms)

    __radd__ = __add__

    def __neg__(self) -> 'JetPolynomial':
        return JetPolynomial({ f: -c for (f, c) in self._terms.items() })

    def __sub__(self, other: Any) -> 'JetPolynomial':
        return self + (-_lift(other))

    def __rsub__(self, other: Any) -> 'JetPolynomial':
        return _lift(other) - self

    def __mul__(self, other: Any) -> 'JetPolynomial':
        other = _lift(other)
        terms = {}
        for (f, a) in self._terms.items():
            for (g, b) in other._terms.items():
                h = _merge(f, g)
                terms[h] = terms[h] + a * b if h in terms else a * b
        return JetPolynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> 'JetPolynomial':
        if not isinstance(e, int) or e < 0:
            raise DomainError(f"Jet polynomials only take non-negative integer powers, got {e}")
        return reduce(operator.mul, [ self ] * e, JetPolynomial.constant(1))

    def __eq__(self, other: Any) -> bool:
        try:
            other = _lift(other)
        except DomainError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(str(m) for m in self.terms)))

    def __repr__(self) -> str:
        return f"JetPolynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return '0'

        parts = []
        for (factors, c) in self.terms:
            body = '*'.join(str(coord) if e == 1 else f"({coord})^{e}"
                            for (coord, e) in factors)
            coeff = format_exact(c)
            negative = not c.y and c.x < 0
            if negative:
                coeff = coeff[1:]

            if not body:
                text = coeff
            elif coeff == '1':
                text = body
            else:
                text = f"{coeff}*{body}"
            parts.append(('- ' if negative else '+ ', text))

        (sign, text) = parts[0]
        head = ('-' if sign == '- ' else '') + text
        return ' '.join([ head ] + [ f"{s}{t}" for (s, t) in parts[1:] ])


def _lift(value: Any) -> JetPolynomial:
    if isinstance(value, JetPolynomial):
        return value
    return JetPolynomial.constant(value)


def _merge(f: Factors, g: Factors) -> Factors:
    exps = dict(f)
    for (c, e) in g:
        exps[c] = exps.get(c, 0) + e
    return tuple(sorted(exps.items(), key = lambda ce: ce[0].key()))


def plain(i: int, j: int) -> JetPolynomial:
    """ d^j z_i """
    return JetPolynomial.variable(EnumJet.PLAIN, i, j)


def dlog(i: int, j: int) -> JetPolynomial:
    """ d^j log z_i """
    return JetPolynomial.variable(EnumJet.LOG, i, j)


def ratio(i: int, j: int) -> JetPolynomial:
    """ (d^j z_i) / z_i """
    return JetPolynomial.variable(EnumJet.RATIO, i, j)


def weight_of(p: JetPolynomial) -> Union[int, str]:
    """
    Return the common weight m of all the terms of p, or 'mixed' when two
    terms have different weights. The zero polynomial has weight 0.
    """
    weights = { t.weight for t in p.terms }
    if len(weights) > 1:
        return MIXED
    return weights.pop() if weights else 0


def __check_order(j: int, k: int) -> None:
    if not 1 <= j <= k:
        raise DomainError(f"Jet order j = {j} must lie in [1, {k}]")


def __bell_terms(j: int) -> Iterable[Tuple[int, Dict[int, int]]]:
    """
    For each partition beta of j (as a dictionary part -> multiplicity) yield
    the number of set partitions of type beta

        j! / prod_s (beta_s! (s!)^beta_s)

    and a copy of beta
    """
    for beta in partitions(j):
        beta = dict(beta)
        denom = reduce(operator.mul,
                       [ factorial(m) * factorial(s) ** m for (s, m) in beta.items() ], 1)
        yield (factorial(j) // denom, beta)


def faa_di_bruno_log(i: int, j: int, k: int = JET_PARAMS['k']) -> JetPolynomial:
    """
    Expansion of d^j log z_i as an isobaric polynomial of weight j in the
    symbols (d^s z_i)/z_i, with integer coefficients

        sum_beta  j!/prod(beta_s! (s!)^beta_s) (-1)^(|beta|-1) (|beta|-1)!
                  prod_s ((d^s z_i)/z_i)^beta_s

    where beta runs over the partitions of j and |beta| is the number of parts.

    Params
    ------
    i
        index of the divisor variable
    j
        order of the derivative, 1 <= j <= k
    k
        jet order
    """
    __check_order(j, k)
    p = JetPolynomial()
    for (count, beta) in __bell_terms(j):
        parts = sum(beta.values())
        coeff = count * (-1) ** (parts - 1) * factorial(parts - 1)
        term  = JetPolynomial.constant(coeff)
        for (s, m) in beta.items():
            term = term * ratio(i, s) ** m
        p = p + term

    return p


def faa_di_bruno_inverse(i: int, j: int, k: int = JET_PARAMS['k']) -> JetPolynomial:
    """
    Expansion of (d^j z_i)/z_i as an isobaric polynomial of weight j in the
    symbols d^s log z_i; the coefficients are those of the complete Bell
    polynomial, z^(j)/z = B_j((log z)', ..., (log z)^(j))
    """
    __check_order(j, k)
    p = JetPolynomial()
    for (count, beta) in __bell_terms(j):
        term = JetPolynomial.constant(count)
        for (s, m) in beta.items():
            term = term * dlog(i, s) ** m
        p = p + term

    return p


def convert_trivialization(
        p: JetPolynomial, direction: EnumBasis, ell: Optional[int] = None
    ) -> JetPolynomial:
    """
    Rewrite an isobaric polynomial between the two trivializations of
    logarithmic jet differentials. LOG_TO_RATIO replaces every d^j log z_i
    by its expansion in (d^s z_i)/z_i, RATIO_TO_LOG does the converse. Plain
    coordinates are left untouched and the weight is preserved.

    Params
    ------
    p
        isobaric jet polynomial
    direction
        EnumBasis
    ell
        number of divisor variables; when given, log and ratio coordinates of
        a variable beyond ell are refused
    """
    if weight_of(p) == MIXED:
        raise DomainError(f"Cannot change trivialization of mixed weight polynomial {p}")

    coords = p.coordinates()
    if ell is not None:
        outside = [ c for c in coords if c.kind != EnumJet.PLAIN and c.variable > ell ]
        if outside:
            raise DomainError(f"Coordinates {', '.join(map(str, outside))} are not divisor variables (ell = {ell})")

    k = max(p.max_order(), 1)
    if direction == EnumBasis.LOG_TO_RATIO:
        mapping = { c: faa_di_bruno_log(c.variable, c.order, k)
                    for c in coords if c.kind == EnumJet.LOG }
    elif direction == EnumBasis.RATIO_TO_LOG:
        mapping = { c: faa_di_bruno_inverse(c.variable, c.order, k)
                    for c in coords if c.kind == EnumJet.RATIO }
    else:
        raise DomainError(f"Direction must be of type EnumBasis, but it's {direction}")

    return p.substitute(mapping)


def isobaric_monomials(weight: int, coordinates: Sequence[JetCoordinate]) -> List[JetPolynomial]:
    """
    All monomials of the given weight in the given coordinates, each with
    coefficient 1, in canonical order
    """
    coordinates = sorted(set(coordinates), key = lambda c: c.key())

    def expand(w: int, idx: int) -> List[List[Tuple[JetCoordinate, int]]]:
        if w == 0:
            return [ [] ]
        if idx == len(coordinates):
            return []
        c = coordinates[idx]
        found = []
        for e in range(w // c.weight + 1):
            for rest in expand(w - e * c.weight, idx + 1):
                found.append(([ (c, e) ] if e else []) + rest)
        return found

    return [ JetPolynomial({ tuple(f): QQ_I(1) }) for f in expand(weight, 0) ]


def homothety_weight_check(
        p: JetPolynomial, m: int, germs: Sequence['Germ'], lam: Any, z: Any,
        tol: float = 1e-10
    ) -> bool:
    """
    Check that p scales with weight m under the homothety phi(z) = lam z,

        |p(j_k(f o phi))(z) - lam^m p(j_k(f))(lam z)| <= tol (1 + |lam^m p(j_k(f))(lam z)|)

    Divisor variables are those carrying log or ratio coordinates in p.

    Params
    ------
    p
        isobaric jet polynomial of weight m
    m
        expected weight
    germs
        one germ per variable of p
    lam
        ratio of the homothety
    z
        point at which both sides are evaluated

    Returns
    ------
    True if the two sides agree within the relative tolerance
    """
    from jets.germ import compose_homothety, evaluate, jet_of

    k = max(p.max_order(), 1)
    divisors = { c.variable for c in p.coordinates() if c.kind != EnumJet.PLAIN }

    scaled = [ compose_homothety(f, lam) for f in germs ]
    lhs = to_complex(evaluate(p, jet_of(scaled, k, z, divisors)))
    rhs = to_complex(evaluate(p, jet_of(germs, k, multiply(lam, z), divisors)))
    rhs = to_complex(power(numeric(lam), m)) * rhs

    return abs(lhs - rhs) <= tol * (1 + abs(rhs))


def numeric(value: Any) -> Any:
    """
    Exact QQ_I value when the input can be read exactly, Python complex otherwise
    """
    if isinstance(value, (float, complex)) or hasattr(value, 'dtype'):
        return complex(value)
    return exact(value)


def multiply(a: Any, b: Any) -> Any:
    """
    Product of two points, exact when both are exact
    """
    a, b = numeric(a), numeric(b)
    if is_exact(a) and is_exact(b):
        return a * b
    return complex(to_complex(a)) * complex(to_complex(b))
