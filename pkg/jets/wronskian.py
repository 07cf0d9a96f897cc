#!/usr/bin/python
"""
The Wronskian logarithmic jet differential attached to a family of q
hyperplanes in general position in CP^n,

    omega = Wron(dx_1, ..., dx_n) / (F_1 ... F_q)

with its weight n(n+1)/2 and its vanishing order q - (n+1) on the hyperplane
at infinity, and the local rewriting of omega in the log coordinates of n of
the forms.
"""
from fractions import Fraction
from functools import reduce
import itertools
import operator
import numpy as np
import sympy as sp

from jets.algebra import EnumJet, JetPolynomial, exact, faa_di_bruno_inverse, \
    is_exact, numeric, to_complex, weight_of
from jets.germ import Germ, evaluate, jet_of
from util.util import DomainError, InvalidArrangementError, PoleError, parse_fraction

from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple


class HyperplaneArrangement:
    """
    q linear forms F_i = a_0 + a_1 x_1 + ... + a_n x_n in the inhomogeneous
    coordinates of CP^n. Homogenized, a_0 is the coefficient of z_0, so the
    form [1, 0, ..., 0] is the hyperplane at infinity.
    """
    def __init__(self, n: int, forms: Sequence[Sequence[Any]]) -> None:
        if n < 1:
            raise DomainError(f"Dimension n = {n} must be at least 1")

        self.n = n
        self.forms = []
        for form in forms:
            if len(form) != n + 1:
                raise DomainError(f"Form {list(form)} must have n + 1 = {n + 1} coefficients")
            form = tuple(parse_fraction(a) for a in form)
            if not any(form):
                raise DomainError('The zero form does not define a hyperplane')
            self.forms.append(form)


    @classmethod
    def from_dict(self, data: Dict[str, Any]) -> 'HyperplaneArrangement':
        """
        Read an arrangement from its JSON form {"n": 2, "forms": [[a0, a1, a2], ...]}
        with exact rationals given as strings like "1/3"
        """
        if 'n' not in data or 'forms' not in data:
            raise DomainError('Arrangement needs the keys "n" and "forms"')
        return HyperplaneArrangement(int(data['n']), data['forms'])


    @property
    def q(self) -> int:
        return len(self.forms)


    def to_dict(self) -> Dict[str, Any]:
        return { 'n': self.n, 'forms': [ [ str(a) for a in f ] for f in self.forms ] }


    def value(self, i: int, x: Sequence[Any]) -> Any:
        """
        F_i(x) for the form of index i (starting at 1), exact when x is exact
        """
        form = self.forms[i - 1]
        if all(is_exact(v) for v in x):
            return reduce(operator.add, (exact(a) * v for (a, v) in zip(form[1:], x)), exact(form[0]))
        x = [ to_complex(v) for v in x ]
        return complex(form[0]) + sum(float(a) * v for (a, v) in zip(form[1:], x))


class WronskianDifferential(NamedTuple):
    arrangement: HyperplaneArrangement
    numerator: JetPolynomial
    weight: int
    vanishing_order: int
    k: int


class LocalLogForm(NamedTuple):
    """
    omega = constant * polynomial / prod_{j not in I} F_j near a point where
    the forms F_i, i in I, serve as coordinates. In `polynomial` the log
    coordinates of variable s stand for d^j log F_{I[s-1]}.
    """
    I: Tuple[int, ...]
    polynomial: JetPolynomial
    constant: Fraction
    verified: bool


def determinant(M: Sequence[Sequence[JetPolynomial]]) -> JetPolynomial:
    """
    Determinant of a square matrix of jet polynomials by cofactor expansion
    along the first row
    """
    n = len(M)
    if n == 1:
        return M[0][0]

    total = JetPolynomial()
    for col in range(n):
        minor = [ row[:col] + row[col + 1:] for row in M[1:] ]
        term = M[0][col] * determinant(minor)
        total = total + term if col % 2 == 0 else total - term

    return total


def symbolic_wronskian(variables: Sequence[int], kind: EnumJet = EnumJet.PLAIN) -> JetPolynomial:
    """
    Expanded Wronskian whose row r is (d v_r, d^2 v_r, ..., d^n v_r) for the
    r-th of the n given variables, in coordinates of the given kind
    """
    n = len(variables)
    M = [ [ JetPolynomial.variable(kind, v, j) for j in range(1, n + 1) ] for v in variables ]
    return determinant(M)


def __rational_matrix(rows: Sequence[Sequence[Fraction]]) -> sp.Matrix:
    return sp.Matrix([ [ sp.Rational(a.numerator, a.denominator) for a in row ] for row in rows ])


def dependent_subsets(a: HyperplaneArrangement) -> List[Tuple[int, ...]]:
    """
    All (n+1)-subsets of forms (indices starting at 1) whose homogenized
    coefficient matrix is singular
    """
    if a.q < a.n + 1:
        raise DomainError(f"General position needs q >= n + 1 = {a.n + 1} forms, got {a.q}")

    found = []
    for subset in itertools.combinations(range(a.q), a.n + 1):
        M = __rational_matrix([ a.forms[i] for i in subset ])
        if M.det(method = 'bareiss') == 0:
            found.append(tuple(i + 1 for i in subset))

    return found


def check_general_position(a: HyperplaneArrangement) -> bool:
    """
    True iff every n+1 of the q hyperplanes have empty common intersection in
    CP^n, i.e. every (n+1)x(n+1) minor of the homogenized coefficient matrix is
    nonsingular (exact rational determinants)
    """
    return not dependent_subsets(a)


def build_wronskian(a: HyperplaneArrangement, k: Optional[int] = None) -> WronskianDifferential:
    """
    Construct omega = Wron(dx_1, ..., dx_n) / (F_1 ... F_q). The numerator is
    expanded into a jet polynomial in the plain coordinates d^j x_i; its weight
    is read off the expansion and the vanishing order at infinity is q - (n+1).

    Params
    ------
    a
        arrangement in general position
    k
        jet order, n by default; the rows of the Wronskian reach order n

    Returns
    ------
    WronskianDifferential
    """
    k = a.n if k is None else k
    if k < a.n:
        raise DomainError(f"Jet order k = {k} is below the order n = {a.n} of the Wronskian")

    bad = dependent_subsets(a)
    if bad:
        raise InvalidArrangementError(f"Hyperplanes {bad[0]} are not in general position")

    numerator = symbolic_wronskian(range(1, a.n + 1))
    return WronskianDifferential(a, numerator, weight_of(numerator), a.q - (a.n + 1), k)


def local_log_form(w: WronskianDifferential, I: Sequence[int], seed: int = 0) -> LocalLogForm:
    """
    Rewrite omega near a point where F_i, i in I, are coordinates. With
    y_s = F_{I[s]} and A_I the matrix of linear parts of these forms,

        Wron(dx) = det(A_I)^(-1) Wron(dy)
                 = det(A_I)^(-1) prod_s y_s det[ (d^j y_s)/y_s ]

    and each (d^j y_s)/y_s is a polynomial in d^i log y_s, so that

        omega = Const * L / prod_{j not in I} F_j,   Const = 1/det(A_I)

    with L the determinant of the log expansions. The identity is checked
    exactly on random polynomial jets.

    Params
    ------
    w
        Wronskian differential
    I
        n distinct form indices (starting at 1)
    seed
        seed of the random jets of the verification

    Returns
    ------
    LocalLogForm
    """
    a = w.arrangement
    I = tuple(I)
    if len(I) != a.n or len(set(I)) != a.n or any(not 1 <= i <= a.q for i in I):
        raise DomainError(f"Index set {I} must hold n = {a.n} distinct indices in 1..{a.q}")

    A = __rational_matrix([ a.forms[i - 1][1:] for i in I ])
    det = A.det(method = 'bareiss')
    if det == 0:
        raise DomainError(f"Forms {I} are linearly dependent and cannot serve as coordinates")

    M = [ [ faa_di_bruno_inverse(s, j, a.n) for j in range(1, a.n + 1) ]
          for s in range(1, a.n + 1) ]
    form = LocalLogForm(I, determinant(M), 1 / Fraction(int(det.p), int(det.q)), False)

    return form._replace(verified = verify_local_log_form(w, form, seed))


def verify_local_log_form(
        w: WronskianDifferential, form: LocalLogForm, seed: int = 0, trials: int = 3
    ) -> bool:
    """
    Exact check of Wron(dx) = Const * L * prod_{i in I} F_i on the jets at 0
    of random polynomial curves x(z) with integer coefficients
    """
    a = w.arrangement
    n = a.n
    rng = np.random.default_rng(seed)

    done = 0
    while done < trials:
        xs = [ Germ.polynomial([ int(c) for c in rng.integers(-5, 6, size = n + 3) ])
               for _ in range(n) ]
        ys = [ __form_germ(a, i, xs) for i in form.I ]
        y0 = [ y.value_at(0) for y in ys ]
        if any(not v for v in y0):
            continue

        lhs = evaluate(w.numerator, jet_of(xs, n, 0))
        rhs = exact(form.constant) * evaluate(form.polynomial, jet_of(ys, n, 0, range(1, n + 1)))
        rhs = reduce(operator.mul, y0, rhs)
        if lhs != rhs:
            return False
        done += 1

    return True


def __form_germ(a: HyperplaneArrangement, i: int, xs: Sequence[Germ]) -> Germ:
    form = a.forms[i - 1]
    germ = xs[0] * 0 + form[0]
    for (coeff, x) in zip(form[1:], xs):
        germ = germ + x * coeff
    return germ


def evaluate_wronskian(w: WronskianDifferential, germs: Sequence[Germ], z: Any) -> Any:
    """
    Value of omega on the curve x = (x_1, ..., x_n) given by germs, at z:
    the numerator on the n-jet divided by the product of all the forms.
    Raises PoleError when the curve meets one of the hyperplanes at z.
    """
    a = w.arrangement
    if len(germs) != a.n:
        raise DomainError(f"Need n = {a.n} germs, got {len(germs)}")

    num = evaluate(w.numerator, jet_of(germs, a.n, z))
    x = [ g.value_at(z) for g in germs ]
    den = [ a.value(i, x) for i in range(1, a.q + 1) ]
    if any(not v for v in den):
        raise PoleError(f"Curve meets a hyperplane at z = {to_complex(numeric(z))}")

    if is_exact(num) and all(is_exact(v) for v in den):
        return reduce(operator.truediv, den, num)
    return reduce(operator.truediv, [ complex(to_complex(v)) for v in den ], complex(to_complex(num)))


def recover_fujimoto_weight(n: int, q: int) -> Tuple[int, int]:
    """
    The pair (m, m_tilde) = (n(n+1)/2, q - (n+1)) of weight and vanishing
    order of the Wronskian differential; the integral estimates need
    m_tilde > 2m, which holds iff q > n^2 + 2n + 1 = (n+1)^2.

    The Gauss map of a minimal surface in R^(n+1) lands in CP^n, and a
    non-degenerate one omits at most (n+1)^2 hyperplanes in general position.
    That count is the last q outside the regime m_tilde > 2m. The relation is
    recorded here, not asserted.
    """
    if n < 1:
        raise DomainError(f"Dimension n = {n} must be at least 1")
    if q < n + 2:
        raise DomainError(f"Need q >= n + 2 = {n + 2} hyperplanes for a positive vanishing order, got {q}")
    return (n * (n + 1) // 2, q - (n + 1))


def moment_arrangement(n: int, q: int) -> HyperplaneArrangement:
    """
    q hyperplanes with coefficients (1, t, t^2, ..., t^n) for t = 0, ..., q-1.
    Every n+1 of them form a Vandermonde matrix on distinct nodes, so the
    family is in general position; t = 0 gives the hyperplane at infinity.
    """
    return HyperplaneArrangement(n, [ [ t ** p for p in range(n + 1) ] for t in range(q) ])
