#!/usr/bin/python
from enum import Enum
import sympy as sp

from analysis.minimal    import WeierstrassSurface, preset, weierstrass
from analysis.nevanlinna import GermCurve, Hypersurface, ProjectiveCurve, parse_disc_function, z
from jets.algebra        import exact
from jets.germ           import Germ
from jets.wronskian      import HyperplaneArrangement
from util.util           import DomainError, load_json, log

from typing import Any, Dict, List, Optional, Sequence


class EnumGerms(Enum):
    UNKNOWN    = 0
    POLYNOMIAL = 1
    SERIES     = 2

    def __str__(self) -> str:
        return self.name.lower()

    @staticmethod
    def from_str(label: str) -> 'EnumGerms':
        if label.upper() in ('POLYNOMIAL', 'POLY'):
            return EnumGerms.POLYNOMIAL
        elif label.upper() in ('SERIES', 'TAYLOR'):
            return EnumGerms.SERIES
        else:
            return EnumGerms.UNKNOWN


class JetFactory:
    """
    Builds germs, curves, hypersurfaces, arrangements and surfaces from the
    literals accepted on the command line and from their JSON files
    """
    @classmethod
    def germ(self,
            text: str, kind: str = 'auto', params: Dict[str, int] = {}, radius: float = 1.0
        ) -> Germ:
        """
        Germ at 0 of a function of z such as '1 + 2*z - z^3' or 'exp(z)'.
        Polynomials give exact germs with infinite radius; other functions are
        expanded in series up to K = 2k + 4 and trusted on the given radius,
        exactly when every coefficient is a (Gaussian) rational.
        """
        expr = parse_disc_function(text)
        gtype = EnumGerms.from_str(kind) if kind != 'auto' else \
                (EnumGerms.POLYNOMIAL if expr.is_polynomial(z) else EnumGerms.SERIES)

        if gtype == EnumGerms.POLYNOMIAL:
            if not expr.is_polynomial(z):
                raise DomainError(f"{expr} is not a polynomial in z")
            coeffs = sp.Poly(expr, z).all_coeffs()[::-1] if expr.has(z) else [ expr ]
            return Germ.polynomial([ exact(c) for c in coeffs ], params)

        elif gtype == EnumGerms.SERIES:
            K = 2 * (Germ.default_params | params)['k'] + 4
            try:
                series = sp.series(expr, z, 0, K + 1).removeO()
            except (ValueError, NotImplementedError) as e:
                raise DomainError(f"Cannot expand {expr} at 0: {e}")
            coeffs = [ series.coeff(z, j) for j in range(K + 1) ]
            try:
                return Germ([ exact(c) for c in coeffs ], radius = radius, exact = True)
            except DomainError:
                log(f"Found irrational coefficients in the series of {expr}; using floating point")
                return Germ([ complex(sp.N(c)) for c in coeffs ], radius = radius, exact = False)

        raise DomainError(f"Unknown germ kind {kind!r}, expected one of polynomial, series")


    @classmethod
    def germs(self, texts: Sequence[str], params: Dict[str, int] = {}) -> List[Germ]:
        return [ self.germ(t, params = params) for t in texts ]


    @classmethod
    def curve(self, data: Dict[str, Any]) -> ProjectiveCurve:
        """
        {"components": ["1", "z"], "r_max": "0.95"}
        """
        if 'components' not in data:
            raise DomainError('Curve needs the key "components"')
        return ProjectiveCurve.from_components(data['components'], float(data.get('r_max', 0.95)))


    @classmethod
    def germ_curve(self, data: Dict[str, Any], params: Dict[str, int] = {}) -> GermCurve:
        """
        {"components": ["1", "exp(z)"], "radius": 1.0}, components read as germs
        """
        if 'components' not in data:
            raise DomainError('Curve needs the key "components"')
        radius = float(data.get('radius', 1.0))
        r_max = data.get('r_max')
        return GermCurve([ self.germ(c, params = params, radius = radius) for c in data['components'] ],
                         None if r_max is None else float(r_max))


    @classmethod
    def surface(self, data: Dict[str, Any]) -> WeierstrassSurface:
        """
        {"preset": "enneper"}, {"F": "1", "G": "z"} or {"phi": ["1", "I", "0"]}
        """
        r_max = float(data.get('r_max', 0.95))
        if 'preset' in data:
            return preset(data['preset'])
        if 'F' in data and 'G' in data:
            return weierstrass(data['F'], data['G'], r_max, data.get('name', ''))
        if 'phi' in data:
            return WeierstrassSurface(data['phi'], r_max, data.get('name', ''))
        raise DomainError('Surface needs "preset", "F" and "G", or "phi"')


    @classmethod
    def load_curve(self, path: str, germs: bool = False) -> Any:
        data = load_json(path)
        if germs or data.get('kind', '').lower() == 'germs':
            log(f"Loading germ curve from {path} using JetFactory")
            return self.germ_curve(data)
        log(f"Loading curve from {path} using JetFactory")
        return self.curve(data)


    @classmethod
    def load_hypersurface(self, path: str) -> Hypersurface:
        log(f"Loading hypersurface from {path} using JetFactory")
        return Hypersurface.from_dict(load_json(path))


    @classmethod
    def load_arrangement(self, path: str) -> HyperplaneArrangement:
        log(f"Loading arrangement from {path} using JetFactory")
        return HyperplaneArrangement.from_dict(load_json(path))


    @classmethod
    def load_surface(self, path: str) -> WeierstrassSurface:
        log(f"Loading surface from {path} using JetFactory")
        return self.surface(load_json(path))
