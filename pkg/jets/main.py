#!/usr/bin/python
import functools
import sys
import click
from click.core import ParameterSource

from analysis.bounds     import BOUNDS_HEADER, bounds_table, fujimoto_regime
from analysis.minimal    import PROOF_EPS, EnumModel, area_form_density, conjugate_component, \
    gauss_map, holomorphy_residual, jet_norm_circle_integral, proof_integral_convergence, \
    verify_conformality, yau_integral_divergence
from analysis.nevanlinna import FMT_HEADER, ProjectiveCurve, avoidance_check, fmt_table, \
    ldl_product_ratio, ldl_ratio, transcendence_ratio
from jets.algebra        import EnumJet, JetPolynomial, exact, faa_di_bruno_inverse, \
    faa_di_bruno_log, format_exact, homothety_weight_check, is_exact, to_complex, weight_of
from jets.factory        import JetFactory
from jets.germ           import evaluate, jet_of
from jets.wronskian      import build_wronskian, local_log_form
from util.geometry       import EnumNorm, circle_points
from util.util           import LabError, DomainError, check_grid, log, parse_grid, \
    parse_range, save_json, save_rows

from typing import Any, Callable, Dict, List, NamedTuple, Sequence


FORMAT_VERSION = '1'

DEFAULT_GRID = '0.5,0.6,0.7,0.8,0.9,0.95'


class RunConfig(NamedTuple):
    """
    Tuple container for the global options shared by every subcommand
    """
    json: bool
    out: str
    tol: float
    grid: List[float]
    tol_given: bool = False
    version: str = FORMAT_VERSION


def __lab(fn: Callable) -> Callable:
    """
    Terminate with the exit code of the error class on any LabError
    """
    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except LabError as e:
            log(f"{type(e).__name__}: {e}")
            sys.exit(e.exit_code)

    return wrapper


def __emit(cfg: RunConfig, header: Sequence[str], rows: List[List[Any]], extra: Dict[str, Any] = {}) -> None:
    if cfg.json:
        save_json({ 'version': cfg.version, 'header': list(header), 'rows': rows } | extra, cfg.out)
    else:
        save_rows(rows, header, cfg.out)


def __report(cfg: RunConfig, report: Dict[str, Any]) -> None:
    if cfg.json:
        save_json({ 'version': cfg.version } | report, cfg.out)
    else:
        save_rows(sorted(report.items()), [ 'key', 'value' ], cfg.out)


def __value(v: Any) -> str:
    return format_exact(v) if is_exact(v) else repr(complex(to_complex(v)))


@click.command()
@click.option('--n', 'n_range', default = '1..6', help = 'Dimensions, a range a..b or a single n')
@click.pass_obj
@__lab
def bounds(cfg: RunConfig, n_range: str) -> None:
    """
    Table of the jet constants, the degree threshold and the stated bound for
    each n; exits with 3 if the threshold is not below the bound for some n

        python -m jets.main bounds --n 1..6
    """
    try:
        ns = parse_range(n_range)
    except DomainError as e:
        raise click.BadParameter(str(e), param_hint = '--n')
    if ns[0] < 1:
        raise click.BadParameter(f"Dimension must be at least 1, got {ns[0]}", param_hint = '--n')

    log(f"Computing bounds for n = {ns[0]}..{ns[-1]}")
    rows = bounds_table(ns)
    __emit(cfg, BOUNDS_HEADER, rows)

    if not all(row[-1] for row in rows):
        sys.exit(3)


@click.command()
@click.option('--order', '-j', default = 3, help = 'Order j of the derivative')
@click.option('--variable', '-i', default = 1, help = 'Index of the divisor variable')
@click.option('--inverse', is_flag = True, default = False,
              help = 'Expand (d^j z)/z in log coordinates instead of d^j log z in ratios')
@click.pass_obj
@__lab
def faa(cfg: RunConfig, order: int, variable: int, inverse: bool) -> None:
    """
    Print the Faa di Bruno expansion of d^j log z_i (or of its inverse)

        python -m jets.main faa --order 3
    """
    if inverse:
        lhs, p = f"ratio[{variable}]^{order}", faa_di_bruno_inverse(variable, order, order)
    else:
        lhs, p = f"dlog[{variable}]^{order}", faa_di_bruno_log(variable, order, order)

    __report(cfg, { 'lhs': lhs, 'expansion': str(p), 'weight': weight_of(p) })


@click.command(name = 'jet-eval')
@click.option('--poly', '-p', required = True, help = 'Jet polynomial, e.g. "dlog[1]^2 + d[2]^1"')
@click.option('--germ', '-g', 'germs', multiple = True, required = True,
              help = 'Germ of each variable, in order, e.g. "1 + z"; repeat for each variable')
@click.option('--z', 'point', default = '0', help = 'Point of evaluation (exact, e.g. "1/3")')
@click.option('-k', default = 6, help = 'Jet order')
@click.option('--weight', '-m', default = None, type = int,
              help = 'Also check homogeneity of this weight under z -> lam z')
@click.option('--lam', default = '1/2', help = 'Ratio of the homothety for --weight')
@click.pass_obj
@__lab
def jet_eval(cfg: RunConfig, poly: str, germs: List[str], point: str, k: int,
        weight: int, lam: str
    ) -> None:
    """
    Evaluate a jet polynomial on the jet of a tuple of germs at a point

        python -m jets.main jet-eval -p "dlog[1]^2" -g "1 + z" --z 0
    """
    p = JetPolynomial.parse(poly)
    fs = JetFactory.germs(germs, { 'k': k })
    divisors = { c.variable for c in p.coordinates() if c.kind != EnumJet.PLAIN }
    z0 = exact(point)

    value = evaluate(p, jet_of(fs, max(p.max_order(), 1), z0, divisors))
    report = { 'polynomial': str(p), 'weight': weight_of(p), 'value': __value(value) }
    if weight is not None:
        # the check keeps its own tolerance unless --tol is given
        tol = { 'tol': cfg.tol } if cfg.tol_given else {}
        report['homogeneous'] = homothety_weight_check(p, weight, fs, exact(lam), z0, **tol)

    __report(cfg, report)


@click.command()
@click.option('--file', '-f', 'path', required = True, help = 'Arrangement JSON {"n": .., "forms": [..]}')
@click.option('--local', 'local', default = '', help = 'Indices I of the forms used as coordinates, e.g. "1,2"')
@click.option('-s', 'seed', default = 0, help = 'Seed of the random jets checking the local form')
@click.pass_obj
@__lab
def wronskian(cfg: RunConfig, path: str, local: str, seed: int) -> None:
    """
    Weight and vanishing order of the Wronskian differential of an
    arrangement, and optionally its local log form

        python -m jets.main wronskian --file arr.json --local 1,2
    """
    a = JetFactory.load_arrangement(path)
    w = build_wronskian(a)

    report = {
        'n': a.n, 'q': a.q,
        'weight': w.weight, 'vanishing_order': w.vanishing_order,
        'twist_exceeds_twice_weight': fujimoto_regime(a.n, a.q),
        'numerator': str(w.numerator),
    }
    if local:
        I = [ int(i) for i in local.split(',') ]
        form = local_log_form(w, I, seed)
        report |= { 'local_polynomial': str(form.polynomial), 'local_constant': form.constant,
                    'local_verified': form.verified }

    __report(cfg, report)


@click.command(name = 'fmt-check')
@click.option('--curve', '-c', required = True, help = 'Curve JSON {"components": [..], "r_max": ..}')
@click.option('--hypersurface', '-d', required = True, help = 'Hypersurface JSON {"n": .., "Q": ..}')
@click.pass_obj
@__lab
def fmt_check(cfg: RunConfig, curve: str, hypersurface: str) -> None:
    """
    Rows r, m, N, T, defect of the First Main Theorem; exits with 4 if the
    defect spreads by more than --tol

        python -m jets.main --grid 0.5:0.95:10 fmt-check -c curve.json -d hyp.json
    """
    f = JetFactory.load_curve(curve)
    if not isinstance(f, ProjectiveCurve):
        raise DomainError('The First Main Theorem needs polynomial components, '
                          'germ curves only sample growth')
    D = JetFactory.load_hypersurface(hypersurface)

    rows = fmt_table(f, D, cfg.grid, { 'tol': min(cfg.tol, 1e-8) })
    defects = [ row[-1] for row in rows ]
    spread = max(defects) - min(defects)
    __emit(cfg, FMT_HEADER, rows, { 'spread': spread })

    if spread > cfg.tol:
        log(f"Found defect spread {spread} above tolerance {cfg.tol}")
        sys.exit(4)


@click.command()
@click.option('--curve', '-c', required = True, help = 'Curve JSON')
@click.option('--germs', is_flag = True, default = False, help = 'Read the components as germs')
@click.pass_obj
@__lab
def transcendence(cfg: RunConfig, curve: str, germs: bool) -> None:
    """
    T_f(r) / log(1/(1-r)) on the grid

        python -m jets.main transcendence -c curve.json
    """
    f = JetFactory.load_curve(curve, germs)
    grid = [ r for r in cfg.grid if r <= f.r_max ]
    if len(grid) < len(cfg.grid):
        log(f"Dropping radii above the admissible radius {f.r_max} of the curve")
    if not grid:
        raise DomainError(f"No radius of the grid lies within {f.r_max}")

    ratios = transcendence_ratio(f, grid)
    __emit(cfg, [ 'r', 'ratio' ], [ [ r, q ] for (r, q) in zip(grid, ratios) ])


@click.command()
@click.option('--curve', '-c', required = True, help = 'Curve JSON with polynomial components')
@click.option('--hypersurface', '-d', required = True, help = 'Hypersurface JSON {"n": .., "Q": ..}')
@click.pass_obj
@__lab
def avoidance(cfg: RunConfig, curve: str, hypersurface: str) -> None:
    """
    Hypotheses and sampled conclusion of the statement that a curve avoiding a
    generic hypersurface of degree at least (n+1)^(n+3) (n+2)^(n+3) is not
    transcendental

        python -m jets.main avoidance -c curve.json -d hyp.json
    """
    f = JetFactory.load_curve(curve)
    D = JetFactory.load_hypersurface(hypersurface)
    grid = [ r for r in cfg.grid if r <= f.r_max ]

    check = avoidance_check(f, D, grid)
    if check.applies and not check.bounded:
        log(f"Found growing ratios {check.ratios[-2]} -> {check.ratios[-1]} "
            'for a curve the statement covers')
    __report(cfg, { 'degree': check.degree, 'stated_bound': check.stated, 'degree_ok': check.degree_ok,
                    'avoids': check.avoids, 'applies': check.applies,
                    'max_ratio': max(check.ratios), 'bounded': check.bounded })


@click.command()
@click.option('--phi', 'phis', multiple = True, required = True, help = 'Function of z; repeat for a product')
@click.option('--lam', 'lams', multiple = True, type = int, required = True, help = 'Order lambda per function')
@click.option('-t', 'tpow', default = None, type = float, help = 'Exponent t of the product, 0 < t n < 1')
@click.pass_obj
@__lab
def ldl(cfg: RunConfig, phis: List[str], lams: List[int], tpow: float) -> None:
    """
    Normalised circle integrals of the higher logarithmic derivatives

        python -m jets.main ldl --phi "exp(z)" --lam 2
        python -m jets.main ldl --phi "exp(z)" --phi "1/(1-z)" --lam 1 --lam 2 -t 0.25
    """
    if tpow is None:
        if len(phis) != 1 or len(lams) != 1:
            raise click.UsageError('A product of several functions needs the exponent -t')
        ratios = ldl_ratio(phis[0], lams[0], cfg.grid)
    else:
        ratios = ldl_product_ratio(phis, lams, tpow, cfg.grid)

    __emit(cfg, [ 'r', 'ratio' ], [ [ r, q ] for (r, q) in zip(cfg.grid, ratios) ])


def __surface(name: str, path: str) -> Any:
    if path:
        return JetFactory.load_surface(path)
    return JetFactory.surface({ 'preset': name })


@click.command()
@click.option('--preset', default = 'enneper', help = 'plane, enneper or catenoid')
@click.option('--file', '-f', 'path', default = '', help = 'Surface JSON, overrides --preset')
@click.option('--check', default = 'holomorphy',
              type = click.Choice([ 'holomorphy', 'conformality', 'none' ]),
              help = 'Property to report')
@click.option('--conjugate', default = -1, help = 'Conjugate this component (negative control)')
@click.option('--radius', default = 0.3, help = 'Radius of the sample circle for holomorphy')
@click.option('--samples', default = 16, help = 'Number of samples on the circle')
@click.pass_obj
@__lab
def gauss(cfg: RunConfig, preset: str, path: str, check: str, conjugate: int,
        radius: float, samples: int
    ) -> None:
    """
    Gauss map of a minimal surface, with a holomorphy or conformality check

        python -m jets.main gauss --preset enneper --check holomorphy
    """
    s = __surface(preset, path)
    report = { 'surface': str(s), 'conformal': verify_conformality(s) }
    if check == 'conformality':
        __report(cfg, report)
        return

    g = gauss_map(s)
    if conjugate >= 0:
        g = conjugate_component(g, conjugate)
    report |= { 'gauss_map': str(g), 'constant': g.is_constant() }

    if check == 'holomorphy':
        residual = holomorphy_residual(g, circle_points(radius, samples))
        report |= { 'residual': residual, 'holomorphic': residual <= cfg.tol }

    __report(cfg, report)


@click.command()
@click.option('--preset', default = 'plane', help = 'plane, enneper or catenoid')
@click.option('--file', '-f', 'path', default = '', help = 'Surface JSON, overrides --preset')
@click.option('--z', 'point', default = 0.0, type = complex, help = 'Point of the disc')
@click.option('--norm', default = 'EUCLIDEAN', type = click.Choice(EnumNorm.names()),
              help = 'Norm of phi in the density 2 ||phi||^2')
@click.pass_obj
@__lab
def area(cfg: RunConfig, preset: str, path: str, point: complex, norm: str) -> None:
    """
    Density of the induced area form at a point

        python -m jets.main area --preset enneper --z 0
    """
    s = __surface(preset, path)
    __report(cfg, { 'surface': str(s), 'z': point, 'norm': norm.lower(),
                    'density': area_form_density(s, point, EnumNorm[norm]) })


@click.command()
@click.option('-p', 'p', default = 2.0, help = 'Exponent p > 0 of h')
@click.option('--model', default = 'POLE', type = click.Choice(EnumModel.names()), help = 'Model function h')
@click.option('--eps', default = '1e-1,1e-2,1e-3,1e-4,1e-5,1e-6', help = 'Decreasing values of eps')
@click.pass_obj
@__lab
def yau(cfg: RunConfig, p: float, model: str, eps: str) -> None:
    """
    Partial integrals of h^p over |z| <= 1 - eps for the flat metric

        python -m jets.main yau -p 2 --model POLE
    """
    eps_grid = list(parse_grid(eps))
    values = yau_integral_divergence(p, EnumModel[model], eps_grid)
    __emit(cfg, [ 'eps', 'integral' ], [ [ e, v ] for (e, v) in zip(eps_grid, values) ])


@click.command(name = 'proof-integral')
@click.option('--ratio', '-a', required = True, type = float, help = 'The ratio 2m/m_tilde')
@click.option('--eps', default = '', help = 'Decreasing values of eps, 1e-1 ... 1e-16 by default')
@click.pass_obj
@__lab
def proof_integral(cfg: RunConfig, ratio: float, eps: str) -> None:
    """
    Partial integrals of r (1-r)^(-a) (log 1/(1-r))^a and the convergence
    verdict

        python -m jets.main proof-integral --ratio 0.5
    """
    eps_grid = list(parse_grid(eps)) if eps else None
    result = proof_integral_convergence(ratio, eps_grid)
    if eps_grid is None:
        eps_grid = PROOF_EPS

    log(f"Found {result.verdict} for ratio {ratio}" +
        (f", tail below {result.tail_bound}" if result.tail_bound is not None else ''))
    __emit(cfg, [ 'eps', 'integral' ], [ [ e, v ] for (e, v) in zip(eps_grid, result.values) ],
           { 'verdict': str(result.verdict), 'tail_bound': result.tail_bound })


@click.command(name = 'jet-norm-integral')
@click.option('--file', '-f', 'path', required = True, help = 'Arrangement JSON')
@click.option('--curve', '-c', required = True, help = 'Curve JSON')
@click.pass_obj
@__lab
def jet_norm_integral(cfg: RunConfig, path: str, curve: str) -> None:
    """
    Normalised circle integrals of the Wronskian differential along a curve

        python -m jets.main --grid 0.5:0.95:10 jet-norm-integral -f arr.json -c curve.json
    """
    w = build_wronskian(JetFactory.load_arrangement(path))
    f = JetFactory.load_curve(curve)
    ratios = jet_norm_circle_integral(w, f, cfg.grid)
    __emit(cfg, [ 'r', 'ratio' ], [ [ r, q ] for (r, q) in zip(cfg.grid, ratios) ])


@click.group()
@click.option('--json', 'as_json', is_flag = True, default = False, help = 'Emit JSON instead of CSV')
@click.option('--out', default = '', help = 'File to save the output to, stdout if empty')
@click.option('--tol', default = 1e-6, help = 'Tolerance of the checks; jet-eval keeps 1e-10 unless given')
@click.option('--grid', default = DEFAULT_GRID, help = 'Radii a:b:steps or a comma separated list')
@click.pass_context
def options(ctx: click.Context, as_json: bool, out: str, tol: float, grid: str) -> None:
    if tol <= 0:
        raise click.BadParameter(f"Tolerance must be positive, got {tol}", param_hint = '--tol')
    try:
        radii = check_grid(list(parse_grid(grid)))
    except DomainError as e:
        raise click.BadParameter(str(e), param_hint = '--grid')

    given = ctx.get_parameter_source('tol') != ParameterSource.DEFAULT
    ctx.obj = RunConfig(as_json, out, tol, radii, given)


options.add_command(bounds)
options.add_command(faa)
options.add_command(jet_eval)
options.add_command(wronskian)
options.add_command(fmt_check)
options.add_command(transcendence)
options.add_command(avoidance)
options.add_command(ldl)
options.add_command(gauss)
options.add_command(area)
options.add_command(yau)
options.add_command(proof_integral)
options.add_command(jet_norm_integral)

if __name__ == "__main__":
    options()
