#!/usr/bin/python
import csv
import io
import json
import os
import re
from fractions import Fraction

import click
import numpy as np

from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union


class LabError(ValueError):
    """
    Base class for every error raised by the laboratory. Each subclass carries
    the exit code the command line front end terminates with.
    """
    exit_code = 1


class DomainError(LabError):
    """
    An argument lies outside the domain of the operation (bad order, radius
    outside the unit disc, mixed weights, ...)
    """
    exit_code = 2


class PoleError(LabError):
    """
    Evaluation hit a zero of a divisor variable or of a function whose
    logarithmic derivative is taken
    """
    exit_code = 3


class InsufficientOrderError(LabError):
    """
    A truncated series is too short, or evaluated too far from its centre
    """
    exit_code = 2


class ContainmentError(LabError):
    """
    The pullback Q(f) vanishes identically, i.e. the curve lies inside D
    """
    exit_code = 3


class SingularCircleError(LabError):
    """
    The integrand of a circle average has a zero on the circle of radius r
    """
    exit_code = 3


class InvalidArrangementError(LabError):
    """
    A family of hyperplanes is not in general position
    """
    exit_code = 3


class NonConvergenceError(ArithmeticError, LabError):
    """
    A quadrature or a verification sweep failed to reach its tolerance
    """
    exit_code = 4


INFINITY = 'inf'


def parse_fraction(value: Union[str, int, Fraction]) -> Fraction:
    """
    Parse an exact rational given as an integer, a Fraction or a string like
    "1/3", "-2" or "0.25" (decimal strings are read exactly)
    """
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise DomainError(f"Cannot read {value!r} as an exact rational")


def parse_grid(text: str) -> np.ndarray:
    """
    Given a grid string of the form

        a:b:steps

    return `steps` equally spaced points from a to b inclusive, e.g. '0.5:0.9:5'
    gives [0.5, 0.6, 0.7, 0.8, 0.9]. A comma separated list of values is also
    accepted and returned as given.
    """
    try:
        if ':' in text:
            parts = text.split(':')
            if len(parts) != 3:
                raise DomainError(f"Grid {text} must be of the form a:b:steps")
            a, b, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 1:
                raise DomainError(f"Grid {text} needs at least one step")
            return np.linspace(a, b, steps)

        return np.array([ float(x) for x in text.split(',') if x.strip() ])
    except ValueError as e:
        if isinstance(e, DomainError):
            raise
        raise DomainError(f"Cannot read grid {text}: {e}")


def parse_range(text: str) -> List[int]:
    """
    Parse an integer range 'a..b' (inclusive) or a single integer 'a'
    """
    m = re.fullmatch(r'\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?', text)
    if not m:
        raise DomainError(f"Range {text} must be of the form a..b or a")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) is not None else a
    if b < a:
        raise DomainError(f"Range {text} is empty")

    return list(range(a, b + 1))


def check_radius(r: float) -> float:
    """
    Check r lies in (0, 1), the radii of circles inside the unit disc
    """
    if not 0 < r < 1:
        raise DomainError(f"Radius r = {r} must lie in (0, 1)")
    return float(r)


def check_grid(grid: Sequence[float]) -> List[float]:
    """
    A radial grid must be sorted and inside (0, 1)
    """
    grid = [ check_radius(r) for r in grid ]
    if any(a > b for a, b in zip(grid, grid[1:])):
        raise DomainError("Grid values must be sorted")
    return grid


def format_number(x: Any) -> str:
    """
    Format numbers reproducibly: floats with the shortest round-trip decimal,
    integers as decimals and rationals as p/q
    """
    if isinstance(x, (bool, np.bool_)):
        return 'true' if x else 'false'
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (complex, np.complexfloating)):
        return repr(complex(x))
    if x is None:
        return ''
    return str(x)


def save_rows(
        rows: Iterable[Sequence[Any]], header: Sequence[str], path: str = ''
    ) -> str:
    """
    Write rows as CSV with the given header, to the file at `path` if given
    and to stdout otherwise. Returns the CSV text.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator = '\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([ format_number(x) for x in row ])
    text = buf.getvalue()
    __emit(text, path)

    return text


def save_json(obj: Any, path: str = '') -> str:
    """
    Write a JSON document with sorted keys. Exact numbers are serialised as
    strings so that no precision is lost.
    """
    def default(x: Any) -> Any:
        return format_number(x)

    text = json.dumps(__stringify(obj), sort_keys = True, indent = 2, default = default) + '\n'
    __emit(text, path)

    return text


def __stringify(obj: Any) -> Any:
    if isinstance(obj, dict):
        return { str(k): __stringify(v) for k, v in obj.items() }
    if isinstance(obj, (list, tuple)):
        return [ __stringify(v) for v in obj ]
    if isinstance(obj, (str, bool)) or obj is None:
        return obj
    return format_number(obj)


def __emit(text: str, path: str) -> None:
    if path:
        folder = os.path.dirname(path)
        if folder and not os.path.isdir(folder):
            os.makedirs(folder)
        with open(path, 'w') as f:
            f.write(text)
    else:
        click.echo(text, nl = False)


def load_json(fn: str) -> Dict[str, Any]:
    """
    Load a JSON input file (curves, hypersurfaces, arrangements, surfaces)
    """
    if not os.path.isfile(fn):
        raise DomainError(f"No file at {fn}")
    with open(fn, 'r') as f:
        return json.load(f)


def log(msg: str) -> None:
    """
    Progress messages go to stderr so that stdout only carries results
    """
    click.echo(msg, err = True)
