"""Alexander polynomials through Fox calculus."""
from __future__ import annotations

from collections import defaultdict
from itertools import combinations

import sympy

from ..errors import NotKnotLikeError
from .core import Presentation
from .homology import abelianization_map, homology_h1

T = sympy.Symbol("t")


def fox_derivative(r, gen: int, weights) -> dict:
    """d r / d x_gen pushed to Z[t, t^-1], as {exponent: coefficient}.

    ``gen`` is 1-based; ``weights[i]`` is the image of generator i in Z.
    """
    out = defaultdict(int)
    height = 0
    for x in r:
        step = weights[abs(x) - 1]
        if x > 0:
            if x == gen:
                out[height] += 1
            height += step
        else:
            height -= step
            if -x == gen:
                out[height] -= 1
    return {e: c for e, c in out.items() if c}


def alexander_matrix(P: Presentation, weights=None) -> list:
    weights = abelianization_map(P) if weights is None else weights
    return [[fox_derivative(r, j + 1, weights) for j in range(len(P.gens))]
            for r in P.relators]


def _as_poly(row):
    """Row of Laurent dicts -> sympy polynomials, shifted by a common t-power."""
    low = min((min(d) for d in row if d), default=0)
    return [sum(c * T ** (e - low) for e, c in d.items()) if d else sympy.Integer(0)
            for d in row]


def normalize(poly) -> tuple:
    """Coefficient tuple (constant term first) with no t-power factor and a
    positive leading coefficient; the zero polynomial is ()."""
    poly = sympy.Poly(sympy.expand(poly), T)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if coeffs and coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)


def alexander_polynomial(P: Presentation) -> tuple:
    """gcd of the (n-1)-minors of the Alexander matrix, normalized.

    Raises NotKnotLikeError unless H_1(P) is infinite cyclic.
    """
    h1 = homology_h1(P)
    if h1.free_rank != 1 or h1.torsion:
        raise NotKnotLikeError(f"H_1 is {h1}, not Z")
    n = len(P.gens)
    if n == 1:
        return (1,)
    rows = [_as_poly(row) for row in alexander_matrix(P)]
    size = n - 1
    if len(rows) < size:
        return ()
    gcd = sympy.Integer(0)
    for rsel in combinations(range(len(rows)), size):
        for csel in combinations(range(n), size):
            minor = sympy.Matrix([[rows[i][j] for j in csel] for i in rsel])
            det = sympy.expand(minor.det(method="berkowitz"))
            if det != 0:
                gcd = det if gcd == 0 else sympy.gcd(gcd, det)
        if gcd != 0 and sympy.Poly(gcd, T).degree() == 0 and abs(sympy.Poly(gcd, T).LC()) == 1:
            break
    if gcd == 0:
        return ()
    return normalize(gcd)


def format_polynomial(coeffs) -> str:
    if not coeffs:
        return "0"
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
