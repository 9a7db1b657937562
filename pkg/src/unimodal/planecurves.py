"""Exact plane-curve computations over the rationals.

Homogeneous forms in three variables with rational coefficients, affine germs
at rational points, multiplicity trees via chart-by-chart blow-up, A_n
detection through exact Milnor numbers, [3,3]-point recognition with the
degree-one elliptic profile, restriction patterns along lines, linear systems
with imposed conditions, and infinitesimal stabilizers of marked points and
lines in the plane.

Everything that cannot be decided over the rationals is reported as grouped
degree data or raised as :class:`UndecidableOverQ`; nothing is approximated.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .rationals import frac, nullspace, rank, rank_by_minors, rat_str, solve_in_span

_T = sympy.Symbol("t")


class UndecidableOverQ(ValueError):
    """A branch datum needs an irrational direction the engine will not chase."""


# ---------------------------------------------------------------------------
# Homogeneous forms and marked points
# ---------------------------------------------------------------------------

Exponent = tuple[int, int, int]


@dataclass(frozen=True)
class HomogeneousForm:
    degree: int
    terms: tuple[tuple[Exponent, Fraction], ...]  # sorted, nonzero coefficients

    def __post_init__(self) -> None:
        for (i, j, k), coeff in self.terms:
            if i + j + k != self.degree:
                raise ValueError(f"monomial {(i, j, k)} does not have degree {self.degree}")
            if coeff == 0:
                raise ValueError("zero coefficients must be dropped")

    @staticmethod
    def from_dict(degree: int, coeffs: dict[Exponent, int | str | Fraction]) -> "HomogeneousForm":
        cleaned = {e: frac(c) for e, c in coeffs.items() if frac(c) != 0}
        return HomogeneousForm(degree, tuple(sorted(cleaned.items())))

    def coeff(self, exponent: Exponent) -> Fraction:
        for e, c in self.terms:
            if e == exponent:
                return c
        return frac(0)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if self.degree != other.degree and not (self.is_zero or other.is_zero):
            raise ValueError("cannot add forms of different degrees")
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, frac(0)) + c
        return HomogeneousForm.from_dict(max(self.degree, other.degree), out)

    def __sub__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        return self + (-1) * other

    def __rmul__(self, scalar: int | Fraction) -> "HomogeneousForm":
        s = frac(scalar)
        return HomogeneousForm.from_dict(self.degree, {e: s * c for e, c in self.terms})

    def __mul__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        out: dict[Exponent, Fraction] = {}
        for (a, b, c), x in self.terms:
            for (d, e, f), y in other.terms:
                key = (a + d, b + e, c + f)
                out[key] = out.get(key, frac(0)) + x * y
        return HomogeneousForm.from_dict(self.degree + other.degree, out)

    def evaluate(self, point: "MarkedPoint") -> Fraction:
        x, y, z = point.coords
        return sum(c * x**i * y**j * z**k for (i, j, k), c in self.terms)

    def partial(self, var: int) -> "HomogeneousForm":
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms:
            if e[var] == 0:
                continue
            new = list(e)
            new[var] -= 1
            out[tuple(new)] = out.get(tuple(new), frac(0)) + c * e[var]
        return HomogeneousForm.from_dict(max(self.degree - 1, 0), out)

    def substitute_linear(self, matrix: list[list[Fraction]]) -> "HomogeneousForm":
        """The form composed with x_i -> sum_j m[i][j] x_j."""
        images = [
            HomogeneousForm.from_dict(
                1, {(1, 0, 0): row[0], (0, 1, 0): row[1], (0, 0, 1): row[2]}
            )
            for row in matrix
        ]
        out = HomogeneousForm.from_dict(0, {(0, 0, 0): 1})
        total = HomogeneousForm.from_dict(self.degree, {})
        for (i, j, k), c in self.terms:
            term = HomogeneousForm.from_dict(0, {(0, 0, 0): c})
            for power, image in ((i, images[0]), (j, images[1]), (k, images[2])):
                for _ in range(power):
                    term = term * image
            total = total + term
        return total


def monomial(i: int, j: int, k: int, coeff: int | str | Fraction = 1) -> HomogeneousForm:
    return HomogeneousForm.from_dict(i + j + k, {(i, j, k): frac(coeff)})


def linear_form(a: int | Fraction, b: int | Fraction, c: int | Fraction) -> HomogeneousForm:
    return HomogeneousForm.from_dict(1, {(1, 0, 0): frac(a), (0, 1, 0): frac(b), (0, 0, 1): frac(c)})


@dataclass(frozen=True)
class MarkedPoint:
    coords: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        if all(c == 0 for c in self.coords):
            raise ValueError("a projective point needs a nonzero coordinate")
        pivot = next(c for c in self.coords if c != 0)
        if pivot != 1:
            raise ValueError("points must be normalized: first nonzero coordinate 1")

    @staticmethod
    def of(x: int | str | Fraction, y: int | str | Fraction, z: int | str | Fraction) -> "MarkedPoint":
        coords = (frac(x), frac(y), frac(z))
        pivot = next((c for c in coords if c != 0), None)
        if pivot is None:
            raise ValueError("a projective point needs a nonzero coordinate")
        return MarkedPoint(tuple(c / pivot for c in coords))

    def __str__(self) -> str:
        return "[" + ":".join(rat_str(c) for c in self.coords) + "]"


def form_to_json(form: HomogeneousForm) -> dict:
    return {
        "degree": form.degree,
        "coeffs": {f"{i},{j},{k}": rat_str(c) for (i, j, k), c in form.terms},
    }


def form_from_json(data: dict) -> HomogeneousForm:
    coeffs = {}
    for key, value in data.get("coeffs", {}).items():
        i, j, k = (int(part) for part in key.split(","))
        coeffs[(i, j, k)] = frac(value)
    return HomogeneousForm.from_dict(int(data["degree"]), coeffs)


# ---------------------------------------------------------------------------
# Affine germs
# ---------------------------------------------------------------------------

Germ = dict[tuple[int, int], Fraction]


def germ(terms: dict[tuple[int, int], int | str | Fraction]) -> Germ:
    return {e: frac(c) for e, c in terms.items() if frac(c) != 0}


def germ_of(form: HomogeneousForm, point: MarkedPoint) -> Germ:
    """Affine germ of the form at a rational point, in the chart of its pivot."""
    pivot = next(i for i, c in enumerate(point.coords) if c != 0)
    others = [i for i in range(3) if i != pivot]
    out: Germ = {}
    for e, c in form.terms:
        # substitute x_pivot = 1, x_other = p_other + local variable
        contributions = {(0, 0): c}
        for slot, var in enumerate(others):
            power = e[var]
            base = point.coords[var]
            expanded: Germ = {}
            for (a, b), coeff in contributions.items():
                for m in range(power + 1):
                    binom = Fraction(math.comb(power, m))
                    key = (a + m, b) if slot == 0 else (a, b + m)
                    expanded[key] = expanded.get(key, frac(0)) + coeff * binom * base ** (power - m)
            contributions = expanded
        for key, coeff in contributions.items():
            out[key] = out.get(key, frac(0)) + coeff
    return {e: c for e, c in out.items() if c != 0}


def germ_multiplicity(g: Germ) -> int:
    if not g:
        raise ValueError("zero germ has no multiplicity")
    return min(a + b for a, b in g)


def germ_evaluate_origin(g: Germ) -> Fraction:
    return g.get((0, 0), frac(0))


def _germ_partial(g: Germ, var: int) -> Germ:
    out: Germ = {}
    for (a, b), c in g.items():
        e = (a, b)[var]
        if e == 0:
            continue
        key = (a - 1, b) if var == 0 else (a, b - 1)
        out[key] = out.get(key, frac(0)) + c * e
    return out


def germ_mul(f: Germ, g: Germ) -> Germ:
    out: Germ = {}
    for (a, b), x in f.items():
        for (c, d), y in g.items():
            key = (a + c, b + d)
            out[key] = out.get(key, frac(0)) + x * y
    return {e: c for e, c in out.items() if c != 0}


def _tangent_cone(g: Germ) -> Germ:
    m = germ_multiplicity(g)
    return {e: c for e, c in g.items() if e[0] + e[1] == m}


def _to_sympy_univariate(coeffs: dict[int, Fraction]) -> sympy.Poly:
    expr = sum(sympy.Rational(c.numerator, c.denominator) * _T**a for a, c in coeffs.items())
    return sympy.Poly(expr, _T, domain="QQ")


@dataclass(frozen=True)
class Direction:
    """One tangent direction of a germ: either rational or a grouped conjugate packet."""

    root: Fraction | None  # None encodes the direction of the second chart axis
    multiplicity: int  # multiplicity as a root of the tangent cone
    degree: int = 1  # 1 for rational; the factor degree for grouped packets


def _directions(g: Germ) -> list[Direction]:
    m = germ_multiplicity(g)
    cone = _tangent_cone(g)
    poly_coeffs = {a: c for (a, b), c in cone.items()}
    poly = _to_sympy_univariate(poly_coeffs)
    out: list[Direction] = []
    infinity_mult = m - poly.degree()
    if infinity_mult > 0:
        out.append(Direction(None, infinity_mult))
    _, factors = poly.factor_list()
    for factor, mult in sorted(factors, key=lambda fm: str(fm[0])):
        if factor.degree() == 1:
            a1, a0 = factor.all_coeffs()
            root = Fraction(-sympy.Rational(a0, a1))
            out.append(Direction(root, mult))
        else:
            out.append(Direction(None, mult, degree=factor.degree()))
    return out


def _blow_up_at_direction(g: Germ, direction: Direction) -> Germ:
    """Strict-transform germ at the point of the exceptional line the direction marks."""
    m = germ_multiplicity(g)
    out: Germ = {}
    if direction.root is None and direction.degree == 1:
        # second chart: (u, v) -> (u, u v'); divide by u^m
        for (a, b), c in g.items():
            key = (a + b - m, b)
            out[key] = out.get(key, frac(0)) + c
        return {e: c for e, c in out.items() if c != 0}
    if direction.degree != 1:
        raise UndecidableOverQ("cannot follow an irrational tangent direction")
    # first chart: (u, v) -> (v (root + u'), v); divide by v^m
    root = direction.root
    for (a, b), c in g.items():
        for i in range(a + 1):
            binom = Fraction(math.comb(a, i))
            coeff = c * binom * root ** (a - i)
            key = (i, a + b - m)
            out[key] = out.get(key, frac(0)) + coeff
    return {e: c for e, c in out.items() if c != 0}


@dataclass(frozen=True)
class GermNode:
    """A node of a multiplicity tree: rational children plus grouped packets."""

    multiplicity: int
    children: tuple["GermNode", ...] = ()
    grouped: tuple[tuple[int, int], ...] = ()  # (factor degree, root multiplicity)

    def key(self):
        return (self.multiplicity, self.grouped, tuple(c.key() for c in self.children))

    def total_delta(self) -> Fraction:
        """Sum of m(m-1)/2 over the tree; demands grouped packets be simple."""
        for degree, mult in self.grouped:
            if mult > 1:
                raise UndecidableOverQ(
                    "delta invariant hidden behind a repeated irrational direction"
                )
        own = Fraction(self.multiplicity * (self.multiplicity - 1), 2)
        return own + sum(c.total_delta() for c in self.children)


def mult_sequence(form_or_germ: HomogeneousForm | Germ, point: MarkedPoint | None = None, depth: int = 8) -> GermNode:
    """Multiplicity tree at a point: blow up along rational directions, depth-bounded.

    Children are canonically sorted; irrational directions appear as grouped
    (degree, multiplicity) packets and are not followed.  Multiplicity 0 means
    the point does not lie on the curve.
    """
    if depth <= 0:
        raise ValueError("depth must be positive")
    g = _coerce_germ(form_or_germ, point)
    if not g:
        raise ValueError("zero form")
    if germ_evaluate_origin(g) != 0:
        return GermNode(0)
    return _mult_tree(g, depth)


def _coerce_germ(form_or_germ: HomogeneousForm | Germ, point: MarkedPoint | None) -> Germ:
    if isinstance(form_or_germ, HomogeneousForm):
        if point is None:
            raise ValueError("a homogeneous form needs a point")
        return germ_of(form_or_germ, point)
    if point is not None:
        raise ValueError("a germ is already local; no point expected")
    return dict(form_or_germ)


def _mult_tree(g: Germ, depth: int) -> GermNode:
    m = germ_multiplicity(g)
    if m <= 1 or depth == 1:
        return GermNode(m)
    children = []
    grouped = []
    for direction in _directions(g):
        if direction.degree != 1:
            grouped.append((direction.degree, direction.multiplicity))
            continue
        child_germ = _blow_up_at_direction(g, direction)
        child = _mult_tree(child_germ, depth - 1)
        if child.multiplicity > 0:
            children.append(child)
    children.sort(key=GermNode.key)
    grouped.sort()
    return GermNode(m, tuple(children), tuple(grouped))


# ---------------------------------------------------------------------------
# Local intersection numbers
# ---------------------------------------------------------------------------


def local_intersection(f: Germ, g: Germ) -> int:
    """Intersection multiplicity of two germs at the origin.

    Uses the blow-up recursion: m(f) m(g) plus the contributions at common
    infinitely-near points.  Common irrational directions raise
    :class:`UndecidableOverQ`; a common component is an error.
    """
    if not f or not g:
        raise ValueError("zero germ")
    if germ_evaluate_origin(f) != 0 or germ_evaluate_origin(g) != 0:
        return 0
    common = _common_factor(f, g)
    if common is not None and germ_evaluate_origin(common) == 0:
        raise ValueError("infinite intersection: the germs share a component through the point")
    mf, mg = germ_multiplicity(f), germ_multiplicity(g)
    total = mf * mg
    dirs_f = {d.root: d for d in _directions(f) if d.degree == 1}
    dirs_g = {d.root: d for d in _directions(g) if d.degree == 1}
    grouped_f = [(d.degree, d.multiplicity) for d in _directions(f) if d.degree != 1]
    grouped_g = [(d.degree, d.multiplicity) for d in _directions(g) if d.degree != 1]
    if grouped_f and grouped_g:
        raise UndecidableOverQ("possible common irrational tangent direction")
    for root, df in dirs_f.items():
        if root not in dirs_g:
            continue
        child_f = _blow_up_at_direction(f, df)
        child_g = _blow_up_at_direction(g, dirs_g[root])
        total += local_intersection(child_f, child_g)
    return total


def _common_factor(f: Germ, g: Germ) -> Germ | None:
    u, v = sympy.symbols("u v")

    def to_expr(h: Germ):
        return sum(sympy.Rational(c.numerator, c.denominator) * u**a * v**b for (a, b), c in h.items())

    gcd = sympy.gcd(sympy.Poly(to_expr(f), u, v), sympy.Poly(to_expr(g), u, v))
    if gcd.total_degree() == 0:
        return None
    out: Germ = {}
    for monom, coeff in gcd.terms():
        out[(int(monom[0]), int(monom[1]))] = Fraction(sympy.Rational(coeff))
    return out


# ---------------------------------------------------------------------------
# A_n detection via exact Milnor numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnVerdict:
    kind: str  # "smooth" | "A" | "other" | "inconclusive"
    n: int | None
    multiplicity: int
    milnor: int | None = None
    reason: str | None = None

    def is_a(self, n: int) -> bool:
        return self.kind == "A" and self.n == n


def an_type_at(
    form_or_germ: HomogeneousForm | Germ,
    point: MarkedPoint | None = None,
    candidate: int = 6,
) -> AnVerdict:
    """Classify a point as smooth, A_n, or other.

    A_n means multiplicity two with Milnor number n, the Milnor number being
    the local-algebra dimension of the two partials computed by exact linear
    algebra with a degree bound that starts at 2*candidate + 2 and doubles at
    most three times; failure to stabilize is reported, never silenced.
    """
    g = _coerce_germ(form_or_germ, point)
    if not g:
        raise ValueError("zero form")
    if germ_evaluate_origin(g) != 0:
        return AnVerdict("smooth", None, 0)
    m = germ_multiplicity(g)
    if m == 1:
        return AnVerdict("smooth", None, 1)
    if m >= 3:
        return AnVerdict("other", None, m, reason="multiplicity at least three")

    gu, gv = _germ_partial(g, 0), _germ_partial(g, 1)
    common = _common_factor(gu, gv) if gu and gv else (gu or gv or None)
    if not gu or not gv or (common is not None and germ_evaluate_origin(common) == 0):
        return AnVerdict("other", None, m, reason="non-isolated singular point")

    quad = {e: c for e, c in g.items() if e[0] + e[1] == 2}
    a = quad.get((2, 0), frac(0))
    b = quad.get((1, 1), frac(0))
    c = quad.get((0, 2), frac(0))
    disc = b * b - 4 * a * c
    corank = 0 if disc != 0 else 1

    bound = 2 * candidate + 2
    dim = _local_algebra_dim(gu, gv, bound)
    for _ in range(3):
        double = _local_algebra_dim(gu, gv, 2 * bound)
        if double == dim:
            mu = dim
            if corank == 0 and mu != 1:
                return AnVerdict("inconclusive", None, m, mu, "corank and Milnor number disagree")
            return AnVerdict("A", mu, m, mu)
        bound, dim = 2 * bound, double
    return AnVerdict("inconclusive", None, m, None, "Milnor number failed to stabilize")


def _local_algebra_dim(gu: Germ, gv: Germ, bound: int) -> int:
    """Dimension of O/(J + m^bound) where J is generated by the two partials."""
    monomials = [(a, b) for a in range(bound) for b in range(bound - a)]
    index = {mono: i for i, mono in enumerate(monomials)}
    rows: list[dict[int, Fraction]] = []
    for generator in (gu, gv):
        for a, b in monomials:
            row: dict[int, Fraction] = {}
            for (c, d), coeff in generator.items():
                key = (a + c, b + d)
                if key in index:
                    col = index[key]
                    row[col] = row.get(col, frac(0)) + coeff
            if row:
                rows.append(row)
    return len(monomials) - _sparse_rank(rows)


def _sparse_rank(rows: list[dict[int, Fraction]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                inv = 1 / row[col]
                pivots[col] = {k: v * inv for k, v in row.items()}
                break
            factor = row[col]
            pivot_row = pivots[col]
            for k, v in pivot_row.items():
                new = row.get(k, frac(0)) - factor * v
                if new == 0:
                    row.pop(k, None)
                else:
                    row[k] = new
    return len(pivots)


# ---------------------------------------------------------------------------
# [3,3]-points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThreeThreeVerdict:
    is_33: bool
    profile: int | None  # 6 or 7 when the resolution matches the degree-one catalog
    first_neighborhood: tuple[int, ...]  # multiplicities of the rational points there
    local_intersection: int | None = None
    residual: AnVerdict | None = None


def detect_33_point(
    form_or_germ: HomogeneousForm | Germ,
    point: MarkedPoint | None = None,
    decomposition: tuple[Germ, Germ] | None = None,
) -> ThreeThreeVerdict:
    """Detect a triple point with one infinitely-near triple point.

    The profile says which degree-one elliptic double-cover point the germ
    produces: 6 when the second neighborhood has three distinct directions, 7
    when it has a double direction that immediately smooths; anything deeper
    is reported as no profile (outside the supported catalog).

    When a decomposition (residual, smooth) of the germ is supplied, the
    classical consequences are verified as well: the two pieces meet with
    local intersection number four and the residual piece carries the A-type
    the profile dictates (A_3 for 6, A_4 for 7).
    """
    g = _coerce_germ(form_or_germ, point)
    if not g:
        raise ValueError("zero form")
    if germ_evaluate_origin(g) != 0 or germ_multiplicity(g) != 3:
        return ThreeThreeVerdict(False, None, ())

    children: list[tuple[Direction, Germ]] = []
    for direction in _directions(g):
        if direction.degree != 1:
            if direction.multiplicity >= 2:
                raise UndecidableOverQ("repeated irrational tangent direction at a triple point")
            continue
        children.append((direction, _blow_up_at_direction(g, direction)))
    mults = tuple(sorted(germ_multiplicity(child) for _, child in children if child))
    triple_children = [child for _, child in children if child and germ_multiplicity(child) == 3]
    if len(triple_children) != 1:
        return ThreeThreeVerdict(False, None, mults)

    profile = _t_profile(triple_children[0])
    if decomposition is None:
        return ThreeThreeVerdict(True, profile, mults)

    residual, smooth = decomposition
    if germ_mul(residual, smooth) != g:
        raise ValueError("decomposition does not multiply back to the germ")
    if germ_multiplicity(smooth) != 1:
        raise ValueError("second decomposition factor must be smooth at the point")
    meeting = local_intersection(residual, smooth)
    residual_type = an_type_at(residual, candidate=max(4, (profile or 7) - 3))
    return ThreeThreeVerdict(True, profile, mults, meeting, residual_type)


def _t_profile(g: Germ) -> int | None:
    """Match the infinitely-near triple germ against the two supported patterns."""
    directions = _directions(g)
    simple = all(d.multiplicity == 1 for d in directions)
    if simple:
        return 6
    rational = [d for d in directions if d.degree == 1]
    doubles = [d for d in rational if d.multiplicity == 2]
    if len(doubles) == 1 and sum(d.multiplicity * d.degree for d in directions) == 3:
        child = _blow_up_at_direction(g, doubles[0])
        if child and germ_multiplicity(child) == 1:
            return 7
    if any(d.degree != 1 and d.multiplicity >= 2 for d in directions):
        raise UndecidableOverQ("repeated irrational direction in the second neighborhood")
    return None


# ---------------------------------------------------------------------------
# Restriction to a line
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RestrictionPattern:
    contained: bool
    orders: tuple[int, ...]
    residual_degree: int
    residual_squarefree: tuple[tuple[int, int], ...]  # (multiplicity, degree) packets

    @property
    def total(self) -> int:
        return sum(self.orders) + self.residual_degree


def restrict_to_line(
    form: HomogeneousForm,
    line: HomogeneousForm,
    marked_points: tuple[MarkedPoint, ...] = (),
) -> RestrictionPattern:
    """Vanishing orders of the restriction at marked points plus residual data.

    The residual factorization is reported through squarefree degree packets
    only; containment of the line in the curve is a result, not an error.
    """
    if line.degree != 1:
        raise ValueError("restriction needs a line")
    for p in marked_points:
        if line.evaluate(p) != 0:
            raise ValueError(f"marked point {p} does not lie on the line")
    base = _two_points_on_line(line)
    binary = _restrict_binary(form, base)
    if all(c == 0 for c in binary):
        return RestrictionPattern(True, (), 0, ())
    orders = []
    for p in marked_points:
        s, t = _line_coordinates(base, p)
        order = 0
        current = list(binary)
        while _binary_root_order(current, s, t):
            current = _binary_divide(current, s, t)
            order += 1
        orders.append(order)
    residual = list(binary)
    for p, order in zip(marked_points, orders):
        s, t = _line_coordinates(base, p)
        for _ in range(order):
            residual = _binary_divide(residual, s, t)
    degree = len(residual) - 1
    return RestrictionPattern(False, tuple(orders), degree, _squarefree_packets(residual))


def _two_points_on_line(line: HomogeneousForm) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    coeffs = [line.coeff((1, 0, 0)), line.coeff((0, 1, 0)), line.coeff((0, 0, 1))]
    kernel = nullspace([coeffs], 3)
    if len(kernel) != 2:
        raise ValueError("degenerate line")
    return tuple(kernel[0]), tuple(kernel[1])


def _restrict_binary(form: HomogeneousForm, base) -> list[Fraction]:
    """Coefficients of F(s p0 + t p1) as a binary form, index = power of s."""
    p0, p1 = base
    d = form.degree
    out = [frac(0)] * (d + 1)
    for (i, j, k), c in form.terms:
        poly = [frac(1)]  # binary polynomial in s, index = s-power
        for var, power in ((0, i), (1, j), (2, k)):
            for _ in range(power):
                a, b = p0[var], p1[var]  # a s + b t
                new = [frac(0)] * (len(poly) + 1)
                for idx, coeff in enumerate(poly):
                    new[idx + 1] += coeff * a
                    new[idx] += coeff * b
                poly = new
        for idx, coeff in enumerate(poly):
            out[idx] += c * coeff
    return out


def _line_coordinates(base, point: MarkedPoint) -> tuple[Fraction, Fraction]:
    p0, p1 = base
    columns = [list(p0), list(p1)]
    coords = solve_in_span(columns, list(point.coords))
    return coords[0], coords[1]


def _binary_root_order(coeffs: list[Fraction], s: Fraction, t: Fraction) -> bool:
    value = sum(c * s**idx * t ** (len(coeffs) - 1 - idx) for idx, c in enumerate(coeffs))
    return value == 0 and any(c != 0 for c in coeffs)


def _binary_divide(coeffs: list[Fraction], s: Fraction, t: Fraction) -> list[Fraction]:
    """Divide the binary form by a linear form vanishing at (s0 : t0), up to scale."""
    d = len(coeffs) - 1
    if t != 0:
        # root (s0 : t0) with t0 != 0: synthetic division in u = s/t
        root = s / t
        out = [frac(0)] * d
        carry = frac(0)
        for idx in range(d, 0, -1):
            carry = coeffs[idx] + carry * root
            out[idx - 1] = carry
        return out
    # root (1 : 0): divide by t, dropping the pure s-power coefficient
    if coeffs[-1] != 0:
        raise ValueError("form does not vanish at the point")
    return coeffs[:-1]


def _squarefree_packets(coeffs: list[Fraction]) -> tuple[tuple[int, int], ...]:
    degree = len(coeffs) - 1
    if degree <= 0 or all(c == 0 for c in coeffs):
        return ()
    poly = _to_sympy_univariate({i: c for i, c in enumerate(coeffs)})
    packets: dict[int, int] = {}
    infinity = degree - poly.degree()
    if infinity > 0:
        packets[infinity] = packets.get(infinity, 0) + 1
    for factor, mult in poly.sqf_list()[1]:
        packets[mult] = packets.get(mult, 0) + factor.degree()
    return tuple(sorted(packets.items()))


# ---------------------------------------------------------------------------
# Linear systems with imposed conditions
# ---------------------------------------------------------------------------


def monomial_basis(degree: int) -> list[Exponent]:
    return [
        (i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)
    ]


@dataclass(frozen=True)
class Condition:
    label: str
    row: tuple[Fraction, ...]


@dataclass(frozen=True)
class ConditionSystem:
    degree: int
    conditions: tuple[Condition, ...] = ()

    def __post_init__(self) -> None:
        expected = len(monomial_basis(self.degree))
        for condition in self.conditions:
            if len(condition.row) != expected:
                raise ValueError(f"condition {condition.label!r} has the wrong length")

    def extend(self, more: "ConditionSystem") -> "ConditionSystem":
        if more.degree != self.degree:
            raise ValueError("condition systems for different degrees")
        return ConditionSystem(self.degree, self.conditions + more.conditions)

    def rank(self) -> int:
        return rank([list(c.row) for c in self.conditions])


def multiplicity_conditions(degree: int, point: MarkedPoint, at_least: int) -> ConditionSystem:
    """Partial-derivative functionals of order below ``at_least`` at the point.

    Only derivatives in the two chart variables appear: m(m+1)/2 functionals
    for multiplicity at least m, the Euler relation making the rest redundant.
    """
    pivot = next(i for i, c in enumerate(point.coords) if c != 0)
    free = [i for i in range(3) if i != pivot]
    basis = monomial_basis(degree)
    conditions = []
    for order in range(at_least):
        for first in range(order + 1):
            alpha = [0, 0, 0]
            alpha[free[0]] = first
            alpha[free[1]] = order - first
            alpha = tuple(alpha)
            row = [_derivative_at(mono, alpha, point) for mono in basis]
            conditions.append(Condition(f"mult>={at_least}@{point}:d{alpha}", tuple(row)))
    return ConditionSystem(degree, tuple(conditions))


def _derivative_at(mono: Exponent, alpha: Exponent, point: MarkedPoint) -> Fraction:
    value = frac(1)
    for e, a, coordinate in zip(mono, alpha, point.coords):
        if a > e:
            return frac(0)
        for step in range(a):
            value *= e - step
        value *= coordinate ** (e - a)
    return value


def monomial_exclusions(degree: int, excluded: list[Exponent]) -> ConditionSystem:
    basis = monomial_basis(degree)
    conditions = []
    for exponent in excluded:
        row = [frac(1 if mono == exponent else 0) for mono in basis]
        conditions.append(Condition(f"no-{exponent}", tuple(row)))
    return ConditionSystem(degree, tuple(conditions))


def line_order_conditions(
    degree: int, line: HomogeneousForm, point: MarkedPoint, at_least: int
) -> ConditionSystem:
    """Vanishing of the restriction to the line at the point to high order."""
    base = _two_points_on_line(line)
    if line.evaluate(point) != 0:
        raise ValueError("point must lie on the line")
    s0, t0 = _line_coordinates(base, point)
    basis = monomial_basis(degree)
    rows = [[] for _ in range(at_least)]
    for mono in basis:
        form = HomogeneousForm.from_dict(degree, {mono: 1})
        binary = _restrict_binary(form, base)
        for order in range(at_least):
            binary_shifted = list(binary)
            for _ in range(order):
                binary_shifted = _binary_divide_or_zero(binary_shifted, s0, t0)
            rows[order].append(_binary_value(binary_shifted, s0, t0))
    conditions = tuple(
        Condition(f"line-order>={at_least}@{point}:{order}", tuple(row))
        for order, row in enumerate(rows)
    )
    return ConditionSystem(degree, conditions)


def _binary_value(coeffs: list[Fraction], s: Fraction, t: Fraction) -> Fraction:
    return sum(c * s**idx * t ** (len(coeffs) - 1 - idx) for idx, c in enumerate(coeffs))


def _binary_divide_or_zero(coeffs: list[Fraction], s: Fraction, t: Fraction) -> list[Fraction]:
    """Division transport used for order functionals; linear in the input."""
    d = len(coeffs) - 1
    if t != 0:
        root = s / t
        out = [frac(0)] * d
        carry = frac(0)
        for idx in range(d, 0, -1):
            carry = coeffs[idx] + carry * root
            out[idx - 1] = carry
        return out
    return coeffs[:-1]


def infinitely_near_conditions(
    degree: int,
    point: MarkedPoint,
    direction: Fraction | None,
    first: int,
    second: int,
) -> ConditionSystem:
    """Multiplicity ``first`` at the point and ``second`` at an infinitely-near point.

    The direction is a rational tangent direction in the chart of the point's
    pivot coordinate (None for the second chart axis).  The returned
    functionals include the multiplicity conditions at the point itself; the
    strict-transform conditions are linear on the whole coefficient space and
    carry their usual meaning on the locus where the first batch vanishes.
    """
    system = multiplicity_conditions(degree, point, first)
    basis = monomial_basis(degree)
    rows: dict[tuple[int, int], list[Fraction]] = {}
    for mono_index, mono in enumerate(basis):
        form = HomogeneousForm.from_dict(degree, {mono: 1})
        g = germ_of(form, point)
        transformed: Germ = {}
        for (a, b), c in g.items():
            if direction is None:
                # second chart: (u, v) -> (u, u v'); key = (v'-power, u-power)
                key = (b, a + b)
                transformed[key] = transformed.get(key, frac(0)) + c
            else:
                for i in range(a + 1):
                    binom = Fraction(math.comb(a, i))
                    key = (i, a + b)
                    transformed[key] = transformed.get(key, frac(0)) + c * binom * direction ** (a - i)
        # the strict transform divides out ``first`` powers of the exceptional
        # variable; demand every coefficient of total degree below ``second``.
        for (i, j), value in transformed.items():
            if j - first < 0 or i + j - first >= second:
                continue
            row = rows.setdefault((i, j), [frac(0)] * len(basis))
            row[mono_index] += value
    extra = tuple(
        Condition(f"infinitely-near>={second}@{point}:{key}", tuple(row))
        for key, row in sorted(rows.items())
    )
    return system.extend(ConditionSystem(degree, extra))


def linear_system_dim(system: ConditionSystem) -> int:
    """Projective dimension of the linear system cut out by the conditions."""
    total = len(monomial_basis(system.degree))
    return total - system.rank() - 1


def orbit_dim_count(
    conditions: ConditionSystem,
    continuous_params: int = 0,
    points: tuple[MarkedPoint, ...] = (),
    lines: tuple["HomogeneousForm", ...] = (),
) -> int:
    """Dimension of the projectivity orbit of a normalized curve family.

    Affine parameter dimension (free coefficients after the conditions, plus
    declared continuous parameters) minus the stabilizer dimension of the
    markings.  An empty family is an error, not a count.
    """
    if continuous_params < 0:
        raise ValueError("continuous parameter count cannot be negative")
    if linear_system_dim(conditions) < 0 and continuous_params == 0:
        raise ValueError("empty family")
    free = len(monomial_basis(conditions.degree)) - conditions.rank()
    return free + continuous_params - stabilizer_dim(points, lines)


# ---------------------------------------------------------------------------
# Stabilizers in the plane
# ---------------------------------------------------------------------------

_SL3_BASIS: list[list[list[int]]] = [
    [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 1, 0], [0, 0, -1]],
    [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [1, 0, 0], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [1, 0, 0]],
    [[0, 0, 0], [0, 0, 0], [0, 1, 0]],
]


def _stabilizer_rows(
    points: tuple[MarkedPoint, ...],
    lines: tuple[HomogeneousForm, ...],
) -> list[list[Fraction]]:
    rows: list[list[Fraction]] = []
    for p in points:
        coords = list(p.coords)
        for u in nullspace([coords], 3):
            row = []
            for basis_matrix in _SL3_BASIS:
                image = [sum(frac(basis_matrix[i][j]) * coords[j] for j in range(3)) for i in range(3)]
                row.append(sum(u[i] * image[i] for i in range(3)))
            rows.append(row)
    for line in lines:
        ell = [line.coeff((1, 0, 0)), line.coeff((0, 1, 0)), line.coeff((0, 0, 1))]
        for v in nullspace([ell], 3):
            row = []
            for basis_matrix in _SL3_BASIS:
                image = [sum(ell[i] * frac(basis_matrix[i][j]) for i in range(3)) for j in range(3)]
                row.append(sum(image[j] * v[j] for j in range(3)))
            rows.append(row)
    return rows


def stabilizer_dim(
    points: tuple[MarkedPoint, ...] = (),
    lines: tuple[HomogeneousForm, ...] = (),
) -> int:
    """Dimension of the projectivity stabilizer of marked points and lines.

    Computed on the eight-dimensional traceless Lie algebra: each point
    contributes the two functionals forcing its image into its own direction,
    each line the dual pair; the answer is 8 minus the rank.
    """
    return 8 - rank(_stabilizer_rows(points, lines))


def stabilizer_dim_by_minors(
    points: tuple[MarkedPoint, ...] = (),
    lines: tuple[HomogeneousForm, ...] = (),
) -> int:
    """Brute-force oracle for :func:`stabilizer_dim` via minor enumeration."""
    return 8 - rank_by_minors(_stabilizer_rows(points, lines))


# ---------------------------------------------------------------------------
# Rational singular points of a plane curve
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothnessReport:
    """Rational singular points plus degree bookkeeping for the rest.

    The scan eliminates the partials by resultants and inspects rational
    roots; it certifies only "no rational singular points" plus the degree
    accounting of the eliminant, never smoothness over the algebraic closure.
    """

    singular_points: tuple[MarkedPoint, ...]
    eliminant_degree: int
    unresolved_degree: int  # degree of the eliminant part without rational roots

    @property
    def note(self) -> str:
        return (
            f"no rational singular points beyond those listed; eliminant degree "
            f"{self.eliminant_degree}, non-rational residual degree {self.unresolved_degree}"
        )


def rational_singular_points(form: HomogeneousForm) -> SmoothnessReport:
    """Find all rational singular points by resultant elimination.

    Any common zero of the three partials forces the pairwise x-resultants,
    hence their gcd, to vanish at the (y : z) direction; rational directions
    are then lifted back through a univariate gcd in x.  The direction with
    y = z = 0 is the coordinate point, checked directly.
    """
    x, y, z = sympy.symbols("x y z")

    def to_expr(f: HomogeneousForm):
        return sum(
            sympy.Rational(c.numerator, c.denominator) * x**i * y**j * z**k
            for (i, j, k), c in f.terms
        )

    partials = [to_expr(form.partial(v)) for v in range(3)]
    nonzero = [p for p in partials if p != 0]
    if not nonzero:
        raise ValueError("zero form")
    # an x-free partial already constrains (y : z); pairs varying in x eliminate it
    eliminants = [sympy.expand(p) for p in nonzero if sympy.degree(p, x) == 0]
    varying = [p for p in nonzero if sympy.degree(p, x) >= 1]
    for f, g in itertools.combinations(varying, 2):
        eliminants.append(sympy.expand(sympy.resultant(f, g, x)))
    if not eliminants:
        raise ValueError("cannot eliminate: a single partial varies in x")
    eliminant = eliminants[0]
    for item in eliminants[1:]:
        eliminant = sympy.gcd(eliminant, item)
    if eliminant == 0:
        raise ValueError("degenerate eliminant; the partials share a component")
    total_deg = int(sympy.total_degree(sympy.expand(eliminant)))

    directions: list[tuple[Fraction, Fraction]] = []
    accounted = 0
    if total_deg > 0:
        uni = sympy.Poly(eliminant.subs(z, 1), y)
        for root, mult in uni.ground_roots().items():
            directions.append((Fraction(sympy.Rational(root)), frac(1)))
            accounted += mult
        z_mult = total_deg - (uni.degree() if uni.degree() is not None else 0)
        if uni.is_zero:
            raise ValueError("eliminant vanishes along the z = 1 chart")
        if z_mult > 0:
            directions.append((frac(1), frac(0)))
            accounted += z_mult

    found: list[MarkedPoint] = []

    def check(px, py, pz) -> None:
        values = {x: sympy.Rational(px), y: sympy.Rational(py), z: sympy.Rational(pz)}
        if all(p.subs(values) == 0 for p in partials):
            point = MarkedPoint.of(px, py, pz)
            if point not in found:
                found.append(point)

    check(1, 0, 0)
    for y0, z0 in directions:
        for x0 in _x_solutions(partials, y0, z0, x, y, z):
            check(x0, y0, z0)
    return SmoothnessReport(tuple(found), total_deg, max(total_deg - accounted, 0))


def _x_solutions(partials, y0, z0, x, y, z) -> list[Fraction]:
    values = {y: sympy.Rational(y0), z: sympy.Rational(z0)}
    gcd_poly = None
    for p in partials:
        specialized = sympy.expand(p.subs(values))
        poly = sympy.Poly(specialized, x)
        gcd_poly = poly if gcd_poly is None else gcd_poly.gcd(poly)
    if gcd_poly.is_zero:
        raise ValueError("the partials vanish along a whole line")
    out: list[Fraction] = []
    for root in gcd_poly.ground_roots():
        value = Fraction(sympy.Rational(root))
        if value not in out:
            out.append(value)
    return sorted(out)
