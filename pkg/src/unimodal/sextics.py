"""The ten normalized plane-sextic branch families and their orbit counts.

Each family is a sextic of the shape ``base + z * f5`` with the base pinned by
the restriction pattern along the line z = 0, the quintic part free except for
declared monomial exclusions, and normalization markings (points, lines) fixed
in the plane.  The orbit dimension count is the affine parameter dimension of
the family (free quintic coefficients plus continuous parameters) minus the
dimension of the projectivity stabilizer of the markings.

Representatives carry fixed small-integer quintic parts used to verify the
curve-level claims: restriction pattern, the A-type at the marked point, and
the absence of further rational singular points.  The symbolic parameter is
handled by specialization at several rational values away from the excluded
ones, demanding identical combinatorial output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .planecurves import (
    AnVerdict,
    HomogeneousForm,
    MarkedPoint,
    an_type_at,
    linear_form,
    monomial,
    monomial_basis,
    monomial_exclusions,
    orbit_dim_count,
    rational_singular_points,
    restrict_to_line,
    stabilizer_dim,
)
from .rationals import frac

LINE = linear_form(0, 0, 1)  # the distinguished line z = 0

_X5 = (5, 0, 0)
_YX4 = (4, 1, 0)

_LAMBDA_SAMPLES = (Fraction(2), Fraction(3), Fraction(5))


def _pt(x, y, z) -> MarkedPoint:
    return MarkedPoint.of(x, y, z)


@dataclass(frozen=True)
class SexticFamily:
    family_id: str
    singularity: str
    case: int
    parametrized: bool
    bad_lambdas: tuple[Fraction, ...]
    exclusions: tuple[tuple[int, int, int], ...]
    marked_points: tuple[MarkedPoint, ...]
    marked_lines: tuple[HomogeneousForm, ...]
    expected_orders: tuple[int, ...]
    singular_mark: tuple[MarkedPoint, int] | None  # (point, n) for an A_n on the sextic
    claimed_count: int
    flag: str | None = None
    variant_exclusions: tuple[tuple[int, int, int], ...] | None = None

    def base(self, lam: Fraction) -> HomogeneousForm:
        return _BASES[self.family_id](lam)

    def restriction_points(self, lam: Fraction) -> tuple[MarkedPoint, ...]:
        return _RESTRICTION_POINTS[self.family_id](lam)

    def lambda_samples(self) -> tuple[Fraction, ...]:
        if not self.parametrized:
            return (frac(0),)
        return tuple(v for v in _LAMBDA_SAMPLES if v not in self.bad_lambdas)

    def representative(self, lam: Fraction) -> HomogeneousForm:
        f5 = _REPRESENTATIVE_QUINTICS[self.family_id]
        for exponent in self.exclusions:
            if f5.coeff(exponent) != 0:
                raise AssertionError("representative quintic violates its own exclusions")
        return self.base(lam) + LINE * f5

    def affine_parameter_count(self, exclusions=None) -> int:
        excl = self.exclusions if exclusions is None else exclusions
        free = 21 - monomial_exclusions(5, list(excl)).rank()
        return free + (1 if self.parametrized else 0)

    def orbit_dim_count(self, exclusions=None) -> int:
        """Affine family dimension minus the stabilizer of the markings."""
        excl = self.exclusions if exclusions is None else exclusions
        return orbit_dim_count(
            monomial_exclusions(5, list(excl)),
            1 if self.parametrized else 0,
            self.marked_points,
            self.marked_lines,
        )


def _z11_base(lam: Fraction) -> HomogeneousForm:
    y3 = monomial(0, 3, 0)
    return y3 * linear_form(lam, -1, 0) * linear_form(lam, -1, 0) * linear_form(1, -1, 0)


def _z11_case2_base(_: Fraction) -> HomogeneousForm:
    y3 = monomial(0, 3, 0)
    step = linear_form(1, -1, 0)
    return y3 * step * step * step


def _z11_case3_base(_: Fraction) -> HomogeneousForm:
    return monomial(0, 5, 0) * linear_form(1, -1, 0)


def _w12_base(lam: Fraction) -> HomogeneousForm:
    factor = linear_form(-lam, 1, 0)
    return monomial(0, 4, 0) * factor * factor


def _w12_case2_base(_: Fraction) -> HomogeneousForm:
    return monomial(0, 6, 0)


def _w13_base(_: Fraction) -> HomogeneousForm:
    return monomial(2, 4, 0)


def _z12_case1_base(lam: Fraction) -> HomogeneousForm:
    return monomial(2, 3, 0) * linear_form(1, -lam, 0)


def _z12_case2_base(_: Fraction) -> HomogeneousForm:
    return monomial(3, 3, 0)


_BASES = {
    "z11-case1": _z11_base,
    "z11-case2": _z11_case2_base,
    "z11-case3": _z11_case3_base,
    "w12-case1": _w12_base,
    "w12-case2": _w12_case2_base,
    "w13": _w13_base,
    "z12-case1": _z12_case1_base,
    "z12-case2": _z12_case2_base,
    "z13-case1": _z12_case1_base,
    "z13-case2": _z12_case2_base,
}

_RESTRICTION_POINTS = {
    "z11-case1": lambda lam: (_pt(1, 0, 0), _pt(1, lam, 0), _pt(1, 1, 0)),
    "z11-case2": lambda _: (_pt(1, 0, 0), _pt(1, 1, 0)),
    "z11-case3": lambda _: (_pt(1, 0, 0), _pt(1, 1, 0)),
    "w12-case1": lambda lam: (_pt(1, 0, 0), _pt(1, lam, 0)),
    "w12-case2": lambda _: (_pt(1, 0, 0),),
    "w13": lambda _: (_pt(1, 0, 0), _pt(0, 1, 0)),
    "z12-case1": lambda lam: (_pt(1, 0, 0), _pt(0, 1, 0), _pt(lam, 1, 0)),
    "z12-case2": lambda _: (_pt(1, 0, 0), _pt(0, 1, 0)),
    "z13-case1": lambda lam: (_pt(1, 0, 0), _pt(0, 1, 0), _pt(lam, 1, 0)),
    "z13-case2": lambda _: (_pt(1, 0, 0), _pt(0, 1, 0)),
}

# Fixed quintic parts for the verified representatives.  Chosen once so that
# the marked singularity comes out right and the rational-point scan finds
# nothing else; the tests pin the outcome.
_REPRESENTATIVE_QUINTICS = {
    "z11-case1": monomial(5, 0, 0)
    + monomial(0, 0, 5)
    + monomial(0, 5, 0, 2)
    + monomial(2, 0, 3, 3),
    "z11-case2": monomial(5, 0, 0)
    + monomial(0, 0, 5)
    + monomial(0, 5, 0, 2)
    + monomial(2, 0, 3, 3),
    "z11-case3": monomial(5, 0, 0)
    + monomial(0, 0, 5)
    + monomial(0, 5, 0, 2)
    + monomial(2, 0, 3, 3),
    "w12-case1": monomial(5, 0, 0) + monomial(0, 0, 5) + monomial(0, 5, 0, 2) + monomial(3, 0, 2, 3),
    "w12-case2": monomial(5, 0, 0) + monomial(0, 0, 5) + monomial(1, 4, 0, 2) + monomial(3, 0, 2, 3),
    "w13": monomial(4, 1, 0)
    + monomial(4, 0, 1, 2)
    + monomial(0, 5, 0, 3)
    + monomial(0, 0, 5, 5),
    "z12-case1": monomial(4, 1, 0)
    + monomial(4, 0, 1, 2)
    + monomial(0, 5, 0, 3)
    + monomial(0, 0, 5, 5),
    "z12-case2": monomial(4, 1, 0)
    + monomial(4, 0, 1, 2)
    + monomial(0, 5, 0, 3)
    + monomial(0, 0, 5, 5),
    "z13-case1": monomial(4, 0, 1, 2)
    + monomial(0, 5, 0, 3)
    + monomial(0, 0, 5, 5)
    + monomial(2, 3, 0, 7),
    "z13-case2": monomial(4, 0, 1, 2)
    + monomial(0, 5, 0, 3)
    + monomial(0, 0, 5, 5)
    + monomial(2, 3, 0, 7),
}

FAMILIES: tuple[SexticFamily, ...] = (
    SexticFamily(
        "z11-case1",
        "Z11",
        1,
        True,
        (frac(0), frac(1)),
        (),
        (_pt(1, 0, 0), _pt(1, 1, 0)),
        (),
        (3, 2, 1),
        None,
        18,
    ),
    SexticFamily(
        "z11-case2", "Z11", 2, False, (), (), (_pt(1, 0, 0), _pt(1, 1, 0)), (), (3, 3), None, 17
    ),
    SexticFamily(
        "z11-case3", "Z11", 3, False, (), (), (_pt(1, 0, 0), _pt(1, 1, 0)), (), (5, 1), None, 17
    ),
    SexticFamily(
        "w12-case1", "W12", 1, True, (frac(0),), (), (_pt(1, 0, 0),), (LINE,), (4, 2), None, 17
    ),
    SexticFamily(
        "w12-case2", "W12", 2, False, (), (), (_pt(1, 0, 0),), (LINE,), (6,), None, 16
    ),
    SexticFamily(
        "w13",
        "W13",
        1,
        False,
        (),
        (_X5,),
        (_pt(1, 0, 0), _pt(0, 1, 0)),
        (),
        (4, 2),
        (_pt(1, 0, 0), 1),
        16,
    ),
    SexticFamily(
        "z12-case1",
        "Z12",
        1,
        True,
        (frac(0),),
        (_X5,),
        (_pt(1, 0, 0), _pt(0, 1, 0)),
        (),
        (3, 2, 1),
        (_pt(1, 0, 0), 1),
        17,
    ),
    SexticFamily(
        "z12-case2",
        "Z12",
        2,
        False,
        (),
        (_X5,),
        (_pt(1, 0, 0), _pt(0, 1, 0)),
        (),
        (3, 3),
        (_pt(1, 0, 0), 1),
        16,
    ),
    SexticFamily(
        "z13-case1",
        "Z13",
        1,
        True,
        (frac(0),),
        (_X5, _YX4),
        (_pt(1, 0, 0), _pt(0, 1, 0)),
        (),
        (3, 2, 1),
        (_pt(1, 0, 0), 2),
        16,
    ),
    SexticFamily(
        "z13-case2",
        "Z13",
        2,
        False,
        (),
        (_X5,),
        (_pt(1, 0, 0), _pt(0, 1, 0)),
        (),
        (3, 3),
        (_pt(1, 0, 0), 2),
        15,
        flag="z13-case2-count",
        variant_exclusions=(_X5, _YX4),
    ),
)


def family(family_id: str) -> SexticFamily:
    for fam in FAMILIES:
        if fam.family_id == family_id:
            return fam
    raise KeyError(family_id)


@dataclass(frozen=True)
class FamilyVerification:
    family_id: str
    orders: tuple[int, ...]
    residual_degree: int
    mark: AnVerdict | None
    extra_rational_singular_points: tuple[MarkedPoint, ...]
    orbit_count: int
    variant_orbit_count: int | None


def verify_family(fam: SexticFamily) -> FamilyVerification:
    """Specialize, restrict, classify and count one family.

    All lambda specializations must give the same combinatorial output; the
    representative member must show exactly the declared singular point (for
    the flagged family the variant exclusions are used, since the primary
    exclusion set does not force the declared cusp on a general member).
    """
    seen: set[tuple] = set()
    mark: AnVerdict | None = None
    extra: tuple[MarkedPoint, ...] = ()
    orders: tuple[int, ...] = ()
    residual = 0
    for lam in fam.lambda_samples():
        rep = fam.representative(lam)
        pattern = restrict_to_line(rep, LINE, fam.restriction_points(lam))
        if pattern.contained:
            raise ValueError(f"{fam.family_id}: representative contains the line")
        orders, residual = pattern.orders, pattern.residual_degree
        report = rational_singular_points(rep)
        expected_points = () if fam.singular_mark is None else (fam.singular_mark[0],)
        extra = tuple(p for p in report.singular_points if p not in expected_points)
        if fam.singular_mark is not None:
            point, n = fam.singular_mark
            mark = an_type_at(rep, point, candidate=max(2, n))
            signature = (orders, residual, extra, mark.kind, mark.n)
        else:
            mark = None
            signature = (orders, residual, extra)
        seen.add(signature)
    if len(seen) != 1:
        raise ValueError(f"{fam.family_id}: specializations disagree: {sorted(map(str, seen))}")
    variant = (
        fam.orbit_dim_count(fam.variant_exclusions) if fam.variant_exclusions else None
    )
    return FamilyVerification(
        fam.family_id,
        orders,
        residual,
        mark,
        extra,
        fam.orbit_dim_count(),
        variant,
    )
