"""Declarative construction pipelines with machine-checked audits.

Two routes produce the Gorenstein surfaces under verification.  The elliptic
route starts from a ruled surface, takes the bicanonical double cover with a
branch containing a fibre and a [3,3]-point, resolves the resulting degree-one
elliptic point by attaching its known exceptional curve, contracts the
leftover (-1)-curve to reach a minimal elliptic surface, and finally
contracts the exceptional unimodal configuration.  The K3 route starts from
the declared resolution lattice, blows down to a K3 carrier, contracts the
(-2)-part, and feeds the branch sextic families.

Every numerical claim along the way is recorded as a named check with an
anchor describing the claim; documented discrepancies are flagged, never
silently repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .configurations import (
    Component,
    Contact,
    CurveConfiguration,
    catalog_entry,
    euler_budget,
    match_catalog,
    recognize_kodaira_fiber,
)
from .lattice import (
    DivisorClass,
    SurfaceModel,
    attach_resolution,
    blow_up,
    contract,
    declare_surface,
    double_cover,
    make_hirzebruch,
    make_p2,
    nakai_check,
    rename_curve,
    split_curve,
    track,
    untrack,
)
from .planecurves import Germ, detect_33_point, germ
from .rationals import frac, rat_str
from .sextics import FAMILIES, SexticFamily, family, verify_family

NOETHER_FLAG = "noether-c2"
ADJOINT_FLAG = "nef-bundle-en-values"
Z13_FLAG = "z13-case2-count"

_CLAIMED_C2 = 23  # the stated Euler number; the engine computes 24
_CLAIMED_BUNDLE = {"bisection": 4, "squared": 8}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        return rat_str(value)
    if isinstance(value, (tuple, list)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


@dataclass(frozen=True)
class CheckRecord:
    name: str
    computed: str
    expected: str
    status: str  # "pass" | "fail" | "flagged"
    anchor: str
    flag: str | None = None


@dataclass(frozen=True)
class PipelineResult:
    label: str
    checks: tuple[CheckRecord, ...]
    diagnostics: tuple[tuple[str, str], ...]
    models: tuple[SurfaceModel, ...]

    def check(self, name: str) -> CheckRecord:
        for record in self.checks:
            if record.name == name:
                return record
        raise KeyError(name)

    @property
    def failed(self) -> tuple[CheckRecord, ...]:
        return tuple(r for r in self.checks if r.status == "fail")

    @property
    def flagged(self) -> tuple[CheckRecord, ...]:
        return tuple(r for r in self.checks if r.status == "flagged")

    @property
    def ok(self) -> bool:
        return not self.failed


class _Recorder:
    def __init__(self) -> None:
        self.records: list[CheckRecord] = []
        self.diagnostics: list[tuple[str, str]] = []

    def expect(self, name: str, computed, expected, anchor: str) -> None:
        c, e = _fmt(computed), _fmt(expected)
        status = "pass" if c == e else "fail"
        self.records.append(CheckRecord(name, c, e, status, anchor))

    def flag(self, name: str, computed, claimed, engine, anchor: str, flag: str) -> None:
        """A documented discrepancy: computed must match the engine value.

        The record is flagged when the recomputation lands on the documented
        engine value (away from the claim); anything else is a plain failure,
        so a flag can never mask a computation error.
        """
        c, e, claimed_s = _fmt(computed), _fmt(engine), _fmt(claimed)
        if c == e and c != claimed_s:
            self.records.append(CheckRecord(name, c, claimed_s, "flagged", anchor, flag))
        else:
            self.records.append(CheckRecord(name, c, claimed_s, "fail", anchor, flag))

    def note(self, key: str, value) -> None:
        self.diagnostics.append((key, _fmt(value)))

    def result(self, label: str, models: tuple[SurfaceModel, ...]) -> PipelineResult:
        return PipelineResult(label, tuple(self.records), tuple(self.diagnostics), models)


# ---------------------------------------------------------------------------
# Shared construction arithmetic
# ---------------------------------------------------------------------------


def branch_class_for(model: SurfaceModel) -> DivisorClass:
    """Branch class of the bicanonical double cover: 2(Gamma - K) on a ruled base, 6H on the plane."""
    if model.lattice.basis == ("H",):
        return model.divisor({"H": 6})
    if set(model.lattice.basis) == {"Cinf", "Gamma"}:
        return 2 * (model.basis_class("Gamma") - model.canonical)
    raise ValueError(f"no branch class rule for base {model.name!r}")


def section_class_coefficient(pa_bisection: int) -> Fraction:
    """Offset k in the section class Cinf + k*Gamma of the bisection image.

    The bisection maps to a section of the natural ruled surface; pairing the
    section identity against the canonical class, with the branch degree on
    the section supplied by the double-cover count 2 pa + 4, pins k exactly.
    """
    if pa_bisection not in (0, 1):
        raise ValueError("the bisection genus is 0 or 1")
    base = make_hirzebruch(1 - pa_bisection)
    cinf, gamma = base.basis_class("Cinf"), base.basis_class("Gamma")
    a = base.intersect(cinf, base.canonical)
    b = base.intersect(gamma, base.canonical)
    k = (1 - (pa_bisection + 2) - a) / b
    section = cinf + k * gamma
    branch = branch_class_for(base)
    if base.intersect(branch, section) != 2 * pa_bisection + 4:
        raise AssertionError("section class is inconsistent with the branch degree")
    return k


# ---------------------------------------------------------------------------
# The elliptic (E-type) route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnSpec:
    singularity: str  # "E12" | "E13" | "E14"
    profile: int = 6  # which degree-one elliptic point sits over the [3,3]
    fiber_variant: str | None = None  # second-fibre shape for E13/E14
    config: CurveConfiguration | None = None  # declared exceptional configuration
    germ_checks: bool = True
    branch_germ: tuple[Germ, tuple[Germ, Germ] | None] | None = None


_EN_VARIANTS: dict[str, tuple[str, ...]] = {
    "E12": (),
    "E13": ("I2", "I3", "III", "IV"),
    "E14": ("I3", "I4"),
}


@dataclass(frozen=True)
class _Variant:
    ade: str  # "A1" | "A2"
    tangential: bool  # fibre components meet at a single point
    concurrent: bool  # three fibre components through one point


_VARIANT_DATA = {
    ("E13", "I2"): _Variant("A1", False, False),
    ("E13", "I3"): _Variant("A2", False, False),
    ("E13", "III"): _Variant("A1", True, False),
    ("E13", "IV"): _Variant("A2", False, True),
    ("E14", "I3"): _Variant("A1", False, False),
    ("E14", "I4"): _Variant("A2", False, False),
}


def en_variants(singularity: str) -> tuple[str | None, ...]:
    if singularity == "E12":
        return (None,)
    return _EN_VARIANTS[singularity]


def run_en_pipeline(spec: EnSpec) -> PipelineResult:
    sing = spec.singularity
    if sing not in _EN_VARIANTS:
        raise ValueError(f"not an elliptic-route type: {sing!r}")
    allowed = _EN_VARIANTS[sing]
    if sing == "E12":
        if spec.fiber_variant is not None:
            raise ValueError("E12 has no second-fibre variant")
    elif spec.fiber_variant not in allowed:
        raise ValueError(f"{sing} admits the variants {allowed}, not {spec.fiber_variant!r}")
    if spec.profile not in (6, 7):
        raise ValueError("the elliptic point profile is 6 or 7")

    checks = _Recorder()
    entry = catalog_entry(sing)
    declared = spec.config if spec.config is not None else entry.config
    pa_bisection = 1 if sing == "E12" else 0
    twist = 1 - pa_bisection

    base = make_hirzebruch(twist)
    branch = branch_class_for(base)
    checks.expect(
        "branch-class",
        str(branch),
        str(base.divisor({"Cinf": 4, "Gamma": 2 * twist + 6})),
        f"bicanonical branch class on the ruled base F{twist}",
    )
    half = base.basis_class("Gamma") - base.canonical
    base = track(base, "Gammap", {"Gamma": 1})
    if spec.fiber_variant is not None:
        base = track(base, "Gammaq", {"Gamma": 1})
    base = track(base, "Dprime", (branch - base.basis_class("Gamma")).coeff_map())

    cover = double_cover(base, half, ["Gammap", "Dprime"], name=f"cover for {sing}")
    checks.expect(
        "cover-euler-characteristic",
        cover.chi,
        3,
        "holomorphic Euler characteristic of the branched double cover",
    )
    checks.expect(
        "cover-canonical-is-fiber",
        str(cover.canonical),
        str(cover.basis_class("Gamma_pb")),
        "canonical class of the cover is a ruling fibre",
    )
    checks.expect("cover-canonical-squared", cover.k_squared, 0, "K^2 of the cover")
    cover = untrack(cover, ["Dprime_half"])
    cover = rename_curve(cover, "Cinf_pre", "E1")
    cover = rename_curve(cover, "Gammap_half", "G")
    if spec.fiber_variant is not None:
        cover = rename_curve(cover, "Gammaq_pre", "Cq")

    t_marker = None if spec.profile == 6 else "node"
    t_config = CurveConfiguration((Component("F", -1, 1, t_marker),))
    model = attach_resolution(
        cover, t_config, {"G": {"F": 1}, "E1": {"F": 1}}, name=f"resolution for {sing}"
    )
    checks.expect(
        "resolved-euler-characteristic",
        model.chi,
        2,
        "resolving the degree-one elliptic point drops chi by one",
    )

    fiber_names: tuple[str, ...] = ()
    if spec.fiber_variant is not None:
        variant = _VARIANT_DATA[(sing, spec.fiber_variant)]
        if variant.ade == "A1":
            r_config = CurveConfiguration((Component("R1", -2, 0),))
            through = {"Cq": {"R1": 1}}
            resolution_names = ("R1",)
        else:
            r_config = CurveConfiguration(
                (Component("R1", -2, 0), Component("R2", -2, 0)),
                (Contact("R1", "R2", 1),),
            )
            through = {"Cq": {"R1": 1, "R2": 1}}
            resolution_names = ("R1", "R2")
        model = attach_resolution(model, r_config, through)
        if sing == "E14":
            pairings = {"Cinf_pb": 1, "R1": 1}
            model = split_curve(model, "Cq", ("E2", "E3"), -2, pairings)
            fiber_names = ("E2", "E3") + resolution_names
        else:
            model = rename_curve(model, "Cq", "E2")
            fiber_names = ("E2",) + resolution_names

    step_down = contract(model, ["G"], name=f"minimal elliptic surface for {sing}")
    checks.expect(
        "half-fiber-contraction-kind",
        step_down.kind,
        "blow-down",
        "the strict half-fibre transform is a smooth (-1)-curve",
    )
    surface = step_down.model

    checks.expect("minimal-model-euler-characteristic", surface.chi, 2, "chi of the elliptic surface")
    checks.expect("minimal-model-canonical-squared", surface.k_squared, 0, "K^2 of the elliptic surface")
    checks.flag(
        "noether-euler-number",
        surface.c2,
        _CLAIMED_C2,
        24,
        "topological Euler number from Noether's identity",
        NOETHER_FLAG,
    )
    half_fiber = surface.curve_class("F")
    checks.expect(
        "canonical-numerically-half-fiber",
        str(surface.canonical),
        str(half_fiber),
        "the canonical class is the half-fibre of the unique multiple fibre",
    )
    bisection = surface.curve_class("E1")
    checks.expect(
        "bisection-degree-on-half-fiber",
        surface.intersect(half_fiber, bisection),
        1,
        "the exceptional curve meets the half-fibre once",
    )
    checks.expect(
        "bisection-degree-on-fiber",
        surface.intersect(2 * half_fiber, bisection),
        2,
        "the exceptional curve is a bisection of the fibration",
    )

    _check_exceptional_configuration(checks, surface, declared, sing)

    multiple_type = "I0" if spec.profile == 6 else "I1"
    fiber_config = CurveConfiguration(
        (Component("F", 0, 1, t_marker),)
    )
    checks.expect(
        "multiple-fiber-type",
        recognize_kodaira_fiber(fiber_config) or "none",
        multiple_type,
        "shape of the reduction of the multiple fibre",
    )

    required = []
    if spec.fiber_variant is not None:
        variant = _VARIANT_DATA[(sing, spec.fiber_variant)]
        second_fiber = _fiber_configuration_on(surface, fiber_names, variant)
        checks.expect(
            "second-fiber-type",
            recognize_kodaira_fiber(second_fiber) or "none",
            spec.fiber_variant,
            "shape of the fibre through the extra branch singularity",
        )
        required.append(spec.fiber_variant)
    c2 = surface.c2
    budget = euler_budget(tuple(required), int(c2), multiple_type)
    checks.expect(
        "euler-budget",
        "feasible" if budget.feasible else "infeasible",
        "feasible",
        "the required singular fibres fit into the Euler number",
    )
    checks.note("euler-budget-remainder", budget.remainder)

    _nef_bundle_diagnostics(checks, surface, sing, pa_bisection)

    k = section_class_coefficient(pa_bisection)
    checks.expect(
        "section-class-coefficient",
        k,
        0,
        "the bisection image is the minimal section of the ruled base",
    )

    exceptional_names = [c.name for c in declared.components if surface.has_curve(c.name)]
    cycle_class = surface.zero()
    for name in exceptional_names:
        cycle_class = cycle_class + surface.curve_class(name)
    pulled_canonical = surface.canonical + cycle_class
    checks.expect(
        "canonical-plus-cycle-squared",
        surface.intersect(pulled_canonical, pulled_canonical),
        1,
        "self-intersection of the pulled-back canonical class of the contraction",
    )

    final = contract(surface, exceptional_names, name=f"{sing} model")
    checks.expect(
        "contraction-kind",
        final.kind,
        "minimally-elliptic",
        "the exceptional configuration contracts to a degree-one elliptic point",
    )
    w = final.model
    checks.expect("contracted-canonical-squared", w.k_squared, 1, "K^2 of the contracted model")
    checks.expect("contracted-euler-characteristic", w.chi, 3, "chi of the contracted model")
    checks.expect(
        "contracted-canonical-ample",
        nakai_check(w, w.canonical),
        "ample",
        "ampleness against every tracked curve",
    )
    checks.expect(
        "geometric-genus",
        w.chi - 1,
        2,
        "geometric genus from chi with irregularity zero",
    )

    if spec.germ_checks:
        _germ_checks(checks, spec)

    return checks.result(f"{sing}" + (f"-{spec.fiber_variant}" if spec.fiber_variant else ""), (base, cover, model, surface, w))


def _check_exceptional_configuration(
    checks: _Recorder, surface: SurfaceModel, declared: CurveConfiguration, sing: str
) -> None:
    adjunction_ok = True
    self_ints: list[Fraction] = []
    declared_self_ints = []
    genera: list[Fraction] = []
    declared_genera = []
    for component in declared.components:
        if not surface.has_curve(component.name):
            adjunction_ok = False
            continue
        cls = surface.curve_class(component.name)
        k_degree = surface.intersect(surface.canonical, cls)
        pa = 1 + (frac(component.self_int) + k_degree) / 2
        if pa.denominator != 1 or pa < 0:
            adjunction_ok = False
        self_ints.append(surface.intersect(cls, cls))
        declared_self_ints.append(frac(component.self_int))
        genera.append(surface.curve(component.name).pa)
        declared_genera.append(frac(component.pa))
    checks.expect(
        "exceptional-adjunction-integral",
        "integral" if adjunction_ok else "broken",
        "integral",
        "declared exceptional self-intersections satisfy adjunction against the computed canonical degrees",
    )
    checks.expect(
        "exceptional-self-intersections",
        tuple(self_ints),
        tuple(declared_self_ints),
        "computed self-intersections of the exceptional components",
    )
    checks.expect(
        "exceptional-genera",
        tuple(genera),
        tuple(declared_genera),
        "computed arithmetic genera of the exceptional components",
    )
    mult_ok = all(
        surface.intersect(
            surface.curve_class(a.name), surface.curve_class(b.name)
        )
        == declared.contact_mult(a.name, b.name)
        for i, a in enumerate(declared.components)
        for b in declared.components[i + 1 :]
        if surface.has_curve(a.name) and surface.has_curve(b.name)
    )
    checks.expect(
        "exceptional-contacts",
        "match" if mult_ok else "mismatch",
        "match",
        "pairwise intersection numbers of the exceptional components",
    )
    hit = match_catalog(declared)
    checks.expect(
        "catalog-match",
        hit.label if hit else "none",
        sing,
        "the exceptional configuration is the declared catalog entry",
    )


def _fiber_configuration_on(
    surface: SurfaceModel, names: tuple[str, ...], variant: _Variant
) -> CurveConfiguration:
    components = []
    for name in names:
        curve = surface.curve(name)
        components.append(
            Component(name, int(curve.cls.dot(curve.cls)), int(curve.pa))
        )
    contacts = []
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            m = surface.intersect(surface.curve_class(a), surface.curve_class(b))
            if m != 0:
                contacts.append(Contact(a, b, int(m), variant.tangential))
    concurrent = (frozenset(names),) if variant.concurrent else ()
    return CurveConfiguration(tuple(components), tuple(contacts), concurrent)


def _nef_bundle_diagnostics(
    checks: _Recorder, surface: SurfaceModel, sing: str, pa_bisection: int
) -> None:
    blown = blow_up(surface, {"F": 1}, exceptional="G2", name="bisection-bundle model")
    fhat = blown.curve_class("F")
    e1hat = blown.curve_class("E1")
    ghat = blown.basis_class("G2")
    fiber = 2 * fhat + 2 * ghat
    bundle = blown.canonical + 2 * fiber + e1hat - 2 * ghat

    checks.expect(
        "nef-bundle-on-strict-half-fiber",
        blown.intersect(bundle, fhat),
        0,
        "the adjoint bundle is trivial on the strict half-fibre transform",
    )
    checks.expect(
        "nef-bundle-on-fiber",
        blown.intersect(bundle, fiber),
        2,
        "the adjoint bundle has degree two on fibres",
    )
    on_bisection = blown.intersect(bundle, e1hat)
    squared = blown.intersect(bundle, bundle)
    if sing == "E12":
        checks.expect(
            "nef-bundle-on-bisection",
            on_bisection,
            _CLAIMED_BUNDLE["bisection"],
            "degree of the adjoint bundle on the bisection",
        )
        checks.expect(
            "nef-bundle-squared",
            squared,
            _CLAIMED_BUNDLE["squared"],
            "self-intersection of the adjoint bundle",
        )
    else:
        checks.flag(
            "nef-bundle-on-bisection",
            on_bisection,
            _CLAIMED_BUNDLE["bisection"],
            2,
            "degree of the adjoint bundle on the bisection",
            ADJOINT_FLAG,
        )
        checks.flag(
            "nef-bundle-squared",
            squared,
            _CLAIMED_BUNDLE["squared"],
            6,
            "self-intersection of the adjoint bundle",
            ADJOINT_FLAG,
        )
    checks.note("nef-bundle-on-exceptional", blown.intersect(bundle, ghat))
    checks.note("nef-bundle-canonical-degree", blown.intersect(blown.canonical, bundle))
    checks.note("nef-bundle-euler-characteristic", blown.rr_chi(bundle))
    checks.note("nef-bundle-pushforward-degree-sum", pa_bisection + 5)


_DECOMPOSITIONS = {
    6: (germ({(2, 0): 1, (0, 4): -1}), germ({(1, 0): 1, (0, 2): -2})),
    7: (germ({(2, 0): 1, (0, 5): -1}), germ({(1, 0): 1, (0, 2): -2})),
}


def _germ_checks(checks: _Recorder, spec: EnSpec) -> None:
    profiles = set()
    for lam in (Fraction(1), Fraction(2), Fraction(3)):
        shape = germ({(3, 0): 1, (2, 2): lam * lam, (0, spec.profile): 1})
        verdict = detect_33_point(shape)
        profiles.add((verdict.is_33, verdict.profile))
    checks.expect(
        "branch-germ-33-profile",
        sorted(profiles),
        [(True, spec.profile)],
        "the branch normal form has a [3,3]-point of the declared profile at every specialization",
    )
    residual, smooth = _DECOMPOSITIONS[spec.profile]
    from .planecurves import germ_mul

    verdict = detect_33_point(germ_mul(residual, smooth), decomposition=(residual, smooth))
    checks.expect(
        "branch-germ-decomposition-intersection",
        verdict.local_intersection,
        4,
        "the two branch pieces meet with local intersection number four",
    )
    expected_residual = (spec.profile - 6) + 3
    checks.expect(
        "branch-germ-residual-type",
        f"A{verdict.residual.n}" if verdict.residual and verdict.residual.kind == "A" else "none",
        f"A{expected_residual}",
        "A-type of the residual branch piece at the [3,3]-point",
    )
    if spec.branch_germ is not None:
        shape, decomposition = spec.branch_germ
        verdict = detect_33_point(shape, decomposition=decomposition)
        checks.expect(
            "supplied-germ-33",
            (verdict.is_33, verdict.profile),
            (True, spec.profile),
            "the supplied branch germ shows the declared [3,3]-profile",
        )
        if decomposition is not None:
            checks.expect(
                "supplied-germ-intersection",
                verdict.local_intersection,
                4,
                "the supplied decomposition meets with local intersection four",
            )


# ---------------------------------------------------------------------------
# The K3 (Z/W) route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZwSpec:
    singularity: str  # Z11 | Z12 | Z13 | W12 | W13
    family_case: int | None = 1
    config: CurveConfiguration | None = None


_ZW_TYPES = ("Z11", "Z12", "Z13", "W12", "W13")
_ZW_ADE = {"Z11": None, "W12": None, "Z12": "A1", "W13": "A1", "Z13": "A2"}


def run_zw_pipeline(spec: ZwSpec) -> PipelineResult:
    sing = spec.singularity
    if sing not in _ZW_TYPES:
        raise ValueError(f"not a K3-route type: {sing!r}")
    checks = _Recorder()
    entry = catalog_entry(sing)
    declared = spec.config if spec.config is not None else entry.config

    names = declared.names
    gram: dict[str, dict[str, int]] = {"G": {"G": -1}}
    for component, incidences in zip(declared.components, entry.blow_ups):
        gram.setdefault("G", {})[component.name] = incidences
        gram[component.name] = {component.name: component.self_int}
    for contact in declared.contacts:
        gram.setdefault(contact.first, {})[contact.second] = contact.mult
    resolution = declare_surface(
        f"minimal resolution for {sing}",
        ("G",) + names,
        gram,
        {"G": 1},
        2,
        [("G", {"G": 1})] + [(n, {n: 1}) for n in names],
    )

    cycle = resolution.zero()
    for name in names:
        cycle = cycle + resolution.curve_class(name)
    checks.expect(
        "exceptional-cycle-squared",
        resolution.intersect(cycle, cycle),
        -2,
        "self-intersection of the reduced exceptional cycle",
    )
    checks.expect(
        "exceptional-canonical-degree",
        resolution.intersect(resolution.canonical, cycle),
        2,
        "canonical degree of the exceptional cycle",
    )
    checks.expect(
        "minimal-resolution-canonical-squared",
        resolution.k_squared,
        -1,
        "K^2 of the minimal resolution",
    )
    _check_declared_genera(checks, resolution, declared)
    hit = match_catalog(declared)
    checks.expect(
        "catalog-match",
        hit.label if hit else "none",
        sing,
        "the exceptional configuration is the declared catalog entry",
    )
    pulled = resolution.canonical + cycle
    checks.expect(
        "canonical-plus-cycle-squared",
        resolution.intersect(pulled, pulled),
        1,
        "self-intersection of the pulled-back canonical class of the contraction",
    )
    checks.expect(
        "cycle-meets-blowdown-curve",
        resolution.intersect(cycle, resolution.curve_class("G")),
        2,
        "the exceptional cycle meets the (-1)-curve twice",
    )

    blowdown = contract(resolution, ["G"], name=f"K3 model for {sing}")
    checks.expect(
        "blowdown-kind", blowdown.kind, "blow-down", "the extra curve is a smooth (-1)-curve"
    )
    k3 = blowdown.model
    checks.expect(
        "blowdown-canonical-trivial",
        "trivial" if k3.canonical.is_zero else str(k3.canonical),
        "trivial",
        "the canonical class of the blow-down vanishes",
    )
    checks.expect("blowdown-euler-characteristic", k3.chi, 2, "chi of the K3 carrier")

    image_cycle = k3.zero()
    for name in names:
        image_cycle = image_cycle + k3.curve_class(name)
    k3 = track(k3, "Ecycle", image_cycle.coeff_map(), irreducible=len(names) == 1)
    checks.expect(
        "pushed-cycle-squared",
        k3.intersect(image_cycle, image_cycle),
        2,
        "self-intersection of the pushed exceptional cycle",
    )
    checks.expect(
        "pushed-cycle-genus", k3.adjunction_pa(image_cycle), 2, "arithmetic genus of the pushed cycle"
    )
    checks.expect(
        "pushed-cycle-euler-characteristic",
        k3.rr_chi(image_cycle),
        3,
        "Euler characteristic of the pushed cycle by Riemann-Roch",
    )

    ade_names = [
        name
        for name in names
        if k3.intersect(k3.curve_class(name), image_cycle) == 0
    ]
    expected_ade = _ZW_ADE[sing]
    if ade_names:
        ade = contract(k3, ade_names, name=f"singular K3 model for {sing}")
        checks.expect(
            "ade-contraction",
            ade.label,
            expected_ade or "none",
            "rational double point produced by contracting the trivial part of the cycle",
        )
        barred = ade.model
    else:
        checks.expect(
            "ade-contraction",
            "none",
            expected_ade or "none",
            "rational double point produced by contracting the trivial part of the cycle",
        )
        barred = k3
    ebar = barred.curve_class("Ecycle")
    checks.expect(
        "model-cycle-squared",
        barred.intersect(ebar, ebar),
        2,
        "self-intersection of the cycle on the singular K3 model",
    )
    genus_bar = barred.adjunction_pa(ebar)
    checks.expect(
        "model-cycle-genus", genus_bar, 2, "arithmetic genus of the cycle on the singular K3 model"
    )
    degree = 2 * genus_bar - 2 + 4
    checks.expect(
        "double-cover-branch-degree",
        degree,
        6,
        "Riemann-Hurwitz branch degree of the cycle over its image line",
    )

    plane = make_p2()
    double_plane = double_cover(plane, plane.divisor({"H": 3}), name="double plane")
    checks.expect(
        "double-plane-euler-characteristic",
        double_plane.chi,
        k3.chi,
        "the double plane branched in a sextic has the invariants of the K3 carrier",
    )
    checks.expect(
        "double-plane-canonical-trivial",
        "trivial" if double_plane.canonical.is_zero else str(double_plane.canonical),
        "trivial",
        "canonical class of the double plane",
    )

    final = contract(resolution, list(names), name=f"{sing} model")
    checks.expect(
        "contraction-kind",
        final.kind,
        "minimally-elliptic",
        "the exceptional configuration contracts to a degree-two elliptic point",
    )
    w = final.model
    checks.expect("contracted-canonical-squared", w.k_squared, 1, "K^2 of the contracted model")
    checks.expect("contracted-euler-characteristic", w.chi, 3, "chi of the contracted model")
    checks.expect(
        "contracted-canonical-ample",
        nakai_check(w, w.canonical),
        "ample",
        "ampleness against every tracked curve",
    )
    checks.expect("geometric-genus", w.chi - 1, 2, "geometric genus from chi with irregularity zero")

    if spec.family_case is not None:
        fam = _family_for(sing, spec.family_case)
        _family_checks(checks, fam)

    models = (resolution, k3, barred, w)
    return checks.result(f"{sing}-case{spec.family_case}" if spec.family_case else sing, models)


def _check_declared_genera(checks: _Recorder, model: SurfaceModel, declared: CurveConfiguration) -> None:
    ok = True
    for component in declared.components:
        cls = model.curve_class(component.name)
        k_degree = model.intersect(model.canonical, cls)
        pa = 1 + (frac(component.self_int) + k_degree) / 2
        if pa != component.pa:
            ok = False
    checks.expect(
        "exceptional-adjunction-integral",
        "integral" if ok else "broken",
        "integral",
        "declared genera satisfy adjunction against the computed canonical degrees",
    )


def _family_for(sing: str, case: int) -> SexticFamily:
    for fam in FAMILIES:
        if fam.singularity == sing and fam.case == case:
            return fam
    raise ValueError(f"no branch family for {sing} case {case}")


def _family_checks(checks: _Recorder, fam: SexticFamily) -> None:
    verification = verify_family(fam)
    checks.expect(
        "family-restriction-orders",
        verification.orders,
        fam.expected_orders,
        "multiplicity pattern of the branch sextic along the distinguished line",
    )
    checks.expect(
        "family-restriction-residual",
        verification.residual_degree,
        6 - sum(fam.expected_orders),
        "unaccounted degree of the restriction",
    )
    if fam.singular_mark is not None:
        point, n = fam.singular_mark
        mark = verification.mark
        checks.expect(
            "family-singular-mark",
            f"A{mark.n}" if mark and mark.kind == "A" else "none",
            f"A{n}",
            f"curve singularity of the branch sextic at {point}",
        )
    checks.expect(
        "family-smoothness-scan",
        len(verification.extra_rational_singular_points),
        0,
        "no rational singular points beyond the marked one",
    )
    if fam.flag is None:
        checks.expect(
            "family-orbit-count",
            verification.orbit_count,
            fam.claimed_count,
            "affine family dimension minus the stabilizer of the markings",
        )
    else:
        checks.flag(
            "family-orbit-count",
            verification.orbit_count,
            fam.claimed_count,
            16,
            "affine family dimension minus the stabilizer of the markings",
            fam.flag,
        )
        checks.note("family-orbit-count-variant", verification.variant_orbit_count)


# ---------------------------------------------------------------------------
# Standalone construction checks
# ---------------------------------------------------------------------------


def run_section_class_check() -> PipelineResult:
    """Both ruled-base geometries give offset zero for the bisection image."""
    checks = _Recorder()
    for pa in (0, 1):
        checks.expect(
            f"section-class-coefficient-genus-{pa}",
            section_class_coefficient(pa),
            0,
            "the bisection image is the minimal section of the ruled base",
        )
    return checks.result("section-class", ())


def run_riemann_hurwitz_check() -> PipelineResult:
    """The branch-degree computation across all five K3-route types."""
    checks = _Recorder()
    for sing in _ZW_TYPES:
        result = run_zw_pipeline(ZwSpec(sing, family_case=None))
        for name in (
            "pushed-cycle-squared",
            "pushed-cycle-genus",
            "pushed-cycle-euler-characteristic",
            "double-cover-branch-degree",
            "ade-contraction",
        ):
            record = result.check(name)
            checks.records.append(
                CheckRecord(
                    f"{sing.lower()}-{name}",
                    record.computed,
                    record.expected,
                    record.status,
                    record.anchor,
                    record.flag,
                )
            )
    return checks.result("riemann-hurwitz", ())
