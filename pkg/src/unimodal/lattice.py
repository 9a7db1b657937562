"""Intersection lattices, divisor classes and surface models.

A surface is modelled by the finitely generated sublattice of its numerical
group spanned by the classes the construction actually touches: an ordered
named basis with a symmetric rational Gram matrix, a canonical class, the
holomorphic Euler characteristic, and a list of tracked curves.  The three
structural moves are blow-up, double cover and contraction, plus the inverse
of contraction (attaching the known resolution graph of a singular point) and
the splitting of a tracked curve whose preimage decomposes on a double cover.

Models are immutable; every operation returns a fresh model carrying a replay
log, so a construction can be reproduced bit for bit from its provenance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .configurations import (
    Component,
    Contact,
    CurveConfiguration,
    classify_minimally_elliptic,
    fundamental_cycle,
    is_negative_definite,
    match_catalog,
)
from .rationals import frac, rank, rat_str, solve, solve_in_span


class LatticeError(ValueError):
    """Mismatched lattices, unknown classes, malformed Gram data."""


class ContractionError(ValueError):
    """Configuration that cannot be contracted to a Gorenstein model."""


@dataclass(frozen=True)
class IntersectionLattice:
    basis: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.basis)
        if len(set(self.basis)) != n:
            raise LatticeError("duplicate basis names")
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise LatticeError("Gram matrix shape does not match the basis")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise LatticeError("Gram matrix is not symmetric")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise LatticeError(f"no basis class named {name!r}") from None

    def pairing(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
        total = frac(0)
        for i, x in enumerate(a):
            if x == 0:
                continue
            row = self.gram[i]
            total += x * sum(row[j] * y for j, y in enumerate(b) if y != 0)
        return total


@dataclass(frozen=True)
class DivisorClass:
    lattice: IntersectionLattice
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.lattice.rank:
            raise LatticeError("coefficient vector does not match the basis")

    def _same_lattice(self, other: "DivisorClass") -> None:
        if self.lattice != other.lattice:
            raise LatticeError("classes live on different lattices")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_lattice(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_lattice(other)
        return DivisorClass(self.lattice, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: int | Fraction) -> "DivisorClass":
        s = frac(scalar)
        return DivisorClass(self.lattice, tuple(s * a for a in self.coeffs))

    def dot(self, other: "DivisorClass") -> Fraction:
        self._same_lattice(other)
        return self.lattice.pairing(self.coeffs, other.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def coeff_map(self) -> dict[str, Fraction]:
        return {
            name: value for name, value in zip(self.lattice.basis, self.coeffs) if value != 0
        }

    def __str__(self) -> str:
        parts = []
        for name, value in self.coeff_map().items():
            if value == 1:
                parts.append(name)
            else:
                parts.append(f"{rat_str(value)}*{name}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class TrackedCurve:
    name: str
    cls: DivisorClass
    pa: Fraction
    irreducible: bool = True


@dataclass(frozen=True)
class ProvenanceStep:
    op: str
    args: str  # canonical JSON


def _canonical(args: dict) -> str:
    return json.dumps(args, sort_keys=True, separators=(",", ":"))


def _class_json(cls: DivisorClass) -> dict[str, str]:
    return {name: rat_str(v) for name, v in sorted(cls.coeff_map().items())}


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    lattice: IntersectionLattice
    canonical: DivisorClass
    chi: int
    tracked: tuple[TrackedCurve, ...]
    provenance: tuple[ProvenanceStep, ...]

    def __post_init__(self) -> None:
        if self.canonical.lattice != self.lattice:
            raise LatticeError("canonical class does not belong to the model lattice")
        for curve in self.tracked:
            if curve.cls.lattice != self.lattice:
                raise LatticeError(f"tracked curve {curve.name!r} lives on a foreign lattice")
        names = [c.name for c in self.tracked]
        if len(set(names)) != len(names):
            raise LatticeError("duplicate tracked-curve names")

    # -- class construction -------------------------------------------------

    def basis_class(self, name: str) -> DivisorClass:
        i = self.lattice.index(name)
        coeffs = tuple(frac(1 if j == i else 0) for j in range(self.lattice.rank))
        return DivisorClass(self.lattice, coeffs)

    def divisor(self, coeffs: Mapping[str, int | str | Fraction]) -> DivisorClass:
        vector = [frac(0)] * self.lattice.rank
        for name, value in coeffs.items():
            vector[self.lattice.index(name)] = frac(value)
        return DivisorClass(self.lattice, tuple(vector))

    def zero(self) -> DivisorClass:
        return DivisorClass(self.lattice, tuple([frac(0)] * self.lattice.rank))

    # -- tracked curves ------------------------------------------------------

    def curve(self, name: str) -> TrackedCurve:
        for c in self.tracked:
            if c.name == name:
                return c
        raise LatticeError(f"no tracked curve named {name!r}")

    def has_curve(self, name: str) -> bool:
        return any(c.name == name for c in self.tracked)

    def curve_class(self, name: str) -> DivisorClass:
        return self.curve(name).cls

    # -- numerics ------------------------------------------------------------

    def intersect(self, a: DivisorClass, b: DivisorClass) -> Fraction:
        if a.lattice != self.lattice or b.lattice != self.lattice:
            raise LatticeError("classes do not belong to this model")
        return a.dot(b)

    def adjunction_pa(self, d: DivisorClass) -> Fraction:
        return 1 + (self.intersect(d, d) + self.intersect(self.canonical, d)) / 2

    def rr_chi(self, d: DivisorClass) -> Fraction:
        return self.chi + (self.intersect(d, d) - self.intersect(self.canonical, d)) / 2

    @property
    def k_squared(self) -> Fraction:
        return self.canonical.dot(self.canonical)

    @property
    def c2(self) -> Fraction:
        """Topological Euler number imposed by Noether's identity, 12*chi - K^2."""
        return 12 * self.chi - self.k_squared

    def _with(self, **changes) -> "SurfaceModel":
        return replace(self, **changes)


# ---------------------------------------------------------------------------
# Creation
# ---------------------------------------------------------------------------


def make_p2() -> SurfaceModel:
    """The projective plane: basis {H}, H^2 = 1, K = -3H, chi = 1."""
    lattice = IntersectionLattice(("H",), ((frac(1),),))
    canonical = DivisorClass(lattice, (frac(-3),))
    step = ProvenanceStep("p2", _canonical({}))
    return SurfaceModel("P2", lattice, canonical, 1, (), (step,))


def make_hirzebruch(n: int) -> SurfaceModel:
    """The ruled surface F_n: basis {Cinf, Gamma}, Cinf^2 = -n, K = -2Cinf-(n+2)Gamma."""
    if not isinstance(n, int) or n < 0:
        raise ValueError("a Hirzebruch surface needs a nonnegative integer twist")
    lattice = IntersectionLattice(
        ("Cinf", "Gamma"),
        ((frac(-n), frac(1)), (frac(1), frac(0))),
    )
    canonical = DivisorClass(lattice, (frac(-2), frac(-n - 2)))
    section = TrackedCurve("Cinf", DivisorClass(lattice, (frac(1), frac(0))), frac(0))
    step = ProvenanceStep("hirzebruch", _canonical({"n": n}))
    return SurfaceModel(f"F{n}", lattice, canonical, 1, (section,), (step,))


def declare_surface(
    name: str,
    basis: Sequence[str],
    gram: Mapping[str, Mapping[str, int | str | Fraction]] | Sequence[Sequence[int | str | Fraction]],
    canonical: Mapping[str, int | str | Fraction],
    chi: int,
    tracked: Sequence[tuple[str, Mapping[str, int | str | Fraction]]] = (),
) -> SurfaceModel:
    """Assemble a surface model from explicit data (replayable creation step).

    ``gram`` may be a full row list or a sparse symmetric mapping; omitted
    entries are zero.  Tracked curves get their genus from adjunction.
    """
    basis = tuple(basis)
    n = len(basis)
    rows = [[frac(0)] * n for _ in range(n)]
    if isinstance(gram, Mapping):
        for a, row in gram.items():
            for b, value in row.items():
                i, j = basis.index(a), basis.index(b)
                rows[i][j] = frac(value)
                rows[j][i] = frac(value)
    else:
        rows = [[frac(x) for x in row] for row in gram]
    lattice = IntersectionLattice(basis, tuple(tuple(row) for row in rows))
    model = SurfaceModel(
        name,
        lattice,
        DivisorClass(lattice, tuple(frac(canonical.get(b, 0)) for b in basis)),
        chi,
        (),
        (
            ProvenanceStep(
                "declare",
                _canonical(
                    {
                        "name": name,
                        "basis": list(basis),
                        "gram": [[rat_str(x) for x in row] for row in rows],
                        "canonical": {b: rat_str(frac(v)) for b, v in sorted(canonical.items())},
                        "chi": chi,
                        "tracked": [
                            [cname, {k: rat_str(frac(v)) for k, v in sorted(coeffs.items())}]
                            for cname, coeffs in tracked
                        ],
                    }
                ),
            ),
        ),
    )
    for cname, coeffs in tracked:
        model = _track_quiet(model, cname, model.divisor(coeffs))
    return model


def _track_quiet(model: SurfaceModel, name: str, cls: DivisorClass) -> SurfaceModel:
    pa = model.adjunction_pa(cls)
    _require_genus(name, pa)
    curve = TrackedCurve(name, cls, pa)
    return model._with(tracked=model.tracked + (curve,))


def _require_genus(name: str, pa: Fraction) -> None:
    if pa.denominator != 1 or pa < 0:
        raise LatticeError(
            f"curve {name!r} would have arithmetic genus {rat_str(pa)};"
            " an irreducible curve needs a nonnegative integer"
        )


def track(
    model: SurfaceModel,
    name: str,
    coeffs: Mapping[str, int | str | Fraction],
    irreducible: bool = True,
) -> SurfaceModel:
    """Give a name to a class and start tracking it as a curve."""
    if model.has_curve(name):
        raise LatticeError(f"curve name {name!r} already tracked")
    cls = model.divisor(coeffs)
    pa = model.adjunction_pa(cls)
    if irreducible:
        _require_genus(name, pa)
    curve = TrackedCurve(name, cls, pa, irreducible)
    step = ProvenanceStep(
        "track",
        _canonical(
            {
                "name": name,
                "coeffs": {k: rat_str(frac(v)) for k, v in sorted(coeffs.items())},
                "irreducible": irreducible,
            }
        ),
    )
    return model._with(tracked=model.tracked + (curve,), provenance=model.provenance + (step,))


def rename_curve(model: SurfaceModel, old: str, new: str) -> SurfaceModel:
    curve = model.curve(old)
    if model.has_curve(new):
        raise LatticeError(f"curve name {new!r} already tracked")
    step = ProvenanceStep("rename_curve", _canonical({"old": old, "new": new}))
    tracked = tuple(
        TrackedCurve(new, c.cls, c.pa, c.irreducible) if c.name == old else c
        for c in model.tracked
    )
    return model._with(tracked=tracked, provenance=model.provenance + (step,))


def untrack(model: SurfaceModel, names: Iterable[str]) -> SurfaceModel:
    names = list(names)
    for name in names:
        model.curve(name)
    step = ProvenanceStep("untrack", _canonical({"names": sorted(names)}))
    return model._with(
        tracked=tuple(c for c in model.tracked if c.name not in names),
        provenance=model.provenance + (step,),
    )


# ---------------------------------------------------------------------------
# Spec-level wrappers
# ---------------------------------------------------------------------------


def intersect(model: SurfaceModel, a: DivisorClass, b: DivisorClass) -> Fraction:
    return model.intersect(a, b)


def adjunction_pa(model: SurfaceModel, d: DivisorClass) -> Fraction:
    return model.adjunction_pa(d)


def rr_chi(model: SurfaceModel, d: DivisorClass) -> Fraction:
    return model.rr_chi(d)


# ---------------------------------------------------------------------------
# Blow-up
# ---------------------------------------------------------------------------


def blow_up(
    model: SurfaceModel,
    center: Mapping[str, int] | None = None,
    exceptional: str = "G",
    name: str | None = None,
) -> SurfaceModel:
    """Blow up one point; ``center`` lists tracked curves with their multiplicity there.

    The lattice gains an orthogonal (-1) class, the canonical class gains it,
    chi is unchanged, and each incident curve is replaced by its strict
    transform with the usual genus drop m(m-1)/2.
    """
    center = dict(center or {})
    if exceptional in model.lattice.basis:
        raise LatticeError(f"basis name {exceptional!r} already taken")
    for cname, mult in center.items():
        model.curve(cname)
        if not isinstance(mult, int) or mult < 0:
            raise ValueError(f"multiplicity at the centre must be a nonnegative integer, got {mult!r}")
    old_rank = model.lattice.rank
    basis = model.lattice.basis + (exceptional,)
    gram = tuple(
        tuple(list(row) + [frac(0)]) for row in model.lattice.gram
    ) + (tuple([frac(0)] * old_rank + [frac(-1)]),)
    lattice = IntersectionLattice(basis, gram)

    def pullback(cls: DivisorClass) -> DivisorClass:
        return DivisorClass(lattice, cls.coeffs + (frac(0),))

    g_class = DivisorClass(lattice, tuple([frac(0)] * old_rank) + (frac(1),))
    canonical = pullback(model.canonical) + g_class
    new_model = SurfaceModel(
        name or f"blow-up of {model.name}",
        lattice,
        canonical,
        model.chi,
        (),
        model.provenance
        + (
            ProvenanceStep(
                "blow_up",
                _canonical(
                    {
                        "center": {k: center[k] for k in sorted(center)},
                        "exceptional": exceptional,
                        "name": name,
                    }
                ),
            ),
        ),
    )
    curves: list[TrackedCurve] = []
    for curve in model.tracked:
        mult = center.get(curve.name, 0)
        cls = pullback(curve.cls) - mult * g_class
        pa = new_model.adjunction_pa(cls)
        expected = curve.pa - Fraction(mult * (mult - 1), 2)
        if pa != expected:
            raise LatticeError(f"strict-transform genus of {curve.name!r} is inconsistent")
        if curve.irreducible:
            _require_genus(curve.name, pa)
        curves.append(TrackedCurve(curve.name, cls, pa, curve.irreducible))
    curves.append(TrackedCurve(exceptional, g_class, frac(0)))
    return new_model._with(tracked=tuple(curves))


# ---------------------------------------------------------------------------
# Double cover
# ---------------------------------------------------------------------------


def double_cover(
    model: SurfaceModel,
    half_branch: DivisorClass,
    branch_components: Sequence[str] = (),
    name: str | None = None,
) -> SurfaceModel:
    """Double cover with branch in |2L|, modelled before resolving branch singularities.

    Pulled-back classes pair at twice the downstairs value; a branch component
    B acquires a reduced preimage with class (1/2) * pullback(B).  The new
    canonical class is the pullback of K + L and chi doubles plus L.(L+K)/2.
    """
    if half_branch.lattice != model.lattice:
        raise LatticeError("half-branch class does not belong to the model")
    total = model.zero()
    for cname in branch_components:
        total = total + model.curve_class(cname)
    residual = 2 * half_branch - total
    if any(x < 0 for x in residual.coeffs):
        raise ValueError("branch components exceed twice the half-branch class")

    chi_shift = half_branch.dot(half_branch + model.canonical) / 2
    chi = 2 * model.chi + chi_shift
    if chi.denominator != 1:
        raise LatticeError("double cover has non-integral holomorphic Euler characteristic")

    basis = tuple(f"{b}_pb" for b in model.lattice.basis)
    gram = tuple(tuple(2 * x for x in row) for row in model.lattice.gram)
    lattice = IntersectionLattice(basis, gram)

    def pullback(cls: DivisorClass) -> DivisorClass:
        return DivisorClass(lattice, cls.coeffs)

    canonical = pullback(model.canonical) + pullback(half_branch)
    new_model = SurfaceModel(
        name or f"double cover of {model.name}",
        lattice,
        canonical,
        int(chi),
        (),
        model.provenance
        + (
            ProvenanceStep(
                "double_cover",
                _canonical(
                    {
                        "half_branch": _class_json(half_branch),
                        "branch_components": sorted(branch_components),
                        "name": name,
                    }
                ),
            ),
        ),
    )
    curves: list[TrackedCurve] = []
    branch_set = set(branch_components)
    for curve in model.tracked:
        if curve.name in branch_set:
            cls = Fraction(1, 2) * pullback(curve.cls)
            cname = f"{curve.name}_half"
        else:
            cls = pullback(curve.cls)
            cname = f"{curve.name}_pre"
        curves.append(TrackedCurve(cname, cls, new_model.adjunction_pa(cls), curve.irreducible))
    return new_model._with(tracked=tuple(curves))


# ---------------------------------------------------------------------------
# Attaching a resolution (inverse of contraction)
# ---------------------------------------------------------------------------


def attach_resolution(
    model: SurfaceModel,
    config: CurveConfiguration,
    through: Mapping[str, Mapping[str, int]] | None = None,
    name: str | None = None,
) -> SurfaceModel:
    """Replace a singular point by its known resolution configuration.

    The configuration joins the lattice orthogonally to all pulled-back
    classes.  For a minimally elliptic point the canonical class loses the
    fundamental cycle and chi drops by one; for a crepant rational (ADE) point
    both stay.  ``through`` lists, per tracked curve passing through the
    point, the multiplicities against each new component; those curves are
    replaced by their strict transforms.
    """
    through = {k: dict(v) for k, v in (through or {}).items()}
    for comp in config.components:
        if comp.name in model.lattice.basis:
            raise LatticeError(f"basis name {comp.name!r} already taken")
    for cname, mults in through.items():
        model.curve(cname)
        for comp_name, mult in mults.items():
            config.component(comp_name)
            if not isinstance(mult, int) or mult < 0:
                raise ValueError("strict-transform multiplicities must be nonnegative integers")

    classification = classify_minimally_elliptic(config)
    if classification.kind == "minimally-elliptic":
        chi = model.chi - 1
        discrepancy = dict(zip(config.names, classification.cycle.coeffs))
    elif classification.kind == "rational":
        if any(k != 0 for k in config.canonical_degrees()):
            raise ContractionError(
                "rational configuration is not crepant; only ADE points are supported"
            )
        chi = model.chi
        discrepancy = {n: 0 for n in config.names}
    else:
        raise ContractionError("resolution configuration is neither rational nor minimally elliptic")

    old_rank = model.lattice.rank
    config_gram = config.gram()
    k = len(config.components)
    basis = model.lattice.basis + config.names
    rows = [list(row) + [frac(0)] * k for row in model.lattice.gram]
    for i in range(k):
        rows.append([frac(0)] * old_rank + list(config_gram[i]))
    lattice = IntersectionLattice(basis, tuple(tuple(row) for row in rows))

    def pullback(cls: DivisorClass) -> DivisorClass:
        return DivisorClass(lattice, cls.coeffs + tuple([frac(0)] * k))

    def component_class(comp_name: str) -> DivisorClass:
        i = old_rank + config.names.index(comp_name)
        return DivisorClass(lattice, tuple(frac(1 if j == i else 0) for j in range(old_rank + k)))

    canonical = pullback(model.canonical)
    for comp_name, coefficient in discrepancy.items():
        canonical = canonical - coefficient * component_class(comp_name)

    new_model = SurfaceModel(
        name or f"resolution over {model.name}",
        lattice,
        canonical,
        chi,
        (),
        model.provenance
        + (
            ProvenanceStep(
                "attach_resolution",
                _canonical(
                    {
                        "config": _config_args(config),
                        "through": {
                            c: {k2: v2 for k2, v2 in sorted(m.items())}
                            for c, m in sorted(through.items())
                        },
                        "name": name,
                    }
                ),
            ),
        ),
    )
    curves: list[TrackedCurve] = []
    for curve in model.tracked:
        cls = pullback(curve.cls)
        for comp_name, mult in sorted(through.get(curve.name, {}).items()):
            cls = cls - mult * component_class(comp_name)
        pa = new_model.adjunction_pa(cls)
        if curve.irreducible:
            _require_genus(curve.name, pa)
        curves.append(TrackedCurve(curve.name, cls, pa, curve.irreducible))
    for comp in config.components:
        cls = component_class(comp.name)
        pa = new_model.adjunction_pa(cls)
        if pa != comp.pa:
            raise LatticeError(
                f"declared genus of {comp.name!r} disagrees with adjunction on the new model"
            )
        curves.append(TrackedCurve(comp.name, cls, pa))
    return new_model._with(tracked=tuple(curves))


def _config_args(config: CurveConfiguration) -> dict:
    from .configurations import config_to_json

    return config_to_json(config)


# ---------------------------------------------------------------------------
# Splitting a preimage curve
# ---------------------------------------------------------------------------


def split_curve(
    model: SurfaceModel,
    curve_name: str,
    into: tuple[str, str],
    self_int: int | str | Fraction,
    pairings: Mapping[str, int | str | Fraction] | None = None,
    name: str | None = None,
) -> SurfaceModel:
    """Split a tracked curve into two components exchanged by an involution.

    The first component joins the basis with the declared pairings; the second
    is the difference.  Symmetry is enforced: both halves must have the same
    self-intersection and nonnegative integral genus.
    """
    pairings = dict(pairings or {})
    original = model.curve(curve_name)
    first, second = into
    for fresh in into:
        if fresh in model.lattice.basis or model.has_curve(fresh):
            raise LatticeError(f"name {fresh!r} already in use")
    e_sq = frac(self_int)
    old_rank = model.lattice.rank
    pairing_vector = [frac(pairings.get(b, 0)) for b in model.lattice.basis]
    unknown = set(pairings) - set(model.lattice.basis)
    if unknown:
        raise LatticeError(f"pairings against unknown classes: {sorted(unknown)}")

    basis = model.lattice.basis + (first,)
    rows = [list(row) + [pairing_vector[i]] for i, row in enumerate(model.lattice.gram)]
    rows.append(pairing_vector + [e_sq])
    lattice = IntersectionLattice(basis, tuple(tuple(r) for r in rows))

    def extend(cls: DivisorClass) -> DivisorClass:
        return DivisorClass(lattice, cls.coeffs + (frac(0),))

    first_class = DivisorClass(lattice, tuple([frac(0)] * old_rank) + (frac(1),))
    second_class = extend(original.cls) - first_class
    if second_class.dot(second_class) != e_sq:
        raise LatticeError(
            "split halves have different self-intersections; the declared pairings"
            " are inconsistent with an exchanging involution"
        )
    new_model = SurfaceModel(
        name or model.name,
        lattice,
        extend(model.canonical),
        model.chi,
        (),
        model.provenance
        + (
            ProvenanceStep(
                "split_curve",
                _canonical(
                    {
                        "curve": curve_name,
                        "into": list(into),
                        "self_int": rat_str(e_sq),
                        "pairings": {k: rat_str(frac(v)) for k, v in sorted(pairings.items())},
                        "name": name,
                    }
                ),
            ),
        ),
    )
    curves: list[TrackedCurve] = []
    for curve in model.tracked:
        if curve.name == curve_name:
            continue
        cls = extend(curve.cls)
        curves.append(TrackedCurve(curve.name, cls, new_model.adjunction_pa(cls), curve.irreducible))
    for cname, cls in ((first, first_class), (second, second_class)):
        pa = new_model.adjunction_pa(cls)
        _require_genus(cname, pa)
        curves.append(TrackedCurve(cname, cls, pa))
    return new_model._with(tracked=tuple(curves))


# ---------------------------------------------------------------------------
# Contraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Contraction:
    model: SurfaceModel
    kind: str  # "blow-down" | "rational-double-point" | "minimally-elliptic"
    label: str
    cycle: tuple[tuple[str, int], ...]


def configuration_of(model: SurfaceModel, names: Sequence[str]) -> CurveConfiguration:
    """Assemble the abstract configuration of a set of tracked curves."""
    components = []
    for cname in names:
        curve = model.curve(cname)
        self_int = curve.cls.dot(curve.cls)
        if self_int.denominator != 1 or curve.pa.denominator != 1:
            raise ContractionError(f"curve {cname!r} has fractional invariants")
        components.append(Component(cname, int(self_int), int(curve.pa)))
    contacts = []
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            m = model.curve_class(a).dot(model.curve_class(b))
            if m == 0:
                continue
            if m.denominator != 1 or m < 0:
                raise ContractionError(f"curves {a!r}, {b!r} pair to {rat_str(m)}")
            contacts.append(Contact(a, b, int(m)))
    return CurveConfiguration(tuple(components), tuple(contacts))


def contract(
    model: SurfaceModel,
    names: Sequence[str],
    name: str | None = None,
) -> Contraction:
    """Contract a negative definite configuration of tracked curves.

    A single (-1) rational curve blows down smoothly.  An ADE configuration
    contracts to a rational double point (crepant, chi unchanged).  A
    minimally elliptic configuration contracts to an elliptic Gorenstein
    point: the canonical class downstairs pulls back to K + Z and chi grows by
    one.  Everything else is rejected.
    """
    names = list(names)
    if not names:
        raise ValueError("nothing to contract")
    config = configuration_of(model, names)
    if not is_negative_definite(config):
        raise ContractionError("configuration is not negative definite")

    classes = [model.curve_class(n) for n in names]
    cycle = fundamental_cycle(config)
    k_degrees = [model.intersect(model.canonical, c) for c in classes]

    if len(names) == 1 and config.components[0].self_int == -1 and config.components[0].pa == 0:
        kind, label = "blow-down", "smooth point"
        chi = model.chi
    else:
        classification = classify_minimally_elliptic(config)
        if classification.kind == "rational":
            if any(d != 0 for d in k_degrees):
                raise ContractionError(
                    "rational configuration is not crepant; contraction would not be Gorenstein"
                )
            entry = match_catalog(config)
            kind, label = "rational-double-point", entry.label if entry else "rational"
            chi = model.chi
        elif classification.kind == "minimally-elliptic":
            z_class = model.zero()
            for coefficient, cls in zip(cycle.coeffs, classes):
                z_class = z_class + coefficient * cls
            for cname, cls in zip(names, classes):
                if model.intersect(model.canonical + z_class, cls) != 0:
                    raise ContractionError(
                        f"K + Z is not orthogonal to {cname!r}; the contraction is not Gorenstein"
                    )
            kind = "minimally-elliptic"
            label = f"elliptic of degree {classification.degree}"
            chi = model.chi + 1
        else:
            raise ContractionError("configuration is neither rational nor minimally elliptic")

    # Orthogonal-complement projection.
    gram_config = [[a.dot(b) for b in classes] for a in classes]

    def project(d: DivisorClass) -> DivisorClass:
        rhs = [d.dot(c) for c in classes]
        x = solve(gram_config, rhs)
        out = d
        for coefficient, cls in zip(x, classes):
            out = out - coefficient * cls
        return out

    projected = [project(model.basis_class(b)) for b in model.lattice.basis]
    kept: list[int] = []
    for i in range(len(projected)):
        candidate = [list(projected[j].coeffs) for j in kept + [i]]
        if rank(candidate) == len(kept) + 1:
            kept.append(i)
    new_basis = tuple(model.lattice.basis[i] for i in kept)
    columns = [list(projected[i].coeffs) for i in kept]
    gram = tuple(
        tuple(projected[i].dot(projected[j]) for j in kept) for i in kept
    )
    lattice = IntersectionLattice(new_basis, gram)

    def express(d: DivisorClass) -> DivisorClass:
        coords = solve_in_span(columns, list(project(d).coeffs))
        return DivisorClass(lattice, tuple(coords))

    canonical = express(model.canonical)
    new_model = SurfaceModel(
        name or f"contraction of {model.name}",
        lattice,
        canonical,
        chi,
        (),
        model.provenance
        + (
            ProvenanceStep(
                "contract",
                _canonical({"curves": list(names), "name": name}),
            ),
        ),
    )
    curves = []
    contracted = set(names)
    for curve in model.tracked:
        if curve.name in contracted:
            continue
        cls = express(curve.cls)
        if kind != "blow-down":
            degree = new_model.intersect(canonical, cls)
            if degree.denominator != 1:
                raise ContractionError(
                    f"K of the contraction pairs fractionally with {curve.name!r};"
                    " the model would not be Gorenstein"
                )
        curves.append(
            TrackedCurve(curve.name, cls, new_model.adjunction_pa(cls), curve.irreducible)
        )
    result = new_model._with(tracked=tuple(curves))
    return Contraction(result, kind, label, tuple(zip(names, cycle.coeffs)))


# ---------------------------------------------------------------------------
# Nakai-Moishezon relative to the tracked curves
# ---------------------------------------------------------------------------


def nakai_check(model: SurfaceModel, d: DivisorClass) -> str:
    """"ample", "nef-not-ample" or "not-nef", judged against the tracked list."""
    products = [model.intersect(d, d)] + [
        model.intersect(d, c.cls) for c in model.tracked
    ]
    if all(p > 0 for p in products):
        return "ample"
    if all(p >= 0 for p in products):
        return "nef-not-ample"
    return "not-nef"


# ---------------------------------------------------------------------------
# Provenance replay
# ---------------------------------------------------------------------------


def _replay_declare(_: SurfaceModel | None, args: dict) -> SurfaceModel:
    return declare_surface(
        args["name"],
        args["basis"],
        [[frac(x) for x in row] for row in args["gram"]],
        {k: frac(v) for k, v in args["canonical"].items()},
        args["chi"],
        [(cname, {k: frac(v) for k, v in coeffs.items()}) for cname, coeffs in args["tracked"]],
    )


def _replay_attach(model: SurfaceModel, args: dict) -> SurfaceModel:
    from .configurations import config_from_json

    return attach_resolution(
        model, config_from_json(args["config"]), args["through"], args["name"]
    )


_REPLAY: dict[str, Callable[[SurfaceModel | None, dict], SurfaceModel]] = {
    "p2": lambda _m, _a: make_p2(),
    "hirzebruch": lambda _m, a: make_hirzebruch(a["n"]),
    "declare": _replay_declare,
    "track": lambda m, a: track(m, a["name"], {k: frac(v) for k, v in a["coeffs"].items()}, a["irreducible"]),
    "rename_curve": lambda m, a: rename_curve(m, a["old"], a["new"]),
    "untrack": lambda m, a: untrack(m, a["names"]),
    "blow_up": lambda m, a: blow_up(m, a["center"], a["exceptional"], a["name"]),
    "double_cover": lambda m, a: double_cover(
        m, m.divisor({k: frac(v) for k, v in a["half_branch"].items()}), a["branch_components"], a["name"]
    ),
    "attach_resolution": _replay_attach,
    "split_curve": lambda m, a: split_curve(
        m,
        a["curve"],
        tuple(a["into"]),
        frac(a["self_int"]),
        {k: frac(v) for k, v in a["pairings"].items()},
        a["name"],
    ),
    "contract": lambda m, a: contract(m, a["curves"], a["name"]).model,
}


def replay(provenance: Sequence[ProvenanceStep]) -> SurfaceModel:
    """Re-run a provenance log and return the resulting model."""
    model: SurfaceModel | None = None
    for step in provenance:
        if step.op not in _REPLAY:
            raise ValueError(f"unknown provenance op {step.op!r}")
        model = _REPLAY[step.op](model, json.loads(step.args))
    if model is None:
        raise ValueError("empty provenance")
    return model
