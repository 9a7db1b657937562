from __future__ import annotations

import random

import pytest

from unimodal.configurations import (
    CATALOG,
    EXCEPTIONAL_LABELS,
    BudgetVerdict,
    Component,
    Contact,
    CurveConfiguration,
    blown_up_fiber,
    catalog_entry,
    classify_minimally_elliptic,
    config_from_json,
    config_to_json,
    euler_budget,
    fiber_euler_number,
    fundamental_cycle,
    fundamental_cycle_brute_force,
    is_negative_definite,
    match_catalog,
    recognize_kodaira_fiber,
)


def cfg(comps, contacts=(), concurrent=()):
    return CurveConfiguration(
        tuple(Component(*c) for c in comps),
        tuple(Contact(*c) for c in contacts),
        tuple(frozenset(t) for t in concurrent),
    )


def test_negative_definite_examples():
    assert is_negative_definite(cfg([("E", -1, 0)]))
    i2 = cfg([("A", -2, 0), ("B", -2, 0)], [("A", "B", 2)])
    assert not is_negative_definite(i2)  # determinant 4 - 4 = 0
    e14 = cfg(
        [("E1", -3, 0), ("E2", -2, 0), ("E3", -2, 0)],
        [("E1", "E2", 1), ("E1", "E3", 1), ("E2", "E3", 1)],
    )
    assert is_negative_definite(e14)


def test_fundamental_cycle_e12_like():
    config = cfg([("E1", -1, 1)])
    z = fundamental_cycle(config)
    assert z.coeffs == (1,)
    assert z.self_int == -1
    assert z.canonical_degree == 1
    assert z.pa == 1


def test_fundamental_cycle_an_chain():
    config = cfg([("A1", -2, 0), ("A2", -2, 0), ("A3", -2, 0)], [("A1", "A2", 1), ("A2", "A3", 1)])
    z = fundamental_cycle(config)
    assert z.coeffs == (1, 1, 1)
    assert z.self_int == -2
    assert z.pa == 0
    oracle = fundamental_cycle_brute_force(config, bound=3)
    assert oracle is not None and oracle.coeffs == z.coeffs


def test_fundamental_cycle_w12():
    config = cfg([("E1", -3, 0), ("E2", -3, 0)], [("E1", "E2", 2, True)])
    z = fundamental_cycle(config)
    assert z.self_int == -2
    assert z.canonical_degree == 2
    assert z.pa == 1


def test_fundamental_cycle_requires_negative_definite():
    i2 = cfg([("A", -2, 0), ("B", -2, 0)], [("A", "B", 2)])
    with pytest.raises(ValueError):
        fundamental_cycle(i2)


def test_fundamental_cycle_nontrivial_coefficients():
    # star of four (-2)-curves: the centre enters the cycle twice
    config = cfg(
        [("C", -2, 0), ("L1", -2, 0), ("L2", -2, 0), ("L3", -2, 0)],
        [("C", "L1", 1), ("C", "L2", 1), ("C", "L3", 1)],
    )
    z = fundamental_cycle(config)
    assert dict(zip(config.names, z.coeffs)) == {"C": 2, "L1": 1, "L2": 1, "L3": 1}
    assert z.pairings() == [sum(r * c for r, c in zip(row, z.coeffs)) for row in config.gram()]
    oracle = fundamental_cycle_brute_force(config, bound=4)
    assert oracle.coeffs == z.coeffs


def test_classification_examples():
    e13 = cfg([("E1", -3, 0), ("E2", -2, 0)], [("E1", "E2", 2, True)])
    out = classify_minimally_elliptic(e13)
    assert out.kind == "minimally-elliptic"
    assert out.degree == 1

    z13 = cfg(
        [("E1", -4, 0), ("E2", -2, 0), ("E3", -2, 0)],
        [("E1", "E2", 1), ("E1", "E3", 1), ("E2", "E3", 1)],
    )
    out = classify_minimally_elliptic(z13)
    assert out.kind == "minimally-elliptic"
    assert out.degree == 2

    a2 = cfg([("A1", -2, 0), ("A2", -2, 0)], [("A1", "A2", 1)])
    assert classify_minimally_elliptic(a2).kind == "rational"


def test_catalog_invariants_recomputed():
    for entry in CATALOG:
        z2, kz, pa = entry.recomputed()
        assert z2 == entry.expected_self_int, entry.label
        assert kz == entry.expected_canonical_degree, entry.label
        if entry.label in EXCEPTIONAL_LABELS or entry.label.startswith("T"):
            assert pa == 1, entry.label
        else:
            assert pa == 0, entry.label


def test_catalog_exceptional_pairs():
    for label in ("E12", "E13", "E14"):
        entry = catalog_entry(label)
        assert (entry.expected_self_int, entry.expected_canonical_degree) == (-1, 1)
    for label in ("Z11", "Z12", "Z13", "W12", "W13"):
        entry = catalog_entry(label)
        assert (entry.expected_self_int, entry.expected_canonical_degree) == (-2, 2)


def test_match_catalog():
    e13 = cfg([("a", -3, 0), ("b", -2, 0)], [("a", "b", 2, True)])
    assert match_catalog(e13).label == "E13"
    w13 = cfg(
        [("x", -3, 0), ("y", -2, 0), ("z", -3, 0)],
        [("x", "y", 1), ("x", "z", 1), ("y", "z", 1)],
        [("x", "y", "z")],
    )
    assert match_catalog(w13).label == "W13"
    nothing = cfg(
        [("x", -2, 0), ("y", -2, 0), ("z", -2, 0)],
        [("x", "y", 1), ("x", "z", 1), ("y", "z", 1)],
        [("x", "y", "z")],
    )
    assert match_catalog(nothing) is None


def test_match_catalog_distinguishes_tangency():
    # contact 2 at two distinct points is an I2-shape, not the E13 tacnode
    two_points = cfg([("a", -3, 0), ("b", -2, 0)], [("a", "b", 2)])
    assert match_catalog(two_points) is None


def test_match_catalog_relabeling_invariance():
    rng = random.Random(3)
    for label in EXCEPTIONAL_LABELS:
        entry = catalog_entry(label)
        names = list(entry.config.names)
        shuffled = names[:]
        rng.shuffle(shuffled)
        relabeled = entry.config.relabel(dict(zip(names, [f"t{i}" for i in range(len(names))])))
        relabeled = relabeled.relabel(dict(zip(relabeled.names, shuffled)))
        assert match_catalog(relabeled).label == label


def test_blown_up_fiber_reproduces_catalog_graphs():
    for label in EXCEPTIONAL_LABELS:
        entry = catalog_entry(label)
        rebuilt = blown_up_fiber(entry.kodaira_fiber, entry.blow_ups)
        assert match_catalog(rebuilt).label == label


def test_recognize_kodaira_fibers():
    assert recognize_kodaira_fiber(cfg([("F", 0, 1)])) == "I0"
    assert recognize_kodaira_fiber(cfg([("F", 0, 1, "node")])) == "I1"
    assert recognize_kodaira_fiber(cfg([("F", 0, 1, "cusp")])) == "II"
    assert recognize_kodaira_fiber(cfg([("A", -2, 0), ("B", -2, 0)], [("A", "B", 2)])) == "I2"
    assert (
        recognize_kodaira_fiber(cfg([("A", -2, 0), ("B", -2, 0)], [("A", "B", 2, True)])) == "III"
    )
    triangle = cfg(
        [("A", -2, 0), ("B", -2, 0), ("C", -2, 0)],
        [("A", "B", 1), ("A", "C", 1), ("B", "C", 1)],
    )
    assert recognize_kodaira_fiber(triangle) == "I3"
    concurrent = cfg(
        [("A", -2, 0), ("B", -2, 0), ("C", -2, 0)],
        [("A", "B", 1), ("A", "C", 1), ("B", "C", 1)],
        [("A", "B", "C")],
    )
    assert recognize_kodaira_fiber(concurrent) == "IV"
    square = cfg(
        [("A", -2, 0), ("B", -2, 0), ("C", -2, 0), ("D", -2, 0)],
        [("A", "B", 1), ("B", "C", 1), ("C", "D", 1), ("D", "A", 1)],
    )
    assert recognize_kodaira_fiber(square) == "I4"


def test_recognize_rejects_non_fibers():
    assert recognize_kodaira_fiber(cfg([("E", -1, 0)])) is None
    assert recognize_kodaira_fiber(cfg([("E", -2, 0)])) is None
    chain = cfg([("A", -2, 0), ("B", -2, 0)], [("A", "B", 1)])
    assert recognize_kodaira_fiber(chain) is None


def test_recognition_relabeling_invariance():
    rng = random.Random(11)
    examples = {
        "I2": cfg([("A", -2, 0), ("B", -2, 0)], [("A", "B", 2)]),
        "III": cfg([("A", -2, 0), ("B", -2, 0)], [("A", "B", 2, True)]),
        "I3": cfg(
            [("A", -2, 0), ("B", -2, 0), ("C", -2, 0)],
            [("A", "B", 1), ("A", "C", 1), ("B", "C", 1)],
        ),
        "IV": cfg(
            [("A", -2, 0), ("B", -2, 0), ("C", -2, 0)],
            [("A", "B", 1), ("A", "C", 1), ("B", "C", 1)],
            [("A", "B", "C")],
        ),
    }
    for expected, config in examples.items():
        names = list(config.names)
        for _ in range(4):
            perm = names[:]
            rng.shuffle(perm)
            relabeled = config.relabel(dict(zip(names, [f"z{i}" for i in range(len(names))])))
            relabeled = relabeled.relabel(dict(zip(relabeled.names, perm)))
            assert recognize_kodaira_fiber(relabeled) == expected


def test_euler_numbers_and_budget():
    assert fiber_euler_number("I0") == 0
    assert fiber_euler_number("I1") == 1
    assert fiber_euler_number("II") == 2
    assert fiber_euler_number("III") == 3
    assert fiber_euler_number("IV") == 4
    assert euler_budget(["I4"], 24, "I1") == BudgetVerdict(True, 19)
    assert euler_budget([], 0) == BudgetVerdict(True, 0)
    assert euler_budget(["IV"], 3) == BudgetVerdict(False, -1)
    with pytest.raises(ValueError):
        euler_budget([], -1)


def test_laufer_matches_brute_force_random():
    rng = random.Random(2024)
    cases = 0
    while cases < 200:
        n = rng.randint(1, 4)
        comps = [(f"C{i}", -rng.randint(1, 5), rng.choice([0, 0, 0, 1])) for i in range(n)]
        contacts = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.6:
                    contacts.append((f"C{i}", f"C{j}", rng.randint(1, 2)))
        config = cfg(comps, contacts)
        if not is_negative_definite(config):
            continue
        cases += 1
        z = fundamental_cycle(config)
        assert all(p <= 0 for p in z.pairings())
        bound = max(4, *z.coeffs)
        oracle = fundamental_cycle_brute_force(config, bound=bound)
        assert oracle is not None
        assert z.coeffs == oracle.coeffs
    assert cases == 200


def test_config_json_roundtrip():
    for entry in CATALOG:
        data = config_to_json(entry.config)
        assert config_from_json(data) == entry.config
