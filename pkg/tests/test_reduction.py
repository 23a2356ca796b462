import itertools

import pytest

from uniqcover import DISK, SQUARE, Point, brute_force, covers, evaluate
from uniqcover.errors import (
    FormulaSyntaxError,
    LayoutCrossingError,
    RoutingFailureError,
    ThresholdNotMetError,
    VariableDegreeError,
)
from uniqcover.formula import (
    Clause,
    LaidOutFormula,
    Literal,
    format_formula,
    parse_formula,
)
from uniqcover.reduction import (
    build_instance,
    certificate_json,
    decode_assignment,
    roundtrip_check,
    validate_gadgets,
)

SINGLE = "p vr3sat 3 1\nc L 0 1 -2 3\n"
TWO_LR = "p vr3sat 3 2\nc L 0 1 -2 3\nc R 0 -1 2 -3\n"


def test_parse_basic():
    f = parse_formula("p vr3sat 3 1\nc L 0 1 -2 -3\n")
    assert f.n_vars == 3 and f.n_clauses == 1
    cl = f.clauses[0]
    assert cl.side == "L" and cl.level == 0
    assert [(-1) ** lit.neg * lit.var for lit in cl.literals] == [1, -2, -3]
    assert parse_formula(format_formula(f)) == f


def test_parse_rejects_degree_violation():
    with pytest.raises(VariableDegreeError):
        parse_formula("p vr3sat 1 2\nc L 0 1 1 1\nc R 0 -1 -1 -1\n")


def test_parse_rejects_crossing_intervals():
    with pytest.raises(LayoutCrossingError):
        parse_formula("p vr3sat 4 2\nc L 0 1 1 3\nc L 1 2 2 4\n")


def test_parse_rejects_identical_same_side_triples():
    # Two same-side claws on the same three variables cannot both reach the
    # middle variable without a crossing.
    with pytest.raises(LayoutCrossingError):
        parse_formula("p vr3sat 3 2\nc L 0 1 2 3\nc L 1 1 2 3\n")


def test_parse_syntax_errors():
    for text in ["", "p cnf 3 1\nc L 0 1 2 3\n",
                 "p vr3sat 3 2\nc L 0 1 2 3\n",
                 "p vr3sat 3 1\nc X 0 1 2 3\n",
                 "p vr3sat 3 1\nc L 0 1 2\n",
                 "p vr3sat 3 1\nc L 0 1 2 0\n"]:
        with pytest.raises(FormulaSyntaxError):
            parse_formula(text)


def test_layout_crossing_matches_interval_oracle():
    """Same-side pairs must be accepted exactly when their intervals are
    disjoint, endpoint-sharing without containment, or properly nested with
    the inner clause at the smaller level and no outer attachment strictly
    inside."""
    def interval_oracle(c1, c2):
        (a, b), (c, d) = c1.interval, c2.interval
        if b < c or d < a:
            return True
        if a < c < b < d or c < a < d < b:
            return False
        one_in_two = c <= a and b <= d
        two_in_one = a <= c and d <= b
        if not (one_in_two or two_in_one):
            return True  # endpoint sharing only
        inner, outer = (c1, c2) if (one_in_two and not two_in_one) else (c2, c1)
        if one_in_two and two_in_one:
            inner, outer = (c1, c2) if c1.level < c2.level else (c2, c1)
        if inner.level >= outer.level:
            return False
        lo, hi = inner.interval
        return all(not (lo < lit.var < hi) for lit in outer.literals)

    triples = list(itertools.combinations_with_replacement([1, 2, 3, 4], 3))
    cases = 0
    for t1 in triples:
        for t2 in triples:
            for lv1, lv2 in [(0, 0), (0, 1), (1, 0)]:
                c1 = Clause(tuple(Literal(v, False) for v in t1), "L", lv1)
                c2 = Clause(tuple(Literal(v, False) for v in t2), "L", lv2)
                counts = {}
                for v in t1 + t2:
                    counts[v] = counts.get(v, 0) + 1
                if max(counts.values()) > 3:
                    continue
                formula = LaidOutFormula(4, (c1, c2))
                want = interval_oracle(c1, c2)
                try:
                    formula.validate()
                    got = True
                except LayoutCrossingError:
                    got = False
                assert got == want, (t1, t2, lv1, lv2)
                cases += 1
    assert cases > 100


@pytest.mark.parametrize("shape", [DISK, SQUARE])
def test_build_counts_and_validation(shape):
    f = parse_formula(TWO_LR)
    out = build_instance(f, shape)
    K = f.n_clauses
    assert all(len(c.point_indices) == K + 1 for c in out.clouds)
    assert out.instance.n == out.c * (K + 1) + K
    assert validate_gadgets(out) == []
    assert len(out.clause_points) == K
    for _, terms in out.clause_points:
        assert len(terms) == 3


@pytest.mark.parametrize("shape", [DISK, SQUARE])
def test_single_clause_roundtrip(shape):
    f = parse_formula(SINGLE)
    out = build_instance(f, shape)
    res = brute_force(out.instance, limit_m=48)
    assert res.optimum >= out.threshold
    assert roundtrip_check(f, shape)


def test_fault_injection_shifted_wire_object():
    f = parse_formula(SINGLE)
    out = build_instance(f, DISK)
    wire_obj = out.wires[0].objects[0]
    obj = out.instance.objects[wire_obj]
    out.instance.objects[wire_obj] = type(obj)(Point(obj.center.x + 2, obj.center.y))
    violations = validate_gadgets(out)
    assert any("coverers" in v for v in violations)


def test_fault_injection_duplicated_clause_point():
    f = parse_formula(SINGLE)
    out = build_instance(f, DISK)
    pi, _ = out.clause_points[0]
    out.instance.points.append(out.instance.points[pi])
    violations = validate_gadgets(out)
    assert any("point count" in v for v in violations)


@pytest.mark.parametrize("shape", [DISK, SQUARE])
def test_wire_alternation_two_selections(shape):
    """Within one wire (plus its variable object), exactly two selections
    cover all of the wire's clouds uniquely: one containing the variable
    object and one containing the start object."""
    f = parse_formula("p vr3sat 3 1\nc L 0 1 -2 3\n")
    out = build_instance(f, shape)
    inst = out.instance
    for wire in out.wires:
        local = [out.variable_objects[wire.variable - 1], *wire.objects,
                 *(wire.negation_pair or ())]
        cloud_pts = [inst.points[pi]
                     for ci in wire.cloud_indices
                     for pi in out.clouds[ci].point_indices]
        good = []
        for bits in range(1 << len(local)):
            chosen = [local[i] for i in range(len(local)) if (bits >> i) & 1]
            ok = all(sum(1 for o in chosen if covers(inst.objects[o], p)) == 1
                     for p in cloud_pts)
            if ok:
                good.append(set(chosen))
        assert len(good) == 2, f"wire {wire} has {len(good)} alternating selections"
        v_obj = out.variable_objects[wire.variable - 1]
        with_v = [g for g in good if v_obj in g]
        without_v = [g for g in good if v_obj not in g]
        assert len(with_v) == 1 and len(without_v) == 1
        assert wire.objects[0] in without_v[0]
        # terminal selected on exactly one side, matching the literal's sign
        term_with_v = wire.terminal in with_v[0]
        assert term_with_v == (not wire.negated)


@pytest.mark.parametrize("shape", [DISK, SQUARE])
def test_negation_pair_flips_clause_point_side(shape):
    pos = parse_formula("p vr3sat 3 1\nc L 0 1 2 3\n")
    neg = parse_formula("p vr3sat 3 1\nc L 0 -1 2 3\n")
    for formula, first_negated in ((pos, False), (neg, True)):
        out = build_instance(formula, shape)
        wire = next(w for w in out.wires if w.variable == 1)
        assert wire.negated == first_negated
        assert (wire.negation_pair is not None) == first_negated


@pytest.mark.parametrize("shape", [DISK, SQUARE])
def test_decode_assignment_roundtrip(shape):
    f = parse_formula(TWO_LR)
    out = build_instance(f, shape)
    res = brute_force(out.instance, limit_m=80)
    assignment = decode_assignment(out, res.best)
    assert len(assignment) == f.n_vars
    selected = set(res.best.selected)
    for v, obj in enumerate(out.variable_objects):
        assert assignment[v] == (obj in selected)


def test_decode_threshold_not_met():
    f = parse_formula(SINGLE)
    out = build_instance(f, DISK)
    bad = evaluate(out.instance, range(out.instance.m))  # everything doubled
    with pytest.raises(ThresholdNotMetError):
        decode_assignment(out, bad)


def test_unroutable_all_negated_triple_variable_clause():
    # Three same-side wires of one variable leave no clearance for a negation
    # pair on the middle lane; the builder reports this honestly.
    f = parse_formula("p vr3sat 2 1\nc L 0 -1 -1 -1\n")
    with pytest.raises(RoutingFailureError):
        build_instance(f, DISK)


def test_certificate_json_fields():
    import json

    f = parse_formula(SINGLE)
    out = build_instance(f, DISK)
    data = json.loads(certificate_json(out))
    assert data["threshold"] == out.threshold
    assert data["c"] == out.c
    assert len(data["clouds"]) == out.c
    assert len(data["wires"]) == 3
    assert all(set(w) >= {"variable", "clause", "objects", "negation_pair"}
               for w in data["wires"])


def test_size_stays_polynomial():
    f = parse_formula(TWO_LR)
    for shape in (DISK, SQUARE):
        out = build_instance(f, shape)
        # generous linear bound in total wire length at the fixed pitches
        assert out.instance.m <= 40 * (f.n_vars + 3 * f.n_clauses)
        assert out.instance.n == out.c * (f.n_clauses + 1) + f.n_clauses
