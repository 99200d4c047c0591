import random

import pytest

from nmodal.filtration import (
    FiltrationKind,
    FiltrationResult,
    Partition,
    PreconditionError,
    emc4_filtration,
    filtration_result_to_dict,
    minimal_filtration,
    partition_worlds,
    quotient_subset,
    s04_filtration,
    transitive_filtration,
    verify_filtration,
)
from nmodal.formula import parse, subformula_closure
from nmodal.generate import random_kripke_frame, random_model, random_valuation
from nmodal.model import (
    Frame,
    FrameClass,
    Model,
    model_from_dict,
    satisfies_class,
    truth_set,
)

BOX_P = parse("[]p")
IDENTITY2 = Frame(2, (0, 1, 2, 3))


def discrete_model() -> Model:
    return Model(IDENTITY2, {"p": 1})


# ------------------------------------------------------------------ partition

def test_partition_worlds_merges_agreeing_worlds():
    m = Model(Frame(3, (0, 0, 0, 0, 0, 0, 0, 3)), {"p": 7})
    p = partition_worlds(m, subformula_closure(BOX_P))
    assert p.classes == (3, 4)
    assert p.representatives == (0, 2)
    assert [p.class_of(w) for w in range(3)] == [0, 0, 1]


def test_partition_worlds_discrete_when_set_separates():
    p = partition_worlds(discrete_model(), subformula_closure(BOX_P))
    assert p.classes == (1, 2)


def test_partition_single_class_when_set_is_blind():
    # q is not mentioned, so all worlds share the (p-free) signature
    m = Model(Frame(2, (0, 0, 0, 0)), {"q": 1})
    p = partition_worlds(m, subformula_closure(parse("p")))
    assert p.classes == (3,)


def test_partition_validation():
    with pytest.raises(ValueError, match="empty"):
        Partition(2, (0, 3))
    with pytest.raises(ValueError, match="overlap"):
        Partition(2, (3, 2))
    with pytest.raises(ValueError, match="cover"):
        Partition(2, (1,))
    with pytest.raises(ValueError, match="ordered"):
        Partition(2, (2, 1))
    with pytest.raises(ValueError, match="out of range"):
        Partition(2, (1, 2)).class_of(5)


def test_quotient_subset():
    p = Partition(3, (3, 4))
    assert quotient_subset(0, p) == 0
    assert quotient_subset(5, p) == 3  # meets both classes
    assert quotient_subset(2, p) == 1
    assert quotient_subset(4, p) == 2


def test_partition_size_bounds():
    rng = random.Random(20)
    s = subformula_closure(parse("[]p & q"))
    for _ in range(60):
        m = random_model(rng, rng.randint(1, 4), names=("p", "q"))
        p = partition_worlds(m, s)
        assert len(p.classes) <= min(m.frame.n, 1 << len(s))


# ------------------------------------------------------------- constructions

def test_minimal_filtration_frozen():
    m = Model(Frame(3, (0, 0, 0, 0, 0, 0, 0, 3)), {"p": 7})
    res = minimal_filtration(m, BOX_P)
    assert res.kind is FiltrationKind.MINIMAL
    assert res.model.frame.n == 2
    assert res.model.frame.box == (0, 0, 0, 1)
    assert res.model.valuation == {"p": 3}
    assert verify_filtration(m, res).ok


def test_filtration_kind_values():
    assert [k.value for k in FiltrationKind] == ["minimal", "transitive", "s04", "emc4"]


def test_filtration_pipeline_frozen_on_discrete_source():
    m = discrete_model()
    assert minimal_filtration(m, BOX_P).model.frame.box == (0, 1, 0, 0)
    assert transitive_filtration(m, BOX_P).model.frame.box == (0, 1, 0, 0)
    assert s04_filtration(m, BOX_P).model.frame.box == (0, 1, 0, 1)
    assert emc4_filtration(m, BOX_P).model.frame.box == (0, 1, 0, 1)


def test_accepts_formula_or_prebuilt_set():
    m = discrete_model()
    by_formula = minimal_filtration(m, BOX_P)
    by_set = minimal_filtration(m, subformula_closure(BOX_P))
    assert by_formula.model == by_set.model
    assert by_formula.subformulas == by_set.subformulas


def test_variables_outside_the_set_are_dropped():
    m = Model(IDENTITY2, {"p": 1, "r": 3})
    res = minimal_filtration(m, BOX_P)
    assert "r" not in res.model.valuation
    assert res.model.value("r") == 0


def test_transitive_filtration_contains_minimal():
    rng = random.Random(21)
    f = parse("[]p & [](p & q)")
    for _ in range(80):
        m = random_model(rng, rng.randint(1, 4), names=("p", "q"))
        lo = minimal_filtration(m, f).model.frame
        hi = transitive_filtration(m, f).model.frame
        assert all(a | b == b for a, b in zip(lo.box, hi.box))


def test_s04_preconditions():
    non_monotonic = Model(Frame(1, (1, 0)), {"p": 1})
    with pytest.raises(PreconditionError, match="monotonic precondition failed"):
        s04_filtration(non_monotonic, BOX_P)
    non_transitive = Model(Frame(2, (0, 0, 0, 1)), {"p": 3})
    with pytest.raises(PreconditionError, match="transitive precondition failed"):
        s04_filtration(non_transitive, BOX_P)


def test_emc4_preconditions():
    # transitive and monotonic, but []p & []q can fail where [](p & q) holds
    non_regular = Model(Frame(2, (0, 3, 3, 3)), {"p": 1})
    with pytest.raises(PreconditionError, match="regular precondition failed"):
        emc4_filtration(non_regular, BOX_P)


def test_precondition_error_is_value_error():
    assert issubclass(PreconditionError, ValueError)


def test_filtered_frames_land_in_their_class():
    rng = random.Random(22)
    f = parse("[][]p | q")
    names = ("p", "q")
    for _ in range(60):
        n = rng.randint(1, 4)
        fr = random_kripke_frame(rng, n, transitive=True, reflexive=True)
        m = Model(fr, random_valuation(rng, n, names))
        assert satisfies_class(s04_filtration(m, f).model.frame, FrameClass.S04)
    for _ in range(60):
        n = rng.randint(1, 4)
        fr = random_kripke_frame(rng, n, transitive=True)
        m = Model(fr, random_valuation(rng, n, names))
        assert satisfies_class(emc4_filtration(m, f).model.frame, FrameClass.EMC4)


# -------------------------------------------------------------- verification

def test_verify_checks_truth_of_every_member():
    rng = random.Random(23)
    f = parse("[](p & q) -> []p")
    s = subformula_closure(f)
    for _ in range(60):
        m = random_model(rng, rng.randint(1, 4), names=("p", "q"))
        res = minimal_filtration(m, s)
        report = verify_filtration(m, res)
        assert report.ok, report.to_dict()
        for member in s:
            assert truth_set(res.model, member) == quotient_subset(
                truth_set(m, member), res.partition
            )


def test_verify_flags_corrupted_box_entry():
    m = discrete_model()
    good = minimal_filtration(m, BOX_P)
    bad_frame = Frame(2, (0, 3, 0, 0))
    bad = FiltrationResult(
        Model(bad_frame, good.model.valuation), good.partition, good.subformulas, good.kind
    )
    report = verify_filtration(m, bad)
    assert not report.ok
    assert "[]p" in report.box_failures
    assert "[]p" in report.truth_failures
    assert report.worlds_ok
    assert not report.valuation_failures


def test_verify_flags_corrupted_valuation():
    m = discrete_model()
    good = minimal_filtration(m, BOX_P)
    bad = FiltrationResult(
        Model(good.model.frame, {"p": 0}), good.partition, good.subformulas, good.kind
    )
    report = verify_filtration(m, bad)
    assert not report.ok
    assert report.valuation_failures == ("p",)
    assert "p" in report.truth_failures


def test_verify_flags_wrong_partition():
    m = discrete_model()
    good = minimal_filtration(m, BOX_P)
    bad = FiltrationResult(good.model, Partition(2, (3,)), good.subformulas, good.kind)
    assert not verify_filtration(m, bad).worlds_ok


def test_report_to_dict_round_trip():
    m = discrete_model()
    report = verify_filtration(m, minimal_filtration(m, BOX_P))
    doc = report.to_dict()
    assert doc["ok"] is True
    assert doc["worlds_ok"] is True
    assert doc["box_failures"] == []


# ------------------------------------------------------------- serialization

def test_filtration_result_to_dict():
    m = Model(Frame(3, (0, 0, 0, 0, 0, 0, 0, 3)), {"p": 7})
    doc = filtration_result_to_dict(minimal_filtration(m, BOX_P))
    assert doc == {
        "worlds": 2,
        "box": [0, 0, 0, 1],
        "valuation": {"p": 3},
        "partition": [3, 4],
        "kind": "minimal",
    }
    # the model part reads back as a plain model document
    assert model_from_dict(doc).frame.box == (0, 0, 0, 1)
