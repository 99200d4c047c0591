"""Executable property suites: every structural lemma the package relies on,
runnable as one batch with a seed and a size level.

Each suite returns how many checks ran and which failed; a failure anywhere
is a bug in this package (or a disproof of the property), never expected
data.  The `quick` level is sized to finish in well under a minute; `full`
runs the sample counts the acceptance tests require.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .decide import Satisfiable, SearchConfig, UnknownUpToBound, bounded_sat
from .filtration import (
    emc4_filtration,
    minimal_filtration,
    partition_worlds,
    quotient_subset,
    s04_filtration,
    transitive_filtration,
    verify_filtration,
)
from .formula import parse, render, subformula_closure
from .generate import (
    random_formula,
    random_frame,
    random_kripke_frame,
    random_reflexive_frame,
    random_regular_frame,
    random_valuation,
    random_variable_free_text,
)
from .model import (
    AXIOMS,
    PROPERTY_CHECKS,
    PROPERTY_FOR_AXIOM,
    Frame,
    FrameClass,
    Model,
    holds_at,
    is_monotonic,
    is_reflexive,
    is_regular,
    is_transitive,
    subset_le,
    truth_set,
    valid_on_frame,
)
from .transform import (
    intersection_closure,
    intersection_closure_by_enumeration,
    supplement,
)

__all__ = ["SuiteParams", "SuiteResult", "QUICK", "FULL", "SUITE_NAMES", "run_suites"]


@dataclass(frozen=True)
class SuiteParams:
    supplement_frames: int
    commutation_samples: int
    iclose_frames: int
    filtration_pairs: int
    preserve_models: int
    pipeline_models: int
    sat_budget: int
    sat_min_examined: int
    fmp_formulas: int
    vf_cases: int
    nary_frames: int
    technical_models: int


FULL = SuiteParams(
    supplement_frames=10_000,
    commutation_samples=2_000,
    iclose_frames=500,
    filtration_pairs=1_000,
    preserve_models=500,
    pipeline_models=500,
    sat_budget=100_000,
    sat_min_examined=100_000,
    fmp_formulas=100,
    vf_cases=100,
    nary_frames=200,
    technical_models=250,
)

QUICK = SuiteParams(
    supplement_frames=1_200,
    commutation_samples=240,
    iclose_frames=60,
    filtration_pairs=120,
    preserve_models=60,
    pipeline_models=60,
    sat_budget=8_000,
    sat_min_examined=8_000,
    fmp_formulas=15,
    vf_cases=20,
    nary_frames=40,
    technical_models=40,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: tuple[str, ...]
    seconds: float

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
            "seconds": round(self.seconds, 3),
        }


_NAMES = ("p", "q", "r")


def _all_two_world_frames():
    for table in itertools.product(range(4), repeat=4):
        yield Frame(2, table)


def _suite_correspondence(params: SuiteParams, seed: int):
    """Axiom validity agrees with the frame property checker, exhaustively at
    two worlds (all 256 tables, all four axioms)."""
    checked = 0
    failures = []
    for fr in _all_two_world_frames():
        for name, axiom in AXIOMS.items():
            checked += 1
            prop = PROPERTY_FOR_AXIOM[name]
            if valid_on_frame(fr, axiom) != PROPERTY_CHECKS[prop](fr):
                failures.append(f"axiom {name} vs {prop} disagree on box={fr.box}")
    return checked, failures


def _random_transitive_frame(rng: random.Random, n: int) -> Frame:
    # Rejection-sample plain tables first so not every input is monotonic;
    # fall back on a relation-generated frame when nothing turns up.
    for _ in range(30):
        fr = random_frame(rng, n)
        if is_transitive(fr):
            return fr
    return random_kripke_frame(rng, n, transitive=True)


def _suite_supplementation(params: SuiteParams, seed: int):
    """Supplementation always yields a monotonic table and preserves
    reflexivity, transitivity and regularity."""
    rng = random.Random(seed)
    checked = 0
    failures = []
    sizes = (2, 3, 4)
    for i in range(params.supplement_frames):
        n = sizes[i % 3]
        fr = random_frame(rng, n)
        checked += 1
        if not is_monotonic(supplement(fr)):
            failures.append(f"supplement not monotonic: n={n} box={fr.box}")

    def gen_reflexive(rng, n):
        return random_reflexive_frame(rng, n)

    def gen_transitive(rng, n):
        return _random_transitive_frame(rng, n)

    def gen_regular(rng, n):
        if rng.random() < 0.5:
            return random_regular_frame(rng, n)
        return random_kripke_frame(rng, n)

    cases = (
        ("reflexive", is_reflexive, gen_reflexive),
        ("transitive", is_transitive, gen_transitive),
        ("regular", is_regular, gen_regular),
    )
    per_property = params.supplement_frames // 3
    for prop_name, check, gen in cases:
        for i in range(per_property):
            n = sizes[i % 3]
            fr = gen(rng, n)
            if not check(fr):  # generator fallback can miss; skip, not a failure
                continue
            checked += 1
            if not check(supplement(fr)):
                failures.append(f"supplement lost {prop_name}: n={n} box={fr.box}")
    return checked, failures


def _suite_commutation(params: SuiteParams, seed: int):
    """Supplementation and intersection closure commute: exhaustive at two
    worlds plus random samples at three and four."""
    rng = random.Random(seed)
    checked = 0
    failures = []

    def agree(fr: Frame) -> bool:
        return supplement(intersection_closure(fr)).box == intersection_closure(supplement(fr)).box

    for fr in _all_two_world_frames():
        checked += 1
        if not agree(fr):
            failures.append(f"orders disagree: n=2 box={fr.box}")
    for i in range(params.commutation_samples):
        n = 3 + i % 2
        fr = random_frame(rng, n)
        checked += 1
        if not agree(fr):
            failures.append(f"orders disagree: n={n} box={fr.box}")
    return checked, failures


def _suite_intersection_closure(params: SuiteParams, seed: int):
    """The fast superset-family route is regular and matches the brute-force
    decomposition enumeration on frames small enough to enumerate."""
    rng = random.Random(seed)
    checked = 0
    failures = []
    sizes = (1, 2, 3, 3)
    for i in range(params.iclose_frames):
        n = sizes[i % 4]
        fr = random_frame(rng, n)
        fast = intersection_closure(fr)
        checked += 1
        if not is_regular(fast):
            failures.append(f"closure not regular: n={n} box={fr.box}")
        if fast.box != intersection_closure_by_enumeration(fr).box:
            failures.append(f"fast route differs from enumeration: n={n} box={fr.box}")
    return checked, failures


def _random_source_model(rng: random.Random, n: int, style: int) -> Model:
    if style == 0:
        fr = random_frame(rng, n)
    elif style == 1:
        fr = random_kripke_frame(rng, n, transitive=True)
    else:
        fr = random_kripke_frame(rng, n, transitive=True, reflexive=True)
    return Model(fr, random_valuation(rng, n, _NAMES))


def _suite_filtration_clauses(params: SuiteParams, seed: int):
    """Every filtration kind whose preconditions hold satisfies all defining
    clauses and the truth-set equality, on random (model, formula) pairs."""
    rng = random.Random(seed)
    checked = 0
    failures = []
    for i in range(params.filtration_pairs):
        n = rng.randint(1, 5)
        m = _random_source_model(rng, n, i % 3)
        f = random_formula(rng, _NAMES, depth=4, max_modal_depth=3)
        fr = m.frame
        constructions = [minimal_filtration]
        if is_transitive(fr):
            constructions.append(transitive_filtration)
            if is_monotonic(fr):
                constructions.append(s04_filtration)
                if is_regular(fr):
                    constructions.append(emc4_filtration)
        for construct in constructions:
            checked += 1
            result = construct(m, f)
            report = verify_filtration(m, result)
            if not report.ok:
                failures.append(
                    f"{result.kind.value} filtration failed verification for "
                    f"{render(f)} on n={n} box={fr.box}"
                )
    return checked, failures


def _suite_filtration_preservation(params: SuiteParams, seed: int):
    """The transitive filtration keeps transitivity of transitive sources and
    reflexivity of reflexive sources."""
    rng = random.Random(seed)
    checked = 0
    failures = []
    for prop_name, check, kwargs in (
        ("transitivity", is_transitive, {"transitive": True}),
        ("reflexivity", is_reflexive, {"reflexive": True}),
    ):
        for _ in range(params.preserve_models):
            n = rng.randint(1, 5)
            fr = random_kripke_frame(rng, n, **kwargs)
            m = Model(fr, random_valuation(rng, n, _NAMES))
            f = random_formula(rng, _NAMES, depth=4, max_modal_depth=3)
            checked += 1
            result = transitive_filtration(m, f)
            if not check(result.model.frame):
                failures.append(f"transitive filtration lost {prop_name}: n={n}")
    return checked, failures


def _suite_class_pipelines(params: SuiteParams, seed: int):
    """End-to-end filtration pipelines land in their frame class and verify:
    emc4 output is monotonic, regular and transitive; s04 output is monotonic
    and transitive, plus reflexive for reflexive sources."""
    rng = random.Random(seed)
    checked = 0
    failures = []
    for i in range(params.pipeline_models):
        n = rng.randint(1, 5)
        reflexive = i % 2 == 1
        fr = random_kripke_frame(rng, n, transitive=True, reflexive=reflexive)
        m = Model(fr, random_valuation(rng, n, _NAMES))
        f = random_formula(rng, _NAMES, depth=4, max_modal_depth=3)

        checked += 1
        emc4 = emc4_filtration(m, f)
        out = emc4.model.frame
        if not (is_monotonic(out) and is_regular(out) and is_transitive(out)):
            failures.append(f"emc4 output missing class property: n={n}")
        elif not verify_filtration(m, emc4).ok:
            failures.append(f"emc4 output failed verification: n={n} f={render(f)}")

        checked += 1
        s04 = s04_filtration(m, f)
        out = s04.model.frame
        if not (is_monotonic(out) and is_transitive(out)):
            failures.append(f"s04 output missing class property: n={n}")
        elif reflexive and not is_reflexive(out):
            failures.append(f"s04 output lost reflexivity: n={n}")
        elif not verify_filtration(m, s04).ok:
            failures.append(f"s04 output failed verification: n={n} f={render(f)}")
    return checked, failures


def _suite_sat_sanity(params: SuiteParams, seed: int):
    """The bounded searcher finds the canonical nontransitive witness in class
    E quickly, and reports Unknown for the same formula in class E4 after a
    large candidate sweep."""
    failures = []
    f = parse("[]p & ~[][]p")

    start = time.perf_counter()
    found = bounded_sat(f, FrameClass.E, SearchConfig(max_worlds=2, seed=seed))
    elapsed = time.perf_counter() - start
    if not isinstance(found, Satisfiable):
        failures.append("no class-E witness found within two worlds")
    else:
        if found.model.frame.n > 2:
            failures.append("class-E witness larger than two worlds")
        if not holds_at(found.model, found.world, f):
            failures.append("class-E witness does not satisfy the formula")
    if elapsed >= 1.0:
        failures.append(f"class-E witness took {elapsed:.2f}s (budget 1s)")

    unknown = bounded_sat(
        f,
        FrameClass.E4,
        SearchConfig(max_worlds=3, sample_budget=params.sat_budget, seed=seed),
    )
    if not isinstance(unknown, UnknownUpToBound):
        failures.append("class E4 unexpectedly produced a witness for []p & ~[][]p")
        checked = 2
    else:
        if unknown.frames_examined < params.sat_min_examined:
            failures.append(
                f"only {unknown.frames_examined} candidates examined "
                f"(wanted at least {params.sat_min_examined})"
            )
        checked = unknown.frames_examined + 2
    return checked, failures


def _suite_small_witness_reduction(params: SuiteParams, seed: int):
    """Filtering a bounded-search witness through the subformula set yields a
    verified witness in the same class with at most 2^|set| worlds, and
    variable-free global truths stay globally true after filtering."""
    rng = random.Random(seed)
    checked = 0
    failures = []
    cfg = SearchConfig(max_worlds=2, exhaustive_limit=2, seed=seed)

    found = 0
    attempts = 0
    while found < params.fmp_formulas and attempts < params.fmp_formulas * 60:
        attempts += 1
        f = random_formula(rng, ("p", "q"), depth=3, max_modal_depth=2)
        s = subformula_closure(f)
        if len(s) > 4:
            continue
        result = bounded_sat(f, FrameClass.E4, cfg)
        if not isinstance(result, Satisfiable):
            continue
        found += 1
        checked += 1
        filtered = transitive_filtration(result.model, s)
        small = filtered.model
        world = filtered.partition.class_of(result.world)
        if not verify_filtration(result.model, filtered).ok:
            failures.append(f"filtered witness failed verification: {render(f)}")
        elif not is_transitive(small.frame):
            failures.append(f"filtered witness left class E4: {render(f)}")
        elif not holds_at(small, world, f):
            failures.append(f"filtered witness lost the formula: {render(f)}")
        elif small.frame.n > 2 ** len(s):
            failures.append(f"filtered witness exceeds the class-count bound: {render(f)}")
    if found < params.fmp_formulas:
        failures.append(
            f"only {found} of {params.fmp_formulas} formulas produced witnesses"
        )

    globally_true = 0
    trials = 0
    while globally_true < params.vf_cases and trials < params.vf_cases * 80:
        trials += 1
        n = rng.randint(1, 5)
        text = random_variable_free_text(rng, depth=3)
        psi = parse(text)
        if trials % 2:
            fr = random_kripke_frame(rng, n, transitive=True)
        else:
            fr = random_frame(rng, n)
        m = Model(fr, {})
        if truth_set(m, psi) != fr.full:
            continue
        globally_true += 1
        constructions = [minimal_filtration]
        if is_transitive(fr):
            constructions.append(transitive_filtration)
        for construct in constructions:
            checked += 1
            filtered = construct(m, psi)
            if truth_set(filtered.model, psi) != filtered.model.frame.full:
                failures.append(f"global truth did not survive filtering: {text}")
    if globally_true < params.vf_cases:
        failures.append(
            f"only {globally_true} of {params.vf_cases} variable-free global truths found"
        )
    return checked, failures


def _suite_nary_regularity(params: SuiteParams, seed: int):
    """Binary regularity extends to arbitrary finite meets; checked with
    triples on regular frames of up to three worlds."""
    rng = random.Random(seed)
    checked = 0
    failures = []
    for i in range(params.nary_frames):
        n = 1 + i % 3
        if i % 2:
            fr = random_regular_frame(rng, n)
        else:
            fr = random_kripke_frame(rng, n)
        if not is_regular(fr):
            failures.append(f"generator produced a non-regular frame: n={n}")
            continue
        box = fr.box
        for x1 in range(fr.size):
            for x2 in range(fr.size):
                for x3 in range(fr.size):
                    checked += 1
                    if not subset_le(box[x1] & box[x2] & box[x3], box[x1 & x2 & x3]):
                        failures.append(
                            f"triple meet escapes box: n={n} X=({x1},{x2},{x3})"
                        )
    return checked, failures


def _suite_truth_quotient_agreement(params: SuiteParams, seed: int):
    """For members of a subformula-closed set, equal truth sets and equal
    quotients are the same thing."""
    rng = random.Random(seed)
    checked = 0
    failures = []
    for i in range(params.technical_models):
        n = rng.randint(1, 5)
        m = _random_source_model(rng, n, i % 3)
        f = random_formula(rng, _NAMES, depth=4, max_modal_depth=3)
        s = subformula_closure(f)
        p = partition_worlds(m, s)
        members = s.formulas[:12]
        for a, b in itertools.combinations(members, 2):
            checked += 1
            same_truth = truth_set(m, a) == truth_set(m, b)
            same_quotient = quotient_subset(truth_set(m, a), p) == quotient_subset(
                truth_set(m, b), p
            )
            if same_truth != same_quotient:
                failures.append(
                    f"truth/quotient equality mismatch: {render(a)} vs {render(b)} n={n}"
                )
    return checked, failures


SUITES = (
    ("axiom-property-correspondence", _suite_correspondence),
    ("supplementation", _suite_supplementation),
    ("closure-commutation", _suite_commutation),
    ("intersection-closure", _suite_intersection_closure),
    ("filtration-clauses", _suite_filtration_clauses),
    ("transitive-filtration-preservation", _suite_filtration_preservation),
    ("class-pipeline-filtrations", _suite_class_pipelines),
    ("sat-search-sanity", _suite_sat_sanity),
    ("small-witness-reduction", _suite_small_witness_reduction),
    ("nary-regularity", _suite_nary_regularity),
    ("truth-quotient-agreement", _suite_truth_quotient_agreement),
)

SUITE_NAMES = tuple(name for name, _ in SUITES)


def run_suites(
    level: str = "quick", seed: int = 0, only: tuple[str, ...] | None = None
) -> list[SuiteResult]:
    """Run the property suites and return one result per suite.

    level is "quick" or "full"; `only` restricts to the named suites.
    """
    if level == "full":
        params = FULL
    elif level == "quick":
        params = QUICK
    else:
        raise ValueError(f"unknown level {level!r} (expected 'quick' or 'full')")
    results = []
    for name, fn in SUITES:
        if only is not None and name not in only:
            continue
        start = time.perf_counter()
        checked, failures = fn(params, seed)
        results.append(
            SuiteResult(
                name=name,
                passed=not failures,
                checked=checked,
                failures=tuple(failures[:5]),
                seconds=time.perf_counter() - start,
            )
        )
    return results
