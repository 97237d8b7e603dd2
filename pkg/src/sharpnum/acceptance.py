"""Acceptance criteria: the randomized and fixed suites behind ``selftest``.

Each criterion is a function returning a :class:`CriterionResult`; the test
suite and the CLI both run them, so the published contract and the checked
one are the same code.  All suites are deterministic (fixed seeds) and exact:
no tolerance appears anywhere because every comparison is a rational one.
"""

from __future__ import annotations

import contextlib
import io
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .gennum import (
    INF,
    GenNumber,
    Kind,
    Negligibility,
    alpha,
    chi,
    classify,
    equals,
    Equality,
    from_scalar,
    gen_abs,
    invert,
    is_negligible,
    is_qpositive,
    one,
    piecewise,
    PuiseuxSeries,
    Sign,
    unit_near,
    valuation,
    zero,
)
from .genpoly import (
    GenPolynomial,
    QuadraticVerdict,
    identity_check,
    quadratic_unique_solution_check,
    verify_counterexample,
)
from .ideals import (
    FgIdeal,
    QuatFgIdeal,
    annihilator_idempotent,
    contains,
    is_dense,
    is_whole_ring,
    norm_ideal,
    quat_annihilator,
    quat_is_dense,
)
from .indexsets import IndexSet, evens, full_set, odds
from .multipoly import (
    MultiPoly,
    ann_constant,
    constant,
    multi_poly,
    operator_obstruction,
    pmul,
    scale,
    variable,
    verify_annihilator,
)
from .quaternion import (
    GenQuaternion,
    idempotent_decompose,
    is_idempotent,
    norm_sq,
    qclassify,
    quat,
    qvaluation,
    scalar_quat,
    unit_near_quat,
)
from .randomgen import (
    random_gennum,
    random_partition,
    random_quat,
    random_rational,
    random_series,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    checked: int
    detail: str = ""


class _Suite:
    def __init__(self, number: int, name: str):
        self.number = number
        self.name = name
        self.checked = 0
        self.failures: list[str] = []

    def check(self, ok: bool, msg: str = ""):
        self.checked += 1
        if not ok:
            self.failures.append(msg or f"check #{self.checked}")

    def result(self) -> CriterionResult:
        detail = "; ".join(self.failures[:3])
        if len(self.failures) > 3:
            detail += f" (+{len(self.failures) - 3} more)"
        return CriterionResult(self.number, self.name, not self.failures,
                               self.checked, detail)


def _min_val(a, b):
    return a if a <= b else b


def criterion_01_ultrametric() -> CriterionResult:
    suite = _Suite(1, "ultrametric triangle inequality")
    rng = random.Random(101)
    for _ in range(1000):
        x, y, z = (random_gennum(rng) for _ in range(3))
        lhs = valuation(x - z).value
        rhs = _min_val(valuation(x - y).value, valuation(y - z).value)
        suite.check(lhs >= rhs, f"v(x-z)={lhs} < min={rhs}")
    return suite.result()


def criterion_02_alpha_norm_law() -> CriterionResult:
    suite = _Suite(2, "alpha_r norm multiplicativity")
    rng = random.Random(102)
    for _ in range(100):
        r = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        x = random_gennum(rng)
        got = valuation(alpha(r) * x)
        want = valuation(x)
        suite.check(got.value == r + want.value and got.exact == want.exact,
                    f"v(a_{r}*x)={got.value} != {r}+{want.value}")
    return suite.result()


def criterion_03_dichotomy() -> CriterionResult:
    suite = _Suite(3, "fundamental dichotomy with witnesses")
    rng = random.Random(103)
    window = Fraction(16)
    for _ in range(1000):
        x = random_gennum(rng, zero_prob=0.3)
        c = classify(x, window)
        suite.check(c.kind in (Kind.UNIT, Kind.ZERO_DIVISOR, Kind.ZERO),
                    f"exact element classified {c.kind}")
        if c.kind is Kind.UNIT:
            err = valuation(x * c.inverse - one())
            suite.check(err.value >= window, f"inverse error valuation {err.value}")
        elif c.kind is Kind.ZERO_DIVISOR:
            e = c.witness
            suite.check(is_negligible(x * e) is Negligibility.YES, "x*e != 0")
            suite.check(e * e == e and is_negligible(e) is Negligibility.NO,
                        "witness not a nonzero idempotent")
        else:
            suite.check(is_negligible(x) is Negligibility.YES, "zero branch wrong")
    return suite.result()


def criterion_04_unit_density() -> CriterionResult:
    suite = _Suite(4, "constructive density of units")
    rng = random.Random(104)
    ns = (Fraction(1), Fraction(4), Fraction(16))
    for _ in range(100):
        x = random_gennum(rng, zero_prob=0.5)
        for n in ns:
            u = unit_near(x, n)
            suite.check(classify(u).kind is Kind.UNIT, "unit_near not a unit")
            suite.check(valuation(u - x).value >= n, "unit_near too far")
    for _ in range(100):
        x = random_quat(rng)
        for n in ns:
            u = unit_near_quat(x, n)
            suite.check(qclassify(u).kind is Kind.UNIT,
                        "quaternion unit_near not a unit")
            suite.check(qvaluation(u - x).value >= n, "quaternion unit_near too far")
    return suite.result()


def criterion_05_quaternion_norm_laws() -> CriterionResult:
    suite = _Suite(5, "reduced-norm laws and inverses")
    rng = random.Random(105)
    window = Fraction(16)
    for _ in range(500):
        x = random_quat(rng, max_terms=2)
        y = random_quat(rng, max_terms=2)
        suite.check(norm_sq(x * y) == norm_sq(x) * norm_sq(y),
                    "norm_sq not multiplicative")
        qc = qclassify(x, window)
        sc = classify(norm_sq(x), window)
        suite.check((qc.kind is Kind.UNIT) == (sc.kind is Kind.UNIT),
                    "unit status disagrees with the reduced norm")
        if qc.kind is Kind.UNIT:
            err = qvaluation(x * qc.inverse - quat(1))
            suite.check(err.value >= window,
                        f"quaternion inverse error valuation {err.value}")
    return suite.result()


def _class_leading(x: GenQuaternion) -> dict[int, Fraction | float]:
    mod = 1
    for comp in x.components():
        for region, _ in comp.pieces:
            mod = math.lcm(mod, region.modulus)
    out = {}
    for r in range(mod):
        lead = INF
        for comp in x.components():
            for region, s in comp.pieces:
                if r % region.modulus in region.residues:
                    lead = min(lead, s.leading_exponent())
                    break
        out[r] = lead
    return out


def _pow2(e: int) -> Fraction:
    return Fraction(2 ** e) if e >= 0 else Fraction(1, 2 ** (-e))


def criterion_06_topology_equivalence() -> CriterionResult:
    suite = _Suite(6, "product topology vs quaternion valuation")
    rng = random.Random(106)
    for _ in range(500):
        x = random_quat(rng, exp_den=1, exp_lo=-4, exp_hi=4)
        component_min = INF
        for comp in x.components():
            component_min = min(component_min, valuation(comp).value)
        qv = qvaluation(x)
        suite.check(qv.value == component_min,
                    "qvaluation differs from the component minimum")
        leads = _class_leading(x)
        mod = len(leads)
        mesh_min = INF
        for n in range(20, 61):
            lead = leads[n % mod]
            if lead == INF:
                continue
            mesh_min = min(mesh_min, lead)
            v2 = x.mesh_eval_abs_sq(n)
            low = _pow2(-n * int(2 * lead + 1))
            high = _pow2(-n * int(2 * lead - 1))
            suite.check(low < v2 < high,
                        f"mesh slope bracket failed at n={n}: {v2} vs 2^±")
        suite.check(mesh_min == qv.value,
                    f"mesh slope minimum {mesh_min} != valuation {qv.value}")
    return suite.result()


def criterion_07_idempotent_rigidity() -> CriterionResult:
    suite = _Suite(7, "quaternion idempotents are scalar characteristics")
    a = evens()
    values = (zero(), one(), from_scalar(Fraction(1, 2)), chi(a), chi(a.complement()))
    lattice = (zero(), one(), chi(a), chi(a.complement()))
    expected = {scalar_quat(c) for c in lattice}
    found = []
    for c0 in values:
        for c1 in values:
            for c2 in values:
                for c3 in values:
                    q = GenQuaternion(c0, c1, c2, c3)
                    suite.check(is_idempotent(q) == (q in expected),
                                f"census mismatch at {q}")
                    if is_idempotent(q):
                        found.append(q)
    suite.check(len(found) == len(expected), "census size mismatch")
    for q in found:
        region = idempotent_decompose(q)
        suite.check(chi(region) == q.x0, "decomposition mismatch")
    return suite.result()


def _random_fg_ideal(rng: random.Random) -> FgIdeal:
    gens = tuple(random_gennum(rng, zero_prob=0.4)
                 for _ in range(rng.randint(1, 3)))
    return FgIdeal(gens)


def criterion_08_ideal_collapse() -> CriterionResult:
    suite = _Suite(8, "dense = whole ring = zero annihilator (f.g.)")
    rng = random.Random(108)
    for _ in range(300):
        ideal = _random_fg_ideal(rng)
        ann = annihilator_idempotent(ideal)
        dense = is_dense(ideal)
        whole = is_whole_ring(ideal)
        ann_zero = is_negligible(ann) is Negligibility.YES
        suite.check(dense == whole == ann_zero,
                    f"collapse broken: dense={dense} whole={whole} ann0={ann_zero}")
        if not dense:
            suite.check(is_negligible(ann) is Negligibility.NO, "annihilator zero")
            for g in ideal.generators:
                suite.check(is_negligible(ann * g) is Negligibility.YES,
                            "annihilator misses a generator")
    return suite.result()


def criterion_09_norm_ideal_transfer() -> CriterionResult:
    suite = _Suite(9, "density and containment transfer through the norm")
    rng = random.Random(109)
    qzero = quat(0)
    for _ in range(300):
        ideal = QuatFgIdeal(tuple(random_quat(rng, max_terms=2)
                                  for _ in range(rng.randint(1, 2))))
        scalars = norm_ideal(ideal)
        suite.check(quat_is_dense(ideal) == is_dense(scalars), "density transfer")
        for g in ideal.generators:
            for comp in g.components():
                suite.check(contains(scalars, comp),
                            "component outside the norm ideal")
        if not quat_is_dense(ideal):
            e = quat_annihilator(ideal)
            suite.check(is_negligible(e) is Negligibility.NO, "annihilator zero")
            for g in ideal.generators:
                suite.check(g * e == qzero and e * g == qzero,
                            "central annihilator fails on a generator")
    return suite.result()


def criterion_10_identity_theorem() -> CriterionResult:
    suite = _Suite(10, "identity-theorem criterion and quadratic cases")
    a = evens()
    f = GenPolynomial((zero(), chi(a)))
    res = identity_check(f, zero())
    suite.check(not res.dense and res.idempotent == chi(a.complement()),
                "chi_A z must fail with witness chi of the complement")
    for n in (1, 2, 5, 16):
        suite.check(verify_counterexample(f, zero(), chi(a.complement()), n),
                    f"counterexample fails at n={n}")
        step = chi(a.complement()) * alpha(n)
        suite.check(valuation(step).value == Fraction(n), "sequence distance wrong")
    suite.check(identity_check(GenPolynomial((zero(), one())), zero()).dense,
                "identity is dense")
    # quadratic triple: killed a2 / valuation gap / boundary
    killed = GenPolynomial((one(), one(), chi(a)))
    gap = GenPolynomial((one(), one(), alpha(1)))
    boundary = GenPolynomial((one(), one(), from_scalar(2)))
    suite.check(quadratic_unique_solution_check(killed, zero()).verdict
                is QuadraticVerdict.IDEMPOTENT_KILLS_QUADRATIC, "killed case")
    suite.check(quadratic_unique_solution_check(gap, zero()).verdict
                is QuadraticVerdict.UNIQUE_IN_UNIT_BALL, "gap case")
    suite.check(quadratic_unique_solution_check(boundary, zero()).verdict
                is QuadraticVerdict.INCONCLUSIVE, "boundary case")
    return suite.result()


def _sharp_set(rng: random.Random) -> IndexSet:
    while True:
        parts = random_partition(rng, max_parts=2)
        if len(parts) == 2 and parts[0].is_sharp():
            return parts[0]


def _random_poly_supported(rng: random.Random, nvars: int,
                           mask: GenNumber) -> MultiPoly:
    while True:
        terms = {}
        for _ in range(rng.randint(1, 3)):
            mono = tuple(rng.randint(0, 2) for _ in range(nvars))
            terms[mono] = mask * random_gennum(rng, zero_prob=0.2, max_terms=2)
        f = multi_poly(nvars, terms)
        if not f.is_zero():
            return f


def criterion_11_mccoy() -> CriterionResult:
    suite = _Suite(11, "constant annihilators in polynomial rings")
    rng = random.Random(111)
    for _ in range(500):
        nvars = rng.choice((2, 3))
        region = _sharp_set(rng)
        f = _random_poly_supported(rng, nvars, chi(region))
        g = _random_poly_supported(rng, nvars, chi(region.complement()))
        suite.check(pmul(f, g).is_zero() and not g.is_zero(),
                    "instance construction broken")
        ann = ann_constant(f)
        suite.check(is_negligible(ann) is Negligibility.NO,
                    "killed polynomial without constant annihilator")
        suite.check(verify_annihilator(f, ann, 20, rng), "sandwich check failed")
    for _ in range(100):
        f = _random_poly_supported(rng, 2, one())
        by_slices = zero()
        total_support = None
        for mono, c in f.terms:
            sup = c.support()
            total_support = sup if total_support is None else total_support | sup
        slice_ann = chi(total_support.complement())
        suite.check(slice_ann == ann_constant(f),
                    "iterated-variable annihilator disagrees")
    a = evens()
    lf = scale(variable(1, 0), chi(a))
    e = chi(a.complement())
    suite.check(operator_obstruction(e, lf, constant(1, one())) == "unsolvable",
                "obstruction instance")
    suite.check(operator_obstruction(e, lf, constant(1, chi(a))) == "no_verdict",
                "annihilated variant")
    return suite.result()


def _cli_json(argv: list[str]) -> tuple[int, str]:
    from . import cli
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def criterion_12_cli_conformance() -> CriterionResult:
    suite = _Suite(12, "CLI round-trips and frozen examples")
    from .exprlang import format_value, parse_expr
    rng = random.Random(112)
    for i in range(500):
        if i % 3 == 2:
            v = random_quat(rng, inexact_prob=0.2)
        else:
            v = random_gennum(rng, inexact_prob=0.3)
        text = format_value(v)
        suite.check(parse_expr(text) == v, f"round-trip failed for {text}")

    examples = [
        (["--json", "classify", "chi{m=2;T=[0];N=0}"],
         {"kind": "zero_divisor", "witness": "chi{m=2;T=[1];N=0}"}),
        (["--json", "norm", "alpha(2)"],
         {"valuation": "2", "display": "0.135335"}),
        (["--json", "eval", "--expr", "alpha(1)+alpha(1)"],
         {"value": "2*eps^(1)"}),
    ]
    for argv, want in examples:
        code1, out1 = _cli_json(argv)
        code2, out2 = _cli_json(argv)
        suite.check(code1 == 0 and code2 == 0, f"exit codes {code1}/{code2}")
        suite.check(out1 == out2, "CLI output not byte-deterministic")
        report = json.loads(out1)
        for key, value in want.items():
            suite.check(report.get(key) == value,
                        f"{argv}: {key}={report.get(key)!r} != {value!r}")
    return suite.result()


ALL_CRITERIA = (
    criterion_01_ultrametric,
    criterion_02_alpha_norm_law,
    criterion_03_dichotomy,
    criterion_04_unit_density,
    criterion_05_quaternion_norm_laws,
    criterion_06_topology_equivalence,
    criterion_07_idempotent_rigidity,
    criterion_08_ideal_collapse,
    criterion_09_norm_ideal_transfer,
    criterion_10_identity_theorem,
    criterion_11_mccoy,
    criterion_12_cli_conformance,
)


def run_all(numbers=None) -> list[CriterionResult]:
    results = []
    for i, fn in enumerate(ALL_CRITERIA, start=1):
        if numbers is None or i in numbers:
            results.append(fn())
    return results
