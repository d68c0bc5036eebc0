"""Property-test harness: golden closed forms, operator identities, and
analytic-continuation consistency, aggregated into machine-readable reports.

Three suites:

    golden       closed forms for power and exponential inputs, ABR == ABC
    identity     inversion, commutativity, iterated-AB relations, the
                 mu-semigroup, and the non-semigroup witnesses (which must
                 show a strictly positive gap, pinned to a reference value)
    continuation series-vs-contour agreement on arcs through the complex
                 order plane, removability at nu = 1, epsilon stability

A suite never aborts on a failing property; every case is recorded and the
caller inspects the reports.  All grids live in verify_manifest.json so the
golden values are stable, versioned artifacts; runs are deterministic.
"""

import cmath
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import funcmodel as fm
from .abops import (ABRequest, B_ONE, ab_integral, ab_integral_hankel,
                    ab_integral_on_grid, abc_derivative, abc_derivative_exp,
                    abc_on_grid, abr_derivative, abr_derivative_exp,
                    abr_on_grid)
from .contour import ContourSpec, hankel_integrate
from .errors import ABCalcError
from .iabops import IABRequest, iab, iab_compose_check
from .specfn import complex_gamma, mittag_leffler

MANIFEST_PATH = Path(__file__).with_name("verify_manifest.json")


def load_manifest():
    with open(MANIFEST_PATH) as fh:
        return json.load(fh)


def _c(pair):
    return complex(pair[0], pair[1])


@dataclass
class PropertyReport:
    name: str
    max_abs_deviation: float
    tolerance: float
    passed: bool
    cases: list = field(default_factory=list)

    def to_dict(self):
        return {
            "name": self.name,
            "max_abs_deviation": self.max_abs_deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "cases": [{"name": self.name, "params": p, "deviation": d,
                       "tol": self.tolerance, "passed": d <= self.tolerance}
                      for (p, d) in self.cases],
        }


class _Collector:
    """Accumulates (params, deviation) pairs for one named property."""

    def __init__(self, name, tol):
        self.name = name
        self.tol = tol
        self.cases = []

    def add(self, params, deviation):
        self.cases.append((params, float(deviation)))

    def run(self, params, fn):
        """Record fn() as the deviation; an operator error counts as inf."""
        try:
            self.add(params, fn())
        except ABCalcError as exc:
            self.add({**params, "error": str(exc)}, math.inf)

    def report(self):
        worst = max((d for _, d in self.cases), default=0.0)
        return PropertyReport(self.name, worst, self.tol,
                              worst <= self.tol, self.cases)


def _power_closed_ab_integral(alpha, nu, h):
    ratio = complex_gamma(alpha + 1.0) / complex_gamma(alpha + nu + 1.0)
    return (cmath.exp(alpha * cmath.log(h))
            * (1.0 - nu + nu * cmath.exp(nu * cmath.log(h)) * ratio))


def _power_closed_ab_derivative(alpha, nu, h):
    x = -nu / (1.0 - nu) * cmath.exp(nu * cmath.log(h))
    ml = mittag_leffler(nu, alpha + 1.0, x)
    return (cmath.exp(alpha * cmath.log(h)) * complex_gamma(alpha + 1.0)
            * ml.value / (1.0 - nu))


def run_golden_suite(tol=1e-6, manifest=None):
    """Closed-form checks over the published parameter grid, B == 1."""
    man = manifest or load_manifest()
    grid = man["golden_power_grid"]
    reports = []

    col_int = _Collector("ab-integral-of-power-matches-closed-form", tol)
    col_abr = _Collector("abr-of-power-matches-closed-form", tol)
    col_abc = _Collector("abc-of-power-matches-closed-form", tol)
    col_same = _Collector("abr-equals-abc-on-powers", tol)
    for alpha in grid["alpha"]:
        for nup in grid["nu"]:
            nu = _c(nup)
            for h in grid["offset"]:
                f = fm.power_function(0, alpha)
                params = {"alpha": alpha, "nu": nup, "offset": h}
                want_i = _power_closed_ab_integral(alpha, nu, h)
                want_d = _power_closed_ab_derivative(alpha, nu, h)
                col_int.run(params, lambda f=f, h=h, nu=nu, w=want_i: abs(
                    ab_integral(ABRequest(f, 0, h, nu, tol=1e-10)).value - w)
                    / abs(w))
                col_abr.run(params, lambda f=f, h=h, nu=nu, w=want_d: abs(
                    abr_derivative(ABRequest(f, 0, h, nu, tol=1e-10)).value
                    - w) / abs(w))
                col_abc.run(params, lambda f=f, h=h, nu=nu, w=want_d: abs(
                    abc_derivative(ABRequest(f, 0, h, nu, tol=1e-10)).value
                    - w) / abs(w))

                def same(f=f, h=h, nu=nu):
                    a = abr_derivative(ABRequest(f, 0, h, nu, tol=1e-10))
                    c = abc_derivative(ABRequest(f, 0, h, nu, tol=1e-10))
                    return abs(a.value - c.value) / max(1.0, abs(a.value))
                col_same.run(params, same)
    reports += [col_int.report(), col_abr.report(), col_abc.report(),
                col_same.report()]

    # exponentials with basepoint -infinity; series route vs closed form
    eg = man["golden_exp_grid"]
    col_exp = _Collector("ab-derivatives-of-exponential-match-closed-form",
                         max(tol, 1e-8))
    col_expi = _Collector("ab-integral-of-exponential-matches-closed-form",
                          max(tol, 1e-8))
    for ap in eg["a"]:
        a = _c(ap)
        for nup in eg["nu"]:
            nu = _c(nup)
            ratio = abs(nu / (1 - nu) * cmath.exp(-nu * cmath.log(a)))
            if ratio > eg["geometric_ratio_cap"]:
                continue
            for zr in eg["z"]:
                params = {"a": ap, "nu": nup, "z": zr}
                denom = 1 - nu + nu * cmath.exp(-nu * cmath.log(a))
                want = cmath.exp(a * zr) / denom

                def dev_exp(a=a, nu=nu, zr=zr, want=want):
                    r = abr_derivative_exp(a, nu, zr)
                    c = abc_derivative_exp(a, nu, zr)
                    return max(abs(r.value - want), abs(c.value - want)) \
                        / abs(want)
                col_exp.run(params, dev_exp)
                want_i = cmath.exp(a * zr) * denom

                def dev_expi(a=a, nu=nu, zr=zr, want=want_i):
                    from .abops import ab_integral_exp
                    return abs(ab_integral_exp(a, nu, zr).value - want) \
                        / abs(want)
                col_expi.run(params, dev_expi)
    reports += [col_exp.report(), col_expi.report()]

    # cross-formulation agreement
    cf = man["cross_formulation"]
    col_real = _Collector("formulations-agree-at-real-orders", cf["real_tol"])
    col_cplx = _Collector("formulations-agree-at-complex-orders",
                          cf["complex_tol"])
    col_abi = _Collector("ab-integral-contour-form-agrees",
                         cf["ab_integral_tol"])
    for src in cf["functions"]:
        f = fm.parse(src)
        for nu in cf["real_nu"]:
            for op in (abr_derivative, abc_derivative):
                params = {"f": src, "nu": nu, "op": op.__name__}

                def dev_real(f=f, nu=nu, op=op):
                    vals = [op(ABRequest(f, 0, 1, nu, tol=1e-9,
                                         formulation=form)).value
                            for form in ("series", "kernel")]
                    return abs(vals[0] - vals[1]) / max(1.0, abs(vals[0]))
                col_real.run(params, dev_real)

            def dev_abi(f=f, nu=nu):
                a = ab_integral(ABRequest(f, 0, 1, nu, tol=1e-10))
                b = ab_integral_hankel(ABRequest(f, 0, 1, nu, tol=1e-9))
                return abs(a.value - b.value) / max(1.0, abs(a.value))
            col_abi.run({"f": src, "nu": nu}, dev_abi)
        for nup in cf["complex_nu"]:
            nu = _c(nup)
            for op in (abr_derivative, abc_derivative):
                params = {"f": src, "nu": nup, "op": op.__name__}

                def dev_cplx(f=f, nu=nu, op=op):
                    a = op(ABRequest(f, 0, 1, nu, tol=1e-9,
                                     formulation="series")).value
                    b = op(ABRequest(f, 0, 1, nu, tol=1e-9,
                                     formulation="hankel")).value
                    return abs(a - b) / max(1.0, abs(a))
                col_cplx.run(params, dev_cplx)
    reports += [col_real.report(), col_cplx.report(), col_abi.report()]
    return reports


def run_identity_suite(tol=1e-5, manifest=None):
    """Inversion, commutativity, iterated relations, semigroup, witnesses."""
    man = manifest or load_manifest()
    reports = []

    inv = man["inversion"]
    col1 = _Collector("abr-inverts-ab-integral", max(tol, inv["tol"]))
    col2 = _Collector("ab-integral-inverts-abr", max(tol, inv["tol"]))
    col3 = _Collector("ab-integral-of-abc-is-f-minus-f-at-basepoint",
                      max(tol, inv["tol"]))
    for src in inv["functions"]:
        f = fm.parse(src)
        for nu in inv["nu"]:
            params = {"f": src, "nu": nu}

            def d1(f=f, nu=nu):
                g = ab_integral_on_grid(f, 0, 1, nu, tol=1e-9)
                out = abr_derivative(ABRequest(g, 0, 1, nu, tol=1e-8,
                                               formulation="series"))
                return abs(out.value - f(1.0))
            col1.run(params, d1)

            def d2(f=f, nu=nu):
                g = abr_on_grid(f, 0, 1, nu, tol=1e-9)
                out = ab_integral(ABRequest(g, 0, 1, nu, tol=1e-8))
                return abs(out.value - f(1.0))
            col2.run(params, d2)

            def d3(f=f, nu=nu):
                g = abc_on_grid(f, 0, 1, nu, tol=1e-9)
                out = ab_integral(ABRequest(g, 0, 1, nu, tol=1e-8))
                return abs(out.value - (f(1.0) - f(0.0)))
            col3.run(params, d3)
    reports += [col1.report(), col2.report(), col3.report()]

    com = man["commutativity"]
    mu, nu = com["mu"], com["nu"]
    colc = _Collector("ab-operators-commute", max(tol, com["tol"]))
    for src in com["functions"]:
        f = fm.parse(src)

        def c_int(f=f):
            ab = ab_integral(ABRequest(
                ab_integral_on_grid(f, 0, 1, nu, tol=1e-9), 0, 1, mu,
                tol=1e-8)).value
            ba = ab_integral(ABRequest(
                ab_integral_on_grid(f, 0, 1, mu, tol=1e-9), 0, 1, nu,
                tol=1e-8)).value
            return abs(ab - ba)
        colc.run({"f": src, "pair": "I-I", "mu": mu, "nu": nu}, c_int)

        def c_der(f=f):
            ab = abr_derivative(ABRequest(
                abr_on_grid(f, 0, 1, nu, tol=1e-9), 0, 1, mu, tol=1e-8,
                formulation="series")).value
            ba = abr_derivative(ABRequest(
                abr_on_grid(f, 0, 1, mu, tol=1e-9), 0, 1, nu, tol=1e-8,
                formulation="series")).value
            return abs(ab - ba)
        colc.run({"f": src, "pair": "D-D", "mu": mu, "nu": nu}, c_der)

        def c_mixed(f=f):
            ab = abr_derivative(ABRequest(
                ab_integral_on_grid(f, 0, 1, mu, tol=1e-9), 0, 1, nu,
                tol=1e-8, formulation="series")).value
            ba = ab_integral(ABRequest(
                abr_on_grid(f, 0, 1, nu, tol=1e-9), 0, 1, mu,
                tol=1e-8)).value
            return abs(ab - ba)
        colc.run({"f": src, "pair": "D-I", "mu": mu, "nu": nu}, c_mixed)
    reports.append(colc.report())

    # non-semigroup witnesses: the gap must exceed the threshold and match
    # the pinned reference value
    wit = man["witness"]
    f = fm.power_function(0, 1.0)
    col_gap = _Collector("ab-integral-non-semigroup-gap-exceeds-threshold",
                         0.0)
    col_pin = _Collector("witness-gaps-match-pinned-values", wit["pin_tol"])

    def gap_semigroup():
        g = ab_integral_on_grid(f, 0, 1, 0.5, tol=1e-9)
        twice = ab_integral(ABRequest(g, 0, 1, 0.5, tol=1e-9)).value
        once = ab_integral(ABRequest(f, 0, 1, 1.0, tol=1e-9)).value
        return abs(twice - once)

    def gap_negorder():
        neg = ab_integral(ABRequest(f, 0, 1, -0.5, tol=1e-9)).value
        der = abr_derivative(ABRequest(f, 0, 1, 0.5, tol=1e-9)).value
        return abs(neg - der)

    g1, g2 = gap_semigroup(), gap_negorder()
    col_gap.add({"witness": "I^0.5 I^0.5 vs I^1", "gap": g1},
                max(0.0, wit["threshold"] - g1))
    col_gap.add({"witness": "I^-0.5 vs D^0.5", "gap": g2},
                max(0.0, wit["threshold"] - g2))
    col_pin.add({"witness": "I^0.5 I^0.5 vs I^1"},
                abs(g1 - wit["ab_semigroup_gap"]))
    col_pin.add({"witness": "I^-0.5 vs D^0.5"},
                abs(g2 - wit["ab_negorder_vs_abr_gap"]))
    reports += [col_gap.report(), col_pin.report()]

    # iterated relations and the mu-semigroup
    it = man["iterated"]
    f = fm.exponential(1.0)
    col_id = _Collector("iterated-identity-orders", it["identity_tol"])
    col_id.run({"case": "mu=0"}, lambda: abs(
        iab(IABRequest(f, 0, 1, 0.5, 0.0)).value - f(1.0)))
    col_id.run({"case": "nu=0"}, lambda: abs(
        iab(IABRequest(f, 0, 1, 0.0, 1.7)).value - f(1.0)))
    col_unit = _Collector("iterated-unit-orders-match-ab-operators",
                          it["unit_mu_tol"])
    col_unit.run({"case": "mu=1"}, lambda: abs(
        iab(IABRequest(f, 0, 1, 0.5, 1.0, tol=1e-10)).value
        - ab_integral(ABRequest(f, 0, 1, 0.5, tol=1e-10)).value))
    col_unit.run({"case": "mu=-1"}, lambda: abs(
        iab(IABRequest(f, 0, 1, 0.5, -1.0, tol=1e-10)).value
        - abr_derivative(ABRequest(f, 0, 1, 0.5, tol=1e-10)).value))
    col_two = _Collector("iterated-double-orders-match-compositions",
                         it["double_mu_tol"])

    def two_fold():
        got = iab(IABRequest(f, 0, 1, 0.6, 2.0, tol=1e-10)).value
        g = ab_integral_on_grid(f, 0, 1, 0.6, tol=1e-9)
        twice = ab_integral(ABRequest(g, 0, 1, 0.6, tol=1e-9)).value
        return abs(got - twice)

    def two_fold_neg():
        got = iab(IABRequest(f, 0, 1, 0.6, -2.0, tol=1e-10)).value
        g = abr_on_grid(f, 0, 1, 0.6, tol=1e-9)
        twice = abr_derivative(ABRequest(g, 0, 1, 0.6, tol=1e-8,
                                         formulation="series")).value
        return abs(got - twice)

    col_two.run({"case": "mu=2"}, two_fold)
    col_two.run({"case": "mu=-2"}, two_fold_neg)

    col_semi = _Collector("iterated-semigroup-in-second-order",
                          it["semigroup_tol"])
    rng = np.random.default_rng(it["seed"])
    fsg = fm.power_function(0, 1.0)
    for _ in range(it["semigroup_pairs"]):
        mu_r = round(float(rng.uniform(-2, 2)), 3)
        rho_r = round(float(rng.uniform(-2, 2)), 3)
        col_semi.run({"mu": mu_r, "rho": rho_r, "nu": it["semigroup_nu"]},
                     lambda mu_r=mu_r, rho_r=rho_r: iab_compose_check(
                         it["semigroup_nu"], mu_r, rho_r, fsg, 0, 1,
                         tol=1e-9))
    reports += [col_id.report(), col_unit.report(), col_two.report(),
                col_semi.report()]
    return reports


def run_continuation_suite(tol=1e-5, manifest=None):
    """Series-vs-contour overlap on arcs, nu -> 1 removability, epsilon
    stability of the contour machinery."""
    man = manifest or load_manifest()
    cont = man["continuation"]
    reports = []
    f = fm.exponential(1.0)

    col_arc = _Collector("series-and-contour-routes-agree-on-arcs",
                         max(tol, cont["overlap_tol"]))
    col_dom = _Collector("divergent-region-is-refused", 0.0)
    for r in cont["radii"]:
        for theta in cont["angles"]:
            nu = r * cmath.exp(1j * theta)
            params = {"nu": [nu.real, nu.imag], "r": r, "theta": theta}
            if nu.real > 0:
                def dev(nu=nu):
                    a = abr_derivative(ABRequest(f, 0, 1, nu, tol=1e-9,
                                                 formulation="series"))
                    b = abr_derivative(ABRequest(f, 0, 1, nu, tol=1e-9,
                                                 formulation="hankel"))
                    return abs(a.value - b.value) / max(1.0, abs(a.value))
                col_arc.run(params, dev)
            else:
                # beyond the convergence strip the kernel series is
                # asymptotic-divergent; the operator must refuse, not
                # return noise
                def refused(nu=nu):
                    try:
                        abr_derivative(ABRequest(f, 0, 1, nu, tol=1e-8,
                                                 formulation="hankel"))
                    except ABCalcError:
                        return 0.0
                    return math.inf
                col_dom.add(params, refused())
    reports += [col_arc.report(), col_dom.report()]

    # removability at nu = 1 along a non-real approach path, small |z - c|
    span = cont["removability_span"]
    fprime = f.derivative()(span)
    direction = cmath.exp(1j * math.pi / 4)
    col_rem = _Collector("abr-approaches-first-derivative-at-nu-one",
                         cont["removability_tol"])
    col_mono = _Collector("removability-deviation-decreases", 0.0)
    devs = []
    for offset in cont["removability_offsets"]:
        nu = 1.0 + offset * direction
        got = abr_derivative(ABRequest(f, 0, span, nu, tol=1e-10,
                                       formulation="series"))
        devs.append(abs(got.value - fprime))
        col_rem.add({"offset": offset}, devs[-1]
                    if offset == cont["removability_offsets"][-1] else 0.0)
    col_mono.add({"deviations": devs},
                 max(0.0, max(b - a for a, b in zip(devs, devs[1:]))))
    reports += [col_rem.report(), col_mono.report()]

    # epsilon sweep of the raw contour integral
    col_eps = _Collector("hankel-values-stable-under-epsilon", 1.0)
    results = []
    for eps in cont["epsilon_sweep"]:
        spec = ContourSpec(0.0, 1.0, eps)
        results.append(hankel_integrate(f, -0.5, spec, tol=1e-10,
                                        check_sensitivity=False))
    err_budget = 5.0 * max(r.abs_err_estimate for r in results)
    worst = max(abs(a.value - b.value)
                for i, a in enumerate(results) for b in results[i + 1:])
    col_eps.add({"epsilons": cont["epsilon_sweep"], "budget": err_budget},
                worst / max(err_budget, 1e-15))
    reports.append(col_eps.report())
    return reports


SUITES = {
    "golden": run_golden_suite,
    "identity": run_identity_suite,
    "continuation": run_continuation_suite,
}


def run_suites(names, tol=None):
    """Run the named suites; returns {suite: [PropertyReport, ...]}."""
    out = {}
    for name in names:
        runner = SUITES[name]
        out[name] = runner() if tol is None else runner(tol)
    return out


def reports_to_json(results):
    return [{"suite": suite,
             "cases": [case for rep in reps
                       for case in rep.to_dict()["cases"]]}
            for suite, reps in results.items()]


def render_table(results):
    lines = []
    for suite, reps in results.items():
        lines.append(f"suite: {suite}")
        for rep in reps:
            status = "pass" if rep.passed else "FAIL"
            lines.append(f"  [{status}] {rep.name}: "
                         f"max deviation {rep.max_abs_deviation:.3e} "
                         f"(tol {rep.tolerance:.3e}, {len(rep.cases)} cases)")
    return "\n".join(lines)


def all_passed(results):
    return all(rep.passed for reps in results.values() for rep in reps)
