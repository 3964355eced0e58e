"""Batch verification of the closed-form L-value identities.

Each check evaluates the same quantity through two independent pipelines
(coefficient series vs contour quadrature) and compares at a tolerance.
Configs are JSON with a top-level "checks" array; complex parameters are
[re, im] pairs.  Reports are deterministic apart from runtime_ms.
"""

from __future__ import annotations

import cmath
import fnmatch
import json
import math
import os
import time
from dataclasses import asdict, dataclass, field

from . import contour, ltest, modforms, specfun

THEOREMS = (
    "thm_maincor", "thm_main", "prop_zag", "cor_bernWHF", "thm_bern",
    "cor_polyl", "cor_hurw", "prop_fe", "lemma_bend", "lemma_integral_form",
    "sect6_compact", "r_form_equality", "bfi_consistency",
)

DEFAULT_TOL = 1e-6
TWO_PI = 2.0 * math.pi


def default_tolerance() -> float:
    env = os.environ.get("MAASSL_TOL")
    return float(env) if env else DEFAULT_TOL


@dataclass(frozen=True)
class CheckSpec:
    id: str
    theorem: str
    form: str
    params: dict = field(default_factory=dict)
    tolerance: float = 0.0  # 0 means "use the default"

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}")
        if self.tolerance < 0:
            raise ValueError("tolerance must be >= 0")

    @property
    def effective_tolerance(self) -> float:
        return self.tolerance if self.tolerance > 0 else default_tolerance()


@dataclass
class CheckReport:
    id: str
    theorem: str
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    lhs_err_est: float
    rhs_err_est: float
    status: str
    runtime_ms: int
    message: str = ""

    def to_json_dict(self) -> dict:
        d = asdict(self)
        for key in ("lhs", "rhs"):
            z = complex(d[key])
            d[key] = [z.real, z.imag]
        return d


_FORM_CACHE: dict[str, modforms.FourierExpansion] = {}


def resolve_form(desc: str) -> modforms.FourierExpansion:
    """Resolve a form descriptor: 'J', 'Jsq', or 'synth:<inline-json>'."""
    if desc in _FORM_CACHE:
        return _FORM_CACHE[desc]
    if desc == "J":
        form = modforms.build_J(40)
    elif desc == "Jsq":
        form = modforms.build_J_squared(40)
    elif desc.startswith("synth:"):
        data = json.loads(desc[len("synth:"):])

        def cmap(raw):
            return {int(n): _to_complex(c) for n, c in raw.items()}

        form = modforms.synth_harmonic(int(data["k"]), cmap(data.get("holo", {})),
                                       cmap(data.get("nonholo", {})),
                                       level=int(data.get("level", 1)))
    else:
        raise ValueError(f"unknown form descriptor {desc!r}")
    _FORM_CACHE[desc] = form
    return form


_SEEDS = {
    "z^-2": lambda: ltest.InversePowerSeed(2.0),
    "z^-3": lambda: ltest.InversePowerSeed(3.0),
    "lorentzian": lambda: ltest.LorentzianSeed(),
    "zero": lambda: ltest.ZeroSeed(),
}


def _to_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def _evaluate(spec: CheckSpec):
    """Compute (lhs, rhs, lhs_err, rhs_err) for the check."""
    p = spec.params
    f = resolve_form(spec.form)
    th = spec.theorem

    if th in ("thm_maincor", "thm_main"):
        s, w = float(p["s"]), _to_complex(p["w"])
        lv = ltest.l_value(f, ltest.PhiSW(s, w))
        rhs = contour.rhs_main_theorem(f, s, w)
        return lv.value, rhs, lv.error_estimate, 0.0
    if th == "prop_zag":
        return ltest.l_star(f, 0), contour.rhs_integer_value(f, 0), 0.0, 0.0
    if th in ("cor_bernWHF", "thm_bern", "cor_polyl"):
        m = int(p["m"])
        if th == "thm_bern":
            lhs, lhs_err = ltest.l_value_limit(f, m)
        else:
            lhs, lhs_err = ltest.l_star(f, m), 0.0
        return lhs, contour.rhs_integer_value(f, m), lhs_err, 0.0
    if th == "cor_hurw":
        s = float(p["s"])
        return ltest.l_star(f, s), contour.rhs_negative_s(f, s), 0.0, 0.0
    if th == "prop_fe":
        s, w = float(p["s"]), _to_complex(p["w"])
        N = int(p.get("N", f.level))
        k = f.weight
        phi = ltest.PhiSW(s, w)
        lhs = ltest.l_value(f, phi).value
        g = resolve_form(p.get("g", spec.form))
        factor = (1j ** (k % 4)) * N ** (1 - k / 2)
        rhs = factor * ltest.l_value(
            g, ltest.fricke_transform_testfn(phi, 2 - k, N)).value
        return lhs, rhs, 0.0, 0.0
    if th == "lemma_bend":
        a, w, T = float(p["a"]), _to_complex(p["w"]), float(p.get("T", 200.0))
        lhs = contour.ray_integral_bend(a, w, T)
        rhs = contour.i_power(a) * specfun.exp_int_E(1 - a, w)
        return lhs, rhs, 0.0, 0.0
    if th == "lemma_integral_form":
        phi = _build_testfn(p)
        lv = ltest.l_value(f, phi)
        rhs = ltest.l_value_by_vertical_integral(f, phi)
        return lv.value, rhs, lv.error_estimate, 0.0
    if th == "sect6_compact":
        seed = _SEEDS[p["phi"]]()
        a, b = float(p["a"]), float(p["b"])
        lhs = contour.compact_support_value(f, seed, a, b)
        rhs = ltest.l_value_by_vertical_integral(
            f, ltest.CompactAnalytic(seed, a, b))
        return lhs, rhs, 0.0, 0.0
    if th == "r_form_equality":
        s, w = float(p["s"]), _to_complex(p["w"])
        lhs = contour.r_remainder(f, s, w, "one_dim")
        rhs = contour.r_remainder(f, s, w, "double_integral")
        return lhs, rhs, 0.0, 0.0
    if th == "bfi_consistency":
        series = 2 * sum(a * specfun.cal_EI(TWO_PI * n) for n, a in f.holo.items())
        lhs = complex(series.real, 0.0)
        rhs = complex(2 * ltest.l_star(f, 0).real, 0.0)
        return lhs, rhs, 0.0, 0.0
    raise ValueError(f"unhandled theorem {th!r}")


def _build_testfn(p: dict):
    kind = p.get("kind", "phi_sw")
    if kind == "phi_sw":
        return ltest.PhiSW(float(p["s"]), _to_complex(p["w"]))
    if kind == "compact_analytic":
        return ltest.CompactAnalytic(_SEEDS[p["phi"]](), float(p["a"]), float(p["b"]))
    if kind == "fricke_of_phi_sw":
        return ltest.FrickePhiSW(float(p["s"]), _to_complex(p["w"]),
                                 int(p["a_slash"]), int(p["M"]))
    raise ValueError(f"unknown test-function kind {kind!r}")


def run_check(spec: CheckSpec) -> CheckReport:
    start = time.perf_counter()
    try:
        lhs, rhs, lhs_err, rhs_err = _evaluate(spec)
    except (ltest.AdmissibilityError, contour.RegimeError) as exc:
        ms = int((time.perf_counter() - start) * 1000)
        return CheckReport(spec.id, spec.theorem, 0j, 0j, 0.0, 0.0, 0.0, 0.0,
                           "skipped", ms, f"precondition: {exc}")
    except Exception as exc:  # evaluator failure counts as check failure
        ms = int((time.perf_counter() - start) * 1000)
        return CheckReport(spec.id, spec.theorem, 0j, 0j, math.inf, math.inf,
                           0.0, 0.0, "fail", ms,
                           f"{type(exc).__name__}: {exc}")
    ms = int((time.perf_counter() - start) * 1000)
    lhs, rhs = complex(lhs), complex(rhs)
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs_err / scale if scale > 0 else 0.0
    tol = spec.effective_tolerance
    ok = abs_err <= max(tol, lhs_err + rhs_err)
    return CheckReport(spec.id, spec.theorem, lhs, rhs, abs_err, rel_err,
                       float(lhs_err), float(rhs_err),
                       "pass" if ok else "fail", ms)


def default_suite() -> list[CheckSpec]:
    """The bundled check suite covering every identity."""
    synth_whf = 'synth:{"k": 0, "holo": {"-1": 1, "1": 2, "3": -1}}'
    harm_a = 'synth:{"k": 0, "holo": {"1": 0.5}, "nonholo": {"-1": 1}}'
    harm_b = 'synth:{"k": -2, "holo": {"1": 1}, "nonholo": {"-1": [2, -1]}}'
    harm_c = 'synth:{"k": 0, "nonholo": {"-1": 1, "-2": 0.3}}'
    harm_d = 'synth:{"k": -2, "nonholo": {"-2": [0, 1]}}'
    checks: list[CheckSpec] = []

    def add(id_, theorem, form, tol=0.0, **params):
        checks.append(CheckSpec(id_, theorem, form, params, tol))

    for a, w in ((0.5, [0, 1]), (-1.0, [0, 2]), (2.0, [1, 1]), (-1.0, [1, 0])):
        add(f"bend_a{a}_w{w[0]}+{w[1]}i", "lemma_bend", "J", 1e-6, a=a, w=w)
    grid_forms = {"J": "J", "Jsq": "Jsq", "synth": synth_whf}
    for name, form in grid_forms.items():
        for s in (-1.5, 0.0, 0.5, 2.0):
            for w in ([0, 1], [0.3, 0.7]):
                add(f"maincor_{name}_s{s}_w{w[0]}+{w[1]}i", "thm_maincor",
                    form, 1e-7, s=s, w=w)
    for name, form in (("hA", harm_a), ("hB", harm_b), ("hC", harm_c)):
        for s in (0.5, 1.0, 2.0):
            add(f"main_harm_{name}_s{s}", "thm_main", form, 1e-6,
                s=s, w=[0.5, 1])
            add(f"rform_{name}_s{s}", "r_form_equality", form, 1e-6,
                s=s, w=[0.5, 1])
    add("zag_J", "prop_zag", "J", 1e-7)
    for m in (2, 3):
        add(f"bernWHF_J_m{m}", "cor_bernWHF", "J", 1e-7, m=m)
    for name, form in (("hA", harm_a), ("hB", harm_b), ("hD", harm_d)):
        add(f"polyl_{name}", "cor_polyl", form, 1e-5, m=1)
        add(f"bern_{name}_m2", "thm_bern", form, 1e-5, m=2)
    for s in (-0.5, -1.0, -2.5):
        add(f"hurw_J_s{s}", "cor_hurw", "J", 1e-7, s=s)
    for s in (0.0, 1.0, -0.5):
        add(f"fe_J_s{s}", "prop_fe", "J", 1e-6, s=s, w=[30, 5], N=1)
    add("intform_J_w30", "lemma_integral_form", "J", 1e-7, kind="phi_sw",
        s=0.0, w=[30, 0])
    add("intform_J_w30_5i", "lemma_integral_form", "J", 1e-7, kind="phi_sw",
        s=1.0, w=[30, 5])
    add("intform_J_compact", "lemma_integral_form", "J", 1e-8,
        kind="compact_analytic", phi="z^-2", a=1.0, b=2.0)
    for phi, (a, b) in (("z^-2", (1.0, 2.0)), ("z^-3", (1.0, 1.5)),
                        ("lorentzian", (1.0, 2.0))):
        add(f"compact_J_{phi}_{a}_{b}", "sect6_compact", "J", 1e-8,
            phi=phi, a=a, b=b)
    add("bfi_J", "bfi_consistency", "J", 1e-7)
    return checks


def load_suite(config_path: str) -> list[CheckSpec]:
    with open(config_path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(
                f"{config_path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    checks = []
    for i, raw in enumerate(data.get("checks", [])):
        try:
            checks.append(CheckSpec(raw["id"], raw["theorem"], raw["form"],
                                    raw.get("params", {}),
                                    float(raw.get("tolerance", 0.0))))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"{config_path}: checks[{i}]: {exc}") from exc
    return checks


def run_suite(checks: list[CheckSpec], id_filter: str | None = None):
    """Run checks in order; returns (reports, summary dict)."""
    if id_filter:
        checks = [c for c in checks
                  if fnmatch.fnmatch(c.id, id_filter)
                  or fnmatch.fnmatch(c.theorem, id_filter)]
    reports = [run_check(c) for c in checks]
    summary = {
        "pass": sum(r.status == "pass" for r in reports),
        "fail": sum(r.status == "fail" for r in reports),
        "skipped": sum(r.status == "skipped" for r in reports),
    }
    return reports, summary


def report_json(reports, summary) -> dict:
    return {"summary": summary,
            "checks": [r.to_json_dict() for r in reports]}
