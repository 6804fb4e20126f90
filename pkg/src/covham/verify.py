"""Verification suites: named checks over a scenario, reported as records.

Every check produces one record {name, status, measured, tolerance,
metadata}.  Suites never abort on a module error; the error becomes a
failed record with its message and the run continues.  Reports carry a
schema version, the scenario digest, the package version, and the RNG
seed, and serialize with sorted keys and no timestamps, so the same
scenario and seed give byte-identical bodies.

Tolerances are all named; scenario files and the CLI can override any
of them.  The defaults double as the documented check contract.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from . import __version__
from .brackets import (
    BracketConfig,
    QuadraticObservable,
    canonical_pair_bracket,
    coordinate_observable,
    dw_conservation_check,
    jacobi_defect,
    momentum_vector_observable,
    poisson_bracket,
    product,
)
from .canonical import (
    CanonicalGauge,
    canonical_at_point,
    constant_amplitudes,
    from_canonical,
    gradient_consistency,
    hamilton_residual,
    history_amplitudes,
    mode_hamiltonian_canonical,
    to_canonical,
)
from .dirac import clifford_defect, projector_defects, shell_projector
from .dynamics import (
    evolve_amplitudes,
    mode_equation_residual,
    reconstruct_field,
    source_rate,
)
from .fields import scalar_field, tensor_field
from .green import green_oracle
from .minkowski import on_shell_k
from .modes import box_mode_grid, build_mode_grid
from .position import parseval_check
from .scenario import Scenario

SUITE_NAMES = ("simulate", "hamilton", "bracket", "parseval", "green",
               "dirac-algebra")

DEFAULT_TOLERANCES = {
    "clifford": 1e-15,
    "projector": 1e-12,
    "shell_annihilation": 1e-10,
    "roundtrip": 1e-12,
    "gauge_invariance": 1e-12,
    "hamilton_free": 1e-10,
    "hamilton_sourced": 1e-6,
    "gradient_fd": 1e-6,
    "order_window": 0.4,
    "causality": 0.0,
    "mode_equation": 1e-6,
    "superposition": 1e-12,
    "segmented": 1e-12,
    "parseval": 1e-6,
    "antisymmetry": 1e-12,
    "bilinearity": 1e-12,
    "leibniz": 1e-10,
    "jacobi": 1e-8,
    "canonical_pair": 1e-12,
    "conservation": 0.0,
    "green_em": 0.05,
    "green_scalar": 0.05,
}


@dataclass
class CheckRecord:
    name: str
    status: str  # "pass" | "fail"
    measured: float | None
    tolerance: float | None
    metadata: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "metadata": self.metadata,
        }


@dataclass
class Report:
    suite: str
    seed: int
    scenario_sha256: str
    scenario: dict
    records: list[CheckRecord]
    tables: dict[str, list[dict]] = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def to_dict(self) -> dict:
        return {
            "schema_version": "1",
            "suite": self.suite,
            "records": [r.to_dict() for r in self.records],
            "reproducibility": {
                "package_version": __version__,
                "scenario_sha256": self.scenario_sha256,
                "seed": self.seed,
            },
            "scenario": self.scenario,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _add(records: list, name: str, measured: float, tol: float,
         metadata: dict | None = None) -> None:
    measured = float(measured)
    status = "pass" if measured <= tol else "fail"
    records.append(CheckRecord(name, status, measured, float(tol),
                               metadata or {}))


def _fail(records: list, name: str, exc: Exception) -> None:
    records.append(CheckRecord(name, "fail", None, None,
                               {"error": f"{type(exc).__name__}: {exc}"}))


def _random_amps(field, rng):
    comp = field.component_shape
    plus = np.asarray(rng.normal(size=comp) + 1j * rng.normal(size=comp))
    if field.kind == "em":
        return plus, None
    return plus, np.asarray(rng.normal(size=comp)
                            + 1j * rng.normal(size=comp))


def _capped_grid(s: Scenario, n_cap: int):
    """Scenario grid, resolution-capped for evolution-heavy checks."""
    n = min(s.n_per_axis, n_cap)
    return build_mode_grid(s.kmax, n, s.field.kappa,
                           k0_floor=s.k0_floor if n == s.n_per_axis else None)


# ---------------------------------------------------------------- dirac

def _suite_dirac(s: Scenario, rng, tol, records, tables) -> None:
    _add(records, "dirac/clifford", clifford_defect(), tol["clifford"],
         {"relations": 16})

    kappa = s.field.kappa if s.field.kappa > 0.0 else 1.0
    worst = 0.0
    for _ in range(100):
        k = on_shell_k(rng.uniform(-3.0, 3.0, size=3), kappa)
        worst = max(worst, max(projector_defects(k, kappa).values()))
    _add(records, "dirac/projectors", worst, tol["projector"],
         {"draws": 100, "kappa": kappa})

    if s.field.kind == "spinor" and s.particles:
        worldlines = list(s.particles)
        worst = 0.0
        for draw in range(4):
            k = on_shell_k(rng.uniform(-2.0, 2.0, size=3), kappa)
            x0 = s.x0_start + (draw + 1) / 5.0 * (s.x0_end - s.x0_start)
            rate_p, rate_m = source_rate(s.field, worldlines, k, x0)
            p_plus = shell_projector(k, kappa, +1)
            p_minus = shell_projector(k, kappa, -1)
            for mat, vec in ((p_minus, rate_p), (p_plus, rate_m)):
                norm = float(np.linalg.norm(vec))
                if norm > 0.0:
                    worst = max(worst,
                                float(np.linalg.norm(mat @ vec)) / norm)
        _add(records, "dirac/branch_annihilation", worst,
             tol["shell_annihilation"], {"samples": 4})


# ------------------------------------------------------------- hamilton

def _suite_hamilton(s: Scenario, rng, tol, records, tables) -> None:
    field = s.field
    grid = _capped_grid(s, 5)
    worldlines = list(s.particles)
    idx = rng.choice(len(grid), size=min(6, len(grid)), replace=False)
    x = np.array([0.35, 0.1, -0.2, 0.05])

    worst_rt = 0.0
    worst_gauge = 0.0
    worst_grad = 0.0
    phases = [CanonicalGauge(z=s.gauge.z * np.exp(1j * phi))
              for phi in (0.9, 2.2, 4.1)]
    for i in idx:
        k = grid.k[i]
        ap, am = _random_amps(field, rng)
        mode = to_canonical(field, k, ap, am, s.gauge)
        bp, bm = from_canonical(field, k, mode, s.gauge)
        defect = float(np.max(np.abs(bp - ap)))
        if am is not None:
            defect = max(defect, float(np.max(np.abs(bm - am))))
        worst_rt = max(worst_rt, defect)

        # J must not move under a phase rotation of the split constant z
        j_ref = mode_hamiltonian_canonical(
            field, k, canonical_at_point(field, k, ap, am, x, s.gauge),
            x, worldlines, s.gauge)
        for gauge in phases:
            j_rot = mode_hamiltonian_canonical(
                field, k, canonical_at_point(field, k, ap, am, x, gauge),
                x, worldlines, gauge)
            worst_gauge = max(worst_gauge,
                              abs(j_rot - j_ref) / (1.0 + abs(j_ref)))
        worst_grad = max(worst_grad, gradient_consistency(
            field, k, mode, x, worldlines, s.gauge))

    _add(records, "hamilton/roundtrip", worst_rt, tol["roundtrip"],
         {"modes": int(len(idx))})
    _add(records, "hamilton/gauge_invariance", worst_gauge,
         tol["gauge_invariance"], {"phases": len(phases)})
    _add(records, "hamilton/gradient_fd", worst_grad, tol["gradient_fd"],
         {"modes": int(len(idx))})

    worst_free = 0.0
    for i in idx[:2]:
        ap, am = _random_amps(field, rng)
        # stencil truncation goes like (k0 h)^4; halve the default step
        # so high-k0 grid corners stay inside the tolerance budget
        h = 2.5e-3 / (1.0 + grid.k[i, 0])
        r1, r2 = hamilton_residual(field, grid.k[i],
                                   constant_amplitudes(ap, am), x,
                                   worldlines=None, gauge=s.gauge, h=h)
        worst_free = max(worst_free, r1, r2)
    _add(records, "hamilton/free_residual", worst_free,
         tol["hamilton_free"], {"modes": 2})

    if not worldlines:
        return

    # short local window: the residual probes one interior slice, and the
    # stencil needs k0 * h small, so refine steps by the probed modes
    span = min(2.0, s.x0_end - s.x0_start)
    end = s.x0_start + span
    order = np.argsort(grid.k[:, 0])
    probes = [int(order[0]), int(order[len(order) // 3])]
    k0_sel = float(max(grid.k[i, 0] for i in probes))
    steps = max(64, int(math.ceil(span * k0_sel / 0.06)))
    hist = evolve_amplitudes(field, worldlines, grid, s.x0_start, end,
                             steps, save="all")
    h = hist.spacing()
    mid = len(hist.x0) // 2
    x_mid = np.array([hist.x0[mid], 0.3, -0.1, 0.2])
    worst_src = 0.0
    for i in probes:
        r1, r2 = hamilton_residual(field, grid.k[i],
                                   history_amplitudes(hist, mode_index=i),
                                   x_mid, worldlines=worldlines,
                                   gauge=s.gauge, h=h)
        worst_src = max(worst_src, r1, r2)
    _add(records, "hamilton/sourced_residual", worst_src,
         tol["hamilton_sourced"], {"steps": steps, "x0": float(hist.x0[mid])})

    finals = {}
    for n_steps in (64, 128, 256):
        hist_n = evolve_amplitudes(field, worldlines, grid, s.x0_start,
                                   end, n_steps, save="last")
        final = hist_n.plus[-1]
        if hist_n.minus is not None:
            final = np.concatenate([final.ravel(), hist_n.minus[-1].ravel()])
        finals[n_steps] = np.asarray(final).ravel()
    e_coarse = float(np.max(np.abs(finals[64] - finals[128])))
    e_fine = float(np.max(np.abs(finals[128] - finals[256])))
    slope = math.log2(e_coarse / e_fine) if e_fine > 0.0 else float("inf")
    _add(records, "hamilton/integrator_order", abs(slope - 4.0),
         tol["order_window"], {"steps": [64, 128, 256], "slope": slope})
    tables["hamilton_convergence"] = [
        {"steps": 64, "difference_to_next": e_coarse},
        {"steps": 128, "difference_to_next": e_fine},
    ]


# ------------------------------------------------------------- simulate

def _suite_simulate(s: Scenario, rng, tol, records, tables) -> None:
    field = s.field
    # integrator checks need k0 * h resolved, not spectral coverage, so
    # this suite runs on a deliberately soft grid
    grid = build_mode_grid(min(s.kmax, 2.0), min(s.n_per_axis, 5),
                           s.field.kappa)
    worldlines = list(s.particles)
    steps = int(max(s.steps, 8))
    if steps % 2:
        steps += 1
    hist = evolve_amplitudes(field, worldlines, grid, s.x0_start, s.x0_end,
                             steps, save="all")

    if worldlines:
        t_on = min(w.switch_on_time() for w in worldlines)
    else:
        t_on = float("inf")
    mask = hist.x0 < t_on - 1e-12
    measured = 0.0
    if np.any(mask):
        measured = float(np.max(np.abs(hist.plus[mask])))
        if hist.minus is not None:
            measured = max(measured, float(np.max(np.abs(hist.minus[mask]))))
    _add(records, "simulate/causality", measured, tol["causality"],
         {"pre_crossing_samples": int(np.sum(mask))})

    # the stencil check needs (k0 h)^4 below tolerance; refine separately
    k0_max = float(np.max(grid.k[:, 0]))
    span = s.x0_end - s.x0_start
    steps_fd = max(steps, int(math.ceil(span * k0_max / 0.03)))
    hist_fd = (hist if steps_fd == steps else
               evolve_amplitudes(field, worldlines, grid, s.x0_start,
                                 s.x0_end, steps_fd, save="all"))
    _add(records, "simulate/mode_equation",
         mode_equation_residual(field, worldlines, grid, hist_fd),
         tol["mode_equation"], {"steps": steps_fd})

    if len(worldlines) >= 2:
        worst = 0.0
        for frac in (0.25, 0.5, 0.9):
            x0 = s.x0_start + frac * (s.x0_end - s.x0_start)
            total_p, total_m = source_rate(field, worldlines, grid.k, x0)
            sum_p = np.zeros_like(total_p)
            sum_m = None if total_m is None else np.zeros_like(total_m)
            for w in worldlines:
                rp, rm = source_rate(field, [w], grid.k, x0)
                sum_p = sum_p + rp
                if sum_m is not None:
                    sum_m = sum_m + rm
            scale = 1.0 + float(np.max(np.abs(total_p)))
            worst = max(worst,
                        float(np.max(np.abs(total_p - sum_p))) / scale)
            if total_m is not None:
                worst = max(worst,
                            float(np.max(np.abs(total_m - sum_m))) / scale)
        _add(records, "simulate/superposition", worst, tol["superposition"],
             {"times": 3})

    mid = 0.5 * (s.x0_start + s.x0_end)
    first = evolve_amplitudes(field, worldlines, grid, s.x0_start, mid,
                              steps // 2, save="last")
    second = evolve_amplitudes(field, worldlines, grid, mid, s.x0_end,
                               steps // 2, init_plus=first.plus[-1],
                               init_minus=(None if first.minus is None
                                           else first.minus[-1]),
                              save="last")
    scale = 1.0 + float(np.max(np.abs(hist.plus[-1])))
    diff = float(np.max(np.abs(second.plus[-1] - hist.plus[-1]))) / scale
    if hist.minus is not None:
        diff = max(diff, float(np.max(np.abs(
            second.minus[-1] - hist.minus[-1]))) / scale)
    _add(records, "simulate/segmented", diff, tol["segmented"],
         {"steps": steps})


# -------------------------------------------------------------- bracket

def _bracket_sector(field):
    if field.kind != "spinor" and field.rank <= 1:
        return field, None
    kappa = field.kappa if field.kappa > 0.0 else 1.0
    note = (f"{field.kind} sector has no unconstrained (q, pi) bracket; "
            f"checks run on the rank-0 sector at kappa = {kappa}")
    return scalar_field(s=1.0, m=kappa, c=1.0), note


def _random_quadratic(layout, rng):
    a = rng.normal(size=layout.size)
    m = rng.normal(size=(layout.size, layout.size))
    return QuadraticObservable(rng.normal(), a, 0.5 * (m + m.T))


def _suite_bracket(s: Scenario, rng, tol, records, tables) -> None:
    sector, note = _bracket_sector(s.field)
    meta = {"sector": sector.kind}
    if note:
        meta["note"] = note
    ns = [(1, 0, 0), (0, 1, 0), (0, 1, 1)]
    grid = box_mode_grid(1.0, ns, sector.kappa)
    cfg = BracketConfig(field=sector, grid=grid, v=s.v)
    lay = cfg.layout
    state = rng.normal(size=lay.size)
    a = _random_quadratic(lay, rng)
    b = _random_quadratic(lay, rng)
    c = _random_quadratic(lay, rng)

    ab = poisson_bracket(a, b, cfg, state)
    ba = poisson_bracket(b, a, cfg, state)
    _add(records, "bracket/antisymmetry", abs(ab + ba) / (1.0 + abs(ab)),
         tol["antisymmetry"], meta)

    lhs = poisson_bracket(2.5 * a + (-1.25) * b, c, cfg, state)
    rhs = (2.5 * poisson_bracket(a, c, cfg, state)
           - 1.25 * poisson_bracket(b, c, cfg, state))
    _add(records, "bracket/bilinearity", abs(lhs - rhs) / (1.0 + abs(rhs)),
         tol["bilinearity"], meta)

    lhs = poisson_bracket(product(a, b), c, cfg, state)
    rhs = (a.value(state) * poisson_bracket(b, c, cfg, state)
           + b.value(state) * poisson_bracket(a, c, cfg, state))
    _add(records, "bracket/leibniz", abs(lhs - rhs) / (1.0 + abs(rhs)),
         tol["leibniz"], meta)

    _add(records, "bracket/jacobi", jacobi_defect(a, b, c, cfg, state),
         tol["jacobi"], meta)

    # the canonical pair needs the vector sector for all four components
    vec = tensor_field(rank=1, a2=1.0, b2=sector.kappa**2)
    vcfg = BracketConfig(field=vec, grid=box_mode_grid(1.0, ns, vec.kappa),
                         v=s.v)
    vlay = vcfg.layout
    zero = np.zeros(vlay.size)
    worst = 0.0
    for i in (0, 2):
        for j in (0, 2):
            for mu in range(4):
                for nu in range(4):
                    obs_q = coordinate_observable(vlay, "q", i, "plus",
                                                  comp=mu)
                    obs_p = momentum_vector_observable(vlay, vcfg.v, j,
                                                       "plus", comp=nu)
                    got = poisson_bracket(obs_q, obs_p, vcfg, zero)
                    want = canonical_pair_bracket(
                        mu, nu, vcfg.grid.k_spatial[i],
                        vcfg.grid.k_spatial[j], vcfg)
                    worst = max(worst, abs(got - want))
    _add(records, "bracket/canonical_pair", worst, tol["canonical_pair"],
         {"pairs": 64})

    _add(records, "bracket/conservation",
         dw_conservation_check(cfg, rng.normal(size=lay.size)),
         tol["conservation"], meta)


# ------------------------------------------------------------- parseval

PARSEVAL_SPECIES = ("scalar", "tensor")


def _suite_parseval(s: Scenario, rng, tol, records, tables) -> None:
    field = s.field
    triples = [(1, 0, 0), (0, 1, 1), (1, 1, 0), (0, 0, 2)]
    entries = []
    for n in triples:
        cp, cm = _random_amps(field, rng)
        entries.append((n, cp, cm))
    measured = parseval_check(field, 2.0 * np.pi, entries,
                              x0_span=(0.0, 0.7), n_t=4)
    _add(records, "parseval/box_sum", measured, tol["parseval"],
         {"modes": len(entries), "box_length": 2.0 * np.pi})


# ---------------------------------------------------------------- green

def averaged_profile(field, worldlines, grid, points, center: float,
                     period: float, n_samples: int = 32,
                     h: float | None = None):
    """Time-averaged reconstruction at fixed spatial points.

    Integrates the mode coefficients from the earliest switch-on to the
    far edge of the averaging window in segments (midpoint samples over
    one period centered at `center`), reconstructing at every sample.
    Averaging over a full period suppresses the oscillatory transient
    left by the switch-on, so the result approximates the steady field.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if h is None:
        h = 0.2 / float(np.max(grid.k[:, 0]))
    t_on = min(w.switch_on_time() for w in worldlines)
    samples = center + period * ((np.arange(n_samples) + 0.5) / n_samples
                                 - 0.5)
    if samples[0] <= t_on:
        raise ValueError("averaging window starts before the switch-on")

    state_p = None
    state_m = None
    prev = t_on
    accum = None
    for t in samples:
        steps = max(4, int(math.ceil((t - prev) / h)))
        seg = evolve_amplitudes(field, worldlines, grid, prev, t, steps,
                                init_plus=state_p, init_minus=state_m,
                                save="last")
        state_p = seg.plus[-1]
        state_m = None if seg.minus is None else seg.minus[-1]
        prev = t
        vals = [reconstruct_field(field, grid, state_p, state_m,
                                  np.concatenate([[t], pt]))
                for pt in points]
        vals = np.asarray(vals)
        accum = vals if accum is None else accum + vals
    return accum / n_samples


def _green_applicable(s: Scenario) -> str | None:
    if s.field.kind not in ("em", "scalar"):
        return ("green oracle comparisons cover the em and scalar species, "
                f"not {s.field.kind}")
    if not s.particles:
        return "green suite needs at least one source worldline"
    if any(w.kind != "static" for w in s.particles):
        return "time-averaged comparison requires static sources"
    return None


def _suite_green(s: Scenario, rng, tol, records, tables) -> None:
    why_not = _green_applicable(s)
    if why_not is not None:
        records.append(CheckRecord("green/applicability", "fail", None,
                                   None, {"error": why_not}))
        return

    field = s.field
    worldlines = list(s.particles)
    grid = s.build_grid()
    k0_min = float(np.min(grid.k[:, 0]))
    period = 2.0 * np.pi / max(k0_min, 1.0)
    center = s.x0_end - period / 2.0
    anchor = worldlines[0].position
    direction = np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0)

    if field.kind == "em":
        radii = np.array([1.0, 1.5, 2.0, 2.5, 3.0])
    else:
        radii = np.array([0.8, 0.9, 1.0, 1.6, 1.8, 2.0])
    t_on = min(w.switch_on_time() for w in worldlines)
    needed = t_on + float(np.max(radii)) + 1.0
    if center - period / 2.0 <= needed:
        records.append(CheckRecord(
            "green/window", "fail", None, None,
            {"error": "evolution window too short for a post-transient "
                      f"average (need x0_end > {needed + period:.2f})"}))
        return

    points = anchor[None, :] + radii[:, None] * direction[None, :]
    averaged = averaged_profile(field, worldlines, grid, points, center,
                                period)

    rows = []
    if field.kind == "em":
        worst = 0.0
        for r, val in zip(radii, averaged):
            got = float(val[0])
            ref = float(green_oracle(field, worldlines,
                                     np.concatenate([[center],
                                                     anchor + r * direction])
                                     )[0])
            err = abs(got - ref) / abs(ref)
            worst = max(worst, err)
            rows.append({"radius": float(r), "reconstructed": got,
                         "reference": ref, "rel_err": err})
        _add(records, "green/coulomb", worst, tol["green_em"],
             {"radii": radii.tolist(), "kmax": s.kmax,
              "n_per_axis": s.n_per_axis})
    else:
        kappa = field.kappa
        values = np.real(averaged)
        worst_direct = 0.0
        for r, got in zip(radii, values):
            ref = float(np.real(green_oracle(
                field, worldlines,
                np.concatenate([[center], anchor + r * direction]))))
            err = abs(float(got) - ref) / abs(ref)
            worst_direct = max(worst_direct, err)
            rows.append({"radius": float(r), "reconstructed": float(got),
                         "reference": ref, "rel_err": err})
        _add(records, "green/yukawa_direct", worst_direct,
             tol["green_scalar"], {"radii": radii.tolist()})

        half = len(radii) // 2
        worst_ratio = 0.0
        for i in range(half):
            r = float(radii[i])
            ratio = float(values[half + i] / values[i])
            want = math.exp(-kappa * r) / 2.0
            worst_ratio = max(worst_ratio, abs(ratio - want) / want)
        _add(records, "green/yukawa_ratio", worst_ratio,
             tol["green_scalar"], {"radii": radii[:half].tolist()})
    tables["green_profile"] = rows


# ------------------------------------------------------------ dispatch

_SUITES = {
    "simulate": _suite_simulate,
    "hamilton": _suite_hamilton,
    "bracket": _suite_bracket,
    "parseval": _suite_parseval,
    "green": _suite_green,
    "dirac-algebra": _suite_dirac,
}


def run_verification(s: Scenario, suite: str, seed: int = 0,
                     tolerances: dict[str, float] | None = None) -> Report:
    """Run one suite (or all applicable) and collect the report."""
    if suite != "all" and suite not in _SUITES:
        raise ValueError(
            f"unknown suite {suite!r}; choose from {SUITE_NAMES + ('all',)}")
    merged = dict(DEFAULT_TOLERANCES)
    merged.update(s.tolerances)
    if tolerances:
        merged.update(tolerances)
    unknown = set(merged) - set(DEFAULT_TOLERANCES)
    if unknown:
        raise ValueError(f"unknown tolerance names: {sorted(unknown)}")

    if suite == "all":
        names = ["dirac-algebra", "hamilton", "simulate", "bracket"]
        if s.field.kind in PARSEVAL_SPECIES:
            names.append("parseval")
        if _green_applicable(s) is None:
            names.append("green")
    else:
        names = [suite]

    records: list[CheckRecord] = []
    tables: dict[str, list[dict]] = {}
    rng = np.random.default_rng(seed)
    for name in names:
        try:
            _SUITES[name](s, rng, merged, records, tables)
        except Exception as exc:  # noqa: BLE001 - suite isolation
            _fail(records, f"{name}/error", exc)
    return Report(suite=suite, seed=seed, scenario_sha256=s.sha256,
                  scenario=s.metadata(), records=records, tables=tables)


def write_report(report: Report, directory, fmt: str = "json") -> list[Path]:
    """Write report.json and/or CSV tables; returns the paths written."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt in ("json", "both"):
        path = directory / "report.json"
        path.write_text(report.to_json())
        written.append(path)
    if fmt in ("csv", "both"):
        path = directory / "records.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["name", "status", "measured", "tolerance"])
            for rec in report.records:
                writer.writerow([rec.name, rec.status, rec.measured,
                                 rec.tolerance])
        written.append(path)
        for name, rows in sorted(report.tables.items()):
            if not rows:
                continue
            path = directory / f"{name}.csv"
            with path.open("w", newline="") as fh:
                writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
                writer.writeheader()
                writer.writerows(rows)
            written.append(path)
    return written
