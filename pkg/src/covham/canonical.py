"""Covariant canonical mode variables and the momentum-space Hamiltonian.

Per on-shell mode k, the complex amplitude pair T~_pm is traded for real
canonical variables through a fixed complex gauge constant z:

    w_+ = z T~_+            w_- = z* T~_-
    pi_pm_{mu c} = 2 eps k_mu Re w_pm_c
    q_+_c = -2 eps Im w_+_c          q_-_c = +2 eps Im w_-_c

with component label c (tensor multi-index or spinor index) and a
species normalization eps fixed by matching the momentum-space
Hamiltonian J to the spacetime integral of the de Donder-Weyl density:

    tensor / scalar    eps^2 = a2 / (2 k0 |z|^2)
    spinor             eps^2 = a2 / (4 k0 kappa |z|^2)
    em (real field)    eps^2 = -a2 / k0      (z enters as a pure phase)

The em field has a single family, w_nu = (z*/|z|) A~_nu, with
q_nu = +2 eps Im w_nu, pi_{mu nu} = 2 eps k_mu Re w_nu.

J as a phase-space function uses the off-shell extension
Re w_c = pi_{0 c} / (2 eps k0): interaction terms are linear in the
amplitudes and source only the time row of the Hamilton equations,
which the k-collinear structure of pi would otherwise violate.  With
this extension the covariant Hamilton equations

    d_mu q_c = dJ/dpi^{mu c}         d^mu pi_{mu c} = -dJ/dq^c

hold exactly along sourced evolutions; gradients are taken with all
indices raised (metric signs on mu and tensor components, Dirac-adjoint
signs (1, 1, -1, -1) on spinor components).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dirac import dirac_adjoint, interaction_spinor, slash
from .dynamics import _tensor_source_factor
from .errors import CanonicalStructureError
from .fields import FieldSpec, contract_full
from .minkowski import METRIC_DIAG, lower_index, minkowski_dot
from .worldlines import Worldline, equal_time_crossing


@dataclass(frozen=True)
class CanonicalGauge:
    """The arbitrary complex constant z entering the variable split."""

    z: complex = 2**-0.5 + 0j

    def __post_init__(self):
        if self.z == 0:
            raise ValueError("gauge constant z must be nonzero")

    @property
    def mod(self) -> float:
        return abs(self.z)

    @property
    def unit(self) -> complex:
        return self.z / abs(self.z)


DEFAULT_GAUGE = CanonicalGauge()


def epsilon_scale(field: FieldSpec, k0: float, gauge: CanonicalGauge) -> float:
    """Species normalization eps(k0); see module docstring."""
    if field.kind == "em":
        return float(np.sqrt(-field.a2 / k0))
    if field.kind == "spinor":
        return float(np.sqrt(field.a2 / (4.0 * k0 * field.kappa))) / gauge.mod
    return float(np.sqrt(field.a2 / (2.0 * k0))) / gauge.mod


@dataclass(frozen=True)
class BranchVars:
    """One branch of canonical data: q (components), pi (4, components)."""

    q: np.ndarray
    pi: np.ndarray


@dataclass(frozen=True)
class CanonicalMode:
    """Canonical variables of a single mode.

    Complex species carry both branches; the em field stores its single
    family in plus and leaves minus None.
    """

    field: FieldSpec
    k: np.ndarray
    plus: BranchVars
    minus: BranchVars | None

    def branches(self):
        out = [("plus", self.plus)]
        if self.minus is not None:
            out.append(("minus", self.minus))
        return out


def _branch_vars(eps: float, k_low: np.ndarray, w: np.ndarray,
                 q_sign: float) -> BranchVars:
    comp_ones = (1,) * w.ndim
    pi = np.asarray(2.0 * eps * k_low.reshape((4,) + comp_ones) * np.real(w))
    # asarray keeps rank-0 components as 0-d arrays, not numpy scalars
    q = np.asarray(q_sign * 2.0 * eps * np.imag(w))
    return BranchVars(q=q, pi=pi)


def to_canonical(
    field: FieldSpec,
    k: np.ndarray,
    amp_plus: np.ndarray,
    amp_minus: np.ndarray | None,
    gauge: CanonicalGauge = DEFAULT_GAUGE,
) -> CanonicalMode:
    """Canonical variables from amplitude values T~_pm at one point.

    amp_plus / amp_minus are the full amplitudes including their plane
    wave phases; passing the bare coefficients C_pm corresponds to the
    point x = 0.  For the em species amp_plus holds A~ and amp_minus
    must be None.
    """
    k = np.asarray(k, dtype=float)
    eps = epsilon_scale(field, k[0], gauge)
    k_low = lower_index(k)
    comp = field.component_shape
    amp_plus = np.asarray(amp_plus, dtype=complex)
    if amp_plus.shape != comp:
        raise ValueError(f"amp_plus shape {amp_plus.shape}, expected {comp}")
    if field.kind == "em":
        if amp_minus is not None:
            raise ValueError("em species carries a single amplitude family")
        w = np.conj(gauge.unit) * amp_plus
        return CanonicalMode(field=field, k=k,
                             plus=_branch_vars(eps, k_low, w, +1.0),
                             minus=None)
    if amp_minus is None:
        raise ValueError("complex species need both amplitude families")
    amp_minus = np.asarray(amp_minus, dtype=complex)
    if amp_minus.shape != comp:
        raise ValueError(f"amp_minus shape {amp_minus.shape}, expected {comp}")
    w_plus = gauge.z * amp_plus
    w_minus = np.conj(gauge.z) * amp_minus
    return CanonicalMode(field=field, k=k,
                         plus=_branch_vars(eps, k_low, w_plus, -1.0),
                         minus=_branch_vars(eps, k_low, w_minus, +1.0))


def _check_collinear(bv: BranchVars, k: np.ndarray, tol: float) -> None:
    k_low = lower_index(k)
    comp_ones = (1,) * bv.q.ndim
    model = k_low.reshape((4,) + comp_ones) * bv.pi[0] / k[0]
    defect = np.max(np.abs(bv.pi - model))
    if defect > tol * (1.0 + np.max(np.abs(bv.pi))):
        raise CanonicalStructureError(
            f"pi is not collinear with k (defect {defect:.3e}); "
            "not the canonical image of an on-shell mode"
        )


def _w_values(field: FieldSpec, k: np.ndarray, mode: CanonicalMode,
              gauge: CanonicalGauge) -> list[np.ndarray]:
    """Complex w per branch via the pi_0 extension (exact on-shell)."""
    eps = epsilon_scale(field, k[0], gauge)
    out = []
    for name, bv in mode.branches():
        re_w = bv.pi[0] / (2.0 * eps * k[0])
        sign = +1.0 if (name == "minus" or field.kind == "em") else -1.0
        im_w = sign * bv.q / (2.0 * eps)
        out.append(re_w + 1j * im_w)
    return out


def from_canonical(
    field: FieldSpec,
    k: np.ndarray,
    mode: CanonicalMode,
    gauge: CanonicalGauge = DEFAULT_GAUGE,
    tol: float = 1e-10,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Amplitudes T~_pm back from canonical variables.

    Raises CanonicalStructureError when any pi row fails to be
    proportional to k, which no on-shell mode can produce.
    """
    k = np.asarray(k, dtype=float)
    for _, bv in mode.branches():
        _check_collinear(bv, k, tol)
    ws = _w_values(field, k, mode, gauge)
    if field.kind == "em":
        return ws[0] * gauge.unit, None
    amp_plus = ws[0] / gauge.z
    amp_minus = ws[1] / np.conj(gauge.z)
    return amp_plus, amp_minus


def _active_sources(worldlines: list[Worldline], x0: float):
    """(worldline, u, udot) for every source active on the slice."""
    out = []
    for w in worldlines or []:
        if not w.active_at(x0):
            continue
        tau = equal_time_crossing(w, x0)
        u, udot = w.state(tau)
        out.append((w, u, udot))
    return out


def mode_hamiltonian(
    field: FieldSpec,
    k: np.ndarray,
    amp_plus: np.ndarray,
    amp_minus: np.ndarray | None,
    x0: float,
    worldlines: list[Worldline] | None = None,
    include_conjugate: bool = False,
) -> float:
    """Momentum-space Hamiltonian J of one mode, amplitude form.

    Amplitudes are the coefficients C_pm on the slice x0 (their plane
    wave phases carry no content here: J is evaluated on-shell, where
    interaction phases collapse to exp(-i k.u(tau*))).  The value is
    manifestly independent of the canonical gauge.

    include_conjugate adds the conjugate-amplitude companion of the
    spinor Hamiltonian; it mirrors the same dynamics and is only useful
    as a reported diagnostic.
    """
    k = np.asarray(k, dtype=float)
    amp_plus = np.asarray(amp_plus, dtype=complex)
    k0 = k[0]
    if include_conjugate and field.kind != "spinor":
        raise ValueError("the conjugate companion exists for the spinor "
                         "species only")
    sources = _active_sources(worldlines, x0)

    if field.kind == "em":
        if amp_minus is not None:
            raise ValueError("em species carries a single amplitude family")
        c_light = -1.0 / (8.0 * np.pi * field.a2)
        k2 = minkowski_dot(k, k)
        value = (-k2 / (4.0 * np.pi * c_light * k0)) * float(
            np.real(contract_full(amp_plus, amp_plus)))
        for w, u, udot in sources:
            phase = np.exp(-1j * minkowski_dot(k, u))
            pair = contract_full(lower_index(udot), amp_plus,
                                 conjugate_first=False)
            value += (w.coupling / (c_light * udot[0])) * 2.0 * float(
                np.real(pair * phase))
        return value

    amp_minus = np.asarray(amp_minus, dtype=complex)
    if field.kind == "spinor":
        signs = field.pairing_signs()
        free = (field.a2 * field.kappa / (2.0 * k0)) * float(np.real(
            np.sum(signs * (np.conj(amp_plus) * amp_plus
                            + np.conj(amp_minus) * amp_minus))))
        # the conjugate companion carries the same free part
        value = 2.0 * free if include_conjugate else free
        if sources:
            m_plus = field.kappa * np.eye(4) + slash(k)
            m_minus = field.kappa * np.eye(4) - slash(k)
            for w, u, udot in sources:
                xi = w.coupling * interaction_spinor(w.xi, udot)
                xibar = dirac_adjoint(xi)
                phase = np.exp(-1j * minkowski_dot(k, u))
                term = xibar @ (m_plus @ amp_plus) * phase
                term += xibar @ (m_minus @ amp_minus) * np.conj(phase)
                if include_conjugate:
                    term += xibar @ (m_plus @ np.conj(amp_plus)) * np.conj(phase)
                    term += xibar @ (m_minus @ np.conj(amp_minus)) * phase
                value += float(np.real(term)) / (field.kappa * udot[0])
        return value

    value = (field.b2 / k0) * float(np.real(
        contract_full(amp_plus, amp_plus)
        + contract_full(amp_minus, amp_minus)))
    for w, u, udot in sources:
        factor = _tensor_source_factor(field, udot)
        phase = np.exp(-1j * minkowski_dot(k, u))
        pair = contract_full(factor, amp_plus + np.conj(amp_minus),
                             conjugate_first=False)
        value += (w.coupling / udot[0]) * 2.0 * float(np.real(pair * phase))
    return value


def _free_quadratic(field: FieldSpec, mode: CanonicalMode) -> float:
    """Free part of J as a phase-space function.

    1/2 sum_c sigma_c [pi_c.pi_c + kappa^2 q_c^2] per branch, with an
    overall minus for the em species (whose value vanishes on the
    massless shell while its gradients do not).
    """
    sigma = field.pairing_signs()
    kap2 = field.kappa**2
    total = 0.0
    for _, bv in mode.branches():
        pipi = np.einsum("m,m...->...", METRIC_DIAG, bv.pi**2)
        total += 0.5 * float(np.sum(sigma * (pipi + kap2 * bv.q**2)))
    return -total if field.kind == "em" else total


def mode_hamiltonian_canonical(
    field: FieldSpec,
    k: np.ndarray,
    mode: CanonicalMode,
    x: np.ndarray,
    worldlines: list[Worldline] | None = None,
    gauge: CanonicalGauge = DEFAULT_GAUGE,
) -> float:
    """J evaluated through the canonical variables at the point x.

    The slice is x0 = x[0].  On canonical data built from amplitudes at
    the same x this reproduces mode_hamiltonian for any x and any gauge:
    the explicit x dependence of the variables and of the interaction
    phases cancels in the value.
    """
    k = np.asarray(k, dtype=float)
    x = np.asarray(x, dtype=float)
    value = _free_quadratic(field, mode)
    sources = _active_sources(worldlines, x[0])
    if not sources:
        return value

    eps = epsilon_scale(field, k[0], gauge)
    ws = _w_values(field, k, mode, gauge)
    if field.kind == "em":
        c_light = -1.0 / (8.0 * np.pi * field.a2)
        for w, u, udot in sources:
            p_phase = gauge.unit * np.exp(1j * minkowski_dot(k, x - u))
            pair = np.sum(METRIC_DIAG * lower_index(udot) * ws[0])
            value += (2.0 * w.coupling / (c_light * udot[0])) * float(
                np.real(pair * p_phase))
        return value
    if field.kind == "spinor":
        m_plus = field.kappa * np.eye(4) + slash(k)
        m_minus = field.kappa * np.eye(4) - slash(k)
        for w, u, udot in sources:
            xibar = dirac_adjoint(w.coupling * interaction_spinor(w.xi, udot))
            row_plus = xibar @ m_plus
            row_minus = xibar @ m_minus
            ph = np.exp(1j * minkowski_dot(k, x - u))
            p_plus = np.conj(gauge.z) * ph / gauge.mod**2
            p_minus = gauge.z * np.conj(ph) / gauge.mod**2
            term = np.sum(row_plus * ws[0]) * p_plus
            term += np.sum(row_minus * ws[1]) * p_minus
            value += float(np.real(term)) / (field.kappa * udot[0])
        return value
    sigma = field.pairing_signs()
    for w, u, udot in sources:
        factor = _tensor_source_factor(field, udot)
        phi = np.conj(gauge.z) * np.exp(1j * minkowski_dot(k, x - u))
        pair = np.sum(sigma * factor * (ws[0] + np.conj(ws[1])))
        value += (2.0 * w.coupling / (udot[0] * gauge.mod**2)) * float(
            np.real(pair * phi))
    return value


def mode_hamiltonian_gradients(
    field: FieldSpec,
    k: np.ndarray,
    mode: CanonicalMode,
    x: np.ndarray,
    worldlines: list[Worldline] | None = None,
    gauge: CanonicalGauge = DEFAULT_GAUGE,
) -> CanonicalMode:
    """Raised phase-space gradients of J at the point x.

    Returns a CanonicalMode whose branch fields hold dJ/dq^c in q and
    dJ/dpi^{mu c} in pi, index raising included (metric signs on mu and
    tensor components, adjoint signs on spinor components).  The free
    parts reduce to dJ/dpi^{mu c} = pm pi_{mu c}, dJ/dq^c = pm kappa^2
    q_c (minus for em); sources add only to the mu = 0 momentum row and
    to the q gradient.
    """
    k = np.asarray(k, dtype=float)
    x = np.asarray(x, dtype=float)
    sign = -1.0 if field.kind == "em" else 1.0
    kap2 = field.kappa**2
    grads = {}
    for name, bv in mode.branches():
        grads[name] = [sign * kap2 * bv.q.astype(float).copy(),
                       sign * bv.pi.astype(float).copy()]

    sources = _active_sources(worldlines, x[0])
    if sources:
        eps = epsilon_scale(field, k[0], gauge)
        k0 = k[0]
        if field.kind == "em":
            c_light = -1.0 / (8.0 * np.pi * field.a2)
            gq, gpi = grads["plus"]
            for w, u, udot in sources:
                p_phase = gauge.unit * np.exp(1j * minkowski_dot(k, x - u))
                coef = w.coupling / (c_light * udot[0] * eps)
                udot_low = lower_index(udot)
                gpi[0] += coef / k0 * udot_low * np.real(p_phase)
                gq += -coef * udot_low * np.imag(p_phase)
        elif field.kind == "spinor":
            s_adj = field.pairing_signs()
            m_plus = field.kappa * np.eye(4) + slash(k)
            m_minus = field.kappa * np.eye(4) - slash(k)
            for w, u, udot in sources:
                xibar = dirac_adjoint(w.coupling * interaction_spinor(w.xi, udot))
                ph = np.exp(1j * minkowski_dot(k, x - u))
                coef = 1.0 / (2.0 * eps * field.kappa * udot[0])
                row_p = (xibar @ m_plus) * np.conj(gauge.z) * ph / gauge.mod**2
                row_m = (xibar @ m_minus) * gauge.z * np.conj(ph) / gauge.mod**2
                grads["plus"][1][0] += s_adj * np.real(row_p) * coef / k0
                grads["plus"][0] += s_adj * np.imag(row_p) * coef
                grads["minus"][1][0] += s_adj * np.real(row_m) * coef / k0
                grads["minus"][0] += -s_adj * np.imag(row_m) * coef
        else:
            for w, u, udot in sources:
                factor = _tensor_source_factor(field, udot)
                phi = np.conj(gauge.z) * np.exp(1j * minkowski_dot(k, x - u))
                coef = w.coupling / (udot[0] * eps * gauge.mod**2)
                for name in grads:
                    grads[name][1][0] += factor * np.real(phi) * coef / k0
                    grads[name][0] += factor * np.imag(phi) * coef

    plus = BranchVars(q=grads["plus"][0], pi=grads["plus"][1])
    minus = None
    if "minus" in grads:
        minus = BranchVars(q=grads["minus"][0], pi=grads["minus"][1])
    return CanonicalMode(field=field, k=k, plus=plus, minus=minus)


def gradient_consistency(
    field: FieldSpec,
    k: np.ndarray,
    mode: CanonicalMode,
    x: np.ndarray,
    worldlines: list[Worldline] | None = None,
    gauge: CanonicalGauge = DEFAULT_GAUGE,
    delta: float = 1e-3,
) -> float:
    """Max defect between analytic gradients of J and finite differences.

    Five-point central differences in every stored phase-space
    component; exact for the quadratic-plus-linear J up to roundoff.
    Lowered finite-difference gradients are raised with the appropriate
    signs before comparison.  Returns the max absolute defect scaled by
    1 + max |gradient|.
    """

    def rebuild(values):
        plus = BranchVars(q=values["plus"][0], pi=values["plus"][1])
        minus = None
        if "minus" in values:
            minus = BranchVars(q=values["minus"][0], pi=values["minus"][1])
        return CanonicalMode(field=field, k=mode.k, plus=plus, minus=minus)

    base = {name: [bv.q.copy(), bv.pi.copy()] for name, bv in mode.branches()}
    analytic = mode_hamiltonian_gradients(field, k, mode, x, worldlines, gauge)
    sigma = field.pairing_signs()
    worst = 0.0
    scale = 1.0
    for name, bv in analytic.branches():
        scale = max(scale, 1.0 + float(np.max(np.abs(bv.q))),
                    1.0 + float(np.max(np.abs(bv.pi))))
    stencil = np.array([1.0, -8.0, 8.0, -1.0]) / (12.0 * delta)
    offsets = np.array([-2.0, -1.0, 1.0, 2.0]) * delta
    for name, _ in mode.branches():
        for slot in (0, 1):
            arr = base[name][slot]
            it = np.nditer(arr, flags=["multi_index"])
            for _ in it:
                idx = it.multi_index
                samples = []
                for off in offsets:
                    probe = {n: [v[0].copy(), v[1].copy()]
                             for n, v in base.items()}
                    probe[name][slot][idx] += off
                    samples.append(mode_hamiltonian_canonical(
                        field, k, rebuild(probe), x, worldlines, gauge))
                fd = float(np.dot(stencil, samples))
                # raise the finite-difference index to match convention
                if slot == 0:
                    raised = fd * float(sigma[idx] if sigma.ndim else sigma)
                    ana = analytic.plus.q[idx] if name == "plus" else \
                        analytic.minus.q[idx]
                else:
                    mu, comp_idx = idx[0], idx[1:]
                    comp_sign = float(sigma[comp_idx] if sigma.ndim else sigma)
                    raised = fd * METRIC_DIAG[mu] * comp_sign
                    ana = analytic.plus.pi[idx] if name == "plus" else \
                        analytic.minus.pi[idx]
                worst = max(worst, abs(raised - ana) / scale)
    return worst


def canonical_at_point(
    field: FieldSpec,
    k: np.ndarray,
    coeff_plus: np.ndarray,
    coeff_minus: np.ndarray | None,
    x: np.ndarray,
    gauge: CanonicalGauge = DEFAULT_GAUGE,
) -> CanonicalMode:
    """Canonical variables at x from slice coefficients C_pm(x0 = x[0]).

    Restores the plane wave phases T~_pm = C_pm exp(mp i k.x) before the
    canonical split; em uses the single family with exp(-i k.x).
    """
    k = np.asarray(k, dtype=float)
    x = np.asarray(x, dtype=float)
    kx = minkowski_dot(k, x)
    amp_plus = np.asarray(coeff_plus, dtype=complex) * np.exp(-1j * kx)
    if field.kind == "em":
        return to_canonical(field, k, amp_plus, None, gauge)
    amp_minus = np.asarray(coeff_minus, dtype=complex) * np.exp(+1j * kx)
    return to_canonical(field, k, amp_plus, amp_minus, gauge)


def hamilton_residual(
    field: FieldSpec,
    k: np.ndarray,
    amp_at,
    x: np.ndarray,
    worldlines: list[Worldline] | None = None,
    gauge: CanonicalGauge = DEFAULT_GAUGE,
    h: float | None = None,
) -> tuple[float, float]:
    """Defect of the covariant Hamilton equations at the point x.

    amp_at(x0) must return the coefficient pair (C_plus, C_minus) on the
    requested slice (C_minus ignored for em), consistent with the
    evolution equations; free fields pass constants.  Both equations are
    probed with fourth-order five-point stencils of spacing h in all
    four coordinate directions (time displacements re-evaluate the
    coefficients, spatial ones move only the explicit phases):

        r1 = max |d_mu q_c - dJ/dpi^{mu c}| / (1 + max |dJ/dpi|)
        r2 = max |d^mu pi_{mu c} + dJ/dq^c| / (1 + max |dJ/dq|)

    h defaults to 5e-3 / (1 + k0), keeping the k0 h phase step small.
    """
    k = np.asarray(k, dtype=float)
    x = np.asarray(x, dtype=float)
    if h is None:
        h = 5e-3 / (1.0 + k[0])
    coeffs = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0
    offsets = (-2, -1, 1, 2)

    def mode_at(point):
        c_plus, c_minus = amp_at(point[0])
        return canonical_at_point(field, k, c_plus, c_minus, point, gauge)

    center = mode_at(x)
    grads = mode_hamiltonian_gradients(field, k, center, x, worldlines, gauge)

    names = [name for name, _ in center.branches()]
    dq = {name: [] for name in names}      # per mu: d_mu q
    dpi_div = {name: 0.0 for name in names}  # d^mu pi_mu
    for mu in range(4):
        samples = []
        for off in offsets:
            shifted = x.copy()
            shifted[mu] += off * h
            samples.append(mode_at(shifted))
        for name in names:
            qs = [getattr(s, name).q for s in samples]
            pis = [getattr(s, name).pi for s in samples]
            dmu_q = sum(c * q for c, q in zip(coeffs, qs)) / h
            dmu_pi_mu = sum(c * p[mu] for c, p in zip(coeffs, pis)) / h
            dq[name].append(dmu_q)
            dpi_div[name] = dpi_div[name] + METRIC_DIAG[mu] * dmu_pi_mu

    r1 = 0.0
    r2 = 0.0
    for name in names:
        g = getattr(grads, name)
        scale1 = 1.0 + float(np.max(np.abs(g.pi)))
        scale2 = 1.0 + float(np.max(np.abs(g.q)))
        defect1 = np.stack(dq[name]) - g.pi
        defect2 = dpi_div[name] + g.q
        r1 = max(r1, float(np.max(np.abs(defect1))) / scale1)
        r2 = max(r2, float(np.max(np.abs(defect2))) / scale2)
    return r1, r2


def constant_amplitudes(coeff_plus, coeff_minus=None):
    """amp_at provider for free evolution (constant coefficients)."""
    c_plus = np.asarray(coeff_plus, dtype=complex)
    c_minus = None if coeff_minus is None else np.asarray(coeff_minus,
                                                          dtype=complex)

    def amp_at(_x0: float):
        return c_plus, c_minus

    return amp_at


def history_amplitudes(history, mode_index: int = 0):
    """amp_at provider reading exact samples from an AmplitudeHistory.

    Requested slices must coincide with recorded samples (the residual
    stencil must align with the integrator grid); off-sample requests
    raise.
    """
    x0 = history.x0
    h = history.spacing()

    def amp_at(t: float):
        idx = int(round((t - x0[0]) / h))
        if idx < 0 or idx >= len(x0) or abs(x0[idx] - t) > 1e-9 * (1 + abs(t)):
            raise ValueError(f"slice {t} is not a recorded history sample")
        c_plus = history.plus[idx, mode_index]
        c_minus = None
        if history.minus is not None:
            c_minus = history.minus[idx, mode_index]
        return c_plus, c_minus

    return amp_at
