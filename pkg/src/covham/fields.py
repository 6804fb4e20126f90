"""Field species and their quadratic-form constants.

A species is summarized by the pair (a2, b2) entering its free
Lagrangian density.  For a complex rank-l tensor field T,

    L = a2 * dT*.dT - b2 * T*.T,        kappa^2 = b2 / a2,

with all tensor indices contracted through the metric.  The specific
species map to:

    scalar      rank 0, a2 = s^2 / c,       b2 = m^2 c
    tensor      rank l, a2, b2 given,       b2 = a2 * kappa^2
    em          rank 1, a2 = -1/(8 pi c),   b2 = 0        (real field)
    spinor      4 components, a2 = s,       b2 = m c,  b2/a2 = kappa

The spinor entry is first order, so b2/a2 carries one power of kappa,
not two; its "components" live in spinor space, not on a Lorentz index.

Field components are stored with lower indices throughout the package
(T_{nu1..nul}, A_nu, polymomenta pi_{mu nu..}); contractions raise
indices by sign flips via component_signs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .minkowski import component_signs

_KINDS = ("scalar", "tensor", "em", "spinor")


@dataclass(frozen=True)
class FieldSpec:
    """Species tag plus the constants every formula downstream needs."""

    kind: str
    rank: int
    a2: float
    b2: float
    kappa: float
    is_real: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.a2 == 0.0:
            raise ValueError(f"{self.kind}: a2 must be nonzero")
        if self.kind == "em":
            if self.b2 != 0.0:
                raise ValueError(
                    "em: b2 must vanish (massless gauge field), got "
                    f"b2 = {self.b2}"
                )
            if self.kappa != 0.0:
                raise ValueError("em: kappa must vanish")
            if not self.is_real:
                raise ValueError("em: field must be real")
        elif self.kind == "spinor":
            # first-order kinetic term: one power of kappa
            if not np.isclose(self.b2, self.a2 * self.kappa, rtol=1e-12, atol=0.0):
                raise ValueError(
                    f"spinor: b2 = {self.b2} inconsistent with "
                    f"a2 * kappa = {self.a2 * self.kappa}"
                )
        else:
            if not np.isclose(self.b2, self.a2 * self.kappa**2, rtol=1e-12, atol=0.0):
                raise ValueError(
                    f"{self.kind}: b2 = {self.b2} inconsistent with "
                    f"a2 * kappa^2 = {self.a2 * self.kappa**2}"
                )
        if self.kind != "em" and self.is_real:
            raise ValueError("only the em species is stored as a real field")

    @property
    def component_shape(self) -> tuple[int, ...]:
        """Shape of one field value: () scalar, (4,)*rank tensor/em, (4,) spinor."""
        if self.kind == "scalar":
            return ()
        if self.kind == "spinor":
            return (4,)
        return (4,) * self.rank

    @property
    def n_components(self) -> int:
        return int(np.prod(self.component_shape, dtype=int))

    def pairing_signs(self) -> np.ndarray:
        """Signs raising all component indices in quadratic pairings.

        Metric signs for tensor indices; for the spinor species the role
        is played by diag(gamma^0) = (1, 1, -1, -1), the signs of the
        Dirac adjoint pairing psi_bar psi.
        """
        if self.kind == "spinor":
            return np.array([1.0, 1.0, -1.0, -1.0])
        return component_signs(self.rank)


def scalar_field(s: float = 1.0, m: float = 1.0, c: float = 1.0) -> FieldSpec:
    """Complex Klein-Gordon field; kappa = m c / s."""
    return FieldSpec(kind="scalar", rank=0, a2=s * s / c, b2=m * m * c,
                     kappa=m * c / s)


def tensor_field(rank: int, a2: float, b2: float) -> FieldSpec:
    """Complex rank-l tensor field with given quadratic constants."""
    if not 0 <= rank <= 4:
        raise ValueError("rank must be between 0 and 4")
    if a2 <= 0.0 or b2 < 0.0:
        raise ValueError("tensor species needs a2 > 0 and b2 >= 0")
    return FieldSpec(kind="tensor", rank=rank, a2=a2, b2=b2,
                     kappa=float(np.sqrt(b2 / a2)))


def em_field(c: float = 1.0) -> FieldSpec:
    """Electromagnetic four-potential in Lorenz gauge (real, massless)."""
    return FieldSpec(kind="em", rank=1, a2=-1.0 / (8.0 * np.pi * c), b2=0.0,
                     kappa=0.0, is_real=True)


def spinor_field(s: float = 1.0, m: float = 1.0, c: float = 1.0) -> FieldSpec:
    """First-order spinor field; a2 = s, b2 = m c, kappa = m c / s."""
    return FieldSpec(kind="spinor", rank=1, a2=s, b2=m * c, kappa=m * c / s)


def contract_full(a: np.ndarray, b: np.ndarray, conjugate_first: bool = True):
    """Full metric contraction of two equal-rank tensors.

    Returns sum over all components of sigma * conj(a) * b where sigma
    raises every index.  With conjugate_first=False the product is
    bilinear instead.  Validates that both operands have pure (4,)*rank
    shape with rank <= 4.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if any(d != 4 for d in a.shape):
        raise ValueError(f"tensor axes must all have length 4, got {a.shape}")
    rank = a.ndim
    if rank > 4:
        raise ValueError("contractions supported up to rank 4")
    sigma = component_signs(rank)
    left = np.conj(a) if conjugate_first else a
    return np.sum(sigma * left * b)
