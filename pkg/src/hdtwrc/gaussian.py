"""Per-phase mutual informations of the scalar AWGN two-way relay channel.

Noise at every receiver is independent with unit variance, so powers and
gains are noise-normalized.  All rates are log2, i.e. bits per channel use.

Upper-bound evaluation
----------------------
The cut-set terms are evaluated with Gaussian inputs, which maximize every
term for a fixed covariance.  The broadcast cuts of phases 1 and 2 see the
transmit signal at two receivers with independent unit-variance noise;
maximum-ratio combining of the two observations gives the effective SNR
``(h_a**2 + h_b**2) * P``, hence ``C((h_a**2 + h_b**2) * P)``.  The
multiple-access cuts of phases 5 and 6 keep the same coherent
parameterization (beta, gamma) as the decode-and-forward scheme, and are
maximized over the parameter by sampling in the sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from .errors import DomainError, GeometryError

CHAIN_TOL = 1e-9


def channel_gain(d: float, alpha: float) -> float:
    """Amplitude gain ``d ** (-alpha / 2)`` of the path-loss model."""
    if not d > 0.0:
        raise GeometryError(f"distance must be positive, got {d!r}")
    if not alpha > 0.0:
        raise GeometryError(f"path-loss exponent must be positive, got {alpha!r}")
    return d ** (-alpha / 2.0)


def awgn_capacity(snr: float) -> float:
    if snr < 0.0 or math.isnan(snr):
        raise DomainError(f"snr must be >= 0, got {snr!r}")
    return math.log2(1.0 + snr)


C = awgn_capacity


@dataclass(frozen=True)
class PlaneNetwork:
    """Node positions in the plane; node 2 is the relay."""

    p2: tuple[float, float]
    alpha: float = 3.0
    p1: tuple[float, float] = (0.0, 0.0)
    p3: tuple[float, float] = (1.0, 0.0)

    def __post_init__(self):
        for name in ("p1", "p2", "p3"):
            x, y = getattr(self, name)
            object.__setattr__(self, name, (float(x), float(y)))
        if not self.alpha > 0.0:
            raise GeometryError(f"path-loss exponent must be positive, got {self.alpha!r}")
        for (a, b), d in self.distances().items():
            if not d > 0.0:
                raise GeometryError(f"nodes {a} and {b} coincide at {getattr(self, f'p{a}')}")

    def distances(self) -> dict[tuple[int, int], float]:
        pts = {1: self.p1, 2: self.p2, 3: self.p3}
        return {
            (a, b): math.hypot(pts[a][0] - pts[b][0], pts[a][1] - pts[b][1])
            for a, b in ((1, 2), (1, 3), (2, 3))
        }

    def gains(self) -> "ChannelGains":
        d = self.distances()
        h12 = channel_gain(d[1, 2], self.alpha)
        h13 = channel_gain(d[1, 3], self.alpha)
        h23 = channel_gain(d[2, 3], self.alpha)
        return ChannelGains.reciprocal(h12, h13, h23)


@dataclass(frozen=True)
class ChannelGains:
    h12: float
    h13: float
    h21: float
    h23: float
    h31: float
    h32: float

    def __post_init__(self):
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"gain {f.name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, f.name, v)

    @classmethod
    def reciprocal(cls, h12: float, h13: float, h23: float) -> "ChannelGains":
        return cls(h12=h12, h13=h13, h21=h12, h23=h23, h31=h13, h32=h23)

    def mirrored(self) -> "ChannelGains":
        """Gains seen after relabelling node 1 as node 3 and vice versa."""
        return ChannelGains(
            h12=self.h32, h13=self.h31, h21=self.h23, h23=self.h21, h31=self.h13, h32=self.h12
        )


@dataclass(frozen=True)
class PowerConstraints:
    P1: float
    P2: float
    P3: float

    def __post_init__(self):
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"power {f.name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, f.name, v)

    @classmethod
    def uniform(cls, p: float) -> "PowerConstraints":
        return cls(p, p, p)


@dataclass(frozen=True)
class CoherenceParams:
    """Share of node 3's (beta) and node 1's (gamma) power sent coherently with the relay."""

    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("beta", "gamma"):
            v = float(getattr(self, name))
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {v!r}")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class PhaseMiTable:
    """Mutual-information constants, grouped by the phase they belong to.

    Naming: ``i<inputs>_<outputs>`` with ``g`` meaning "given", e.g.
    ``i1_2g3`` is I(X1; Y2 | X3).  ``i2_1p5`` and ``i2_3p6`` are the relay
    marginals I(X2; Y1) in phase 5 and I(X2; Y3) in phase 6.
    """

    # phase 1: node 1 broadcasts
    i1_2: float
    i1_3: float
    i1_23: float
    # phase 2: node 3 broadcasts
    i3_2: float
    i3_1: float
    i3_12: float
    # phase 3: multiple access at the relay
    i1_2g3: float
    i3_2g1: float
    i13_2: float
    # phase 4: relay broadcasts
    i2_3: float
    i2_1: float
    # phase 5: relay and node 3 to node 1
    i3_1g2: float
    i23_1: float
    i2_1p5: float
    # phase 6: relay and node 1 to node 3
    i1_3g2: float
    i12_3: float
    i2_3p6: float

    def __post_init__(self):
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"{f.name} must be finite and >= 0, got {v!r}")
            object.__setattr__(self, f.name, v)

    def check(self, tol: float = CHAIN_TOL) -> None:
        """Raise DomainError unless chain-rule and joint-output relations hold."""
        if abs(self.i23_1 - (self.i2_1p5 + self.i3_1g2)) > tol:
            raise DomainError("chain rule violated in phase 5: i23_1 != i2_1p5 + i3_1g2")
        if abs(self.i12_3 - (self.i2_3p6 + self.i1_3g2)) > tol:
            raise DomainError("chain rule violated in phase 6: i12_3 != i2_3p6 + i1_3g2")
        if self.i1_23 < max(self.i1_2, self.i1_3) - tol:
            raise DomainError("i1_23 below max(i1_2, i1_3)")
        if self.i3_12 < max(self.i3_1, self.i3_2) - tol:
            raise DomainError("i3_12 below max(i3_1, i3_2)")

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def scaled(self, c: float) -> "PhaseMiTable":
        return PhaseMiTable(**{k: c * v for k, v in self.as_dict().items()})

    def mirrored(self) -> "PhaseMiTable":
        """Table with the roles of nodes 1 and 3 exchanged."""
        return PhaseMiTable(
            i1_2=self.i3_2, i1_3=self.i3_1, i1_23=self.i3_12,
            i3_2=self.i1_2, i3_1=self.i1_3, i3_12=self.i1_23,
            i1_2g3=self.i3_2g1, i3_2g1=self.i1_2g3, i13_2=self.i13_2,
            i2_3=self.i2_1, i2_1=self.i2_3,
            i3_1g2=self.i1_3g2, i23_1=self.i12_3, i2_1p5=self.i2_3p6,
            i1_3g2=self.i3_1g2, i12_3=self.i23_1, i2_3p6=self.i2_1p5,
        )


def _coherent_snr(ha: float, pa: float, hb: float, pb: float, rho: float) -> float:
    # |ha xa + hb xb|^2 with a fraction rho of pb aligned to xa
    return ha * ha * pa + hb * hb * pb + 2.0 * ha * hb * math.sqrt(rho * pa * pb)


def df_phase_mi(g: ChannelGains, p: PowerConstraints, c: CoherenceParams) -> PhaseMiTable:
    """MI table of the decode-and-forward scheme with coherent relaying.

    The joint-output entries ``i1_23`` and ``i3_12`` are not used by the
    DF region; they are filled with the larger marginal so the table stays
    valid.
    """
    P1, P2, P3 = p.P1, p.P2, p.P3
    i1_2 = C(g.h12**2 * P1)
    i1_3 = C(g.h13**2 * P1)
    i3_2 = C(g.h32**2 * P3)
    i3_1 = C(g.h31**2 * P3)

    i3_1g2 = C(g.h31**2 * (1.0 - c.beta) * P3)
    i23_1 = C(_coherent_snr(g.h21, P2, g.h31, P3, c.beta))
    i1_3g2 = C(g.h13**2 * (1.0 - c.gamma) * P1)
    i12_3 = C(_coherent_snr(g.h23, P2, g.h13, P1, c.gamma))

    return PhaseMiTable(
        i1_2=i1_2, i1_3=i1_3, i1_23=max(i1_2, i1_3),
        i3_2=i3_2, i3_1=i3_1, i3_12=max(i3_1, i3_2),
        i1_2g3=i1_2, i3_2g1=i3_2, i13_2=C(g.h12**2 * P1 + g.h32**2 * P3),
        i2_3=C(g.h23**2 * P2), i2_1=C(g.h21**2 * P2),
        i3_1g2=i3_1g2, i23_1=i23_1, i2_1p5=i23_1 - i3_1g2,
        i1_3g2=i1_3g2, i12_3=i12_3, i2_3p6=i12_3 - i1_3g2,
    )


def ub_phase_mi(g: ChannelGains, p: PowerConstraints, c: CoherenceParams) -> PhaseMiTable:
    """MI table for the cut-set bound; broadcast cuts use both receivers."""
    t = df_phase_mi(g, p, c)
    return replace(
        t,
        i1_23=C((g.h12**2 + g.h13**2) * p.P1),
        i3_12=C((g.h31**2 + g.h32**2) * p.P3),
    )
