"""Spectrum of the shell-coupled operator as a function of the coupling.

The free spectrum is (-inf, -|m|] u [|m|, inf).  Switching on the shell
pushes one band edge into the gap:

    |eta| < 2 or |eta| > 2 :  a band reaching |m| (eta^2-4)/(eta^2+4) in
                              modulus attaches to the negative side when
                              eta (eta^2 - 4) < 0 and to the positive side
                              otherwise; everything purely continuous;
    eta = +/-2              :  the in-gap band collapses to the flat band
                              {0}, an eigenvalue of infinite multiplicity;
    eta = 0                 :  free operator;
    m = 0                   :  the whole real line for every eta (no gap,
                              hence no transition).

Band edges are computed in exact rational arithmetic from the exact
parameter values carried by ShellParams, so the spectrum of eta and of its
partner coupling -4/eta serialize to identical bytes.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

from .symbol import ShellParams

__all__ = [
    "SpectralComponent",
    "SpectrumDescription",
    "band_edge",
    "sign_condition",
    "dispersion_energy",
    "dispersion_momentum",
    "full_spectrum",
    "symmetry_partner",
    "classify_point",
]


@dataclass(frozen=True)
class SpectralComponent:
    """One connected piece of the spectrum.

    kind: "ray-left" (-inf, endpoint], "ray-right" [endpoint, inf),
    "point" {endpoint}, or "full-line".  Rays and points are closed.
    multiplicity is None for continuous pieces and "infinite" for the
    flat band.
    """

    kind: str
    endpoint: float | None
    spectral_type: str  # "continuous" | "eigenvalue"
    multiplicity: str | None = None

    def contains(self, z: float) -> bool:
        if self.kind == "full-line":
            return True
        if self.kind == "ray-left":
            return z <= self.endpoint
        if self.kind == "ray-right":
            return z >= self.endpoint
        return z == self.endpoint

    def to_dict(self) -> dict:
        if self.kind == "full-line":
            out = {"kind": self.kind, "type": self.spectral_type}
        elif self.kind == "point":
            out = {"kind": self.kind, "value": self.endpoint, "type": self.spectral_type}
        else:
            out = {
                "kind": self.kind,
                "endpoint": self.endpoint,
                "closed": True,
                "type": self.spectral_type,
            }
        if self.multiplicity is not None:
            out["multiplicity"] = self.multiplicity
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralComponent":
        kind = data["kind"]
        if kind == "point":
            endpoint = float(data["value"])
        elif kind == "full-line":
            endpoint = None
        else:
            endpoint = float(data["endpoint"])
        return cls(kind, endpoint, data["type"], data.get("multiplicity"))


@dataclass(frozen=True)
class SpectrumDescription:
    """Parameters plus the ordered tuple of disjoint spectral components."""

    params: ShellParams
    components: tuple

    def find(self, z: float):
        for comp in self.components:
            if comp.contains(z):
                return comp
        return None

    def to_dict(self) -> dict:
        return {
            "eta": self.params.eta,
            "m": self.params.m,
            "components": [c.to_dict() for c in self.components],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SpectrumDescription":
        params = ShellParams(float(data["eta"]), float(data["m"]))
        return cls(
            params,
            tuple(SpectralComponent.from_dict(c) for c in data["components"]),
        )


def _edge_exact(params: ShellParams) -> Fraction:
    """|m| |eta^2 - 4| / (eta^2 + 4), exact."""
    e2 = params.eta_exact * params.eta_exact
    return abs(params.m_exact) * abs(e2 - 4) / (e2 + 4)


def band_edge(params: ShellParams) -> float:
    """Modulus of the in-gap band edge, |m| |eta^2-4| / (eta^2+4).

    At eta = 0 this equals |m| (the free gap edge) and at the critical
    couplings it equals 0 (the flat band).
    """
    return float(_edge_exact(params))


def sign_condition(params: ShellParams, z: float) -> bool:
    """z eta / (eta^2 - 4) > 0: the gap side on which in-gap dispersion
    solutions can exist.  Undefined for eta in {0, +2, -2}."""
    if params.critical or params.eta == 0.0:
        raise ValueError(f"sign condition undefined for eta = {params.eta!r}")
    eta = params.eta
    return z * eta / (eta * eta - 4.0) > 0.0


def _band_sign(params: ShellParams) -> int:
    """Sign of eta (eta^2 - 4): the sign of the in-gap band energies."""
    s = params.eta_exact * (params.eta_exact * params.eta_exact - 4)
    return (s > 0) - (s < 0)


def dispersion_energy(params: ShellParams, p: float) -> float:
    """Energy of the in-gap band at momentum p,

        z(p) = sign(eta (eta^2-4)) * |eta^2-4|/(eta^2+4) * sqrt(p^2 + m^2).

    Solves branch_sqrt(p^2 + m^2 - z^2) = 4 z eta/(eta^2 - 4) with both
    sides positive.  Undefined for eta in {0, +2, -2}.
    """
    if params.critical or params.eta == 0.0:
        raise ValueError(f"dispersion undefined for eta = {params.eta!r}")
    e2 = params.eta_exact * params.eta_exact
    ratio = float(abs(e2 - 4) / (e2 + 4))
    return _band_sign(params) * ratio * math.sqrt(p * p + params.m * params.m)


def dispersion_momentum(params: ShellParams, z: float):
    """Ordered momentum pair solving the dispersion relation at energy z,

        p = +/- sqrt((eta^2+4)^2/(eta^2-4)^2 z^2 - m^2),

    or None when |z| is below the band edge (radicand negative).  The sign
    condition z eta/(eta^2-4) > 0 must hold: energies on the wrong side of
    the gap never solve the unsquared relation, so they are rejected rather
    than silently mapped to the mirror band.
    """
    if params.critical or params.eta == 0.0:
        raise ValueError(f"dispersion undefined for eta = {params.eta!r}")
    z = float(z)
    if not sign_condition(params, z):
        raise ValueError(f"sign condition fails at z = {z!r}: no band on this side of the gap")
    e2 = params.eta_exact * params.eta_exact
    q = float((e2 + 4) / abs(e2 - 4))
    qz = q * z
    rad = qz * qz - params.m * params.m
    # rounding can push the radicand a few ulp below zero right at the band
    # edge; snap those to the edge pair (0, 0) instead of reporting no root
    tiny = 8.0 * sys.float_info.epsilon * (qz * qz + params.m * params.m)
    if rad < -tiny:
        return None
    root = math.sqrt(rad) if rad > 0.0 else 0.0
    return (0.0 - root, root)


def full_spectrum(params: ShellParams) -> SpectrumDescription:
    """Assemble the spectrum for the given coupling and mass."""
    m_edge = float(abs(params.m_exact))
    if m_edge == 0.0:
        return SpectrumDescription(
            params, (SpectralComponent("full-line", None, "continuous"),)
        )
    if params.critical:
        return SpectrumDescription(
            params,
            (
                SpectralComponent("ray-left", -m_edge, "continuous"),
                SpectralComponent("point", 0.0, "eigenvalue", "infinite"),
                SpectralComponent("ray-right", m_edge, "continuous"),
            ),
        )
    side = _band_sign(params)
    gap_edge = band_edge(params)
    if side < 0:
        left, right = -gap_edge, m_edge
    elif side > 0:
        left, right = -m_edge, gap_edge
    else:  # eta = 0, where gap_edge == m_edge anyway
        left, right = -m_edge, m_edge
    return SpectrumDescription(
        params,
        (
            SpectralComponent("ray-left", left, "continuous"),
            SpectralComponent("ray-right", right, "continuous"),
        ),
    )


def symmetry_partner(params: ShellParams) -> ShellParams:
    """Parameters with coupling -4/eta, which share the spectrum of eta.

    The partner coupling is formed in exact rational arithmetic, so applying
    the map twice returns the original coupling exactly and both partners
    produce bit-identical band edges.
    """
    if params.eta == 0.0:
        raise ValueError("eta = 0 has no partner coupling")
    partner = Fraction(-4) / params.eta_exact
    return ShellParams(float(partner), params.m, partner, params.m_exact)


def classify_point(params: ShellParams, z: complex) -> str:
    """Classify z as "continuous", "eigenvalue-infinite" (the flat band) or
    "resolvent".  Ray endpoints count as spectrum (the rays are closed)."""
    z = complex(z)
    if z.imag != 0.0:
        return "resolvent"
    comp = full_spectrum(params).find(z.real)
    if comp is None:
        return "resolvent"
    if comp.spectral_type == "eigenvalue":
        return "eigenvalue-infinite"
    return "continuous"
