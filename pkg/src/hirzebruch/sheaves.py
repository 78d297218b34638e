"""Ideal sheaves of finite generic point sets, twisted by a line bundle.

The model is I_Z(c) for Z a length-z zero-dimensional subscheme in one of
three generic positions:

    GENERAL     z general points of the surface
    ON_SECTION  z general points on the negative section h
    ON_FIBER    z general points on one fiber f

Only the numbers below are modelled, not actual schemes.  For general
points each point imposes one condition on sections until the sections run
out, so h^0(I_Z(c)) = max(0, h0(c) - z).  For points on a curve C in class
(1,0) or (0,1), the sections that vanish on all of Z split off the
sublinear system through C: with r = h0(c) - h0(c - C) (the dimension the
restriction to C actually sees),

    h^0(I_Z(c)) = h0(c - C) + max(0, r - z).

h^2 is untouched by a 0-dimensional subscheme, and h^1 then follows from
chi(I_Z(c)) = chi(c) - z.  In every case

    h1_ideal(c) = h1(c) + max(0, z - rho(c))

with rho the capacity returned by ``max_conditions``; the scan bounds in
:mod:`hirzebruch.natural` lean on that shape.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cohomology import ConsistencyError, chi, h0, h1, h2
from .picard import DivisorClass, DomainError, Surface, twist


class Locus(enum.Enum):
    GENERAL = "general"
    ON_SECTION = "section"
    ON_FIBER = "fiber"


@dataclass(frozen=True)
class PointConfig:
    """z points in the given generic position; z = 0 means the empty scheme."""

    z: int
    locus: Locus

    def __post_init__(self) -> None:
        if self.z < 0:
            raise DomainError(f"point count must be >= 0, got {self.z}")


@dataclass(frozen=True)
class IdealSheafModel:
    """I_Z(cls) with Z described by ``config``."""

    config: PointConfig
    cls: DivisorClass

    def twisted(self, t: int, by: DivisorClass) -> "IdealSheafModel":
        return IdealSheafModel(self.config, twist(self.cls, t, by))


_CURVE_CLASS = {
    Locus.ON_SECTION: DivisorClass(1, 0),
    Locus.ON_FIBER: DivisorClass(0, 1),
}


def restriction_degree(surface: Surface, c: DivisorClass, locus: Locus) -> int:
    """Degree of O(c) restricted to the supporting curve.

    On the section h this is c.h = b - e*a; on a fiber it is c.f = a.
    Undefined for GENERAL position.
    """
    if locus is Locus.GENERAL:
        raise DomainError("restriction degree needs a curve locus, not GENERAL")
    return surface.intersect(c, _CURVE_CLASS[locus])


def max_conditions(surface: Surface, model: IdealSheafModel) -> int:
    """How many independent conditions this configuration can impose.

    GENERAL position: all of h0(c).  On a curve C: the part of h0(c) that
    the restriction to C sees, r = h0(c) - h0(c - C).
    """
    if model.config.locus is Locus.GENERAL:
        return h0(surface, model.cls)
    curve = _CURVE_CLASS[model.config.locus]
    return h0(surface, model.cls) - h0(surface, model.cls - curve)


def h0_ideal(surface: Surface, model: IdealSheafModel) -> int:
    z = model.config.z
    if model.config.locus is Locus.GENERAL:
        return max(0, h0(surface, model.cls) - z)
    curve = _CURVE_CLASS[model.config.locus]
    below = h0(surface, model.cls - curve)
    r = h0(surface, model.cls) - below
    return below + max(0, r - z)


def h2_ideal(surface: Surface, model: IdealSheafModel) -> int:
    # a length-z subscheme cannot change h^2
    return h2(surface, model.cls)


def h1_ideal(surface: Surface, model: IdealSheafModel) -> int:
    """Forced by chi(I_Z(c)) = chi(c) - z."""
    z = model.config.z
    value = h0_ideal(surface, model) - (chi(surface, model.cls) - z) + h2_ideal(surface, model)
    if value < 0:
        raise ConsistencyError(
            f"negative ideal h1 = {value} at e={surface.e}, z={z}, "
            f"locus={model.config.locus.value}, c={model.cls}"
        )
    # equivalent shape used by the twist-scan bounds
    assert value == h1(surface, model.cls) + max(0, z - max_conditions(surface, model))
    return value
