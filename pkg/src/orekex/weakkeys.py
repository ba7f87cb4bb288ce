"""Screening of insecure key choices in polynomial Weyl rings.

A Weyl-ring element is graded when every term shares the same per-variable
difference (d-exponent minus x-exponent).  Products of graded elements are
recoverable by commutative factoring, so graded private keys are rejected.
The scan is a single linear pass over the terms.

The test is specific to the Weyl relations and is not applied to skew
rings.  In characteristic p the Weyl ring also has a large center (p-th
powers of every variable); whether that induces further weak classes is
an open question, and no screen for it is attempted here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OreKexError
from .orepoly import OrePolynomial


@dataclass(frozen=True)
class GradingVector:
    """The shared difference z_i = (d_i exponent) - (x_i exponent)."""

    z: tuple[int, ...]


def grading_vector(h: OrePolynomial) -> GradingVector | None:
    """Return the grading vector of h, or None when h is not graded."""
    if not h.ring.is_weyl:
        raise OreKexError("grading is defined on weyl rings only")
    if h.is_zero():
        raise OreKexError("the zero polynomial has no grading vector")
    n = h.ring.n
    it = iter(h.terms)
    first = next(it)
    z = tuple(first[n + i] - first[i] for i in range(n))
    for exps in it:
        if any(exps[n + i] - exps[i] != z[i] for i in range(n)):
            return None
    return GradingVector(z)


REASON_GRADED = "graded"
REASON_COMMUTES = "commutes"


@dataclass(frozen=True)
class ScreenReport:
    accepted: bool
    reason: str | None = None

    def __str__(self):
        return "accept" if self.accepted else f"reject {self.reason}"


def screen_private_key(h: OrePolynomial, public_l: OrePolynomial) -> ScreenReport:
    """Reject h when it is graded or when it commutes with the public element."""
    if not h.ring.is_weyl:
        raise OreKexError("weak-key screening applies to weyl rings only")
    if grading_vector(h) is not None:
        return ScreenReport(False, REASON_GRADED)
    if h.commutes_with(public_l):
        return ScreenReport(False, REASON_COMMUTES)
    return ScreenReport(True)
