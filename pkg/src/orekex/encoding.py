"""Byte-string <-> polynomial message map.

Each byte becomes a fixed number of base-(B) digits, B being the count of
nonzero coefficient values (q-1 or p-1), and digit d is stored as the
coefficient d+1 on the next monomial in ascending grevlex order.  Every
used coefficient is therefore nonzero, so the occupied positions are a
prefix 0..(w*len-1) of the enumeration and the length is recovered from
the highest occupied position.  Any gap in the prefix or digit group that
exceeds 255 marks a corrupted polynomial.
"""

from __future__ import annotations

from math import comb

from .errors import EncodingError
from .monomials import ascending
from .orepoly import OrePolynomial
from .rings import OreRing


def _digits_per_byte(base: int) -> int:
    w, span = 1, base
    while span < 256:
        w += 1
        span *= base
    return w


def capacity_bytes(ring: OreRing, degree_bound: int) -> int:
    """How many bytes fit into polynomials of the given total degree."""
    slots = ring.exp_len
    monomials = comb(degree_bound + slots, slots)
    return monomials // _digits_per_byte(ring.n_coeff_values - 1)


def min_degree_bound(ring: OreRing, n_bytes: int) -> int:
    needed = n_bytes * _digits_per_byte(ring.n_coeff_values - 1)
    slots = ring.exp_len
    d = 0
    while comb(d + slots, slots) < needed:
        d += 1
    return d


def encode_bytes(ring: OreRing, data: bytes, degree_bound: int | None = None) -> OrePolynomial:
    if not data:
        raise EncodingError("cannot encode an empty message")
    base = ring.n_coeff_values - 1
    w = _digits_per_byte(base)
    if degree_bound is not None and capacity_bytes(ring, degree_bound) < len(data):
        raise EncodingError(
            f"message of {len(data)} bytes exceeds capacity at degree {degree_bound}"
        )
    digits: list[int] = []
    for byte in data:
        group = []
        for _ in range(w):
            group.append(byte % base)
            byte //= base
        digits.extend(reversed(group))
    positions = ascending(ring.exp_len, len(digits))
    return OrePolynomial(ring, {pos: d + 1 for pos, d in zip(positions, digits)})


def decode_bytes(poly: OrePolynomial) -> bytes:
    if poly.is_zero():
        raise EncodingError("empty polynomial decodes to nothing")
    ring = poly.ring
    base = ring.n_coeff_values - 1
    w = _digits_per_byte(base)
    count = len(poly.terms)
    if count % w != 0:
        raise EncodingError("term count is not a whole number of digit groups")
    positions = ascending(ring.exp_len, count)
    digits = []
    for pos in positions:
        c = poly.terms.get(pos)
        if c is None:
            raise EncodingError("gap in the occupied-position prefix")
        digits.append(c - 1)
    out = bytearray()
    for i in range(0, len(digits), w):
        val = 0
        for d in digits[i : i + w]:
            val = val * base + d
        if val > 255:
            raise EncodingError("digit group out of byte range")
        out.append(val)
    return bytes(out)
