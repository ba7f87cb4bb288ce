"""Hot kernels for bivariate skew rings: dense-grid multiplication and
exact one-sided division over the field-index encoding.

Two interchangeable implementations are provided:

* ``numba``  -- @njit-compiled nested loops over the nonzero terms
  (default when numba imports cleanly);
* ``numpy``  -- the same arithmetic with the inner loop vectorized through
  fancy table indexing.

Select one globally with the environment variable ``ORE_KEX_BACKEND``
(values ``numba`` or ``numpy``), or per call via the ``backend=`` argument.
Both produce bit-identical results; ``benchmarks/bench_backends.py``
compares their throughput.

Polynomials enter as ``{(e1, e2): coeff_index}`` dicts and leave the same
way; grids are sized by total degree, which bounds every exponent that can
appear during a reduction.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import NotDivisibleError, OreKexError
from .fields import tables_for

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return wrap


def _resolve_default() -> str:
    env = os.environ.get("ORE_KEX_BACKEND", "").strip().lower()
    if env == "":
        return "numba" if HAVE_NUMBA else "numpy"
    if env not in ("numba", "numpy"):
        raise OreKexError(f"ORE_KEX_BACKEND must be 'numba' or 'numpy', got {env!r}")
    if env == "numba" and not HAVE_NUMBA:
        raise OreKexError("ORE_KEX_BACKEND=numba but numba is not importable")
    return env


DEFAULT_BACKEND = _resolve_default()


def active_backend(backend: str | None = None) -> str:
    if backend is None:
        return DEFAULT_BACKEND
    if backend not in ("numba", "numpy"):
        raise OreKexError(f"unknown backend {backend!r}")
    if backend == "numba" and not HAVE_NUMBA:
        raise OreKexError("numba backend requested but numba is not importable")
    return backend


# -- dict <-> array interchange ----------------------------------------------

def _to_coo(terms: dict, coeff_dtype):
    n = len(terms)
    ea = np.empty(n, dtype=np.int64)
    eb = np.empty(n, dtype=np.int64)
    cc = np.empty(n, dtype=coeff_dtype)
    for i, ((a, b), c) in enumerate(terms.items()):
        ea[i] = a
        eb[i] = b
        cc[i] = c
    return ea, eb, cc


def _grid_to_terms(grid: np.ndarray) -> dict:
    ia, ib = np.nonzero(grid)
    vals = grid[ia, ib]
    return {(int(a), int(b)): int(c) for a, b, c in zip(ia, ib, vals)}


def _total_degree(terms: dict) -> int:
    return max(a + b for a, b in terms)


# -- multiplication ------------------------------------------------------------

@njit(cache=True)
def _mul_numba(fa, fb, fc, tw, ga, gb, gc, MUL, FROB, ADD, out):
    for i in range(fa.shape[0]):
        mul_row = MUL[fc[i]]
        frob_row = FROB[tw[i]]
        a0 = fa[i]
        b0 = fb[i]
        for j in range(ga.shape[0]):
            v = mul_row[frob_row[gc[j]]]
            a = a0 + ga[j]
            b = b0 + gb[j]
            out[a, b] = ADD[out[a, b], v]


def _mul_numpy(fa, fb, fc, tw, ga, gb, gc, MUL, FROB, ADD, out):
    # vectorize over the longer factor
    if fa.shape[0] <= ga.shape[0]:
        for i in range(fa.shape[0]):
            contrib = MUL[fc[i], FROB[tw[i], gc]]
            ia = fa[i] + ga
            ib = fb[i] + gb
            out[ia, ib] = ADD[out[ia, ib], contrib]
    else:
        for j in range(ga.shape[0]):
            contrib = MUL[fc, FROB[tw, gc[j]]]
            ia = fa + ga[j]
            ib = fb + gb[j]
            out[ia, ib] = ADD[out[ia, ib], contrib]


def skew2_mul(ring, f_terms: dict, g_terms: dict, backend: str | None = None) -> dict:
    """Product f*g in a two-variable skew ring; moving d^(a,b) of f past a
    coefficient of g applies Frobenius^(j1*a + j2*b)."""
    if not f_terms or not g_terms:
        return {}
    tab = tables_for(ring.field)
    j1, j2 = ring.sigma_powers
    kf = ring.field.k
    fa, fb, fc = _to_coo(f_terms, tab.dtype)
    ga, gb, gc = _to_coo(g_terms, tab.dtype)
    tw = (j1 * fa + j2 * fb) % kf
    shape = (int(fa.max() + ga.max()) + 1, int(fb.max() + gb.max()) + 1)
    out = np.zeros(shape, dtype=tab.dtype)
    if active_backend(backend) == "numba":
        _mul_numba(fa, fb, fc, tw, ga, gb, gc, tab.mul, tab.frob, tab.add, out)
    else:
        _mul_numpy(fa, fb, fc, tw, ga, gb, gc, tab.mul, tab.frob, tab.add, out)
    return _grid_to_terms(out)


# -- exact division ------------------------------------------------------------
#
# Leading terms are taken in grevlex; on equal total degree the larger d1
# exponent wins, so the scan walks diagonals a+b = d with a descending.
# Each reduction step cancels the current lead exactly, so the cursor only
# ever moves forward and the total scan cost is amortized by the grid size.

@njit(cache=True)
def _rdiv_numba(h, pa, pb, pc, twp, la, lb, inv_lc, inv_s, MUL, FROB, SUB, qout, d0):
    na, nb = h.shape
    d = d0
    a = min(d, na - 1)
    while d >= 0:
        lead_a = -1
        lead_b = -1
        while d >= 0:
            amin = d - (nb - 1)
            if amin < 0:
                amin = 0
            while a >= amin:
                b = d - a
                if h[a, b] != 0:
                    lead_a = a
                    lead_b = b
                    break
                a -= 1
            if lead_a >= 0:
                break
            d -= 1
            a = min(d, na - 1)
        if lead_a < 0:
            return 0
        mua = lead_a - la
        mub = lead_b - lb
        if mua < 0 or mub < 0:
            return 1
        c = FROB[inv_s, MUL[inv_lc, h[lead_a, lead_b]]]
        qout[mua, mub] = c
        for t in range(pa.shape[0]):
            v = MUL[pc[t], FROB[twp[t], c]]
            aa = pa[t] + mua
            bb = pb[t] + mub
            h[aa, bb] = SUB[h[aa, bb], v]
        a = lead_a - 1
    return 0


@njit(cache=True)
def _ldiv_numba(h, qa, qb, qc, lqa, lqb, lcq, j1, j2, kf, MUL, FROB, SUB, INV, pout, d0):
    na, nb = h.shape
    d = d0
    a = min(d, na - 1)
    while d >= 0:
        lead_a = -1
        lead_b = -1
        while d >= 0:
            amin = d - (nb - 1)
            if amin < 0:
                amin = 0
            while a >= amin:
                b = d - a
                if h[a, b] != 0:
                    lead_a = a
                    lead_b = b
                    break
                a -= 1
            if lead_a >= 0:
                break
            d -= 1
            a = min(d, na - 1)
        if lead_a < 0:
            return 0
        mua = lead_a - lqa
        mub = lead_b - lqb
        if mua < 0 or mub < 0:
            return 1
        tmu = (j1 * mua + j2 * mub) % kf
        c = MUL[h[lead_a, lead_b], INV[FROB[tmu, lcq]]]
        pout[mua, mub] = c
        for t in range(qa.shape[0]):
            v = MUL[c, FROB[tmu, qc[t]]]
            aa = mua + qa[t]
            bb = mub + qb[t]
            h[aa, bb] = SUB[h[aa, bb], v]
        a = lead_a - 1
    return 0


class _Cursor:
    """Grevlex-descending scan over a dense grid, shared by the numpy paths."""

    def __init__(self, grid, d0):
        self.grid = grid
        self.d = d0
        self.a = min(d0, grid.shape[0] - 1)

    def next_lead(self):
        na, nb = self.grid.shape
        while self.d >= 0:
            amin = max(0, self.d - (nb - 1))
            a = self.a
            while a >= amin:
                b = self.d - a
                if self.grid[a, b] != 0:
                    self.a = a
                    return a, b
                a -= 1
            self.d -= 1
            self.a = min(self.d, na - 1)
        return None

    def advance(self):
        self.a -= 1


def _rdiv_numpy(h, pa, pb, pc, twp, la, lb, inv_lc, inv_s, MUL, FROB, SUB, qout, d0):
    cur = _Cursor(h, d0)
    while True:
        lead = cur.next_lead()
        if lead is None:
            return 0
        mua = lead[0] - la
        mub = lead[1] - lb
        if mua < 0 or mub < 0:
            return 1
        c = FROB[inv_s, MUL[inv_lc, h[lead]]]
        qout[mua, mub] = c
        v = MUL[pc, FROB[twp, c]]
        ia = pa + mua
        ib = pb + mub
        h[ia, ib] = SUB[h[ia, ib], v]
        cur.advance()


def _ldiv_numpy(h, qa, qb, qc, lqa, lqb, lcq, j1, j2, kf, MUL, FROB, SUB, INV, pout, d0):
    cur = _Cursor(h, d0)
    while True:
        lead = cur.next_lead()
        if lead is None:
            return 0
        mua = lead[0] - lqa
        mub = lead[1] - lqb
        if mua < 0 or mub < 0:
            return 1
        tmu = (j1 * mua + j2 * mub) % kf
        c = MUL[h[lead], INV[FROB[tmu, lcq]]]
        pout[mua, mub] = c
        v = MUL[c, FROB[tmu, qc]]
        ia = mua + qa
        ib = mub + qb
        h[ia, ib] = SUB[h[ia, ib], v]
        cur.advance()


def _lead_term(terms: dict):
    lead = max(terms, key=lambda e: (e[0] + e[1], e[0]))
    return lead, terms[lead]


def _prepare(h_terms: dict, div_terms: dict, dtype):
    dh = _total_degree(h_terms)
    dd = _total_degree(div_terms)
    nq = dh - dd
    if nq < 0:
        raise NotDivisibleError("divisor has higher total degree than dividend")
    h = np.zeros((dh + 1, dh + 1), dtype=dtype)
    for (a, b), c in h_terms.items():
        h[a, b] = c
    out = np.zeros((nq + 1, nq + 1), dtype=dtype)
    return h, out, dh


def skew2_right_cofactor(ring, h_terms: dict, p_terms: dict,
                         backend: str | None = None) -> dict:
    """Solve h = p * q for q by leading-term peeling; raises NotDivisibleError."""
    if not h_terms:
        return {}
    tab = tables_for(ring.field)
    j1, j2 = ring.sigma_powers
    kf = ring.field.k
    pa, pb, pc = _to_coo(p_terms, tab.dtype)
    twp = (j1 * pa + j2 * pb) % kf
    (la, lb), lc = _lead_term(p_terms)
    inv_lc = int(tab.inv[lc])
    inv_s = (-(j1 * la + j2 * lb)) % kf
    h, qout, d0 = _prepare(h_terms, p_terms, tab.dtype)
    fn = _rdiv_numba if active_backend(backend) == "numba" else _rdiv_numpy
    status = fn(h, pa, pb, pc, twp, la, lb, inv_lc, inv_s,
                tab.mul, tab.frob, tab.sub, qout, d0)
    if status != 0:
        raise NotDivisibleError("no exact right cofactor exists")
    return _grid_to_terms(qout)


def skew2_left_cofactor(ring, h_terms: dict, q_terms: dict,
                        backend: str | None = None) -> dict:
    """Solve h = p * q for p; mirror of skew2_right_cofactor."""
    if not h_terms:
        return {}
    tab = tables_for(ring.field)
    j1, j2 = ring.sigma_powers
    kf = ring.field.k
    qa, qb, qc = _to_coo(q_terms, tab.dtype)
    (lqa, lqb), lcq = _lead_term(q_terms)
    h, pout, d0 = _prepare(h_terms, q_terms, tab.dtype)
    fn = _ldiv_numba if active_backend(backend) == "numba" else _ldiv_numpy
    status = fn(h, qa, qb, qc, lqa, lqb, lcq, j1, j2, kf,
                tab.mul, tab.frob, tab.sub, tab.inv, pout, d0)
    if status != 0:
        raise NotDivisibleError("no exact left cofactor exists")
    return _grid_to_terms(pout)
