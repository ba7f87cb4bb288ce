"""Test-local oracles, kept independent of the library code paths they check."""

from itertools import product

from orekex import CommPolynomial, OrePolynomial


def naive_mulmod(a, b, modulus, p):
    """Schoolbook multiply-and-reduce over F_p[x]; lists lowest degree first."""
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            res[i + j] += x * y
    res = [c % p for c in res]
    k = len(modulus) - 1
    for i in range(len(res) - 1, k - 1, -1):
        c = res[i]
        if c:
            for j in range(k + 1):
                res[i - k + j] = (res[i - k + j] - c * modulus[j]) % p
    res = res[:k]
    return tuple(res + [0] * (k - len(res)))


def naive_pow(a, n, modulus, p):
    k = len(modulus) - 1
    acc = tuple([1] + [0] * (k - 1))
    for _ in range(n):
        acc = naive_mulmod(list(acc), list(a), modulus, p)
    return acc


def skew_mul_oracle(f: OrePolynomial, g: OrePolynomial) -> OrePolynomial:
    """Skew product via FieldElement arithmetic and one-automorphism-at-a-time
    twisting; a separate route from the table kernels."""
    ring = f.ring
    spec = ring.field
    out = {}
    for e1, c1 in f.terms.items():
        fe1 = spec.from_index(c1)
        for e2, c2 in g.terms.items():
            val = spec.from_index(c2)
            for i, times in enumerate(e1):
                phi = spec.frobenius(ring.sigma_powers[i])
                for _ in range(times):
                    val = phi(val)
            key = tuple(a + b for a, b in zip(e1, e2))
            out[key] = out.get(key, spec.zero()) + fe1 * val
    return OrePolynomial(ring, {k: v.index for k, v in out.items() if not v.is_zero()})


def _operator_of(h: OrePolynomial):
    """Weyl polynomial as {d-exponents: CommPolynomial coefficient}."""
    n, p = h.ring.n, h.ring.p
    out = {}
    for exps, c in h.terms.items():
        xkey, dkey = exps[:n], exps[n:]
        cur = out.get(dkey, CommPolynomial.zero(p, n))
        out[dkey] = cur + CommPolynomial(p, n, {xkey: c})
    return out


def weyl_mul_oracle(f: OrePolynomial, g: OrePolynomial) -> OrePolynomial:
    """Weyl product by moving one d_i at a time across coefficients with
    d_i * c = c * d_i + dc/dx_i; independent of the closed-form expansion."""
    ring = f.ring
    n, p = ring.n, ring.p
    zero = CommPolynomial.zero(p, n)
    out = {}
    for wkey, a_coef in _operator_of(f).items():
        for vkey, b_coef in _operator_of(g).items():
            parts = {(0,) * n: b_coef}
            for i in range(n):
                for _ in range(wkey[i]):
                    moved = {}
                    for extra, cp in parts.items():
                        raised = list(extra)
                        raised[i] += 1
                        raised = tuple(raised)
                        moved[raised] = moved.get(raised, zero) + cp
                        der = cp.partial(i + 1)
                        if not der.is_zero():
                            moved[extra] = moved.get(extra, zero) + der
                    parts = moved
            for extra, cp in parts.items():
                dkey = tuple(extra[j] + vkey[j] for j in range(n))
                contribution = a_coef * cp
                out[dkey] = out.get(dkey, zero) + contribution
    terms = {}
    for dkey, cp in out.items():
        for xkey, c in cp.terms.items():
            terms[xkey + dkey] = c
    return OrePolynomial(ring, terms)


def all_polynomials(ring, max_total_degree, coeff_values):
    """Every polynomial with total degree <= bound; tiny rings only."""
    monos = [
        e
        for e in product(range(max_total_degree + 1), repeat=ring.exp_len)
        if sum(e) <= max_total_degree
    ]
    for assignment in product(range(coeff_values), repeat=len(monos)):
        terms = {m: c for m, c in zip(monos, assignment) if c}
        yield OrePolynomial(ring, terms)
