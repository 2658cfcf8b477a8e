"""Pure-Python census evaluation kernel.

Evaluates the mod-p reduced coefficient polynomials of a provider at every
point of a block of F_q^(m+1), returning the rank histogram and the
indices of points at or above a collection threshold.  The compiled
extension (carlitz._censuskernel) implements the same contract for prime
fields; this module is the always-available fallback and the reference
its results are checked against.

Point index convention: index = sum a_j * q^j, so a_0 varies fastest and
blocks of consecutive indices are exactly the lexicographic shards in
(a_m, ..., a_0).
"""

from __future__ import annotations

RANK_AT_INFINITY = 0
RANK_AT_ONE = 1


class EvalPlan:
    """Flattened, mod-p reduced coefficient data of one provider."""

    __slots__ = ("field", "m", "nvars", "k", "alpha_max", "max_exp",
                 "betas", "alphas", "coeffs", "exps")

    def __init__(self, field, m, k, terms):
        self.field = field
        self.m = m
        self.nvars = m + 1
        self.k = k
        self.betas = []
        self.alphas = []
        self.coeffs = []
        self.exps = []
        amax = 0
        emax = 1
        for beta, alpha, coeff, exps in terms:
            if coeff == 0:
                continue
            self.betas.append(beta)
            self.alphas.append(alpha)
            self.coeffs.append(coeff)
            self.exps.extend(exps)
            amax = max(amax, alpha)
            emax = max(emax, max(exps, default=0))
        self.alpha_max = amax
        self.max_exp = emax


def build_plan(provider, field) -> EvalPlan:
    from .lfun import extract_coefficients
    from .multipoly import reduce_mod_p

    table = extract_coefficients(provider.l_polynomial())
    terms = []
    for (beta, alpha), poly in sorted(table.items()):
        pbar = reduce_mod_p(poly, field)
        for e, c in sorted(pbar.terms.items()):
            terms.append((beta, alpha, c, e))
    return EvalPlan(field, provider.m, provider.k, terms)


def decode_point(index, q, nvars):
    out = []
    for _ in range(nvars):
        out.append(index % q)
        index //= q
    return out


def _pow_table(field, max_exp):
    q = field.q
    tab = [[1] * (max_exp + 1) for _ in range(q)]
    for v in range(q):
        acc = 1
        for e in range(1, max_exp + 1):
            acc = field.mul(acc, v)
            tab[v][e] = acc
    return tab


def eval_block(plan: EvalPlan, start, stop, rank_kind,
               monic_only=False, collect_min=-1):
    """Histogram of ranks over indices [start, stop).

    Returns (hist list of length k+1, collected list of (index, rank)).
    monic_only skips points whose a_m digit is zero; collect_min < 0
    collects nothing.
    """
    field = plan.field
    q = field.q
    nvars = plan.nvars
    k = plan.k
    amax = plan.alpha_max
    width = amax + 1
    betas, alphas, coeffs, exps = plan.betas, plan.alphas, plan.coeffs, plan.exps
    nterms = len(betas)
    pow_tab = _pow_table(field, plan.max_exp)
    prime = field.e == 1
    p = field.p
    add = field.add
    mul = field.mul

    hist = [0] * (k + 1)
    collected = []
    a = decode_point(start, q, nvars)
    v = [0] * ((k + 1) * width)
    w = [0] * ((k + 1) * width)
    for index in range(start, stop):
        if not (monic_only and a[nvars - 1] == 0):
            for cell in range((k + 1) * width):
                v[cell] = 0
            base = 0
            for ti in range(nterms):
                val = coeffs[ti]
                for j in range(nvars):
                    e = exps[base + j]
                    if e:
                        val = (val * pow_tab[a[j]][e]) % p if prime \
                            else mul(val, pow_tab[a[j]][e])
                base += nvars
                cell = betas[ti] * width + alphas[ti]
                v[cell] = (v[cell] + val) % p if prime else add(v[cell], val)
            # effective degree in T
            deg = 0
            for beta in range(k, -1, -1):
                if any(v[beta * width: (beta + 1) * width]):
                    deg = beta
                    break
            if rank_kind == RANK_AT_INFINITY:
                rank = k - deg
            else:
                w[:] = v
                rank = 0
                d = deg
                while d > 0:
                    # divide by T - 1: b_j = c_j + b_(j+1), remainder b_0
                    for col in range(width):
                        acc = w[d * width + col]
                        for beta in range(d - 1, 0, -1):
                            cell = beta * width + col
                            acc = (acc + w[cell]) % p if prime \
                                else add(acc, w[cell])
                            w[cell] = acc
                        rem = (acc + w[col]) % p if prime else add(acc, w[col])
                        w[col] = rem
                    if any(w[0:width]):
                        break
                    rank += 1
                    for beta in range(d):
                        for col in range(width):
                            w[beta * width + col] = w[(beta + 1) * width + col]
                    d -= 1
                if d == 0 and not any(w[0:width]):
                    # identically zero only happens for the zero polynomial,
                    # which providers never produce (T^0 coefficient is 1)
                    rank = k + 1
            if rank <= k:
                hist[rank] += 1
            if 0 <= collect_min <= rank:
                collected.append((index, rank))
        # odometer: a0 fastest
        j = 0
        while j < nvars:
            a[j] += 1
            if a[j] < q:
                break
            a[j] = 0
            j += 1
    return hist, collected
