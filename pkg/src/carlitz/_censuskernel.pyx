# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel for prime fields.

Mirrors carlitz.kernels.eval_block exactly: same point order, same rank
conventions, same collection contract.  The pure kernel remains the
reference; results are cross-checked in the test suite and the benchmark
compares the two backends.
"""

from libc.stdlib cimport calloc, free


def eval_block(int p, int nvars, int k, int alpha_max, int max_exp,
               betas, alphas, coeffs, exps,
               long long start, long long stop, int rank_kind,
               bint monic_only, int collect_min):
    cdef int nterms = len(betas)
    cdef int width = alpha_max + 1
    cdef int rows = k + 1
    cdef long long index
    cdef int ti, j, e, beta, d, col, rank, deg, cell
    cdef long long val, acc, rem  # products stay below 2^32 for p <= 2^16
    cdef bint nonzero

    cdef int *c_betas = <int *> calloc(nterms if nterms else 1, sizeof(int))
    cdef int *c_alphas = <int *> calloc(nterms if nterms else 1, sizeof(int))
    cdef long long *c_coeffs = <long long *> calloc(nterms if nterms else 1,
                                                    sizeof(long long))
    cdef int *c_exps = <int *> calloc(nterms * nvars if nterms else 1,
                                      sizeof(int))
    cdef long long *pow_tab = <long long *> calloc(p * (max_exp + 1),
                                                   sizeof(long long))
    cdef int *a = <int *> calloc(nvars, sizeof(int))
    cdef long long *v = <long long *> calloc(rows * width, sizeof(long long))
    cdef long long *w = <long long *> calloc(rows * width, sizeof(long long))
    cdef long long *hist = <long long *> calloc(rows, sizeof(long long))
    if (c_betas is NULL or c_alphas is NULL or c_coeffs is NULL
            or c_exps is NULL or pow_tab is NULL or a is NULL
            or v is NULL or w is NULL or hist is NULL):
        raise MemoryError()

    collected = []
    try:
        for ti in range(nterms):
            c_betas[ti] = betas[ti]
            c_alphas[ti] = alphas[ti]
            c_coeffs[ti] = coeffs[ti]
        for ti in range(nterms * nvars):
            c_exps[ti] = exps[ti]
        for j in range(p):
            pow_tab[j * (max_exp + 1)] = 1
            acc = 1
            for e in range(1, max_exp + 1):
                acc = (acc * j) % p
                pow_tab[j * (max_exp + 1) + e] = acc

        index = start
        for j in range(nvars):
            a[j] = index % p
            index //= p

        index = start
        while index < stop:
            if not (monic_only and a[nvars - 1] == 0):
                for cell in range(rows * width):
                    v[cell] = 0
                for ti in range(nterms):
                    val = c_coeffs[ti]
                    for j in range(nvars):
                        e = c_exps[ti * nvars + j]
                        if e:
                            val = (val * pow_tab[a[j] * (max_exp + 1) + e]) % p
                    cell = c_betas[ti] * width + c_alphas[ti]
                    v[cell] = (v[cell] + val) % p
                deg = 0
                for beta in range(k, -1, -1):
                    nonzero = False
                    for col in range(width):
                        if v[beta * width + col]:
                            nonzero = True
                            break
                    if nonzero:
                        deg = beta
                        break
                if rank_kind == 0:
                    rank = k - deg
                else:
                    for cell in range(rows * width):
                        w[cell] = v[cell]
                    rank = 0
                    d = deg
                    while d > 0:
                        for col in range(width):
                            acc = w[d * width + col]
                            for beta in range(d - 1, 0, -1):
                                cell = beta * width + col
                                acc = (acc + w[cell]) % p
                                w[cell] = acc
                            rem = (acc + w[col]) % p
                            w[col] = rem
                        nonzero = False
                        for col in range(width):
                            if w[col]:
                                nonzero = True
                                break
                        if nonzero:
                            break
                        rank += 1
                        for beta in range(d):
                            for col in range(width):
                                w[beta * width + col] = w[(beta + 1) * width + col]
                        d -= 1
                    if d == 0:
                        nonzero = False
                        for col in range(width):
                            if w[col]:
                                nonzero = True
                                break
                        if not nonzero:
                            rank = k + 1
                if rank <= k:
                    hist[rank] += 1
                if 0 <= collect_min and collect_min <= rank:
                    collected.append((index, rank))
            j = 0
            while j < nvars:
                a[j] += 1
                if a[j] < p:
                    break
                a[j] = 0
                j += 1
            index += 1

        out_hist = [hist[beta] for beta in range(rows)]
        return out_hist, collected
    finally:
        free(c_betas)
        free(c_alphas)
        free(c_coeffs)
        free(c_exps)
        free(pow_tab)
        free(a)
        free(v)
        free(w)
        free(hist)
