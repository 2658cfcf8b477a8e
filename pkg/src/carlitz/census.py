"""Exhaustive twist censuses over F_q and their consistency oracles.

A census enumerates all coefficient vectors (a_0, ..., a_m) in F_q^(m+1)
in lexicographic order of (a_m, ..., a_0), computes the requested rank for
each point surviving the filters, and aggregates a histogram plus the
threshold counts #{rank >= i}.  Work is split into contiguous index
shards whose boundaries are recorded in the result manifest; shard merge
is plain addition, so any shard count yields identical results.

Per-point evaluation goes through the reduced symbolic coefficients
(Horner substitution), not per-point determinants; the determinant path
is retained in census_consistency as the independent cross-check.  A
compiled kernel is selected at import time for prime fields and unfiltered
or monic-only runs; the pure-Python kernel in carlitz.kernels is the
always-available fallback and the reference.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field as dataclass_field

from . import kernels
from .errors import (
    BudgetExceededError,
    InvalidInputError,
    SymmetryViolationError,
)
from .fields import Field
from .kernels import RANK_AT_INFINITY, RANK_AT_ONE, build_plan, decode_point
from .lfun import (
    MatrixProvider,
    rank_at_infinity,
    schur_provider,
    twist_l_polynomial,
)
from .twists import TwistPoly, is_powerfree, is_shift_stable, shift_orbit

try:  # compiled hot path; the pure kernel is the fallback
    from . import _censuskernel as _compiled
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None

DEFAULT_BUDGET = 10 ** 8
BUDGET_ENV = "CARLITZ_CENSUS_BUDGET"

KNOWN_FILTERS = ("powerfree", "squarefree", "shift-stable", "monic")


def configured_budget(explicit=None):
    if explicit is not None:
        return explicit
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return DEFAULT_BUDGET


def compiled_kernel_available() -> bool:
    return _compiled is not None and os.environ.get("CARLITZ_PURE") != "1"


@dataclass
class CensusSpec:
    q: int
    m: int
    provider: MatrixProvider = None
    rank_kind: str = "at-infinity"
    thresholds: tuple = (0, 1, 2)
    filters: tuple = ()
    shards: int = 1
    budget: int = None
    backend: str = "auto"  # auto | pure | compiled

    def __post_init__(self):
        if self.rank_kind not in ("at-infinity", "at-one"):
            raise InvalidInputError(f"unknown rank kind {self.rank_kind!r}")
        for f in self.filters:
            if f not in KNOWN_FILTERS:
                raise InvalidInputError(f"unknown filter {f!r}")
        if self.shards < 1:
            raise InvalidInputError("shard count must be positive")
        if self.provider is None:
            self.provider = schur_provider(self.m)
        if self.provider.m != self.m:
            raise InvalidInputError(
                f"provider is for m={self.provider.m}, census wants m={self.m}")
        if self.provider.q is not None and self.provider.q != self.q:
            raise InvalidInputError(
                f"provider is for q={self.provider.q}, census wants q={self.q}")

    @property
    def field(self) -> Field:
        return Field.of(self.q)

    @property
    def total_points(self) -> int:
        return self.q ** (self.m + 1)


@dataclass
class CensusResult:
    counts: dict
    histogram: dict
    total: int
    elapsed_ms: int
    manifest: list
    records: list = dataclass_field(default_factory=list)

    def csv_rows(self, spec: CensusSpec):
        """One row per threshold i; the trailing coset column is reserved."""
        rows = ["q,m,i,count,enumerated,rank_kind,provider,coset"]
        for i in spec.thresholds:
            rows.append(f"{spec.q},{spec.m},{i},{self.counts[i]},{self.total},"
                        f"{spec.rank_kind},{spec.provider.provider_id()},")
        return rows


def _shard_bounds(total, shards):
    return [(s * total // shards, (s + 1) * total // shards)
            for s in range(shards)]


def _rank_mode(kind):
    return RANK_AT_INFINITY if kind == "at-infinity" else RANK_AT_ONE


def _point_filters(spec: CensusSpec):
    """Filters needing univariate analysis; monic is handled positionally."""
    field = spec.field
    preds = []
    if "powerfree" in spec.filters:
        preds.append(lambda c: not all(x == 0 for x in c)
                     and is_powerfree(TwistPoly(field, c), field.q - 1))
    if "squarefree" in spec.filters:
        preds.append(lambda c: not all(x == 0 for x in c)
                     and is_powerfree(TwistPoly(field, c), 2))
    if "shift-stable" in spec.filters:
        preds.append(lambda c: is_shift_stable(TwistPoly(field, c)))
    return preds


def _use_compiled(spec: CensusSpec, plan) -> bool:
    if spec.backend == "pure":
        return False
    if not compiled_kernel_available():
        if spec.backend == "compiled":
            raise InvalidInputError("compiled kernel requested but unavailable")
        return False
    supported = plan.field.e == 1 and set(spec.filters) <= {"monic"}
    if spec.backend == "compiled" and not supported:
        raise InvalidInputError(
            "compiled kernel supports prime fields and at most the monic filter")
    return supported


def _eval_shard(spec, plan, start, stop, mode, collect_min, use_compiled):
    monic = "monic" in spec.filters
    slow = _point_filters(spec)
    if slow:
        return _eval_filtered(spec, plan, start, stop, mode, collect_min)
    if use_compiled:
        hist, collected = _compiled.eval_block(
            plan.field.p, plan.nvars, plan.k, plan.alpha_max, plan.max_exp,
            plan.betas, plan.alphas, plan.coeffs, plan.exps,
            start, stop, mode, monic, collect_min)
        return list(hist), list(collected)
    return kernels.eval_block(plan, start, stop, mode, monic, collect_min)


def _eval_filtered(spec, plan, start, stop, mode, collect_min):
    """Point-at-a-time path for filters that need factorization."""
    preds = _point_filters(spec)
    monic = "monic" in spec.filters
    q = spec.q
    nvars = plan.nvars
    hist = [0] * (plan.k + 1)
    collected = []
    for index in range(start, stop):
        c = decode_point(index, q, nvars)
        if monic and c[-1] == 0:
            continue
        if any(not pred(c) for pred in preds):
            continue
        h1, _ = kernels.eval_block(plan, index, index + 1, mode, False, -1)
        for r, n in enumerate(h1):
            if n:
                hist[r] += n
                if 0 <= collect_min <= r:
                    collected.append((index, r))
    return hist, collected


def census(spec: CensusSpec, collect_min=None) -> CensusResult:
    """Run the census; deterministic for any shard count.

    collect_min defaults to the smallest positive threshold; points with
    rank >= collect_min are reported as records in the TwistPoly text form.
    """
    budget = configured_budget(spec.budget)
    total = spec.total_points
    if total > budget:
        raise BudgetExceededError(
            f"census needs {total} point evaluations, budget is {budget} "
            f"(override via {BUDGET_ENV})", required=total, budget=budget)
    if collect_min is None:
        positive = [i for i in spec.thresholds if i > 0]
        collect_min = min(positive) if positive else -1
    t0 = time.monotonic()
    plan = build_plan(spec.provider, spec.field)
    use_compiled = _use_compiled(spec, plan)
    mode = _rank_mode(spec.rank_kind)
    manifest = _shard_bounds(total, spec.shards)
    hist = [0] * (plan.k + 1)
    collected = []
    for start, stop in manifest:
        h, c = _eval_shard(spec, plan, start, stop, mode, collect_min,
                           use_compiled)
        for r in range(len(hist)):
            hist[r] += h[r]
        collected.extend(c)
    counts = {}
    for i in spec.thresholds:
        counts[i] = sum(n for r, n in enumerate(hist) if r >= i)
    records = []
    for index, rank in collected:
        tw = TwistPoly(spec.field, decode_point(index, spec.q, spec.m + 1))
        records.append((tw.text(), rank))
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    return CensusResult({i: counts[i] for i in spec.thresholds},
                        {r: n for r, n in enumerate(hist) if n},
                        sum(hist), elapsed_ms, manifest, records)


# ---------------------------------------------------------------------------
# the two-pipeline oracle
# ---------------------------------------------------------------------------


@dataclass
class ConsistencyReport:
    ok: bool
    witnesses: list

    def __bool__(self):
        return self.ok


def census_consistency(spec: CensusSpec, max_witnesses=16) -> ConsistencyReport:
    """Compare the symbolic-coefficient pipeline against per-point
    determinants for every point and every threshold; the primary
    correctness oracle for the census machinery."""
    if spec.rank_kind != "at-infinity":
        raise InvalidInputError("the consistency oracle is defined for "
                                "rank-at-infinity censuses")
    budget = configured_budget(spec.budget)
    if spec.total_points > budget:
        raise BudgetExceededError(
            f"consistency sweep needs {spec.total_points} evaluations, "
            f"budget is {budget}", required=spec.total_points, budget=budget)
    field = spec.field
    provider = spec.provider
    k = provider.k
    plan = build_plan(provider, field)
    witnesses = []
    for index in range(spec.total_points):
        coeffs = decode_point(index, spec.q, spec.m + 1)
        P = TwistPoly(field, coeffs)
        # pipeline 1: specialize entries, determinant over F_q[t]
        L = twist_l_polynomial(provider, P, method="determinant")
        r_det = rank_at_infinity(L, k)
        # pipeline 2: evaluate the reduced symbolic coefficients
        hist, _ = kernels.eval_block(plan, index, index + 1,
                                     RANK_AT_INFINITY, False, -1)
        r_sym = next(r for r, n in enumerate(hist) if n)
        for i in spec.thresholds:
            if (r_det >= i) != (r_sym >= i):
                witnesses.append({"point": P.text(), "i": i,
                                  "determinant_rank": r_det,
                                  "symbolic_rank": r_sym})
                if len(witnesses) >= max_witnesses:
                    return ConsistencyReport(False, witnesses)
        if r_det != r_sym:
            witnesses.append({"point": P.text(),
                              "determinant_rank": r_det,
                              "symbolic_rank": r_sym})
            if len(witnesses) >= max_witnesses:
                return ConsistencyReport(False, witnesses)
    return ConsistencyReport(not witnesses, witnesses)


def nesting_census(q, m, i, provider=None, provider_next=None) -> bool:
    """Point-set form of the tower property at T = 1: the rank >= i twists
    of degree <= m are exactly the rank >= i twists of degree <= m+1 whose
    top coefficient vanishes."""
    if i == 0:
        return True
    spec_small = CensusSpec(q, m, provider=provider, rank_kind="at-one",
                            thresholds=(i,))
    spec_big = CensusSpec(q, m + 1, provider=provider_next,
                          rank_kind="at-one", thresholds=(i,))
    small = census(spec_small, collect_min=i)
    big = census(spec_big, collect_min=i)
    small_set = {text for text, rank in small.records if rank >= i}
    big_cut = set()
    for text, rank in big.records:
        if rank < i:
            continue
        coeffs = text.split(":", 1)[1].split(",")
        if int(coeffs[-1]) == 0:
            big_cut.add(f"F{q}:" + ",".join(coeffs[:-1]))
    return small_set == big_cut


# ---------------------------------------------------------------------------
# shift-orbit reduction
# ---------------------------------------------------------------------------


def _point_rank(spec: CensusSpec, plan, index, mode) -> int:
    hist, _ = kernels.eval_block(plan, index, index + 1, mode, False, -1)
    return next(r for r, n in enumerate(hist) if n)


def _index_of(coeffs, q):
    idx = 0
    for c in reversed(coeffs):
        idx = idx * q + c
    return idx


def shift_orbit_reduce(spec: CensusSpec, sample=64) -> CensusResult:
    """Census over one representative per shift orbit, scaled by orbit size.

    The rank's invariance under theta -> theta + a is verified on a sample
    of orbits first; a violation aborts with the witness, since the engine
    must not assume a symmetry the provider lacks.
    """
    budget = configured_budget(spec.budget)
    total = spec.total_points
    if total > budget:
        raise BudgetExceededError(
            f"census needs {total} point evaluations, budget is {budget}",
            required=total, budget=budget)
    if spec.filters:
        raise InvalidInputError("orbit reduction runs unfiltered censuses")
    t0 = time.monotonic()
    field = spec.field
    plan = build_plan(spec.provider, field)
    mode = _rank_mode(spec.rank_kind)
    q = spec.q
    nvars = spec.m + 1
    step = max(1, total // sample)
    for index in range(0, total, step):
        P = TwistPoly(field, decode_point(index, q, nvars))
        ranks = {}
        for member in shift_orbit(P):
            r = _point_rank(spec, plan, _index_of(member.coeffs, q), mode)
            ranks[member.text()] = r
        if len(set(ranks.values())) > 1:
            raise SymmetryViolationError(
                f"rank is not shift-invariant for this provider: {ranks}",
                witness=ranks)
    hist = [0] * (plan.k + 1)
    enumerated = 0
    for index in range(total):
        coeffs = decode_point(index, q, nvars)
        P = TwistPoly(field, coeffs)
        orbit = shift_orbit(P)
        if orbit[0].coeffs != tuple(coeffs):
            continue  # not the orbit representative
        r = _point_rank(spec, plan, index, mode)
        hist[r] += len(orbit)
        enumerated += len(orbit)
    counts = {i: sum(n for r, n in enumerate(hist) if r >= i)
              for i in spec.thresholds}
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    return CensusResult(counts, {r: n for r, n in enumerate(hist) if n},
                        enumerated, elapsed_ms, [(0, total)], [])
