"""Characteristic-0 geometry of the rank loci cut out by L-coefficients.

The variety attached to (m, i) is generated by the i consecutive
T-coefficients of the built-in provider's symbolic L-polynomial whose
a-degrees are exactly m-1, m-2, ..., m-i.  The window is selected by
degree matching, not by position from the top: the top coefficient (the
full determinant, degree m) never participates, which is the choice the
scheme-degree identity (m-1)(m-2)...(m-i) certifies.  Each handle records
its window in provenance so downstream reports can name it.
"""

from __future__ import annotations

from .errors import (
    IncompatibleRingError,
    InvalidInputError,
    WindowSelectionError,
)
from .groebner import GroebnerBasis, groebner_basis, hilbert_series_data
from .lfun import extract_coefficients, schur_provider
from .multipoly import (
    MultiPoly,
    PolyRing,
    QQ,
    change_domain,
    grevlex_key,
    is_homogeneous,
    specialize,
)


class IdealHandle:
    """Generator list with cached Groebner and Hilbert data."""

    def __init__(self, ring: PolyRing, generators, provenance=None,
                 projective=None):
        self.ring = ring
        self.generators = list(generators)
        self.provenance = dict(provenance or {})
        if projective is None:
            projective = all(is_homogeneous(g, ignore=()) is not None
                             for g in self.generators)
        self.projective = projective
        self._groebner: dict = {}
        self._hilbert = None

    def groebner(self, order: str = "grevlex", timeout=None) -> GroebnerBasis:
        if order not in self._groebner:
            self._groebner[order] = groebner_basis(self.generators, self.ring,
                                                   order, timeout=timeout)
        return self._groebner[order]

    def __repr__(self):
        return (f"IdealHandle({self.ring!r}, {len(self.generators)} generators, "
                f"provenance={self.provenance})")


def groebner(handle: IdealHandle, order: str = "grevlex") -> GroebnerBasis:
    return handle.groebner(order)


def _normalize_sign(f: MultiPoly) -> MultiPoly:
    if f.is_zero():
        return f
    lead = max(f.terms, key=grevlex_key)
    if f.terms[lead] < 0:
        return -f
    return f


def variety_ideal(m: int, i: int) -> IdealHandle:
    """Defining ideal of the (m, i) rank locus over Q[a0..am].

    Raises WindowSelectionError (with a diagnostic dump of the available
    coefficient degrees) if the degree-matched window does not exist.
    """
    if m < 2:
        raise InvalidInputError(f"need m >= 2, got m={m}")
    if i < 1:
        raise InvalidInputError(f"need i >= 1, got i={i}")
    provider = schur_provider(m)
    table = extract_coefficients(provider.l_polynomial())
    by_degree = {}
    for (beta, alpha), poly in table.items():
        if alpha == 0 and not poly.is_zero():
            d = is_homogeneous(poly, ignore=())
            if d is not None and d > 0:
                by_degree[d] = (beta, poly)
    wanted = list(range(m - 1, m - i - 1, -1))
    if i > m - 1 or any(d not in by_degree or d < 1 for d in wanted):
        available = sorted(by_degree)
        raise WindowSelectionError(
            f"no window of {i} consecutive coefficients of degrees {wanted} "
            f"for m={m}; available nonzero coefficient degrees: {available}")
    ring = PolyRing(QQ, tuple(f"a{j}" for j in range(m + 1)))
    gens = []
    betas = []
    for d in wanted:
        beta, poly = by_degree[d]
        betas.append(beta)
        gens.append(_normalize_sign(change_domain(poly, QQ)))
    provenance = {
        "provider": provider.provider_id(),
        "window_betas": betas,
        "window_degrees": wanted,
        "window_rule": "degree-matched; top coefficient excluded",
    }
    return IdealHandle(ring, gens, provenance, projective=True)


def hilbert_data(handle: IdealHandle):
    """(projective dimension, scheme degree) from the leading-term ideal."""
    if not handle.projective:
        raise InvalidInputError("hilbert_data needs homogeneous generators")
    if handle._hilbert is None:
        gb = handle.groebner()
        krull, degree = hilbert_series_data(gb.leading_exponents(),
                                            handle.ring.nvars)
        handle._hilbert = (krull - 1, degree)
    return handle._hilbert


def is_complete_intersection(handle: IdealHandle) -> bool:
    """True iff the codimension equals the number of given generators."""
    proj_dim, _ = hilbert_data(handle)
    codim = (handle.ring.nvars - 1) - proj_dim
    return codim == len([g for g in handle.generators if not g.is_zero()])


def radical_membership(f: MultiPoly, handle: IdealHandle) -> bool:
    """True iff f vanishes on the handle's zero set, decided by adjoining a
    fresh variable y and testing 1 in ideal(generators, 1 - y*f)."""
    if f.ring != handle.ring:
        raise IncompatibleRingError("f must live in the handle's ring")
    if f.is_zero():
        return True
    names = handle.ring.names + ("y",)
    ring_y = PolyRing(QQ, names)

    def lift(g):
        return MultiPoly(ring_y, {e + (0,): c for e, c in g.terms.items()})

    y = ring_y.var("y")
    gens = [lift(g) for g in handle.generators]
    gens.append(ring_y.one() - y * lift(f))
    gb = groebner_basis(gens, ring_y)
    return gb.is_unit_ideal()


def smallest_power_in_ideal(f: MultiPoly, handle: IdealHandle,
                            kappa_max: int = 6):
    """Smallest kappa <= kappa_max with NF(f^kappa) = 0, or None.

    Returns None immediately when f is not in the radical; the default
    bound is deliberately small since observed exponents follow no
    evident law.
    """
    if not radical_membership(f, handle):
        return None
    gb = handle.groebner()
    power = handle.ring.one()
    for kappa in range(1, kappa_max + 1):
        power = power * f
        if gb.reduces_to_zero(power):
            return kappa
    return None


def ideal_nesting_check(m: int, i: int) -> bool:
    """Whether the (m+1, i) ideal specialized at a_{m+1} = 0 cuts the same
    zero set (up to radical) as the (m, i) ideal; i = 0 holds trivially."""
    if i == 0:
        return True
    small = variety_ideal(m, i)
    big = variety_ideal(m + 1, i)
    ring_small = small.ring

    def restrict(g):
        h = specialize(g, {f"a{m + 1}": 0})
        return MultiPoly(ring_small, {e[:-1]: c for e, c in h.terms.items()})

    restricted = [restrict(g) for g in big.generators]
    restricted_handle = IdealHandle(ring_small,
                                    [g for g in restricted if not g.is_zero()])
    for g in restricted:
        if not radical_membership(g, small):
            return False
    for g in small.generators:
        if not radical_membership(g, restricted_handle):
            return False
    return True
