"""Fast exact evaluation on block-circulant matrices ``(sum a_i P_n^(i-r)) (x) J_k``.

Two independent routes to ``per(z; .)``:

* :func:`theorem7_value` -- closed form for ``(a0 I_n + a1 P_n) (x) J_k``.
* :func:`banded_per_z` -- a transfer sweep over the ``n`` blocks that tracks
  how half-built cycles are connected, for any band of ``t + 1 <= n``
  coefficients.  Cost grows linearly in ``n`` for fixed ``k`` and ``t``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb, factorial

from .algebra import Poly, ZPoly, evaluate, rising_factorial, rising_factorial_int
from .injections import ContractViolation
from .matrix import CirculantSpec, circulant_matrix
from .rook import expand_last_k, per_z_oracle, rook_poly_oracle

__all__ = [
    "ClosedFormTerm",
    "theorem7_terms",
    "theorem7_value",
    "banded_per_z",
    "structured_rook_z",
    "MAX_STRUCTURED_ROOK",
]

MAX_STRUCTURED_ROOK = 12


@dataclass(frozen=True)
class ClosedFormTerm:
    """Summand ``s`` of the closed form, kept in integer arithmetic:

    ``(z)^(s) * (s!)^(n-1) * [C(k, s) a0^(k-s) a1^s (z + s)^(k-s)]^n``
    which equals ``(z)^(s) / s! * [s! C(k, s) a0^(k-s) a1^s (z + s)^(k-s)]^n``.
    """

    s: int
    n: int
    k: int
    a0: object
    a1: object

    def inner(self, z=None):
        scale = comb(self.k, self.s) * self.a0 ** (self.k - self.s) * self.a1**self.s
        if z is None:
            return rising_factorial(self.s, self.k - self.s) * scale
        return rising_factorial_int(z + self.s, self.k - self.s) * scale

    def value(self, z=None):
        lead = factorial(self.s) ** (self.n - 1)
        if z is None:
            return rising_factorial(0, self.s) * lead * self.inner() ** self.n
        return rising_factorial_int(z, self.s) * lead * self.inner(z) ** self.n


def theorem7_terms(n: int, k: int, a0, a1):
    if n < 1 or k < 1:
        raise ContractViolation("n and k must be at least 1")
    return [ClosedFormTerm(s, n, k, a0, a1) for s in range(k + 1)]


def theorem7_value(n: int, k: int, a0, a1, z: int | None = None):
    """``per(z; (a0 I_n + a1 P_n) (x) J_k)`` from the closed form.

    With ``z`` bound to an integer the whole computation stays in integers
    and returns an ``int`` (or a MultiPoly for symbolic ``a0``, ``a1``).
    """
    total = 0
    for term in theorem7_terms(n, k, a0, a1):
        total = total + term.value(z)
    if z is None and not isinstance(total, Poly):
        total = ZPoly((total,))
    return total


# ---------------------------------------------------------------------------
# vertex sweep
#
# Vertices (block, slot) are processed one at a time, block by block.  An arc
# between two vertices is opened as a pending strand at whichever endpoint is
# processed first and consumed at the other.  Each component of the processed
# part is either a closed cycle (weight z) or a path whose loose ends are two
# pending strands, so a state is a sorted tuple (multiset) of fragments
#     (block where the head arc lands, block the tail arc comes from).
# Fragments with equal labels are interchangeable; consuming one of them is
# counted with its multiplicity.


def _band(spec: CirculantSpec):
    """Map ``e -> a`` where block ``b`` sends arcs to ``(b + e) mod n``."""
    out = {}
    for i, a in enumerate(spec.coeffs):
        if a != 0:
            out[spec.shift_exponent(i)] = a
    return out


def _remove(frags, *items):
    out = list(frags)
    for it in items:
        out.remove(it)
    return out


def _vertex_step(state, c, later, outs, ins, w_self, zfac):
    """Transitions for one vertex of block ``c``.

    ``outs``/``ins`` list ``(block, weight)`` for arcs this vertex may open
    toward unprocessed vertices; ``later`` says whether block ``c`` still has
    unprocessed vertices after this one.  Yields ``(new_state, weight)``.
    """
    counts = {}
    for f in state:
        counts[f] = counts.get(f, 0) + 1
    heads = [f for f in counts if f[0] == c]
    tails = [f for f in counts if f[1] == c]
    outs = [(b, a) for b, a in outs if b != c or later]
    ins = [(b, a) for b, a in ins if b != c or later]

    if w_self is not None:
        yield state, w_self * zfac
    for f in heads:
        mf = counts[f]
        for g in tails:
            if f == g:
                # close the fragment into a cycle
                yield tuple(_remove(state, f)), zfac * mf
                if mf > 1:
                    yield tuple(sorted(_remove(state, f, f) + [(g[0], f[1])])), mf * (mf - 1)
            else:
                yield tuple(sorted(_remove(state, f, g) + [(g[0], f[1])])), mf * counts[g]
        for blk, a in outs:
            yield tuple(sorted(_remove(state, f) + [(blk, f[1])])), a * mf
    for blk_in, a_in in ins:
        for g in tails:
            yield tuple(sorted(_remove(state, g) + [(g[0], blk_in)])), a_in * counts[g]
        for blk, a in outs:
            yield tuple(sorted(list(state) + [(blk, blk_in)])), a * a_in


def banded_per_z(spec: CirculantSpec, z: int | None = None):
    """``per(z; circulant_matrix(spec))`` without enumerating permutations.

    Returns a polynomial in ``z``, or the value at the integer ``z`` when one
    is given.  Bands wider than the number of blocks fall back to the oracle.
    """
    n, k = spec.n, spec.k
    if spec.t + 1 > n:
        warnings.warn(
            f"band of {spec.t + 1} coefficients exceeds n={n}; using the brute-force oracle",
            RuntimeWarning,
            stacklevel=2,
        )
        p = per_z_oracle(circulant_matrix(spec))
        return p if z is None else evaluate(p, {"z": z})

    band = _band(spec)
    one = 1 if z is not None else ZPoly((1,))
    zfac = z if z is not None else ZPoly((0, 1))
    states = {(): one}
    for c in range(n):
        outs = [((c + e) % n, a) for e, a in band.items() if (c + e) % n >= c]
        ins = [((c - e) % n, a) for e, a in band.items() if (c - e) % n >= c]
        w_self = band.get(0)
        for u in range(k):
            later = u < k - 1
            nxt = {}
            for state, weight in states.items():
                for key, w in _vertex_step(state, c, later, outs, ins, w_self, zfac):
                    add = weight * w
                    nxt[key] = nxt[key] + add if key in nxt else add
            states = nxt
        # every strand landing in block c must have been consumed
        states = {s: w for s, w in states.items() if all(h != c and t != c for h, t in s)}
    result = states.get((), 0)
    if z is None and not isinstance(result, Poly):
        result = ZPoly((result,))
    return result


def structured_rook_z(spec: CirculantSpec, force: bool = False) -> Poly:
    """Full ``R(x; z; .)`` of the materialised circulant by row expansion."""
    if spec.size > MAX_STRUCTURED_ROOK and not force:
        raise ContractViolation(
            f"nk = {spec.size} exceeds {MAX_STRUCTURED_ROOK}; the expansion is exponential in nk "
            "(use banded_per_z for the permanent, or force=True)"
        )
    A = circulant_matrix(spec)
    if A.rows == 1:
        return rook_poly_oracle(A).poly
    return expand_last_k(A, 1).poly
