"""Exact polynomial arithmetic.

Three kinds of value live here:

* ``MultiPoly`` -- sparse polynomial over a fixed tuple of named
  indeterminates with integer coefficients.  Used for symbolic matrix entries.
* ``Poly`` -- dense univariate polynomial in one named variable.  Its
  coefficients are ring elements: ``int``, ``MultiPoly`` or a ``Poly`` in an
  inner variable.  A ``ZPoly`` is a ``Poly`` in ``z``; an ``XZPoly`` is a
  ``Poly`` in ``x`` whose coefficients are ``ZPoly`` values.
* plain Python ``int`` for scalars.

Variables nest in a fixed order (``x`` outside ``z`` outside any
``MultiPoly``), so mixed expressions such as ``x * z * a`` always land in
the same canonical shape.  Nothing in this module uses floating point.
"""

from __future__ import annotations


__all__ = [
    "StructuralError",
    "MultiPoly",
    "MultiRing",
    "Poly",
    "ZPoly",
    "XZPoly",
    "Z",
    "X",
    "is_zero",
    "rising_factorial",
    "rising_factorial_int",
    "evaluate",
    "render",
    "xz_to_json",
    "xz_from_json",
    "z_to_json",
    "z_from_json",
    "binomial",
]

# outer variables get larger ranks
_VAR_RANK = {"x": 2, "z": 1}


class StructuralError(ValueError):
    """Operands or indices do not fit together (shape, ring, bounds)."""


def is_zero(value) -> bool:
    return value == 0


def binomial(a: int, b: int) -> int:
    """``C(a, b)`` with the convention ``C(a, b) = 0`` outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    from math import comb

    return comb(a, b)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


class MultiPoly:
    """Sparse integer polynomial over a fixed, ordered set of indeterminates.

    ``terms`` maps exponent tuples (one entry per name in ``gens``) to nonzero
    integer coefficients.  Instances are immutable; arithmetic between two
    polynomials over different ``gens`` raises :class:`StructuralError`.
    """

    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens, terms=None):
        self.gens = tuple(gens)
        clean = {}
        if terms:
            width = len(self.gens)
            for exps, coeff in terms.items():
                if coeff:
                    exps = tuple(exps)
                    if len(exps) != width:
                        raise StructuralError(
                            f"exponent vector {exps} does not match {width} indeterminates"
                        )
                    clean[exps] = clean.get(exps, 0) + coeff
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, gens, value: int) -> "MultiPoly":
        gens = tuple(gens)
        return cls(gens, {(0,) * len(gens): value})

    @classmethod
    def generator(cls, gens, name: str) -> "MultiPoly":
        gens = tuple(gens)
        if name not in gens:
            raise StructuralError(f"{name!r} is not one of {gens}")
        exps = tuple(1 if g == name else 0 for g in gens)
        return cls(gens, {exps: 1})

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.gens != self.gens:
                raise StructuralError(
                    f"indeterminate sets differ: {self.gens} vs {other.gens}"
                )
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.gens, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return MultiPoly(self.gens)
            return MultiPoly(self.gens, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.gens, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.gens, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, int):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * len(self.gens): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            const = self.constant_value()
            if const is not None:
                self._hash = hash(const)
            else:
                self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def constant_value(self):
        """The integer value if this polynomial is constant, else ``None``."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            ((e, c),) = self.terms.items()
            if not any(e):
                return c
        return None

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, bindings):
        """Substitute integer values for some or all indeterminates.

        Names absent from ``gens`` are ignored.  Returns an ``int`` when every
        indeterminate that occurs in the result has been bound.
        """
        idx = [(i, bindings[g]) for i, g in enumerate(self.gens) if g in bindings]
        if not idx:
            return self
        out = {}
        for e, c in self.terms.items():
            coeff = c
            e = list(e)
            for i, val in idx:
                if e[i]:
                    coeff *= val ** e[i]
                    e[i] = 0
            key = tuple(e)
            out[key] = out.get(key, 0) + coeff
        result = MultiPoly(self.gens, out)
        const = result.constant_value()
        return result if const is None else const

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        order = sorted(self.terms.items(), key=lambda t: (-sum(t[0]), [-v for v in t[0]]))
        for e, c in order:
            factors = []
            for g, p in zip(self.gens, e):
                if p == 1:
                    factors.append(g)
                elif p > 1:
                    factors.append(f"{g}^{p}")
            parts.append(_signed_term(c, "*".join(factors)))
        return _join_terms(parts)

    def __repr__(self):
        return f"MultiPoly({self})"


class MultiRing:
    """Factory for :class:`MultiPoly` values sharing one indeterminate set."""

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise StructuralError("duplicate indeterminate names")
        if any(nm in _VAR_RANK for nm in names):
            raise StructuralError("'x' and 'z' are reserved for rook polynomials")
        self.names = names

    def __call__(self, name: str) -> MultiPoly:
        return MultiPoly.generator(self.names, name)

    def gens(self):
        return tuple(self(nm) for nm in self.names)

    def constant(self, value: int) -> MultiPoly:
        return MultiPoly.constant(self.names, value)


# ---------------------------------------------------------------------------
# dense univariate polynomials


def _rank(value) -> int:
    if isinstance(value, Poly):
        return _VAR_RANK.get(value.var, 0)
    return -1


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``var**i``.

    Trailing zero coefficients are trimmed, so the zero polynomial has an empty
    coefficient tuple and ``degree == -1``.
    """

    __slots__ = ("coeffs", "var", "_hash")

    def __init__(self, coeffs=(), var: str = "z"):
        c = list(coeffs)
        while c and is_zero(c[-1]):
            c.pop()
        self.coeffs = tuple(c)
        self.var = var
        self._hash = None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, power: int):
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0

    def _same(self, other) -> bool:
        return isinstance(other, Poly) and other.var == self.var

    def __add__(self, other):
        if self._same(other):
            a, b = self.coeffs, other.coeffs
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, c in enumerate(b):
                out[i] = out[i] + c
            return Poly(out, self.var)
        if _rank(other) > _rank(self):
            # same Python type, so the reflected method is never tried for us
            return other.__radd__(self)
        if not self.coeffs:
            return Poly((other,), self.var)
        out = list(self.coeffs)
        out[0] = out[0] + other
        return Poly(out, self.var)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if self._same(other) or _rank(other) <= _rank(self):
            return self + (-other)
        return other.__rsub__(self)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._same(other):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly((), self.var)
            out = [0] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if is_zero(ca):
                    continue
                for j, cb in enumerate(b):
                    out[i + j] = out[i + j] + ca * cb
            return Poly(out, self.var)
        if _rank(other) > _rank(self):
            return other.__rmul__(self)
        return Poly([c * other for c in self.coeffs], self.var)

    def __rmul__(self, other):
        if _rank(other) > _rank(self):
            return NotImplemented
        return Poly([other * c for c in self.coeffs], self.var)

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly((1,), self.var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def shift(self, places: int) -> "Poly":
        """Multiply by ``var**places``."""
        if not self.coeffs:
            return self
        return Poly((0,) * places + self.coeffs, self.var)

    def __eq__(self, other):
        if self._same(other):
            return self.coeffs == other.coeffs
        if isinstance(other, Poly) and _rank(other) > _rank(self):
            return other.__eq__(self)
        # compare against a scalar / inner-ring value
        if len(self.coeffs) > 1:
            return False
        return self.coefficient(0) == other

    def __hash__(self):
        if self._hash is None:
            if len(self.coeffs) <= 1:
                self._hash = hash(self.coefficient(0))
            else:
                self._hash = hash((self.var, self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def map_coeffs(self, fn) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], self.var)

    def __call__(self, value):
        """Horner evaluation at ``value`` (any ring element)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Poly[{self.var}]({render(self)})"


def ZPoly(coeffs=()) -> Poly:
    """Polynomial in ``z`` from ascending coefficients."""
    return Poly(coeffs, "z")


def XZPoly(x_coeffs=()) -> Poly:
    """Polynomial in ``x`` whose coefficients are polynomials in ``z``.

    Entries of ``x_coeffs`` may be ``Poly`` values in ``z`` or ascending
    coefficient sequences for them.
    """
    rows = []
    for c in x_coeffs:
        if isinstance(c, Poly):
            rows.append(c)
        elif isinstance(c, (list, tuple)):
            rows.append(ZPoly(c))
        else:
            rows.append(ZPoly((c,)))
    return Poly(rows, "x")


Z = Poly((0, 1), "z")
X = Poly((0, 1), "x")


def rising_factorial(offset, length: int) -> Poly:
    """``(z + offset)(z + offset + 1) ... (z + offset + length - 1)``.

    Returns the constant ``1`` for ``length == 0``.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    result = Poly((1,), "z")
    for i in range(length):
        result = result * Poly((offset + i, 1), "z")
    return result


def rising_factorial_int(start: int, length: int) -> int:
    """Integer rising factorial ``start (start + 1) ... (start + length - 1)``."""
    acc = 1
    for i in range(length):
        acc *= start + i
    return acc


def _simplify(value):
    if isinstance(value, Poly):
        if value.degree <= 0:
            return _simplify(value.coefficient(0))
        return value
    if isinstance(value, MultiPoly):
        const = value.constant_value()
        return value if const is None else const
    return value


def evaluate(value, bindings):
    """Substitute values for named variables (``x``, ``z`` or MultiPoly names).

    Partial bindings are allowed; names that do not occur are ignored.  A fully
    bound expression collapses to a plain ``int``.
    """
    if isinstance(value, Poly):
        coeffs = [evaluate(c, bindings) for c in value.coeffs]
        if value.var in bindings:
            point = bindings[value.var]
            acc = 0
            for c in reversed(coeffs):
                acc = acc * point + c
            return _simplify(acc)
        return _simplify(Poly(coeffs, value.var))
    if isinstance(value, MultiPoly):
        return value.evaluate(bindings)
    return value


# ---------------------------------------------------------------------------
# rendering


def _signed_term(coeff, body: str) -> str:
    if not body:
        return str(coeff)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}*{body}"


def _join_terms(parts) -> str:
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def _coeff_str(c) -> tuple[str, bool]:
    """String for a coefficient and whether it is a single signed product."""
    s = render(c)
    simple = (" + " not in s and " - " not in s)
    return s, simple


def render(value) -> str:
    """Canonical text form.

    ``z`` polynomials print in descending powers (``z^2 + z``); ``x``
    polynomials print ascending with explicit exponents, e.g.
    ``1 + (2*z + 3)*x^1``.
    """
    if isinstance(value, Poly):
        if not value.coeffs:
            return "0"
        items = list(enumerate(value.coeffs))
        if value.var != "x":
            items.reverse()
        parts = []
        for p, c in items:
            if is_zero(c):
                continue
            if value.var == "x":
                mono = "" if p == 0 else f"x^{p}"
            else:
                mono = "" if p == 0 else (value.var if p == 1 else f"{value.var}^{p}")
            if not mono:
                parts.append(render(c))
                continue
            cs, simple = _coeff_str(c)
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            elif simple:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return _join_terms(parts)
    return str(value)


# ---------------------------------------------------------------------------
# machine format: ascending lists of decimal strings


def z_to_json(p):
    p = p if isinstance(p, Poly) else ZPoly((p,))
    out = []
    for c in p.coeffs:
        if not isinstance(c, int):
            raise TypeError("machine format holds integer coefficients only")
        out.append(str(c))
    return out


def z_from_json(data) -> Poly:
    return ZPoly([int(s) for s in data])


def xz_to_json(p):
    """XZPoly -> list (by power of x) of lists (by power of z) of decimal strings."""
    p = p if isinstance(p, Poly) and p.var == "x" else XZPoly((p,))
    return [z_to_json(c) for c in p.coeffs]


def xz_from_json(data) -> Poly:
    return XZPoly([z_from_json(row) for row in data])

