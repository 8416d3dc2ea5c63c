"""Exact coefficient arithmetic and sparse multivariate polynomials.

Coefficients are either exact rationals (``Rat``, arbitrary precision, always
in lowest terms with positive denominator) or elements ``a + b*sqrt(d)`` of a
real quadratic extension (``QuadExt``).  No floating-point coefficients exist
in this module.

Polynomials live over a :class:`VarTable` that indexes three variable
families for a pair of graph classes on ``n_g`` and ``n_h`` vertices:

* ``x[g,h]``   -- one per product-graph vertex, lexicographic by ``(g, h)``,
* ``eG[g,g']`` -- one per unordered vertex pair of the first class,
* ``eH[h,h']`` -- one per unordered vertex pair of the second class.

The monomial order is graded reverse lexicographic with variable precedence
``x`` > ``eG`` > ``eH`` (index 0 is the largest variable).  All values are
immutable after construction and safe to share across threads.

A canonical text format is provided (``poly_to_str`` / ``parse_polynomial``):
terms in decreasing monomial order, exact coefficients, variables printed as
``x[g,h]``, ``eG[g,g']``, ``eH[h,h']``, e.g. ``-8/3*x[0,1]*x[0,2] + 1``.
Printing and parsing round-trip bit-exactly.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat


class TableMismatchError(ValueError):
    """Operands belong to different variable tables."""


class MixedDiscriminantError(ValueError):
    """Quadratic-extension values with different discriminants were mixed."""


def rat(num, den=1):
    """Exact rational; stored in lowest terms with positive denominator."""
    return Rat(num, den)


def is_rational(c) -> bool:
    """True for plain rational coefficients (int / Rat), False for QuadExt."""
    return not isinstance(c, QuadExt)


def _squarefree(n: int) -> bool:
    if n < 1:
        return False
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


class QuadExt:
    """Exact element ``a + b*sqrt(d)`` of Q(sqrt(d)), d squarefree >= 2.

    Arithmetic coerces plain rationals and ints (they get ``b = 0``); adding
    values from different extensions raises :class:`MixedDiscriminantError`
    unless one side is rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 2):
        if d < 2 or not _squarefree(d):
            raise ValueError(f"discriminant must be squarefree and >= 2, got {d}")
        object.__setattr__(self, "a", Rat(a))
        object.__setattr__(self, "b", Rat(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @property
    def is_rational(self) -> bool:
        return not self.b

    def _coerce(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.d == self.d or not other.b:
                return QuadExt(other.a, other.b, self.d)
            if not self.b:
                return None  # handled by re-coercing self instead
            raise MixedDiscriminantError(f"sqrt({self.d}) vs sqrt({other.d})")
        if isinstance(other, (int, type(Rat(0)))):
            return QuadExt(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, QuadExt) and not self.b:
                return QuadExt(other.a + self.a, other.b, other.d)
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadExt) else -Rat(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, QuadExt) and not self.b:
                return QuadExt(other.a * self.a, other.b * self.a, other.d)
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def inverse(self) -> "QuadExt":
        norm = self.a * self.a - self.b * self.b * self.d
        if not norm:
            raise ZeroDivisionError("QuadExt value is zero")
        return QuadExt(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        if not self.b:
            return (self.a > 0) - (self.a < 0)
        if not self.a:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # Opposite signs: compare a^2 with b^2 d; the larger magnitude wins.
        diff = self.a * self.a - self.b * self.b * self.d
        if self.a > 0:
            return 1 if diff > 0 else (-1 if diff < 0 else 0)
        return -1 if diff > 0 else (1 if diff < 0 else 0)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.d != other.d:
                return not self.b and not other.b and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, type(Rat(0)))):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        sign, body, _ = _coeff_repr(self)
        return ("-" if sign < 0 else "") + body


# ---------------------------------------------------------------------------
# Monomials
# ---------------------------------------------------------------------------
# A monomial is a tuple of (variable index, exponent) pairs, ascending by
# index, no zero exponents.  The empty tuple is the constant monomial 1.

Monomial = tuple
MONO_ONE: Monomial = ()


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        have = out.get(v, 0)
        if have < e:
            return None
        if have == e:
            del out[v]
        else:
            out[v] = have - e
    return tuple(sorted(out.items()))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    out = dict(a)
    for v, e in b:
        if out.get(v, 0) < e:
            out[v] = e
    return tuple(sorted(out.items()))


def mono_is_squarefree(m: Monomial) -> bool:
    return all(e == 1 for _, e in m)


def mono_from_vars(indices: Iterable[int]) -> Monomial:
    return tuple((v, 1) for v in sorted(indices))


class MonomialOrder:
    """Graded reverse lexicographic order.

    Grading is by total degree; ties are broken reverse-lexicographically,
    with variable precedence x[0,0] > x[0,1] > ... > eG[...] > eH[...]
    (variable index 0 is the largest).  The order is total, compatible with
    multiplication, and degree-compatible.
    """

    kind = "grevlex"

    def key(self, m: Monomial, nvars: int):
        exps = [0] * nvars
        for v, e in m:
            exps[v] = e
        return (mono_degree(m), tuple(-exps[i] for i in range(nvars - 1, -1, -1)))

    def __repr__(self):
        return "MonomialOrder(grevlex)"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind)


GREVLEX = MonomialOrder()


# ---------------------------------------------------------------------------
# Variable table
# ---------------------------------------------------------------------------


class VarTable:
    """Variable indexing for a (n_g, n_h) graph-class pair.

    Index layout (also the monomial-order precedence, largest first):
    x[g,h] lexicographic by (g,h), then eG pairs, then eH pairs, each pair
    family ordered lexicographically with the smaller label first.
    """

    __slots__ = ("n_g", "n_h", "nvars", "names", "order", "_x0", "_eg0", "_eh0",
                 "_key_cache", "_index")

    def __init__(self, n_g: int, n_h: int):
        if n_g < 1 or n_h < 1:
            raise ValueError("vertex counts must be positive")
        self.n_g = n_g
        self.n_h = n_h
        self.order = GREVLEX
        names: list[str] = []
        index: dict[str, int] = {}
        for g in range(n_g):
            for h in range(n_h):
                names.append(f"x[{g},{h}]")
        self._x0 = 0
        self._eg0 = len(names)
        for a in range(n_g):
            for b in range(a + 1, n_g):
                names.append(f"eG[{a},{b}]")
        self._eh0 = len(names)
        for a in range(n_h):
            for b in range(a + 1, n_h):
                names.append(f"eH[{a},{b}]")
        self.nvars = len(names)
        self.names = tuple(names)
        for i, n in enumerate(names):
            index[n] = i
        self._index = index
        self._key_cache: dict[Monomial, tuple] = {}

    # -- variable indexing ---------------------------------------------------

    def x_index(self, g: int, h: int) -> int:
        if not (0 <= g < self.n_g and 0 <= h < self.n_h):
            raise IndexError(f"x[{g},{h}] out of range")
        return g * self.n_h + h

    def eg_index(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        if not (0 <= a < b < self.n_g):
            raise IndexError(f"eG[{a},{b}] out of range")
        # pairs (0,1),(0,2),...,(0,n-1),(1,2),... lexicographic
        return self._eg0 + a * (2 * self.n_g - a - 1) // 2 + (b - a - 1)

    def eh_index(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        if not (0 <= a < b < self.n_h):
            raise IndexError(f"eH[{a},{b}] out of range")
        return self._eh0 + a * (2 * self.n_h - a - 1) // 2 + (b - a - 1)

    def var_name(self, i: int) -> str:
        return self.names[i]

    def mono_key(self, m: Monomial):
        k = self._key_cache.get(m)
        if k is None:
            k = self.order.key(m, self.nvars)
            self._key_cache[m] = k
        return k

    def mono_str(self, m: Monomial) -> str:
        if not m:
            return "1"
        parts = []
        for v, e in m:
            parts.append(self.names[v] if e == 1 else f"{self.names[v]}^{e}")
        return "*".join(parts)

    # -- polynomial factories --------------------------------------------------

    def poly(self, coeffs: Mapping[Monomial, object]) -> "Polynomial":
        return Polynomial(self, coeffs)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {MONO_ONE: Rat(1)})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {MONO_ONE: c})

    def var(self, i: int) -> "Polynomial":
        return Polynomial(self, {((i, 1),): Rat(1)})

    def x(self, g: int, h: int) -> "Polynomial":
        return self.var(self.x_index(g, h))

    def eg(self, a: int, b: int) -> "Polynomial":
        return self.var(self.eg_index(a, b))

    def eh(self, a: int, b: int) -> "Polynomial":
        return self.var(self.eh_index(a, b))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, VarTable)
            and other.n_g == self.n_g
            and other.n_h == self.n_h
        )

    def __hash__(self):
        return hash((self.n_g, self.n_h))

    def __repr__(self):
        return f"VarTable(n_g={self.n_g}, n_h={self.n_h}, nvars={self.nvars})"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Sparse exact polynomial: map monomial -> nonzero coefficient.

    Immutable by convention; all operators return new values.  Coefficients
    may be Rat or QuadExt (a single discriminant per polynomial).
    """

    __slots__ = ("table", "coeffs", "_terms")

    def __init__(self, table: VarTable, coeffs: Mapping[Monomial, object]):
        self.table = table
        self.coeffs = {m: c for m, c in coeffs.items() if c}
        self._terms = None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(mono_degree(m) for m in self.coeffs)

    def terms(self) -> list[tuple[Monomial, object]]:
        """Terms in strictly decreasing monomial order."""
        if self._terms is None:
            key = self.table.mono_key
            self._terms = sorted(
                self.coeffs.items(), key=lambda t: key(t[0]), reverse=True
            )
        return self._terms

    def leading(self) -> tuple[Monomial, object]:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        key = self.table.mono_key
        m = max(self.coeffs, key=key)
        return m, self.coeffs[m]

    def constant(self):
        return self.coeffs.get(MONO_ONE, Rat(0))

    def _check(self, other: "Polynomial"):
        if self.table != other.table:
            raise TableMismatchError("polynomials use different variable tables")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Polynomial(self.table, out)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Polynomial(self.table, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            out: dict[Monomial, object] = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = mono_mul(m1, m2)
                    c = c1 * c2
                    s = out.get(m)
                    s = c if s is None else s + c
                    if s:
                        out[m] = s
                    elif m in out:
                        del out[m]
            return Polynomial(self.table, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial(self.table, {})
        return Polynomial(self.table, {m: v * c for m, v in self.coeffs.items()})

    def map_coeffs(self, fn) -> "Polynomial":
        return Polynomial(self.table, {m: fn(c) for m, c in self.coeffs.items()})

    def evaluate(self, values: Sequence):
        """Exact evaluation; values is indexed by variable index."""
        total = Rat(0)
        for m, c in self.coeffs.items():
            term = c
            for v, e in m:
                term = term * values[v] ** e
            total = term + total
        return total

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.coeffs == other.coeffs

    __hash__ = None  # mutable dict inside

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"Polynomial({poly_to_str(self)})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Termwise sum with zero terms elided."""
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Distributive product in canonical form."""
    return p * q


def quadext_to_rational_parts(p: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Split p = p_rat + sqrt(d) * p_irr into two rational polynomials.

    All QuadExt coefficients must share one discriminant.  Plain rational
    coefficients contribute to the first part only.
    """
    d = None
    rat_part: dict[Monomial, object] = {}
    irr_part: dict[Monomial, object] = {}
    for m, c in p.coeffs.items():
        if isinstance(c, QuadExt):
            if c.b:
                if d is None:
                    d = c.d
                elif d != c.d:
                    raise MixedDiscriminantError(
                        f"coefficients mix sqrt({d}) and sqrt({c.d})"
                    )
                irr_part[m] = c.b
            if c.a:
                rat_part[m] = c.a
        elif c:
            rat_part[m] = Rat(c)
    return Polynomial(p.table, rat_part), Polynomial(p.table, irr_part)


# ---------------------------------------------------------------------------
# Canonical text format
# ---------------------------------------------------------------------------


def _rat_repr(c) -> tuple[int, str, bool]:
    """(sign, magnitude string, magnitude is one)."""
    num = int(c.numerator)
    den = int(c.denominator)
    sign = -1 if num < 0 else 1
    num = abs(num)
    body = str(num) if den == 1 else f"{num}/{den}"
    return sign, body, num == 1 and den == 1


def _sqrt_repr(b, d: int) -> tuple[int, str, bool]:
    sign, mag, is_one = _rat_repr(b)
    return sign, f"sqrt({d})" if is_one else f"{mag}*sqrt({d})", False


def _coeff_repr(c) -> tuple[int, str, bool]:
    """Render a coefficient as (sign, body, body is literally 1).

    Mixed QuadExt values (both parts nonzero) render parenthesized with the
    sign inside, and report sign +1 to the caller.
    """
    if not isinstance(c, QuadExt):
        return _rat_repr(c)
    if not c.b:
        return _rat_repr(c.a)
    if not c.a:
        return _sqrt_repr(c.b, c.d)
    s_a, body_a, _ = _rat_repr(c.a)
    s_b, body_b, _ = _sqrt_repr(c.b, c.d)
    first = ("-" if s_a < 0 else "") + body_a
    joiner = " - " if s_b < 0 else " + "
    return 1, f"({first}{joiner}{body_b})", False


def poly_to_str(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    chunks: list[str] = []
    for m, c in p.terms():
        sign, body, is_one = _coeff_repr(c)
        if m:
            mono = p.table.mono_str(m)
            text = mono if is_one else f"{body}*{mono}"
        else:
            text = body
        if not chunks:
            chunks.append(("-" if sign < 0 else "") + text)
        else:
            chunks.append((" - " if sign < 0 else " + ") + text)
    return "".join(chunks)


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<var>(?:x|eG|eH)\[\d+,\d+\])
      | (?P<sqrt>sqrt\(\d+\))
      | (?P<num>\d+)
      | (?P<op>[-+*/^()])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[str]:
    pos = 0
    out: list[str] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise ValueError(f"cannot parse polynomial near {text[pos:pos+20]!r}")
            break
        out.append(m.group().strip())
        pos = m.end()
    return out


class _Parser:
    def __init__(self, table: VarTable, tokens: list[str]):
        self.table = table
        self.toks = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> str:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.take() if self.i < len(self.toks) else None
        if got != tok:
            raise ValueError(f"expected {tok!r}, got {got!r}")

    def parse_poly(self) -> Polynomial:
        coeffs: dict[Monomial, object] = {}
        sign = 1
        tok = self.peek()
        if tok in ("+", "-"):
            self.take()
            sign = -1 if tok == "-" else 1
        while True:
            mono, coeff = self.parse_term()
            if sign < 0:
                coeff = -coeff
            prev = coeffs.get(mono)
            total = coeff if prev is None else prev + coeff
            if total:
                coeffs[mono] = total
            elif mono in coeffs:
                del coeffs[mono]
            tok = self.peek()
            if tok is None:
                break
            if tok not in ("+", "-"):
                raise ValueError(f"expected + or - between terms, got {tok!r}")
            self.take()
            sign = -1 if tok == "-" else 1
        return Polynomial(self.table, coeffs)

    def parse_term(self) -> tuple[Monomial, object]:
        coeff = Rat(1)
        exps: dict[int, int] = {}
        saw_factor = False
        while True:
            tok = self.peek()
            if tok is None or tok in ("+", "-"):
                break
            if tok == "*":
                if not saw_factor:
                    raise ValueError("term cannot start with '*'")
                self.take()
                continue
            coeff, matched = self.parse_factor(coeff, exps)
            if not matched:
                break
            saw_factor = True
        if not saw_factor:
            raise ValueError("empty term")
        return tuple(sorted(exps.items())), coeff

    def parse_factor(self, coeff, exps: dict[int, int]):
        tok = self.peek()
        if tok is None:
            return coeff, False
        if tok == "(":
            self.take()
            inner = self.parse_paren()
            return coeff * inner if not isinstance(coeff, QuadExt) else inner * coeff, True
        if tok == "sqrt" or tok.startswith("sqrt("):
            self.take()
            d = int(tok[5:-1])
            return QuadExt(0, 1, d) * coeff, True
        if tok.isdigit():
            self.take()
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den_tok = self.take()
                if not den_tok.isdigit():
                    raise ValueError("expected integer denominator")
                value = Rat(num, int(den_tok))
            else:
                value = Rat(num)
            return coeff * value if not isinstance(coeff, QuadExt) else coeff * value, True
        if tok.startswith(("x[", "eG[", "eH[")):
            self.take()
            idx = self.table._index.get(tok)
            if idx is None:
                raise ValueError(f"unknown variable {tok!r} for this table")
            e = 1
            if self.peek() == "^":
                self.take()
                e_tok = self.take()
                if not e_tok.isdigit():
                    raise ValueError("expected integer exponent")
                e = int(e_tok)
            exps[idx] = exps.get(idx, 0) + e
            return coeff, True
        return coeff, False

    def parse_paren(self):
        """Parenthesized sum of rational and sqrt parts, e.g. (8+3*sqrt(2))."""
        total = None
        sign = 1
        tok = self.peek()
        if tok in ("+", "-"):
            self.take()
            sign = -1 if tok == "-" else 1
        while True:
            part = self.parse_scalar()
            part = -part if sign < 0 else part
            total = part if total is None else total + part
            tok = self.peek()
            if tok == ")":
                self.take()
                break
            if tok not in ("+", "-"):
                raise ValueError(f"expected + or - inside (...), got {tok!r}")
            self.take()
            sign = -1 if tok == "-" else 1
        if total is None:
            raise ValueError("empty parentheses")
        return total

    def parse_scalar(self):
        """rational, sqrt(d), or rational*sqrt(d)."""
        tok = self.peek()
        if tok is None:
            raise ValueError("expected scalar")
        if tok.startswith("sqrt("):
            self.take()
            return QuadExt(0, 1, int(tok[5:-1]))
        if not tok.isdigit():
            raise ValueError(f"expected scalar, got {tok!r}")
        self.take()
        num = int(tok)
        if self.peek() == "/":
            self.take()
            den = self.take()
            value = Rat(num, int(den))
        else:
            value = Rat(num)
        if self.peek() == "*":
            nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
            if nxt is not None and nxt.startswith("sqrt("):
                self.take()
                tok = self.take()
                return QuadExt(0, value, int(tok[5:-1]))
        return value


def parse_polynomial(table: VarTable, text: str) -> Polynomial:
    """Parse the canonical text format (inverse of :func:`poly_to_str`)."""
    text = text.strip()
    if text == "0":
        return table.zero()
    return _Parser(table, _tokenize(text)).parse_poly()
