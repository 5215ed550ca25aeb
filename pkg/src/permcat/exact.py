"""Exact arithmetic for integer-valued polynomials in the category parameters.

Polynomials live in Q[L1, ..., Ll].  Coefficients are kept as ``int`` when
integral and ``Fraction`` otherwise, so the common integer case stays fast.
Terms are ordered graded-lexicographically (highest total degree first, ties
broken by comparing exponent tuples lexicographically, larger first).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import InputError

Rational = Fraction
Scalar = Union[int, Fraction]


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _to_scalar(c) -> Scalar:
    if isinstance(c, bool):
        raise InputError("booleans are not scalars")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return _norm(c)
    raise InputError(f"unsupported scalar {c!r}")


class IVPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, Scalar] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise InputError("exponent length does not match variable count")
                c = _norm(c)
                if c != 0:
                    clean[tuple(exp)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> "IVPoly":
        return cls(nvars, {(0,) * nvars: _to_scalar(c)})

    @classmethod
    def zero(cls, nvars: int) -> "IVPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "IVPoly":
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, index: int) -> "IVPoly":
        """The variable L_index (1-based)."""
        if not 1 <= index <= nvars:
            raise InputError(f"variable index {index} out of range 1..{nvars}")
        exp = [0] * nvars
        exp[index - 1] = 1
        return cls(nvars, {tuple(exp): 1})

    def _coerce(self, other) -> "IVPoly":
        if isinstance(other, IVPoly):
            if other.nvars != self.nvars:
                raise InputError("polynomials have different variable counts")
            return other
        return IVPoly.const(self.nvars, _to_scalar(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IVPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return IVPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, IVPoly):
            c = _to_scalar(other)
            if c == 0:
                return IVPoly(self.nvars)
            return IVPoly(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if len(other.terms) == 1 and not any(next(iter(other.terms))):
            return self * next(iter(other.terms.values()))
        if len(self.terms) == 1 and not any(next(iter(self.terms))):
            return other * next(iter(self.terms.values()))
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IVPoly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _to_scalar(other)
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return IVPoly(self.nvars, {e: Fraction(v) / c for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative powers are not polynomials")
        out = IVPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, IVPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == IVPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise InputError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.nvars:
            raise InputError(
                f"evaluation point has length {len(point)}, expected {self.nvars}"
            )
        pt = [_to_scalar(x) if not isinstance(x, int) else x for x in point]
        total: Scalar = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v = v * x**k
            total += v
        return _norm(total) if isinstance(total, Fraction) else total

    def substitute(self, images: Sequence["IVPoly"]) -> "IVPoly":
        """Replace variable i by ``images[i]`` (all images share a ring)."""
        if len(images) != self.nvars:
            raise InputError("wrong number of substitution images")
        if not images:
            return self
        n = images[0].nvars
        out = IVPoly(n)
        powers: dict = {}
        for e, c in self.terms.items():
            term = IVPoly.const(n, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = images[i] ** k
                    term = term * powers[key]
            out = out + term
        return out

    def __str__(self):
        return format_ivpoly(self)

    def __repr__(self):
        return f"IVPoly({format_ivpoly(self)!r}, nvars={self.nvars})"


def default_names(nvars: int) -> list[str]:
    return [f"L{i + 1}" for i in range(nvars)]


def _fmt_scalar(c: Scalar) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_ivpoly(p: IVPoly, names: Sequence[str] | None = None) -> str:
    """Render in the canonical text form, e.g. ``-3/2*L1^2*L2 + L2 + 1``."""
    names = list(names) if names is not None else default_names(p.nvars)
    if p.is_zero():
        return "0"
    pieces = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            body = _fmt_scalar(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_scalar(a)}*{mono}"
        if idx == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


_TERM_RE = re.compile(r"\s*([+-])\s*")


def parse_ivpoly(text: str, nvars: int, names: Sequence[str] | None = None) -> IVPoly:
    """Parse the grammar produced by :func:`format_ivpoly`."""
    names = list(names) if names is not None else default_names(nvars)
    lookup = {n: i for i, n in enumerate(names)}
    s = text.strip()
    if not s:
        raise InputError("empty polynomial text")
    if s == "0":
        return IVPoly(nvars)
    chunks = []
    sign = 1
    pos = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        pos = 1
    for m in _TERM_RE.finditer(s, pos):
        chunks.append((sign, s[pos : m.start()]))
        sign = -1 if m.group(1) == "-" else 1
        pos = m.end()
    chunks.append((sign, s[pos:]))
    out: dict = {}
    for sgn, chunk in chunks:
        chunk = chunk.strip()
        if not chunk:
            raise InputError(f"empty term in {text!r}")
        coeff: Scalar = 1
        exp = [0] * nvars
        for j, factor in enumerate(chunk.split("*")):
            factor = factor.strip()
            if re.fullmatch(r"\d+(/\d+)?", factor):
                if j != 0:
                    raise InputError(f"coefficient must lead its term: {chunk!r}")
                coeff = _norm(Fraction(factor))
                continue
            m = re.fullmatch(r"([A-Za-z][A-Za-z0-9_]*)(\^(\d+))?", factor)
            if not m or m.group(1) not in lookup:
                raise InputError(f"unrecognised factor {factor!r}")
            exp[lookup[m.group(1)]] += int(m.group(3) or 1)
        key = tuple(exp)
        out[key] = out.get(key, 0) + sgn * coeff
    return IVPoly(nvars, out)


@dataclass(frozen=True, order=True)
class AffineForm:
    """``L_variable_index + offset``; index 0 denotes a plain integer."""

    variable_index: int
    offset: int

    def to_poly(self, nvars: int) -> IVPoly:
        if self.variable_index == 0:
            return IVPoly.const(nvars, self.offset)
        return IVPoly.var(nvars, self.variable_index) + self.offset

    def evaluate(self, mu: Sequence[int]) -> int:
        if self.variable_index == 0:
            return self.offset
        return mu[self.variable_index - 1] + self.offset

    def shifted(self, k: int) -> "AffineForm":
        return AffineForm(self.variable_index, self.offset + k)

    def __str__(self):
        if self.variable_index == 0:
            return str(self.offset)
        v = f"L{self.variable_index}"
        if self.offset == 0:
            return v
        return f"{v}{self.offset:+d}"


def parse_affine(text: str) -> AffineForm:
    s = text.replace(" ", "")
    if re.fullmatch(r"-?\d+", s):
        return AffineForm(0, int(s))
    m = re.fullmatch(r"L(\d+)([+-]\d+)?", s)
    if not m:
        raise InputError(f"cannot parse affine form {text!r}")
    return AffineForm(int(m.group(1)), int(m.group(2) or 0))


def falling_poly(top: IVPoly, k: int) -> IVPoly:
    """``top (top - 1) ... (top - k + 1)``."""
    if k < 0:
        raise InputError("falling factorial length must be nonnegative")
    out = IVPoly.one(top.nvars)
    for i in range(k):
        out = out * (top - i)
    return out


def binomial_poly(top: IVPoly, k: int) -> IVPoly:
    """Binomial coefficient ``C(top, k)`` for a polynomial ``top``."""
    if k < 0:
        return IVPoly(top.nvars)
    return falling_poly(top, k) / math.factorial(k)


def ivp_binomial(top: AffineForm, k: int, nvars: int) -> IVPoly:
    return binomial_poly(top.to_poly(nvars), k)


def symbolic_multinomial(
    top: AffineForm, parts: Sequence[AffineForm | int], nvars: int
) -> IVPoly:
    """Multinomial ``top! / prod(part!)`` as an integer-valued polynomial.

    At most one part may be symbolic and it must use the same variable as
    ``top``; all other parts are nonnegative integers.
    """
    symbolic = [p for p in parts if isinstance(p, AffineForm) and p.variable_index]
    concrete = []
    for p in parts:
        if isinstance(p, AffineForm):
            if p.variable_index == 0:
                concrete.append(p.offset)
        else:
            concrete.append(p)
    if any(c < 0 for c in concrete):
        raise InputError("concrete multinomial parts must be nonnegative")
    if len(symbolic) > 1:
        raise InputError("at most one symbolic part is allowed")
    if symbolic:
        sp = symbolic[0]
        if sp.variable_index != top.variable_index:
            raise InputError("symbolic part and top use different variables")
        length = top.offset - sp.offset
        if length != sum(concrete):
            raise InputError("multinomial parts do not sum to the top")
        result = falling_poly(top.to_poly(nvars), length)
    else:
        if top.variable_index != 0:
            raise InputError("symbolic top requires a symbolic part")
        if top.offset != sum(concrete):
            raise InputError("multinomial parts do not sum to the top")
        result = IVPoly.const(nvars, math.factorial(top.offset))
    denom = 1
    for c in concrete:
        denom *= math.factorial(c)
    return result / denom if denom != 1 else result


def ivp_add(p: IVPoly, q: IVPoly) -> IVPoly:
    return p + q


def ivp_mul(p: IVPoly, q: IVPoly) -> IVPoly:
    return p * q


def ivp_eval(p: IVPoly, mu: Sequence) -> Fraction:
    return Fraction(p.evaluate(mu))


def linear_sum_poly(nvars: int) -> IVPoly:
    """``L1 + ... + Ll``, the image of the single parameter of a rank-one category."""
    out = IVPoly(nvars)
    for i in range(1, nvars + 1):
        out = out + IVPoly.var(nvars, i)
    return out


def lift_rank_one(p: IVPoly, nvars: int) -> IVPoly:
    """Substitute ``t -> L1 + ... + Ll`` into a one-variable polynomial."""
    if p.nvars != 1:
        raise InputError("expected a one-variable polynomial")
    return p.substitute([linear_sum_poly(nvars)])


def scalar_str(c: Scalar) -> str:
    return _fmt_scalar(_norm(Fraction(c)))


def parse_scalar(text: str) -> Scalar:
    try:
        return _norm(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {text!r}") from exc


def sum_polys(polys: Iterable[IVPoly], nvars: int) -> IVPoly:
    out = IVPoly(nvars)
    for p in polys:
        out = out + p
    return out
