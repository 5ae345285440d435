"""Exact Laurent polynomials in q with rational coefficients.

A second formal variable ``u`` stands for a unimodular phase e^{i phi}; it is
only produced by the homomorphisms that evaluate a generator at a point of the
circle, and it satisfies ``conj(u) = u^{-1}``. Keys are ``(q_exp, u_exp)``.
Exponents of q may be half-integers (the U_q action needs q^{1/2}).
"""
from __future__ import annotations

import cmath
import re
from fractions import Fraction
from numbers import Rational


def _norm_exp(e):
    if isinstance(e, Fraction):
        if e.denominator == 1:
            return int(e.numerator)
        if e.denominator != 2:
            raise ValueError(f"only half-integer q exponents are supported, got {e}")
        return e
    if isinstance(e, int):
        return e
    raise TypeError(f"bad exponent {e!r}")


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class LaurentScalar:
    """Element of Q[q^{1/2}, q^{-1/2}, u, u^{-1}] with finite support.

    Immutable; zero is the empty map.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if c == 0:
                    continue
                if isinstance(key, tuple):
                    e, k = key
                else:
                    e, k = key, 0
                key = (_norm_exp(e), int(k))
                if not isinstance(c, (int, Fraction)):
                    if isinstance(c, Rational):
                        c = Fraction(c)
                    else:
                        raise TypeError(f"coefficients must be rational, got {c!r}")
                clean[key] = _norm_coeff(c)
        self._terms = clean
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentScalar":
        return cls({(0, 0): c})

    @classmethod
    def q_pow(cls, e, c=1) -> "LaurentScalar":
        return cls({(e, 0): c})

    @classmethod
    def phase(cls, k=1) -> "LaurentScalar":
        return cls({(0, k): 1})

    @classmethod
    def coerce(cls, x) -> "LaurentScalar":
        if isinstance(x, LaurentScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {x!r} to LaurentScalar")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    # ring operations -------------------------------------------------------
    def __add__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return _raw({k: _norm_coeff(c * other) for k, c in self._terms.items()})
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) == 1 and len(b) == 1:
            (ka, ca), = a.items()
            (kb, cb), = b.items()
            e = ka[0] + kb[0]
            return _raw({(_norm_exp(e) if isinstance(e, Fraction) else e, ka[1] + kb[1]): _norm_coeff(ca * cb)})
        out = {}
        for (ea, ua), ca in a.items():
            for (eb, ub), cb in b.items():
                e = ea + eb
                if isinstance(e, Fraction):
                    e = _norm_exp(e)
                key = (e, ua + ub)
                s = out.get(key, 0) + ca * cb
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return _raw({k: _norm_coeff(c) for k, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "LaurentScalar":
        """Inverse of a unit c*q^e*u^k; raises for non-monomials."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        (e, k), c = next(iter(self._terms.items()))
        return _raw({(_norm_exp(-Fraction(e)) if isinstance(e, Fraction) else -e, -k): _norm_coeff(Fraction(1) / c)})

    def conj(self) -> "LaurentScalar":
        """Complex conjugate for real q: u -> u^{-1}."""
        return _raw({(e, -k): c for (e, k), c in self._terms.items()})

    def shift(self, e) -> "LaurentScalar":
        """Multiply by q^e."""
        return self * LaurentScalar.q_pow(e)

    # comparisons -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.const(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation ------------------------------------------------------------
    def evaluate(self, q: float, phase: complex | float | None = None) -> complex:
        """Numeric value at real ``q``; ``phase`` is either e^{i phi} or phi itself."""
        if phase is None:
            u = None
        elif isinstance(phase, complex):
            u = phase
        else:
            u = cmath.exp(1j * phase)
        total = 0j
        for (e, k), c in self._terms.items():
            term = float(c) * q ** float(e)
            if k:
                if u is None:
                    raise ValueError("scalar contains a phase symbol; pass phase=")
                term = term * u ** k
            total += term
        return total

    def is_real_constant(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def has_phase(self) -> bool:
        return any(k[1] for k in self._terms)

    # text ------------------------------------------------------------------
    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentScalar({format_laurent(self)!r})"


def _raw(terms: dict) -> LaurentScalar:
    obj = LaurentScalar.__new__(LaurentScalar)
    obj._terms = terms
    obj._hash = None
    return obj


ZERO = LaurentScalar()
ONE = LaurentScalar.const(1)
Q = LaurentScalar.q_pow(1)
Q_INV = LaurentScalar.q_pow(-1)


def _fmt_exp(e) -> str:
    if isinstance(e, Fraction):
        return f"({e.numerator}/{e.denominator})"
    return str(e)


def _monomial_text(e, k) -> str:
    parts = []
    if e != 0:
        parts.append("q" if e == 1 else f"q^{_fmt_exp(e)}")
    if k != 0:
        parts.append("u" if k == 1 else f"u^{k}")
    return "*".join(parts)


def format_laurent(x: LaurentScalar) -> str:
    """Canonical text: terms by ascending (q exponent, u exponent), e.g. ``1 - q^2``."""
    if x.is_zero():
        return "0"
    pieces = []
    for (e, k) in sorted(x._terms, key=lambda t: (Fraction(t[0]), t[1])):
        c = x._terms[(e, k)]
        mono = _monomial_text(e, k)
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM_RE = re.compile(
    r"""^(?P<coef>\d+(?:/\d+)?)?\*?
        (?:q(?:\^(?P<qe>-?\d+|\(-?\d+/2\)))?)?\*?
        (?:u(?:\^(?P<ue>-?\d+))?)?$""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentScalar:
    """Inverse of :func:`format_laurent`."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    if s[0] not in "+-":
        s = "+" + s
    chunks = re.findall(r"[+-][^+-]*(?:\^-?[^+-]*)*", s)
    # re-join pieces split on the minus sign of a negative exponent
    merged = []
    for ch in chunks:
        if merged and (merged[-1].endswith("^") or merged[-1].endswith("^(")):
            merged[-1] += ch
        else:
            merged.append(ch)
    out = {}
    for ch in merged:
        sign = -1 if ch[0] == "-" else 1
        body = ch[1:]
        m = _TERM_RE.match(body)
        if not m or body == "":
            raise ValueError(f"cannot parse Laurent term {ch!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        has_q = "q" in body
        has_u = "u" in body
        qe = 0
        if has_q:
            raw = m.group("qe")
            if raw is None:
                qe = 1
            elif raw.startswith("("):
                qe = Fraction(raw[1:-1])
            else:
                qe = int(raw)
        ue = 0
        if has_u:
            ue = int(m.group("ue")) if m.group("ue") else 1
        key = (_norm_exp(Fraction(qe)) if isinstance(qe, Fraction) else qe, ue)
        out[key] = out.get(key, 0) + sign * coef
    return LaurentScalar(out)
