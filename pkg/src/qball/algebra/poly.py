"""Generator symbols and noncommutative polynomials with Laurent coefficients."""
from __future__ import annotations

import re
from typing import Iterable, NamedTuple

from .laurent import ONE, ZERO, LaurentScalar, format_laurent, parse_laurent

MATQ = "MatQ"
SLNQ = "SLnQ"
TAGS = (MATQ, SLNQ)

_KIND_TAG = {"z": MATQ, "z*": MATQ, "t": SLNQ, "t*": SLNQ}
_STAR_KIND = {"z": "z*", "z*": "z", "t": "t*", "t*": "t"}


class GeneratorSymbol(NamedTuple):
    """A single generator.

    For ``z``/``z*`` the symbol is z_a^alpha with ``row = alpha`` (upper index)
    and ``col = a`` (lower index). For ``t``/``t*`` it is t_{row,col}.
    """

    kind: str
    row: int
    col: int

    @property
    def tag(self) -> str:
        return _KIND_TAG[self.kind]

    @property
    def starred(self) -> bool:
        return self.kind.endswith("*")

    def star(self) -> "GeneratorSymbol":
        return GeneratorSymbol(_STAR_KIND[self.kind], self.row, self.col)

    def text(self) -> str:
        if self.kind in ("z", "z*"):
            # z[a,alpha]: lower index first
            return f"{self.kind}[{self.col},{self.row}]"
        return f"{self.kind}[{self.row},{self.col}]"

    def __str__(self):
        return self.text()


def z(a: int, alpha: int) -> GeneratorSymbol:
    """z_a^alpha: lower index ``a``, upper index ``alpha``."""
    return GeneratorSymbol("z", alpha, a)


def zs(a: int, alpha: int) -> GeneratorSymbol:
    """(z_a^alpha)^*."""
    return GeneratorSymbol("z*", alpha, a)


def t(i: int, j: int) -> GeneratorSymbol:
    return GeneratorSymbol("t", i, j)


def ts(i: int, j: int) -> GeneratorSymbol:
    return GeneratorSymbol("t*", i, j)


class AlgebraMismatch(ValueError):
    pass


Word = tuple


def _coerce_scalar(c) -> LaurentScalar:
    return LaurentScalar.coerce(c)


class NCPolynomial:
    """Finite sum of words in generator symbols with Laurent coefficients.

    ``terms`` maps tuples of :class:`GeneratorSymbol` to :class:`LaurentScalar`.
    The empty tuple is the unit. Instances are treated as immutable.
    """

    __slots__ = ("tag", "n", "_terms")

    def __init__(self, tag: str, n: int, terms: dict | None = None, check: bool = True):
        if tag not in TAGS:
            raise ValueError(f"unknown algebra tag {tag!r}")
        self.tag = tag
        self.n = int(n)
        clean = {}
        if terms:
            for w, c in terms.items():
                c = _coerce_scalar(c)
                if c.is_zero():
                    continue
                w = tuple(w)
                if check:
                    for s in w:
                        if s.tag != tag:
                            raise AlgebraMismatch(f"symbol {s} does not belong to {tag}")
                        if not (1 <= s.row <= n and 1 <= s.col <= n):
                            raise ValueError(f"symbol {s} out of range for n={n}")
                if w in clean:
                    c = clean[w] + c
                    if c.is_zero():
                        del clean[w]
                        continue
                clean[w] = c
        self._terms = clean

    # constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, tag, n):
        return cls(tag, n)

    @classmethod
    def one(cls, tag, n):
        return cls(tag, n, {(): ONE})

    @classmethod
    def scalar(cls, tag, n, c):
        return cls(tag, n, {(): c})

    @classmethod
    def gen(cls, sym: GeneratorSymbol, n: int, coeff=1):
        return cls(sym.tag, n, {(sym,): coeff})

    @classmethod
    def word(cls, tag, n, word: Iterable[GeneratorSymbol], coeff=1):
        return cls(tag, n, {tuple(word): coeff})

    @classmethod
    def _from_clean(cls, tag, n, terms):
        obj = cls.__new__(cls)
        obj.tag = tag
        obj.n = n
        obj._terms = terms
        return obj

    # accessors -------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def coefficient(self, word) -> LaurentScalar:
        return self._terms.get(tuple(word), ZERO)

    def symbols(self) -> set:
        return {s for w in self._terms for s in w}

    def is_holomorphic(self) -> bool:
        return all(not s.starred for s in self.symbols())

    def constant_term(self) -> LaurentScalar:
        return self._terms.get((), ZERO)

    # arithmetic ------------------------------------------------------------
    def _check_compatible(self, other: "NCPolynomial"):
        if self.tag != other.tag or self.n != other.n:
            raise AlgebraMismatch(
                f"cannot combine {self.tag}(n={self.n}) with {other.tag}(n={other.n})"
            )

    def _lift(self, other):
        if isinstance(other, NCPolynomial):
            self._check_compatible(other)
            return other
        return NCPolynomial.scalar(self.tag, self.n, _coerce_scalar(other))

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, ZERO) + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return NCPolynomial._from_clean(self.tag, self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._from_clean(self.tag, self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "NCPolynomial":
        c = _coerce_scalar(c)
        if c.is_zero():
            return NCPolynomial(self.tag, self.n)
        return NCPolynomial._from_clean(self.tag, self.n, {w: v * c for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            return nc_multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int):
        out = NCPolynomial.one(self.tag, self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.tag == other.tag and self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.tag, self.n, frozenset(self._terms.items())))

    def map_coefficients(self, f) -> "NCPolynomial":
        return NCPolynomial(self.tag, self.n, {w: f(c) for w, c in self._terms.items()}, check=False)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"NCPolynomial({self.tag}, n={self.n}, {to_text(self)!r})"


def nc_multiply(p: NCPolynomial, r: NCPolynomial) -> NCPolynomial:
    """Free (concatenation) product, before any rewriting."""
    p._check_compatible(r)
    out: dict = {}
    for w1, c1 in p._terms.items():
        for w2, c2 in r._terms.items():
            w = w1 + w2
            c = out.get(w, ZERO) + c1 * c2
            if c.is_zero():
                out.pop(w, None)
            else:
                out[w] = c
    return NCPolynomial._from_clean(p.tag, p.n, out)


def free_star(p: NCPolynomial) -> NCPolynomial:
    """Formal involution: reverse words, star every letter, conjugate scalars.

    This is the involution of Pol(Mat_n)_q. For the SLnQ tag it produces
    ``t*`` symbols which the rewrite system expands through quantum minors.
    """
    out = {}
    for w, c in p._terms.items():
        out[tuple(s.star() for s in reversed(w))] = c.conj()
    return NCPolynomial._from_clean(p.tag, p.n, out)


# ordering ----------------------------------------------------------------
def letter_key(s: GeneratorSymbol):
    """Total order on letters: plain letters with larger (row, col) are smaller;
    every starred letter is larger than every plain letter; starred letters
    ascend with (row, col)."""
    if s.starred:
        return (1, s.row, s.col)
    return (0, -s.row, -s.col)


def star_plain_inversions(word) -> int:
    count = 0
    seen_star = 0
    for s in word:
        if s.starred:
            seen_star += 1
        else:
            count += seen_star
    return count


def word_key(word):
    """Monomial order: length, then star-before-plain inversions, then lexicographic."""
    return (len(word), star_plain_inversions(word), tuple(letter_key(s) for s in word))


def sorted_terms(p: NCPolynomial, descending: bool = True):
    return sorted(p._terms.items(), key=lambda kv: word_key(kv[0]), reverse=descending)


def leading_term(p: NCPolynomial):
    if p.is_zero():
        raise ValueError("zero polynomial has no leading term")
    return max(p._terms.items(), key=lambda kv: word_key(kv[0]))


# text ----------------------------------------------------------------------
def word_text(word) -> str:
    return "*".join(s.text() for s in word)


def to_text(p: NCPolynomial) -> str:
    """Canonical text: ``(coeff)*gen*gen + ...`` sorted by descending monomial order."""
    if p.is_zero():
        return "0"
    parts = []
    for w, c in sorted_terms(p):
        body = f"({format_laurent(c)})"
        if w:
            body += "*" + word_text(w)
        parts.append(body)
    return " + ".join(parts)


_SYM_RE = re.compile(r"^(z\*|z|t\*|t)\[(\d+),(\d+)\]$")
_WORD_RE = re.compile(r"(?:z\*|z|t\*|t)\[\d+,\d+\]")


def parse_symbol(text: str) -> GeneratorSymbol:
    m = _SYM_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad generator symbol {text!r}")
    kind, x, y = m.group(1), int(m.group(2)), int(m.group(3))
    if kind in ("z", "z*"):
        return GeneratorSymbol(kind, y, x)
    return GeneratorSymbol(kind, x, y)


def _split_top(text: str, sep: str):
    depth = 0
    out, cur = [], []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and text.startswith(sep, i):
            out.append("".join(cur))
            cur = []
            i += len(sep)
            continue
        cur.append(ch)
        i += 1
    out.append("".join(cur))
    return out


def from_text(text: str, tag: str, n: int) -> NCPolynomial:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    if text == "0":
        return NCPolynomial(tag, n)
    terms = {}
    for chunk in _split_top(text, " + "):
        chunk = chunk.strip()
        if not chunk.startswith("("):
            raise ValueError(f"term must start with a parenthesised coefficient: {chunk!r}")
        depth = 0
        for idx, ch in enumerate(chunk):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    break
        coeff = parse_laurent(chunk[1:idx])
        rest = chunk[idx + 1:]
        word = ()
        if rest:
            if not rest.startswith("*"):
                raise ValueError(f"bad term {chunk!r}")
            pieces = _WORD_RE.findall(rest[1:])
            if "*".join(pieces) != rest[1:]:
                raise ValueError(f"bad word in term {chunk!r}")
            word = tuple(parse_symbol(s) for s in pieces)
        terms[word] = terms.get(word, ZERO) + coeff
    return NCPolynomial(tag, n, terms)
