"""Normal forms by word rewriting.

Each rewrite system orients the defining relations so that every rule
strictly decreases :func:`~qball.algebra.poly.word_key`. Reduction is memoised
per word; a budget on rule applications guards against a wrongly oriented
rule.
"""
from __future__ import annotations

import sys
from functools import lru_cache
from itertools import product
from math import comb

from ..report import CheckReport, stopwatch
from .laurent import ONE, ZERO, LaurentScalar
from .poly import MATQ, SLNQ, GeneratorSymbol, NCPolynomial, free_star, letter_key, word_key
from .relations import (
    antiholomorphic_rules,
    cross_rules,
    holomorphic_rules,
    q_determinant,
    t_star_expansion,
)

STEP_BUDGET = 10**6

HOLOMORPHIC = "holomorphic"
ANTIHOLOMORPHIC = "antiholomorphic"
POL = "pol"
SL = "sl"
KINDS = (HOLOMORPHIC, ANTIHOLOMORPHIC, POL, SL)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class RewriteBudgetExceeded(RuntimeError):
    """Raised when reduction does not terminate within the step budget."""


def _add_into(acc: dict, word, c):
    v = acc.get(word)
    v = c if v is None else v + c
    if v.is_zero():
        acc.pop(word, None)
    else:
        acc[word] = v


class RewriteSystem:
    """Oriented rules ``lhs word -> {word: coeff}`` for one algebra and size."""

    def __init__(self, kind: str, n: int, rules, budget: int = STEP_BUDGET):
        self.kind = kind
        self.n = n
        self.tag = SLNQ if kind == SL else MATQ
        self.rules = {}
        for lhs, rhs in rules:
            lhs = tuple(lhs)
            for w in rhs:
                if not word_key(w) < word_key(lhs):
                    raise ValueError(f"rule {lhs} -> {w} does not decrease the order")
            self.rules[lhs] = dict(rhs)
        self.lengths = sorted({len(k) for k in self.rules})
        self.budget = budget
        self.order = "deglex: length, star-before-plain inversions, letters (plain descending < starred ascending)"
        self._memo = {}
        self._steps = 0
        self._star_cache = {}
        # words up to this length have unique normal forms (None = all lengths)
        self.certified_degree = None

    def __repr__(self):
        return f"RewriteSystem({self.kind}, n={self.n}, {len(self.rules)} rules)"

    # ------------------------------------------------------------------
    def find_redex(self, word, start: int = 0):
        """First (position, lhs) with a rule applying at that position, or None."""
        rules = self.rules
        for i in range(start, len(word)):
            for L in self.lengths:
                if i + L > len(word):
                    break
                lhs = word[i:i + L]
                if lhs in rules:
                    return i, lhs
        return None

    def is_normal(self, word) -> bool:
        return self.find_redex(tuple(word)) is None

    def _nf_word(self, word) -> dict:
        memo = self._memo
        hit = memo.get(word)
        if hit is not None:
            return hit
        red = self.find_redex(word)
        if red is None:
            res = {word: ONE}
        else:
            self._steps += 1
            if self._steps > self.budget:
                raise RewriteBudgetExceeded(
                    f"more than {self.budget} rule applications; a rule is probably misoriented")
            i, lhs = red
            pre, post = word[:i], word[i + len(lhs):]
            res = {}
            for w, c in self.rules[lhs].items():
                for w2, c2 in self._nf_word(pre + w + post).items():
                    _add_into(res, w2, c * c2)
        memo[word] = res
        return res

    def expand_stars(self, p: NCPolynomial) -> NCPolynomial:
        """Replace t* letters by their quantum-minor expressions (SL only)."""
        if self.tag != SLNQ or not any(s.kind == "t*" for s in p.symbols()):
            return p
        out = {}
        for w, c in p.items():
            partial = {(): c}
            for s in w:
                if s.kind == "t*":
                    img = self._star_image(s)
                    nxt = {}
                    for pw, pc in partial.items():
                        for iw, ic in img.items():
                            _add_into(nxt, pw + iw, pc * ic)
                    partial = nxt
                else:
                    partial = {pw + (s,): pc for pw, pc in partial.items()}
            for pw, pc in partial.items():
                _add_into(out, pw, pc)
        return NCPolynomial(p.tag, p.n, out, check=False)

    def _star_image(self, s: GeneratorSymbol) -> dict:
        img = self._star_cache.get(s)
        if img is None:
            img = t_star_expansion(s.row, s.col, self.n).terms
            self._star_cache[s] = img
        return img

    def normal_form(self, p: NCPolynomial) -> NCPolynomial:
        if p.tag != self.tag or p.n != self.n:
            raise ValueError(f"polynomial in {p.tag}(n={p.n}) given to {self!r}")
        p = self.expand_stars(p)
        self._steps = 0
        out = {}
        for w, c in p.items():
            for w2, c2 in self._nf_word(w).items():
                _add_into(out, w2, c * c2)
        return NCPolynomial(p.tag, p.n, out, check=False)

    def reduce_word(self, word) -> NCPolynomial:
        return NCPolynomial(self.tag, self.n, dict(self._nf_word(tuple(word))), check=False)

    def alphabet(self) -> list:
        letters = []
        for r in range(1, self.n + 1):
            for c in range(1, self.n + 1):
                if self.kind in (HOLOMORPHIC, POL):
                    letters.append(GeneratorSymbol("z", r, c))
                if self.kind in (ANTIHOLOMORPHIC, POL):
                    letters.append(GeneratorSymbol("z*", r, c))
                if self.kind == SL:
                    letters.append(GeneratorSymbol("t", r, c))
        return sorted(letters, key=letter_key)


@lru_cache(maxsize=None)
def rewrite_system(kind: str, n: int) -> RewriteSystem:
    """Shared, read-only rewrite system for one algebra descriptor and size."""
    if kind == HOLOMORPHIC:
        return RewriteSystem(kind, n, holomorphic_rules(n, MATQ))
    if kind == ANTIHOLOMORPHIC:
        return RewriteSystem(kind, n, antiholomorphic_rules(n))
    if kind == POL:
        return RewriteSystem(kind, n, holomorphic_rules(n, MATQ) + antiholomorphic_rules(n) + cross_rules(n))
    if kind == SL:
        return _sl_system(n)
    raise ValueError(f"unknown algebra descriptor {kind!r}")


def _sl_system(n: int) -> RewriteSystem:
    quad = holomorphic_rules(n, SLNQ)
    base = RewriteSystem(SL, n, quad)
    det = base.normal_form(q_determinant(n, SLNQ))
    lead, c = max(det.items(), key=lambda kv: word_key(kv[0]))
    # lead = (1 - (det - c*lead)) / c
    inv = c.inverse()
    rhs = {(): inv}
    for w, v in det.items():
        if w != lead:
            rhs[w] = -(v * inv)
    rs = RewriteSystem(SL, n, quad + [(lead, rhs)])
    if n >= 3:
        deg = SL_COMPLETION_DEGREE.get(n, 4)
        rs = complete(rs, deg)
        rs.certified_degree = deg
    return rs


# Degree up to which the SL system is completed. For n <= 2 the quadratic
# rules plus the determinant rule are already confluent; for n = 3 the
# completion is infinite under this order, so it is truncated.
SL_COMPLETION_DEGREE = {3: 7}


def complete(rs: RewriteSystem, max_degree: int, max_rounds: int = 50) -> RewriteSystem:
    """Add rules for unresolved ambiguities until none remain up to ``max_degree``."""
    rules = [(k, v) for k, v in rs.rules.items()]
    for _ in range(max_rounds):
        new = []
        seen = set()
        for w, (p1, l1), (p2, l2) in ambiguities(rs, max_degree):
            diff = _apply_at(rs, w, p1, l1) - _apply_at(rs, w, p2, l2)
            if diff.is_zero():
                continue
            diff = rs.normal_form(diff)
            if diff.is_zero():
                continue
            lead, c = max(diff.items(), key=lambda kv: word_key(kv[0]))
            if lead in seen:
                continue
            seen.add(lead)
            inv = c.inverse()
            new.append((lead, {w2: -(v * inv) for w2, v in diff.items() if w2 != lead}))
        if not new:
            return rs
        # keep the first rule per leading word, then rebuild
        rules += new
        rs = RewriteSystem(rs.kind, rs.n, rules, rs.budget)
    raise RuntimeError(f"completion did not stabilise in {max_rounds} rounds")


def system_for(p: NCPolynomial) -> RewriteSystem:
    return rewrite_system(SL if p.tag == SLNQ else POL, p.n)


def normal_form(p: NCPolynomial, rs: RewriteSystem | None = None) -> NCPolynomial:
    """Unique reduced representative of ``p``."""
    if rs is None:
        rs = system_for(p)
    return rs.normal_form(p)


def star(p: NCPolynomial, reduce: bool = True) -> NCPolynomial:
    """Involution: for MatQ swap plain/starred and reverse; for SLnQ use the
    quantum-minor formula for t^star. Scalars are conjugated (u -> 1/u)."""
    s = free_star(p)
    rs = system_for(p)
    if p.tag == SLNQ:
        s = rs.expand_stars(s)
    return rs.normal_form(s) if reduce else s


# confluence ----------------------------------------------------------------
def ambiguities(rs: RewriteSystem, max_degree: int):
    """Overlap and inclusion ambiguities among leading words, up to ``max_degree``."""
    lhss = list(rs.rules)
    out = []
    for u in lhss:
        for v in lhss:
            # overlap: suffix of u equals prefix of v
            for k in range(1, min(len(u), len(v))):
                if u[-k:] == v[:k]:
                    w = u + v[k:]
                    if len(w) <= max_degree:
                        out.append((w, (0, u), (len(u) - k, v)))
            # inclusion: v strictly inside u
            if len(v) < len(u):
                for i in range(len(u) - len(v) + 1):
                    if u[i:i + len(v)] == v:
                        out.append((u, (0, u), (i, v)))
    return out


def _apply_at(rs: RewriteSystem, word, pos: int, lhs) -> NCPolynomial:
    pre, post = word[:pos], word[pos + len(lhs):]
    terms = {}
    for w, c in rs.rules[lhs].items():
        _add_into(terms, pre + w + post, c)
    return rs.normal_form(NCPolynomial(rs.tag, rs.n, terms, check=False))


def check_confluence(rs: RewriteSystem, max_degree: int) -> CheckReport:
    """Resolve every ambiguity up to ``max_degree``; residual = number of failures."""
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    rep = CheckReport(f"confluence[{rs.kind},n={rs.n},deg<={max_degree}]",
                      {"n": rs.n, "kind": rs.kind, "max_degree": max_degree})
    failures = []
    with stopwatch() as sw:
        amb = ambiguities(rs, max_degree)
        for w, (p1, l1), (p2, l2) in amb:
            a = _apply_at(rs, w, p1, l1)
            b = _apply_at(rs, w, p2, l2)
            if a != b:
                failures.append((w, a - b))
    rep.add("ambiguities_resolved", len(failures), 0, ms=sw[0],
            detail=f"{len(amb)} ambiguities checked")
    for w, diff in failures[:50]:
        rep.add("unresolved:" + "*".join(s.text() for s in w), 1, 0, passed=False, detail=str(diff))
    return rep


# dimensions ----------------------------------------------------------------
def graded_dimension(kind: str, n: int, d: int) -> int:
    """Number of normal words of length ``d``.

    Counted with an automaton whose state is the last (L-1) letters, L the
    longest leading word.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    rs = rewrite_system(kind, n)
    letters = rs.alphabet()
    if d == 0:
        return 1
    span = max(rs.lengths, default=1) - 1
    states = {(): 1}
    for _ in range(d):
        nxt = {}
        for st, cnt in states.items():
            for x in letters:
                w = st + (x,)
                # only redexes ending at the new letter can appear
                bad = False
                for L in rs.lengths:
                    if L <= len(w) and w[-L:] in rs.rules:
                        bad = True
                        break
                if bad:
                    continue
                key = w[-span:] if span else ()
                nxt[key] = nxt.get(key, 0) + cnt
        states = nxt
    return sum(states.values())


def enumerate_normal_words(kind: str, n: int, d: int) -> list:
    rs = rewrite_system(kind, n)
    return [w for w in product(rs.alphabet(), repeat=d) if rs.is_normal(w)]


def expected_holomorphic_dimension(n: int, d: int) -> int:
    return comb(n * n + d - 1, d)


__all__ = [
    "RewriteSystem", "RewriteBudgetExceeded", "rewrite_system", "normal_form", "star",
    "check_confluence", "graded_dimension", "enumerate_normal_words", "ambiguities",
    "HOLOMORPHIC", "ANTIHOLOMORPHIC", "POL", "SL", "KINDS", "STEP_BUDGET",
    "expected_holomorphic_dimension", "system_for", "ZERO", "LaurentScalar",
]
