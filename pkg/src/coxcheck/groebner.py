"""Multivariate polynomials over Q with Buchberger's algorithm.

Just enough machinery to decide ideal and radical membership for the bunch
computation and to certify homogeneity of relations: dense exponent-tuple
monomials, degree-reverse-lexicographic order by default, unpruned pair
processing apart from the coprime-leading-term skip.  Coefficients are
rational; anything else is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InputError


@dataclass(frozen=True)
class TermOrder:
    """A monomial order: degrevlex (default) or lex, with optional variable
    priority given as a permutation of the variable indices (most significant
    first)."""

    kind: str = "degrevlex"
    priority: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex"):
            raise DomainError("unknown term order %r" % (self.kind,))
        if self.priority is not None:
            object.__setattr__(self, "priority", tuple(int(i) for i in self.priority))

    def key(self, mono):
        if self.priority is not None:
            mono = tuple(mono[i] for i in self.priority)
        if self.kind == "lex":
            return mono
        return (sum(mono), tuple(-e for e in reversed(mono)))


DEGREVLEX = TermOrder()


class Polynomial:
    """A polynomial with Fraction coefficients in variables T1..T{nvars}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = int(nvars)
        clean = {}
        for mono, coeff in (terms or {}).items():
            if isinstance(coeff, float):
                raise DomainError("polynomial coefficients must be rational")
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.nvars or any(e < 0 for e in mono):
                raise DomainError("bad exponent vector %r" % (mono,))
            clean[mono] = clean.get(mono, Fraction(0)) + coeff
        self.terms = {m: c for m, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, index, nvars):
        if not (0 <= index < nvars):
            raise DomainError("variable index out of range")
        mono = [0] * nvars
        mono[index] = 1
        return cls(nvars, {tuple(mono): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.nvars, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial) or other.nvars != self.nvars:
            raise DomainError("polynomial arithmetic across different rings")
        return other

    def lift(self, nvars):
        """The same polynomial inside a ring with more variables."""
        if nvars < self.nvars:
            raise DomainError("cannot drop variables")
        pad = nvars - self.nvars
        return Polynomial(nvars, {m + (0,) * pad: c for m, c in self.terms.items()})

    def sorted_terms(self, order=DEGREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def __repr__(self):
        return "Polynomial(%r)" % (poly_to_string(self),)


def leading_term(f, order=DEGREVLEX):
    if f.is_zero():
        raise DomainError("zero polynomial has no leading term")
    mono = max(f.terms, key=order.key)
    return mono, f.terms[mono]


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def reduce_poly(f, basis, order=DEGREVLEX):
    """Full normal form of f modulo a list of polynomials.

    Deterministic: at each step the leading reducible term is cancelled by
    the first divisor found in list order; irreducible leading terms move to
    the remainder.
    """
    remainder = Polynomial.zero(f.nvars)
    work = f
    lts = [leading_term(g, order) for g in basis]
    while not work.is_zero():
        mono, coeff = leading_term(work, order)
        hit = None
        for k, (lm, lc) in enumerate(lts):
            if _mono_divides(lm, mono):
                hit = (k, lm, lc)
                break
        if hit is None:
            remainder = remainder + Polynomial(f.nvars, {mono: coeff})
            work = work - Polynomial(f.nvars, {mono: coeff})
        else:
            k, lm, lc = hit
            factor = Polynomial(f.nvars, {_mono_div(mono, lm): coeff / lc})
            work = work - factor * basis[k]
    return remainder


def s_polynomial(f, g, order=DEGREVLEX):
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    lcm = _mono_lcm(mf, mg)
    tf = Polynomial(f.nvars, {_mono_div(lcm, mf): Fraction(1) / cf})
    tg = Polynomial(g.nvars, {_mono_div(lcm, mg): Fraction(1) / cg})
    return tf * f - tg * g


def _monic(f, order=DEGREVLEX):
    _, c = leading_term(f, order)
    return f * (Fraction(1) / c)


def _canonical_sort(polys, order=DEGREVLEX):
    return tuple(sorted(polys, key=lambda g: [(order.key(m), c) for m, c in g.sorted_terms(order)]))


def buchberger(gens, order=DEGREVLEX):
    """Reduced Groebner basis of the ideal the generators span.

    Pairs are processed first-in-first-out with only the coprime
    leading-term skip; the final basis is inter-reduced, made monic, sorted
    canonically, and re-verified: every S-polynomial of the returned basis
    reduces to zero.
    """
    G = [_monic(g, order) for g in gens if not g.is_zero()]
    if not G:
        return ()
    nvars = G[0].nvars
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    k = 0
    while k < len(pairs):
        i, j = pairs[k]
        k += 1
        mi, _ = leading_term(G[i], order)
        mj, _ = leading_term(G[j], order)
        if _mono_lcm(mi, mj) == tuple(a + b for a, b in zip(mi, mj)):
            continue  # coprime leading terms
        r = reduce_poly(s_polynomial(G[i], G[j], order), G, order)
        if not r.is_zero():
            G.append(_monic(r, order))
            new = len(G) - 1
            pairs.extend((t, new) for t in range(new))
    # Inter-reduce to the unique reduced basis.
    changed = True
    while changed:
        changed = False
        for i in range(len(G)):
            others = [G[j] for j in range(len(G)) if j != i and not G[j].is_zero()]
            r = reduce_poly(G[i], others, order) if others else G[i]
            if r != G[i]:
                G[i] = Polynomial.zero(nvars) if r.is_zero() else _monic(r, order)
                changed = True
        G = [g for g in G if not g.is_zero()]
    G = list(_canonical_sort(G, order))
    assert is_groebner(G, order)
    return tuple(G)


def is_groebner(basis, order=DEGREVLEX):
    """Full S-polynomial reduction check (no criteria applied)."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = s_polynomial(basis[i], basis[j], order)
            if not reduce_poly(s, list(basis), order).is_zero():
                return False
    return True


def ideal_membership(f, gens, order=DEGREVLEX):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return f.is_zero()
    basis = buchberger(gens, order)
    return reduce_poly(f, list(basis), order).is_zero()


def radical_membership(f, gens) -> bool:
    """Decide f in rad(ideal(gens)) by the auxiliary-variable trick:
    f lies in the radical iff 1 lies in ideal(gens) + <1 - y*f> inside the
    ring extended by one variable y."""
    nv = f.nvars
    lifted = [g.lift(nv + 1) for g in gens if not g.is_zero()]
    y = Polynomial.variable(nv, nv + 1)
    lifted.append(Polynomial.constant(nv + 1, 1) - y * f.lift(nv + 1))
    basis = buchberger(lifted, DEGREVLEX)
    zero_mono = (0,) * (nv + 1)
    return any(set(g.terms) == {zero_mono} for g in basis)


def graded_degree(f, degs):
    """Common multidegree of all terms under the grading, or None.

    degs maps each variable (by position) to an integer degree vector; a
    monomial's degree is the exponent-weighted sum.  The zero polynomial is
    homogeneous of degree zero.
    """
    degs = tuple(tuple(int(x) for x in d) for d in degs)
    if len(degs) != f.nvars:
        raise DomainError("grading must assign a degree to every variable")
    rho = len(degs[0]) if degs else 0
    if any(len(d) != rho for d in degs):
        raise DomainError("grading degree vectors have mixed lengths")
    if f.is_zero():
        return (0,) * rho
    found = None
    for mono in f.terms:
        vec = tuple(sum(e * degs[i][k] for i, e in enumerate(mono)) for k in range(rho))
        if found is None:
            found = vec
        elif vec != found:
            return None
    return found


# ---------------------------------------------------------------------------
# Text syntax:  3/2*T1^2*T4 - T2*T3
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>T\d+)|(?P<op>[-+*^]))")


def parse_polynomial(text, nvars) -> Polynomial:
    """Parse the term syntax used in instance files.

    Grammar: a signed sum of terms; each term is a '*'-separated product of
    rational constants (``3`` or ``3/2``) and powers ``T<i>^<e>``.  Floating
    point literals are not part of the grammar and fail to tokenize.
    """
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise InputError("polynomial syntax error at column %d: %r" %
                             (pos + 1, text[pos:pos + 10]))
        tokens.append((m.lastgroup, m.group(m.lastgroup), pos))
        pos = m.end()

    result = Polynomial.zero(nvars)
    i = 0

    def parse_factor(i):
        kind, val, at = tokens[i]
        if kind == "num":
            if "/" in val:
                num, den = val.split("/")
                return Polynomial.constant(nvars, Fraction(int(num), int(den))), i + 1
            return Polynomial.constant(nvars, int(val)), i + 1
        if kind == "var":
            index = int(val[1:])
            if not (1 <= index <= nvars):
                raise InputError("variable %s out of range 1..%d (column %d)" %
                                 (val, nvars, at + 1))
            base = Polynomial.variable(index - 1, nvars)
            i += 1
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
                if i + 1 >= len(tokens) or tokens[i + 1][0] != "num" or "/" in tokens[i + 1][1]:
                    raise InputError("exponent must be a positive integer (column %d)" % (at + 1,))
                exp = int(tokens[i + 1][1])
                if exp <= 0:
                    raise InputError("exponent must be a positive integer (column %d)" % (at + 1,))
                mono = next(iter(base.terms))
                mono = tuple(e * exp for e in mono)
                base = Polynomial(nvars, {mono: Fraction(1)})
                i += 2
            return base, i
        raise InputError("unexpected %r in polynomial (column %d)" % (val, at + 1))

    def parse_term(i):
        term, i = parse_factor(i)
        while i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
            nxt, i = parse_factor(i + 1)
            term = term * nxt
        return term, i

    sign = Fraction(1)
    expect_term = True
    while i < len(tokens):
        kind, val, at = tokens[i]
        if kind == "op" and val in "+-":
            if expect_term and val == "-":
                sign = -sign
            elif expect_term:
                pass
            else:
                sign = Fraction(1) if val == "+" else Fraction(-1)
                expect_term = True
            i += 1
            continue
        if not expect_term:
            raise InputError("missing operator before column %d" % (at + 1,))
        term, i = parse_term(i)
        result = result + term * sign
        sign = Fraction(1)
        expect_term = False
    if expect_term and tokens:
        raise InputError("polynomial ends with a dangling operator")
    if not tokens:
        raise InputError("empty polynomial")
    return result


def poly_to_string(f, order=DEGREVLEX) -> str:
    """Canonical text form; parse_polynomial round-trips it."""
    if f.is_zero():
        return "0"
    parts = []
    for k, (mono, coeff) in enumerate(f.sorted_terms(order)):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        factors = []
        for i, e in enumerate(mono):
            if e == 1:
                factors.append("T%d" % (i + 1))
            elif e > 1:
                factors.append("T%d^%d" % (i + 1, e))
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if k == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(" %s %s" % (sign, body))
    return "".join(parts)
