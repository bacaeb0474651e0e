"""Exact sparse multivariate polynomial arithmetic over Q.

Polynomials live in a tower Q[t_1..t_k][X_1..X_n]: the t's are
"coefficient parameters" and the X's are "main variables".  Internally a
polynomial is a map from exponent vectors (length k+n, params first) to
nonzero Fractions.  The term order used everywhere (printing, leading
terms, deterministic pivoting) is graded lex on the combined exponent
vector.
"""

from __future__ import annotations

import string
from fractions import Fraction
from math import gcd as _igcd
from math import lcm as _ilcm


class PlinthError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatchError(PlinthError):
    pass


class PolyParseError(PlinthError):
    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class ExactDivisionError(PlinthError):
    """Raised when an exact division leaves a remainder.

    The nonzero remainder is kept as a definitive "no" witness.
    """

    def __init__(self, remainder):
        super().__init__("exact division failed; remainder %s" % remainder)
        self.remainder = remainder


class PolyRing:
    """Descriptor of the ring Q[params][vars]."""

    __slots__ = ("params", "vars", "names", "_index")

    def __init__(self, params, vars):
        self.params = tuple(params)
        self.vars = tuple(vars)
        self.names = self.params + self.vars
        if len(set(self.names)) != len(self.names):
            raise PlinthError("ring names must be distinct: %r" % (self.names,))
        if not self.vars:
            raise PlinthError("a ring needs at least one main variable")
        for name in self.names:
            if not name or name[0] not in string.ascii_letters + "_":
                raise PlinthError("bad variable name %r" % name)
        self._index = {name: i for i, name in enumerate(self.names)}

    @property
    def nparams(self):
        return len(self.params)

    @property
    def nvars(self):
        return len(self.vars)

    @property
    def arity(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise PlinthError("unknown variable %r in ring %r" % (name, self)) from None

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.params == other.params
            and self.vars == other.vars
        )

    def __hash__(self):
        return hash((self.params, self.vars))

    def __repr__(self):
        return "PolyRing(params=%r, vars=%r)" % (list(self.params), list(self.vars))

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return MultiPoly(self, {(0,) * self.arity: c})

    def gen(self, name):
        i = self.index(name)
        exps = [0] * self.arity
        exps[i] = 1
        return MultiPoly(self, {tuple(exps): Fraction(1)})

    def gens(self):
        return {name: self.gen(name) for name in self.names}

    def extend(self, extra_vars):
        """Same parameters, extra main variables appended."""
        return PolyRing(self.params, self.vars + tuple(extra_vars))

    def poly(self, text):
        return poly_from_string(self, text)


def grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Sparse exact-rational multivariate polynomial."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        cleaned = {}
        arity = ring.arity
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            if len(exps) != arity or any(e < 0 for e in exps):
                raise PlinthError("bad exponent vector %r for %r" % (exps, ring))
            cleaned[tuple(exps)] = coeff
        self.terms = cleaned

    # -- basic structure ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.arity, Fraction(0))

    def as_constant(self):
        if not self.is_constant():
            raise PlinthError("polynomial %s is not constant" % self)
        return self.constant_term()

    def leading(self):
        """(exponent vector, coefficient) of the graded-lex leading term."""
        if self.is_zero():
            raise PlinthError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def total_degree(self):
        if self.is_zero():
            return float("-inf")
        return max(sum(e) for e in self.terms)

    def degree_in(self, name):
        i = self.ring.index(name)
        if self.is_zero():
            return float("-inf")
        return max(e[i] for e in self.terms)

    def param_degree(self):
        k = self.ring.nparams
        if self.is_zero():
            return float("-inf")
        return max(sum(e[:k]) for e in self.terms)

    def var_degree(self):
        k = self.ring.nparams
        if self.is_zero():
            return float("-inf")
        return max(sum(e[k:]) for e in self.terms)

    def involves(self, name):
        i = self.ring.index(name)
        return any(e[i] > 0 for e in self.terms)

    def coefficient_of(self, name, power):
        """Coefficient of name**power, a polynomial not involving name."""
        i = self.ring.index(name)
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i] == power:
                e = list(exps)
                e[i] = 0
                out[tuple(e)] = coeff
        return MultiPoly(self.ring, out)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatchError(
                    "operands live in different rings: %r vs %r"
                    % (self.ring, other.ring)
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise PlinthError("polynomial powers take natural exponents, got %r" % (n,))
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        return poly_to_string(self)

    def __repr__(self):
        return "<MultiPoly %s>" % poly_to_string(self)


class IdealPresentation:
    """Finite generator list inside a named ambient ring."""

    __slots__ = ("ring", "generators", "ambient")

    def __init__(self, ring, generators, ambient="B"):
        if ambient not in ("B", "A-as-subring"):
            raise PlinthError("unknown ambient tag %r" % ambient)
        gens = tuple(generators)
        if any(g.is_zero() for g in gens):
            raise PlinthError("ideal generators must be nonzero")
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator ring mismatch")
        self.ring = ring
        self.generators = gens
        self.ambient = ambient

    def __repr__(self):
        return "IdealPresentation(%s; ambient=%s)" % (
            ", ".join(str(g) for g in self.generators),
            self.ambient,
        )


# ---------------------------------------------------------------------------
# spec'd operations


def arith(op, f, g):
    """Dispatch add/sub/mul/pow by name (pow takes a natural exponent)."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "pow":
        return f**g
    raise PlinthError("unknown arithmetic op %r" % op)


def partial_derivative(f, name):
    i = f.ring.index(name)
    out = {}
    for exps, coeff in f.terms.items():
        if exps[i] == 0:
            continue
        e = list(exps)
        e[i] -= 1
        e = tuple(e)
        out[e] = out.get(e, Fraction(0)) + coeff * exps[i]
    return MultiPoly(f.ring, out)


def substitute(f, name, replacement):
    """Replace a variable by a polynomial of the same ring."""
    if replacement.ring != f.ring:
        raise RingMismatchError("substitution value lives in a different ring")
    i = f.ring.index(name)
    out = f.ring.zero()
    powers = {0: f.ring.one()}
    for exps, coeff in f.terms.items():
        k = exps[i]
        if k not in powers:
            powers[k] = replacement**k
        e = list(exps)
        e[i] = 0
        out = out + MultiPoly(f.ring, {tuple(e): coeff}) * powers[k]
    return out


def divide_exact(f, g):
    """Quotient f/g when g divides f; else ExactDivisionError with witness.

    Single-divisor division: if g | f the graded-lex greedy loop finds the
    quotient; otherwise it terminates with a nonzero remainder.
    """
    if g.is_zero():
        raise PlinthError("division by the zero polynomial")
    ring = f.ring
    if g.ring != ring:
        raise RingMismatchError("dividend and divisor ring mismatch")
    ge, gc = g.leading()
    q = {}
    rem = {}
    work = dict(f.terms)
    while work:
        exps = max(work, key=grlex_key)
        coeff = work.pop(exps)
        if all(a >= b for a, b in zip(exps, ge)):
            qe = tuple(a - b for a, b in zip(exps, ge))
            qc = coeff / gc
            q[qe] = q.get(qe, Fraction(0)) + qc
            # subtract qc * x^qe * g from the working dividend
            for e2, c2 in g.terms.items():
                e = tuple(a + b for a, b in zip(qe, e2))
                if e == exps:
                    continue
                nc = work.get(e, Fraction(0)) - qc * c2
                if nc == 0:
                    work.pop(e, None)
                else:
                    work[e] = nc
        else:
            rem[exps] = coeff
    remainder = MultiPoly(ring, rem)
    if not remainder.is_zero():
        raise ExactDivisionError(remainder)
    return MultiPoly(ring, q)


def divides(g, f):
    try:
        divide_exact(f, g)
        return True
    except ExactDivisionError:
        return False


def rational_content(f):
    """Signed rational c with f/c integer-primitive and positive leading coeff."""
    if f.is_zero():
        raise PlinthError("zero polynomial has no content")
    nums = [c.numerator for c in f.terms.values()]
    dens = [c.denominator for c in f.terms.values()]
    c = Fraction(_igcd(*[abs(n) for n in nums]) if len(nums) > 1 else abs(nums[0]),
                 _ilcm(*dens) if len(dens) > 1 else dens[0])
    _, lead = f.leading()
    if lead < 0:
        c = -c
    return c


def normalize_unit(f):
    """Scale by a rational unit: integer-primitive, positive leading coefficient."""
    if f.is_zero():
        return f
    c = rational_content(f)
    return MultiPoly(f.ring, {e: coeff / c for e, coeff in f.terms.items()})


# -- gcd machinery -----------------------------------------------------------


def _present_indices(f, g):
    idx = set()
    for p in (f, g):
        for exps in p.terms:
            for i, e in enumerate(exps):
                if e > 0:
                    idx.add(i)
    return sorted(idx)


def _deg(f, i):
    return max((e[i] for e in f.terms), default=-1)


def _coeff_at(f, i, power):
    out = {}
    for exps, coeff in f.terms.items():
        if exps[i] == power:
            e = list(exps)
            e[i] = 0
            out[tuple(e)] = coeff
    return MultiPoly(f.ring, out)


def _shift(f, i, power):
    out = {}
    for exps, coeff in f.terms.items():
        e = list(exps)
        e[i] += power
        out[tuple(e)] = coeff
    return MultiPoly(f.ring, out)


def _content_pp(f, i):
    coeffs = [c for c in
              (_coeff_at(f, i, k) for k in range(_deg(f, i) + 1))
              if not c.is_zero()]
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = _gcd2(cont, c)
        if cont.is_constant():
            break
    cont = normalize_unit(cont)
    return cont, divide_exact(f, cont)


def _prem(f, g, i):
    """Pseudo-remainder of f by g with respect to variable index i."""
    dg = _deg(g, i)
    lcg = _coeff_at(g, i, dg)
    r = f
    while not r.is_zero() and _deg(r, i) >= dg:
        dr = _deg(r, i)
        lcr = _coeff_at(r, i, dr)
        r = lcg * r - _shift(lcr * g, i, dr - dg)
    return r


def _gcd2(f, g):
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    idx = _present_indices(f, g)
    if not idx:
        return f.ring.one()
    i = idx[-1]
    fc, fp = _content_pp(f, i)
    gc, gp = _content_pp(g, i)
    cont = _gcd2(fc, gc)
    a, b = fp, gp
    if _deg(a, i) < _deg(b, i):
        a, b = b, a
    while not b.is_zero():
        r = _prem(a, b, i)
        if r.is_zero():
            a, b = b, r
        else:
            a, b = b, _content_pp(r, i)[1]
    return cont * a


def multivariate_gcd(fs):
    """gcd over Q[params][vars], integer-primitive with positive leading coeff."""
    fs = list(fs)
    if not fs:
        raise PlinthError("gcd of an empty list")
    g = fs[0].ring.zero()
    for f in fs:
        g = _gcd2(g, f)
        if not g.is_zero() and g.is_constant():
            break
    if g.is_zero():
        raise PlinthError("gcd of all-zero inputs")
    return normalize_unit(g)


# -- univariate parameter helpers -------------------------------------------


def _single_param_index(ring, polys):
    """Index of the unique parameter the given polynomials may involve."""
    used = set()
    for p in polys:
        for exps in p.terms:
            for i, e in enumerate(exps):
                if e > 0:
                    if i >= ring.nparams:
                        raise PlinthError(
                            "expected a polynomial in the coefficient parameter, "
                            "got main variable %r" % ring.names[i]
                        )
                    used.add(i)
    if len(used) > 1:
        raise PlinthError("expected univariate input, found parameters %s"
                          % [ring.names[i] for i in sorted(used)])
    if used:
        return used.pop()
    if ring.nparams == 0:
        raise PlinthError("ring has no coefficient parameter")
    return 0


def univar_coeffs(f, index):
    """Dense Fraction coefficient list of a polynomial univariate in one name."""
    deg = _deg(f, index)
    coeffs = [Fraction(0)] * (deg + 1) if deg >= 0 else []
    for exps, coeff in f.terms.items():
        coeffs[exps[index]] += coeff
    return coeffs


def poly_from_coeffs(ring, index, coeffs):
    out = {}
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        e = [0] * ring.arity
        e[index] = k
        out[tuple(e)] = c
    return MultiPoly(ring, out)


def _list_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _list_divmod(a, b):
    a = _list_trim(list(a))
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c == 0:
            continue
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    return q, _list_trim(a)


def _egcd_lists(a, b):
    if not b:
        return list(a), [Fraction(1)], []
    q, r = _list_divmod(a, b)
    g, x, y = _egcd_lists(b, r)
    # g = x*b + y*r = x*b + y*(a - q*b)
    qy = _list_mul(q, y)
    new_y = _list_sub(x, qy)
    return g, y, new_y


def _list_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _list_trim(out)


def _list_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _list_trim(out)


def extended_euclid(a, b):
    """(g, alpha, beta) with alpha*a + beta*b = g = gcd(a, b) in Q[t].

    Inputs must be univariate in a single coefficient parameter.  The gcd
    is normalized to integer-primitive with positive leading coefficient,
    and the Bezout pair is rescaled to match.
    """
    if a.is_zero() and b.is_zero():
        raise PlinthError("extended_euclid of two zero polynomials")
    ring = a.ring
    if b.ring != ring:
        raise RingMismatchError("extended_euclid operands ring mismatch")
    i = _single_param_index(ring, [a, b])
    la, lb = univar_coeffs(a, i), univar_coeffs(b, i)
    g, x, y = _egcd_lists(la, lb)
    gp = poly_from_coeffs(ring, i, g)
    scale = 1 / rational_content(gp)
    return (
        normalize_unit(gp),
        poly_from_coeffs(ring, i, [c * scale for c in x]),
        poly_from_coeffs(ring, i, [c * scale for c in y]),
    )


def reduce_mod_prime(r, p):
    """Coefficient-wise remainder mod a prime p of Q[t].

    Returns the canonical representative of r in (Q[t]/(p))[vars]: every
    Q[t]-coefficient is replaced by its Euclidean remainder mod p.
    """
    ring = r.ring
    if p.ring != ring:
        raise RingMismatchError("reduce_mod_prime operands ring mismatch")
    if p.is_constant():
        raise PlinthError("modulus must be nonconstant")
    i = _single_param_index(ring, [p])
    lp = univar_coeffs(p, i)
    k = ring.nparams
    # group terms by their main-variable part
    groups = {}
    for exps, coeff in r.terms.items():
        for j in range(k):
            if j != i and exps[j] > 0:
                raise PlinthError("reduce_mod_prime supports a single parameter")
        varpart = exps[k:]
        groups.setdefault(varpart, {})[exps[i]] = coeff
    out = {}
    for varpart, cmap in groups.items():
        deg = max(cmap)
        coeffs = [cmap.get(d, Fraction(0)) for d in range(deg + 1)]
        _, rem = _list_divmod(coeffs, lp)
        for d, c in enumerate(rem):
            if c == 0:
                continue
            e = [0] * ring.arity
            e[i] = d
            for j, ve in enumerate(varpart):
                e[k + j] = ve
            out[tuple(e)] = out.get(tuple(e), Fraction(0)) + c
    return MultiPoly(ring, out)


def irreducible_smalldeg(p):
    """True/False for degree <= 3 over Q (rational-root test), None beyond."""
    ring = p.ring
    i = _single_param_index(ring, [p])
    coeffs = univar_coeffs(p, i)
    deg = len(coeffs) - 1
    if deg <= 0:
        raise PlinthError("constant polynomial has no irreducibility status")
    if deg == 1:
        return True
    if deg >= 4:
        return None
    # degree 2 or 3: irreducible over Q iff no rational root
    den = _ilcm(*[c.denominator for c in coeffs])
    ints = [int(c * den) for c in coeffs]
    if ints[0] == 0:
        return False
    a0, an = abs(ints[0]), abs(ints[-1])

    def _divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return out

    for num in _divisors(a0):
        for den2 in _divisors(an):
            for root in (Fraction(num, den2), Fraction(-num, den2)):
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * root + c
                if val == 0:
                    return False
    return True


def embed(f, ring):
    """Map a polynomial into a ring containing the same names (by name)."""
    mapping = [ring.index(name) for name in f.ring.names]
    out = {}
    for exps, coeff in f.terms.items():
        e = [0] * ring.arity
        for src, dst in enumerate(mapping):
            e[dst] = exps[src]
        out[tuple(e)] = coeff
    return MultiPoly(ring, out)


def restrict(f, ring):
    """Inverse of embed: fails if f involves names missing from ring."""
    mapping = []
    for i, name in enumerate(f.ring.names):
        if name in ring._index:
            mapping.append((i, ring.index(name)))
        else:
            j = f.ring.index(name)
            if any(e[j] > 0 for e in f.terms):
                raise PlinthError("polynomial involves %r, absent from target ring" % name)
    out = {}
    for exps, coeff in f.terms.items():
        e = [0] * ring.arity
        for src, dst in mapping:
            e[dst] = exps[src]
        out[tuple(e)] = coeff
    return MultiPoly(ring, out)


# ---------------------------------------------------------------------------
# text grammar: parse + print, bijective on canonical forms


def poly_to_string(f):
    if f.is_zero():
        return "0"
    parts = []
    for exps in sorted(f.terms, key=grlex_key, reverse=True):
        coeff = f.terms[exps]
        names = []
        for name, e in zip(f.ring.names, exps):
            if e == 1:
                names.append(name)
            elif e > 1:
                names.append("%s^%d" % (name, e))
        mag = abs(coeff)
        if not names:
            body = str(mag)
        elif mag == 1:
            body = "*".join(names)
        else:
            body = "*".join([str(mag)] + names)
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append((" + " if coeff > 0 else " - ") + body)
    return "".join(parts)


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return ("end", None, self.pos)
        ch = self.text[self.pos]
        if ch.isdigit():
            j = self.pos
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            return ("int", int(self.text[self.pos:j]), self.pos)
        if ch.isalpha() or ch == "_":
            j = self.pos
            while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_"):
                j += 1
            return ("name", self.text[self.pos:j], self.pos)
        if ch in "+-*/^()":
            return (ch, ch, self.pos)
        raise PolyParseError("unexpected character %r" % ch, self.pos)

    def next(self):
        kind, value, pos = self.peek()
        if kind == "int":
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
        elif kind == "name":
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
        elif kind != "end":
            self.pos += 1
        return kind, value, pos


def poly_from_string(ring, text):
    """Parse the polynomial grammar: + - * / ^ ( ), implicit products allowed."""
    tok = _Tokenizer(text)

    def parse_expr():
        kind, _, _ = tok.peek()
        negate = False
        if kind in ("+", "-"):
            tok.next()
            negate = kind == "-"
        value = parse_term()
        if negate:
            value = -value
        while True:
            kind, _, _ = tok.peek()
            if kind == "+":
                tok.next()
                value = value + parse_term()
            elif kind == "-":
                tok.next()
                value = value - parse_term()
            else:
                return value

    def parse_term():
        value = parse_factor()
        while True:
            kind, _, _ = tok.peek()
            if kind == "*":
                tok.next()
                value = value * parse_factor()
            elif kind == "/":
                tok.next()
                knd, val, pos = tok.next()
                if knd != "int":
                    raise PolyParseError("expected an integer denominator", pos)
                if val == 0:
                    raise PolyParseError("division by zero", pos)
                value = value * Fraction(1, val)
            elif kind in ("int", "name", "("):
                value = value * parse_factor()  # juxtaposition
            else:
                return value

    def parse_factor():
        base = parse_base()
        kind, _, _ = tok.peek()
        if kind == "^":
            tok.next()
            knd, val, pos = tok.next()
            if knd != "int":
                raise PolyParseError("expected a natural exponent after '^'", pos)
            return base**val
        return base

    def parse_base():
        kind, value, pos = tok.next()
        if kind == "int":
            return ring.const(value)
        if kind == "name":
            if value not in ring._index:
                raise PolyParseError("unknown variable %r" % value, pos)
            return ring.gen(value)
        if kind == "(":
            inner = parse_expr()
            knd, _, pos2 = tok.next()
            if knd != ")":
                raise PolyParseError("expected ')'", pos2)
            return inner
        raise PolyParseError("expected a number, variable or '('", pos)

    value = parse_expr()
    kind, _, pos = tok.peek()
    if kind != "end":
        raise PolyParseError("trailing input", pos)
    return value
