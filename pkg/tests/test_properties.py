"""Randomized property suites (seeded; --seed changes the sample)."""

from fractions import Fraction
from math import factorial

from plinth.derivation import Derivation, apply, deg_d, iterate
from plinth.grading import WeightedDegree, wdeg_and_tilde
from plinth.linalg import SpanSolver, nullspace, nullspace_naive
from plinth.oracle import kernel_and_image_basis, matrix_of_power, slice_basis
from plinth.polyring import (
    MultiPoly,
    PolyRing,
    divides,
    extended_euclid,
    multivariate_gcd,
)

CASES = 200


def random_poly(rng, ring, max_terms=4, max_deg=2, nonzero=False):
    terms = {}
    for _ in range(rng.randint(1 if nonzero else 0, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(ring.arity))
        terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    p = MultiPoly(ring, terms)
    if nonzero and p.is_zero():
        return ring.const(rng.randint(1, 5))
    return p


def random_param_poly(rng, ring, max_deg=2, nonzero=False):
    k = ring.nparams
    terms = {}
    for _ in range(rng.randint(1 if nonzero else 0, 3)):
        e = [0] * ring.arity
        for i in range(k):
            e[i] = rng.randint(0, max_deg)
        terms[tuple(e)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    p = MultiPoly(ring, terms)
    if nonzero and p.is_zero():
        return ring.const(rng.randint(1, 4))
    return p


def random_derivation(rng, ring):
    while True:
        images = [random_poly(rng, ring, max_terms=3, max_deg=2) for _ in ring.vars]
        if not all(img.is_zero() for img in images):
            return Derivation(ring, images)


# -- check functions, reused by the acceptance suite --------------------------


def check_leibniz(rng, cases=CASES):
    ring = PolyRing(("t",), ("X", "Y"))
    for _ in range(cases):
        D = random_derivation(rng, ring)
        f = random_poly(rng, ring)
        g = random_poly(rng, ring)
        assert apply(D, f * g) == f * apply(D, g) + g * apply(D, f)


def check_linearity(rng, cases=CASES):
    ring = PolyRing(("t",), ("X", "Y"))
    for _ in range(cases):
        D = random_derivation(rng, ring)
        f = random_poly(rng, ring)
        g = random_poly(rng, ring)
        r = random_param_poly(rng, ring)
        s = random_param_poly(rng, ring)
        assert apply(D, r * f + s * g) == r * apply(D, f) + s * apply(D, g)


def _random_linear_forms(rng, ring, count):
    # forms with D^2 f = 0 for the nice derivation DX=a, DY=b
    out = []
    for _ in range(count):
        f = (
            random_param_poly(rng, ring, max_deg=1) * ring.gen("X")
            + random_param_poly(rng, ring, max_deg=1) * ring.gen("Y")
            + random_param_poly(rng, ring, max_deg=1)
        )
        if f.is_zero():
            f = ring.gen("X")
        out.append(f)
    return out


def check_prule(rng, cases=CASES):
    """Degree additivity and the multinomial identity for products of
    elements killed by D^2."""
    ring = PolyRing(("a", "b"), ("X", "Y"))
    D = Derivation(ring, [ring.poly("a"), ring.poly("b")])
    for _ in range(cases):
        forms = _random_linear_forms(rng, ring, rng.randint(2, 3))
        prod = ring.one()
        degs = []
        for f in forms:
            prod = prod * f
            degs.append(deg_d(D, f))
        if prod.is_zero():
            continue
        assert deg_d(D, prod) == sum(degs)
        # multinomial expansion at a random order m
        m = rng.randint(1, len(forms) + 1)
        expected = ring.zero()

        def rec(i, remaining, acc, ways):
            nonlocal expected
            if i == len(forms):
                if remaining == 0:
                    expected = expected + Fraction(ways) * acc
                return
            for mi in range(remaining + 1):
                part = iterate(D, forms[i], mi)
                if part.is_zero():
                    continue
                rec(
                    i + 1,
                    remaining - mi,
                    acc * part,
                    ways // factorial(mi),
                )

        rec(0, m, ring.one(), factorial(m))
        assert iterate(D, prod, m) == expected


def check_tilde_multiplicative(rng, cases=CASES):
    ring = PolyRing(("t",), ("X", "Y"))
    for _ in range(cases):
        wd = WeightedDegree(
            ring, {"X": rng.randint(1, 3), "Y": rng.randint(1, 3)}
        )
        f = random_poly(rng, ring, nonzero=True)
        g = random_poly(rng, ring, nonzero=True)
        df, tf = wdeg_and_tilde(wd, f)
        dg, tg = wdeg_and_tilde(wd, g)
        dfg, tfg = wdeg_and_tilde(wd, f * g)
        assert dfg == df + dg
        assert tfg == tf * tg


def check_gcd_divides(rng, cases=CASES):
    ring = PolyRing(("t",), ("X", "Y"))
    for _ in range(cases):
        p = random_poly(rng, ring, max_terms=2, max_deg=1, nonzero=True)
        f = p * random_poly(rng, ring, max_terms=2, max_deg=1, nonzero=True)
        g = p * random_poly(rng, ring, max_terms=2, max_deg=1, nonzero=True)
        got = multivariate_gcd([f, g])
        assert divides(got, f)
        assert divides(got, g)


def check_bezout(rng, cases=CASES):
    ring = PolyRing(("t",), ("X",))
    for _ in range(cases):
        a = random_param_poly(rng, ring, max_deg=3, nonzero=True)
        b = random_param_poly(rng, ring, max_deg=3, nonzero=True)
        g, alpha, beta = extended_euclid(a, b)
        assert alpha * a + beta * b == g
        assert divides(g, a)
        assert divides(g, b)


def check_oracle_monotone(rng, cases=40):
    """Enlarging slice bounds never shrinks the bounded I_1 span."""
    ring = PolyRing(("t",), ("X", "Y"))
    for _ in range(cases):
        # triangular images guarantee local nilpotence
        img_x = random_param_poly(rng, ring, max_deg=1, nonzero=True)
        img_y = random_param_poly(rng, ring, max_deg=1) + random_param_poly(
            rng, ring, max_deg=1
        ) * ring.gen("X")
        if img_y.is_zero():
            img_y = ring.one()
        D = Derivation(ring, [img_x, img_y])
        small = kernel_and_image_basis(D, 1, slice_basis(ring, 1, 1))[1]
        big = kernel_and_image_basis(
            D, 1, slice_basis(ring, 2, 2), entry_cap=200000
        )[1]
        if not small:
            continue
        support = {}
        for p in small + big:
            for e in p.terms:
                support.setdefault(e, len(support))

        def vec(p):
            v = [Fraction(0)] * len(support)
            for e, c in p.terms.items():
                v[support[e]] = c
            return v

        solver = SpanSolver([vec(p) for p in big], len(support))
        for p in small:
            assert solver.contains(vec(p))


def check_matrix_columns(rng, cases=100):
    """Each matrix column equals the coefficient vector of D^n(monomial)."""
    from plinth.oracle import poly_to_vec

    ring = PolyRing(("t",), ("X", "Y"))
    D = Derivation(ring, [ring.poly("t"), ring.poly("X")])
    src = slice_basis(ring, 2, 2)
    for _ in range(cases):
        n = rng.randint(0, 3)
        mat = matrix_of_power(D, n, src, entry_cap=500000)
        i = rng.randrange(src.dim)
        mono = MultiPoly(ring, {src.basis[i]: Fraction(1)})
        assert mat.columns[i] == poly_to_vec(mat.target, iterate(D, mono, n))


def check_bareiss_vs_naive(rng, cases=CASES):
    for _ in range(cases):
        nrows = rng.randint(1, 5)
        ncols = rng.randint(1, 5)
        rows = [
            [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(ncols)]
            for _ in range(nrows)
        ]
        a = nullspace([list(r) for r in rows], ncols)
        b = nullspace_naive([list(r) for r in rows], ncols)
        assert a == b


# -- pytest wrappers ------------------------------------------------------------


def test_leibniz(rng):
    check_leibniz(rng)


def test_linearity(rng):
    check_linearity(rng)


def test_prule(rng):
    check_prule(rng)


def test_tilde_multiplicative(rng):
    check_tilde_multiplicative(rng)


def test_gcd_divides(rng):
    check_gcd_divides(rng)


def test_bezout(rng):
    check_bezout(rng)


def test_oracle_monotone(rng):
    check_oracle_monotone(rng)


def test_matrix_columns(rng):
    check_matrix_columns(rng)


def test_bareiss_vs_naive(rng):
    check_bareiss_vs_naive(rng)
