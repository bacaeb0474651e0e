"""Degree-bounded exact linear algebra used as ground truth.

A DegreeSlice is the finite-dimensional window of B spanned by all
monomials within a parameter-degree and a variable-degree bound.  Powers
of a derivation become exact rational matrices on slices; kernels, image
spans and bounded ideal membership are computed by fraction-free
elimination.  Every positive answer carries a certificate (preimage or
cofactors) that is re-verified by direct polynomial arithmetic; bounded
failures are reported as INCONCLUSIVE, never upgraded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .derivation import apply, iterate
from .polyring import (
    ExactDivisionError,
    MultiPoly,
    PlinthError,
    divide_exact,
    grlex_key,
    normalize_unit,
)

DEFAULT_ENTRY_CAP = 20000


class OracleCapError(PlinthError):
    """A solve would exceed the configured matrix-entry cap."""


@dataclass(frozen=True)
class DegreeSlice:
    ring: object
    param_bound: int
    var_bound: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def index(self):
        return {e: i for i, e in enumerate(self.basis)}


def slice_basis(ring, param_bound, var_bound):
    """All monomials within both bounds, in ascending graded-lex order."""
    if param_bound < 0 or var_bound < 0:
        raise PlinthError("slice bounds must be naturals")
    k = ring.nparams
    n = ring.nvars
    pmonos = _bounded_tuples(k, param_bound)
    vmonos = _bounded_tuples(n, var_bound)
    basis = sorted((p + v for p in pmonos for v in vmonos), key=grlex_key)
    return DegreeSlice(ring, param_bound, var_bound, tuple(basis))


def _bounded_tuples(length, bound):
    out = [()]
    for _ in range(length):
        out = [t + (d,) for t in out for d in range(bound + 1)]
    return [t for t in out if sum(t) <= bound]


def poly_to_vec(slc, f):
    """Coefficient vector of f in the slice basis; None if f sticks out."""
    idx = slc.index()
    vec = [Fraction(0)] * slc.dim
    for e, c in f.terms.items():
        i = idx.get(e)
        if i is None:
            return None
        vec[i] = c
    return vec


def vec_to_poly(slc, vec):
    return MultiPoly(slc.ring, {e: c for e, c in zip(slc.basis, vec) if c != 0})


def growth_per_application(D):
    """(param-degree, var-degree) growth bound for one application of D."""
    pg = 0
    vg = 0
    for img in D.images:
        if img.is_zero():
            continue
        pg = max(pg, int(img.param_degree()))
        vg = max(vg, int(img.var_degree()) - 1)
    return pg, max(0, vg)


@dataclass
class LinearMapMatrix:
    source: DegreeSlice
    target: DegreeSlice
    power: int
    columns: list  # one coefficient vector (in target coords) per source monomial


def _check_cap(nrows, ncols, cap):
    if cap is not None and nrows * ncols > cap:
        raise OracleCapError(
            "solve needs %d x %d = %d entries, cap is %d"
            % (nrows, ncols, nrows * ncols, cap)
        )


def matrix_of_power(D, n, source, entry_cap=DEFAULT_ENTRY_CAP):
    """Exact matrix of D^n from the source slice into an auto-enlarged target."""
    if n < 0:
        raise PlinthError("power must be a natural")
    pg, vg = growth_per_application(D)
    target = slice_basis(
        source.ring, source.param_bound + n * pg, source.var_bound + n * vg
    )
    _check_cap(target.dim, source.dim, entry_cap)
    columns = []
    for e in source.basis:
        mono = MultiPoly(source.ring, {e: Fraction(1)})
        img = iterate(D, mono, n)
        vec = poly_to_vec(target, img)
        if vec is None:
            raise PlinthError("degree growth bound violated (internal)")
        columns.append(vec)
    return LinearMapMatrix(source=source, target=target, power=n, columns=columns)


def _support_rows(polys, extra=()):
    """Dense rows over the union support of the given polynomials."""
    support = {}
    for p in list(polys) + list(extra):
        for e in p.terms:
            support.setdefault(e, len(support))
    rows = [[Fraction(0)] * len(polys) for _ in support]
    for c, p in enumerate(polys):
        for e, coeff in p.terms.items():
            rows[support[e]][c] = coeff
    return rows, support


def kernel_basis(D, slc, entry_cap=DEFAULT_ENTRY_CAP):
    """Basis of Ker(D) intersected with the slice, as normalized polynomials."""
    col_polys = [apply(D, MultiPoly(slc.ring, {e: Fraction(1)})) for e in slc.basis]
    rows, _ = _support_rows([p for p in col_polys])
    _check_cap(len(rows), slc.dim, entry_cap)
    basis = []
    for vec in linalg.nullspace(rows, slc.dim):
        basis.append(normalize_unit(vec_to_poly(slc, vec)))
    return basis


def kernel_and_image_basis(D, n, source, entry_cap=DEFAULT_ENTRY_CAP):
    """(basis of A within the source slice,
        basis of Ker(D) within the span of D^n(source slice)).

    The second space is a lower approximation of I_n, monotone
    nondecreasing in the slice bounds.
    """
    if n < 1:
        raise PlinthError("kernel_and_image_basis needs n >= 1")
    kernel = kernel_basis(D, source, entry_cap)
    mat = matrix_of_power(D, n, source, entry_cap)
    col_polys = [vec_to_poly(mat.target, c) for c in mat.columns]
    col_polys = [p for p in col_polys if not p.is_zero()]
    if not col_polys:
        return kernel, []
    # column-space basis of D^n on the slice
    rows, _ = _support_rows(col_polys)
    vectors = [list(col) for col in zip(*rows)]  # columns as coordinate vectors
    ints = linalg._int_rows(vectors)
    _check_cap(len(ints), len(ints[0]), entry_cap)
    echelon, pivots = linalg.bareiss_echelon(ints, len(ints[0]))
    support_order = _support_rows(col_polys)[1]
    inv_support = {i: e for e, i in support_order.items()}
    basis_polys = []
    for r, _ in pivots:
        terms = {inv_support[j]: Fraction(v) for j, v in enumerate(echelon[r]) if v}
        basis_polys.append(normalize_unit(MultiPoly(source.ring, terms)))
    # intersect with Ker(D): nullspace of D restricted to that column space
    d_polys = [apply(D, p) for p in basis_polys]
    drows, _ = _support_rows(d_polys)
    _check_cap(max(len(drows), 1), len(basis_polys), entry_cap)
    intersection = []
    for combo in linalg.nullspace(drows, len(basis_polys)):
        p = source.ring.zero()
        for c, bp in zip(combo, basis_polys):
            if c:
                p = p + c * bp
        if not p.is_zero():
            intersection.append(normalize_unit(p))
    intersection.sort(key=lambda p: grlex_key(p.leading()[0]))
    return kernel, intersection


def ideal_membership_bounded(gens, h, cofactor_bound, entry_cap=DEFAULT_ENTRY_CAP):
    """('yes', cofactors) / ('no', remainder) / ('unknown', None).

    Principal ideals get a definitive answer by exact division; otherwise a
    bounded linear solve for cofactors yields a certificate or 'unknown'.
    """
    gens = list(gens)
    if not gens:
        raise PlinthError("membership in the ideal of no generators")
    if h.is_zero():
        return "yes", [g.ring.zero() for g in gens]
    if len(gens) == 1:
        try:
            q = divide_exact(h, gens[0])
            return "yes", [q]
        except ExactDivisionError as err:
            return "no", err.remainder
    ring = h.ring
    pb, vb = cofactor_bound
    cof_slice = slice_basis(ring, pb, vb)
    col_polys = []
    col_tags = []
    for gi, g in enumerate(gens):
        for e in cof_slice.basis:
            col_polys.append(MultiPoly(ring, {e: Fraction(1)}) * g)
            col_tags.append((gi, e))
    rows, support = _support_rows(col_polys, extra=[h])
    _check_cap(len(rows), len(col_polys), entry_cap)
    vectors = [list(col) for col in zip(*rows)]
    hvec = [Fraction(0)] * len(support)
    for e, c in h.terms.items():
        hvec[support[e]] = c
    x = linalg.solve_columns(vectors, hvec)
    if x is None:
        return "unknown", None
    cofactors = [ring.zero() for _ in gens]
    for coeff, (gi, e) in zip(x, col_tags):
        if coeff:
            cofactors[gi] = cofactors[gi] + MultiPoly(ring, {e: coeff})
    assert sum((c * g for c, g in zip(cofactors, gens)), ring.zero()) == h
    return "yes", cofactors


@dataclass
class DirectionItem:
    element: object
    status: str  # PASS / FAIL / INCONCLUSIVE
    detail: str = ""
    certificate: object = None


@dataclass
class VerifyReport:
    n: int
    forward_items: list
    backward_items: list
    notes: list = field(default_factory=list)

    @staticmethod
    def _verdict(items):
        if any(i.status == "FAIL" for i in items):
            return "FAIL"
        if any(i.status == "INCONCLUSIVE" for i in items):
            return "INCONCLUSIVE"
        return "PASS"

    @property
    def forward(self):
        return self._verdict(self.forward_items)

    @property
    def backward(self):
        return self._verdict(self.backward_items)

    @property
    def overall(self):
        order = {"FAIL": 2, "INCONCLUSIVE": 1, "PASS": 0}
        return max((self.forward, self.backward), key=order.get)

    def to_dict(self):
        def items(lst):
            return [
                {"element": str(i.element), "status": i.status, "detail": i.detail}
                for i in lst
            ]

        return {
            "n": self.n,
            "forward": self.forward,
            "backward": self.backward,
            "overall": self.overall,
            "forward_items": items(self.forward_items),
            "backward_items": items(self.backward_items),
            "notes": list(self.notes),
        }


def verify_image_ideal(D, j, predicted_gens, param_bound, var_bound,
                       entry_cap=DEFAULT_ENTRY_CAP):
    """Two-sided bounded check that (predicted_gens)A equals I_j.

    Forward: an explicit preimage under D^j proves each predicted generator
    lies in I_j.  Backward: every oracle basis vector of the bounded I_j
    approximation must be a combination of predicted generators with
    cofactors from the bounded kernel.
    """
    predicted = list(predicted_gens)
    ring = D.ring
    source = slice_basis(ring, param_bound, var_bound)
    forward_items = []
    mat = matrix_of_power(D, j, source, entry_cap)
    nonzero = [
        (vec_to_poly(mat.target, col), e)
        for col, e in zip(mat.columns, source.basis)
    ]
    nonzero = [(p, e) for p, e in nonzero if not p.is_zero()]
    col_vectors = []
    target_idx = mat.target.index()
    for p, _ in nonzero:
        vec = [Fraction(0)] * mat.target.dim
        for te, c in p.terms.items():
            vec[target_idx[te]] = c
        col_vectors.append(vec)
    _check_cap(mat.target.dim, max(len(col_vectors), 1), entry_cap)
    solver = linalg.SpanSolver(col_vectors, mat.target.dim) if col_vectors else None
    for g in predicted:
        if not apply(D, g).is_zero():
            forward_items.append(
                DirectionItem(g, "FAIL", "predicted generator is not in Ker(D)")
            )
            continue
        gvec = poly_to_vec(mat.target, g)
        if gvec is None or solver is None:
            forward_items.append(
                DirectionItem(g, "INCONCLUSIVE", "generator outside the slice window")
            )
            continue
        coeffs = solver.express(gvec)
        if coeffs is None:
            forward_items.append(
                DirectionItem(g, "INCONCLUSIVE", "no preimage within bounds")
            )
            continue
        preimage = ring.zero()
        for c, (_, e) in zip(coeffs, nonzero):
            if c:
                preimage = preimage + MultiPoly(ring, {e: c})
        assert iterate(D, preimage, j) == g
        forward_items.append(
            DirectionItem(g, "PASS", "preimage %s" % preimage, certificate=preimage)
        )

    kernel, intersection = kernel_and_image_basis(D, j, source, entry_cap)
    backward_items = []
    if len(predicted) == 1:
        g = predicted[0]
        for w in intersection:
            try:
                q = divide_exact(w, g)
                backward_items.append(
                    DirectionItem(w, "PASS", "cofactor %s" % q, certificate=q)
                )
            except ExactDivisionError:
                backward_items.append(
                    DirectionItem(
                        w, "FAIL", "%s is in I_%d but not in (%s)" % (w, j, g)
                    )
                )
    elif predicted:
        multipliers = []
        for g in predicted:
            for kappa in kernel:
                multipliers.append(g * kappa)
        rows, support = _support_rows(multipliers, extra=intersection)
        _check_cap(len(support), max(len(multipliers), 1), entry_cap)
        vectors = [list(col) for col in zip(*rows)] if rows else []
        msolver = linalg.SpanSolver(vectors, len(support)) if vectors else None
        for w in intersection:
            wvec = [Fraction(0)] * len(support)
            for e, c in w.terms.items():
                wvec[support[e]] = c
            coeffs = msolver.express(wvec) if msolver else None
            if coeffs is None:
                backward_items.append(
                    DirectionItem(w, "INCONCLUSIVE", "no bounded cofactors found")
                )
            else:
                backward_items.append(DirectionItem(w, "PASS", "bounded cofactors found"))
    else:
        for w in intersection:
            backward_items.append(
                DirectionItem(w, "INCONCLUSIVE", "no predicted generators to test")
            )
    notes = []
    if not intersection:
        notes.append("bounded I_%d approximation is zero at these bounds" % j)
    return VerifyReport(n=j, forward_items=forward_items, backward_items=backward_items,
                        notes=notes)
