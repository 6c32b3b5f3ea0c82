"""Twisted Dolbeault complex on (p,0)-forms and its harmonic theory.

The half-form twist is realized through the trivialization by the top
(2,0)-power: the torsion one-form theta is solved exactly from its
defining equation (the holomorphic differential of the conjugate top
power equals theta wedge it), the twisted differentials gain a
wedge-by-theta/2 term, and adjoints are exact matrix adjoints for the
induced inner product.  The module also hosts the differential-operator
order checks and the order-zero comparison of -[L_Omega, partial*]
against partial_J plus wedge-by-theta_J, which live on this complex.

Harmonic kernels are only meaningful on the invariant-forms backend:
a truncated polynomial window is not a compact model, and the kernel of
the truncated Laplacian does not split there, so harmonic routines
refuse flat models instead of reporting junk.
"""

from __future__ import annotations

from itertools import combinations
from types import SimpleNamespace

from .basis import SubspaceBasis, monomials_up_to
from .errors import DegeneracyError, IdentityError, StructureError
from .forms import Form
from .frames import apply_multiplicative_map, multiplicative_images
from .linalg import Echelon, mat_invert, rank_columns, solve_columns
from .operators import GradedOperator
from .poly import Polynomial
from .scalars import HALF, I as IMAG, ONE, Scalar, ZERO
from .superalgebra import close_and_extract, match_kdr, operator_order


def jc_map(model, form: Form) -> Form:
    """Conjugate-then-multiply-by-J map (antilinear)."""
    images = multiplicative_images(model.triple.J, model.dim, model.nvars)
    return apply_multiplicative_map(form.conjugate(), images)


def extract_theta(model) -> SimpleNamespace:
    """Torsion one-form of the canonical trivialization.

    Solves theta ^ Omega_bar^n = partial(Omega_bar^n) exactly over the
    (1,0)-coframe with polynomial coefficients, then verifies the two
    closure identities partial(theta) = 0 and
    partial(theta_J) + partial_J(theta) = 0.
    """
    n = model.n
    space = model.space()
    dol = model.dolbeault(space)
    ff = model.fundamental_forms()
    top_bar = ff.Omega_bar.wedge_power(n)
    if top_bar.is_zero():
        raise DegeneracyError("conjugate top power vanishes; form is degenerate")
    rhs = dol.partial.apply(top_bar)

    coframe = model.holo_coframe("I")
    monos = monomials_up_to(model.nvars, space.max_poly_degree)
    candidates = []
    for u in coframe:
        for m in monos:
            candidates.append(u.scale_poly(Polynomial.monomial(m)))
    cols = [space.to_coords(u.wedge(top_bar)) for u in candidates]
    if rank_columns(cols) != len(cols):
        raise DegeneracyError("wedge with the conjugate top power is not injective")
    sol = solve_columns(cols, space.to_coords(rhs))
    if sol is None:
        raise DegeneracyError("defining equation for theta has no solution")
    theta = Form.zero(model.dim, model.nvars)
    for i, c in sol.items():
        theta = theta + candidates[i].scale(c)

    theta_bar = theta.conjugate()
    theta_j = apply_multiplicative_map(theta_bar,
                                       multiplicative_images(model.triple.J,
                                                             model.dim, model.nvars))
    r1 = dol.partial.apply(theta)
    if not r1.is_zero():
        raise IdentityError(f"theta is not closed for the holomorphic differential: {r1}")
    r2 = dol.partial.apply(theta_j) + dol.partial_J.apply(theta)
    if not r2.is_zero():
        raise IdentityError(f"mixed closure identity for theta fails: {r2}")
    return SimpleNamespace(theta=theta, theta_bar=theta_bar, theta_j=theta_j)


def _wedge_or_zero(basis, form: Form, shift: int = 1) -> GradedOperator:
    # wedge_by cannot infer a degree from the zero form
    if form.is_zero():
        return GradedOperator.zero(basis, shift)
    return GradedOperator.wedge_by(basis, form)


class SpinorComplex:
    """The (p,0)-subcomplex with plain and twisted differentials.

    Carries the restricted Dolbeault pair, the Lefschetz triple of the
    canonical (2,0)-form, the twisted differentials (plain plus half the
    torsion form), their adjoints and the twisted Laplacian.
    """

    def __init__(self, model, check: bool = True):
        self.model = model
        self.n = model.n
        self.ambient = model.space()
        self.coframe = model.holo_coframe("I")
        spanning = []
        monos = monomials_up_to(model.nvars, self.ambient.max_poly_degree)
        for p in range(2 * self.n + 1):
            for subset in combinations(range(2 * self.n), p):
                blade = Form.scalar(model.dim, model.nvars, ONE)
                for i in subset:
                    blade = blade.wedge(self.coframe[i])
                for m in monos:
                    spanning.append(blade.scale_poly(Polynomial.monomial(m)))
        self.basis = SubspaceBasis(self.ambient, spanning)

        dol = model.dolbeault(self.ambient)
        self.partial = dol.partial.restrict(self.basis)
        self.partial.name = "partial"
        self.partial_j = dol.partial_J.restrict(self.basis)
        self.partial_j.name = "partial_J"

        td = extract_theta(model)
        self.theta = td.theta
        self.theta_bar = td.theta_bar
        self.theta_j = td.theta_j

        ff = model.fundamental_forms()
        self.omega = ff.Omega
        self.lef_L = GradedOperator.wedge_by(self.basis, self.omega, name="L_Omega")

        self.npartial = self.partial + _wedge_or_zero(self.basis, self.theta.scale(HALF))
        self.npartial.name = "n_partial"
        self.npartial_j = self.partial_j + _wedge_or_zero(self.basis,
                                                          self.theta_j.scale(HALF))
        self.npartial_j.name = "n_partial_J"

        if model.backend == "flat":
            # constant-metric flat models have zero torsion form; the formal
            # polynomial adjoints come from the star-conjugation route
            if not (self.theta.is_zero() and self.theta_j.is_zero()):
                raise StructureError("flat backend expects a vanishing torsion form")
            hodge = model.hodge(self.ambient)
            amb_L = GradedOperator.wedge_by(self.ambient, self.omega)
            self.lef_Lam = hodge.hermitian_adjoint(amb_L).restrict(self.basis)
            self.partial_star = hodge.dolbeault_codifferential("partial").restrict(self.basis)
            self.npartial_star = self.partial_star
            self.npartial_j_star = hodge.dolbeault_codifferential("partial_J").restrict(self.basis)
        else:
            self.lef_Lam = self.adjoint(self.lef_L)
            self.partial_star = self.adjoint(self.partial)
            self.npartial_star = self.adjoint(self.npartial)
            self.npartial_j_star = self.adjoint(self.npartial_j)
        self.lef_Lam.name = "Lam_Omega"
        self.partial_star.name = "partial*"
        self.npartial_star.name = "n_partial*"
        self.npartial_j_star.name = "n_partial_J*"

        self.lef_H = self.lef_L.supercommutator(self.lef_Lam)
        self.lef_H.name = "H_Omega"
        self.laplacian = self.npartial.supercommutator(self.npartial_star)
        self.laplacian.name = "n_Delta"

        if check:
            self._check_complex()

    # -- structure ----------------------------------------------------------

    @property
    def dims_by_degree(self) -> list[int]:
        return [len(self.basis.indices_of_degree(p)) for p in range(2 * self.n + 1)]

    def unit(self) -> Form:
        return Form.scalar(self.model.dim, self.model.nvars, ONE)

    def _gram(self):
        if not hasattr(self, "_gram_t"):
            hodge = self.model.hodge(self.ambient)
            forms = [self.basis.element_form(i) for i in range(self.basis.size)]
            g = [[hodge.hermitian_inner(x, y) for y in forms] for x in forms]
            self._gram_t = [[g[j][i] for j in range(len(forms))] for i in range(len(forms))]
            self._gram_t_inv = mat_invert(self._gram_t)
        return self._gram_t, self._gram_t_inv

    def adjoint(self, op: GradedOperator) -> GradedOperator:
        """Adjoint for the invariant inner product: (G^T)^-1 A^H G^T."""
        gt, gti = self._gram()
        size = self.basis.size

        def col(mat, j):
            return {i: mat[i][j] for i in range(size) if not mat[i][j].is_zero()}

        gt_op = GradedOperator(self.basis, 0, [col(gt, j) for j in range(size)])
        gti_op = GradedOperator(self.basis, 0, [col(gti, j) for j in range(size)])
        return gti_op.compose(op.conj_transpose()).compose(gt_op)

    def inner(self, x: Form, y: Form) -> Scalar:
        return self.model.hodge(self.ambient).hermitian_inner(x, y)

    def _check_complex(self):
        for nm, op in (("twisted differential", self.npartial),
                       ("twisted J-differential", self.npartial_j)):
            if not op.compose(op).is_zero():
                raise IdentityError(f"{nm} does not square to zero")
        if not self.npartial.supercommutator(self.npartial_j).is_zero():
            raise IdentityError("twisted differentials do not anticommute")
        if self.model.backend == "lie":
            if not self.adjoint(self.laplacian).equals(self.laplacian):
                raise IdentityError("twisted Laplacian is not self-adjoint")

    def jc(self, form: Form) -> Form:
        return jc_map(self.model, form)

    # -- the eight-dimensional closure ---------------------------------------

    def kdr_realization(self) -> dict:
        """Kodaira-relation report for (L, Lam, H, twisted pair)."""
        return match_kdr(self.lef_L, self.lef_Lam, self.lef_H,
                         self.npartial, self.npartial_j)

    def kdr_closure(self, cap: int = 64):
        """Bracket closure of the five generators (zero inputs dropped)."""
        ops = {"L": self.lef_L, "Lam": self.lef_Lam, "H": self.lef_H,
               "nd": self.npartial, "nd_J": self.npartial_j}
        live = {k: v for k, v in ops.items() if not v.is_zero()}
        return close_and_extract(live, cap=cap)


# ---------------------------------------------------------------------------
# Harmonic theory (invariant backend only)


def harmonic_spinors(sc: SpinorComplex) -> SimpleNamespace:
    """Exact kernel of the twisted Laplacian per degree, cross-checked.

    Dimensions are recomputed through rank-nullity of the twisted
    complex, and every kernel element is verified to lie in the kernels
    of both the twisted differential and its adjoint.
    """
    if sc.model.backend != "lie":
        raise StructureError("harmonic kernels require the invariant-forms backend")
    n2 = 2 * sc.n
    reps, dims = [], []
    for p in range(n2 + 1):
        kern = sc.laplacian.kernel_in_degree(p)
        for k in kern:
            if not sc.npartial.apply(k).is_zero():
                raise IdentityError("Laplacian kernel escapes the differential kernel")
            if not sc.npartial_star.apply(k).is_zero():
                raise IdentityError("Laplacian kernel escapes the adjoint kernel")
        reps.append(kern)
        dims.append(len(kern))
    for p in range(n2 + 1):
        dim_p = len(sc.basis.indices_of_degree(p))
        rank_p = sc.npartial.rank_in_degree(p)
        rank_prev = sc.npartial.rank_in_degree(p - 1) if p > 0 else 0
        if dims[p] != dim_p - rank_p - rank_prev:
            raise IdentityError(
                f"harmonic dimension in degree {p} disagrees with rank-nullity")
    euler_h = sum((-1) ** p * dims[p] for p in range(n2 + 1))
    euler_c = sum((-1) ** p * len(sc.basis.indices_of_degree(p)) for p in range(n2 + 1))
    if euler_h != euler_c:
        raise IdentityError("alternating sums of harmonic and chain dimensions differ")
    return SimpleNamespace(dims=tuple(dims), representatives=reps)


def lefschetz_action(sc: SpinorComplex, hs=None) -> dict:
    """sl(2) commutation with the twisted Laplacian and hard Lefschetz.

    Checks that the Lefschetz triple and the antilinear conjugate-J map
    commute with the twisted Laplacian, then verifies that the (n-i)-th
    power of wedge-by-Omega maps degree-i harmonics isomorphically onto
    degree-(2n-i) harmonics for every i <= n.
    """
    if hs is None:
        hs = harmonic_spinors(sc)
    out = {
        "commute_L": sc.lef_L.supercommutator(sc.laplacian).is_zero(),
        "commute_Lam": sc.lef_Lam.supercommutator(sc.laplacian).is_zero(),
        "commute_H": sc.lef_H.supercommutator(sc.laplacian).is_zero(),
    }
    jc_ok = True
    for i in range(sc.basis.size):
        b = sc.basis.element_form(i)
        if not (sc.laplacian.apply(sc.jc(b)) - sc.jc(sc.laplacian.apply(b))).is_zero():
            jc_ok = False
            break
    out["commute_jc"] = jc_ok

    maps = {}
    n = sc.n
    for i in range(n + 1):
        source, target = hs.representatives[i], hs.representatives[2 * n - i]
        ech = Echelon()
        for t, rep in enumerate(target):
            ech.add(sc.basis.to_coords(rep), t)
        cols, escaped = [], False
        for rep in source:
            img = rep
            for _ in range(n - i):
                img = sc.omega.wedge(img)
            coords = ech.coordinates(sc.basis.to_coords(img))
            if coords is None:
                escaped = True
                break
            cols.append(coords)
        rank = 0 if escaped else rank_columns(cols)
        maps[i] = {
            "source_dim": len(source),
            "target_dim": len(target),
            "rank": rank,
            "iso": (not escaped and rank == len(source) == len(target)),
        }
    out["maps"] = maps
    out["all_iso"] = all(m["iso"] for m in maps.values())
    return out


def serre_pairing_matrix(sc: SpinorComplex, hs, i: int):
    """Pairing on degree-i harmonics valued in the top-power coordinate.

    The value on (u, v) is the coefficient of the n-th power of the
    canonical (2,0)-form in L^{n-i}(u ^ jc(v)); requires the top
    harmonic space to be one-dimensional so the coordinate is defined.
    """
    n = sc.n
    reps = hs.representatives[i]
    if not reps:
        return []
    if len(hs.representatives[2 * n]) != 1:
        raise DegeneracyError("top harmonic space is not one-dimensional")
    gen = sc.omega.wedge_power(n)
    ech = Echelon()
    ech.add(sc.basis.to_coords(gen), 0)
    rows = []
    for u in reps:
        row = []
        for v in reps:
            w = u.wedge(sc.jc(v))
            for _ in range(n - i):
                w = sc.omega.wedge(w)
            coords = ech.coordinates(sc.basis.to_coords(w))
            if coords is None:
                raise DegeneracyError(
                    "pairing value is not a multiple of the top-power generator")
            row.append(coords.get(0, ZERO))
        rows.append(row)
    return rows


def serre_pairing_rank(sc: SpinorComplex, hs, i: int) -> int:
    rows = serre_pairing_matrix(sc, hs, i)
    cols = [{r: rows[r][c] for r in range(len(rows)) if not rows[r][c].is_zero()}
            for c in range(len(rows))]
    return rank_columns(cols)


# ---------------------------------------------------------------------------
# Order theorems on the subcomplex


def delta_j_report(model) -> dict:
    """Compare -[L_Omega, partial*] with partial_J + wedge-by-theta_J.

    The difference h is asserted to be a multiplication operator (order
    zero over the form algebra, as a matrix identity on the whole
    complex) and to equal wedge-by-theta_J exactly; on models with a
    vanishing torsion form h is zero.
    """
    sc = SpinorComplex(model)
    delta_star_j = -(sc.lef_L.supercommutator(sc.partial_star))
    h = delta_star_j - sc.partial_j
    value = h.apply(sc.unit())
    order_zero = h.equals(GradedOperator.wedge_by(sc.basis, value))
    matches = order_zero and (value - sc.theta_j).is_zero()
    return {
        "order_zero": order_zero,
        "matches_theta_j": matches,
        "difference_is_zero": h.is_zero(),
        "value": value,
        "theta_j": sc.theta_j,
        "complex": sc,
    }


class _CachedLinearOp:
    """Linear extension of a function from cached values on basis elements."""

    def __init__(self, fn, space):
        self.fn = fn
        self.space = space
        self.cols: dict[int, Form] = {}

    def __call__(self, form: Form) -> Form:
        coords = self.space.to_coords(form)
        out = Form.zero(form.dim, form.nvars)
        for i, c in coords.items():
            if i not in self.cols:
                self.cols[i] = self.fn(self.space.element_form(i))
            out = out + self.cols[i].scale(c)
        return out


def spinor_order_report(model, bound: int = 3) -> dict:
    """Differential order of partial* and of its coframe brackets.

    On invariant complexes the certification runs over the whole finite
    space.  On the flat backend the adjoint is evaluated functionally in
    an enlarged polynomial window: probes cover the (p,0)-algebra with
    monomials of degree <= 2 and generators include the coordinate
    functions, so up to `bound` multiplications stay inside the window.
    """
    if model.backend == "lie":
        sc = SpinorComplex(model)
        pstar = sc.partial_star
        gens = [(f"cof{k}", c) for k, c in enumerate(sc.coframe)]
        probes = [sc.basis.element_form(i) for i in range(sc.basis.size)]
        unit = sc.unit()
        order = operator_order(pstar.apply, pstar.parity, gens, probes, unit,
                               bound=bound)
        brackets = {}
        for name, g in gens:
            wl = GradedOperator.wedge_by(sc.basis, g)
            br = wl.supercommutator(pstar)
            brackets[name] = operator_order(br.apply, br.parity, gens, probes,
                                            unit, bound=bound)
        return {"order": order, "bracket_orders": brackets}

    window = model.space(2 + bound)
    hodge = model.hodge(window)
    im_i = multiplicative_images(model.triple.I, model.dim, model.nvars)
    im_i_inv = multiplicative_images([[-c for c in row] for row in model.triple.I],
                                     model.dim, model.nvars)

    def d_c(x):
        return apply_multiplicative_map(
            model.d_form(apply_multiplicative_map(x, im_i)), im_i_inv)

    def partial_fn(x):
        return (model.d_form(x) - d_c(x).scale(IMAG)).scale(HALF)

    def raw_pstar(x):
        return -hodge.star_apply(partial_fn(hodge.star_apply(x).conjugate()).conjugate())

    pstar = _CachedLinearOp(raw_pstar, window)

    coframe = model.holo_coframe("I")
    unit = Form.scalar(model.dim, model.nvars, ONE)
    gens = [(f"x{k}", unit.scale_poly(Polynomial.variable(model.nvars, k)))
            for k in range(model.nvars)]
    gens += [(f"cof{k}", c) for k, c in enumerate(coframe)]

    probes = []
    monos = monomials_up_to(model.nvars, 2)
    for p in range(2 * model.n + 1):
        for subset in combinations(range(2 * model.n), p):
            blade = unit
            for i in subset:
                blade = blade.wedge(coframe[i])
            for m in monos:
                probes.append(blade.scale_poly(Polynomial.monomial(m)))

    order = operator_order(pstar, 1, gens, probes, unit, bound=bound)
    brackets = {}
    for name, g in gens:
        pg = (g.homogeneous_degree() or 0) % 2
        sgn = -ONE if pg else ONE

        def br(x, g=g, sgn=sgn):
            return g.wedge(pstar(x)) - pstar(g.wedge(x)).scale(sgn)

        brackets[name] = operator_order(br, 1 + pg, gens, probes, unit, bound=bound)
    return {"order": order, "bracket_orders": brackets}
