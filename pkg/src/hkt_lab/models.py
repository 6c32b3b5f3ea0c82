"""Finite exact models carrying a quaternionic frame.

Two backends, one code path:

* "flat": the translation-invariant frame on H^n = R^{4n} with polynomial
  coefficients up to a configurable total degree.  The exterior
  differential differentiates coefficients; everything stays inside the
  enumerated window because d lowers polynomial degree.
* "lie": left-invariant forms on a Lie algebra (constant coefficients).
  The differential comes from the structure constants; d o d = 0 on
  1-forms is literally the Jacobi identity and is checked at compile time.

A compiled ManifoldModel validates its frame (quaternion relations and
integrability of I, J, K) and its metric (symmetric positive definite)
eagerly.  Geometric health checks that perturbation tests are meant to
break (metric invariance, type purity of the canonical (2,0)-form, the
torsion detectors) are deliberately *not* validations; they live in
hkt_status() and report booleans.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from types import SimpleNamespace

from .basis import FormBasis
from .errors import StructureError, UsageError, ValidationError
from .forms import Form
from .frames import (QuaternionTriple, Sp1Action, derivation_extension,
                     holomorphic_coframe, multiplicative_extension,
                     multiplicative_images, apply_multiplicative_map,
                     covector_images, apply_derivation_map)
from .linalg import (identity_matrix, is_symmetric_positive_definite, mat_eq,
                     mat_mul, mat_transpose, mat_neg)
from .operators import GradedOperator
from .poly import Polynomial
from .scalars import HALF, I as IMAG, ONE, Scalar, ZERO


@dataclass
class ModelSpec:
    """Declarative description of a model, JSON round-trippable."""

    name: str
    backend: str  # "flat" | "lie"
    n: int
    frame: object = "standard"  # "standard" | {"I": rows, "J": rows[, "K": rows]}
    metric: object = "identity"  # "identity" | rows
    structure_constants: list = field(default_factory=list)  # lie only
    max_poly_degree: int = 0  # flat only

    @classmethod
    def from_dict(cls, data: dict) -> "ModelSpec":
        known = {"name", "backend", "n", "frame", "metric",
                 "structure_constants", "max_poly_degree"}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown model spec fields: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        out = {"name": self.name, "backend": self.backend, "n": self.n,
               "frame": self.frame, "metric": self.metric}
        if self.backend == "lie":
            out["structure_constants"] = self.structure_constants
        else:
            out["max_poly_degree"] = self.max_poly_degree
        return out


def load_builtin_spec(name: str) -> ModelSpec:
    """Load one of the packaged model fixtures by name."""
    ref = resources.files("hkt_lab").joinpath("fixtures").joinpath(f"{name}.json")
    try:
        raw = ref.read_text()
    except FileNotFoundError:
        raise UsageError(f"no builtin model named {name!r}") from None
    return ModelSpec.from_dict(json.loads(raw))


def builtin_model_names() -> list[str]:
    ref = resources.files("hkt_lab").joinpath("fixtures")
    return sorted(p.name[:-5] for p in ref.iterdir() if p.name.endswith(".json"))


class ManifoldModel:
    """Compiled model: frame, metric, coordinatized form spaces, operators."""

    def __init__(self, spec: ModelSpec):
        self.spec = spec
        if spec.backend not in ("flat", "lie"):
            raise UsageError(f"unknown backend {spec.backend!r}")
        self.n = spec.n
        self.dim = 4 * spec.n
        self.nvars = self.dim if spec.backend == "flat" else 0
        self.triple = self._build_triple()
        self.metric = self._build_metric()
        self._brackets = self._build_brackets() if spec.backend == "lie" else None
        self._spaces: dict[int, FormBasis] = {}
        self._d: dict[int, GradedOperator] = {}
        self._sp1: dict[int, Sp1Action] = {}
        self._mult: dict[tuple[int, str], GradedOperator] = {}
        self._dolbeault: dict[int, SimpleNamespace] = {}
        self._hodge = {}
        self._fundamental = None
        self._validate_jacobi()
        self._validate_integrability()

    # -- construction pieces ---------------------------------------------

    def _build_triple(self) -> QuaternionTriple:
        frame = self.spec.frame
        try:
            if frame == "standard":
                return QuaternionTriple.standard(self.n)
            return QuaternionTriple(frame["I"], frame["J"],
                                    frame.get("K") if isinstance(frame, dict) else None)
        except StructureError as e:
            raise ValidationError("frame", str(e)) from e

    def _build_metric(self):
        m = self.spec.metric
        if m == "identity":
            return identity_matrix(self.dim)
        g = [[Scalar.parse(x) for x in row] for row in m]
        if len(g) != self.dim or any(len(r) != self.dim for r in g):
            raise ValidationError("metric", "metric has wrong shape")
        if any(g[i][j] != g[j][i] for i in range(self.dim) for j in range(self.dim)):
            raise ValidationError("metric", "metric is not symmetric")
        if not is_symmetric_positive_definite(g):
            raise ValidationError("metric", "metric is not positive definite")
        return g

    def _build_brackets(self):
        """structure constants as {(i, j): {k: c}} for i < j, 0-based."""
        out: dict[tuple[int, int], dict[int, Scalar]] = {}
        for entry in self.spec.structure_constants:
            i, j, k = entry["i"] - 1, entry["j"] - 1, entry["k"] - 1
            c = Scalar.parse(entry["c"])
            if not (0 <= i < self.dim and 0 <= j < self.dim and 0 <= k < self.dim):
                raise ValidationError("structure", f"index out of range in {entry}")
            if i == j:
                raise ValidationError("structure", f"[e, e] must vanish: {entry}")
            if i > j:
                i, j, c = j, i, -c
            slot = out.setdefault((i, j), {})
            slot[k] = slot.get(k, ZERO) + c
        return out

    def _validate_jacobi(self):
        space = self.space(0 if self.backend == "flat" else None)
        d = self.exterior_d(space)
        dd = d.compose(d)
        if not dd.is_zero():
            kind = "jacobi" if self.backend == "lie" else "differential"
            raise ValidationError(kind, "d o d != 0", details=dd)

    def _validate_integrability(self):
        space = self.space(0)
        d = self.exterior_d(space)
        for name, L in self.triple.matrices().items():
            ad = derivation_extension(space, mat_transpose(L), f"ad_{name}")
            # (0,2)-projector at degree 2: A_L eigenvalue -2i there
            for eta in holomorphic_coframe(L, self.dim, self.nvars):
                deta = d.apply(eta)
                part = _adl_component(ad, deta, -2)
                if part:
                    raise ValidationError(
                        "integrability",
                        f"{name} is not integrable: d(eta) has a (0,2) part",
                        details=part)

    # -- spaces and cached operators -------------------------------------------

    @property
    def backend(self) -> str:
        return self.spec.backend

    def space(self, degree: int | None = None) -> FormBasis:
        """Coordinatized form space; degree caps polynomial degree (flat)."""
        if self.backend == "lie":
            degree = 0
        elif degree is None:
            degree = self.spec.max_poly_degree
        if degree not in self._spaces:
            self._spaces[degree] = FormBasis(self.dim, self.nvars, degree)
        return self._spaces[degree]

    def exterior_d(self, space: FormBasis | None = None) -> GradedOperator:
        space = space or self.space()
        key = space.max_poly_degree
        if key not in self._d:
            self._d[key] = GradedOperator.from_function(
                space, self.d_form, 1, "d")
        return self._d[key]

    def d_form(self, form: Form) -> Form:
        """Exterior differential as a function on forms (window-free)."""
        out = Form.zero(self.dim, self.nvars)
        if self.backend == "flat":
            for blade, p in form.items():
                for i in range(self.dim):
                    dp = p.diff(i)
                    if dp:
                        out = out + Form(self.dim, self.nvars,
                                         {(i,): dp}).wedge(
                                             Form(self.dim, self.nvars,
                                                  {blade: Polynomial.constant(
                                                      self.nvars, ONE)}))
            return out
        d1 = self._d_on_covectors()
        covs = [Form.covector(self.dim, 0, i) for i in range(self.dim)]
        for blade, p in form.items():
            for t in range(len(blade)):
                img = d1[blade[t]]
                if img.is_zero():
                    continue
                factors = [covs[i] for i in blade]
                factors[t] = img
                from .forms import wedge_all
                term = wedge_all(factors).scale_poly(p)
                if t % 2:
                    term = -term
                out = out + term
        return out

    def _d_on_covectors(self) -> list[Form]:
        if not hasattr(self, "_d1_cache"):
            imgs = []
            for k in range(self.dim):
                coeffs = {}
                for (i, j), slot in self._brackets.items():
                    c = slot.get(k)
                    if c:
                        coeffs[(i, j)] = Polynomial.constant(0, -c)
                imgs.append(Form(self.dim, 0, coeffs))
            self._d1_cache = imgs
        return self._d1_cache

    def sp1(self, space: FormBasis | None = None) -> Sp1Action:
        space = space or self.space()
        key = space.max_poly_degree
        if key not in self._sp1:
            self._sp1[key] = Sp1Action(space, self.triple)
        return self._sp1[key]

    def mult_operator(self, name: str, space: FormBasis | None = None) -> GradedOperator:
        """Multiplicative extension of I, J or K (or their inverses 'I-' etc)."""
        space = space or self.space()
        key = (space.max_poly_degree, name)
        if key not in self._mult:
            base = name.rstrip("-")
            mat = self.triple.matrices()[base]
            if name.endswith("-"):
                mat = mat_neg(mat)  # L^{-1} = -L
            self._mult[key] = multiplicative_extension(space, mat, f"mult_{name}")
        return self._mult[key]

    def dolbeault(self, space: FormBasis | None = None) -> SimpleNamespace:
        """partial, partial_bar, d_c and the J-twisted partial_J.

        d_c = I^{-1} d I (multiplicative extension); on an integrable
        structure d_c = i(partial - partial_bar), which turns the bigrade
        split of d into three operator compositions instead of projector
        sandwiches.
        """
        space = space or self.space()
        key = space.max_poly_degree
        if key not in self._dolbeault:
            d = self.exterior_d(space)
            mI = self.mult_operator("I", space)
            mIinv = self.mult_operator("I-", space)
            mJ = self.mult_operator("J", space)
            mJinv = self.mult_operator("J-", space)
            d_c = mIinv.compose(d).compose(mI)
            partial = (d - d_c.scale(IMAG)).scale(HALF)
            partial_bar = (d + d_c.scale(IMAG)).scale(HALF)
            partial_J = -(mJinv.compose(partial_bar).compose(mJ))
            ns = SimpleNamespace(d=d, d_c=d_c, partial=partial,
                                 partial_bar=partial_bar, partial_J=partial_J)
            self._dolbeault[key] = ns
        return self._dolbeault[key]

    def hodge(self, space: FormBasis | None = None):
        from .hodge import Hodge
        space = space or self.space()
        key = space.max_poly_degree
        if key not in self._hodge:
            self._hodge[key] = Hodge(self, space)
        return self._hodge[key]

    # -- fundamental forms -------------------------------------------------

    def fundamental_form(self, name: str) -> Form:
        """omega_X(u, v) = g(u, X v) as an exact 2-form."""
        X = self.triple.matrices()[name]
        W = mat_mul(self.metric, X)
        coeffs = {}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                c = W[a][b]
                if c:
                    coeffs[(a, b)] = Polynomial.constant(self.nvars, c)
        return Form(self.dim, self.nvars, coeffs)

    def fundamental_forms(self) -> SimpleNamespace:
        if self._fundamental is None:
            wI = self.fundamental_form("I")
            wJ = self.fundamental_form("J")
            wK = self.fundamental_form("K")
            Omega = (wJ + wK.scale(IMAG)).scale(HALF)
            self._fundamental = SimpleNamespace(
                omega_I=wI, omega_J=wJ, omega_K=wK,
                Omega=Omega, Omega_bar=Omega.conjugate())
        return self._fundamental

    def holo_coframe(self, name: str = "I") -> list[Form]:
        return holomorphic_coframe(self.triple.matrices()[name],
                                   self.dim, self.nvars)

    # -- geometric detectors ----------------------------------------------------

    def metric_invariance(self) -> dict[str, bool]:
        out = {}
        for name, L in self.triple.matrices().items():
            out[name] = mat_eq(mat_mul(mat_transpose(L), mat_mul(self.metric, L)),
                               self.metric)
        return out

    def hkt_status(self) -> dict:
        """All detector readings, exact booleans plus witnesses."""
        f = self.fundamental_forms()
        space = self.space(0)
        sp1 = self.sp1(space)
        dol = self.dolbeault(space)
        omega_pure = sp1.bigrade_component(f.Omega, 2, 0) == f.Omega
        d_omega = dol.d.apply(f.Omega)
        partial_omega = dol.partial.apply(f.Omega)
        invariance = self.metric_invariance()
        weight3 = {}
        dplus_I = None
        for name in ("I", "J", "K"):
            w = self.fundamental_form(name)
            dw = dol.d.apply(w)
            part = sp1.weight_component(dw, 3)
            weight3[name] = part.is_zero()
            if name == "I":
                dplus_I = sp1.plus_projector(3).apply(dw)
        is_hkt = omega_pure and partial_omega.is_zero()
        return {
            "metric_invariant": all(invariance.values()),
            "metric_invariance_by_structure": invariance,
            "omega_is_type_20": omega_pure,
            "partial_omega_zero": partial_omega.is_zero(),
            "weight3_part_of_domega_zero": weight3,
            "dplus_omega_I_zero": dplus_I.is_zero(),
            "is_hkt": is_hkt and all(invariance.values()),
            "is_hyperkahler": d_omega.is_zero() and all(invariance.values()),
        }

    def bismut_torsion(self) -> dict:
        """T_X = (multiplicative X)(d omega_X); HKT forces T_I = T_J = T_K."""
        space = self.space(0)
        dol = self.dolbeault(space)
        out = {}
        for name in ("I", "J", "K"):
            w = self.fundamental_form(name)
            dw = dol.d.apply(w)
            images = multiplicative_images(self.triple.matrices()[name],
                                           self.dim, self.nvars)
            out[name] = apply_multiplicative_map(dw, images)
        out["all_equal"] = out["I"] == out["J"] == out["K"]
        return out

    def structure_three_form(self) -> Form:
        """sigma with sigma(e_a, e_b, e_c) = g([e_a, e_b], e_c), a < b < c."""
        if self.backend != "lie":
            raise UsageError("structure 3-form needs the lie backend")
        coeffs = {}
        for (i, j), slot in self._brackets.items():
            for m in range(j + 1, self.dim):
                coeff = sum((c * self.metric[k][m] for k, c in slot.items()), ZERO)
                if coeff:
                    blade = (i, j, m)
                    prev = coeffs.get(blade, ZERO)
                    coeffs[blade] = prev + coeff
        return Form(self.dim, 0, {b: Polynomial.constant(0, c)
                                  for b, c in coeffs.items() if c})

    # -- Lee forms ----------------------------------------------------------------

    def lee_forms(self) -> SimpleNamespace:
        """theta (the (1,0) Lee form) and theta_J = J(conj theta).

        theta is the (1,0)-part of the transpose-I image of delta(omega_I),
        the codifferential of the fundamental form; on the flat and torus
        models it vanishes.
        """
        space = self.space()
        hodge = self.hodge(space)
        sp1 = self.sp1(space)
        w = self.fundamental_forms().omega_I
        delta_w = hodge.codifferential().apply(w)
        images = covector_images(mat_transpose(self.triple.I), self.dim, self.nvars)
        rotated = apply_derivation_map(delta_w, images)
        theta = sp1.bigrade_component(rotated, 1, 0)
        imagesJ = multiplicative_images(self.triple.J, self.dim, self.nvars)
        theta_J = apply_multiplicative_map(theta.conjugate(), imagesJ)
        return SimpleNamespace(theta=theta, theta_J=theta_J)

    # -- derived models ------------------------------------------------------------

    def with_metric(self, g_rows, name_suffix="-perturbed") -> "ManifoldModel":
        spec = ModelSpec(name=self.spec.name + name_suffix, backend=self.backend,
                         n=self.n, frame=self.spec.frame, metric=g_rows,
                         structure_constants=self.spec.structure_constants,
                         max_poly_degree=self.spec.max_poly_degree)
        return ManifoldModel(spec)

    def rotate_frame(self, rot) -> "ManifoldModel":
        """New model whose triple is rotated by an exact SO(3) matrix."""
        new = self.triple.rotate(rot)
        frame = {"I": [[c.to_json() for c in row] for row in new.I],
                 "J": [[c.to_json() for c in row] for row in new.J],
                 "K": [[c.to_json() for c in row] for row in new.K]}
        spec = ModelSpec(name=self.spec.name + "-rotated", backend=self.backend,
                         n=self.n, frame=frame, metric=self.spec.metric,
                         structure_constants=self.spec.structure_constants,
                         max_poly_degree=self.spec.max_poly_degree)
        return ManifoldModel(spec)


def _adl_component(ad: GradedOperator, form: Form, s: int) -> Form:
    """Component of a 2-form on which ad_L acts as s*i (Lagrange over -2,0,2)."""
    space = ad.space
    vec2 = form.degree_part(2)
    out = vec2
    for u in (-2, 0, 2):
        if u == s:
            continue
        lam, lam_t = Scalar(0, u), Scalar(0, s)
        out = (ad.apply(out) - out.scale(lam)).scale((lam_t - lam).inverse())
    return out


def load_model(name_or_spec) -> ManifoldModel:
    if isinstance(name_or_spec, ManifoldModel):
        return name_or_spec
    if isinstance(name_or_spec, ModelSpec):
        return ManifoldModel(name_or_spec)
    if isinstance(name_or_spec, dict):
        return ManifoldModel(ModelSpec.from_dict(name_or_spec))
    return ManifoldModel(load_builtin_spec(str(name_or_spec)))


# -- metric perturbations -------------------------------------------------------


def invariant_symmetric_basis(model: ManifoldModel) -> list[list[list[Scalar]]]:
    """Basis of the symmetric matrices commuting with the whole frame.

    Solves X^T S X = S exactly for X = I, J, K over symmetric S; every
    quaternion-Hermitian metric near the base one lives in the affine
    space spanned by this basis.
    """
    from .linalg import kernel_basis
    dim = model.dim
    unknowns = [(i, j) for i in range(dim) for j in range(i, dim)]
    uindex = {p: k for k, p in enumerate(unknowns)}

    cols: list[dict] = [{} for _ in unknowns]
    row_count = 0
    for X in model.triple.matrices().values():
        for a in range(dim):
            for b in range(a, dim):
                # (X^T S X - S)_ab = sum_{i,j} X_ia S_ij X_jb - S_ab
                row = row_count
                row_count += 1
                for i in range(dim):
                    if X[i][a].is_zero():
                        continue
                    for j in range(dim):
                        c = X[i][a] * X[j][b]
                        if c.is_zero():
                            continue
                        k = uindex[(i, j) if i <= j else (j, i)]
                        prev = cols[k].get(row, ZERO)
                        s = prev + c
                        if s.is_zero():
                            cols[k].pop(row, None)
                        else:
                            cols[k][row] = s
                k = uindex[(a, b)]
                prev = cols[k].get(row, ZERO)
                s = prev - ONE
                if s.is_zero():
                    cols[k].pop(row, None)
                else:
                    cols[k][row] = s

    out = []
    for vec in kernel_basis(cols, len(unknowns)):
        mat = [[ZERO] * dim for _ in range(dim)]
        for k, c in vec.items():
            i, j = unknowns[k]
            mat[i][j] = c
            mat[j][i] = c
        out.append(mat)
    return out


def _metric_rows(mat) -> list[list]:
    return [[c.to_json() for c in row] for row in mat]


def invariant_metric_perturbations(model: ManifoldModel, count: int,
                                   seed: int = 0) -> list[ManifoldModel]:
    """Seeded positive-definite frame-invariant perturbations of the metric."""
    import random
    from .scalars import rational
    rng = random.Random(seed)
    basis = invariant_symmetric_basis(model)
    if not basis:
        raise StructureError("no invariant symmetric matrices; frame is broken")
    out = []
    k = 0
    while len(out) < count:
        g = [row[:] for row in model.metric]
        nonzero = False
        for mat in basis:
            t = rational(rng.randint(-2, 2), 4 * rng.randint(1, 3))
            if t.is_zero():
                continue
            nonzero = True
            for i in range(model.dim):
                for j in range(model.dim):
                    g[i][j] = g[i][j] + t * mat[i][j]
        if not nonzero or not is_symmetric_positive_definite(g):
            continue
        m2 = model.with_metric(_metric_rows(g), f"-inv{k}")
        k += 1
        if not all(m2.metric_invariance().values()):
            raise StructureError("invariant perturbation failed invariance")
        out.append(m2)
    return out


def breaking_metric_perturbations(model: ManifoldModel, count: int,
                                  seed: int = 0) -> list[ManifoldModel]:
    """Seeded positive-definite perturbations that break frame invariance."""
    import random
    from .scalars import rational
    rng = random.Random(seed)
    out = []
    k = 0
    while len(out) < count:
        g = [row[:] for row in model.metric]
        for i in range(model.dim):
            for j in range(i, model.dim):
                t = rational(rng.randint(-1, 1), 8)
                g[i][j] = g[i][j] + t
                if i != j:
                    g[j][i] = g[j][i] + t
        if not is_symmetric_positive_definite(g):
            continue
        m2 = model.with_metric(_metric_rows(g), f"-brk{k}")
        k += 1
        if all(m2.metric_invariance().values()):
            continue    # landed in the invariant cone by accident
        out.append(m2)
    return out


def hkt_detector_routes(model: ManifoldModel) -> dict:
    """The three equivalent detections of the torsion-parallel condition.

    Each route is the conjunction of the hypothesis (invariant metric,
    canonical form of pure type) with one detector: the holomorphic
    differential of the canonical form vanishing, the top-weight parts
    of the three fundamental differentials vanishing, or the projected
    self-dual differential of the first fundamental form vanishing.
    """
    s = model.hkt_status()
    hyp = s["metric_invariant"] and s["omega_is_type_20"]
    routes = {
        "partial_omega": hyp and s["partial_omega_zero"],
        "weight_one": hyp and all(s["weight3_part_of_domega_zero"].values()),
        "d_plus": hyp and s["dplus_omega_I_zero"],
    }
    routes["agree"] = len({routes["partial_omega"], routes["weight_one"],
                           routes["d_plus"]}) == 1
    return routes
