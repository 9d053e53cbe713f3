"""Level-set noncommutative hypersurfaces and the induced geometric structures.

Given an ambient structure set and a central level function f, this module
builds the quotient presentation, the normal form nu = df, the tangential
projector, the three assumption certificates, and the induced metric,
connection, braiding, Clifford action, spin connection and Dirac operator.

Quotient classes are represented by projected representatives: a 1-form class
is stored as its image under the composed slot projector with coefficients in
the quotient presentation, which turns class equality into syntactic equality.
Iterated hypersurfaces reuse the machinery unchanged, with the previous
quotient as the ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, extend_presentation, is_central
from .geometry import Calculus, Connection, Metric
from .reports import Report
from .scalars import HALF, Scalar
from .spin import SpinStructure, StructureSet, dirac
from .tensors import BasisWord, LeftLinearMap, TensorElement, right_mul, tensor


class HypersurfaceError(ValueError):
    """Raised when the level-set data violates the hypersurface definition."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass
class AssumptionCertificate:
    """Verified-assumption record gating the induction operations."""

    nu_transparency: bool
    pi_transparency: bool
    nabla_nu_transparency: bool
    corollaries: bool
    residuals: dict

    @property
    def all_passed(self) -> bool:
        return (
            self.nu_transparency
            and self.pi_transparency
            and self.nabla_nu_transparency
            and self.corollaries
        )

    def to_report(self, subject: str) -> Report:
        report = Report(subject=subject)
        report.add("nu_transparency", self.nu_transparency, self.residuals.get("nu_transparency"))
        report.add("pi_transparency", self.pi_transparency, self.residuals.get("pi_transparency"))
        report.add(
            "nabla_nu_transparency",
            self.nabla_nu_transparency,
            self.residuals.get("nabla_nu_transparency"),
        )
        report.add("corollaries", self.corollaries, self.residuals.get("corollaries"))
        return report


class HypersurfaceSpec:
    """A built level-set hypersurface, ready for assumption checks and induction."""

    __slots__ = (
        "ambient",
        "f",
        "name",
        "quotient_presentation",
        "qcalc",
        "quotient_calculus",
        "nu",
        "nu_q",
        "nabla_nu",
        "nabla_nu_q",
        "pi",
        "sigma_q",
        "sigma_inv_q",
        "g_inv_q",
        "g_element_q",
        "gamma_q",
        "conn_q",
        "spin_conn_q",
        "certificate",
        "_induced",
    )

    def __init__(self, **fields):
        for name in self.__slots__:
            setattr(self, name, fields.get(name))

    def require_certificate(self):
        if self.certificate is None:
            raise HypersurfaceError(
                "certificate_missing",
                "run check_assumptions before inducing structures",
            )
        if not self.certificate.all_passed:
            raise HypersurfaceError(
                "certificate_failed",
                "assumption certificate has failing clauses; induction refused",
            )


def _pair_value(g_inv: LeftLinearMap, e: TensorElement) -> AlgebraElement:
    out = g_inv.apply(e)
    total = AlgebraElement.zero(e.presentation)
    for _, c in out.terms.items():
        total = total + c
    return total


def build_hypersurface(ambient: StructureSet, f: AlgebraElement, name: str = "") -> HypersurfaceSpec:
    """Construct the quotient data for the level-set hypersurface of f.

    Raises HypersurfaceError with kind "f_not_central", "nu_not_central" or
    "normalization" when the corresponding Definition clause fails.
    """
    p_amb = ambient.presentation
    if f.presentation != p_amb:
        raise ValueError("level function must live in the ambient presentation")
    if not is_central(f):
        raise HypersurfaceError("f_not_central", "level function is not central")

    quotient = extend_presentation(p_amb, f, name=name)

    nu = ambient.calculus.d(f)
    for j in range(p_amb.n):
        zj = AlgebraElement.generator(p_amb, j)
        residual = right_mul(nu, zj) - nu.left_mul(zj)
        if not residual.is_zero():
            raise HypersurfaceError("nu_not_central", f"nu*z{j + 1} != z{j + 1}*nu")

    norm = _pair_value(ambient.metric.g_inv, tensor(nu, nu)).convert(quotient)
    if not norm.is_one():
        raise HypersurfaceError(
            "normalization",
            f"[g^-1(nu (x) nu)] = {norm!r} != 1 in the quotient",
        )

    prev_proj = ambient.calculus.projector
    qcalc = Calculus(quotient, prev_proj.convert(quotient) if prev_proj else None)
    nu_q = nu.convert(quotient)
    g_inv_q = ambient.metric.g_inv.convert(quotient)
    g_element_q = ambient.metric.g_element.convert(quotient)
    sigma_q = ambient.connection.sigma.convert(quotient)
    sigma_inv_q = (
        ambient.connection.sigma_inv.convert(quotient)
        if ambient.connection.sigma_inv is not None
        else None
    )
    gamma_q = ambient.spin.gamma.convert(quotient)
    conn_q = Connection(
        qcalc,
        {w: v.convert(quotient) for w, v in ambient.connection.values.items()},
        sigma_q,
        sigma_inv_q,
    )
    spin_conn_q = Connection(
        qcalc,
        {w: v.convert(quotient) for w, v in ambient.spin.spin_connection.values.items()},
    )

    # tangential projector Pi(w) = w - g^-1(w (x) nu) nu on class representatives
    pi_images = {}
    for i in range(p_amb.n):
        free = TensorElement.basis(quotient, (i,))
        b = _pair_value(g_inv_q, tensor(free, nu_q))
        pi_images[BasisWord((i,), None)] = qcalc.canon(free) - nu_q.left_mul(b)
    pi = LeftLinearMap(quotient, (1, False), (1, False), pi_images)

    nabla_nu = ambient.connection.apply(nu)

    return HypersurfaceSpec(
        ambient=ambient,
        f=f,
        name=name or quotient.name,
        quotient_presentation=quotient,
        qcalc=qcalc,
        quotient_calculus=Calculus(quotient, pi),
        nu=nu,
        nu_q=nu_q,
        nabla_nu=nabla_nu,
        nabla_nu_q=nabla_nu.convert(quotient),
        pi=pi,
        sigma_q=sigma_q,
        sigma_inv_q=sigma_inv_q,
        g_inv_q=g_inv_q,
        g_element_q=g_element_q,
        gamma_q=gamma_q,
        conn_q=conn_q,
        spin_conn_q=spin_conn_q,
        certificate=None,
        _induced=None,
    )


def projector_apply(h: HypersurfaceSpec, e: TensorElement) -> TensorElement:
    """The tangential projector on quotient 1-form representatives."""
    if e.shape() != (1, False):
        raise ValueError("projector acts on 1-forms")
    if e.presentation == h.ambient.presentation:
        e = e.convert(h.quotient_presentation)
    return h.pi.apply(e)


def _gamma2(h: HypersurfaceSpec, e: TensorElement) -> TensorElement:
    """Two ambient Clifford contractions on a degree-2 spinor-valued element."""
    out = h.gamma_q.apply_at(e, e.degree - 1)
    return h.gamma_q.apply_at(out, out.degree - 1)


def check_assumptions(h: HypersurfaceSpec) -> AssumptionCertificate:
    """Verify the three induction assumptions and the lemma corollaries.

    Assumption 1 lives at the ambient level; assumptions 2 and 3 are checked
    on quotient-coefficient representatives, with the class projections the
    statements require.  Residuals are recorded verbatim.
    """
    amb = h.ambient
    p_amb = amb.presentation
    quotient = h.quotient_presentation
    residuals: dict[str, object] = {}

    # assumption 1: sigma(w (x) nu) = nu (x) w and sigma(nu (x) w) = w (x) nu
    sigma_amb = amb.connection.sigma
    acanon = amb.calculus.canon
    nu_ok = True
    for i in range(p_amb.n):
        base = amb.calculus.canon_basis_form(i)
        lhs1 = sigma_amb.apply(tensor(base, h.nu))
        res1 = acanon(lhs1) - acanon(tensor(h.nu, base))
        lhs2 = sigma_amb.apply(tensor(h.nu, base))
        res2 = acanon(lhs2) - acanon(tensor(base, h.nu))
        for res in (res1, res2):
            if not res.is_zero():
                nu_ok = False
                residuals.setdefault("nu_transparency", res.to_json())

    # assumption 2: sigma interchanges (Pi (x) id) and (id (x) Pi) on q_! (x) q_!
    pi_ok = True
    qbasis = [h.qcalc.canon(TensorElement.basis(quotient, (i,))) for i in range(p_amb.n)]
    for i in range(p_amb.n):
        for j in range(p_amb.n):
            x = tensor(qbasis[i], qbasis[j])
            res1 = h.sigma_q.apply(h.pi.apply_at(x, 0)) - h.pi.apply_at(h.sigma_q.apply(x), 1)
            res2 = h.sigma_q.apply(h.pi.apply_at(x, 1)) - h.pi.apply_at(h.sigma_q.apply(x), 0)
            for res in (res1, res2):
                if not res.is_zero():
                    pi_ok = False
                    residuals.setdefault("pi_transparency", res.to_json())

    # assumption 3: sigma_23 sigma_12 (Pi(w) (x) nabla(nu)) = nabla(nu) (x) Pi(w)
    def canon3(e: TensorElement) -> TensorElement:
        return h.pi.apply_at(h.qcalc.canon(e), 0)

    nabla_ok = True
    for i in range(p_amb.n):
        base = h.pi.apply(TensorElement.basis(quotient, (i,)))
        x = tensor(base, h.nabla_nu_q)
        lhs = h.sigma_q.apply_at(h.sigma_q.apply_at(x, 0), 1)
        res = canon3(lhs) - canon3(tensor(h.nabla_nu_q, base))
        if not res.is_zero():
            nabla_ok = False
            residuals.setdefault("nabla_nu_transparency", res.to_json())

    # lemma corollaries and centrality of nabla(nu)
    cor_ok = True
    for i in range(p_amb.n):
        base = h.pi.apply(TensorElement.basis(quotient, (i,)))
        c1 = _pair_value(h.g_inv_q, tensor(base, h.nu_q))
        c2 = _pair_value(h.g_inv_q, tensor(h.nu_q, base))
        for res in (c1, c2):
            if not res.is_zero():
                cor_ok = False
                residuals.setdefault("corollaries", res.to_json())
    # lemma item: [(id (x) g^-1)(nabla(nu) (x) nu)] vanishes as a quotient
    # 1-form class, so the residual is projected before testing
    c3 = h.g_inv_q.apply_at(tensor(h.nabla_nu_q, h.nu_q), 1)
    c3 = h.pi.apply_at(h.qcalc.canon(c3), 0)
    if not c3.is_zero():
        cor_ok = False
        residuals.setdefault("corollaries", c3.to_json())
    for j in range(p_amb.n):
        zj = AlgebraElement.generator(quotient, j)
        res = right_mul(h.nabla_nu_q, zj) - h.nabla_nu_q.left_mul(zj)
        if not res.is_zero():
            cor_ok = False
            residuals.setdefault("corollaries", res.to_json())

    cert = AssumptionCertificate(
        nu_transparency=nu_ok,
        pi_transparency=pi_ok,
        nabla_nu_transparency=nabla_ok,
        corollaries=cor_ok,
        residuals=residuals,
    )
    h.certificate = cert
    return cert


# ---------------------------------------------------------------------------
# induced structures
# ---------------------------------------------------------------------------


def induced_metric(h: HypersurfaceSpec) -> Metric:
    h.require_certificate()
    quotient = h.quotient_presentation
    qc = h.quotient_calculus
    g_element = qc.canon(h.g_element_q)
    images = {}
    for i in range(quotient.n):
        pi_i = h.pi.apply(TensorElement.basis(quotient, (i,)))
        for j in range(quotient.n):
            pi_j = h.pi.apply(TensorElement.basis(quotient, (j,)))
            value = _pair_value(h.g_inv_q, tensor(pi_i, pi_j))
            images[BasisWord((i, j), None)] = TensorElement.basis(
                quotient, (), None, value
            )
    g_inv = LeftLinearMap(quotient, (2, False), (0, False), images)
    return Metric(g_element, g_inv)


def induced_connection(h: HypersurfaceSpec) -> Connection:
    """Gauss formula: nabla_B(w) = [nabla(w) - g^-1(w (x) nu) nabla(nu)]."""
    h.require_certificate()
    quotient = h.quotient_presentation
    qc = h.quotient_calculus
    values = {}
    for i in range(quotient.n):
        free = TensorElement.basis(quotient, (i,))
        b = _pair_value(h.g_inv_q, tensor(free, h.nu_q))
        raw = h.conn_q.values[BasisWord((i,), None)] - h.nabla_nu_q.left_mul(b)
        values[BasisWord((i,), None)] = qc.canon(raw)
    # the braiding descends untouched; keeping the ambient single-word images
    # as the working representatives is exact (extensional maps are
    # class-correct at any representative) and much cheaper to apply
    return Connection(qc, values, h.sigma_q, h.sigma_inv_q)


def induced_spin(h: HypersurfaceSpec) -> SpinStructure:
    """Clifford action gamma_[2](Pi(w) (x) nu (x) s) and the spinorial Gauss formula."""
    h.require_certificate()
    quotient = h.quotient_presentation
    qc = h.quotient_calculus
    rank = h.ambient.spin.rank

    gamma_images = {}
    for i in range(quotient.n):
        pi_i = h.pi.apply(TensorElement.basis(quotient, (i,)))
        for alpha in range(rank):
            e_a = TensorElement.basis(quotient, (), alpha)
            t = tensor(tensor(pi_i, h.nu_q), e_a)
            gamma_images[BasisWord((i,), alpha)] = _gamma2(h, t)
    gamma = LeftLinearMap(quotient, (1, True), (0, True), gamma_images)

    spin_values = {}
    for alpha in range(rank):
        e_a = TensorElement.basis(quotient, (), alpha)
        base = h.spin_conn_q.values[BasisWord((), alpha)]
        t = tensor(tensor(h.nabla_nu_q, h.nu_q), e_a)
        correction = h.gamma_q.apply_at(h.gamma_q.apply_at(t, 2), 1).scale(HALF)
        spin_values[BasisWord((), alpha)] = qc.canon(base + correction)
    spin_connection = Connection(qc, spin_values)
    return SpinStructure(qc, rank, gamma, spin_connection, matrices=None)


def induced_structures(h: HypersurfaceSpec) -> StructureSet:
    if h._induced is None:
        h.require_certificate()
        h._induced = StructureSet(
            calculus=h.quotient_calculus,
            metric=induced_metric(h),
            connection=induced_connection(h),
            spin=induced_spin(h),
        )
    return h._induced


def induced_dirac(h: HypersurfaceSpec, spinor: TensorElement, via: str = "composite") -> TensorElement:
    """Induced Dirac operator, by the composite or the explicit closed formula.

    The two code paths are maintained independently and tested equal; the
    explicit path evaluates
    -1/2 (gamma_[2] - gamma_[2] (sigma (x) id))(nu (x) nabla^sp(s))
    + 1/2 gamma_[2]((Pi (x) id) nabla(nu) (x) s)
    on ambient-level data at quotient coefficients.
    """
    h.require_certificate()
    if spinor.presentation != h.quotient_presentation:
        spinor = spinor.convert(h.quotient_presentation)
    if via == "composite":
        structures = induced_structures(h)
        return dirac(structures.spin, spinor)
    if via != "explicit":
        raise ValueError("via must be 'composite' or 'explicit'")
    minus_half = Scalar.rational(-1) * HALF
    t = tensor(h.nu_q, h.spin_conn_q.apply(spinor))
    term1 = (_gamma2(h, t) - _gamma2(h, h.sigma_q.apply_at(t, 0))).scale(minus_half)
    projected = h.pi.apply_at(h.nabla_nu_q, 0)
    term2 = _gamma2(h, tensor(projected, spinor)).scale(HALF)
    return term1 + term2
