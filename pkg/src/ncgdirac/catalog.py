"""Built-in catalog: the flat embedding space, the 3-sphere, and the 2-torus.

build_r4 assembles the deformed flat space from its defining data; build_s3
and build_t2 run the hypersurface induction and then compare every induced
structure against its hard-coded closed form, aborting on any mismatch.  The
closed forms are pinned once, independently of the machinery that must
reproduce them, and act as the acceptance oracle for the induction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, Presentation, normal_form
from .geometry import Calculus, Connection, Metric, verify_metric
from .hypersurface import (
    HypersurfaceSpec,
    build_hypersurface,
    check_assumptions,
    induced_dirac,
    induced_structures,
)
from .reports import Report
from .scalars import HALF, Scalar
from .spin import (
    ScalarMatrix,
    SpinStructure,
    StructureSet,
    gamma_from_matrices,
    mat_add,
    mat_mul,
    mat_scale,
    verify_spinorial,
)
from .tensors import BasisWord, LeftLinearMap, TensorElement, tensor

N_GEN = 4
SPINOR_RANK = 4

# q-exponents of the R-matrix, R[i][j] = q**R_EXP[i][j] with q**4 = exp(i*theta)
R_EXP = (
    (0, -4, 0, 4),
    (4, 0, -4, 0),
    (0, 4, 0, -4),
    (-4, 0, 4, 0),
)

_G_PATTERN = ((0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0))
_H_PATTERN = ((0, 0, 1, 0), (0, 0, 0, -1), (1, 0, 0, 0), (0, -1, 0, 0))


def metric_lower(i: int, j: int) -> Fraction:
    return Fraction(_G_PATTERN[i][j], 2)


def metric_upper(i: int, j: int) -> Fraction:
    return Fraction(2 * _G_PATTERN[i][j])


def h_lower(i: int, j: int) -> Fraction:
    return Fraction(_H_PATTERN[i][j], 2)


def gamma_theta_matrices(classical: bool = False) -> tuple[ScalarMatrix, ...]:
    """The four deformed gamma matrices (classical=True sets q = 1)."""

    def q(k: int, c: int) -> Scalar:
        return Scalar.q_power(0 if classical else k, c)

    z = Scalar.zero()
    g1 = (
        (z, z, z, q(1, -2)),
        (z, z, z, z),
        (z, q(-1, 2), z, z),
        (z, z, z, z),
    )
    g2 = (
        (z, z, q(-1, -2), z),
        (z, z, z, z),
        (z, z, z, z),
        (z, q(1, -2), z, z),
    )
    g3 = (
        (z, z, z, z),
        (z, z, q(1, -2), z),
        (z, z, z, z),
        (q(-1, 2), z, z, z),
    )
    g4 = (
        (z, z, z, z),
        (z, z, z, q(-1, 2)),
        (q(1, 2), z, z, z),
        (z, z, z, z),
    )
    return (g1, g2, g3, g4)


def r4_presentation(classical: bool = False, name: str = "r4") -> Presentation:
    R = tuple(
        tuple(Scalar.q_power(0 if classical else R_EXP[i][j]) for j in range(N_GEN))
        for i in range(N_GEN)
    )
    return Presentation(N_GEN, R, (), name=name)


class GoldenMismatch(RuntimeError):
    """An induced structure differs from its pinned closed form."""

    def __init__(self, label: str, residual):
        super().__init__(f"golden comparison failed: {label}")
        self.label = label
        self.residual = residual


@dataclass
class SpaceBundle:
    """One catalog space: presentation, structures, and its hypersurface link."""

    name: str
    structures: StructureSet
    hypersurface: HypersurfaceSpec | None = None
    base_matrices: tuple[ScalarMatrix, ...] | None = None

    @property
    def presentation(self) -> Presentation:
        return self.structures.presentation

    @property
    def calculus(self) -> Calculus:
        return self.structures.calculus


def build_r4(classical: bool = False) -> SpaceBundle:
    """The flat quasi-commutative embedding space with its spinorial structure."""
    p = r4_presentation(classical)
    calc = Calculus(p, None)

    g_terms = {}
    for i in range(N_GEN):
        for j in range(N_GEN):
            v = metric_lower(i, j)
            if v:
                g_terms[BasisWord((i, j), None)] = AlgebraElement.from_scalar(
                    p, Scalar.rational(v)
                )
    g_element = TensorElement(p, 2, False, g_terms)
    g_inv_images = {
        BasisWord((i, j), None): TensorElement.basis(
            p, (), None, AlgebraElement.from_scalar(p, Scalar.rational(metric_upper(i, j)))
        )
        for i in range(N_GEN)
        for j in range(N_GEN)
    }
    metric = Metric(g_element, LeftLinearMap(p, (2, False), (0, False), g_inv_images))

    sigma_images = {
        BasisWord((i, j), None): TensorElement.basis(
            p, (j, i), None, AlgebraElement.from_scalar(p, p.R[j][i])
        )
        for i in range(N_GEN)
        for j in range(N_GEN)
    }
    sigma = LeftLinearMap(p, (2, False), (2, False), sigma_images)
    conn_values = {
        BasisWord((i,), None): TensorElement.zero(p, 2, False) for i in range(N_GEN)
    }
    connection = Connection(calc, conn_values, sigma, sigma.inverse_permutation())

    matrices = gamma_theta_matrices(classical)
    gamma = gamma_from_matrices(calc, matrices, SPINOR_RANK)
    spin_values = {
        BasisWord((), alpha): TensorElement.zero(p, 1, True) for alpha in range(SPINOR_RANK)
    }
    spin = SpinStructure(calc, SPINOR_RANK, gamma, Connection(calc, spin_values), matrices)

    structures = StructureSet(calculus=calc, metric=metric, connection=connection, spin=spin)
    return SpaceBundle("r4", structures, None, matrices)


def undeformed_spin_structure(bundle: SpaceBundle) -> SpinStructure:
    """Classical gamma matrices over the deformed calculus (negative control)."""
    calc = bundle.calculus
    matrices = gamma_theta_matrices(classical=True)
    gamma = gamma_from_matrices(calc, matrices, SPINOR_RANK)
    return SpinStructure(
        calc, SPINOR_RANK, gamma, bundle.structures.spin.spin_connection, matrices
    )


def sphere_level_function(p: Presentation) -> AlgebraElement:
    """f = (1/2)(sum_ij g_ij z_i z_j - 1), the unit sphere level function."""
    f = AlgebraElement.from_scalar(p, -HALF)
    for i in range(N_GEN):
        for j in range(N_GEN):
            v = metric_lower(i, j)
            if v:
                f = f + normal_form([i, j], Scalar.rational(v * Fraction(1, 2)), p)
    return f


def torus_level_function(p: Presentation) -> AlgebraElement:
    """f~ = (1/2) sum_ij h_ij z_i z_j, cutting the torus out of the sphere."""
    f = AlgebraElement.zero(p)
    for i in range(N_GEN):
        for j in range(N_GEN):
            v = h_lower(i, j)
            if v:
                f = f + normal_form([i, j], Scalar.rational(v * Fraction(1, 2)), p)
    return f


# ---------------------------------------------------------------------------
# golden closed forms
# ---------------------------------------------------------------------------


def _z(p: Presentation, i: int) -> AlgebraElement:
    return AlgebraElement.generator(p, i)


def _scalar_combination(p: Presentation, pairs) -> AlgebraElement:
    total = AlgebraElement.zero(p)
    for elem, scalar in pairs:
        total = total + elem.scale(scalar)
    return total


def _matrix_spinor(p: Presentation, matrix: ScalarMatrix, alpha: int, coeff: AlgebraElement) -> TensorElement:
    """coeff * (matrix acting on e_alpha) as a spinor element."""
    terms = {}
    for beta in range(SPINOR_RANK):
        entry = matrix[beta][alpha]
        if not entry.is_zero():
            terms[BasisWord((), beta)] = coeff.scale(entry)
    return TensorElement(p, 0, True, terms)


def _matrix_one_form(
    p: Presentation, i: int, matrix: ScalarMatrix, alpha: int, coeff: AlgebraElement
) -> TensorElement:
    """coeff * dz_i (x) (matrix e_alpha) with the coefficient already on the left."""
    terms = {}
    for beta in range(SPINOR_RANK):
        entry = matrix[beta][alpha]
        if not entry.is_zero():
            terms[BasisWord((i,), beta)] = coeff.scale(entry)
    return TensorElement(p, 1, True, terms)


def _expect(label: str, got, want):
    residual = got - want
    if not residual.is_zero():
        raise GoldenMismatch(label, residual.to_json())


def _golden_s3(h: HypersurfaceSpec, structures: StructureSet, matrices) -> None:
    p = h.quotient_presentation
    qc = h.quotient_calculus
    gam = matrices

    free = [TensorElement.basis(p, (i,)) for i in range(N_GEN)]
    zs = [_z(p, i) for i in range(N_GEN)]

    # sigma_B(dz_i (x) dz_j) = R^{ji} dz_j (x) dz_i
    for i in range(N_GEN):
        for j in range(N_GEN):
            want = qc.canon(tensor(free[j], free[i]).scale(p.R[j][i]))
            got = structures.connection.sigma.apply(tensor(free[i], free[j]))
            _expect(f"sigma_B[dz{i + 1},dz{j + 1}]", qc.canon(got), want)

    # g_B = sum g_ij dz_i (x) dz_j
    g_want = TensorElement.zero(p, 2, False)
    for i in range(N_GEN):
        for j in range(N_GEN):
            v = metric_lower(i, j)
            if v:
                g_want = g_want + tensor(free[i], free[j]).scale(Scalar.rational(v))
    _expect("g_B", qc.canon(structures.metric.g_element), qc.canon(g_want))

    # g_B^-1(dz_i (x) dz_j) = g^{ij} - z_i z_j
    for i in range(N_GEN):
        for j in range(N_GEN):
            want = AlgebraElement.from_scalar(p, Scalar.rational(metric_upper(i, j))) - zs[i] * zs[j]
            got = structures.metric.pair(tensor(free[i], free[j]))
            _expect(f"g_B_inv[dz{i + 1},dz{j + 1}]", got, want)

    # nabla_B(dz_i) = -z_i sum g_kl dz_k (x) dz_l
    for i in range(N_GEN):
        want = qc.canon(g_want.left_mul(zs[i]).scale(Scalar.rational(-1)))
        _expect(f"nabla_B[dz{i + 1}]", structures.connection.values[BasisWord((i,), None)], want)

    # gamma_B(dz_i (x) e_a) = -(sum g_kl z_k gamma_l gamma_i + z_i) e_a
    for i in range(N_GEN):
        for alpha in range(SPINOR_RANK):
            want = TensorElement.basis(p, (), alpha, zs[i]).scale(Scalar.rational(-1))
            for k in range(N_GEN):
                for l in range(N_GEN):
                    v = metric_lower(k, l)
                    if v:
                        want = want + _matrix_spinor(
                            p, mat_mul(gam[l], gam[i]), alpha, zs[k].scale(Scalar.rational(-v))
                        )
            got = structures.spin.gamma.images[BasisWord((i,), alpha)]
            _expect(f"gamma_B[dz{i + 1},e{alpha + 1}]", got, want)

    # nabla^sp_B(e_a) = 1/2 sum g_ij g_kl z_k dz_i (x) gamma_j gamma_l e_a
    for alpha in range(SPINOR_RANK):
        want = TensorElement.zero(p, 1, True)
        for i in range(N_GEN):
            for j in range(N_GEN):
                gij = metric_lower(i, j)
                if not gij:
                    continue
                for k in range(N_GEN):
                    for l in range(N_GEN):
                        gkl = metric_lower(k, l)
                        if not gkl:
                            continue
                        want = want + _matrix_one_form(
                            p,
                            i,
                            mat_mul(gam[j], gam[l]),
                            alpha,
                            zs[k].scale(Scalar.rational(gij * gkl * Fraction(1, 2))),
                        )
        got = structures.spin.spin_connection.values[BasisWord((), alpha)]
        _expect(f"nabla_sp_B[e{alpha + 1}]", got, qc.canon(want))

    # D_B(e_a) = -(3/2) e_a
    for alpha in range(SPINOR_RANK):
        e_a = TensorElement.basis(p, (), alpha)
        want = e_a.scale(Scalar.rational(Fraction(-3, 2)))
        _expect(f"D_B[e{alpha + 1}]", induced_dirac(h, e_a), want)


def _golden_t2(h: HypersurfaceSpec, structures: StructureSet, matrices) -> None:
    p = h.quotient_presentation
    qc = h.quotient_calculus
    gam = matrices
    free = [TensorElement.basis(p, (i,)) for i in range(N_GEN)]
    zs = [_z(p, i) for i in range(N_GEN)]

    def sign(i: int) -> int:
        # (-1)^i for 1-based generator numbering
        return -1 if (i + 1) % 2 else 1

    # projector: Pi~(dz_i) = dz_i + (-1)^i z_i nu~
    for i in range(N_GEN):
        want = h.qcalc.canon(free[i]) + h.nu_q.left_mul(zs[i].scale(Scalar.rational(sign(i))))
        got = h.pi.images[BasisWord((i,), None)]
        _expect(f"pi_T2[dz{i + 1}]", got, want)

    # g_C^-1(dz_i (x) dz_j) = g^{ij} - (1 + (-1)^i (-1)^j) z_i z_j
    for i in range(N_GEN):
        for j in range(N_GEN):
            factor = 1 + sign(i) * sign(j)
            want = AlgebraElement.from_scalar(p, Scalar.rational(metric_upper(i, j)))
            if factor:
                want = want - (zs[i] * zs[j]).scale(Scalar.rational(factor))
            got = structures.metric.pair(tensor(free[i], free[j]))
            _expect(f"g_C_inv[dz{i + 1},dz{j + 1}]", got, want)

    # g_C = sum g_ij dz_i (x) dz_j
    g_want = TensorElement.zero(p, 2, False)
    for i in range(N_GEN):
        for j in range(N_GEN):
            v = metric_lower(i, j)
            if v:
                g_want = g_want + tensor(free[i], free[j]).scale(Scalar.rational(v))
    _expect("g_C", qc.canon(structures.metric.g_element), qc.canon(g_want))

    # sigma_C(dz_i (x) dz_j) = R^{ji} dz_j (x) dz_i
    for i in range(N_GEN):
        for j in range(N_GEN):
            want = qc.canon(tensor(free[j], free[i]).scale(p.R[j][i]))
            got = structures.connection.sigma.apply(tensor(free[i], free[j]))
            _expect(f"sigma_C[dz{i + 1},dz{j + 1}]", qc.canon(got), want)

    # nabla_C(dz_i) = -z_i sum (g_kl - (-1)^i h_kl) dz_k (x) dz_l
    for i in range(N_GEN):
        want = TensorElement.zero(p, 2, False)
        for k in range(N_GEN):
            for l in range(N_GEN):
                v = metric_lower(k, l) - sign(i) * h_lower(k, l)
                if v:
                    want = want + tensor(free[k], free[l]).scale(Scalar.rational(-v))
        want = qc.canon(want.left_mul(zs[i]))
        _expect(f"nabla_C[dz{i + 1}]", structures.connection.values[BasisWord((i,), None)], want)

    # gamma_C(dz_i (x) e_a) = (z_i sum g_mn z_m h_kl z_k g_l g_n
    #                          - sum h_kl z_k g_l g_i + (-1)^i z_i) e_a
    for i in range(N_GEN):
        for alpha in range(SPINOR_RANK):
            want = TensorElement.basis(p, (), alpha, zs[i].scale(Scalar.rational(sign(i))))
            for k in range(N_GEN):
                for l in range(N_GEN):
                    hkl = h_lower(k, l)
                    if not hkl:
                        continue
                    want = want + _matrix_spinor(
                        p, mat_mul(gam[l], gam[i]), alpha, zs[k].scale(Scalar.rational(-hkl))
                    )
                    for m in range(N_GEN):
                        for n in range(N_GEN):
                            gmn = metric_lower(m, n)
                            if not gmn:
                                continue
                            coeff = (zs[i] * zs[m] * zs[k]).scale(Scalar.rational(gmn * hkl))
                            want = want + _matrix_spinor(p, mat_mul(gam[l], gam[n]), alpha, coeff)
            got = structures.spin.gamma.images[BasisWord((i,), alpha)]
            _expect(f"gamma_C[dz{i + 1},e{alpha + 1}]", got, want)

    # nabla^sp_C(e_a) = 1/2 sum (g_kl z_k g_ij + h_kl z_k h_ij) dz_i (x) g_j g_l e_a
    for alpha in range(SPINOR_RANK):
        want = TensorElement.zero(p, 1, True)
        for i in range(N_GEN):
            for j in range(N_GEN):
                for k in range(N_GEN):
                    for l in range(N_GEN):
                        v = metric_lower(i, j) * metric_lower(k, l) + h_lower(i, j) * h_lower(k, l)
                        if not v:
                            continue
                        want = want + _matrix_one_form(
                            p,
                            i,
                            mat_mul(gam[j], gam[l]),
                            alpha,
                            zs[k].scale(Scalar.rational(v * Fraction(1, 2))),
                        )
        got = structures.spin.spin_connection.values[BasisWord((), alpha)]
        _expect(f"nabla_sp_C[e{alpha + 1}]", got, qc.canon(want))

    # composite and explicit Dirac paths agree on basis spinors
    for alpha in range(SPINOR_RANK):
        e_a = TensorElement.basis(p, (), alpha)
        _expect(
            f"D_C_paths[e{alpha + 1}]",
            induced_dirac(h, e_a, via="composite"),
            induced_dirac(h, e_a, via="explicit"),
        )


def _verified_bundle(name, h, matrices, check) -> SpaceBundle:
    structures = induced_structures(h)
    if check:
        mr = verify_metric(structures.metric, structures.connection, structures.calculus)
        sr = verify_spinorial(
            structures.spin, structures.metric, structures.connection, structures.calculus
        )
        for report in (mr, sr):
            if not report.all_passed:
                failing = ", ".join(c.name for c in report.failures())
                raise GoldenMismatch(f"{name} verification: {failing}", report.to_json())
    return SpaceBundle(name, structures, h, matrices)


def build_s3(check: bool = True) -> SpaceBundle:
    """Induce the sphere structures and compare them with their closed forms."""
    r4 = build_r4()
    f = sphere_level_function(r4.presentation)
    h = build_hypersurface(r4.structures, f, name="s3")
    cert = check_assumptions(h)
    if not cert.all_passed:
        raise GoldenMismatch("s3 assumption certificate", cert.residuals)
    bundle = _verified_bundle("s3", h, r4.base_matrices, check)
    _golden_s3(h, bundle.structures, r4.base_matrices)
    return bundle


def build_t2(check: bool = True) -> SpaceBundle:
    """Iterate the induction: the torus as a hypersurface of the sphere."""
    s3 = build_s3(check=check)
    f = torus_level_function(s3.presentation)
    h = build_hypersurface(s3.structures, f, name="t2")
    cert = check_assumptions(h)
    if not cert.all_passed:
        raise GoldenMismatch("t2 assumption certificate", cert.residuals)
    bundle = _verified_bundle("t2", h, s3.base_matrices, check)
    _golden_t2(h, bundle.structures, s3.base_matrices)
    return bundle


def build_space(name: str, check: bool = True) -> SpaceBundle:
    builders = {"r4": lambda: build_r4(), "s3": lambda: build_s3(check), "t2": lambda: build_t2(check)}
    if name not in builders:
        raise KeyError(f"unknown catalog space {name!r} (expected r4, s3 or t2)")
    return builders[name]()


# ---------------------------------------------------------------------------
# torus extras: phi-basis and the rotated Dirac operator
# ---------------------------------------------------------------------------


def phi_basis(t2: SpaceBundle) -> tuple[TensorElement, TensorElement]:
    """Central basis 1-forms of the torus calculus, in z-coordinates.

    dphi_1 = (1/i) ubar du = (2/i) z3 dz1 and dphi_2 = (2/i) z4 dz2; the
    sqrt(2) rescaling of the torus generators cancels and never enters.
    """
    p = t2.presentation
    minus_2i = Scalar.gaussian(0, -2)
    dphi1 = TensorElement.basis(p, (0,), None, _z(p, 2).scale(minus_2i))
    dphi2 = TensorElement.basis(p, (1,), None, _z(p, 3).scale(minus_2i))
    return dphi1, dphi2


def _matrix_act(matrix: ScalarMatrix, s: TensorElement) -> TensorElement:
    p = s.presentation
    terms: dict[BasisWord, AlgebraElement] = {}
    for w, c in s.terms.items():
        for alpha in range(SPINOR_RANK):
            entry = matrix[alpha][w.spin]
            if entry.is_zero():
                continue
            key = BasisWord(w.forms, alpha)
            add = c.scale(entry)
            prev = terms.get(key)
            add = add if prev is None else prev + add
            if add.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = add
    return TensorElement(p, s.degree, True, terms)


def _spinor_right_mul(s: TensorElement, a: AlgebraElement) -> TensorElement:
    from .tensors import right_mul

    return right_mul(s, a)


def phi_momentum_derivative(s: TensorElement, which: int) -> TensorElement:
    """d/dphi_which on torus spinors via the momentum grading of monomials."""
    p = s.presentation
    lo, hi = (0, 2) if which == 1 else (1, 3)
    terms = {}
    for w, c in s.terms.items():
        new = AlgebraElement.zero(p)
        for mono, scal in c.terms.items():
            momentum = mono[lo] - mono[hi]
            if momentum:
                new = new + AlgebraElement(
                    p, {mono: scal * Scalar.gaussian(0, momentum)}
                )
        if not new.is_zero():
            terms[w] = new
    return TensorElement(p, s.degree, s.has_spin, terms)


def gamma_tilde(t2: SpaceBundle, which: int, s: TensorElement) -> TensorElement:
    """The phi-basis Clifford action on torus spinors.

    gamma~(dphi_1 (x) s) = (1/i)(gamma_1 s zbar_1 - gamma_3 s z_1), and the
    (dphi_2, gamma_2, gamma_4, z_2) analogue.
    """
    p = t2.presentation
    gam = t2.base_matrices
    minus_i = Scalar.gaussian(0, -1)
    if which == 1:
        a, b, z, zbar = gam[0], gam[2], _z(p, 0), _z(p, 2)
    else:
        a, b, z, zbar = gam[1], gam[3], _z(p, 1), _z(p, 3)
    out = _matrix_act(a, _spinor_right_mul(s, zbar)) - _matrix_act(b, _spinor_right_mul(s, z))
    return out.scale(minus_i)


def _flat_gamma_map(t2: SpaceBundle) -> "LeftLinearMap":
    """The constant-matrix Clifford action of the embedding space, over C.

    The rotated operator and its square contract against the flat gamma
    matrices acting on representatives, not against the induced sphere action.
    """
    calc = Calculus(t2.presentation, None)
    return gamma_from_matrices(calc, t2.base_matrices, SPINOR_RANK)


def _mass_matrix(t2: SpaceBundle, which: int) -> ScalarMatrix:
    """(1/(8i)) [gamma_1, gamma_3]_theta, resp. [gamma_2, gamma_4]_theta."""
    gam = t2.base_matrices
    p = t2.presentation
    i, j = (0, 2) if which == 1 else (1, 3)
    ij = mat_mul(gam[i], gam[j])
    ji = mat_scale(mat_mul(gam[j], gam[i]), p.R[j][i])
    comm = mat_add(ij, mat_scale(ji, Scalar.rational(-1)))
    return mat_scale(comm, Scalar.gaussian(0, Fraction(-1, 8)))


def dtilde_apply(t2: SpaceBundle, s: TensorElement, via: str = "definition") -> TensorElement:
    """The rotated torus Dirac operator D~ = gamma(nu~ (x) D_C(-)).

    The definition path composes the induced Dirac operator with one ambient
    Clifford contraction against nu~; the expanded path is the phi-basis form
    gamma~(dphi_a (x) (d/dphi_a + mass_a)) summed over the two directions.
    """
    if s.degree != 0 or not s.has_spin:
        raise ValueError("operator acts on torus spinors")
    if s.presentation != t2.presentation:
        s = s.convert(t2.presentation)
    h = t2.hypersurface
    if via == "definition":
        ds = induced_dirac(h, s, via="composite")
        t = tensor(h.nu_q, ds)
        return _flat_gamma_map(t2).apply_at(t, 0)
    if via != "expanded":
        raise ValueError("via must be 'definition' or 'expanded'")
    out = TensorElement.zero(t2.presentation, 0, True)
    for which in (1, 2):
        inner = phi_momentum_derivative(s, which) + _matrix_act(_mass_matrix(t2, which), s)
        out = out + gamma_tilde(t2, which, inner)
    return out


def gamma_nu_tilde(t2: SpaceBundle, s: TensorElement) -> TensorElement:
    """One flat Clifford contraction against the torus normal form."""
    h = t2.hypersurface
    if s.presentation != t2.presentation:
        s = s.convert(t2.presentation)
    return _flat_gamma_map(t2).apply_at(tensor(h.nu_q, s), 0)


def verify_space(bundle: SpaceBundle) -> Report:
    """Aggregate verification report for one catalog space."""
    structures = bundle.structures
    report = Report(subject=bundle.name)
    mr = verify_metric(structures.metric, structures.connection, structures.calculus)
    sr = verify_spinorial(
        structures.spin, structures.metric, structures.connection, structures.calculus
    )
    for sub in (mr, sr):
        report.clauses.extend(sub.clauses)
    if bundle.hypersurface is not None and bundle.hypersurface.certificate is not None:
        report.clauses.extend(
            bundle.hypersurface.certificate.to_report(bundle.name).clauses
        )
    return report
