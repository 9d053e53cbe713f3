"""Spinorial layer: Clifford action, spin connections, Dirac operators, verifiers."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraElement, Presentation
from .geometry import Calculus, Connection, Metric, tensor_connection_apply
from .reports import Report
from .scalars import Scalar
from .tensors import BasisWord, LeftLinearMap, TensorElement, tensor

ScalarMatrix = tuple[tuple[Scalar, ...], ...]


def mat_mul(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    n = len(a)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            s = Scalar.zero()
            for k in range(n):
                s = s + a[r][k] * b[k][c]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_add(a: ScalarMatrix, b: ScalarMatrix) -> ScalarMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: ScalarMatrix, s: Scalar) -> ScalarMatrix:
    return tuple(tuple(x * s for x in row) for row in a)


def mat_is_zero(a: ScalarMatrix) -> bool:
    return all(x.is_zero() for row in a for x in row)


def mat_eq(a: ScalarMatrix, b: ScalarMatrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def identity_matrix(rank: int) -> ScalarMatrix:
    return tuple(
        tuple(Scalar.one() if r == c else Scalar.zero() for c in range(rank))
        for r in range(rank)
    )


class SpinStructure:
    """Spinor module data: Clifford map, spin connection, optional gamma matrices.

    The Clifford action is always stored as a left-linear map on dz_i (x)
    e_alpha; for the flat ambient space its images come from constant Scalar
    matrices (kept in `matrices` for bracket computations), while induced
    hypersurface actions have algebra-valued images and no matrix form.
    """

    __slots__ = ("calculus", "rank", "gamma", "spin_connection", "matrices")

    def __init__(
        self,
        calculus: Calculus,
        rank: int,
        gamma: LeftLinearMap,
        spin_connection: Connection,
        matrices: tuple[ScalarMatrix, ...] | None = None,
    ):
        if gamma.domain != (1, True) or gamma.codomain != (0, True):
            raise ValueError("gamma must map dz_i (x) e_alpha to spinors")
        self.calculus = calculus
        self.rank = rank
        self.gamma = gamma
        self.spin_connection = spin_connection
        self.matrices = matrices

    def spinor_basis(self) -> list[TensorElement]:
        p = self.calculus.presentation
        return [TensorElement.basis(p, (), alpha) for alpha in range(self.rank)]


def gamma_from_matrices(
    calculus: Calculus, matrices: tuple[ScalarMatrix, ...], rank: int
) -> LeftLinearMap:
    """Clifford map with gamma(dz_i (x) e_alpha) = column alpha of matrix i."""
    p = calculus.presentation
    images = {}
    for i in range(p.n):
        for alpha in range(rank):
            terms = {}
            for beta in range(rank):
                entry = matrices[i][beta][alpha]
                if not entry.is_zero():
                    terms[BasisWord((), beta)] = AlgebraElement.from_scalar(p, entry)
            images[BasisWord((i,), alpha)] = TensorElement(p, 0, True, terms)
    return LeftLinearMap(p, (1, True), (0, True), images)


def gamma_apply(spin: SpinStructure, e: TensorElement) -> TensorElement:
    """Contract the innermost form index: one application of gamma."""
    if e.degree < 1 or not e.has_spin:
        raise ValueError("gamma needs at least one form slot and a spinor slot")
    return spin.gamma.apply_at(e, e.degree - 1)


def gamma_iterated(spin: SpinStructure, e: TensorElement, n: int | None = None) -> TensorElement:
    """gamma_[n]: n-fold contraction (all the way to a spinor when n is None)."""
    steps = e.degree if n is None else n
    out = e
    for _ in range(steps):
        out = gamma_apply(spin, out)
    return out


def theta_brackets(spin: SpinStructure, i: int, j: int) -> tuple[ScalarMatrix, ScalarMatrix]:
    """(theta-anticommutator, theta-commutator) of gamma_i and gamma_j.

    {g_i, g_j}_theta = g_i g_j + R[j][i] g_j g_i, and the commutator with the
    minus sign; only available for constant-matrix Clifford actions.
    """
    if spin.matrices is None:
        raise ValueError("theta brackets need a constant-matrix Clifford action")
    p = spin.calculus.presentation
    gi, gj = spin.matrices[i], spin.matrices[j]
    phase = p.R[j][i]
    ij = mat_mul(gi, gj)
    ji = mat_scale(mat_mul(gj, gi), phase)
    return mat_add(ij, ji), mat_add(ij, mat_scale(ji, Scalar.rational(-1)))


def dirac(spin: SpinStructure, spinor: TensorElement) -> TensorElement:
    """D = gamma o nabla^sp on a degree-0 spinor element."""
    if spinor.degree != 0 or not spinor.has_spin:
        raise ValueError("Dirac operator acts on spinors")
    return gamma_apply(spin, spin.spin_connection.apply(spinor))


def verify_spinorial(
    spin: SpinStructure, metric: Metric, conn: Connection, calculus: Calculus | None = None
) -> Report:
    """Check the Clifford relations and Clifford compatibility exactly."""
    from .geometry import _run_clause_family

    calc = calculus or spin.calculus
    p = calc.presentation
    report = Report(subject=(p.name or "spinorial"))
    basis = [calc.canon_basis_form(i) for i in range(p.n)]
    spinors = spin.spinor_basis()

    def clifford_checks():
        for i in range(p.n):
            for j in range(p.n):
                pair = tensor(basis[i], basis[j])
                braided = conn.sigma.apply_at(pair, 0)
                g_val = metric.pair(pair)
                for alpha in range(spin.rank):
                    e_a = spinors[alpha]
                    lhs = gamma_iterated(spin, tensor(pair, e_a)) + gamma_iterated(
                        spin, tensor(braided, e_a)
                    )
                    rhs = e_a.left_mul(g_val).scale(Scalar.rational(-2))
                    yield (f"dz{i + 1},dz{j + 1},e{alpha + 1}", lhs - rhs)

    _run_clause_family(report, "clifford_relations", clifford_checks())

    def compatibility_checks():
        for i in range(p.n):
            for alpha in range(spin.rank):
                base = tensor(basis[i], spinors[alpha])
                lhs = spin.spin_connection.apply(gamma_apply(spin, base))
                big = tensor_connection_apply(conn, spin.spin_connection, base, canonical=False)
                rhs = spin.gamma.apply_at(big, 1)
                yield (f"dz{i + 1},e{alpha + 1}", lhs - calc.canon(rhs))

    _run_clause_family(report, "clifford_compatibility", compatibility_checks())
    return report


@dataclass
class StructureSet:
    """The bundled geometric data of one space."""

    calculus: Calculus
    metric: Metric
    connection: Connection
    spin: SpinStructure

    @property
    def presentation(self) -> Presentation:
        return self.calculus.presentation
