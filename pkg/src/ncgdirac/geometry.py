"""Riemannian layer: calculi, bimodule connections, metrics, and their verifiers.

A Calculus fixes the home of 1-forms for one space.  For an ambient space the
form module is free; for a hypersurface quotient it is the image of a slot
projector inside the free module, and canonical representatives are obtained
by reducing coefficients and projecting every form slot.  Equality of quotient
classes is equality of canonical representatives.
"""

from __future__ import annotations

from .algebra import AlgebraElement, Presentation
from .reports import Report
from .tensors import (
    BasisWord,
    LeftLinearMap,
    TensorElement,
    all_basis_words,
    check_right_linearity,
    differential,
    right_mul,
    tensor,
)


class Calculus:
    """First-order differential calculus over a presented algebra.

    projector=None means the free module itself (ambient space); otherwise the
    projector's extensional images define the canonical embedding of quotient
    1-forms into the free module, applied to every form slot by canon().
    """

    __slots__ = ("presentation", "projector")

    def __init__(self, presentation: Presentation, projector: LeftLinearMap | None = None):
        self.presentation = presentation
        if projector is not None:
            if projector.domain != (1, False) or projector.codomain != (1, False):
                raise ValueError("projector must map 1-forms to 1-forms")
        self.projector = projector

    def canon(self, e: TensorElement) -> TensorElement:
        """Canonical representative: project every form slot (spinor untouched)."""
        if self.projector is None:
            return e
        out = e
        for slot in range(e.degree):
            out = self.projector.apply_at(out, slot)
        return out

    def d(self, a: AlgebraElement) -> TensorElement:
        return self.canon(differential(a))

    def one_form_basis(self) -> list[TensorElement]:
        p = self.presentation
        return [TensorElement.basis(p, (i,)) for i in range(p.n)]

    def canon_basis_form(self, i: int) -> TensorElement:
        """Canonical representative of the class of dz_i."""
        return self.canon(TensorElement.basis(self.presentation, (i,)))


class Connection:
    """Connection on a free-basis module, with optional braiding (bimodule case).

    Stored extensionally on basis words (dz_i for form connections, e_alpha for
    spin connections) and extended by the left Leibniz rule.
    """

    __slots__ = ("calculus", "values", "sigma", "sigma_inv")

    def __init__(
        self,
        calculus: Calculus,
        values: dict[BasisWord, TensorElement],
        sigma: LeftLinearMap | None = None,
        sigma_inv: LeftLinearMap | None = None,
    ):
        self.calculus = calculus
        self.values = dict(values)
        self.sigma = sigma
        self.sigma_inv = sigma_inv

    def apply(self, e: TensorElement, canonical: bool = True) -> TensorElement:
        """Left Leibniz extension: nabla(c*w) = c*nabla(w) + d(c) (x) w.

        canonical=False returns an unprojected class representative, which is
        enough when the result feeds another extensional (class-correct) map.
        """
        calc = self.calculus
        p = calc.presentation
        sample = next(iter(self.values.values()))
        out = TensorElement.zero(p, sample.degree, sample.has_spin)
        for w, c in e.terms.items():
            value = self.values.get(w)
            if value is None:
                raise KeyError(f"connection has no value for basis word {w}")
            out = out + value.left_mul(c)
            dc = differential(c)
            if not dc.is_zero():
                out = out + tensor(dc, TensorElement.basis(p, w.forms, w.spin))
        return calc.canon(out) if canonical else out


class Metric:
    """Generalized metric: central element g(1) plus extensional inverse pairing."""

    __slots__ = ("g_element", "g_inv")

    def __init__(self, g_element: TensorElement, g_inv: LeftLinearMap):
        if g_element.shape() != (2, False):
            raise ValueError("g(1) must be a degree-2 form element")
        if g_inv.domain != (2, False) or g_inv.codomain != (0, False):
            raise ValueError("inverse metric must pair two 1-forms to the algebra")
        self.g_element = g_element
        self.g_inv = g_inv

    def pair(self, e: TensorElement) -> AlgebraElement:
        """Evaluate g^{-1} on a degree-2 element, returning the algebra value."""
        out = self.g_inv.apply(e)
        p = e.presentation
        total = AlgebraElement.zero(p)
        for w, c in out.terms.items():
            total = total + c
        return total


def tensor_connection_apply(
    conn_v: Connection, conn_e: Connection, e: TensorElement, canonical: bool = True
) -> TensorElement:
    """Tensor-product connection on Omega^1 (x) E applied to an element.

    nabla(x)(v (x) s) = nabla(v) (x) s + (sigma (x) id)(v (x) nabla(s)), plus
    the Leibniz term for the left coefficients.
    """
    if conn_v.sigma is None:
        raise ValueError("left factor connection must carry a braiding")
    calc = conn_v.calculus
    p = calc.presentation
    out_degree = e.degree + 1
    out = TensorElement.zero(p, out_degree, e.has_spin)
    for w, c in e.terms.items():
        i = w.forms[0]
        rest = BasisWord(w.forms[1:], w.spin)
        rest_elem = TensorElement.basis(p, rest.forms, rest.spin)
        # nabla_V on the first slot
        term1 = tensor(conn_v.values[BasisWord((i,), None)], rest_elem)
        # braid dz_i past nabla_E of the remainder
        inner = conn_e.apply(rest_elem, canonical=False)
        term2 = conn_v.sigma.apply_at(tensor(TensorElement.basis(p, (i,)), inner), 0)
        out = out + (term1 + term2).left_mul(c)
        dc = differential(c)
        if not dc.is_zero():
            out = out + tensor(dc, TensorElement.basis(p, w.forms, w.spin))
    return calc.canon(out) if canonical else out


def _run_clause_family(report: Report, name: str, checks):
    """Record one passing clause for the family, or each failing instance."""
    failures = [(label, residual) for label, residual in checks if not residual.is_zero()]
    if not failures:
        report.add(name, True)
    for label, residual in failures:
        report.add(f"{name}[{label}]", False, residual.to_json())


def verify_metric(metric: Metric, conn: Connection, calculus: Calculus | None = None) -> Report:
    """Check every Riemannian-structure clause exactly, on generating elements.

    All maps involved are left-linear or Leibniz over generating sets, so
    these finite checks witness the full clauses.
    """
    calc = calculus or conn.calculus
    p = calc.presentation
    report = Report(subject=p.name or "metric")
    g1 = calc.canon(metric.g_element)
    basis = [calc.canon_basis_form(i) for i in range(p.n)]

    def gen(j):
        return AlgebraElement.generator(p, j)

    _run_clause_family(
        report,
        "g_central",
        ((f"z{j + 1}", right_mul(g1, gen(j)) - g1.left_mul(gen(j))) for j in range(p.n)),
    )
    _run_clause_family(
        report,
        "inverse_left",
        (
            (f"dz{i + 1}", calc.canon(metric.g_inv.apply_at(tensor(basis[i], g1), 0)) - basis[i])
            for i in range(p.n)
        ),
    )
    _run_clause_family(
        report,
        "inverse_right",
        (
            (f"dz{i + 1}", calc.canon(metric.g_inv.apply_at(tensor(g1, basis[i]), 1)) - basis[i])
            for i in range(p.n)
        ),
    )

    def symmetry_checks():
        for i in range(p.n):
            for j in range(p.n):
                pair = tensor(basis[i], basis[j])
                yield (
                    f"dz{i + 1},dz{j + 1}",
                    metric.pair(conn.sigma.apply(pair)) - metric.pair(pair),
                )

    _run_clause_family(report, "symmetry", symmetry_checks())

    def compatibility_checks():
        for i in range(p.n):
            for j in range(p.n):
                pair = tensor(basis[i], basis[j])
                raw = tensor_connection_apply(conn, conn, pair, canonical=False)
                lhs = metric.g_inv.apply_at(raw, 1)
                yield (
                    f"dz{i + 1},dz{j + 1}",
                    calc.canon(lhs) - calc.d(metric.pair(pair)),
                )

    _run_clause_family(report, "metric_compatibility", compatibility_checks())

    report.add("sigma_right_linear", check_right_linearity(conn.sigma))
    if conn.sigma_inv is not None:

        def inverse_checks():
            for w in all_basis_words(p, 2):
                base = TensorElement.basis(p, w.forms)
                got = conn.sigma_inv.apply(conn.sigma.apply(base))
                yield (repr(w), calc.canon(got) - calc.canon(base))

        _run_clause_family(report, "sigma_invertible", inverse_checks())

    def leibniz_checks():
        for i in range(p.n):
            for j in range(p.n):
                zj = gen(j)
                lhs = conn.apply(right_mul(basis[i], zj))
                rhs = right_mul(conn.apply(basis[i]), zj) + conn.sigma.apply(
                    tensor(basis[i], calc.d(zj))
                )
                yield (f"dz{i + 1},z{j + 1}", lhs - calc.canon(rhs))

    _run_clause_family(report, "right_leibniz", leibniz_checks())
    return report
