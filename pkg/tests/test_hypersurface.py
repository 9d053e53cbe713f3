import random

import pytest

from ncgdirac.algebra import AlgebraElement, normal_form
from ncgdirac.catalog import (
    build_r4,
    metric_lower,
    sphere_level_function,
)
from ncgdirac.geometry import Connection, verify_metric
from ncgdirac.hypersurface import (
    HypersurfaceError,
    build_hypersurface,
    check_assumptions,
    induced_connection,
    induced_dirac,
    induced_metric,
    projector_apply,
)
from ncgdirac.scalars import Scalar
from ncgdirac.spin import verify_spinorial
from ncgdirac.tensors import BasisWord, LeftLinearMap, TensorElement, right_mul, tensor


def dz(p, *indices):
    return TensorElement.basis(p, tuple(indices))


def z(p, i):
    return AlgebraElement.generator(p, i)


# -- construction and validation ----------------------------------------------

def test_sphere_spec_has_expected_nu(s3):
    h = s3.hypersurface
    p_amb = h.ambient.presentation
    want = TensorElement.zero(p_amb, 1)
    for i in range(4):
        for j in range(4):
            v = metric_lower(i, j)
            if v:
                want = want + TensorElement.basis(
                    p_amb, (j,), None, z(p_amb, i).scale(Scalar.rational(v))
                )
    assert h.nu == want


def test_non_central_level_function_rejected():
    r4 = build_r4()
    with pytest.raises(HypersurfaceError) as exc:
        build_hypersurface(r4.structures, z(r4.presentation, 0))
    assert exc.value.kind == "f_not_central"


def test_unnormalized_level_function_rejected():
    # classically z1 is central, but g^-1(dz1 (x) dz1) = 0 != 1
    r4 = build_r4(classical=True)
    with pytest.raises(HypersurfaceError) as exc:
        build_hypersurface(r4.structures, z(r4.presentation, 0))
    assert exc.value.kind == "normalization"


# -- projector -----------------------------------------------------------------

def test_sphere_projector_closed_form(s3):
    h = s3.hypersurface
    p = h.quotient_presentation
    nu_q = h.nu_q
    for i in range(4):
        got = projector_apply(h, dz(p, i))
        want = dz(p, i) - nu_q.left_mul(z(p, i))
        assert got == want


def test_torus_projector_closed_form(t2):
    h = t2.hypersurface
    p = h.quotient_presentation
    for i in range(4):
        sign = Scalar.rational(-1 if (i + 1) % 2 else 1)
        got = h.pi.images[BasisWord((i,), None)]
        want = h.qcalc.canon(dz(p, i)) + h.nu_q.left_mul(z(p, i).scale(sign))
        assert got == want


@pytest.mark.parametrize("space", ["s3", "t2"])
def test_projector_idempotent_and_kills_nu(space, s3, t2):
    h = {"s3": s3, "t2": t2}[space].hypersurface
    p = h.quotient_presentation
    for i in range(4):
        once = projector_apply(h, dz(p, i))
        assert projector_apply(h, once) == once
    assert projector_apply(h, h.nu_q).is_zero()


# -- assumption certificates ----------------------------------------------------

def test_sphere_certificate_passes(s3):
    cert = s3.hypersurface.certificate
    assert cert.all_passed
    assert cert.nu_transparency and cert.pi_transparency and cert.nabla_nu_transparency


def test_torus_certificate_passes(t2):
    assert t2.hypersurface.certificate.all_passed


def test_trivial_flip_braiding_fails_assumptions():
    r4 = build_r4()
    s = r4.structures
    p = r4.presentation
    flip = LeftLinearMap(
        p,
        (2, False),
        (2, False),
        {
            BasisWord((i, j), None): TensorElement.basis(p, (j, i))
            for i in range(4)
            for j in range(4)
        },
    )
    broken = Connection(s.calculus, s.connection.values, flip, flip)
    from ncgdirac.spin import StructureSet

    ambient = StructureSet(s.calculus, s.metric, broken, s.spin)
    h = build_hypersurface(ambient, sphere_level_function(p), name="flip")
    cert = check_assumptions(h)
    assert not cert.all_passed
    assert cert.residuals, "a failing certificate must carry residuals"
    with pytest.raises(HypersurfaceError) as exc:
        induced_metric(h)
    assert exc.value.kind == "certificate_failed"


def test_induction_gated_on_certificate():
    r4 = build_r4()
    h = build_hypersurface(r4.structures, sphere_level_function(r4.presentation))
    with pytest.raises(HypersurfaceError) as exc:
        induced_connection(h)
    assert exc.value.kind == "certificate_missing"


# -- lemma consequences ----------------------------------------------------------

@pytest.mark.parametrize("space", ["s3", "t2"])
def test_lemma_consequences(space, s3, t2):
    from ncgdirac.hypersurface import _pair_value

    h = {"s3": s3, "t2": t2}[space].hypersurface
    p = h.quotient_presentation
    for i in range(4):
        base = h.pi.apply(dz(p, i))
        assert _pair_value(h.g_inv_q, tensor(base, h.nu_q)).is_zero()
        assert _pair_value(h.g_inv_q, tensor(h.nu_q, base)).is_zero()
    contracted = h.g_inv_q.apply_at(tensor(h.nabla_nu_q, h.nu_q), 1)
    assert h.pi.apply_at(h.qcalc.canon(contracted), 0).is_zero()


@pytest.mark.parametrize("space", ["s3", "t2"])
def test_nabla_nu_central(space, s3, t2):
    h = {"s3": s3, "t2": t2}[space].hypersurface
    p = h.quotient_presentation
    for j in range(4):
        zj = z(p, j)
        assert (right_mul(h.nabla_nu_q, zj) - h.nabla_nu_q.left_mul(zj)).is_zero()


# -- induced structures ------------------------------------------------------------

@pytest.mark.parametrize("space", ["s3", "t2"])
def test_induced_structures_verify(space, s3, t2):
    s = {"s3": s3, "t2": t2}[space].structures
    assert verify_metric(s.metric, s.connection, s.calculus).all_passed
    assert verify_spinorial(s.spin, s.metric, s.connection, s.calculus).all_passed


def test_right_leibniz_on_quotient(s3):
    # nabla_B(dz_i z_j) = nabla_B(dz_i) z_j + sigma_B(dz_i (x) dz_j)
    s = s3.structures
    p = s3.presentation
    canon = s.calculus.canon
    for i in range(4):
        for j in range(4):
            base = canon(dz(p, i))
            zj = z(p, j)
            lhs = s.connection.apply(right_mul(base, zj))
            rhs = right_mul(s.connection.apply(base), zj) + s.connection.sigma.apply(
                tensor(base, s.calculus.d(zj))
            )
            assert (lhs - canon(rhs)).is_zero()


def rand_spinor(p, rng, max_degree=2):
    total = TensorElement.zero(p, 0, True)
    for _ in range(rng.randint(1, 2)):
        word = [rng.randrange(4) for _ in range(rng.randint(0, max_degree))]
        total = total + TensorElement.basis(
            p, (), rng.randrange(4), normal_form(word, Scalar.one(), p)
        )
    return total


@pytest.mark.parametrize("space", ["s3", "t2"])
def test_composite_equals_explicit_dirac(space, s3, t2):
    h = {"s3": s3, "t2": t2}[space].hypersurface
    p = h.quotient_presentation
    rng = random.Random(41 if space == "s3" else 43)
    for _ in range(15):
        s = rand_spinor(p, rng)
        lhs = induced_dirac(h, s, via="composite")
        rhs = induced_dirac(h, s, via="explicit")
        assert (lhs - rhs).is_zero()


@pytest.mark.parametrize("space", ["s3", "t2"])
def test_induced_dirac_derivation_property(space, s3, t2):
    from ncgdirac.spin import gamma_apply

    bundle = {"s3": s3, "t2": t2}[space]
    h = bundle.hypersurface
    spin = bundle.structures.spin
    p = h.quotient_presentation
    rng = random.Random(47)
    for _ in range(15):
        word = [rng.randrange(4) for _ in range(rng.randint(0, 3))]
        a = normal_form(word, Scalar.one(), p)
        s = rand_spinor(p, rng)
        lhs = induced_dirac(h, s.left_mul(a))
        da = bundle.structures.calculus.d(a)
        rhs = induced_dirac(h, s).left_mul(a) + gamma_apply(spin, tensor(da, s))
        assert (lhs - rhs).is_zero()


def test_iterated_ambient_is_previous_quotient(t2):
    h = t2.hypersurface
    assert h.ambient.presentation.name == "s3"
    assert h.quotient_presentation.name == "t2"
    assert len(h.quotient_presentation.rules) == 2
