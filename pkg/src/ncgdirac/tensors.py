"""Free left modules of tensor forms (and spinors) over a presented algebra.

An element of Omega^{(x)k} (x) E is stored in left-normal form: a sparse map
from basis words dz_{i1} (x) ... (x) dz_{ik} [(x) e_alpha] to normal-form
algebra coefficients, all coefficients on the left.  The right action twists
coefficients through basis letters via dz_i z_j = R[j][i] z_j dz_i; the spinor
slot is transparent to the twist.
"""

from __future__ import annotations

from typing import NamedTuple

from .algebra import AlgebraElement, Monomial, Presentation
from .scalars import Scalar


class ShapeError(ValueError):
    """Raised when tensor shapes (degree / spinor slot) do not match."""


class BasisWord(NamedTuple):
    forms: tuple[int, ...]
    spin: int | None

    def __repr__(self) -> str:
        parts = [f"dz{i + 1}" for i in self.forms]
        if self.spin is not None:
            parts.append(f"e{self.spin + 1}")
        return "(x)".join(parts) if parts else "1"


def word_key(w: BasisWord) -> tuple:
    return (w.forms, -1 if w.spin is None else w.spin)


def _twist_exp(p: Presentation, forms: tuple[int, ...], mono: Monomial) -> int:
    exp = 0
    for j, e in enumerate(mono):
        if e:
            col = p.q_exp[j]
            for i in forms:
                exp += col[i] * e
    return exp


def twist_phase(p: Presentation, forms: tuple[int, ...], mono: Monomial) -> Scalar:
    """Phase from commuting the monomial left through the basis letters."""
    return Scalar.q_power(_twist_exp(p, forms, mono))


def _twisted_through(p: Presentation, forms: tuple[int, ...], a: AlgebraElement) -> AlgebraElement:
    """a moved left through the basis letters, as w * a = (moved a) * w."""
    if not forms:
        return a
    return AlgebraElement(
        p, {mono: s.q_shift(_twist_exp(p, forms, mono)) for mono, s in a.terms.items()}
    )


class TensorElement:
    """Left-normal-form element of the degree-k form module, optional spinor slot."""

    __slots__ = ("presentation", "degree", "has_spin", "terms")

    def __init__(
        self,
        presentation: Presentation,
        degree: int,
        has_spin: bool,
        terms: dict[BasisWord, AlgebraElement] | None = None,
    ):
        self.presentation = presentation
        self.degree = degree
        self.has_spin = has_spin
        self.terms = {}
        for w, c in (terms or {}).items():
            if len(w.forms) != degree or (w.spin is not None) != has_spin:
                raise ShapeError(f"word {w} does not fit shape ({degree}, spin={has_spin})")
            if not c.is_zero():
                self.terms[w] = c

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(p: Presentation, degree: int, has_spin: bool = False) -> "TensorElement":
        return TensorElement(p, degree, has_spin)

    @staticmethod
    def basis(
        p: Presentation,
        forms: tuple[int, ...] = (),
        spin: int | None = None,
        coeff: AlgebraElement | None = None,
    ) -> "TensorElement":
        c = coeff if coeff is not None else AlgebraElement.one(p)
        w = BasisWord(tuple(forms), spin)
        return TensorElement(p, len(w.forms), spin is not None, {w: c})

    def shape(self) -> tuple[int, bool]:
        return (self.degree, self.has_spin)

    # -- module structure ----------------------------------------------------

    def _require_same_shape(self, other: "TensorElement"):
        if self.presentation != other.presentation:
            raise ValueError("presentation mismatch")
        if self.shape() != other.shape():
            raise ShapeError(f"shape mismatch: {self.shape()} vs {other.shape()}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._require_same_shape(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return TensorElement(self.presentation, self.degree, self.has_spin, out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __neg__(self) -> "TensorElement":
        return TensorElement(
            self.presentation,
            self.degree,
            self.has_spin,
            {w: -c for w, c in self.terms.items()},
        )

    def left_mul(self, a: AlgebraElement) -> "TensorElement":
        if a.presentation != self.presentation:
            raise ValueError("presentation mismatch")
        return TensorElement(
            self.presentation,
            self.degree,
            self.has_spin,
            {w: a * c for w, c in self.terms.items()},
        )

    def scale(self, s: Scalar) -> "TensorElement":
        return TensorElement(
            self.presentation,
            self.degree,
            self.has_spin,
            {w: c.scale(s) for w, c in self.terms.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.presentation == other.presentation
            and self.shape() == other.shape()
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("TensorElement is not hashable")

    def is_zero(self) -> bool:
        return not self.terms

    def convert(self, target: Presentation) -> "TensorElement":
        return TensorElement(
            target,
            self.degree,
            self.has_spin,
            {w: c.convert(target) for w, c in self.terms.items()},
        )

    # -- serialization and display -------------------------------------------

    def to_json(self) -> dict:
        entries = []
        for w, c in sorted(self.terms.items(), key=lambda t: word_key(t[0])):
            entry = {"word": list(w.forms), "coeff": c.to_json()}
            if w.spin is not None:
                entry["alpha"] = w.spin
            entries.append(entry)
        return {"degree": self.degree, "spinor": self.has_spin, "terms": entries}

    @staticmethod
    def from_json(data: dict, p: Presentation) -> "TensorElement":
        terms = {}
        for entry in data["terms"]:
            w = BasisWord(tuple(int(i) for i in entry["word"]), entry.get("alpha"))
            terms[w] = AlgebraElement.from_json(entry["coeff"], p)
        return TensorElement(p, int(data["degree"]), bool(data["spinor"]), terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: word_key(t[0])):
            parts.append(f"[{c!r}]*{w!r}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# module operations
# ---------------------------------------------------------------------------


def right_mul(e: TensorElement, a: AlgebraElement) -> TensorElement:
    """Right action e * a, pushing a left through every basis word."""
    if a.presentation != e.presentation:
        raise ValueError("presentation mismatch")
    p = e.presentation
    out: dict[BasisWord, AlgebraElement] = {}
    for w, c in e.terms.items():
        total = c * _twisted_through(p, w.forms, a)
        if not total.is_zero():
            prev = out.get(w)
            total = total if prev is None else prev + total
            if total.is_zero():
                out.pop(w, None)
            else:
                out[w] = total
    return TensorElement(p, e.degree, e.has_spin, out)


def tensor(e1: TensorElement, e2: TensorElement) -> TensorElement:
    """Relative tensor product over the algebra; e1 must have no spinor slot."""
    if e1.presentation != e2.presentation:
        raise ValueError("presentation mismatch")
    if e1.has_spin:
        raise ShapeError("left tensor factor cannot carry the spinor slot")
    p = e1.presentation
    out: dict[BasisWord, AlgebraElement] = {}
    for w1, c1 in e1.terms.items():
        for w2, c2 in e2.terms.items():
            coeff = c1 * _twisted_through(p, w1.forms, c2)
            if coeff.is_zero():
                continue
            w = BasisWord(w1.forms + w2.forms, w2.spin)
            prev = out.get(w)
            coeff = coeff if prev is None else prev + coeff
            if coeff.is_zero():
                out.pop(w, None)
            else:
                out[w] = coeff
    return TensorElement(p, e1.degree + e2.degree, e2.has_spin, out)


class LeftLinearMap:
    """Left-linear map stored extensionally on the free basis of its domain."""

    __slots__ = ("presentation", "domain", "codomain", "images")

    def __init__(
        self,
        presentation: Presentation,
        domain: tuple[int, bool],
        codomain: tuple[int, bool],
        images: dict[BasisWord, TensorElement],
    ):
        self.presentation = presentation
        self.domain = domain
        self.codomain = codomain
        self.images = dict(images)
        for w, img in self.images.items():
            if len(w.forms) != domain[0] or (w.spin is not None) != domain[1]:
                raise ShapeError(f"image key {w} does not fit domain {domain}")
            if img.shape() != codomain:
                raise ShapeError(f"image of {w} does not fit codomain {codomain}")

    @staticmethod
    def identity(p: Presentation, degree: int, has_spin: bool = False, rank: int = 0) -> "LeftLinearMap":
        images = {}
        spins = range(rank) if has_spin else [None]
        for w in _all_words(p.n, degree):
            for s in spins:
                bw = BasisWord(w, s)
                images[bw] = TensorElement.basis(p, w, s)
        return LeftLinearMap(p, (degree, has_spin), (degree, has_spin), images)

    def apply(self, e: TensorElement) -> TensorElement:
        if e.shape() != self.domain:
            raise ShapeError(f"element shape {e.shape()} does not match domain {self.domain}")
        return self.apply_at(e, 0)

    def apply_at(self, e: TensorElement, at: int) -> TensorElement:
        """Apply to the slot window [at, at + domain_degree) of e.

        A spinor-consuming map must sit at the right end of the word.  Image
        coefficients are twisted left through the untouched prefix slots.
        """
        if e.presentation != self.presentation:
            raise ValueError("presentation mismatch")
        k, dspin = self.domain
        if at < 0 or at + k > e.degree:
            raise ShapeError("slot window out of range")
        if dspin and (not e.has_spin or at + k != e.degree):
            raise ShapeError("spinor-consuming map must cover the rightmost slots")
        if not dspin and self.codomain[1]:
            raise ShapeError("cannot splice a spinor-producing map mid-word")
        p = e.presentation
        out_spin = self.codomain[1] or (e.has_spin and not dspin)
        out_degree = e.degree - k + self.codomain[0]
        out: dict[BasisWord, AlgebraElement] = {}
        for w, c in e.terms.items():
            prefix = w.forms[:at]
            mid = BasisWord(w.forms[at:at + k], w.spin if dspin else None)
            suffix = w.forms[at + k:]
            img = self.images.get(mid)
            if img is None:
                raise KeyError(f"map has no image for basis word {mid}")
            for w2, c2 in img.terms.items():
                coeff = c * _twisted_through(p, prefix, c2)
                if coeff.is_zero():
                    continue
                out_word = BasisWord(
                    prefix + w2.forms + suffix,
                    w2.spin if self.codomain[1] else (w.spin if not dspin else None),
                )
                prev = out.get(out_word)
                coeff = coeff if prev is None else prev + coeff
                if coeff.is_zero():
                    out.pop(out_word, None)
                else:
                    out[out_word] = coeff
        return TensorElement(p, out_degree, out_spin, out)

    def compose(self, inner: "LeftLinearMap") -> "LeftLinearMap":
        """Eager composition self after inner (domains must chain exactly)."""
        if inner.codomain != self.domain:
            raise ShapeError("composition shapes do not chain")
        images = {w: self.apply(img) for w, img in inner.images.items()}
        return LeftLinearMap(self.presentation, inner.domain, self.codomain, images)

    def convert(self, target: Presentation) -> "LeftLinearMap":
        return LeftLinearMap(
            target,
            self.domain,
            self.codomain,
            {w: img.convert(target) for w, img in self.images.items()},
        )

    def inverse_permutation(self) -> "LeftLinearMap":
        """Invert a map whose images are single basis words with unit scalars."""
        images: dict[BasisWord, TensorElement] = {}
        p = self.presentation
        for w, img in self.images.items():
            if len(img.terms) != 1:
                raise ValueError("map is not a scaled basis permutation")
            (w2, c), = img.terms.items()
            if len(c.terms) != 1:
                raise ValueError("map is not a scaled basis permutation")
            (mono, s), = c.terms.items()
            if any(mono):
                raise ValueError("map is not a scaled basis permutation")
            images[w2] = TensorElement.basis(
                p, w.forms, w.spin, AlgebraElement.from_scalar(p, s.inverse())
            )
        return LeftLinearMap(p, self.codomain, self.domain, images)


def _all_words(n: int, degree: int) -> list[tuple[int, ...]]:
    words: list[tuple[int, ...]] = [()]
    for _ in range(degree):
        words = [w + (i,) for w in words for i in range(n)]
    return words


def all_basis_words(p: Presentation, degree: int, spins=None) -> list[BasisWord]:
    out = []
    for w in _all_words(p.n, degree):
        if spins is None:
            out.append(BasisWord(w, None))
        else:
            out.extend(BasisWord(w, s) for s in spins)
    return out


def check_right_linearity(m: LeftLinearMap) -> bool:
    """True iff m(w * z_j) = m(w) * z_j on every basis word and generator."""
    p = m.presentation
    spins = range(4) if m.domain[1] else None
    for w in all_basis_words(p, m.domain[0], spins):
        base = TensorElement.basis(p, w.forms, w.spin)
        for j in range(p.n):
            zj = AlgebraElement.generator(p, j)
            lhs = m.apply(right_mul(base, zj))
            rhs = right_mul(m.apply(base), zj)
            if not (lhs - rhs).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# differential
# ---------------------------------------------------------------------------


def differential(a: AlgebraElement) -> TensorElement:
    """Leibniz differential of a representative, in left-normal form.

    For an ordered monomial, d acts on each letter and commutes the created
    dz_g left past the trailing letters; the e_g equal occurrences of one
    generator contribute identical twists, hence the integer factor.
    """
    p = a.presentation
    out: dict[BasisWord, AlgebraElement] = {}
    for mono, c in a.terms.items():
        for g, e in enumerate(mono):
            if not e:
                continue
            exp = 0
            for l in range(g + 1, p.n):
                if mono[l]:
                    exp += p.q_exp[l][g] * mono[l]
            reduced = list(mono)
            reduced[g] -= 1
            coeff = AlgebraElement(
                p, {tuple(reduced): c.q_shift(exp) * Scalar.rational(e)}
            )
            w = BasisWord((g,), None)
            prev = out.get(w)
            total = coeff if prev is None else prev + coeff
            if total.is_zero():
                out.pop(w, None)
            else:
                out[w] = total
    return TensorElement(p, 1, False, out)


def partial_coeffs(a: AlgebraElement) -> list[AlgebraElement]:
    """Coefficients of d(a) = sum_i (partial_i a) dz_i on the free basis."""
    d = differential(a)
    p = a.presentation
    out = []
    for i in range(p.n):
        out.append(d.terms.get(BasisWord((i,), None), AlgebraElement.zero(p)))
    return out
