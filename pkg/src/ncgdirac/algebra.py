"""Finitely presented quasi-commutative algebras and their quotient normal forms.

Generators z1..zn obey z_i z_j = R[j][i] z_j z_i for unimodular scalar phases
R[j][i]; quotients add rewrite rules whose left sides are low-degree ordered
monomials.  Elements are kept in normal form at all times: ascending-ordered
monomials, irreducible under the quotient rules, mapped to nonzero scalars.

The rewriting strategy is insertion based.  Multiplying a normal monomial by a
single generator on the right commutes the generator into place (collecting
the exact q-phases) and then reduces to the rule fixpoint, so every compound
operation reuses one well-tested kernel.
"""

from __future__ import annotations

import json
import os

from .scalars import GaussianRational, Scalar

Monomial = tuple[int, ...]

DEFAULT_STEP_BUDGET = 10**6


class PresentationError(ValueError):
    """Raised for presentations violating the quasi-commutativity contract."""


class RewriteBudgetExceeded(RuntimeError):
    """Raised when a normal-form computation exceeds the step budget.

    Hitting this signals a non-terminating (or explosive) user presentation;
    the built-in catalog presentations never trigger it.
    """


def _step_budget() -> int:
    raw = os.environ.get("NCG_STEP_BUDGET", "")
    return int(raw) if raw else DEFAULT_STEP_BUDGET


class _Budget:
    __slots__ = ("left",)

    def __init__(self):
        self.left = _step_budget()

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise RewriteBudgetExceeded(
                "rewrite step budget exceeded; presentation is likely "
                "non-terminating (override with NCG_STEP_BUDGET)"
            )


class RewriteRule:
    """Oriented quotient rule lhs -> rhs with lhs an ordered monomial."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs: Monomial, rhs: dict[Monomial, Scalar]):
        self.lhs = tuple(lhs)
        self.rhs = {tuple(m): c for m, c in rhs.items() if not c.is_zero()}

    def __repr__(self) -> str:
        return f"RewriteRule({self.lhs} -> {self.rhs})"


def _mono_degree(mono: Monomial) -> int:
    return sum(mono)


def _mono_letters(mono: Monomial) -> list[int]:
    out = []
    for g, e in enumerate(mono):
        out.extend([g] * e)
    return out


def _divides(lhs: Monomial, mono: Monomial) -> bool:
    return all(a <= b for a, b in zip(lhs, mono))


def monomial_key(mono: Monomial) -> tuple:
    # graded order, ties broken lexicographically from the highest generator
    return (_mono_degree(mono), tuple(reversed(mono)))


class Presentation:
    """A quasi-commutative algebra presentation, optionally with quotient rules.

    Every R entry must be a pure power of q; the exponents are kept as an
    integer matrix (q_exp) so the rewriting kernel accumulates phases by
    integer addition instead of scalar multiplication.
    """

    __slots__ = ("name", "n", "R", "q_exp", "rules", "_key", "_product_cache")

    def __init__(self, n: int, R, rules=(), name: str = ""):
        self.name = name
        self.n = n
        self._product_cache = {}
        self.R = tuple(tuple(row) for row in R)
        if len(self.R) != n or any(len(row) != n for row in self.R):
            raise PresentationError("R must be an n x n scalar matrix")
        one = Scalar.one()
        q_exp = []
        for i in range(n):
            if self.R[i][i] != one:
                raise PresentationError(f"R[{i}][{i}] must be 1")
            row = []
            for j in range(n):
                entry = self.R[i][j]
                if len(entry.terms) != 1:
                    raise PresentationError(f"R[{i}][{j}] must be a single q-power")
                (k, c), = entry.terms.items()
                if c != GaussianRational(1):
                    raise PresentationError(f"R[{i}][{j}] must be a pure q-power")
                if self.R[i][j] * self.R[j][i] != one:
                    raise PresentationError(f"R[{i}][{j}]*R[{j}][{i}] must be 1")
                row.append(k)
            q_exp.append(tuple(row))
        self.q_exp = tuple(q_exp)
        self.rules = tuple(rules)
        for rule in self.rules:
            if len(rule.lhs) != n:
                raise PresentationError("rule lhs arity does not match generators")
            if _mono_degree(rule.lhs) == 0:
                raise PresentationError("rule lhs must be a nonconstant monomial")
        self._key = None

    def key(self) -> str:
        """Structural identity; presentations compare by content, not object."""
        if self._key is None:
            payload = {
                "n": self.n,
                "R": [[s.to_json() for s in row] for row in self.R],
                "rules": [
                    [list(r.lhs), sorted((list(m), c.to_json()) for m, c in r.rhs.items())]
                    for r in self.rules
                ],
            }
            self._key = json.dumps(payload, sort_keys=True)
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return self is other or self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": self.n,
            "R": [[s.to_json() for s in row] for row in self.R],
            "ideal": [
                {
                    "lhs": _mono_letters(r.lhs),
                    "rhs": _element_terms_to_json(r.rhs),
                }
                for r in self.rules
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "Presentation":
        n = int(data["generators"])
        R = [[Scalar.from_json(s) for s in row] for row in data["R"]]
        pres = Presentation(n, R, (), name=data.get("name", ""))
        rules = []
        for entry in data.get("ideal", []):
            lhs = [0] * n
            for g in entry["lhs"]:
                lhs[int(g)] += 1
            rhs = _element_terms_from_json(entry["rhs"], n)
            rules.append(RewriteRule(tuple(lhs), rhs))
        if rules:
            pres = Presentation(n, R, rules, name=data.get("name", ""))
        return pres

    def __repr__(self) -> str:
        return f"Presentation({self.name or 'anonymous'}, n={self.n}, rules={len(self.rules)})"


def _element_terms_to_json(terms: dict[Monomial, Scalar]) -> list:
    return [
        {"exps": list(m), "coeff": c.to_json()}
        for m, c in sorted(terms.items(), key=lambda t: monomial_key(t[0]))
    ]


def _element_terms_from_json(data: list, n: int) -> dict[Monomial, Scalar]:
    out = {}
    for entry in data:
        m = tuple(int(e) for e in entry["exps"])
        if len(m) != n:
            raise PresentationError("monomial arity mismatch in serialized element")
        out[m] = Scalar.from_json(entry["coeff"])
    return out


# ---------------------------------------------------------------------------
# rewriting kernel
# ---------------------------------------------------------------------------


def _insert_gen(mono: Monomial, k: int, p: Presentation) -> tuple[Monomial, int]:
    """Free product mono * z_k, commuting z_k into ascending position.

    Each swap past a letter j > k applies z_j z_k = q-power(q_exp[k][j]) z_k z_j;
    the accumulated phase is returned as a q-exponent.
    """
    exp = 0
    row = p.q_exp[k]
    for j in range(k + 1, p.n):
        e = mono[j]
        if e:
            exp += row[j] * e
    out = list(mono)
    out[k] += 1
    return tuple(out), exp


def _extraction_exp(mono: Monomial, lhs: Monomial, p: Presentation) -> tuple[Monomial, int]:
    """q-exponent for rewriting mono = q-power * remainder * lhs."""
    remaining = list(mono)
    exp = 0
    for g in reversed(range(p.n)):
        for _ in range(lhs[g]):
            remaining[g] -= 1
            for j in range(g + 1, p.n):
                e = remaining[j]
                if e:
                    exp += p.q_exp[j][g] * e
    return tuple(remaining), exp


def _add_term(out: dict[Monomial, Scalar], mono: Monomial, coeff: Scalar):
    s = out.get(mono)
    s = coeff if s is None else s + coeff
    if s.is_zero():
        out.pop(mono, None)
    else:
        out[mono] = s


def _accumulate(out: dict, mono: Monomial, coeff: Scalar, qexp: int, p: Presentation, budget: _Budget):
    """Add coeff * q**qexp * mono in normal form into out, to the rule fixpoint."""
    if coeff.is_zero():
        return
    for rule in p.rules:
        if _divides(rule.lhs, mono):
            budget.spend()
            rem, exp = _extraction_exp(mono, rule.lhs, p)
            for rmono, rcoef in rule.rhs.items():
                _mul_letters(out, rem, _mono_letters(rmono), coeff * rcoef, qexp + exp, p, budget)
            return
    _add_term(out, mono, coeff.q_shift(qexp))


def _mul_letters(out: dict, base: Monomial, letters, coeff: Scalar, qexp: int, p: Presentation, budget: _Budget):
    """Accumulate coeff * q**qexp * base * z_{letters[0]} * ... in normal form."""
    for k in letters:
        budget.spend()
        base, exp = _insert_gen(base, k, p)
        qexp += exp
    _accumulate(out, base, coeff, qexp, p, budget)


def _mono_product(p: Presentation, m1: Monomial, m2: Monomial) -> dict[Monomial, Scalar]:
    """Normal form of the monomial product m1 * m2, memoized per presentation.

    The cache stays small (catalog monomials are low degree) and turns the
    repeated basis-word products of the verifiers into dictionary lookups.
    """
    key = (m1, m2)
    cached = p._product_cache.get(key)
    if cached is None:
        out: dict[Monomial, Scalar] = {}
        _mul_letters(out, m1, _mono_letters(m2), Scalar.one(), 0, p, _Budget())
        p._product_cache[key] = cached = out
    return cached


class AlgebraElement:
    """Normal-form element of a presented algebra: monomial -> Scalar."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation: Presentation, terms: dict[Monomial, Scalar] | None = None):
        self.presentation = presentation
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(p: Presentation) -> "AlgebraElement":
        return AlgebraElement(p)

    @staticmethod
    def one(p: Presentation) -> "AlgebraElement":
        return AlgebraElement(p, {(0,) * p.n: Scalar.one()})

    @staticmethod
    def from_scalar(p: Presentation, s: Scalar) -> "AlgebraElement":
        return AlgebraElement(p, {(0,) * p.n: s})

    @staticmethod
    def generator(p: Presentation, i: int) -> "AlgebraElement":
        if not 0 <= i < p.n:
            raise IndexError(f"generator index {i} out of range")
        return normal_form([i], Scalar.one(), p)

    # -- ring structure ----------------------------------------------------

    def _require_same(self, other: "AlgebraElement"):
        if self.presentation != other.presentation:
            raise ValueError("presentation mismatch")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_term(out, m, c)
        return AlgebraElement(self.presentation, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.presentation, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same(other)
        p = self.presentation
        out: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                factor = c1 * c2
                for m, s in _mono_product(p, m1, m2).items():
                    _add_term(out, m, s * factor)
        return AlgebraElement(p, out)

    def scale(self, s: Scalar) -> "AlgebraElement":
        return AlgebraElement(
            self.presentation, {m: c * s for m, c in self.terms.items()}
        )

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        p = self.presentation
        return self.terms == {(0,) * p.n: Scalar.one()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.presentation == other.presentation and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.presentation.key(), frozenset((m, c) for m, c in self.terms.items())))

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=0)

    # -- conversion --------------------------------------------------------

    def convert(self, target: Presentation) -> "AlgebraElement":
        """Re-reduce under another presentation with the same generators and R."""
        if target.n != self.presentation.n or target.R != self.presentation.R:
            raise ValueError("conversion requires identical generators and R matrix")
        budget = _Budget()
        out: dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            _accumulate(out, m, c, 0, target, budget)
        return AlgebraElement(target, out)

    # -- serialization and display ------------------------------------------

    def to_json(self) -> list:
        return _element_terms_to_json(self.terms)

    @staticmethod
    def from_json(data: list, p: Presentation) -> "AlgebraElement":
        raw = _element_terms_from_json(data, p.n)
        out: dict[Monomial, Scalar] = {}
        budget = _Budget()
        for m, c in raw.items():
            _accumulate(out, m, c, 0, p, budget)
        return AlgebraElement(p, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: monomial_key(t[0])):
            name = "*".join(
                f"z{g + 1}" + (f"^{e}" if e > 1 else "")
                for g, e in enumerate(m)
                if e
            )
            cs = repr(c)
            if name:
                parts.append(name if c.is_one() else f"({cs})*{name}")
            else:
                parts.append(f"({cs})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def normal_form(word, coeff: Scalar, p: Presentation) -> AlgebraElement:
    """Normal form of coeff * z_{word[0]} * z_{word[1]} * ... in p."""
    for k in word:
        if not 0 <= k < p.n:
            raise IndexError(f"generator index {k} out of range")
    budget = _Budget()
    out: dict[Monomial, Scalar] = {}
    _mul_letters(out, (0,) * p.n, list(word), coeff, 0, p, budget)
    return AlgebraElement(p, out)


def is_central(a: AlgebraElement) -> bool:
    """True iff a commutes with every generator (sufficient by generation)."""
    p = a.presentation
    for j in range(p.n):
        zj = AlgebraElement.generator(p, j)
        if not (a * zj - zj * a).is_zero():
            return False
    return True


def extend_presentation(p: Presentation, f: AlgebraElement, name: str = "") -> Presentation:
    """Quotient presentation of p by the two-sided ideal (f).

    Orients f into a rule by solving for its largest monomial under the graded
    order; existing rule right sides are re-reduced against the extended set.
    General completion is out of scope: f must already be oriented into a
    confluent system together with p's rules, which callers check empirically.
    """
    if f.presentation != p:
        raise ValueError("f must live in the presentation being extended")
    if f.is_zero():
        raise ValueError("cannot quotient by the zero element")
    lead = max(f.terms, key=monomial_key)
    lead_coeff = f.terms[lead]
    if len(lead_coeff.terms) != 1:
        raise PresentationError("leading coefficient of f is not invertible here")
    inv = lead_coeff.inverse()
    rhs = {}
    for m, c in f.terms.items():
        if m == lead:
            continue
        rhs[m] = -(c * inv)
    new_rule = RewriteRule(lead, rhs)
    extended = Presentation(p.n, p.R, p.rules + (new_rule,), name=name or p.name)
    # inter-reduce: re-normalize every rhs against the full rule set
    changed = True
    rules = list(extended.rules)
    guard = 0
    while changed:
        changed = False
        guard += 1
        if guard > 100:
            raise PresentationError("rule inter-reduction did not stabilize")
        for idx, rule in enumerate(rules):
            trial = Presentation(p.n, p.R, tuple(rules[:idx] + rules[idx + 1:]), name="tmp")
            budget = _Budget()
            out: dict[Monomial, Scalar] = {}
            for m, c in rule.rhs.items():
                _accumulate(out, m, c, 0, trial, budget)
            if out != rule.rhs:
                rules[idx] = RewriteRule(rule.lhs, out)
                changed = True
    return Presentation(p.n, p.R, tuple(rules), name=name or p.name)


def brute_force_normal_form(word, coeff: Scalar, p: Presentation, _memo=None) -> AlgebraElement:
    """Confluence oracle: exhaustive one-step rewriting, all orders.

    A step is a single adjacent transposition z_a z_b = R[b][a] z_b z_a (in
    either direction) or an adjacent rule replacement.  The full transposition
    closure of the word is enumerated with phase bookkeeping (inconsistent
    phases on re-visits flag a broken R matrix), every rule occurrence in the
    closure is branched on, and all branches must recursively normalize to the
    same element.  Exponential but memoized; intended for short words.
    """
    memo = {} if _memo is None else _memo

    def nf_word(w: tuple[int, ...]) -> dict[Monomial, Scalar]:
        if w in memo:
            return memo[w]
        # closure under adjacent transpositions, both directions
        reach: dict[tuple[int, ...], Scalar] = {w: Scalar.one()}
        frontier = [w]
        while frontier:
            u = frontier.pop()
            pu = reach[u]
            for pos in range(len(u) - 1):
                a, b = u[pos], u[pos + 1]
                if a == b:
                    continue
                v = u[:pos] + (b, a) + u[pos + 2:]
                phase = pu * p.R[b][a]
                seen = reach.get(v)
                if seen is None:
                    reach[v] = phase
                    frontier.append(v)
                elif seen != phase:
                    raise AssertionError(
                        f"inconsistent transposition phases reaching {v} from {w}"
                    )
        results = []
        for u, phase in reach.items():
            for rule in p.rules:
                letters = tuple(_mono_letters(rule.lhs))
                span = len(letters)
                for pos in range(len(u) - span + 1):
                    if u[pos:pos + span] == letters:
                        total: dict[Monomial, Scalar] = {}
                        for rmono, rcoef in rule.rhs.items():
                            spliced = u[:pos] + tuple(_mono_letters(rmono)) + u[pos + span:]
                            for m, c in nf_word(spliced).items():
                                _add_term(total, m, c * rcoef * phase)
                        results.append(total)
        if not results:
            srt = tuple(sorted(w))
            mono = [0] * p.n
            for k in srt:
                mono[k] += 1
            value = _scale_terms({tuple(mono): Scalar.one()}, reach[srt])
        else:
            value = results[0]
            for other in results[1:]:
                if other != value:
                    raise AssertionError(
                        f"non-confluent rewriting detected at word {w}: "
                        f"{value} vs {other}"
                    )
        memo[w] = value
        return value

    terms = _scale_terms(nf_word(tuple(word)), coeff)
    return AlgebraElement(p, terms)


def _scale_terms(terms: dict[Monomial, Scalar], s: Scalar) -> dict[Monomial, Scalar]:
    out = {}
    for m, c in terms.items():
        v = c * s
        if not v.is_zero():
            out[m] = v
    return out
