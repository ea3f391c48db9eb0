"""Exact arithmetic in truncated polynomial bialgebras over small prime fields.

Every algebra here has the shape

    F_p[g_1, ..., g_r] / (rewrite rules),

where each generator carries a positive degree and a truncation exponent
N >= 2, and every rewrite rule replaces a monomial by a scalar multiple of a
lexicographically smaller monomial of the same degree, or by zero.  The
default rule for a generator is g^N -> 0; presentations like the mod-2 Chow
ring of an orthogonal group override this with rules such as e_i^2 -> e_{2i}.
Generators must be declared so that every rewrite target is lex-smaller than
its source (targets in "later" generators); this makes termination a static
property of the presentation.

Monomials are exponent tuples aligned with the declared generator order,
elements are {monomial: coefficient} dicts over F_p with all monomials in
normal form and no zero coefficients stored.

A bialgebra adds a coproduct table on generators, extended multiplicatively.
Coproducts need not be degree-homogeneous (the K-theory presentations use
Delta(x) = x@1 + 1@x - x@x after specializing the invertible Bott/Morava
scalar to 1), but the counit law and connectedness are always enforced.
The antipode is the convolution series S = sum_k (-1)^k pi^{*k} with
pi = id - unit.counit; on a connected algebra the series stops at
k = top_degree() because longer products of augmentation-kernel elements
vanish.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)

#: exponent tuple aligned with the declared generators of an algebra
Monomial = tuple

_BASIS_BOUND = 2_000_000
_GROUPLIKE_BOUND = 10 ** 6


class SchemaError(ValueError):
    """A malformed presentation file; ``path`` locates the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    degree: int
    truncation: int  # exponent N with g^N rewritten (>= 2)


@dataclass(frozen=True)
class RewriteRule:
    source: Monomial
    target: Monomial | None  # None encodes a zero target
    coeff: int = 1           # coefficient of the target, ignored when None


@dataclass
class VerifyReport:
    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, message):
        self.ok = False
        self.failures.append(message)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "pass"
        return "fail:\n  " + "\n  ".join(self.failures)


def _fmt_mono(names, mono):
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


class Algebra:
    """A finite-dimensional graded-commutative F_p algebra in rewrite form."""

    def __init__(self, prime, generators, rules=()):
        if prime not in SUPPORTED_PRIMES:
            raise ValueError(f"prime required (2 <= p <= 13), got {prime!r}")
        generators = tuple(generators)
        names = [g.name for g in generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g in generators:
            if not isinstance(g.name, str) or not g.name:
                raise ValueError(f"generator name must be a nonempty string: {g!r}")
            if g.degree < 1:
                raise ValueError(f"generator {g.name}: degree must be >= 1")
            if g.truncation < 2:
                raise ValueError(f"generator {g.name}: truncation must be >= 2")
        self.prime = prime
        self.generators = generators
        self.rules = tuple(rules)
        self._index = {g.name: i for i, g in enumerate(generators)}
        self._degrees = tuple(g.degree for g in generators)
        self.unit_mono = (0,) * len(generators)
        self._compiled = self._compile_rules()
        self._nf_cache = {}
        self._basis_cache = None

    # -- presentation ------------------------------------------------------

    @property
    def ngens(self):
        return len(self.generators)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown generator {name!r}") from None

    def _validate_rule(self, rule, where):
        r = self.ngens
        if len(rule.source) != r or any(e < 0 for e in rule.source):
            raise ValueError(f"{where}: source must be a length-{r} exponent tuple")
        if rule.source == self.unit_mono:
            raise ValueError(f"{where}: source must not be the unit monomial")
        if rule.target is not None:
            if len(rule.target) != r or any(e < 0 for e in rule.target):
                raise ValueError(f"{where}: target must be a length-{r} exponent tuple")
            if rule.coeff % self.prime == 0:
                raise ValueError(f"{where}: target coefficient is zero mod {self.prime}")
            if self.degree_of(rule.target) != self.degree_of(rule.source):
                raise ValueError(
                    f"{where}: degree mismatch, source has degree "
                    f"{self.degree_of(rule.source)} but target has degree "
                    f"{self.degree_of(rule.target)}")
            if not rule.target < rule.source:
                raise ValueError(
                    f"{where}: target {_fmt_mono([g.name for g in self.generators], rule.target)} "
                    f"is not lexicographically smaller than its source "
                    f"(rewriting would not terminate)")

    def _compile_rules(self):
        seen = set()
        compiled = []
        for k, rule in enumerate(self.rules):
            self._validate_rule(rule, f"rule {k}")
            if rule.source in seen:
                raise ValueError(f"rule {k}: duplicate source")
            seen.add(rule.source)
            compiled.append(rule)
        for i, g in enumerate(self.generators):
            source = tuple(g.truncation if j == i else 0 for j in range(self.ngens))
            if source not in seen:
                compiled.append(RewriteRule(source, None))
        return tuple(compiled)

    def degree_of(self, mono):
        return sum(e * d for e, d in zip(mono, self._degrees))

    # -- normalization -----------------------------------------------------

    def normalize(self, mono):
        """Reduce an exponent tuple; returns (coeff, normal monomial or None)."""
        mono = tuple(mono)
        try:
            return self._nf_cache[mono]
        except KeyError:
            pass
        coeff, cur = 1, mono
        for _ in range(100_000):
            for rule in self._compiled:
                if all(c >= s for c, s in zip(cur, rule.source)):
                    if rule.target is None:
                        result = (0, None)
                        self._nf_cache[mono] = result
                        return result
                    coeff = coeff * rule.coeff % self.prime
                    cur = tuple(c - s + t for c, s, t in
                                zip(cur, rule.source, rule.target))
                    break
            else:
                result = (coeff, cur)
                self._nf_cache[mono] = result
                return result
        raise RuntimeError(f"rewriting did not terminate on {mono}")  # pragma: no cover

    def is_normal(self, mono):
        return not any(all(c >= s for c, s in zip(mono, rule.source))
                       for rule in self._compiled)

    def mul_mono(self, a, b):
        return self.normalize(tuple(x + y for x, y in zip(a, b)))

    # -- basis -------------------------------------------------------------

    def basis(self):
        """All normal-form monomials, sorted by (degree, exponent tuple)."""
        if self._basis_cache is None:
            count = 1
            for g in self.generators:
                count *= g.truncation
            if count > _BASIS_BOUND:
                raise ValueError(
                    f"basis enumeration over bound ({count} > {_BASIS_BOUND} candidates)")
            monos = [m for m in itertools.product(
                *(range(g.truncation) for g in self.generators))
                if self.is_normal(m)]
            monos.sort(key=lambda m: (self.degree_of(m), m))
            self._basis_cache = tuple(monos)
        return self._basis_cache

    def basis_by_degree(self):
        out = {}
        for m in self.basis():
            out.setdefault(self.degree_of(m), []).append(m)
        return out

    def dimension(self):
        return len(self.basis())

    def top_degree(self):
        return self.degree_of(self.basis()[-1]) if self.basis() else 0

    # -- element factories -------------------------------------------------

    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {self.unit_mono: 1})

    def gen(self, name):
        i = self.index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.ngens))
        return Element(self, {mono: 1})

    def monomial(self, mono, coeff=1):
        return Element(self, {tuple(mono): coeff})

    def element(self, terms):
        return Element(self, terms)

    def monomial_str(self, mono):
        return _fmt_mono([g.name for g in self.generators], mono)

    # -- comparisons -------------------------------------------------------

    def same_presentation(self, other):
        return (type(self) is type(other) and self.prime == other.prime
                and self.generators == other.generators
                and self.rules == other.rules)

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.same_presentation(other) \
            and getattr(self, "coproducts", None) == getattr(other, "coproducts", None)

    def __hash__(self):
        return hash((self.prime, self.generators))

    def __repr__(self):
        gens = ",".join(g.name for g in self.generators)
        return f"<{type(self).__name__} F_{self.prime}[{gens}] dim {self.dimension()}>"


class Element:
    """A sparse F_p linear combination of normal-form monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms=()):
        p = alg.prime
        acc = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for mono, c in items:
            c %= p
            if not c:
                continue
            k, nf = alg.normalize(mono)
            if nf is None:
                continue
            acc[nf] = (acc.get(nf, 0) + c * k) % p
        self.alg = alg
        self.terms = {m: c for m, c in acc.items() if c}

    def _check_mate(self, other):
        if not self.alg.same_presentation(other.alg):
            raise ValueError("elements live over different presentations")

    def __add__(self, other):
        if isinstance(other, int):
            other = Element(self.alg, {self.alg.unit_mono: other})
        self._check_mate(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Element(self.alg, {self.alg.unit_mono: other})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Element(self.alg, {m: c * other for m, c in self.terms.items()})
        self._check_mate(other)
        p = self.alg.prime
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                k, m = self.alg.mul_mono(ma, mb)
                if m is not None:
                    out[m] = (out.get(m, 0) + ca * cb * k) % p
        return Element(self.alg, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.alg.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Element(self.alg, {self.alg.unit_mono: other})
        return isinstance(other, Element) and self.alg.same_presentation(other.alg) \
            and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return sorted({self.alg.degree_of(m) for m in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous nonzero: {self}")
        return degs[0]

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (self.alg.degree_of(m), m)):
            c = self.terms[m]
            ms = self.alg.monomial_str(m)
            if ms == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(ms)
            else:
                bits.append(f"{c}*{ms}")
        return " + ".join(bits)

    __repr__ = __str__


class TensorElement:
    """A sparse element of A (x) B for two rewrite-form algebras A, B."""

    __slots__ = ("left", "right", "terms")

    def __init__(self, left, right, terms=()):
        if left.prime != right.prime:
            raise ValueError("tensor factors must share the prime")
        p = left.prime
        acc = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for (lm, rm), c in items:
            c %= p
            if not c:
                continue
            kl, ln = left.normalize(lm)
            if ln is None:
                continue
            kr, rn = right.normalize(rm)
            if rn is None:
                continue
            key = (ln, rn)
            acc[key] = (acc.get(key, 0) + c * kl * kr) % p
        self.left = left
        self.right = right
        self.terms = {k: c for k, c in acc.items() if c}

    def _check_mate(self, other):
        if not (self.left.same_presentation(other.left)
                and self.right.same_presentation(other.right)):
            raise ValueError("tensor elements live over different presentations")

    def __add__(self, other):
        self._check_mate(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElement(self.left, self.right, out)

    def __neg__(self):
        return TensorElement(self.left, self.right,
                             {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TensorElement(self.left, self.right,
                                 {k: c * other for k, c in self.terms.items()})
        self._check_mate(other)
        p = self.left.prime
        out = {}
        for (la, ra), ca in self.terms.items():
            for (lb, rb), cb in other.terms.items():
                kl, lm = self.left.mul_mono(la, lb)
                if lm is None:
                    continue
                kr, rm = self.right.mul_mono(ra, rb)
                if rm is None:
                    continue
                key = (lm, rm)
                out[key] = (out.get(key, 0) + ca * cb * kl * kr) % p
        return TensorElement(self.left, self.right, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = TensorElement(self.left, self.right,
                               {(self.left.unit_mono, self.right.unit_mono): 1})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, TensorElement) \
            and self.left.same_presentation(other.left) \
            and self.right.same_presentation(other.right) \
            and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        def key(t):
            (lm, rm) = t
            return (self.left.degree_of(lm), lm, rm)
        bits = []
        for lm, rm in sorted(self.terms, key=key):
            c = self.terms[(lm, rm)]
            s = f"{self.left.monomial_str(lm)}⊗{self.right.monomial_str(rm)}"
            bits.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(bits)

    __repr__ = __str__


class Bialgebra(Algebra):
    """An Algebra with a coproduct table on generators.

    ``coproducts`` maps each generator name to an iterable of
    (coeff, left exponent tuple, right exponent tuple) triples.  The table is
    stored termwise-normalized and extended to arbitrary elements
    multiplicatively.
    """

    def __init__(self, prime, generators, rules=(), coproducts=None):
        super().__init__(prime, generators, rules)
        coproducts = dict(coproducts or {})
        unknown = set(coproducts) - {g.name for g in generators}
        if unknown:
            raise ValueError(f"coproducts given for unknown generators {sorted(unknown)}")
        missing = {g.name for g in generators} - set(coproducts)
        if missing:
            raise ValueError(f"missing coproducts for generators {sorted(missing)}")
        table = {}
        for name, terms in coproducts.items():
            t = TensorElement(self, self,
                              {(tuple(lm), tuple(rm)): c for c, lm, rm in terms})
            table[name] = tuple(sorted((c, lm, rm)
                                       for (lm, rm), c in t.terms.items()))
        self.coproducts = table
        self._cop_cache = {}
        self._antipode_gens = {}
        self._pik_cache = {}

    def _gen_coproduct(self, i):
        name = self.generators[i].name
        return TensorElement(self, self,
                             {(lm, rm): c for c, lm, rm in self.coproducts[name]})

    def coproduct_mono(self, mono):
        """Coproduct of a (not necessarily normal) exponent tuple."""
        mono = tuple(mono)
        try:
            return self._cop_cache[mono]
        except KeyError:
            pass
        result = TensorElement(self, self, {(self.unit_mono, self.unit_mono): 1})
        for i, e in enumerate(mono):
            if e:
                result = result * self._gen_coproduct(i) ** e
        self._cop_cache[mono] = result
        return result

    def coproduct(self, x):
        if isinstance(x, Element):
            out = TensorElement(self, self, {})
            for m, c in x.terms.items():
                out = out + c * self.coproduct_mono(m)
            return out
        return self.coproduct_mono(x)

    def counit(self, x):
        if isinstance(x, Element):
            return x.terms.get(self.unit_mono, 0)
        k, nf = self.normalize(x)
        return k if nf == self.unit_mono else 0

    # -- antipode ----------------------------------------------------------

    def _pik(self, k, mono):
        """k-th convolution power of pi = id - unit.counit, on a monomial."""
        key = (k, mono)
        try:
            return self._pik_cache[key]
        except KeyError:
            pass
        if k == 0:
            result = self.one() if mono == self.unit_mono else self.zero()
        else:
            result = self.zero()
            for (lm, rm), c in self.coproduct_mono(mono).terms.items():
                if rm == self.unit_mono:
                    continue  # pi kills the unit factor
                result = result + c * self._pik(k - 1, lm) * self.monomial(rm)
        self._pik_cache[key] = result
        return result

    def _antipode_gen(self, i):
        try:
            return self._antipode_gens[i]
        except KeyError:
            pass
        mono = tuple(1 if j == i else 0 for j in range(self.ngens))
        result = self.zero()
        sign = 1
        for k in range(self.top_degree() + 1):
            result = result + sign * self._pik(k, mono)
            sign = -sign
        self._antipode_gens[i] = result
        return result

    def antipode(self, x):
        """The antipode, extended multiplicatively from generators."""
        out = self.zero()
        for m, c in x.terms.items():
            term = self.one()
            for i, e in enumerate(m):
                if e:
                    term = term * self._antipode_gen(i) ** e
            out = out + c * term
        return out

    # -- verification ------------------------------------------------------

    def verify(self):
        return verify_bialgebra(self)

    def is_primitive(self, name):
        i = self.index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.ngens))
        expected = TensorElement(self, self, {(mono, self.unit_mono): 1,
                                              (self.unit_mono, mono): 1})
        return self.coproduct(self.gen(name)) == expected

    def find_grouplikes(self, max_candidates=_GROUPLIKE_BOUND):
        """All g with counit(g) = 1 and coproduct(g) = g (x) g, exhaustively.

        The unit coordinate of a group-like is forced to 1, so the search
        space is p^(dim - 1) candidates; refuses above ``max_candidates``.
        """
        positive = [m for m in self.basis() if m != self.unit_mono]
        count = self.prime ** len(positive)
        if count > max_candidates:
            raise ValueError(
                f"group-like search over bound ({count} > {max_candidates} candidates)")
        out = []
        for coeffs in itertools.product(range(self.prime), repeat=len(positive)):
            terms = {self.unit_mono: 1}
            terms.update({m: c for m, c in zip(positive, coeffs) if c})
            g = Element(self, terms)
            gg = TensorElement(self, self,
                               {(a, b): ca * cb
                                for a, ca in g.terms.items()
                                for b, cb in g.terms.items()})
            if self.coproduct(g) == gg:
                out.append(g)
        out.sort(key=lambda g: sorted(g.terms.items()))
        return out


def _triple_expand(B, tensor, side):
    """Apply the coproduct to one side of a TensorElement over (B, B)."""
    p = B.prime
    out = {}
    for (lm, rm), c in tensor.terms.items():
        inner = B.coproduct_mono(lm if side == "left" else rm)
        for (a, b), d in inner.terms.items():
            key = (a, b, rm) if side == "left" else (lm, a, b)
            out[key] = (out.get(key, 0) + c * d) % p
    return {k: c for k, c in out.items() if c}


def verify_bialgebra(B):
    """Check counit laws, connectedness, coassociativity, rule compatibility."""
    report = VerifyReport()
    unit = B.unit_mono
    for g in B.generators:
        gx = B.gen(g.name)
        cop = B.coproduct(gx)
        left = sum((c * B.monomial(rm) for (lm, rm), c in cop.terms.items()
                    if lm == unit), B.zero())
        right = sum((c * B.monomial(lm) for (lm, rm), c in cop.terms.items()
                     if rm == unit), B.zero())
        if left != gx:
            report.fail(f"counit law fails on {g.name}: (eps⊗id)Δ = {left}")
        if right != gx:
            report.fail(f"counit law fails on {g.name}: (id⊗eps)Δ = {right}")
        reduced = cop - TensorElement(B, B, {(m, unit): c for m, c in gx.terms.items()}) \
                      - TensorElement(B, B, {(unit, m): c for m, c in gx.terms.items()})
        for lm, rm in reduced.terms:
            if lm == unit or rm == unit:
                report.fail(f"connectedness fails on {g.name}: "
                            f"reduced coproduct has a unit factor")
                break
        if _triple_expand(B, cop, "left") != _triple_expand(B, cop, "right"):
            report.fail(f"coassociativity fails on {g.name}")
    for rule in B._compiled:
        src = B.coproduct_mono(rule.source)
        tgt = TensorElement(B, B, {}) if rule.target is None \
            else rule.coeff * B.coproduct_mono(rule.target)
        if src != tgt:
            names = [g.name for g in B.generators]
            report.fail(
                f"coproduct does not respect {_fmt_mono(names, rule.source)} -> "
                f"{'0' if rule.target is None else _fmt_mono(names, rule.target)}"
                f" (difference {src - tgt})")
    return report


def borel_normalize(B):
    """Re-present a bialgebra with chain rules g^N -> g' in pure Borel form.

    Requires every explicit rule to rewrite a pure generator power to a single
    generator with coefficient 1 (or to zero), with the rewritten generators
    forming disjoint chains.  Generators expressible as powers of earlier ones
    are deleted; each survivor keeps the composite truncation (its minimal
    vanishing power).  Coproducts are rewritten through the substitution, and
    the graded dimension is checked to be preserved.
    """
    gen_of = {}   # generator index -> (index of single-gen rule target, power)
    for k, rule in enumerate(B.rules):
        src_support = [(i, e) for i, e in enumerate(rule.source) if e]
        if len(src_support) != 1:
            raise ValueError(f"rule {k}: not a pure generator power")
        i, e = src_support[0]
        if e != B.generators[i].truncation:
            raise ValueError(f"rule {k}: source power differs from the truncation")
        if rule.target is None:
            continue
        tgt_support = [(j, f) for j, f in enumerate(rule.target) if f]
        if len(tgt_support) != 1 or tgt_support[0][1] != 1 or rule.coeff % B.prime != 1:
            raise ValueError(f"rule {k}: target is not a single generator "
                             f"with coefficient 1")
        j = tgt_support[0][0]
        if j in gen_of:
            raise ValueError(f"rule {k}: generator {B.generators[j].name} "
                             f"is the target of two rules")
        gen_of[j] = i

    survivors = [i for i in range(B.ngens) if i not in gen_of]
    # express every generator as a power of its chain root
    expand = {}
    for i in range(B.ngens):
        j, power = i, 1
        for _ in range(B.ngens + 1):
            if j not in gen_of:
                break
            power *= B.generators[gen_of[j]].truncation
            j = gen_of[j]
        else:
            raise ValueError("rewrite chains contain a cycle")
        expand[i] = (j, power)

    new_trunc = {}
    for i in survivors:
        t = B.generators[i].truncation
        j = i
        while True:
            # follow the chain forward: which generator is g_j^{trunc} ?
            nxt = [jj for jj, src in gen_of.items() if src == j]
            if not nxt:
                break
            j = nxt[0]
            t *= B.generators[j].truncation
        new_trunc[i] = t

    new_gens = tuple(GeneratorDecl(B.generators[i].name, B.generators[i].degree,
                                   new_trunc[i]) for i in survivors)
    pos = {i: s for s, i in enumerate(survivors)}

    def remap(mono):
        out = [0] * len(survivors)
        for i, e in enumerate(mono):
            if e:
                root, power = expand[i]
                out[pos[root]] += e * power
        return tuple(out)

    new_cops = {}
    for s in survivors:
        name = B.generators[s].name
        new_cops[name] = [(c, remap(lm), remap(rm))
                          for c, lm, rm in B.coproducts[name]]
    out = Bialgebra(B.prime, new_gens, (), new_cops)

    old_dims, new_dims = {}, {}
    for m in B.basis():
        d = B.degree_of(m)
        old_dims[d] = old_dims.get(d, 0) + 1
    for m in out.basis():
        d = out.degree_of(m)
        new_dims[d] = new_dims.get(d, 0) + 1
    if old_dims != new_dims:
        raise ValueError("normalization changed the graded dimension "
                         "(presentation is not of chain shape)")
    return out


# -- JSON interchange -------------------------------------------------------

def _check_keys(obj, allowed, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise SchemaError(f"{path}.{sorted(unknown)[0]}", "unknown field")


def _int_field(obj, key, path):
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"{path}.{key}", f"expected an integer, got {v!r}")
    return v


def mono_from_json(obj, names, path):
    """Parse {"gen": exponent, ...} into an exponent tuple."""
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected a monomial object, got {obj!r}")
    mono = [0] * len(names)
    index = {n: i for i, n in enumerate(names)}
    for name, e in obj.items():
        if name not in index:
            raise SchemaError(f"{path}.{name}", "unknown generator")
        if not isinstance(e, int) or isinstance(e, bool) or e < 1:
            raise SchemaError(f"{path}.{name}", f"exponent must be a positive integer, got {e!r}")
        mono[index[name]] = e
    return tuple(mono)


def mono_to_json(names, mono):
    return {n: e for n, e in zip(names, mono) if e}


def _gens_from_json(data, path):
    gens = data.get("generators")
    if not isinstance(gens, list):
        raise SchemaError(f"{path}.generators", "expected an array")
    out = []
    for i, g in enumerate(gens):
        gpath = f"{path}.generators[{i}]"
        _check_keys(g, ("name", "degree", "truncation"), gpath)
        name = g.get("name")
        if not isinstance(name, str) or not name:
            raise SchemaError(f"{gpath}.name", "expected a nonempty string")
        out.append(GeneratorDecl(name, _int_field(g, "degree", gpath),
                                 _int_field(g, "truncation", gpath)))
    return tuple(out)


def _rules_from_json(data, names, path):
    rules = data.get("rules", [])
    if not isinstance(rules, list):
        raise SchemaError(f"{path}.rules", "expected an array")
    out = []
    for i, r in enumerate(rules):
        rpath = f"{path}.rules[{i}]"
        _check_keys(r, ("source", "target"), rpath)
        src = r.get("source")
        if isinstance(src, list):
            if len(src) != 2 or not isinstance(src[0], str) \
                    or not isinstance(src[1], int) or isinstance(src[1], bool):
                raise SchemaError(f"{rpath}.source",
                                  'expected ["generator", exponent] or a monomial object')
            src = {src[0]: src[1]}
        source = mono_from_json(src, names, f"{rpath}.source")
        if "target" not in r:
            raise SchemaError(f"{rpath}.target", "missing field")
        t = r["target"]
        if t is None:
            out.append(RewriteRule(source, None))
            continue
        _check_keys(t, ("coeff", "monomial"), f"{rpath}.target")
        coeff = _int_field(t, "coeff", f"{rpath}.target")
        mono = mono_from_json(t.get("monomial", {}), names, f"{rpath}.target.monomial")
        out.append(RewriteRule(source, mono, coeff))
    return tuple(out)


def tensor_terms_from_json(arr, lnames, parse_right, path):
    """Parse [{"coeff":c,"left":{...},"right":...}, ...] coaction/coproduct terms."""
    if not isinstance(arr, list):
        raise SchemaError(path, "expected an array of tensor terms")
    out = []
    for i, t in enumerate(arr):
        tpath = f"{path}[{i}]"
        _check_keys(t, ("coeff", "left", "right"), tpath)
        coeff = _int_field(t, "coeff", tpath)
        left = mono_from_json(t.get("left", {}), lnames, f"{tpath}.left")
        if "right" not in t:
            raise SchemaError(f"{tpath}.right", "missing field")
        right = parse_right(t["right"], f"{tpath}.right")
        out.append((coeff, left, right))
    return out


def _validate_prime(data, path):
    if "prime" not in data:
        raise SchemaError(f"{path}.prime", "prime required")
    p = data["prime"]
    if not isinstance(p, int) or isinstance(p, bool) or p not in SUPPORTED_PRIMES:
        raise SchemaError(f"{path}.prime", f"prime required (one of {SUPPORTED_PRIMES}), got {p!r}")
    return p


def bialgebra_from_dict(data, path="$"):
    _check_keys(data, ("prime", "generators", "rules", "coproducts"), path)
    p = _validate_prime(data, path)
    gens = _gens_from_json(data, path)
    names = [g.name for g in gens]
    rules = _rules_from_json(data, names, path)
    cops = data.get("coproducts")
    if not isinstance(cops, dict):
        raise SchemaError(f"{path}.coproducts", "expected an object")
    table = {}
    for name, arr in cops.items():
        if name not in names:
            raise SchemaError(f"{path}.coproducts.{name}", "unknown generator")
        table[name] = tensor_terms_from_json(
            arr, names, lambda obj, pth: mono_from_json(obj, names, pth),
            f"{path}.coproducts.{name}")
    try:
        return Bialgebra(p, gens, rules, table)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def bialgebra_to_dict(B):
    names = [g.name for g in B.generators]
    rules = []
    for r in B.rules:
        support = [(i, e) for i, e in enumerate(r.source) if e]
        if len(support) == 1:
            src = [names[support[0][0]], support[0][1]]
        else:
            src = mono_to_json(names, r.source)
        tgt = None if r.target is None else \
            {"coeff": r.coeff, "monomial": mono_to_json(names, r.target)}
        rules.append({"source": src, "target": tgt})
    cops = {}
    for g in B.generators:
        cops[g.name] = [{"coeff": c, "left": mono_to_json(names, lm),
                         "right": mono_to_json(names, rm)}
                        for c, lm, rm in B.coproducts[g.name]]
    return {
        "prime": B.prime,
        "generators": [{"name": g.name, "degree": g.degree, "truncation": g.truncation}
                       for g in B.generators],
        "rules": rules,
        "coproducts": cops,
    }
