"""The dual algebra of a finite-dimensional bialgebra and its block structure.

H^dual carries the convolution product (f * g)(m) = (f (x) g)(Delta m); in
the dual basis {f_m} of the monomial basis the structure constants are the
coproduct coefficients of H, so everything here is exact linear algebra over
F_p.  Evaluation at a group-like element of H is an algebra character, which
is how blocks get their names: the unique block whose idempotent evaluates
to 1 on 1_H is the Tate block, and every one-dimensional block is evaluation
at some group-like.

``decompose`` finds the block (central primitive idempotent) decomposition:

* fast path -- some dual-basis functional generates H^dual, its minimal
  polynomial factors by exhaustive trial division, and the factor CRT yields
  the idempotents;
* fallback -- enumerate all of F_p^dim, keep the central idempotents, and
  take the minimal ones; refuses politely above ``max_candidates``.

Univariate polynomials over F_p are plain coefficient lists (ascending,
normalized); the factorizer walks monic divisors in (degree, coefficient)
order, so factor lists are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import _linalg

_DECOMPOSE_BOUND = 2_000_000


# -- univariate polynomials over F_p (ascending coefficient lists) ------------


def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [x % p for x in a]
    inv = pow(b[-1], -1, p)
    quot = [0] * max(0, len(a) - len(b) + 1)
    for i in range(len(quot) - 1, -1, -1):
        c = a[i + len(b) - 1] * inv % p
        if c:
            quot[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _ptrim(quot), _ptrim(a)


def pmonic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def pegcd(a, b, p):
    """(g, s, t) with s a + t b = g, g monic."""
    r0, r1 = [x % p for x in a], [x % p for x in b]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while _ptrim(list(r1)):
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _ptrim([(x - y) % p for x, y in
                             itertools.zip_longest(s0, pmul(q, s1, p), fillvalue=0)])
        t0, t1 = t1, _ptrim([(x - y) % p for x, y in
                             itertools.zip_longest(t0, pmul(q, t1, p), fillvalue=0)])
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    scale = lambda v: [x * inv % p for x in v]
    return scale(r0), scale(s0), scale(t0)


def factor_poly(a, p):
    """Irreducible factorization by trial division, smallest divisors first.

    Monic candidates are tried in (degree, ascending coefficient tuple)
    order, so the result, a list of (monic factor, multiplicity), is unique
    and deterministic.  The constant leading unit is discarded.
    """
    a = pmonic([x % p for x in a], p)
    if len(a) <= 1:
        raise ValueError("cannot factor a constant polynomial")
    factors = []
    d = 1
    while len(a) > 1:
        if d > (len(a) - 1) // 2:
            # no divisor of degree <= deg/2 remains, so what is left is irreducible
            factors.append((a, 1))
            break
        for tail in itertools.product(range(p), repeat=d):
            cand = list(tail) + [1]
            mult = 0
            while True:
                q, r = pdivmod(a, cand, p)
                if r:
                    break
                a, mult = q, mult + 1
            if mult:
                factors.append((cand, mult))
            if len(a) == 1:
                break
        d += 1
    return factors


def poly_str(coeffs, var="y"):
    """Descending-power rendering: [0, 2, 0, 1] -> 'y^3 + 2*y'."""
    if not coeffs:
        return "0"
    bits = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if not c:
            continue
        if d == 0:
            bits.append(str(c))
        else:
            t = var if d == 1 else f"{var}^{d}"
            bits.append(t if c == 1 else f"{c}*{t}")
    return " + ".join(bits)


# -- the dual algebra ----------------------------------------------------------


class DualAlgebra:
    """H^dual with the convolution product, in the dual monomial basis."""

    def __init__(self, B):
        self.B = B
        self.basis = B.basis()
        self.dim = len(self.basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self._tables = None

    def _table(self):
        # per basis monomial m_k: the coproduct terms as (i, j, coeff)
        if self._tables is None:
            tables = []
            for m in self.basis:
                terms = []
                for (lm, rm), c in self.B.coproduct_mono(m).terms.items():
                    terms.append((self.index[lm], self.index[rm], c))
                tables.append(terms)
            self._tables = tables
        return self._tables

    def unit(self):
        """The counit of H, which is the unit of H^dual."""
        v = [0] * self.dim
        v[self.index[self.B.unit_mono]] = 1
        return tuple(v)

    def dual_basis_vector(self, mono):
        v = [0] * self.dim
        v[self.index[tuple(mono)]] = 1
        return tuple(v)

    def multiply(self, u, v):
        p = self.B.prime
        out = [0] * self.dim
        for k, terms in enumerate(self._table()):
            acc = 0
            for i, j, c in terms:
                if u[i] and v[j]:
                    acc += u[i] * v[j] * c
            out[k] = acc % p
        return tuple(out)

    def evaluate(self, u, x):
        """Evaluate the functional u on an Element (or monomial) of H."""
        p = self.B.prime
        if hasattr(x, "terms"):
            return sum(u[self.index[m]] * c for m, c in x.terms.items()) % p
        k, nf = self.B.normalize(x)
        return u[self.index[nf]] * k % p if nf is not None else 0

    def is_central(self, u):
        units = [self.dual_basis_vector(m) for m in self.basis]
        return all(self.multiply(u, w) == self.multiply(w, u) for w in units)

    def minimal_polynomial(self, v):
        """Monic minimal polynomial of v, ascending coefficient list."""
        p = self.B.prime
        powers = [self.unit()]
        ech = _linalg.Echelon(self.dim, p)
        ech.add(list(powers[0]))
        cur = powers[0]
        while True:
            cur = self.multiply(cur, v)
            if not ech.add(list(cur)):
                rows = [[powers[i][r] for i in range(len(powers))]
                        for r in range(self.dim)]
                sol = _linalg.solve(rows, list(cur), len(powers), p)
                return [(-c) % p for c in sol] + [1]
            powers.append(cur)

    def substitute(self, coeffs, v):
        """Evaluate a polynomial (ascending coeffs) at v inside H^dual."""
        p = self.B.prime
        out = [0] * self.dim
        power = self.unit()
        for i, c in enumerate(coeffs):
            if c % p:
                out = [(x + c * y) % p for x, y in zip(out, power)]
            if i + 1 < len(coeffs):
                power = self.multiply(power, v)
        return tuple(out)


def dual_presentation(B):
    """Present H^dual as F_p[y]/(minimal polynomial) when some dual-basis
    functional generates it; returns the ascending monic coefficient list."""
    D = DualAlgebra(B)
    for m in D.basis:
        if m == B.unit_mono:
            continue
        mu = D.minimal_polynomial(D.dual_basis_vector(m))
        if len(mu) - 1 == D.dim:
            return mu
    raise ValueError("dual algebra is not generated by a single "
                     "dual-basis functional")


@dataclass
class Block:
    dim: int
    label: str
    idempotent: tuple


def _block_dim(D, e):
    rows = [list(D.multiply(e, D.dual_basis_vector(m))) for m in D.basis]
    return _linalg.rank(rows, D.dim, D.B.prime)


def _label_blocks(D, idempotents):
    """Sort blocks and name them: Tate first, then by (dim, group-like)."""
    B = D.B
    try:
        grouplikes = B.find_grouplikes()
    except ValueError:
        grouplikes = []
    blocks = []
    for e in idempotents:
        dim = _block_dim(D, e)
        tate = D.evaluate(e, B.one()) == 1
        gs = [g for g in grouplikes if D.evaluate(e, g) == 1]
        if tate:
            label = "tate"
        elif dim == 1 and len(gs) == 1:
            label = f"g:{gs[0]}"
        else:
            label = f"dim:{dim}"
        blocks.append(Block(dim, label, tuple(e)))
    blocks.sort(key=lambda b: (not b.label == "tate", b.dim, b.label, b.idempotent))
    return blocks


def decompose(B, max_candidates=_DECOMPOSE_BOUND):
    """Block decomposition of H^dual as central primitive idempotents.

    Tries the single-generator CRT route first, then exhaustive search; the
    result always satisfies sum(e_i) = 1, e_i e_j = 0 and is ordered with the
    Tate block first.
    """
    D = DualAlgebra(B)
    p = B.prime

    for m in D.basis:
        if m == B.unit_mono:
            continue
        v = D.dual_basis_vector(m)
        mu = D.minimal_polynomial(v)
        if len(mu) - 1 != D.dim:
            continue
        idempotents = []
        for q, a in factor_poly(mu, p):
            qa = q
            for _ in range(a - 1):
                qa = pmul(qa, q, p)
            cofactor, rem = pdivmod(mu, qa, p)
            assert not rem
            g, s, _t = pegcd(cofactor, qa, p)
            assert g == [1], "minimal polynomial factors are not coprime"
            e = D.substitute(pmul(s, cofactor, p), v)
            idempotents.append(e)
        _sanity_check(D, idempotents)
        return _label_blocks(D, idempotents)

    if p ** D.dim > max_candidates:
        raise ValueError(
            f"exhaustive idempotent search over bound "
            f"(p^dim = {p ** D.dim} > {max_candidates} candidates) and no "
            f"single dual-basis functional generates the dual algebra")
    central = []
    for vec in itertools.product(range(p), repeat=D.dim):
        if any(vec) and D.multiply(vec, vec) == vec and D.is_central(vec):
            central.append(vec)
    atoms = [e for e in central
             if not any(f != e and D.multiply(e, f) == f for f in central)]
    _sanity_check(D, atoms)
    return _label_blocks(D, atoms)


def _sanity_check(D, idempotents):
    total = [0] * D.dim
    for e in idempotents:
        total = [(x + y) % D.B.prime for x, y in zip(total, e)]
    if tuple(total) != D.unit():
        raise AssertionError("block idempotents do not sum to the unit")
    for i, e in enumerate(idempotents):
        if D.multiply(e, e) != tuple(e):
            raise AssertionError("block element is not idempotent")
        for f in idempotents[i + 1:]:
            if any(D.multiply(e, f)) or any(D.multiply(f, e)):
                raise AssertionError("block idempotents are not orthogonal")


def tate_block(blocks):
    for b in blocks:
        if b.label == "tate":
            return b
    raise ValueError("no Tate block found")
