"""Comodules over a truncated-bialgebra H: coactions, coinvariants, tensors.

Two flavors share one interface (``labels``, ``degree_of``, ``coaction_vec``,
``verify``):

* ``AlgebraComodule`` -- the underlying module is itself a rewrite-form
  algebra M, and the coaction rho: M -> H (x) M is given on generators and
  extended multiplicatively.  Basis labels are the normal-form monomials
  of M.
* ``BasisComodule`` -- a plain graded F_p vector space with an explicit
  coaction table on basis labels (ints or strings).

Coactions are not required to preserve degree (the K-theory comodules do
not), only the counit and coassociativity laws; ``AlgebraComodule.verify``
additionally checks the coaction against every rewrite rule of M.

Coinvariants {x : rho(x) = 1 (x) x} are computed by Gaussian elimination,
either globally or one degree at a time, and returned as a reduced row
echelon basis in a canonical label order.

``quadric_comodule(n, J)`` builds the cell comodule of an n-2 dimensional
quadric over the quotient of the mod-2 Borel form of SO_n by a J-tuple:
labels 0..n-2 plus a primed middle label "m'" in even embedding dimension,
where b_{m'} is the coinvariant middle class (the image of h^m) and b_m
carries the coaction sum_{i=1}^{m} e_i (x) b_{m-i} + 1 (x) b_m inherited
from the second ruling.
"""

from __future__ import annotations

from . import _linalg
from .algebra import (Bialgebra, SchemaError, TensorElement, VerifyReport,
                      _check_keys, _int_field, bialgebra_from_dict,
                      bialgebra_to_dict, mono_from_json, mono_to_json,
                      tensor_terms_from_json, _gens_from_json,
                      _rules_from_json, Algebra)
from .jinv import (quotient_bialgebra, quotient_with_map, so_borel,
                   validate_jtuple)


def _label_key(label):
    if isinstance(label, bool):
        raise ValueError(f"bad label {label!r}")
    if isinstance(label, int):
        return (0, label, "")
    if isinstance(label, str):
        return (1, 0, label)
    return (2, 0, "") + tuple(_label_key(x) for x in label)


def label_str(label):
    if isinstance(label, tuple):
        return "(" + ",".join(label_str(x) for x in label) + ")"
    return str(label)


class _ComoduleBase:
    """Shared verification and display for both comodule flavors."""

    name = None

    def rank(self):
        return len(self.labels)

    def labels_by_degree(self):
        out = {}
        for lab in self.labels:
            out.setdefault(self.degree_of(lab), []).append(lab)
        return out

    def sorted_labels(self):
        return sorted(self.labels, key=lambda l: (self.degree_of(l), _label_key(l)))

    def coaction_str(self, label):
        H = self.H
        vec = self.coaction_vec(label)
        if not vec:
            return "0"
        bits = []
        for hm, lab in sorted(vec, key=lambda t: (H.degree_of(t[0]), t[0],
                                                  _label_key(t[1]))):
            c = vec[(hm, lab)]
            s = f"{H.monomial_str(hm)}⊗{self.label_str(lab)}"
            bits.append(s if c == 1 else f"{c}*{s}")
        return " + ".join(bits)

    def label_str(self, label):
        return label_str(label)

    def verify(self):
        report = VerifyReport()
        H = self.H
        p = H.prime
        unit = H.unit_mono
        for b in self.labels:
            vec = self.coaction_vec(b)
            counit = {}
            for (hm, lab), c in vec.items():
                e = H.counit(hm)
                if e:
                    counit[lab] = (counit.get(lab, 0) + c * e) % p
            counit = {l: c for l, c in counit.items() if c}
            if counit != {b: 1}:
                report.fail(f"counit law fails on {self.label_str(b)}")
            lhs = {}
            for (hm, lab), c in vec.items():
                for (h1, h2), d in H.coproduct_mono(hm).terms.items():
                    key = (h1, h2, lab)
                    lhs[key] = (lhs.get(key, 0) + c * d) % p
            rhs = {}
            for (hm, lab), c in vec.items():
                for (h2, lab2), d in self.coaction_vec(lab).items():
                    key = (hm, h2, lab2)
                    rhs[key] = (rhs.get(key, 0) + c * d) % p
            lhs = {k: c for k, c in lhs.items() if c}
            rhs = {k: c for k, c in rhs.items() if c}
            if lhs != rhs:
                report.fail(f"coassociativity fails on {self.label_str(b)}")
        self._verify_extra(report)
        return report

    def _verify_extra(self, report):
        pass


class BasisComodule(_ComoduleBase):
    """A comodule given by an explicit coaction table on basis labels."""

    def __init__(self, H, labels, degrees, coaction, name=None):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate labels")
        self.H = H
        self.labels = labels
        self.name = name
        self._degrees = dict(degrees)
        for lab in labels:
            if lab not in self._degrees:
                raise ValueError(f"missing degree for label {label_str(lab)}")
        self._table = {}
        p = H.prime
        for lab in labels:
            acc = {}
            for c, hm, lab2 in coaction.get(lab, ()):
                if lab2 not in self._degrees:
                    raise ValueError(f"coaction of {label_str(lab)} hits unknown "
                                     f"label {label_str(lab2)}")
                k, nf = H.normalize(hm)
                c = c * k % p
                if nf is None or not c:
                    continue
                key = (nf, lab2)
                acc[key] = (acc.get(key, 0) + c) % p
            self._table[lab] = {k: c for k, c in acc.items() if c}

    def degree_of(self, label):
        return self._degrees[label]

    def coaction_vec(self, label):
        return self._table[label]


class AlgebraComodule(_ComoduleBase):
    """A rewrite-form algebra M with a multiplicative H-coaction."""

    def __init__(self, H, module, coaction, name=None):
        if H.prime != module.prime:
            raise ValueError("comodule and bialgebra must share the prime")
        coaction = dict(coaction)
        names = {g.name for g in module.generators}
        unknown = set(coaction) - names
        if unknown:
            raise ValueError(f"coaction given for unknown generators {sorted(unknown)}")
        missing = names - set(coaction)
        if missing:
            raise ValueError(f"missing coaction for generators {sorted(missing)}")
        self.H = H
        self.module = module
        self.name = name
        self._gen_table = {}
        for gname, terms in coaction.items():
            t = TensorElement(H, module,
                              {(tuple(hm), tuple(mm)): c for c, hm, mm in terms})
            self._gen_table[gname] = t
        self.labels = module.basis()
        self._raw_cache = {}

    def degree_of(self, label):
        return self.module.degree_of(label)

    def label_str(self, label):
        return self.module.monomial_str(label)

    def coaction_raw(self, mono):
        """rho on a (possibly non-normal) exponent tuple of M, multiplicatively."""
        mono = tuple(mono)
        try:
            return self._raw_cache[mono]
        except KeyError:
            pass
        out = TensorElement(self.H, self.module,
                            {(self.H.unit_mono, self.module.unit_mono): 1})
        for i, e in enumerate(mono):
            if e:
                out = out * self._gen_table[self.module.generators[i].name] ** e
        self._raw_cache[mono] = out
        return out

    def coaction_vec(self, label):
        return self.coaction_raw(label).terms

    def coaction(self, x):
        """rho of an Element of M, as a TensorElement over (H, M)."""
        out = TensorElement(self.H, self.module, {})
        for m, c in x.terms.items():
            out = out + c * self.coaction_raw(m)
        return out

    def _verify_extra(self, report):
        M = self.module
        for rule in M._compiled:
            src = self.coaction_raw(rule.source)
            tgt = TensorElement(self.H, M, {}) if rule.target is None \
                else rule.coeff * self.coaction_raw(rule.target)
            if src != tgt:
                names = [g.name for g in M.generators]
                from .algebra import _fmt_mono
                report.fail(
                    f"coaction does not respect {_fmt_mono(names, rule.source)} -> "
                    f"{'0' if rule.target is None else _fmt_mono(names, rule.target)}")


def verify_comodule(M):
    return M.verify()


# -- coinvariants -------------------------------------------------------------


def coinvariants(M, degree=None):
    """A canonical basis of {x : rho(x) = 1 (x) x}, as {label: coeff} dicts.

    With ``degree`` given, only labels of that degree enter the computation
    (exact for degree-preserving coactions).  Vectors are reduced row echelon
    over the labels in (degree, label) order, sorted by pivot.
    """
    H = M.H
    p = H.prime
    cols = [l for l in M.sorted_labels()
            if degree is None or M.degree_of(l) == degree]
    if not cols:
        return []
    rows_index = {}
    columns = []
    for b in cols:
        vec = dict(M.coaction_vec(b))
        key = (H.unit_mono, b)
        vec[key] = (vec.get(key, 0) - 1) % p
        columns.append({k: c for k, c in vec.items() if c})
        for k in columns[-1]:
            rows_index.setdefault(k, len(rows_index))
    matrix = [[0] * len(cols) for _ in range(len(rows_index))]
    for j, colvec in enumerate(columns):
        for k, c in colvec.items():
            matrix[rows_index[k]][j] = c
    kernel = _linalg.kernel_basis(matrix, len(cols), p)
    reduced, _ = _linalg.rref(kernel, len(cols), p)
    out = [{cols[j]: c for j, c in enumerate(v) if c} for v in reduced]
    out.sort(key=lambda vec: min((M.degree_of(l), _label_key(l)) for l in vec))
    return out


# -- tensor products and morphisms --------------------------------------------


def tensor_comodule(M, N, name=None):
    """M (x) N with rho(a,b) = (mult_H (x) id)(rho_M(a) (x) rho_N(b))."""
    if M.H != N.H:
        raise ValueError("tensor factors must live over the same bialgebra")
    H = M.H
    p = H.prime
    labels = [(a, b) for a in M.labels for b in N.labels]
    degrees = {(a, b): M.degree_of(a) + N.degree_of(b) for a, b in labels}
    coaction = {}
    for a, b in labels:
        acc = {}
        for (h1, a2), c1 in M.coaction_vec(a).items():
            for (h2, b2), c2 in N.coaction_vec(b).items():
                k, hm = H.mul_mono(h1, h2)
                if hm is None:
                    continue
                key = (hm, (a2, b2))
                acc[key] = (acc.get(key, 0) + c1 * c2 * k) % p
        coaction[(a, b)] = [(c, hm, lab) for (hm, lab), c in acc.items() if c]
    if name is None and M.name and N.name:
        name = f"{M.name}⊗{N.name}"
    return BasisComodule(H, labels, degrees, coaction, name=name)


def is_comodule_morphism(M, N, f):
    """Whether the linear map f: M -> N commutes with the coactions.

    ``f`` maps each M-label to a {N-label: coeff} dict (absent labels map to
    zero).  Returns (ok, offending M-label or None).
    """
    if M.H != N.H:
        raise ValueError("morphisms require a common bialgebra")
    p = M.H.prime

    def clean(d):
        return {k: c % p for k, c in d.items() if c % p}

    for b in M.labels:
        lhs = {}
        for nl, c in f.get(b, {}).items():
            for (hm, nl2), d in N.coaction_vec(nl).items():
                key = (hm, nl2)
                lhs[key] = (lhs.get(key, 0) + c * d) % p
        rhs = {}
        for (hm, ml), c in M.coaction_vec(b).items():
            for nl, d in f.get(ml, {}).items():
                key = (hm, nl)
                rhs[key] = (rhs.get(key, 0) + c * d) % p
        if clean(lhs) != clean(rhs):
            return False, b
    return True, None


def restrict_comodule(M, J, name=None):
    """The same underlying space with the coaction pushed through the quotient
    of M.H by a J-tuple (coaction terms hitting the bi-ideal drop out)."""
    Hq, remap = quotient_with_map(M.H, J)
    degrees = {lab: M.degree_of(lab) for lab in M.labels}
    coaction = {}
    for lab in M.labels:
        terms = []
        for (hm, lab2), c in M.coaction_vec(lab).items():
            h2 = remap(hm)
            if h2 is not None:
                terms.append((c, h2, lab2))
        coaction[lab] = terms
    if name is None and M.name:
        name = f"{M.name} over J={list(J)}"
    return BasisComodule(Hq, M.labels, degrees, coaction, name=name)


# -- quadric cell comodules ----------------------------------------------------


def _ebar(H, i):
    """The image of e_i in a quotient of the Borel form of SO_n, or None."""
    d, l = i, 0
    while d % 2 == 0:
        d //= 2
        l += 1
    try:
        idx = H.index(f"e_{d}")
    except ValueError:
        return None
    if 2 ** l >= H.generators[idx].truncation:
        return None
    return tuple(2 ** l if j == idx else 0 for j in range(H.ngens))


def quadric_comodule(n, jtuple):
    """The cell comodule of a quadric of dimension n-2 with the given J-tuple."""
    full = so_borel(n)
    jtuple = validate_jtuple(full, jtuple)
    H = quotient_bialgebra(full, jtuple)
    m = (n - 1) // 2
    even = n % 2 == 0
    primed = f"{m}'"
    labels = list(range(0, n - 1))
    if even:
        labels.insert(m + 1, primed)
    degrees = {lab: (m if lab == primed else lab) for lab in labels}
    unit = H.unit_mono
    coaction = {}
    for lab in labels:
        if lab == primed or lab < m:
            coaction[lab] = [(1, unit, lab)]
            continue
        k = lab - m
        terms = [(1, unit, lab)]
        for i in range(k + 1, m + 1):
            hm = _ebar(H, i)
            if hm is not None:
                terms.append((1, hm, m + k - i))
        if even and k >= 1:
            hm = _ebar(H, k)
            if hm is not None:
                terms.append((1, hm, primed))
        coaction[lab] = terms
    return BasisComodule(H, labels, degrees, coaction,
                         name=f"quadric(n={n}, J={list(jtuple)})")


# -- JSON interchange ----------------------------------------------------------


def comodule_from_dict(data, path="$"):
    _check_keys(data, ("flavor", "hopf", "generators", "rules", "labels",
                       "degrees", "coaction"), path)
    flavor = data.get("flavor")
    if flavor not in ("algebra", "basis"):
        raise SchemaError(f"{path}.flavor", f'expected "algebra" or "basis", got {flavor!r}')
    if "hopf" not in data:
        raise SchemaError(f"{path}.hopf", "missing field")
    H = bialgebra_from_dict(data["hopf"], f"{path}.hopf")
    hnames = [g.name for g in H.generators]
    coaction = data.get("coaction")
    if not isinstance(coaction, dict):
        raise SchemaError(f"{path}.coaction", "expected an object")

    if flavor == "algebra":
        for key in ("labels", "degrees"):
            if key in data:
                raise SchemaError(f"{path}.{key}", 'unknown field for flavor "algebra"')
        gens = _gens_from_json(data, path)
        mnames = [g.name for g in gens]
        rules = _rules_from_json(data, mnames, path)
        try:
            module = Algebra(H.prime, gens, rules)
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from None
        table = {}
        for name, arr in coaction.items():
            if name not in mnames:
                raise SchemaError(f"{path}.coaction.{name}", "unknown generator")
            table[name] = tensor_terms_from_json(
                arr, hnames,
                lambda obj, pth: mono_from_json(obj, mnames, pth),
                f"{path}.coaction.{name}")
        try:
            return AlgebraComodule(H, module, table)
        except ValueError as exc:
            raise SchemaError(path, str(exc)) from None

    for key in ("generators", "rules"):
        if key in data:
            raise SchemaError(f"{path}.{key}", 'unknown field for flavor "basis"')
    raw_labels = data.get("labels")
    if not isinstance(raw_labels, list) or not raw_labels:
        raise SchemaError(f"{path}.labels", "expected a nonempty array")
    labels = []
    for i, lab in enumerate(raw_labels):
        if isinstance(lab, bool) or not isinstance(lab, (int, str)):
            raise SchemaError(f"{path}.labels[{i}]",
                              f"labels must be integers or strings, got {lab!r}")
        labels.append(lab)
    degs = data.get("degrees")
    if not isinstance(degs, list) or len(degs) != len(labels):
        raise SchemaError(f"{path}.degrees",
                          "expected an array aligned with labels")
    degrees = {}
    for i, d in enumerate(degs):
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise SchemaError(f"{path}.degrees[{i}]", f"expected a degree >= 0, got {d!r}")
        degrees[labels[i]] = d
    by_str = {label_str(lab): lab for lab in labels}
    if len(by_str) != len(labels):
        raise SchemaError(f"{path}.labels", "labels collide as strings")

    def parse_label(obj, pth):
        key = label_str(obj) if isinstance(obj, (int, str)) else None
        if key is None or key not in by_str:
            raise SchemaError(pth, f"unknown label {obj!r}")
        return by_str[key]

    table = {}
    for key, arr in coaction.items():
        if key not in by_str:
            raise SchemaError(f"{path}.coaction.{key}", "unknown label")
        table[by_str[key]] = tensor_terms_from_json(
            arr, hnames, parse_label, f"{path}.coaction.{key}")
    try:
        return BasisComodule(H, labels, degrees, table)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def comodule_to_dict(M):
    hnames = [g.name for g in M.H.generators]
    out = {"flavor": "basis", "hopf": bialgebra_to_dict(M.H)}
    if isinstance(M, AlgebraComodule):
        mnames = [g.name for g in M.module.generators]
        out["flavor"] = "algebra"
        out["generators"] = [{"name": g.name, "degree": g.degree,
                              "truncation": g.truncation}
                             for g in M.module.generators]
        rules = []
        for r in M.module.rules:
            support = [(i, e) for i, e in enumerate(r.source) if e]
            if len(support) == 1:
                src = [mnames[support[0][0]], support[0][1]]
            else:
                src = mono_to_json(mnames, r.source)
            tgt = None if r.target is None else \
                {"coeff": r.coeff, "monomial": mono_to_json(mnames, r.target)}
            rules.append({"source": src, "target": tgt})
        out["rules"] = rules
        out["coaction"] = {
            g.name: [{"coeff": c, "left": mono_to_json(hnames, hm),
                      "right": mono_to_json(mnames, mm)}
                     for (hm, mm), c in sorted(M._gen_table[g.name].terms.items())]
            for g in M.module.generators}
        return out
    out["labels"] = list(M.labels)
    out["degrees"] = [M.degree_of(l) for l in M.labels]
    out["coaction"] = {
        label_str(lab): [{"coeff": c, "left": mono_to_json(hnames, hm),
                          "right": lab2}
                         for (hm, lab2), c in sorted(
                             M.coaction_vec(lab).items(),
                             key=lambda t: (t[0][0], _label_key(t[0][1])))]
        for lab in M.labels}
    return out
