"""Weighted chain complexes of the three graded superalgebra structures.

A chain word of length m is a product of m letters, each letter a basis
monomial of one graded component.  In the desuspended picture a letter of
grade g behaves with parity (g+1) mod 2: odd-grade letters commute
(symmetric powers), even-grade letters anticommute (exterior powers).  The
boundary pairs letters off through the structure bracket:

    d(x_1 ... x_m) = sum_{i<j} eps_ij (-1)^{p(x_i)} [x_i, x_j] x_1 ...
                     ^x_i ... ^x_j ... x_m

where p is the desuspension parity and eps_ij is the Koszul sign of moving
x_i then x_j to the front.  For a word of grade-0 letters this reduces to
the classical Chevalley-Eilenberg boundary sum_{i<j} (-1)^{i+j} [x_i,x_j] ^
rest.  The boundary preserves the total weight (= sum of letter grades) and
drops m by one; homology is H_m = ker d_m / im d_{m+1}.
"""

from fractions import Fraction
from math import comb

import itertools

from .exact import (
    ParamPolynomial,
    PolyFraction,
    PolyMatrix,
    Randomized,
    Specialized,
    matrix_rank,
)
from .superalg import (
    FORM,
    MULTIVECTOR,
    GradedComponent,
    GradedElement,
    extended_bracket,
    form_bracket,
    schouten_bracket,
)

TANGENT = "tangent"
COTANGENT = "cotangent"
EXTENDED = "extended"


class ComplexKind:
    """Selects the letter alphabet and the structure bracket."""

    __slots__ = ("variant",)
    VARIANTS = (TANGENT, COTANGENT, EXTENDED)

    def __init__(self, variant):
        if isinstance(variant, ComplexKind):
            variant = variant.variant
        variant = str(variant).lower()
        if variant not in self.VARIANTS:
            raise ValueError(f"unknown complex kind {variant!r}")
        self.variant = variant

    def components(self):
        """Letter components, ordered consistently with word sorting."""
        if self.variant == TANGENT:
            return tuple(GradedComponent(MULTIVECTOR, a) for a in range(1, 5))
        if self.variant == COTANGENT:
            return tuple(GradedComponent(FORM, p) for p in range(5))
        return tuple(GradedComponent(FORM, p) for p in range(5)) + \
            (GradedComponent(MULTIVECTOR, 1),)

    def bracket(self, g, u, v):
        if self.variant == TANGENT:
            return schouten_bracket(g, u, v)
        if self.variant == COTANGENT:
            return form_bracket(g, u, v)
        return extended_bracket(g, u, v)

    def __eq__(self, other):
        if not isinstance(other, ComplexKind):
            return NotImplemented
        return self.variant == other.variant

    def __hash__(self):
        return hash(self.variant)

    def __str__(self):
        return self.variant

    def __repr__(self):
        return f"ComplexKind({self.variant})"


def _as_kind(kind):
    return kind if isinstance(kind, ComplexKind) else ComplexKind(kind)


# ---------------------------------------------------------------------------
# signatures and chain bases

# A letter is (component, index-tuple); words sort by this key.


def _letter_key(letter):
    comp, idx = letter
    return (comp.species, comp.degree, idx)


def _occupancy_dim(comp, count):
    if comp.word_parity == 1:
        return comb(comp.dimension, count)
    return comb(comp.dimension + count - 1, count)


class WeightSignature:
    """How many letters of each component a word uses."""

    __slots__ = ("occupancy",)

    def __init__(self, occupancy):
        occ = tuple((comp, int(k)) for comp, k in occupancy if k)
        for comp, k in occ:
            if k < 0:
                raise ValueError("negative occupancy")
            if comp.word_parity == 1 and k > comp.dimension:
                raise ValueError(
                    f"{comp!r}: {k} anticommuting letters exceed dimension")
        self.occupancy = occ

    @property
    def m(self):
        return sum(k for _, k in self.occupancy)

    @property
    def weight(self):
        return sum(k * comp.grade for comp, k in self.occupancy)

    def dimension(self):
        out = 1
        for comp, k in self.occupancy:
            out *= _occupancy_dim(comp, k)
        return out

    def words(self):
        """All canonical words with this occupancy, deterministic order."""
        per_component = []
        for comp, k in self.occupancy:
            letters = tuple((comp, idx) for idx in comp.basis())
            if comp.word_parity == 1:
                chunk = list(itertools.combinations(letters, k))
            else:
                chunk = list(itertools.combinations_with_replacement(letters, k))
            per_component.append(chunk)
        out = []
        for pieces in itertools.product(*per_component):
            word = tuple(itertools.chain.from_iterable(pieces))
            out.append(word)
        return out

    def __eq__(self, other):
        if not isinstance(other, WeightSignature):
            return NotImplemented
        return self.occupancy == other.occupancy

    def __hash__(self):
        return hash(self.occupancy)

    def __repr__(self):
        inner = ", ".join(f"{comp.species}^{comp.degree}:{k}"
                          for comp, k in self.occupancy)
        return f"WeightSignature({inner})"


def enumerate_signatures(kind, weight, m):
    """All occupancy solutions of (sum counts = m, sum count*grade = weight).

    The empty word (m = 0, weight 0) counts as the scalar chain only for
    the tangent and extended structures; the cotangent chain space is empty
    in non-negative weights.
    """
    kind = _as_kind(kind)
    if m < 0:
        return []
    comps = kind.components()
    grades = [c.grade for c in comps]
    out = []

    def recurse(pos, left_m, left_w, chosen):
        if pos == len(comps):
            if left_m == 0 and left_w == 0:
                out.append(WeightSignature(tuple(chosen)))
            return
        rest = grades[pos:]
        lo = min(rest) * left_m
        hi = max(rest) * left_m
        if not (min(lo, hi) <= left_w <= max(lo, hi)):
            return
        comp = comps[pos]
        g = comp.grade
        cap = left_m
        if comp.word_parity == 1:
            cap = min(cap, comp.dimension)
        if g > 0:
            cap = min(cap, left_w // g if left_w >= 0 else 0)
        elif g < 0:
            cap = min(cap, (-left_w) // (-g) if left_w <= 0 else 0)
        for k in range(cap + 1):
            chosen.append((comp, k))
            recurse(pos + 1, left_m - k, left_w - k * g, chosen)
            chosen.pop()

    recurse(0, m, weight, [])
    if kind.variant == COTANGENT:
        out = [s for s in out if s.m > 0]
    return out


class WeightedChainBasis:
    """Ordered basis of one chain space C_m in a fixed weight."""

    __slots__ = ("kind", "weight", "m", "signatures", "words", "index")

    def __init__(self, kind, weight, m):
        self.kind = _as_kind(kind)
        self.weight = weight
        self.m = m
        self.signatures = tuple(enumerate_signatures(self.kind, weight, m))
        words = []
        for sig in self.signatures:
            words.extend(sig.words())
        self.words = tuple(words)
        self.index = {w: i for i, w in enumerate(self.words)}

    @property
    def dimension(self):
        return len(self.words)

    def word_str(self, word):
        if not word:
            return "1"
        return " ".join(comp.monomial_str(idx) for comp, idx in word)


def chain_basis(kind, weight, m):
    return WeightedChainBasis(kind, weight, m)


# ---------------------------------------------------------------------------
# boundary matrices


def _sorted_word(letters):
    """Koszul sign and canonical form, or (0, None) when an anticommuting
    letter repeats."""
    arr = list(letters)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and _letter_key(arr[j - 1]) > _letter_key(arr[j]):
            if arr[j - 1][0].word_parity and arr[j][0].word_parity:
                sign = -sign
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            j -= 1
    for a, b in zip(arr, arr[1:]):
        if a == b and a[0].word_parity == 1:
            return 0, None
    return sign, tuple(arr)


class _BoundaryBuilder:
    """Shared bracket cache for assembling all d_m of one (algebra, kind)."""

    __slots__ = ("g", "kind", "cache")

    def __init__(self, g, kind):
        self.g = g
        self.kind = _as_kind(kind)
        self.cache = {}

    def pair_bracket(self, li, lj):
        key = (li, lj)
        got = self.cache.get(key)
        if got is None:
            u = GradedElement.monomial(li[0], li[1])
            v = GradedElement.monomial(lj[0], lj[1])
            res = self.kind.bracket(self.g, u, v)
            # the bracket must land in the summed grade (weight preservation)
            assert res.component.grade == li[0].grade + lj[0].grade
            got = [((res.component, idx), res.coeffs[idx])
                   for idx in sorted(res.coeffs)]
            self.cache[key] = got
        return got

    def fraction_columns(self, weight, m, basis_m=None, basis_prev=None):
        """Raw differential as {column: {row: PolyFraction}}.

        Unlike the cleared matrix, these columns compose: the chain-map
        identity d_{m} after d_{m+1} = 0 only holds before clearing.
        """
        if basis_m is None:
            basis_m = chain_basis(self.kind, weight, m)
        if basis_prev is None:
            basis_prev = chain_basis(self.kind, weight, m - 1)
        columns = {}
        for col, word in enumerate(basis_m.words):
            pars = [letter[0].word_parity for letter in word]
            prefix = [0]
            for p in pars:
                prefix.append(prefix[-1] + p)
            acc = {}
            for i in range(len(word)):
                for j in range(i + 1, len(word)):
                    eps = 1
                    if pars[i] and prefix[i] % 2:
                        eps = -eps
                    if pars[j] and (prefix[j] - pars[i]) % 2:
                        eps = -eps
                    if pars[i]:
                        eps = -eps
                    rest = word[:i] + word[i + 1:j] + word[j + 1:]
                    for letter, coeff in self.pair_bracket(word[i], word[j]):
                        sign, target = _sorted_word((letter,) + rest)
                        if sign == 0:
                            continue
                        row = basis_prev.index[target]
                        v = coeff * (eps * sign)
                        cur = acc.get(row)
                        acc[row] = v if cur is None else cur + v
            entries = {r: v for r, v in acc.items() if not v.is_zero()}
            if entries:
                columns[col] = entries
        return columns

    def matrix(self, weight, m, basis_m=None, basis_prev=None):
        if basis_m is None:
            basis_m = chain_basis(self.kind, weight, m)
        if basis_prev is None:
            basis_prev = chain_basis(self.kind, weight, m - 1)
        columns = self.fraction_columns(weight, m, basis_m, basis_prev)
        return _cleared_matrix(basis_prev.dimension, basis_m.dimension, columns)


def _monomial_exponents(p):
    (e,), = (list(p.terms.keys()),)
    return dict(zip(p.vars, e))


def _cleared_matrix(rows, cols, columns):
    """Clear PolyFraction denominators column by column.

    Multiplying a column by a nonzero monomial (a product of declared
    nonzero parameters) changes neither rank nor kernel dimension on the
    locus where those parameters do not vanish.
    """
    entries = {}
    for col, by_row in columns.items():
        lcm = {}
        for v in by_row.values():
            if not v.den.is_constant():
                for var, e in _monomial_exponents(v.den).items():
                    lcm[var] = max(lcm.get(var, 0), e)
        for row, v in by_row.items():
            poly = v.num
            if lcm:
                mult = dict(lcm)
                if not v.den.is_constant():
                    for var, e in _monomial_exponents(v.den).items():
                        mult[var] -= e
                mult = {var: e for var, e in mult.items() if e}
                if mult:
                    vs = tuple(sorted(mult))
                    mono = ParamPolynomial(
                        vs, {tuple(mult[x] for x in vs): Fraction(1)})
                    poly = poly * mono
            entries[(row, col)] = poly
    return PolyMatrix(rows, cols, entries)


def boundary_matrix(kind, weight, m, algebra):
    """Matrix of d_m : C_m -> C_{m-1} with denominators cleared."""
    return _BoundaryBuilder(algebra, kind).matrix(weight, m)


# ---------------------------------------------------------------------------
# reports


class BettiReport:
    """Rows (m, SpaD, KerD, Bett) of one weighted complex."""

    __slots__ = ("kind", "algebra_label", "source", "ident", "params",
                 "weight", "mode", "rows", "euler", "specialization")

    def __init__(self, kind, algebra, weight, mode, rows, specialization=None):
        self.kind = _as_kind(kind)
        self.algebra_label = algebra.label
        self.source, self.ident = _split_label(algebra.label)
        self.params = list(algebra.params)
        self.weight = weight
        self.mode = mode
        self.rows = [tuple(r) for r in rows]
        self.euler = sum((-1) ** m * dim for m, dim, _, _ in self.rows)
        self.specialization = dict(specialization) if specialization else None

    def row(self, m):
        for r in self.rows:
            if r[0] == m:
                return r
        raise KeyError(m)

    def column(self, name):
        pos = {"m": 0, "dim": 1, "ker": 2, "betti": 3}[name]
        return [r[pos] for r in self.rows]

    def to_json(self):
        mode = {"variant": self.mode.variant}
        if isinstance(self.mode, Randomized):
            mode["seed"] = self.mode.seed
            mode["trials"] = self.mode.trials
        algebra = {"source": self.source, "id": self.ident}
        if self.params:
            algebra["params"] = self.params
        out = {
            "kind": self.kind.variant,
            "algebra": algebra,
            "weight": self.weight,
            "mode": mode,
            "rows": [{"m": m, "dim": d, "ker": k, "betti": b}
                     for m, d, k, b in self.rows],
            "euler": self.euler,
        }
        spec = self.specialization
        if spec is None and isinstance(self.mode, Specialized):
            spec = self.mode.assignment
        if spec:
            out["specialization"] = {k: str(Fraction(v))
                                     for k, v in sorted(spec.items())}
        return out

    def to_csv(self):
        lines = ["m,dim,ker,betti"]
        for m, d, k, b in self.rows:
            lines.append(f"{m},{d},{k},{b}")
        return "\n".join(lines) + "\n"

    def to_table(self):
        """Plain table in the row layout of the published tables."""
        head = f"{self.kind.variant} weight {self.weight} {self.algebra_label}"
        labels = ("m", "SpaD", "KerD", "Bett")
        cols = [[str(x) for x in self.column(name)]
                for name in ("m", "dim", "ker", "betti")]
        width = max((len(s) for col in cols for s in col), default=1)
        lines = [head]
        for label, col in zip(labels, cols):
            cells = " ".join(s.rjust(width) for s in col)
            lines.append(f"{label:>4} : {cells}")
        return "\n".join(lines) + "\n"


def _split_label(label):
    if label.startswith("family-"):
        return "family", int(label.split("-", 1)[1])
    if label.startswith("type-"):
        return "classType", int(label.split("-", 1)[1])
    return "custom", label


def _scan_cap(weight):
    return 4 + abs(weight) + 1


def homology_report(kind, weight, algebra, mode=None, specialization=None):
    """Betti table of one weighted complex under the given rank mode."""
    kind = _as_kind(kind)
    if mode is None:
        mode = Randomized()
    if specialization:
        algebra = algebra.specialize(specialization)
    builder = _BoundaryBuilder(algebra, kind)
    bases = {}
    for m in range(-1, _scan_cap(weight) + 1):
        bases[m] = chain_basis(kind, weight, m)
    ranks = {}
    for m, basis in bases.items():
        if m < 0 or basis.dimension == 0:
            continue
        if bases[m - 1].dimension == 0:
            ranks[m] = 0
            continue
        M = builder.matrix(weight, m, basis, bases[m - 1])
        r, _ = matrix_rank(M, mode, nonzero=algebra.nonzero)
        ranks[m] = r
    rows = []
    for m in sorted(b for b in bases if b >= 0):
        dim = bases[m].dimension
        if dim == 0:
            continue
        ker = dim - ranks[m]
        bett = ker - ranks.get(m + 1, 0)
        rows.append((m, dim, ker, bett))
    return BettiReport(kind, algebra, weight, mode, rows,
                       specialization=specialization)


def strata_report(kind, weight, m, algebra, assignment):
    """(rank, kernel_dim) of one boundary matrix at a full specialization."""
    M = boundary_matrix(kind, weight, m, algebra)
    mode = Specialized(assignment)
    return matrix_rank(M, mode, nonzero=algebra.nonzero)
