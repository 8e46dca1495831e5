"""Builders for the concrete coface theories and their nerve representations.

Vertex k of a theory is "level k"; cofaces p{k}.{i} go k -> k-1 and sections
s{k}.{i} go k-1 -> k.  Broken (Morita-reduced) targets use arrows d{k} /
d{k}.{i} / B{k}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .quiver import (Quiver, Arrow, AlgElement, Presentation, BreakingSchedule,
                     trivial, path_elem, arrow_elem,
                     PLAIN, PROJECTION, SECTION, LOOP)
from .linalg import RatMatrix, IntMatrix
from .representation import Representation
from .assocalg import AssocAlgebraData


def p(k, i, sign=""):
    return f"p{k}.{i}{sign}"


def s(k, i):
    return f"s{k}.{i}"


def t(k, j=None):
    return f"t{k}" if j is None else f"t{k}.{j}"


def d(k, i=None):
    return f"d{k}" if i is None else f"d{k}.{i}"


def B(k):
    return f"B{k}"


def el(q, vertex_pair, *words_and_coeffs):
    """AlgElement from (coeff, word) pairs; words use application order with
    the leftmost arrow applied last, matching written composition."""
    tail, head = vertex_pair
    terms = {}
    for c, word in words_and_coeffs:
        word = tuple(word)
        terms[word] = terms.get(word, Fraction(0)) + Fraction(c)
    return AlgElement(tail, head, terms)


@dataclass
class TheoryDescriptor:
    name: str
    n: int
    presentation: Presentation
    schedule: BreakingSchedule
    families: dict
    broken: Presentation
    images: dict            # broken arrow id -> AlgElement of presentation
    deloop: dict = field(default_factory=dict)

    def rename(self, mapping, new_name=None):
        """Rename presentation arrows (mapping old id -> new id)."""
        def m_word(w):
            return tuple(mapping.get(a, a) for a in w)

        def m_elem(e):
            return AlgElement(e.tail, e.head, {m_word(w): c for w, c in e.terms.items()})

        q = self.presentation.quiver
        newq = Quiver([(v, q.degree[v]) for v in q.vertices],
                      [Arrow(mapping.get(a.id, a.id), a.tail, a.head, a.kind)
                       for a in q.arrows.values()])
        pres = Presentation(newq, [m_elem(r) for r in self.presentation.relations],
                            [(mapping.get(a, a), mapping.get(b, b))
                             for a, b in self.presentation.sections],
                            self.presentation.degree_bound)
        sched = BreakingSchedule([(m_elem(a), m_elem(b)) for a, b in self.schedule])
        fams = {k: [m_elem(r) for r in v] for k, v in self.families.items()}
        imgs = {k: m_elem(v) for k, v in self.images.items()}
        dl = {k: m_elem(v) if isinstance(v, AlgElement) else v
              for k, v in self.deloop.items()}
        return TheoryDescriptor(new_name or self.name, self.n, pres, sched,
                                fams, self.broken, imgs, dl)


# ---------------------------------------------------------------------------
# broken targets


def complex_presentation(n) -> Presentation:
    q = Quiver([(k, k) for k in range(1, n + 1)],
               [Arrow(d(k), k, k - 1) for k in range(2, n + 1)])
    rels = [el(q, (k, k - 2), (1, (d(k - 1), d(k)))) for k in range(3, n + 1)]
    return Presentation(q, rels, [])


def cubical_complex_presentation(n) -> Presentation:
    arrows = [Arrow(d(k, i), k, k - 1)
              for k in range(2, n + 1) for i in range(1, k)]
    q = Quiver([(k, k) for k in range(1, n + 1)], arrows)
    rels = []
    for k in range(2, n):
        for i in range(1, k):
            for j in range(i, k):
                rels.append(el(q, (k + 1, k - 1),
                               (1, (d(k, i), d(k + 1, j + 1))),
                               (-1, (d(k, j), d(k + 1, i)))))
    return Presentation(q, rels, [])


def mixed_presentation(n) -> Presentation:
    arrows = [Arrow(d(k), k, k - 1) for k in range(2, n + 1)]
    arrows += [Arrow(B(k), k - 1, k, SECTION) for k in range(2, n + 1)]
    q = Quiver([(k, k) for k in range(1, n + 1)], arrows)
    rels = []
    for k in range(3, n + 1):
        rels.append(el(q, (k, k - 2), (1, (d(k - 1), d(k)))))
        rels.append(el(q, (k - 2, k), (1, (B(k), B(k - 1)))))
    for k in range(1, n + 1):
        terms = []
        if k + 1 <= n:
            terms.append((1, (d(k + 1), B(k + 1))))
        if k - 1 >= 1:
            terms.append((1, (B(k), d(k))))
        if terms:
            rels.append(el(q, (k, k), *terms))
    return Presentation(q, rels, [])


# ---------------------------------------------------------------------------
# simplicial / cyclic / symclic


def _simplicial_data(n):
    verts = [(k, k) for k in range(1, n + 1)]
    arrows = []
    for k in range(2, n + 1):
        for i in range(1, k + 1):
            arrows.append(Arrow(p(k, i), k, k - 1, PROJECTION))
        for i in range(1, k):
            arrows.append(Arrow(s(k, i), k - 1, k, SECTION))
    return verts, arrows


def _simplicial_families(q, n):
    fams = {"coface exchange": [], "coface-section": [], "section exchange": []}
    for k in range(3, n + 1):
        for i in range(2, k + 1):
            for j in range(1, i):
                fams["coface exchange"].append(el(
                    q, (k, k - 2),
                    (1, (p(k - 1, j), p(k, i))),
                    (-1, (p(k - 1, i - 1), p(k, j)))))
    for k in range(2, n + 1):
        for i in range(1, k):
            for j in range(1, k + 1):
                lhs = (1, (p(k, j), s(k, i)))
                if j in (i, i + 1):
                    fams["coface-section"].append(el(q, (k - 1, k - 1), lhs, (-1, ())))
                elif j < i:
                    fams["coface-section"].append(el(
                        q, (k - 1, k - 1), lhs, (-1, (s(k - 1, i - 1), p(k - 1, j)))))
                else:
                    fams["coface-section"].append(el(
                        q, (k - 1, k - 1), lhs, (-1, (s(k - 1, i), p(k - 1, j - 1)))))
    for k in range(3, n + 1):
        for j in range(2, k):
            for i in range(1, j):
                fams["section exchange"].append(el(
                    q, (k - 2, k),
                    (1, (s(k, j), s(k - 1, i))),
                    (-1, (s(k, i), s(k - 1, j - 1)))))
    return fams


def _schedule(n, proj_name):
    steps = []
    for i in range(1, n):
        for k in range(n, i, -1):
            yield proj_name(k, i), s(k, i)


def _simplicial_schedule(q, n, proj_name=p):
    steps = []
    for aid, sid in _schedule(n, proj_name):
        steps.append((arrow_elem(q, aid), arrow_elem(q, sid)))
    return BreakingSchedule(steps)


def simplicial_theory(n) -> TheoryDescriptor:
    verts, arrows = _simplicial_data(n)
    q = Quiver(verts, arrows)
    fams = _simplicial_families(q, n)
    rels = [r for fam in fams.values() for r in fam]
    pres = Presentation(q, rels, [(p(k, i), s(k, i))
                                  for k in range(2, n + 1) for i in range(1, k)])
    broken = complex_presentation(n)
    images = {d(k): arrow_elem(q, p(k, k)) for k in range(2, n + 1)}
    return TheoryDescriptor("simplicial", n, pres, _simplicial_schedule(q, n),
                            fams, broken, images)


def _cyclic_families(q, n):
    fams = _simplicial_families(q, n)
    fams.update({"rotation order": [], "coface rotation": [], "coface wrap": [],
                 "section rotation": [], "section wrap": []})
    for k in range(2, n + 1):
        fams["rotation order"].append(el(q, (k, k), (1, (t(k),) * k), (-1, ())))
        for i in range(2, k + 1):
            rhs = (t(k - 1), p(k, i - 1)) if k - 1 >= 2 else (p(k, i - 1),)
            fams["coface rotation"].append(el(
                q, (k, k - 1), (1, (p(k, i), t(k))), (-1, rhs)))
        fams["coface wrap"].append(el(
            q, (k, k - 1), (1, (p(k, 1), t(k))), (-1, (p(k, k),))))
    for k in range(3, n + 1):
        for i in range(2, k):
            fams["section rotation"].append(el(
                q, (k - 1, k), (1, (s(k, i), t(k - 1))), (-1, (t(k), s(k, i - 1)))))
        fams["section wrap"].append(el(
            q, (k - 1, k), (1, (s(k, 1), t(k - 1))), (-1, (t(k), t(k), s(k, k - 1)))))
    return fams


def cyclic_theory(n) -> TheoryDescriptor:
    verts, arrows = _simplicial_data(n)
    arrows += [Arrow(t(k), k, k, LOOP) for k in range(2, n + 1)]
    q = Quiver(verts, arrows)
    fams = _cyclic_families(q, n)
    rels = [r for fam in fams.values() for r in fam]
    pres = Presentation(q, rels, [(p(k, i), s(k, i))
                                  for k in range(2, n + 1) for i in range(1, k)])
    broken = mixed_presentation(n)
    images = {d(k): arrow_elem(q, p(k, k)) for k in range(2, n + 1)}
    desc = TheoryDescriptor("cyclic", n, pres, _simplicial_schedule(q, n),
                            fams, broken, images)
    desc.deloop = {B(k): symclic_section_formula(q, k) for k in range(2, n + 1)}
    return desc


def symclic_section_formula(q, k) -> AlgElement:
    """The delooped section into level k: (-1)^k t iota_{k-1} N with
    N = e + sum_{i=1}^{k-2} (-1)^{ik} t^i on level k-1."""
    sign = Fraction((-1) ** k)
    terms = [(sign, (t(k), s(k, k - 1)))]
    for i in range(1, k - 1):
        c = sign * Fraction((-1) ** (i * k))
        word = (t(k), s(k, k - 1)) + (t(k - 1),) * i
        terms.append((c, word))
    return el(q, (k - 1, k), *terms)


def symclic_theory(n) -> TheoryDescriptor:
    """Cyclic theory carrying the extra delooped sections as defined arrows."""
    verts, arrows = _simplicial_data(n)
    arrows += [Arrow(t(k), k, k, LOOP) for k in range(2, n + 1)]
    arrows += [Arrow(f"sr{k}", k - 1, k, SECTION) for k in range(2, n + 1)]
    q = Quiver(verts, arrows)
    fams = _cyclic_families(q, n)
    fams["symclic section definition"] = [
        el(q, (k - 1, k), (1, (f"sr{k}",))) - symclic_section_formula(q, k)
        for k in range(2, n + 1)]
    rels = [r for fam in fams.values() for r in fam]
    pres = Presentation(q, rels, [(p(k, i), s(k, i))
                                  for k in range(2, n + 1) for i in range(1, k)])
    broken = mixed_presentation(n)
    images = {d(k): arrow_elem(q, p(k, k)) for k in range(2, n + 1)}
    images.update({B(k): arrow_elem(q, f"sr{k}") for k in range(2, n + 1)})
    return TheoryDescriptor("symclic", n, pres, _simplicial_schedule(q, n),
                            fams, broken, images)


# ---------------------------------------------------------------------------
# cubical


def _cubical_data(n, perms=False):
    verts = [(k, k) for k in range(1, n + 1)]
    arrows = []
    for k in range(2, n + 1):
        for i in range(1, k):
            arrows.append(Arrow(p(k, i, "+"), k, k - 1, PROJECTION))
            arrows.append(Arrow(p(k, i, "-"), k, k - 1, PROJECTION))
            arrows.append(Arrow(s(k, i), k - 1, k, SECTION))
    if perms:
        for k in range(3, n + 1):
            for j in range(1, k - 1):
                arrows.append(Arrow(t(k, j), k, k, LOOP))
    return verts, arrows


def _cubical_families(q, n):
    fams = {"cubical exchange": [], "cubical coface-section": [],
            "cubical section exchange": []}
    signs = ("+", "-")
    for k in range(3, n + 1):
        for j in range(2, k):
            for i in range(1, j):
                for e1 in signs:
                    for e2 in signs:
                        fams["cubical exchange"].append(el(
                            q, (k, k - 2),
                            (1, (p(k - 1, i, e1), p(k, j, e2))),
                            (-1, (p(k - 1, j - 1, e2), p(k, i, e1)))))
    for k in range(2, n + 1):
        for i in range(1, k):
            for j in range(1, k):
                for e1 in signs:
                    lhs = (1, (p(k, i, e1), s(k, j)))
                    if i == j:
                        fams["cubical coface-section"].append(
                            el(q, (k - 1, k - 1), lhs, (-1, ())))
                    elif i < j:
                        fams["cubical coface-section"].append(el(
                            q, (k - 1, k - 1), lhs,
                            (-1, (s(k - 1, j - 1), p(k - 1, i, e1)))))
                    else:
                        fams["cubical coface-section"].append(el(
                            q, (k - 1, k - 1), lhs,
                            (-1, (s(k - 1, j), p(k - 1, i - 1, e1)))))
    for k in range(3, n + 1):
        for i in range(2, k):
            for j in range(1, i):
                fams["cubical section exchange"].append(el(
                    q, (k - 2, k),
                    (1, (s(k, i), s(k - 1, j))),
                    (-1, (s(k, j), s(k - 1, i - 1)))))
    return fams


def _cubical_schedule(q, n):
    steps = []
    for i in range(1, n):
        for k in range(n, i, -1):
            steps.append((arrow_elem(q, p(k, i, "-")), arrow_elem(q, s(k, i))))
    return BreakingSchedule(steps)


def cubical_theory(n) -> TheoryDescriptor:
    verts, arrows = _cubical_data(n)
    q = Quiver(verts, arrows)
    fams = _cubical_families(q, n)
    rels = [r for fam in fams.values() for r in fam]
    pres = Presentation(q, rels, [(p(k, i, "-"), s(k, i))
                                  for k in range(2, n + 1) for i in range(1, k)])
    broken = cubical_complex_presentation(n)
    images = {d(k, i): arrow_elem(q, p(k, i, "+"))
              for k in range(2, n + 1) for i in range(1, k)}
    return TheoryDescriptor("cubical", n, pres, _cubical_schedule(q, n),
                            fams, broken, images)


def _perm_families(q, n):
    fams = {"transposition group": [], "coface transposition": [],
            "section transposition": []}
    signs = ("+", "-")
    for k in range(3, n + 1):
        for j in range(1, k - 1):
            fams["transposition group"].append(
                el(q, (k, k), (1, (t(k, j), t(k, j))), (-1, ())))
            if j + 1 < k - 1:
                fams["transposition group"].append(el(
                    q, (k, k),
                    (1, (t(k, j), t(k, j + 1), t(k, j))),
                    (-1, (t(k, j + 1), t(k, j), t(k, j + 1)))))
            for l in range(j + 2, k - 1):
                fams["transposition group"].append(el(
                    q, (k, k), (1, (t(k, j), t(k, l))), (-1, (t(k, l), t(k, j)))))
        for i in range(1, k):
            for j in range(1, k - 1):
                for e1 in signs:
                    lhs = (1, (p(k, i, e1), t(k, j)))
                    if j == i:
                        rhs = (-1, (p(k, i + 1, e1),))
                    elif j == i - 1:
                        rhs = (-1, (p(k, i - 1, e1),))
                    elif j <= i - 2:
                        rhs = (-1, (t(k - 1, j), p(k, i, e1)))
                    else:
                        rhs = (-1, (t(k - 1, j - 1), p(k, i, e1)))
                    fams["coface transposition"].append(el(q, (k, k - 1), lhs, rhs))
                lhs = (1, (t(k, j), s(k, i)))
                if j == i:
                    rhs = (-1, (s(k, i + 1),))
                elif j == i - 1:
                    rhs = (-1, (s(k, i - 1),))
                elif j <= i - 2:
                    rhs = (-1, (s(k, i), t(k - 1, j)))
                else:
                    rhs = (-1, (s(k, i), t(k - 1, j - 1)))
                fams["section transposition"].append(el(q, (k - 1, k), lhs, rhs))
    return fams


def cubical_perm_theory(n) -> TheoryDescriptor:
    verts, arrows = _cubical_data(n, perms=True)
    q = Quiver(verts, arrows)
    fams = _cubical_families(q, n)
    fams.update(_perm_families(q, n))
    rels = [r for fam in fams.values() for r in fam]
    pres = Presentation(q, rels, [(p(k, i, "-"), s(k, i))
                                  for k in range(2, n + 1) for i in range(1, k)])
    broken = cubical_complex_presentation(n)
    images = {d(k, i): arrow_elem(q, p(k, i, "+"))
              for k in range(2, n + 1) for i in range(1, k)}
    return TheoryDescriptor("cubical_perm", n, pres, _cubical_schedule(q, n),
                            fams, broken, images)


def build_theory(kind, n, delooped=False) -> TheoryDescriptor:
    if n < 1:
        raise ValueError("n >= 1 required")
    builders = {
        "simplicial": simplicial_theory,
        "cyclic": cyclic_theory,
        "symclic": symclic_theory,
        "cubical": cubical_theory,
        "cubical_perm": cubical_perm_theory,
    }
    if kind in builders:
        return builders[kind](n)
    if kind in ("typeD1", "typeD2"):
        from .typed import typeD1_theory, typeD2_theory
        return (typeD1_theory if kind == "typeD1" else typeD2_theory)(n, delooped)
    raise ValueError(f"unknown theory kind {kind}")


# ---------------------------------------------------------------------------
# nerve representations


def _tuples(dim, slots):
    return list(itertools.product(range(dim), repeat=slots))


def hochschild_rep(alg: AssocAlgebraData, n) -> Representation:
    """Bar-type nerve: level k carries A^{(k-1)}; interior cofaces multiply
    adjacent slots, endpoint cofaces drop an end slot through the
    augmentation, degeneracies insert the unit."""
    if alg.augmentation is None:
        raise ValueError("hochschild_rep requires an augmented algebra "
                         "(endpoint cofaces drop a tensor slot)")
    theory = simplicial_theory(n)
    q = theory.presentation.quiver
    dA = alg.dim
    basis = {k: _tuples(dA, k - 1) for k in range(1, n + 1)}
    index = {k: {tt: i for i, tt in enumerate(basis[k])} for k in basis}
    dims = {k: len(basis[k]) for k in basis}
    mats = {}
    for k in range(2, n + 1):
        for i in range(1, k + 1):
            rows = [[Fraction(0)] * dims[k] for _ in range(dims[k - 1])]
            for col, tt in enumerate(basis[k]):
                if i == 1:
                    coeff = alg.augmentation[tt[0]]
                    if coeff:
                        rows[index[k - 1][tt[1:]]][col] += coeff
                elif i == k:
                    coeff = alg.augmentation[tt[-1]]
                    if coeff:
                        rows[index[k - 1][tt[:-1]]][col] += coeff
                else:
                    a, b = tt[i - 2], tt[i - 1]
                    for m, c in enumerate(alg.mult[a][b]):
                        if c:
                            out = tt[:i - 2] + (m,) + tt[i:]
                            rows[index[k - 1][out]][col] += c
            mats[p(k, i)] = RatMatrix.from_rows(rows, cols=dims[k])
        for i in range(1, k):
            rows = [[Fraction(0)] * dims[k - 1] for _ in range(dims[k])]
            for col, tt in enumerate(basis[k - 1]):
                for m, c in enumerate(alg.unit):
                    if c:
                        out = tt[:i - 1] + (m,) + tt[i - 1:]
                        rows[index[k][out]][col] += c
            mats[s(k, i)] = RatMatrix.from_rows(rows, cols=dims[k - 1])
    rep = Representation(q, dims, mats)
    rep.theory = theory
    return rep


def cyclic_rep(alg: AssocAlgebraData, n) -> Representation:
    """Cyclic nerve: level k carries A^{k} with the wraparound face; no
    augmentation needed."""
    theory = cyclic_theory(n)
    q = theory.presentation.quiver
    dA = alg.dim
    basis = {k: _tuples(dA, k) for k in range(1, n + 1)}
    index = {k: {tt: i for i, tt in enumerate(basis[k])} for k in basis}
    dims = {k: len(basis[k]) for k in basis}
    mats = {}
    for k in range(2, n + 1):
        for i in range(1, k + 1):
            rows = [[Fraction(0)] * dims[k] for _ in range(dims[k - 1])]
            for col, tt in enumerate(basis[k]):
                if i < k:
                    a, b = tt[i - 1], tt[i]
                    for m, c in enumerate(alg.mult[a][b]):
                        if c:
                            out = tt[:i - 1] + (m,) + tt[i + 1:]
                            rows[index[k - 1][out]][col] += c
                else:
                    a, b = tt[-1], tt[0]
                    for m, c in enumerate(alg.mult[a][b]):
                        if c:
                            out = (m,) + tt[1:-1]
                            rows[index[k - 1][out]][col] += c
            mats[p(k, i)] = RatMatrix.from_rows(rows, cols=dims[k])
        for i in range(1, k):
            rows = [[Fraction(0)] * dims[k - 1] for _ in range(dims[k])]
            for col, tt in enumerate(basis[k - 1]):
                for m, c in enumerate(alg.unit):
                    if c:
                        out = tt[:i] + (m,) + tt[i:]
                        rows[index[k][out]][col] += c
            mats[s(k, i)] = RatMatrix.from_rows(rows, cols=dims[k - 1])
    for k in range(2, n + 1):
        rows = [[Fraction(0)] * dims[k] for _ in range(dims[k])]
        for col, tt in enumerate(basis[k]):
            out = (tt[-1],) + tt[:-1]
            rows[index[k][out]][col] += 1
        mats[t(k)] = RatMatrix.from_rows(rows, cols=dims[k])
    rep = Representation(q, dims, mats)
    rep.theory = theory
    return rep
