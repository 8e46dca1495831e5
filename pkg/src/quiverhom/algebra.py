"""Finite-dimensional path algebra quotients, corner algebras and breaking.

The quotient basis is found by vector enumeration of each cyclic module
A e_v: candidate words are extended length by length while relation
instances are imposed as exact linear constraints.  Length slices are
graded by head vertex, so all elimination happens in small blocks.  The
resulting left regular action makes multiplication associative by
construction; `NotFiniteDimensional` is raised when the word length
exceeds the presentation's degree bound without stabilizing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import RatMatrix, IntMatrix, Subspace, rref, reduce_against
from .quiver import AlgElement, Presentation, BreakingSchedule, trivial


class NotFiniteDimensional(Exception):
    pass


class NotASection(Exception):
    pass


@dataclass
class CheckItem:
    name: str
    ok: bool
    detail: str = ""


class Report:
    def __init__(self, title):
        self.title = title
        self.items = []

    def add(self, name, ok, detail=""):
        self.items.append(CheckItem(name, bool(ok), detail))

    @property
    def ok(self):
        return all(it.ok for it in self.items)

    def failures(self):
        return [it for it in self.items if not it.ok]

    def to_json(self):
        return {"title": self.title, "ok": self.ok,
                "checks": [{"name": it.name, "ok": it.ok, "detail": it.detail}
                           for it in self.items]}


# ---------------------------------------------------------------------------
# vector enumeration of one cyclic module A e_v


class _ModuleEnum:
    def __init__(self, pres: Presentation, gen, relations, bound):
        self.q = pres.quiver
        self.gen = gen
        self.bound = bound
        self.heads = []
        self.words = []
        self.alive = []
        self.elim = {}
        self.action = {}  # arrow id -> {coord -> vec}
        self.rel_by_tail = {}
        for r in relations:
            self.rel_by_tail.setdefault(r.tail, []).append(r)
        self.arrows_by_tail = {}
        for a in self.q.arrows.values():
            self.arrows_by_tail.setdefault(a.tail, []).append(a)
        for v in self.arrows_by_tail:
            self.arrows_by_tail[v].sort(key=lambda a: a.id)
        self.run()

    def new_coord(self, head, word):
        self.heads.append(head)
        self.words.append(word)
        self.alive.append(True)
        return len(self.heads) - 1

    def norm_expr(self, i):
        e = self.elim[i]
        if all(self.alive[k] for k in e):
            return e
        out = {}
        for k, c in e.items():
            if self.alive[k]:
                out[k] = out.get(k, Fraction(0)) + c
            else:
                for kk, cc in self.norm_expr(k).items():
                    out[kk] = out.get(kk, Fraction(0)) + c * cc
        out = {k: c for k, c in out.items() if c}
        self.elim[i] = out
        return out

    def normalize(self, vec):
        out = {}
        for k, c in vec.items():
            if not c:
                continue
            if self.alive[k]:
                out[k] = out.get(k, Fraction(0)) + c
            else:
                for kk, cc in self.norm_expr(k).items():
                    out[kk] = out.get(kk, Fraction(0)) + c * cc
        return {k: c for k, c in out.items() if c}

    def apply_arrow(self, a, vec):
        table = self.action[a.id]
        out = {}
        for i, c in vec.items():
            if self.heads[i] != a.tail:
                continue
            for j, d in table[i].items():
                out[j] = out.get(j, Fraction(0)) + c * d
        return self.normalize(out)

    def apply_word(self, word, vec):
        for aid in reversed(word):
            if not vec:
                return vec
            vec = self.apply_arrow(self.q.arrows[aid], vec)
        return vec

    def eval_relation(self, rel, coord):
        base = self.normalize({coord: Fraction(1)})
        out = {}
        for word, c in rel.terms.items():
            img = self.apply_word(word, base)
            for k, v in img.items():
                out[k] = out.get(k, Fraction(0)) + c * v
        return {k: v for k, v in out.items() if v}

    def impose(self, vec):
        work = [vec]
        while work:
            v = self.normalize(work.pop())
            if not v:
                continue
            pivot = max(v)
            cp = v[pivot]
            expr = {k: -c / cp for k, c in v.items() if k != pivot}
            self.alive[pivot] = False
            self.elim[pivot] = expr
            for table in self.action.values():
                if pivot in table:
                    cons = dict(self.normalize(table.pop(pivot)))
                    for k, ck in expr.items():
                        ak = table.get(k)
                        if ak is None:
                            raise AssertionError("coincidence on unextended coord")
                        for kk, vv in self.normalize(ak).items():
                            cons[kk] = cons.get(kk, Fraction(0)) - ck * vv
                    work.append(cons)

    def run(self):
        root = self.new_coord(self.gen, ())
        pending = {}  # due round -> [(rel, coord)]

        def schedule(coord):
            ln = len(self.words[coord])
            for r in self.rel_by_tail.get(self.heads[coord], []):
                due = ln + r.max_len
                pending.setdefault(due, []).append((r, coord))

        schedule(root)
        frontier = [root]
        rnd = 0
        while True:
            rnd += 1
            if frontier:
                if rnd > self.bound:
                    raise NotFiniteDimensional(
                        f"module at {self.gen} does not stabilize within "
                        f"degree bound {self.bound}")
                new_frontier = []
                for x in frontier:
                    if not self.alive[x]:
                        continue
                    for a in self.arrows_by_tail.get(self.heads[x], []):
                        y = self.new_coord(a.head, (a.id,) + self.words[x])
                        self.action.setdefault(a.id, {})[x] = {y: Fraction(1)}
                        new_frontier.append(y)
                        schedule(y)
                for r, x in sorted(pending.pop(rnd, []),
                                   key=lambda t: (t[1], id(t[0]))):
                    if self.alive[x]:
                        self.impose(self.eval_relation(r, x))
                frontier = [y for y in new_frontier if self.alive[y]]
            else:
                if not pending:
                    break
                due = min(pending)
                for r, x in sorted(pending.pop(due),
                                   key=lambda t: (t[1], id(t[0]))):
                    if self.alive[x]:
                        self.impose(self.eval_relation(r, x))

    def basis(self):
        return [i for i in range(len(self.heads)) if self.alive[i]]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisElement:
    gen: object   # generator vertex v, element lies in e_head A e_gen
    head: object
    word: tuple


class BasedAlgebra:
    """Quotient algebra with a concrete basis and exact multiplication."""

    def __init__(self, pres: Presentation, degree_bound=None):
        self.pres = pres
        q = pres.quiver
        bound = degree_bound or pres.degree_bound
        relations = pres.all_relations()
        self.basis = []
        self.trivial_idx = {}
        self._local = {}
        offset = 0
        self._offsets = {}
        for v in q.vertices:
            mod = _ModuleEnum(pres, v, relations, bound)
            self._local[v] = (mod, offset)
            local = mod.basis()
            remap = {}
            for li in local:
                remap[li] = offset + len(remap)
                self.basis.append(BasisElement(v, mod.heads[li], mod.words[li]))
            self._offsets[v] = remap
            offset += len(local)
        self.dim = len(self.basis)
        # global sparse action tables
        self.action = {}
        for v in q.vertices:
            mod, _ = self._local[v]
            remap = self._offsets[v]
            for aid, table in mod.action.items():
                gt = self.action.setdefault(aid, {})
                for i, vec in table.items():
                    if not mod.alive[i]:
                        continue
                    gt[remap[i]] = {remap[j]: c for j, c in mod.normalize(vec).items()}
        for v in q.vertices:
            mod, _ = self._local[v]
            remap = self._offsets[v]
            root = remap[0]
            self.trivial_idx[v] = root
        self.unit = {self.trivial_idx[v]: Fraction(1) for v in q.vertices}
        self.vertex_idems = {v: {self.trivial_idx[v]: Fraction(1)} for v in q.vertices}

    # -- element arithmetic --------------------------------------------------

    def apply_arrow(self, aid, vec):
        a = self.pres.quiver.arrows[aid]
        table = self.action.get(aid, {})
        out = {}
        for i, c in vec.items():
            if self.basis[i].head != a.tail:
                continue
            for j, d in table[i].items():
                out[j] = out.get(j, Fraction(0)) + c * d
        return {k: c for k, c in out.items() if c}

    def apply_word(self, word, vec):
        for aid in reversed(word):
            if not vec:
                return {}
            vec = self.apply_arrow(aid, vec)
        return vec

    def mul(self, x, y):
        out = {}
        for i, ci in x.items():
            b = self.basis[i]
            z = {j: cj for j, cj in y.items() if self.basis[j].head == b.gen}
            if not z:
                continue
            z = self.apply_word(b.word, z)
            for j, cj in z.items():
                out[j] = out.get(j, Fraction(0)) + ci * cj
        return {k: c for k, c in out.items() if c}

    def evaluate(self, elem: AlgElement):
        start = {self.trivial_idx[elem.tail]: Fraction(1)}
        out = {}
        for word, c in elem.terms.items():
            img = self.apply_word(word, start)
            for k, v in img.items():
                out[k] = out.get(k, Fraction(0)) + c * v
        return {k: v for k, v in out.items() if v}

    def coerce(self, x):
        if isinstance(x, AlgElement):
            return self.evaluate(x)
        return dict(x)

    def sub(self, x, y):
        out = dict(x)
        for k, c in y.items():
            out[k] = out.get(k, Fraction(0)) - c
        return {k: c for k, c in out.items() if c}

    def dense(self, vec):
        row = [Fraction(0)] * self.dim
        for k, c in vec.items():
            row[k] = c
        return row

    def eq(self, x, y):
        return self.sub(x, y) == {}

    def is_idempotent(self, x):
        return self.eq(self.mul(x, x), x)

    def structure_constants(self):
        """c[i][j] = product b_i b_j as a sparse vector."""
        return [[self.mul({i: Fraction(1)}, {j: Fraction(1)})
                 for j in range(self.dim)] for i in range(self.dim)]

    def check_associativity(self, triples=None):
        rng = range(self.dim)
        if triples is None:
            triples = [(i, j, k) for i in rng for j in rng for k in rng]
        for i, j, k in triples:
            bi, bj, bk = ({i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)})
            if not self.eq(self.mul(self.mul(bi, bj), bk),
                           self.mul(bi, self.mul(bj, bk))):
                return (i, j, k)
        return None


def enumerate_basis(pres: Presentation, degree_bound=None) -> BasedAlgebra:
    return BasedAlgebra(pres, degree_bound)


# ---------------------------------------------------------------------------
# corner algebras and breaking


class CornerAlgebra:
    """e' A e' for an idempotent e', with inherited vertex idempotents."""

    def __init__(self, parent: BasedAlgebra, unit, vertex_idems, basis_rows):
        self.parent = parent
        self.unit = unit
        self.vertex_idems = vertex_idems
        self.basis_space = basis_rows  # Subspace over parent coordinates
        self.dim = basis_rows.dim

    @staticmethod
    def whole(parent: BasedAlgebra):
        rows = [parent.dense({i: Fraction(1)}) for i in range(parent.dim)]
        return CornerAlgebra(parent, dict(parent.unit),
                             {v: dict(x) for v, x in parent.vertex_idems.items()},
                             Subspace.from_rows(rows, parent.dim))

    def mul(self, x, y):
        return self.parent.mul(x, y)

    def eq(self, x, y):
        return self.parent.eq(x, y)

    def contains(self, vec):
        return self.basis_space.contains(self.parent.dense(vec))


def break_at(alg, proj, sect):
    """One breaking step; alg is a BasedAlgebra or CornerAlgebra."""
    corner = alg if isinstance(alg, CornerAlgebra) else CornerAlgebra.whole(alg)
    return _break_step(corner, proj, sect)[0]


def _break_step(corner: CornerAlgebra, proj, sect):
    parent = corner.parent
    e = corner.unit
    x = parent.mul(e, parent.mul(parent.coerce(proj), e))
    xr = parent.mul(e, parent.mul(parent.coerce(sect), e))
    xxr = parent.mul(x, xr)
    if not parent.is_idempotent(xxr):
        raise NotASection("product proj*sect is not idempotent in the corner")
    xrx = parent.mul(xr, x)
    if not parent.is_idempotent(xrx):
        raise NotASection("sect*proj is not idempotent in the corner")
    e_new = parent.sub(e, xrx)
    if not parent.is_idempotent(e_new):
        raise NotASection("corner unit e - sect*proj is not idempotent")

    def cut(vec):
        return parent.mul(e_new, parent.mul(vec, e_new))

    rows = []
    for row in corner.basis_space.basis.entries:
        vec = {i: c for i, c in enumerate(row) if c}
        rows.append(parent.dense(cut(vec)))
    space = Subspace.from_rows(rows, parent.dim)
    if space.dim >= corner.dim:
        raise NotASection("breaking did not decrease dimension")
    idems = {v: cut(iv) for v, iv in corner.vertex_idems.items()}
    ta, ha = _endpoints(parent, proj)
    return CornerAlgebra(parent, e_new, idems, space), (ta, ha)


def _endpoints(parent, elem):
    if isinstance(elem, AlgElement):
        return elem.tail, elem.head
    vec = parent.coerce(elem)
    tails = {parent.basis[i].gen for i in vec}
    heads = {parent.basis[i].head for i in vec}
    if len(tails) != 1 or len(heads) != 1:
        raise ValueError("breaking element is not homogeneous")
    return tails.pop(), heads.pop()


def break_sequence(alg, schedule: BreakingSchedule):
    """Fold breaking steps; returns (corner, multiplicity matrix, vertex order).

    The multiplicity matrix is the product E_1 E_2 ... E_k of elementary
    matrices, rows/cols indexed by vertices in descending degree order,
    with E_i = I + unit at (tail_i, head_i).
    """
    parent = alg if isinstance(alg, BasedAlgebra) else alg.parent
    corner = CornerAlgebra.whole(parent) if isinstance(alg, BasedAlgebra) else alg
    q = parent.pres.quiver
    order = sorted(q.vertices, key=lambda v: -q.degree[v])
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    mult = IntMatrix.identity(n)
    for step, (proj, sect) in enumerate(schedule):
        try:
            corner, (ta, ha) = _break_step(corner, proj, sect)
        except NotASection as exc:
            raise NotASection(f"step {step}: {exc}") from None
        ei = [[int(i == j) for j in range(n)] for i in range(n)]
        ei[pos[ta]][pos[ha]] += 1
        mult = mult * IntMatrix.from_rows(ei)
    return corner, mult, order


# ---------------------------------------------------------------------------
# QRS / GReedy checks


def check_qrs(pres: Presentation, alg: BasedAlgebra | None = None) -> Report:
    rep = Report("QRS check")
    proj = {p for p, _ in pres.sections}
    sect = {s for _, s in pres.sections}
    rep.add("sections-projections disjoint", not (proj & sect),
            str(proj & sect) if proj & sect else "")
    try:
        alg = alg or enumerate_basis(pres)
    except NotFiniteDimensional as exc:
        rep.add("finite-dimensional", False, str(exc))
        return rep
    rep.add("finite-dimensional", True, f"dim {alg.dim}")
    q = pres.quiver
    for p, s in pres.sections:
        a, asec = q.arrows[p], q.arrows[s]
        va = alg.evaluate(AlgElement(a.tail, a.head, {(p,): 1}))
        vr = alg.evaluate(AlgElement(asec.tail, asec.head, {(s,): 1}))
        e_h = alg.evaluate(trivial(a.head))
        e_t = alg.evaluate(trivial(a.tail))
        aar = alg.mul(va, vr)
        ara = alg.mul(vr, va)
        rep.add(f"{p}*{s} = e_{a.head}", alg.eq(aar, e_h))
        rep.add(f"{s} is not itself a projection ({s}*{p} != e_{a.tail})",
                not alg.eq(ara, e_t))
        rows = [alg.dense(v) for v in (va, vr, ara, e_h)]
        dim4 = rref(RatMatrix.from_rows(rows, cols=alg.dim))[0]
        rep.add(f"2x2 block of ({p},{s}) has dimension 4", dim4 == 4, f"dim {dim4}")
        ok_units = (alg.eq(alg.mul(va, ara), va)
                    and alg.eq(alg.mul(ara, vr), vr)
                    and alg.is_idempotent(ara))
        rep.add(f"matrix-unit products for ({p},{s})", ok_units)
    return rep


def _monotone_paths(pres, start, direction, max_len):
    """Paths from `start` along non-raising (direction=-1) or non-lowering
    (direction=+1) arrows, as (word, endpoint); includes the trivial path."""
    q = pres.quiver
    deg = q.degree
    out = [((), start)]
    frontier = [((), start)]
    for _ in range(max_len):
        nxt = []
        for word, v in frontier:
            for a in q.arrows.values():
                if a.tail != v:
                    continue
                d = deg[a.head] - deg[a.tail]
                if direction > 0 and d < 0:
                    continue
                if direction < 0 and d > 0:
                    continue
                nxt.append(((a.id,) + word, a.head))
        out.extend(nxt)
        frontier = nxt
        if not frontier:
            break
    return out


def check_greedy(pres: Presentation, alg: BasedAlgebra | None = None,
                 max_factor_len=None) -> Report:
    rep = Report("GReedy check")
    alg = alg or enumerate_basis(pres)
    q = pres.quiver
    deg = q.degree
    cap = max_factor_len or pres.degree_bound
    lowering = [a for a in q.arrows.values() if deg[a.head] <= deg[a.tail]]
    raising = [a for a in q.arrows.values() if deg[a.head] >= deg[a.tail]]
    checked = 0
    for ar in lowering:        # applied second, not raising
        for as_ in raising:    # applied first, not lowering
            if as_.head != ar.tail:
                continue
            if deg[as_.head] == deg[as_.tail] and deg[ar.head] == deg[ar.tail]:
                continue  # pure loop composite, nothing to factor
            word = (ar.id, as_.id)
            target = alg.apply_word(word, {alg.trivial_idx[as_.tail]: Fraction(1)})
            found = False
            for rw, mid in _monotone_paths(pres, as_.tail, -1, cap):
                if found:
                    break
                for sw, end in _monotone_paths(pres, mid, +1, cap):
                    if end != ar.head:
                        continue
                    cand = alg.apply_word(sw + rw,
                                          {alg.trivial_idx[as_.tail]: Fraction(1)})
                    if alg.sub(cand, target) == {}:
                        found = True
                        break
            checked += 1
            rep.add(f"path {ar.id}*{as_.id} factors as s*r", found)
    if checked == 0:
        rep.add("no mixed length-2 paths (vacuously GReedy)", True)
    return rep


# ---------------------------------------------------------------------------
# presentation maps


def verify_presentation_map(alg, target: Presentation, images,
                            check_generation=True) -> Report:
    """images: target arrow id -> element, target vertex -> element.

    Elements are AlgElements of the ambient presentation or sparse vectors.
    `alg` is a BasedAlgebra or CornerAlgebra.
    """
    rep = Report("presentation map")
    parent = alg.parent if isinstance(alg, CornerAlgebra) else alg
    corner = alg if isinstance(alg, CornerAlgebra) else CornerAlgebra.whole(alg)
    img = {k: parent.coerce(v) for k, v in images.items()}

    def eval_target(elem: AlgElement):
        out = {}
        for word, c in elem.terms.items():
            if word:
                vec = img[word[-1]]
                for aid in reversed(word[:-1]):
                    vec = parent.mul(img[aid], vec)
            else:
                vec = img[elem.tail]
            for k, v in vec.items():
                out[k] = out.get(k, Fraction(0)) + c * v
        return {k: v for k, v in out.items() if v}

    for i, r in enumerate(target.all_relations()):
        val = eval_target(r)
        rep.add(f"relation {i} holds", val == {},
                "" if val == {} else f"nonzero image {sorted(val)[:4]}")
    verts = target.quiver.vertices
    total = {}
    for v in verts:
        z = img[v]
        rep.add(f"e_{v} idempotent", parent.is_idempotent(z))
        for k, c in z.items():
            total[k] = total.get(k, Fraction(0)) + c
    for i, u in enumerate(verts):
        for w in verts[i + 1:]:
            rep.add(f"e_{u} e_{w} = 0", parent.mul(img[u], img[w]) == {})
    rep.add("vertex idempotents sum to the unit",
            parent.eq({k: c for k, c in total.items() if c}, corner.unit))
    if check_generation:
        gens = [img[a] for a in target.quiver.arrows] + [img[v] for v in verts]
        rows = [parent.dense(g) for g in gens]
        span = Subspace.from_rows(rows, parent.dim)
        while True:
            new_rows = [list(r) for r in span.basis.entries]
            grew = False
            for r in span.basis.entries:
                vec = {i: c for i, c in enumerate(r) if c}
                for g in gens:
                    for prod in (parent.mul(vec, g), parent.mul(g, vec)):
                        row = parent.dense(prod)
                        if not span.contains(row):
                            new_rows.append(row)
                            grew = True
            if not grew:
                break
            span = Subspace.from_rows(new_rows, parent.dim)
        rep.add("images generate the algebra", span.dim == corner.dim,
                f"generated {span.dim}, algebra {corner.dim}")
    return rep
