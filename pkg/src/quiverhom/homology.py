"""Homology of complexes over Q and Z, radicals, projective resolutions and
Ext over enumerated based algebras."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (RatMatrix, IntMatrix, Subspace, kernel, rank, rref,
                     reduce_against, smith_normal_form, solve_conjugate)
from .algebra import BasedAlgebra, Report
from .complexes import ChainComplex
from .representation import Representation


@dataclass
class HomologyResult:
    """Per-degree Betti numbers, plus invariant-factor torsion over Z."""

    bottom: int
    betti: list
    torsion: list  # list of lists (empty over Q)

    def at(self, deg):
        i = deg - self.bottom
        if 0 <= i < len(self.betti):
            return self.betti[i], self.torsion[i]
        return 0, []

    @property
    def degrees(self):
        return range(self.bottom, self.bottom + len(self.betti))

    def euler(self):
        return sum((-1) ** d * b for d, b in zip(self.degrees, self.betti))

    def to_json(self):
        return {str(d): {"betti": b, "torsion": list(t)}
                for d, b, t in zip(self.degrees, self.betti, self.torsion)}


def _int_rank(m: IntMatrix):
    return rank(m.to_rat())


def homology(c: ChainComplex) -> HomologyResult:
    n = len(c.ranks)
    betti, torsion = [], []
    for i in range(n):
        deg = c.bottom + i
        d_out = c.diffs[i] if i >= 1 else None
        d_in = c.diffs[i + 1] if i + 1 < n else None
        if c.ring == "Z":
            r_out = _int_rank(d_out) if d_out is not None else 0
            r_in = _int_rank(d_in) if d_in is not None else 0
            betti.append(c.ranks[i] - r_out - r_in)
            if d_in is not None and r_in:
                _, dmat, _ = smith_normal_form(d_in)
                invf = [dmat.entries[j][j] for j in range(min(dmat.rows, dmat.cols))
                        if dmat.entries[j][j] != 0]
                torsion.append([f for f in invf if f > 1])
            else:
                torsion.append([])
        else:
            r_out = rank(d_out) if d_out is not None else 0
            r_in = rank(d_in) if d_in is not None else 0
            betti.append(c.ranks[i] - r_out - r_in)
            torsion.append([])
    return HomologyResult(c.bottom, betti, torsion)


# ---------------------------------------------------------------------------
# modules over a based algebra


class AlgebraModule:
    """Left module: arrow actions plus vertex idempotent projectors."""

    def __init__(self, alg: BasedAlgebra, dim, arrow_act, vertex_proj,
                 check=True):
        self.alg = alg
        self.dim = dim
        self.arrow_act = dict(arrow_act)
        self.vertex_proj = dict(vertex_proj)
        if check:
            self.validate()

    def act_word(self, word, m: RatMatrix) -> RatMatrix:
        for aid in reversed(word):
            m = self.arrow_act[aid] * m
        return m

    def act_basis(self, i) -> RatMatrix:
        b = self.alg.basis[i]
        return self.act_word(b.word, self.vertex_proj[b.gen])

    def act_vec(self, vec) -> RatMatrix:
        out = RatMatrix.zero(self.dim, self.dim)
        for i, c in vec.items():
            out = out + self.act_basis(i).scale(c)
        return out

    def validate(self):
        ident = RatMatrix.identity(self.dim)
        total = RatMatrix.zero(self.dim, self.dim)
        verts = self.alg.pres.quiver.vertices
        for v in verts:
            pv = self.vertex_proj[v]
            if not (pv * pv - pv).is_zero():
                raise ValueError(f"projector at {v} not idempotent")
            total = total + pv
        if not (total - ident).is_zero():
            raise ValueError("projectors do not sum to the identity")
        for aid, a in self.alg.pres.quiver.arrows.items():
            m = self.arrow_act[aid]
            if not (self.vertex_proj[a.head] * m - m).is_zero() or \
               not (m * self.vertex_proj[a.tail] - m).is_zero():
                raise ValueError(f"action of {aid} ignores the grading")
        for r in self.alg.pres.all_relations():
            out = RatMatrix.zero(self.dim, self.dim)
            for word, c in r.terms.items():
                if word:
                    m = self.act_word(word, self.vertex_proj[r.tail])
                else:
                    m = self.vertex_proj[r.tail]
                out = out + m.scale(c)
            if not out.is_zero():
                raise ValueError("module action violates a relation")

    @staticmethod
    def projective(alg: BasedAlgebra, v) -> "AlgebraModule":
        idx = [i for i, b in enumerate(alg.basis) if b.gen == v]
        pos = {g: i for i, g in enumerate(idx)}
        dim = len(idx)
        arrow_act = {}
        for aid, a in alg.pres.quiver.arrows.items():
            rows = [[Fraction(0)] * dim for _ in range(dim)]
            table = alg.action.get(aid, {})
            for j, g in enumerate(idx):
                if alg.basis[g].head != a.tail:
                    continue
                for tgt, c in table[g].items():
                    rows[pos[tgt]][j] = c
            arrow_act[aid] = RatMatrix.from_rows(rows, cols=dim)
        vertex_proj = {}
        for w in alg.pres.quiver.vertices:
            rows = [[Fraction(int(i == j and alg.basis[idx[i]].head == w))
                     for j in range(dim)] for i in range(dim)]
            vertex_proj[w] = RatMatrix.from_rows(rows, cols=dim)
        mod = AlgebraModule(alg, dim, arrow_act, vertex_proj, check=False)
        mod.generator = pos[alg.trivial_idx[v]]
        return mod

    @staticmethod
    def from_representation(alg: BasedAlgebra, rep: Representation) -> "AlgebraModule":
        verts = alg.pres.quiver.vertices
        offs, off = {}, 0
        for v in verts:
            offs[v] = off
            off += rep.dims[v]
        dim = off
        arrow_act = {}
        for aid, a in alg.pres.quiver.arrows.items():
            rows = [[Fraction(0)] * dim for _ in range(dim)]
            m = rep.mats[aid]
            for r in range(m.rows):
                for c in range(m.cols):
                    if m.entries[r][c]:
                        rows[offs[a.head] + r][offs[a.tail] + c] = m.entries[r][c]
            arrow_act[aid] = RatMatrix.from_rows(rows, cols=dim)
        vertex_proj = {}
        for v in verts:
            rows = [[Fraction(0)] * dim for _ in range(dim)]
            for r in range(rep.dims[v]):
                rows[offs[v] + r][offs[v] + r] = Fraction(1)
            vertex_proj[v] = RatMatrix.from_rows(rows, cols=dim)
        return AlgebraModule(alg, dim, arrow_act, vertex_proj)

    @staticmethod
    def from_complex(alg: BasedAlgebra, c: ChainComplex) -> "AlgebraModule":
        """Chain complex as a module over the complex algebra (arrows d{k})."""
        cc = c.to_rational()
        dims = {k: cc.rank_at(k) for k in alg.pres.quiver.vertices}
        mats = {}
        for aid, a in alg.pres.quiver.arrows.items():
            m = cc.diff_at(a.tail)
            mats[aid] = m if m is not None else RatMatrix.zero(dims[a.head], dims[a.tail])
        rep = Representation(alg.pres.quiver, dims, mats)
        return AlgebraModule.from_representation(alg, rep)


def radical(alg: BasedAlgebra) -> Subspace:
    """Jacobson radical via the trace form of the left regular representation
    (valid in characteristic zero)."""
    D = alg.dim
    lmats = []
    for i in range(D):
        cols = [alg.mul({i: Fraction(1)}, {k: Fraction(1)}) for k in range(D)]
        rows = [[cols[k].get(r, Fraction(0)) for k in range(D)] for r in range(D)]
        lmats.append(rows)
    tform = []
    for i in range(D):
        row = []
        li = lmats[i]
        for j in range(D):
            lj = lmats[j]
            row.append(sum(li[r][s1] * lj[s1][r] for r in range(D)
                           for s1 in range(D) if li[r][s1]))
        tform.append(row)
    return kernel(RatMatrix.from_rows(tform, cols=D))


@dataclass
class ResolutionStage:
    multiplicities: dict      # vertex -> count
    generators: list          # [(vertex, lift vector in previous module)]
    module: AlgebraModule     # the projective P_i
    boundary: RatMatrix | None  # P_i -> P_{i-1} (None for i = 0)
    cover: RatMatrix          # P_i -> target of the stage (M or syzygy coords)


class ProjectiveDirectSum(AlgebraModule):
    """Direct sum of vertex projectives P_{v_1} + ... + P_{v_s}."""

    def __init__(self, alg, vertices):
        self.parts = [AlgebraModule.projective(alg, v) for v in vertices]
        self.part_vertices = list(vertices)
        dim = sum(p.dim for p in self.parts)
        offs, off = [], 0
        for prt in self.parts:
            offs.append(off)
            off += prt.dim
        self.offsets = offs

        def blockdiag(mats):
            rows = [[Fraction(0)] * dim for _ in range(dim)]
            for o, m in zip(offs, mats):
                for r in range(m.rows):
                    for c in range(m.cols):
                        if m.entries[r][c]:
                            rows[o + r][o + c] = m.entries[r][c]
            return RatMatrix.from_rows(rows, cols=dim)

        arrow_act = {aid: blockdiag([prt.arrow_act[aid] for prt in self.parts])
                     for aid in alg.pres.quiver.arrows}
        vertex_proj = {v: blockdiag([prt.vertex_proj[v] for prt in self.parts])
                       for v in alg.pres.quiver.vertices}
        super().__init__(alg, dim, arrow_act, vertex_proj, check=False)
        self.generators = [o + prt.generator for o, prt in zip(offs, self.parts)]


def _module_subspace(mod: AlgebraModule, space: Subspace) -> AlgebraModule:
    """Restriction of the action to an invariant subspace, in its basis."""
    arrow_act, vertex_proj = {}, {}
    for aid in mod.alg.pres.quiver.arrows:
        m = solve_conjugate(mod.arrow_act[aid], space, space)
        if m is None:
            raise ValueError("subspace not invariant")
        arrow_act[aid] = m
    for v in mod.alg.pres.quiver.vertices:
        m = solve_conjugate(mod.vertex_proj[v], space, space)
        if m is None:
            raise ValueError("subspace not invariant under projector")
        vertex_proj[v] = m
    return AlgebraModule(mod.alg, space.dim, arrow_act, vertex_proj, check=False)


def _top_lifts(alg, mod: AlgebraModule, rad_vectors):
    """(vertex, lift) pairs spanning M / JM, vertexwise."""
    jm_rows = []
    for rv in rad_vectors:
        act = mod.act_vec(rv)
        jm_rows.extend(act.transpose().tolists())
    jm = Subspace.from_rows(jm_rows, mod.dim) if jm_rows else Subspace.zero(mod.dim)
    out = []
    for v in alg.pres.quiver.vertices:
        pv = mod.vertex_proj[v]
        ev_rows = [list(r) for r in pv.transpose().entries]
        ev = Subspace.from_rows(ev_rows, mod.dim)
        jv_rows = []
        for row in jm.basis.entries:
            col = [sum(a * b for a, b in zip(mrow, row)) for mrow in pv.entries]
            jv_rows.append(col)
        acc = Subspace.from_rows(jv_rows, mod.dim) if jv_rows else Subspace.zero(mod.dim)
        cur = acc.basis.tolists()
        for row in ev.basis.entries:
            cand = cur + [list(row)]
            sp = Subspace.from_rows(cand, mod.dim)
            if sp.dim > len(cur):
                out.append((v, list(row)))
                cur = sp.basis.tolists()
    return out


def projective_resolution(alg: BasedAlgebra, mod: AlgebraModule, length,
                          rad_vectors=None):
    """Minimal resolution by iterated projective covers; stage 0 covers mod."""
    if rad_vectors is None:
        rad = radical(alg)
        rad_vectors = [{i: c for i, c in enumerate(row) if c}
                       for row in rad.basis.entries]
    stages = []
    target = mod
    embed = None  # basis of current syzygy inside previous projective
    for step in range(length + 1):
        lifts = _top_lifts(alg, target, rad_vectors)
        verts = [v for v, _ in lifts]
        P = ProjectiveDirectSum(alg, verts)
        cols = []
        for j, (v, lift) in enumerate(lifts):
            prt = P.parts[j]
            for bi in range(prt.dim):
                gidx = [i for i, b in enumerate(alg.basis) if b.gen == v][bi]
                word = alg.basis[gidx].word
                vec = target.act_word(word, target.vertex_proj[v])
                col = [sum(a * b for a, b in zip(mrow, lift)) for mrow in vec.entries]
                cols.append(col)
        cover = RatMatrix(target.dim, P.dim,
                          tuple(zip(*cols)) if cols else tuple(() for _ in range(target.dim)))
        mults = {}
        for v in verts:
            mults[v] = mults.get(v, 0) + 1
        if embed is None:
            boundary = None
        else:
            # boundary = (inclusion of the syzygy) after (cover in its basis)
            bmat_cols = []
            for col in range(cover.cols):
                cvec = [cover.entries[r][col] for r in range(cover.rows)]
                full = [Fraction(0)] * embed.ambient
                for k, brow in enumerate(embed.basis.entries):
                    if cvec[k]:
                        for j, x in enumerate(brow):
                            if x:
                                full[j] += cvec[k] * x
                bmat_cols.append(full)
            boundary = RatMatrix(embed.ambient, cover.cols,
                                 tuple(zip(*bmat_cols)) if bmat_cols
                                 else tuple(() for _ in range(embed.ambient)))
        stages.append(ResolutionStage(mults, lifts, P, boundary, cover))
        if step == length:
            break
        ker = kernel(cover)
        if ker.dim == 0:
            break
        target = _module_subspace(P, ker)
        embed = ker
    return stages


def verify_resolution(alg, mod, stages) -> Report:
    rep = Report("resolution exactness")
    if stages:
        rep.add("stage 0 covers the module",
                rank(stages[0].cover) == mod.dim)
    for i in range(1, len(stages)):
        bd = stages[i].boundary
        prev_bd = stages[i - 1].boundary
        img = Subspace.from_rows([list(r) for r in bd.transpose().entries], bd.rows)
        if i == 1:
            ker_prev = kernel(stages[0].cover)
        else:
            ker_prev = kernel(prev_bd)
        rep.add(f"im d_{i} = ker d_{i - 1}", img == ker_prev,
                f"im {img.dim}, ker {ker_prev.dim}")
    return rep


def _vertex_block(mod: AlgebraModule, v) -> Subspace:
    pv = mod.vertex_proj[v]
    return Subspace.from_rows([list(r) for r in pv.transpose().entries], mod.dim)


def _basis_action_cache(mod: AlgebraModule):
    cache = {}

    def get(v, local_index):
        key = (v, local_index)
        if key not in cache:
            gidx = [ii for ii, b in enumerate(mod.alg.basis) if b.gen == v]
            word = mod.alg.basis[gidx[local_index]].word
            cache[key] = mod.act_word(word, mod.vertex_proj[v])
        return cache[key]

    return get


def ext_dims_from_resolution(stages, mod: AlgebraModule, maxdeg):
    """Cohomology dims of Hom(P_*, M) for a resolution by ProjectiveDirectSum.

    Hom(P_i, M) is coordinatized by the generator values u_l in e_{v_l} M.
    """
    act_of = _basis_action_cache(mod)
    hom_bases = [[(v, _vertex_block(mod, v)) for v, _ in st.generators]
                 for st in stages[:maxdeg + 2]]

    def hom_dim(i):
        return sum(ev.dim for _, ev in hom_bases[i])

    def phi_matrix(i, u_values):
        """Full matrix of phi: P_i -> M with given generator values."""
        P = stages[i].module
        cols = []
        for l, prt in enumerate(P.parts):
            u = u_values[l]
            v = P.part_vertices[l]
            for bi in range(prt.dim):
                act = act_of(v, bi)
                cols.append([sum(act.entries[r][c] * u[c]
                                 for c in range(mod.dim) if u[c])
                             for r in range(mod.dim)])
        return cols  # list of columns, aligned with P_i coordinates

    def dual_matrix(i):
        """Hom(P_{i-1}, M) -> Hom(P_i, M), precomposition with boundary."""
        bd = stages[i].boundary
        out_cols = []
        for j, (v_j, ev_j) in enumerate(hom_bases[i - 1]):
            for brow in ev_j.basis.entries:
                u_values = [[Fraction(0)] * mod.dim
                            for _ in hom_bases[i - 1]]
                u_values[j] = list(brow)
                cols = phi_matrix(i - 1, u_values)
                out = []
                for l, (v_l, ev_l) in enumerate(hom_bases[i]):
                    gpos = stages[i].module.generators[l]
                    val = [Fraction(0)] * mod.dim
                    for r in range(bd.rows):
                        coeff = bd.entries[r][gpos]
                        if coeff:
                            col = cols[r]
                            for x in range(mod.dim):
                                if col[x]:
                                    val[x] += coeff * col[x]
                    coords = reduce_against(ev_l.basis, val)
                    if coords is None:
                        raise ValueError("hom value leaves the vertex block")
                    out.extend(coords)
                out_cols.append(out)
        nrows = hom_dim(i)
        return RatMatrix(nrows, len(out_cols),
                         tuple(zip(*out_cols)) if out_cols
                         else tuple(() for _ in range(nrows)))

    dims = []
    nst = len(stages)
    for i in range(maxdeg + 1):
        if i >= nst:
            dims.append(0)
            continue
        d_in = dual_matrix(i + 1) if i + 1 < nst else None
        d_out = dual_matrix(i) if i >= 1 else None
        r_in = rank(d_in) if d_in is not None else 0
        r_out = rank(d_out) if d_out is not None else 0
        dims.append(hom_dim(i) - r_in - r_out)
    return dims


def ext_dims(alg: BasedAlgebra, t: AlgebraModule, m: AlgebraModule, maxdeg):
    stages = projective_resolution(alg, t, maxdeg + 1)
    return ext_dims_from_resolution(stages, m, maxdeg)
