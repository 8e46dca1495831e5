"""Chain complexes, the normalized/unnormalized functors and the Dold-Kan
inverse, mixed complexes from cyclic objects, cubical versions, and two-row
bicomplexes."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .linalg import (RatMatrix, IntMatrix, Subspace, kernel, rank, rref,
                     reduce_against, solve_conjugate)
from .quiver import AlgElement, Presentation, BreakingSchedule
from .representation import (Representation, check_relations, normalize,
                             normalized_subspaces, iso_check)
from .theories import (TheoryDescriptor, simplicial_theory, cyclic_theory,
                       cubical_theory, complex_presentation,
                       cubical_complex_presentation,
                       symclic_section_formula, p, s, t, d, B)
from .algebra import Report


def _mat(ring, rows, cols_hint=0):
    if ring == "Z":
        return IntMatrix.from_rows(rows, cols=cols_hint)
    return RatMatrix.from_rows(rows, cols=cols_hint)


@dataclass
class ChainComplex:
    """Degrees bottom .. bottom+len(ranks)-1; diffs[i] maps degree bottom+i
    to bottom+i-1 (diffs[0] is None)."""

    ring: str
    bottom: int
    ranks: list
    diffs: list

    def __post_init__(self):
        if len(self.diffs) != len(self.ranks):
            raise ValueError("diffs must align with ranks")
        for i in range(1, len(self.ranks)):
            m = self.diffs[i]
            if (m.rows, m.cols) != (self.ranks[i - 1], self.ranks[i]):
                raise ValueError(f"boundary {i} has wrong shape")
        for i in range(2, len(self.ranks)):
            prod = self.diffs[i - 1] * self.diffs[i]
            if any(x for row in prod.entries for x in row):
                raise ValueError(f"d.d != 0 at degree {self.bottom + i}")

    @property
    def top(self):
        return self.bottom + len(self.ranks) - 1

    def rank_at(self, deg):
        i = deg - self.bottom
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0

    def diff_at(self, deg):
        """The boundary map out of `deg` (into deg-1), or None."""
        i = deg - self.bottom
        if 1 <= i < len(self.ranks):
            return self.diffs[i]
        return None

    def to_rational(self):
        if self.ring == "Q":
            return self
        diffs = [None] + [m.to_rat() for m in self.diffs[1:]]
        return ChainComplex("Q", self.bottom, list(self.ranks), diffs)

    def to_json(self):
        return {"ring": self.ring, "bottom": self.bottom,
                "ranks": list(self.ranks),
                "boundaries": [[[str(x) for x in row] for row in m.entries]
                               if m is not None else None for m in self.diffs]}

    @staticmethod
    def from_json(doc):
        ring = doc["ring"]
        conv = (lambda rows, c: IntMatrix.from_rows(
            [[int(Fraction(x)) for x in r] for r in rows], cols=c)) if ring == "Z" \
            else (lambda rows, c: RatMatrix.from_rows(rows, cols=c))
        ranks = doc["ranks"]
        diffs = [None]
        for i, rows in enumerate(doc["boundaries"][1:], start=1):
            diffs.append(conv(rows, ranks[i]))
        return ChainComplex(ring, doc["bottom"], ranks, diffs)

    def equal(self, other):
        return (self.ring == other.ring and self.bottom == other.bottom
                and self.ranks == other.ranks
                and all((a is None and b is None) or a.entries == b.entries
                        for a, b in zip(self.diffs, other.diffs)))


@dataclass
class MixedComplex:
    """d of degree -1 and B of degree +1 with d2 = B2 = dB + Bd = 0.
    Degrees 1..n; d[i]: C_{i+1} -> C_i entry convention as ChainComplex."""

    ranks: list
    d: list   # d[i] maps degree i+1 -> i (aligned like ChainComplex.diffs)
    b: list   # b[i] maps degree i -> i+1; b[0] is None, b[i]: ranks[i-1]->ranks[i]

    def __post_init__(self):
        n = len(self.ranks)
        for i in range(2, n):
            m = self.d[i - 1] * self.d[i]
            if not m.is_zero():
                raise ValueError(f"d.d != 0 at {i + 1}")
        for i in range(1, n - 1):
            m = self.b[i + 1] * self.b[i]
            if not m.is_zero():
                raise ValueError(f"B.B != 0 at {i}")
        for i in range(n):
            acc = RatMatrix.zero(self.ranks[i], self.ranks[i])
            if i + 1 < n:
                acc = acc + self.d[i + 1] * self.b[i + 1]
            if i >= 1:
                acc = acc + self.b[i] * self.d[i]
            if not acc.is_zero():
                raise ValueError(f"dB + Bd != 0 at degree {i + 1}")

    def total(self) -> ChainComplex:
        """Cyclic-style totalization Tot_j = sum of C_{j-2i}."""
        n = len(self.ranks)

        def comps(j):
            return list(range(j, 0, -2))

        ranks = []
        diffs = [None]
        for j in range(1, n + 1):
            cs = comps(j)
            ranks.append(sum(self.ranks[c - 1] for c in cs))
        for j in range(2, n + 1):
            src, dst = comps(j), comps(j - 1)
            dst_off = {}
            off = 0
            for c in dst:
                dst_off[c] = off
                off += self.ranks[c - 1]
            rows = [[Fraction(0)] * ranks[j - 1] for _ in range(ranks[j - 2])]
            coff = 0
            for c in src:
                width = self.ranks[c - 1]
                if c - 1 >= 1:
                    m = self.d[c - 1]
                    ro = dst_off[c - 1]
                    for r in range(m.rows):
                        for cc in range(width):
                            rows[ro + r][coff + cc] = m.entries[r][cc]
                if c + 1 in dst_off:
                    m = self.b[c]
                    ro = dst_off[c + 1]
                    for r in range(m.rows):
                        for cc in range(width):
                            rows[ro + r][coff + cc] = m.entries[r][cc]
                coff += width
            diffs.append(RatMatrix.from_rows(rows, cols=ranks[j - 1]))
        return ChainComplex("Q", 1, ranks, diffs)


@dataclass
class BiComplex:
    """Two rows with aligned degrees 1..n, connector c: top_k -> bottom_k."""

    top_ranks: list
    bot_ranks: list
    d: list   # top differentials, aligned like ChainComplex.diffs
    a: list   # bottom differentials
    c: list   # c[i]: top degree i+1 -> bottom degree i+1 (index 0 based)

    def __post_init__(self):
        n = len(self.top_ranks)
        for i in range(2, n):
            if not (self.d[i - 1] * self.d[i]).is_zero():
                raise ValueError("dd != 0 in top row")
            if not (self.a[i - 1] * self.a[i]).is_zero():
                raise ValueError("aa != 0 in bottom row")
        for k in range(1, n):
            lhs = self.c[k - 1] * self.d[k]
            rhs = self.a[k] * self.c[k]
            if not (lhs - rhs).is_zero():
                raise ValueError(f"cd != ac at degree {k + 1}")


def total_and_rows(bi: BiComplex):
    """(total, top, bottom) with the top row embedded one degree up.

    Tot_j = T_{j-1} + B_j with D(t, b) = (d t, c t - a b); the returned top
    complex carries its embedded grading (bottom degree 2), so that the long
    exact sequence of the cone reads degreewise against `total` and `bottom`.
    """
    n = len(bi.top_ranks)
    top = ChainComplex("Q", 2, list(bi.top_ranks), [None] + bi.d[1:])
    bottom = ChainComplex("Q", 1, list(bi.bot_ranks), [None] + bi.a[1:])

    def t_rank(j):
        return bi.top_ranks[j - 2] if 2 <= j <= n + 1 else 0

    def b_rank(j):
        return bi.bot_ranks[j - 1] if 1 <= j <= n else 0

    ranks = [t_rank(j) + b_rank(j) for j in range(1, n + 2)]
    diffs = [None]
    for j in range(2, n + 2):
        rows = []
        for r in range(t_rank(j - 1)):
            row = [Fraction(0)] * ranks[j - 1]
            if j - 1 >= 2:  # d_{j-1}: T_{j-1} -> T_{j-2}
                d_m = bi.d[j - 2]
                for cc in range(d_m.cols):
                    row[cc] = d_m.entries[r][cc]
            rows.append(row)
        for r in range(b_rank(j - 1)):
            row = [Fraction(0)] * ranks[j - 1]
            c_m = bi.c[j - 2] if 2 <= j <= n + 1 else None
            if c_m is not None:
                for cc in range(c_m.cols):
                    row[cc] = c_m.entries[r][cc]
            if j <= n:  # -a_j: B_j -> B_{j-1}
                a_m = bi.a[j - 1]
                for cc in range(a_m.cols):
                    row[t_rank(j) + cc] = -a_m.entries[r][cc]
            rows.append(row)
        diffs.append(RatMatrix.from_rows(rows, cols=ranks[j - 1]))
    total = ChainComplex("Q", 1, ranks, diffs)
    return total, top, bottom


# ---------------------------------------------------------------------------
# Moore and normalized functors (simplicial)


def moore(rep: Representation, theory: TheoryDescriptor | None = None) -> ChainComplex:
    theory = theory or rep.theory
    n = theory.n
    ranks = [rep.dims[k] for k in range(1, n + 1)]
    diffs = [None]
    for k in range(2, n + 1):
        m = RatMatrix.zero(rep.dims[k - 1], rep.dims[k])
        for i in range(1, k + 1):
            m = m + rep.mats[p(k, i)].scale((-1) ** i)
        diffs.append(m)
    return ChainComplex("Q", 1, ranks, diffs)


def normalized(rep: Representation, theory: TheoryDescriptor | None = None) -> ChainComplex:
    theory = theory or rep.theory
    nrep = normalize(rep, theory.schedule, theory.broken, theory.images)
    n = theory.n
    ranks = [nrep.dims[k] for k in range(1, n + 1)]
    diffs = [None] + [nrep.mats[d(k)] for k in range(2, n + 1)]
    out = ChainComplex("Q", 1, ranks, diffs)
    out.bases = nrep.bases
    return out


# ---------------------------------------------------------------------------
# Dold-Kan inverse K


def _surjections(m, p_):
    """Order-preserving surjections [m-1] ->> [p_-1] as value tuples."""
    if p_ > m:
        return []
    out = []
    for cuts in itertools.combinations(range(1, m), p_ - 1):
        val, ci, tup = 0, 0, []
        for x in range(m):
            if ci < len(cuts) and x == cuts[ci]:
                val += 1
                ci += 1
            tup.append(val)
        out.append(tuple(tup))
    return out


def _delta(j, m):
    """Injection [m-1] -> [m] skipping j."""
    return tuple(x if x < j else x + 1 for x in range(m))


def _sigma(j, m):
    """Surjection [m] -> [m-1] repeating j."""
    return tuple(x if x <= j else x - 1 for x in range(m + 1))


def _epi_mono(f, p_):
    """Factor f: [r] -> [p_-1]; returns (epi tuple, image sorted)."""
    image = sorted(set(f))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(pos[v] for v in f), image


def dold_kan_K(c: ChainComplex, n, theory: TheoryDescriptor | None = None) -> Representation:
    """Truncated Dold-Kan inverse; level m carries one copy of C_p per
    order-preserving surjection [m-1] ->> [p-1]."""
    if c.ring != "Q" or c.bottom != 1 or len(c.ranks) != n:
        raise ValueError("need a rational complex in degrees 1..n")
    theory = theory or simplicial_theory(n)
    q = theory.presentation.quiver
    summands = {}
    offsets = {}
    dims = {}
    for m in range(1, n + 1):
        lst = []
        for p_ in range(1, m + 1):
            for sj in _surjections(m, p_):
                lst.append((p_, sj))
        summands[m] = lst
        offs = {}
        off = 0
        for key in lst:
            offs[key] = off
            off += c.ranks[key[0] - 1]
        offsets[m] = offs
        dims[m] = off

    def block_map(theta, src_level, dst_level):
        """Matrix of K(theta) for theta: [dst_level-1] -> [src_level-1]."""
        rows = [[Fraction(0)] * dims[src_level] for _ in range(dims[dst_level])]
        for (p_, sj) in summands[src_level]:
            f = tuple(sj[theta[x]] for x in range(dst_level))
            epi, image = _epi_mono(f, p_)
            if image == list(range(p_)):
                blk = RatMatrix.identity(c.ranks[p_ - 1])
                tgt = (p_, epi)
            elif image == list(range(p_ - 1)) and p_ >= 2:
                blk = c.diffs[p_ - 1]
                tgt = (p_ - 1, epi)
            else:
                continue
            ro, co = offsets[dst_level][tgt], offsets[src_level][(p_, sj)]
            for r in range(blk.rows):
                for cc in range(blk.cols):
                    if blk.entries[r][cc]:
                        rows[ro + r][co + cc] = blk.entries[r][cc]
        return RatMatrix.from_rows(rows, cols=dims[src_level])

    mats = {}
    for m in range(2, n + 1):
        for i in range(1, m + 1):
            mats[p(m, i)] = block_map(_delta(i - 1, m - 1), m, m - 1)
        for i in range(1, m):
            mats[s(m, i)] = block_map(_sigma(i - 1, m - 1), m - 1, m)
    rep = Representation(q, dims, mats)
    rep.theory = theory
    return rep


def _degeneracy_operator(rep, sj, m):
    """X(sigma) for an order-preserving surjection sigma: [m-1] ->> [p-1],
    as a map X_p -> X_m (levels p, m)."""
    cur = list(sj)
    level = m
    word = []
    while len(cur) > len(set(cur)):
        pos = next(i for i in range(len(cur) - 1) if cur[i] == cur[i + 1])
        word.append((level, pos + 1))
        cur = cur[:pos + 1] + cur[pos + 2:]
        level -= 1
    p_ = len(cur)
    out = RatMatrix.identity(rep.dims[p_])
    for lvl, i in reversed(word):
        out = rep.mats[s(lvl, i)] * out
    return out


def canonical_comparison(rep, nc, theory):
    """The Dold-Kan comparison K(N(X)) -> X assembled from degeneracies
    applied to the normalized subspaces; exact block matrices per level."""
    maps = {}
    for m in range(1, theory.n + 1):
        cols = []
        for p_ in range(1, m + 1):
            base = nc.bases[p_].basis  # rows spanning N_p inside X_p
            for sj in _surjections(m, p_):
                op = _degeneracy_operator(rep, sj, m)
                for row in base.entries:
                    col = [sum(a * b for a, b in zip(mrow, row))
                           for mrow in op.entries]
                    cols.append(col)
        if cols:
            maps[m] = RatMatrix(rep.dims[m], len(cols),
                                tuple(zip(*cols)))
        else:
            maps[m] = RatMatrix.zero(rep.dims[m], 0)
    return maps


def roundtrip_check(rep: Representation, theory: TheoryDescriptor | None = None,
                    seed=0) -> Report:
    theory = theory or rep.theory
    report = Report("Dold-Kan round trip")
    nc = normalized(rep, theory)
    k = dold_kan_K(nc, theory.n, theory)
    nk = normalized(k, theory)
    report.add("normalized(K(N)) equals N exactly", nk.equal(nc))
    for m in range(1, theory.n + 1):
        want = sum(comb(m - 1, p_ - 1) * nc.ranks[p_ - 1] for p_ in range(1, m + 1))
        report.add(f"dim K(N)_{m} = sum of binomial multiplicities",
                   k.dims[m] == want, f"{k.dims[m]} vs {want}")
    psi = canonical_comparison(rep, nc, theory)
    square = all(psi[m].rows == psi[m].cols for m in psi)
    invertible = square and all(rank(psi[m]) == psi[m].rows for m in psi)
    intertwines = True
    for aid, a in theory.presentation.quiver.arrows.items():
        lhs = rep.mats[aid] * psi[a.tail]
        rhs = psi[a.head] * k.mats[aid]
        if not (lhs - rhs).is_zero():
            intertwines = False
            break
    report.add("canonical comparison K(N(X)) -> X is invertible", invertible)
    report.add("canonical comparison intertwines all arrows", intertwines)
    return report


# ---------------------------------------------------------------------------
# mixed complexes from cyclic objects


def _degenerate_space(rep, k):
    cols = []
    for i in range(1, k):
        m = rep.mats[s(k, i)]
        cols.extend(m.transpose().tolists())
    if not cols:
        return Subspace.zero(rep.dims[k])
    return Subspace.from_rows(cols, rep.dims[k])


def _projector_along(nspace: Subspace, dspace: Subspace):
    """Matrix (dim N x ambient) of the projection onto N along D."""
    amb = nspace.ambient
    rows = nspace.basis.tolists() + dspace.basis.tolists()
    if len(rows) != amb:
        raise ValueError("N + D do not fill the ambient space")
    smat = RatMatrix.from_rows(rows, cols=amb)
    r, red = rref(smat.transpose().hstack(RatMatrix.identity(amb)))
    if r != amb:
        raise ValueError("N + D is not a direct sum")
    inv_t = RatMatrix(amb, amb, tuple(row[amb:] for row in red.entries))
    # columns of inv_t.T give coordinates; we need the first dim-N coords
    rows_out = [tuple(inv_t.entries[i]) for i in range(nspace.dim)]
    return RatMatrix(nspace.dim, amb, tuple(rows_out))


def mixed_from_cyclic(rep: Representation, theory: TheoryDescriptor | None = None)\
        -> MixedComplex:
    theory = theory or rep.theory
    n = theory.n
    nspaces = normalized_subspaces(rep, theory.schedule)
    ranks, dmats, bmats = [], [None], [None]
    projs = {}
    for k in range(1, n + 1):
        ranks.append(nspaces[k].dim)
        projs[k] = _projector_along(nspaces[k], _degenerate_space(rep, k)) \
            if k >= 2 else RatMatrix.identity(rep.dims[1]) if nspaces[k].dim == rep.dims[1] \
            else _projector_along(nspaces[k], Subspace.zero(rep.dims[k]))
    for k in range(2, n + 1):
        big = rep.evaluate(theory.images[d(k)])
        m = solve_conjugate(big, nspaces[k], nspaces[k - 1])
        if m is None:
            raise ValueError("normalized differential leaves the subspace")
        dmats.append(m)
    q = theory.presentation.quiver
    for k in range(2, n + 1):
        raw = rep.evaluate(symclic_section_formula(q, k))
        cols = []
        for row in nspaces[k - 1].basis.entries:
            img = [sum(a * b for a, b in zip(mrow, row)) for mrow in raw.entries]
            coords = [sum(prow[j] * img[j] for j in range(len(img)))
                      for prow in projs[k].entries]
            cols.append(coords)
        bmats.append(RatMatrix(ranks[k - 1], ranks[k - 2],
                               tuple(tuple(col[j] for col in cols)
                                     for j in range(ranks[k - 1]))))
    return MixedComplex(ranks, dmats, bmats)


# ---------------------------------------------------------------------------
# cubical objects


def cubical_normalize(rep: Representation, theory: TheoryDescriptor | None = None)\
        -> Representation:
    theory = theory or rep.theory
    out = normalize(rep, theory.schedule, theory.broken, theory.images)
    rpt = check_relations(out, theory.broken)
    if not rpt.ok:
        raise ValueError("normalized cubical object violates the target relations")
    out.theory = theory
    return out


def cubical_moore(rep: Representation, theory: TheoryDescriptor | None = None)\
        -> Representation:
    theory = theory or rep.theory
    n = theory.n
    target = theory.broken
    mats = {}
    for k in range(2, n + 1):
        for i in range(1, k):
            mats[d(k, i)] = rep.mats[p(k, i, "+")] + rep.mats[p(k, i, "-")]
    dims = {k: rep.dims[k] for k in range(1, n + 1)}
    out = Representation(target.quiver, dims, mats)
    rpt = check_relations(out, target)
    if not rpt.ok:
        raise ValueError("cubical Moore object violates the target relations")
    out.theory = theory
    return out


def cubical_K(c: Representation, n, theory: TheoryDescriptor | None = None)\
        -> Representation:
    """Inverse functor for cubes: level m carries one copy of C_{|S|+1} per
    subset S of the m-1 directions (S = non-degenerate directions)."""
    theory = theory or cubical_theory(n)
    q = theory.presentation.quiver
    summands, offsets, dims = {}, {}, {}
    for m in range(1, n + 1):
        lst = []
        for size in range(0, m):
            for S in itertools.combinations(range(1, m), size):
                lst.append(S)
        summands[m] = lst
        offs, off = {}, 0
        for S in lst:
            offs[S] = off
            off += c.dims[len(S) + 1]
        offsets[m] = offs
        dims[m] = off

    def shift_down(S, j):
        return tuple(x if x < j else x - 1 for x in S)

    def shift_up(S, j):
        return tuple(x if x < j else x + 1 for x in S)

    mats = {}
    for m in range(2, n + 1):
        for i in range(1, m):
            for sign in ("+", "-"):
                rows = [[Fraction(0)] * dims[m] for _ in range(dims[m - 1])]
                for S in summands[m]:
                    co = offsets[m][S]
                    if i not in S:
                        T = shift_down(tuple(x for x in S if x != i), i)
                        blk = RatMatrix.identity(c.dims[len(S) + 1])
                    elif sign == "-":
                        continue
                    else:
                        r = sum(1 for x in S if x <= i)
                        T = shift_down(tuple(x for x in S if x != i), i)
                        blk = c.mats[d(len(S) + 1, r)]
                    ro = offsets[m - 1][T]
                    for rr in range(blk.rows):
                        for cc in range(blk.cols):
                            if blk.entries[rr][cc]:
                                rows[ro + rr][co + cc] = blk.entries[rr][cc]
                mats[p(m, i, sign)] = RatMatrix.from_rows(rows, cols=dims[m])
        for i in range(1, m):
            rows = [[Fraction(0)] * dims[m - 1] for _ in range(dims[m])]
            for S in summands[m - 1]:
                co = offsets[m - 1][S]
                T = shift_up(S, i)
                ro = offsets[m][T]
                for rr in range(c.dims[len(S) + 1]):
                    rows[ro + rr][co + rr] = Fraction(1)
            mats[s(m, i)] = RatMatrix.from_rows(rows, cols=dims[m - 1])
    rep = Representation(q, dims, mats)
    rep.theory = theory
    return rep


# ---------------------------------------------------------------------------
# random generators (seeded, exact)


def random_complex(seed, n, maxdim=4, ring="Q", lo=-3, hi=3) -> ChainComplex:
    rng = random.Random(seed)
    ranks = [rng.randint(0, maxdim) for _ in range(n)]
    diffs = [None]
    prev = None
    for k in range(1, n):
        rows, cols = ranks[k - 1], ranks[k]
        if prev is None or prev.rows == 0:
            space = Subspace.full(rows)
        else:
            space = kernel(prev)
        pick = []
        for _ in range(cols):
            col = [Fraction(0)] * rows
            for brow in space.basis.entries:
                cf = rng.randint(lo, hi)
                if cf:
                    col = [x + cf * y for x, y in zip(col, brow)]
            pick.append(col)
        m = RatMatrix(rows, cols, tuple(zip(*pick)) if pick and rows else
                      tuple(() for _ in range(rows)))
        if rows == 0 or cols == 0:
            m = RatMatrix.zero(rows, cols)
        diffs.append(m)
        prev = m
    out = ChainComplex("Q", 1, ranks, diffs)
    if ring == "Z":
        idiffs = [None]
        for m in out.diffs[1:]:
            idiffs.append(IntMatrix.from_rows(
                [[int(x) for x in row] for row in m.entries], cols=m.cols))
        return ChainComplex("Z", 1, ranks, idiffs)
    return out


def random_invertible(rng, n):
    while True:
        rows = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        m = RatMatrix.from_rows(rows, cols=n)
        if n == 0 or rank(m) == n:
            return m


def _inverse(m: RatMatrix) -> RatMatrix:
    n = m.rows
    r, red = rref(m.hstack(RatMatrix.identity(n)))
    if r != n:
        raise ValueError("singular")
    return RatMatrix(n, n, tuple(row[n:] for row in red.entries[:n]))


def random_simplicial(seed, n, maxdim=4, theory=None) -> Representation:
    """Random truncated simplicial vector space: K of a random complex,
    twisted by random basis changes (degeneracy padding stays generic)."""
    rng = random.Random(seed)
    c = random_complex(rng.randint(0, 10 ** 9), n, maxdim)
    theory = theory or simplicial_theory(n)
    rep = dold_kan_K(c, n, theory)
    tw = {m: random_invertible(rng, rep.dims[m]) for m in range(1, n + 1)}
    tw_inv = {m: _inverse(tw[m]) for m in tw}
    mats = {}
    for aid, a in theory.presentation.quiver.arrows.items():
        mats[aid] = tw[a.head] * rep.mats[aid] * tw_inv[a.tail]
    out = Representation(theory.presentation.quiver, rep.dims, mats)
    out.theory = theory
    return out


def random_cubical_complex(seed, n, maxdim=3, theory_target=None) -> Representation:
    """Random representation of the cubical-complex relations, built level by
    level by sampling the solution space of the linear constraints."""
    rng = random.Random(seed)
    target = theory_target or cubical_complex_presentation(n)
    dims = {k: rng.randint(1, maxdim) for k in range(1, n + 1)}
    mats = {}
    for k in range(2, n + 1):
        nvars = (k - 1) * dims[k - 1] * dims[k]
        rows = []

        def var(i, r, cc):
            return (i - 1) * dims[k - 1] * dims[k] + r * dims[k] + cc

        for i in range(1, k - 1):
            for j in range(i, k - 1):
                # d_i^{(k-1)} d_{j+1}^{(k)} = d_j^{(k-1)} d_i^{(k)}
                for r in range(dims[k - 2]):
                    for cc in range(dims[k]):
                        row = [Fraction(0)] * nvars
                        mi = mats[d(k - 1, i)]
                        mj = mats[d(k - 1, j)]
                        for mid in range(dims[k - 1]):
                            row[var(j + 1, mid, cc)] += mi.entries[r][mid]
                            row[var(i, mid, cc)] -= mj.entries[r][mid]
                        rows.append(row)
        space = kernel(RatMatrix.from_rows(rows, cols=nvars)) if rows \
            else Subspace.full(nvars)
        flat = [Fraction(0)] * nvars
        for brow in space.basis.entries:
            cf = rng.randint(-2, 2)
            if cf:
                flat = [x + cf * y for x, y in zip(flat, brow)]
        for i in range(1, k):
            rows_m = [[flat[var(i, r, cc)] for cc in range(dims[k])]
                      for r in range(dims[k - 1])]
            mats[d(k, i)] = RatMatrix.from_rows(rows_m, cols=dims[k])
    rep = Representation(target.quiver, dims, mats)
    return rep


def random_bicomplex(seed, n, maxdim=4) -> BiComplex:
    rng = random.Random(seed)
    top = random_complex(rng.randint(0, 10 ** 9), n, maxdim)
    bot = random_complex(rng.randint(0, 10 ** 9), n, maxdim)
    # chain maps c with c_{k-1} d_k = a_k c_k, solved degreewise as one system
    nvars = sum(bot.ranks[i] * top.ranks[i] for i in range(n))
    offs, off = [], 0
    for i in range(n):
        offs.append(off)
        off += bot.ranks[i] * top.ranks[i]

    def var(i, r, cc):
        return offs[i] + r * top.ranks[i] + cc

    rows = []
    for k in range(2, n + 1):
        dk = top.diffs[k - 1]
        ak = bot.diffs[k - 1]
        for r in range(bot.ranks[k - 2]):
            for cc in range(top.ranks[k - 1]):
                row = [Fraction(0)] * nvars
                for m in range(top.ranks[k - 2]):
                    row[var(k - 2, r, m)] += dk.entries[m][cc]
                for m in range(bot.ranks[k - 1]):
                    row[var(k - 1, m, cc)] -= ak.entries[r][m]
                rows.append(row)
    space = kernel(RatMatrix.from_rows(rows, cols=nvars)) if rows \
        else Subspace.full(nvars)
    flat = [Fraction(0)] * nvars
    for brow in space.basis.entries:
        cf = rng.randint(-2, 2)
        if cf:
            flat = [x + cf * y for x, y in zip(flat, brow)]
    cmats = []
    for i in range(n):
        rows_m = [[flat[var(i, r, cc)] for cc in range(top.ranks[i])]
                  for r in range(bot.ranks[i])]
        cmats.append(RatMatrix.from_rows(rows_m, cols=top.ranks[i]))
    return BiComplex(list(top.ranks), list(bot.ranks),
                     list(top.diffs), list(bot.diffs), cmats)
