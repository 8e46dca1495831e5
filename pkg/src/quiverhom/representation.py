"""Finite-dimensional representations of presentations over Q.

Column convention: the matrix of an arrow a has shape dim(head) x dim(tail)
and acts on coordinate columns; a path a1 a2 ... as (as applied first)
evaluates to M(a1) * M(a2) * ... * M(as).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (RatMatrix, Subspace, kernel, rank, reduce_against,
                     intersect, solve_conjugate, rref)
from .quiver import Quiver, Arrow, AlgElement, Presentation, BreakingSchedule, PLAIN
from .algebra import Report


class Representation:
    def __init__(self, quiver: Quiver, dims, mats):
        self.quiver = quiver
        self.dims = dict(dims)
        self.mats = dict(mats)
        for a in quiver.arrows.values():
            m = self.mats.get(a.id)
            if m is None:
                self.mats[a.id] = RatMatrix.zero(self.dims[a.head], self.dims[a.tail])
            elif (m.rows, m.cols) != (self.dims[a.head], self.dims[a.tail]):
                raise ValueError(f"matrix shape mismatch for arrow {a.id}")

    def evaluate(self, elem: AlgElement) -> RatMatrix:
        out = RatMatrix.zero(self.dims[elem.head], self.dims[elem.tail])
        for word, c in elem.terms.items():
            m = RatMatrix.identity(self.dims[elem.tail])
            for aid in reversed(word):
                m = self.mats[aid] * m
            out = out + m.scale(c)
        return out

    def total_dim(self):
        return sum(self.dims.values())

    def to_json(self):
        return {"dims": {str(v): d for v, d in self.dims.items()},
                "matrices": {aid: [[str(x) for x in row] for row in m.entries]
                             for aid, m in self.mats.items()}}

    def equal(self, other: "Representation"):
        if self.dims != other.dims:
            return False
        return all(self.mats[a].entries == other.mats[a].entries
                   for a in self.quiver.arrows)


def check_relations(rep: Representation, pres: Presentation) -> Report:
    report = Report("relation check")
    for i, r in enumerate(pres.all_relations()):
        m = rep.evaluate(r)
        if m.is_zero():
            report.add(f"relation {i} ({_short(r)})", True)
        else:
            witness = max(abs(x) for row in m.entries for x in row)
            report.add(f"relation {i} ({_short(r)})", False,
                       f"max |entry| {witness}")
    return report


def _short(r: AlgElement):
    parts = []
    for w, c in list(r.terms.items())[:3]:
        word = "*".join(w) if w else f"e_{r.tail}"
        parts.append(f"{c}[{word}]")
    return " + ".join(parts) + (" + ..." if len(r.terms) > 3 else "")


# ---------------------------------------------------------------------------
# contraction / insertion at a vertex


def composite_id(out_id, in_id):
    return f"{out_id}.{in_id}"


def contract(rep: Representation, i) -> Representation:
    q = rep.quiver
    if i not in q.degree:
        raise ValueError(f"no vertex {i}")
    if any(a.kind == "loop" and a.tail == i for a in q.arrows.values()):
        raise ValueError(f"cannot contract at vertex {i} with a loop")
    ins = [a for a in q.arrows.values() if a.head == i and a.tail != i]
    outs = [a for a in q.arrows.values() if a.tail == i and a.head != i]
    keep = [a for a in q.arrows.values() if i not in (a.tail, a.head)]
    arrows = [Arrow(a.id, a.tail, a.head, a.kind) for a in keep]
    mats = {a.id: rep.mats[a.id] for a in keep}
    for ao in outs:
        for ai in ins:
            cid = composite_id(ao.id, ai.id)
            arrows.append(Arrow(cid, ai.tail, ao.head, PLAIN))
            mats[cid] = rep.mats[ao.id] * rep.mats[ai.id]
    newq = Quiver([(v, q.degree[v]) for v in q.vertices if v != i], arrows)
    dims = {v: rep.dims[v] for v in q.vertices if v != i}
    return Representation(newq, dims, mats)


def insert(rep_small: Representation, q: Quiver, i) -> Representation:
    """Right adjoint section of contract: rebuild a representation of q from
    one over the quiver obtained by contracting q at i."""
    outs = sorted((a for a in q.arrows.values() if a.tail == i and a.head != i),
                  key=lambda a: a.id)
    ins = [a for a in q.arrows.values() if a.head == i and a.tail != i]
    dims = dict(rep_small.dims)
    dims[i] = sum(rep_small.dims[a.head] for a in outs)
    mats = {}
    for a in q.arrows.values():
        if i not in (a.tail, a.head):
            mats[a.id] = rep_small.mats[a.id]
    # in-arrows: stack the composites
    for ai in ins:
        blocks = []
        for ao in outs:
            blocks.append(rep_small.mats[composite_id(ao.id, ai.id)])
        if blocks:
            rows = []
            for b in blocks:
                rows.extend(b.tolists())
            mats[ai.id] = RatMatrix.from_rows(rows, cols=rep_small.dims[ai.tail])
        else:
            mats[ai.id] = RatMatrix.zero(0, rep_small.dims[ai.tail])
    # out-arrows: identity blocks
    offset = 0
    for ao in outs:
        d = rep_small.dims[ao.head]
        rows = []
        for r in range(d):
            row = [Fraction(0)] * dims[i]
            row[offset + r] = Fraction(1)
            rows.append(row)
        mats[ao.id] = RatMatrix.from_rows(rows, cols=dims[i])
        offset += d
    return Representation(q, dims, mats)


# ---------------------------------------------------------------------------
# standard modules over an acyclic path algebra


def _all_paths(q: Quiver):
    """All paths (as word tuples) of an acyclic quiver, grouped by (tail, head)."""
    if not q.is_acyclic():
        raise ValueError("quiver has oriented cycles")
    paths = {(v, v): [()] for v in q.vertices}
    frontier = {(v, v): [()] for v in q.vertices}
    while frontier:
        nxt = {}
        for (t, h), words in frontier.items():
            for a in q.arrows.values():
                if a.tail != h:
                    continue
                for w in words:
                    nw = (a.id,) + w
                    nxt.setdefault((t, a.head), []).append(nw)
        for k, ws in nxt.items():
            paths.setdefault(k, []).extend(ws)
        frontier = nxt
    return paths


def standard_module(q: Quiver, kind, v) -> Representation:
    paths = _all_paths(q)
    if kind == "simple":
        dims = {w: int(w == v) for w in q.vertices}
        return Representation(q, dims, {})
    if kind == "projective":
        basis = {w: sorted(paths.get((v, w), [])) for w in q.vertices}
        index = {w: {p: i for i, p in enumerate(basis[w])} for w in q.vertices}
        dims = {w: len(basis[w]) for w in q.vertices}
        mats = {}
        for a in q.arrows.values():
            rows = [[Fraction(0)] * dims[a.tail] for _ in range(dims[a.head])]
            for p, col in index[a.tail].items():
                rows[index[a.head][(a.id,) + p]][col] = Fraction(1)
            mats[a.id] = RatMatrix.from_rows(rows, cols=dims[a.tail])
        return Representation(q, dims, mats)
    if kind == "injective":
        basis = {w: sorted(paths.get((w, v), [])) for w in q.vertices}
        index = {w: {p: i for i, p in enumerate(basis[w])} for w in q.vertices}
        dims = {w: len(basis[w]) for w in q.vertices}
        mats = {}
        for a in q.arrows.values():
            # dual of right concatenation: entry [q', p] = 1 iff p = q' * a
            rows = [[Fraction(0)] * dims[a.tail] for _ in range(dims[a.head])]
            for p, col in index[a.tail].items():
                target = p + (a.id,)
                if target in index[a.head]:
                    rows[index[a.head][target]][col] = Fraction(1)
            mats[a.id] = RatMatrix.from_rows(rows, cols=dims[a.tail])
        return Representation(q, dims, mats)
    raise ValueError(f"unknown kind {kind}")


# ---------------------------------------------------------------------------
# Hom spaces and isomorphism search


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    space: Subspace          # stacked coordinates of all vertex blocks
    blocks: list             # [(vertex, rows, cols, offset)]

    @property
    def dim(self):
        return self.space.dim

    def tuple_from_row(self, row):
        out = {}
        for v, r, c, off in self.blocks:
            rows = [row[off + k * c: off + (k + 1) * c] for k in range(r)]
            out[v] = RatMatrix.from_rows(rows, cols=c)
        return out


def hom_space(m: Representation, n: Representation) -> HomSpace:
    if m.quiver is not n.quiver and set(m.quiver.arrows) != set(n.quiver.arrows):
        raise ValueError("representations over different quivers")
    q = m.quiver
    blocks = []
    off = 0
    for v in q.vertices:
        r, c = n.dims[v], m.dims[v]
        blocks.append((v, r, c, off))
        off += r * c
    total = off
    offmap = {v: o for v, _, _, o in blocks}
    rows = []
    for a in q.arrows.values():
        t, h = a.tail, a.head
        rt, ct = n.dims[t], m.dims[t]
        rh, ch = n.dims[h], m.dims[h]
        # phi_h * M(a) - N(a) * phi_t = 0, entry (i, j): i < rh? rows over (i,j)
        for i in range(rh):
            for j in range(ct):
                row = [Fraction(0)] * total
                # (phi_h * M(a))[i][j] = sum_k phi_h[i][k] M(a)[k][j]
                for k in range(ch):
                    row[offmap[h] + i * ch + k] += m.mats[a.id].entries[k][j]
                # (N(a) * phi_t)[i][j] = sum_k N(a)[i][k] phi_t[k][j]
                for k in range(rt):
                    row[offmap[t] + k * ct + j] -= n.mats[a.id].entries[i][k]
                rows.append(row)
    space = kernel(RatMatrix.from_rows(rows, cols=total)) if rows else Subspace.full(total)
    return HomSpace(m, n, space, blocks)


def _invertible_everywhere(hs: HomSpace, row):
    mats = hs.tuple_from_row(row)
    for v, r, c, _ in hs.blocks:
        if r != c:
            return False
        if r and rank(mats[v]) != r:
            return False
    return True


def iso_check(m: Representation, n: Representation, seed=0, trials=30):
    """Returns (status, data); status in {"iso", "no_iso_dims", "no_iso_probable"}."""
    if m.dims != n.dims:
        return "no_iso_dims", None
    hs = hom_space(m, n)
    for row in hs.space.basis.entries:
        if _invertible_everywhere(hs, list(row)):
            return "iso", hs.tuple_from_row(list(row))
    rng = random.Random(seed)
    dim = hs.dim
    if dim == 0:
        return ("iso", {v: RatMatrix.identity(0) for v in m.quiver.vertices}) \
            if m.total_dim() == 0 else ("no_iso_probable", {"seed": seed, "trials": 0})
    basis = [list(r) for r in hs.space.basis.entries]
    for phase, bound in ((trials, 3), (10, 10 ** 6)):
        for _ in range(phase):
            coeffs = [Fraction(rng.randint(-bound, bound)) for _ in range(dim)]
            row = [sum(c * b[j] for c, b in zip(coeffs, basis))
                   for j in range(len(basis[0]))]
            if _invertible_everywhere(hs, row):
                return "iso", hs.tuple_from_row(row)
    return "no_iso_probable", {"seed": seed, "trials": trials + 10}


# ---------------------------------------------------------------------------
# normalization along a breaking schedule


class NormalizeError(Exception):
    pass


def normalized_subspaces(rep: Representation, schedule: BreakingSchedule):
    """Vertexwise intersection of kernels of the scheduled projections."""
    by_tail = {}
    for proj, _ in schedule:
        by_tail.setdefault(proj.tail, []).append(proj)
    spaces = {}
    for v in rep.quiver.vertices:
        projs = by_tail.get(v)
        if not projs:
            spaces[v] = Subspace.full(rep.dims[v])
            continue
        rows = []
        for p in projs:
            rows.extend(rep.evaluate(p).tolists())
        spaces[v] = kernel(RatMatrix.from_rows(rows, cols=rep.dims[v]))
    return spaces


def normalize(rep: Representation, schedule: BreakingSchedule,
              target: Presentation, images) -> Representation:
    """Representation of the broken presentation on the kernel intersections.

    images: target arrow id -> AlgElement of rep's presentation; target
    vertices map identically to source vertices.
    """
    spaces = normalized_subspaces(rep, schedule)
    dims = {v: spaces[v].dim for v in target.quiver.vertices}
    mats = {}
    for aid, a in target.quiver.arrows.items():
        big = rep.evaluate(images[aid])
        nmat = solve_conjugate(big, spaces[a.tail], spaces[a.head])
        if nmat is None:
            raise NormalizeError(
                f"induced map {aid} does not preserve the kernel intersection")
        mats[aid] = nmat
    out = Representation(target.quiver, dims, mats)
    out.bases = spaces
    return out
