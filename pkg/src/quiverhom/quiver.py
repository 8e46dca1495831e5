"""Quivers, paths, relation elements and presentations.

A path p = a1 a2 ... as is stored as the tuple of arrow ids with a1 applied
last: tail(p) = tail(as), head(p) = head(a1).  Products concatenate tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import _to_fraction

PLAIN = "plain"
PROJECTION = "projection"
SECTION = "section"
LOOP = "loop"
KINDS = (PLAIN, PROJECTION, SECTION, LOOP)


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: object
    head: object
    kind: str = PLAIN


class Quiver:
    def __init__(self, vertices, arrows):
        """vertices: iterable of (id, degree); arrows: iterable of Arrow."""
        self.degree = dict(vertices)
        self.vertices = list(self.degree)
        self.arrows = {}
        for a in arrows:
            if a.id in self.arrows:
                raise ValueError(f"duplicate arrow id {a.id}")
            if a.tail not in self.degree or a.head not in self.degree:
                raise ValueError(f"arrow {a.id} references unknown vertex")
            if a.kind == LOOP and a.tail != a.head:
                raise ValueError(f"loop {a.id} with tail != head")
            if a.kind != LOOP and a.tail == a.head:
                raise ValueError(f"non-loop arrow {a.id} with tail == head")
            self.arrows[a.id] = a
        degs = list(self.degree.values())
        if len(set(degs)) != len(degs):
            raise ValueError("degree labels must be injective on vertices")
        for a in self.arrows.values():
            if a.kind == SECTION and not self.degree[a.head] > self.degree[a.tail]:
                raise ValueError(f"section {a.id} must raise degree")
            if a.kind == PROJECTION and not self.degree[a.head] < self.degree[a.tail]:
                raise ValueError(f"projection {a.id} must lower degree")

    def arrows_out(self, v):
        return [a for a in self.arrows.values() if a.tail == v]

    def arrows_in(self, v):
        return [a for a in self.arrows.values() if a.head == v]

    def is_acyclic(self):
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows.values():
            indeg[a.head] += 1
        stack = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self.arrows_out(v):
                indeg[a.head] -= 1
                if indeg[a.head] == 0:
                    stack.append(a.head)
        return seen == len(self.vertices)

    def path_tail(self, word):
        return self.arrows[word[-1]].tail

    def path_head(self, word):
        return self.arrows[word[0]].head

    def check_word(self, word):
        for left, right in zip(word, word[1:]):
            if self.arrows[left].tail != self.arrows[right].head:
                raise ValueError(f"non-composable word {word}")


@dataclass
class AlgElement:
    """Homogeneous linear combination of paths sharing (tail, head)."""

    tail: object
    head: object
    terms: dict = field(default_factory=dict)  # word tuple -> Fraction

    def __post_init__(self):
        self.terms = {w: _to_fraction(c) for w, c in self.terms.items() if c}

    @property
    def max_len(self):
        return max((len(w) for w in self.terms), default=0)

    def __add__(self, other):
        if (self.tail, self.head) != (other.tail, other.head):
            raise ValueError("inhomogeneous sum")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return AlgElement(self.tail, self.head, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _to_fraction(c)
        return AlgElement(self.tail, self.head, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        """self * other: other is applied first."""
        if other.head != self.tail:
            raise ValueError("non-composable product")
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, Fraction(0)) + c1 * c2
        return AlgElement(other.tail, self.head, terms)

    def is_zero(self):
        return not self.terms


def trivial(v):
    return AlgElement(v, v, {(): Fraction(1)})


def arrow_elem(q: Quiver, arrow_id):
    a = q.arrows[arrow_id]
    return AlgElement(a.tail, a.head, {(arrow_id,): Fraction(1)})


def path_elem(q: Quiver, word):
    word = tuple(word)
    q.check_word(word)
    return AlgElement(q.path_tail(word), q.path_head(word), {word: Fraction(1)})


class Presentation:
    """Quiver with relations and sections.

    relations: AlgElements meaning "element = 0".
    sections: (projection arrow id, section arrow id) pairs meaning
    a * ar = e_{head(a)}; the implied relation is added automatically
    when enumerating.
    """

    def __init__(self, quiver: Quiver, relations, sections, degree_bound=None):
        self.quiver = quiver
        self.relations = list(relations)
        self.sections = [tuple(p) for p in sections]
        if degree_bound is None:
            degree_bound = 2 * len(quiver.vertices) + 2
        self.degree_bound = degree_bound
        proj = {p for p, _ in self.sections}
        sect = {s for _, s in self.sections}
        if proj & sect:
            raise ValueError(f"projection/section sets overlap: {proj & sect}")
        for p, s in self.sections:
            ap, asec = quiver.arrows[p], quiver.arrows[s]
            if (ap.tail, ap.head) != (asec.head, asec.tail):
                raise ValueError(f"section pair ({p},{s}) endpoints do not match")
        for r in self.relations:
            for w in r.terms:
                if w:
                    quiver.check_word(w)
                    if (quiver.path_tail(w), quiver.path_head(w)) != (r.tail, r.head):
                        raise ValueError(f"relation term {w} not homogeneous")

    def section_relations(self):
        out = []
        for p, s in self.sections:
            a = self.quiver.arrows[p]
            out.append(arrow_elem(self.quiver, p) * arrow_elem(self.quiver, s)
                       - trivial(a.head))
        return out

    def all_relations(self):
        return self.relations + self.section_relations()

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "vertices": [{"id": v, "degree": self.quiver.degree[v]}
                         for v in self.quiver.vertices],
            "arrows": [{"id": a.id, "tail": a.tail, "head": a.head, "kind": a.kind}
                       for a in self.quiver.arrows.values()],
            "relations": [
                {"paths": [list(w) for w in r.terms],
                 "coeffs": [str(c) for c in r.terms.values()],
                 "tail": r.tail, "head": r.head}
                for r in self.relations],
            "sections": [list(p) for p in self.sections],
            "degree_bound": self.degree_bound,
        }

    @staticmethod
    def from_json(doc):
        q = Quiver([(v["id"], v["degree"]) for v in doc["vertices"]],
                   [Arrow(a["id"], a["tail"], a["head"], a.get("kind", PLAIN))
                    for a in doc["arrows"]])
        rels = []
        for r in doc["relations"]:
            terms = {tuple(w): Fraction(c) for w, c in zip(r["paths"], r["coeffs"])}
            rels.append(AlgElement(r["tail"], r["head"], terms))
        return Presentation(q, rels, [tuple(s) for s in doc["sections"]],
                            doc.get("degree_bound"))

    def dumps(self):
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


@dataclass
class BreakingSchedule:
    """Breaking steps applied first-to-last; each step is (projection, section)
    given as AlgElements of the presentation being broken."""

    steps: list

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)
