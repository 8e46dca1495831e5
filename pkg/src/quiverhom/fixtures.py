"""Desk-scale fixtures: the five worked three-level examples.

Each fixture is the corresponding theory at n = 3 with the traditional
arrow names (b's between levels 3 and 2, a's between 2 and 1), together
with its breaking schedules, the expected basic idempotents, the reduced
presentation and the generator formulas in the big algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .quiver import (Quiver, Arrow, AlgElement, Presentation, BreakingSchedule,
                     PLAIN, LOOP)
from .linalg import IntMatrix
from .theories import (TheoryDescriptor, simplicial_theory, cyclic_theory,
                       symclic_theory, cubical_theory, cubical_perm_theory, el)


@dataclass
class Fixture:
    name: str
    descriptor: TheoryDescriptor
    schedules: list                      # list of BreakingSchedule
    idempotents: dict                    # vertex -> AlgElement (expected e_v1)
    broken_target: Presentation
    broken_images: dict                  # target generator -> AlgElement
    expected_multiplicity: IntMatrix | None = None
    elementary_factors: list = field(default_factory=list)
    check_generation: bool = True

    @property
    def presentation(self):
        return self.descriptor.presentation


def _q(fix):
    return fix.presentation.quiver


def _elem(q, *pairs):
    tail = None
    terms = {}
    for c, word in pairs:
        word = tuple(word)
        terms[word] = terms.get(word, Fraction(0)) + Fraction(c)
    # infer endpoints from the first nontrivial word
    for word in terms:
        if word:
            return AlgElement(q.path_tail(word), q.path_head(word), terms)
    raise ValueError("cannot infer endpoints")


def _pairs_elem(q, tail, head, *pairs):
    terms = {}
    for c, word in pairs:
        word = tuple(word)
        terms[word] = terms.get(word, Fraction(0)) + Fraction(c)
    return AlgElement(tail, head, terms)


SIMPLE3_RENAME = {
    "p3.1": "b1", "p3.2": "b2", "p3.3": "b3", "s3.1": "b1r", "s3.2": "b2r",
    "p2.1": "a1", "p2.2": "a2", "s2.1": "a1r",
}
CYCLE3_RENAME = dict(SIMPLE3_RENAME, **{"t3": "t3", "t2": "t2"})
SYMCLE3_RENAME = dict(CYCLE3_RENAME, **{"sr3": "br", "sr2": "ar"})
CUBE3_RENAME = {
    "p3.1+": "b1", "p3.2+": "b2", "p3.1-": "b-1", "p3.2-": "b-2",
    "s3.1": "b-1r", "s3.2": "b-2r",
    "p2.1+": "a1", "p2.1-": "a-1", "s2.1": "a-1r",
}
CUBEWP3_RENAME = dict(CUBE3_RENAME, **{"t3.1": "t"})


def simple3() -> Fixture:
    desc = simplicial_theory(3).rename(SIMPLE3_RENAME, "simple3")
    q = desc.presentation.quiver
    e = lambda *pairs: _elem(q, *pairs)
    arrow = lambda a: _elem(q, (1, (a,)))
    main = BreakingSchedule([(arrow("b1"), arrow("b1r")),
                             (arrow("a1"), arrow("a1r")),
                             (arrow("b2"), arrow("b2r"))])
    alt = BreakingSchedule([(arrow("a1"), arrow("a1r")),
                            (arrow("b1"), arrow("b1r")),
                            (arrow("b2"), arrow("b2r")),
                            (e((1, ("a1", "b2"))), e((1, ("b2r", "a1r"))))])
    idem = {
        3: _pairs_elem(q, 3, 3, (1, ()), (-1, ("b2r", "b2")),
                       (1, ("b2r", "b1")), (-1, ("b1r", "b1"))),
        2: _pairs_elem(q, 2, 2, (1, ()), (-1, ("a1r", "a1"))),
        1: _pairs_elem(q, 1, 1, (1, ())),
    }
    tq = Quiver([(1, 1), (2, 2), (3, 3)],
                [Arrow("b3p", 3, 2), Arrow("a2p", 2, 1)])
    target = Presentation(tq, [el(tq, (3, 1), (1, ("a2p", "b3p")))], [])
    images = {
        "b3p": e((1, ("b3",)), (-1, ("b2",)), (1, ("b1",)),
                 (-1, ("b3", "b1r", "b1"))),
        "a2p": e((1, ("a2",)), (-1, ("a1",))),
        1: idem[1], 2: idem[2], 3: idem[3],
    }
    mult = IntMatrix.from_rows([[1, 2, 1], [0, 1, 1], [0, 0, 1]])
    factors = [
        # schedule (b2, a1, b1): displayed factorization, applied order
        [[[1, 1, 0], [0, 1, 0], [0, 0, 1]],
         [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
         [[1, 1, 0], [0, 1, 0], [0, 0, 1]]],
        # schedule (a1 b2, b2, b1, a1)
        [[[1, 0, 0], [0, 1, 1], [0, 0, 1]],
         [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
         [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
         [[1, 0, 1], [0, 1, 0], [0, 0, 1]]],
    ]
    return Fixture("simple3", desc, [main, alt], idem, target, images,
                   mult, factors)


def cycle3() -> Fixture:
    desc = cyclic_theory(3).rename(CYCLE3_RENAME, "cycle3")
    q = desc.presentation.quiver
    e = lambda *pairs: _elem(q, *pairs)
    arrow = lambda a: _elem(q, (1, (a,)))
    main = BreakingSchedule([(arrow("b1"), arrow("b1r")),
                             (arrow("a1"), arrow("a1r")),
                             (arrow("b2"), arrow("b2r"))])
    idem = simple3().idempotents
    idem = {
        3: _pairs_elem(q, 3, 3, (1, ()), (-1, ("b2r", "b2")),
                       (1, ("b2r", "b1")), (-1, ("b1r", "b1"))),
        2: _pairs_elem(q, 2, 2, (1, ()), (-1, ("a1r", "a1"))),
        1: _pairs_elem(q, 1, 1, (1, ())),
    }
    tq = Quiver([(1, 1), (2, 2), (3, 3)],
                [Arrow("b3p", 3, 2), Arrow("brp", 2, 3),
                 Arrow("a2p", 2, 1), Arrow("arp", 1, 2),
                 Arrow("tp3", 3, 3, LOOP), Arrow("tp2", 2, 2, LOOP)])
    # the four displayed relations; the example notes more involving t'
    target = Presentation(tq, [
        el(tq, (3, 1), (1, ("a2p", "b3p"))),
        el(tq, (1, 3), (1, ("brp", "arp"))),
        el(tq, (1, 1), (1, ("a2p", "arp"))),
        el(tq, (2, 2), (1, ("b3p", "brp")), (-1, ("b3p", "brp", "tp2")),
           (1, ("arp", "a2p"))),
    ], [])
    images = {
        "b3p": e((1, ("b3",)), (-1, ("b2",)), (1, ("b1",)),
                 (-1, ("b3", "b1r", "b1"))),
        "a2p": e((1, ("a2",)), (-1, ("a1",))),
        "brp": _corner_formula(q, 2, 3, (-1, ("t3", "b2r"))),
        "arp": _corner_formula(q, 1, 2, (1, ("t2", "a1r"))),
        "tp3": _corner_formula(q, 3, 3, (1, ("t3",))),
        "tp2": _corner_formula(q, 2, 2, (1, ("t2",))),
        1: idem[1], 2: idem[2], 3: idem[3],
    }
    mult = IntMatrix.from_rows([[1, 2, 1], [0, 1, 1], [0, 0, 1]])
    return Fixture("cycle3", desc, [main], idem, target, images, mult)


def _corner_formula(q, tail, head, *pairs):
    """e_{head,1} * x * e_{tail,1} written out with the standard idempotents."""
    idem = {
        3: _pairs_elem(q, 3, 3, (1, ()), (-1, ("b2r", "b2")),
                       (1, ("b2r", "b1")), (-1, ("b1r", "b1"))),
        2: _pairs_elem(q, 2, 2, (1, ()), (-1, ("a1r", "a1"))),
        1: _pairs_elem(q, 1, 1, (1, ())),
    }
    x = _pairs_elem(q, tail, head,
                    *[(c, tuple(w)) for c, w in pairs])
    return idem[head] * x * idem[tail]


def symcle3() -> Fixture:
    desc = symclic_theory(3).rename(SYMCLE3_RENAME, "symcle3")
    q = desc.presentation.quiver
    e = lambda *pairs: _elem(q, *pairs)
    arrow = lambda a: _elem(q, (1, (a,)))
    main = BreakingSchedule([(arrow("b1"), arrow("b1r")),
                             (arrow("a1"), arrow("a1r")),
                             (arrow("b2"), arrow("b2r"))])
    idem = {
        3: _pairs_elem(q, 3, 3, (1, ()), (-1, ("b2r", "b2")),
                       (1, ("b2r", "b1")), (-1, ("b1r", "b1"))),
        2: _pairs_elem(q, 2, 2, (1, ()), (-1, ("a1r", "a1"))),
        1: _pairs_elem(q, 1, 1, (1, ())),
    }
    tq = Quiver([(1, 1), (2, 2), (3, 3)],
                [Arrow("b3p", 3, 2), Arrow("Brp", 2, 3),
                 Arrow("a2p", 2, 1), Arrow("Arp", 1, 2)])
    target = Presentation(tq, [
        el(tq, (3, 1), (1, ("a2p", "b3p"))),
        el(tq, (1, 3), (1, ("Brp", "Arp"))),
        el(tq, (1, 1), (1, ("a2p", "Arp"))),
        el(tq, (2, 2), (1, ("b3p", "Brp")), (1, ("Arp", "a2p"))),
    ], [])
    images = {
        "b3p": e((1, ("b3",)), (-1, ("b2",)), (1, ("b1",)),
                 (-1, ("b3", "b1r", "b1"))),
        "a2p": e((1, ("a2",)), (-1, ("a1",))),
        # B^r and A^r exactly as displayed in the example
        "Brp": _pairs_elem(q, 2, 3,
                           (1, ("br",)),
                           (1, ("b2r", "b2", "t3", "b2r")),
                           (-1, ("b2r", "t2", "b3", "b1r")),
                           (-1, ("b2r",)),
                           (1, ("b2r", "t2")),
                           (1, ("b1r",)),
                           (-1, ("b1r", "t2"))),
        "Arp": _pairs_elem(q, 1, 2, (1, ("ar",)), (-1, ("a1r",))),
        1: idem[1], 2: idem[2], 3: idem[3],
    }
    mult = IntMatrix.from_rows([[1, 2, 1], [0, 1, 1], [0, 0, 1]])
    return Fixture("symcle3", desc, [main], idem, target, images, mult,
                   check_generation=False)


def cube3() -> Fixture:
    desc = cubical_theory(3).rename(CUBE3_RENAME, "cube3")
    q = desc.presentation.quiver
    e = lambda *pairs: _elem(q, *pairs)
    arrow = lambda a: _elem(q, (1, (a,)))
    main = BreakingSchedule([(arrow("b-1"), arrow("b-1r")),
                             (arrow("a-1"), arrow("a-1r")),
                             (arrow("b-2"), arrow("b-2r"))])
    alt = BreakingSchedule([(arrow("a-1"), arrow("a-1r")),
                            (arrow("b-1"), arrow("b-1r")),
                            (arrow("b-2"), arrow("b-2r")),
                            (e((1, ("a-1", "b-1"))), e((1, ("b-1r", "a-1r"))))])
    idem = {
        3: _pairs_elem(q, 3, 3, (1, ()), (-1, ("b-2r", "b-2")),
                       (-1, ("b-1r", "b-1")), (1, ("b-2r", "b-2", "b-1r", "b-1"))),
        2: _pairs_elem(q, 2, 2, (1, ()), (-1, ("a-1r", "a-1"))),
        1: _pairs_elem(q, 1, 1, (1, ())),
    }
    tq = Quiver([(1, 1), (2, 2), (3, 3)],
                [Arrow("b1p", 3, 2), Arrow("b2p", 3, 2), Arrow("a1p", 2, 1)])
    target = Presentation(tq, [
        el(tq, (3, 1), (1, ("a1p", "b1p")), (-1, ("a1p", "b2p"))),
    ], [])
    images = {
        "b1p": e((1, ("b1",)), (-1, ("b-1",)), (-1, ("b1", "b-2r", "b-2")),
                 (1, ("b-1", "b-2r", "b-2"))),
        "b2p": e((1, ("b2",)), (-1, ("b-2",)), (-1, ("b2", "b-1r", "b-1")),
                 (1, ("b-2", "b-1r", "b-1"))),
        "a1p": e((1, ("a1",)), (-1, ("a-1",))),
        1: idem[1], 2: idem[2], 3: idem[3],
    }
    mult = IntMatrix.from_rows([[1, 2, 1], [0, 1, 1], [0, 0, 1]])
    return Fixture("cube3", desc, [main, alt], idem, target, images, mult)


def cubewp3() -> Fixture:
    desc = cubical_perm_theory(3).rename(CUBEWP3_RENAME, "cubewp3")
    q = desc.presentation.quiver
    e = lambda *pairs: _elem(q, *pairs)
    arrow = lambda a: _elem(q, (1, (a,)))
    main = BreakingSchedule([(arrow("b-1"), arrow("b-1r")),
                             (arrow("a-1"), arrow("a-1r")),
                             (arrow("b-2"), arrow("b-2r"))])
    idem = cube3().idempotents
    idem = {
        3: _pairs_elem(q, 3, 3, (1, ()), (-1, ("b-2r", "b-2")),
                       (-1, ("b-1r", "b-1")), (1, ("b-2r", "b-2", "b-1r", "b-1"))),
        2: _pairs_elem(q, 2, 2, (1, ()), (-1, ("a-1r", "a-1"))),
        1: _pairs_elem(q, 1, 1, (1, ())),
    }
    tq = Quiver([(1, 1), (2, 2), (3, 3)],
                [Arrow("b1p", 3, 2), Arrow("a1p", 2, 1), Arrow("tp", 3, 3, LOOP)])
    target = Presentation(tq, [
        el(tq, (3, 3), (1, ("tp", "tp")), (-1, ())),
        el(tq, (3, 1), (1, ("a1p", "b1p")), (-1, ("a1p", "b1p", "tp"))),
    ], [])
    e31 = idem[3]
    timg = e31 * _pairs_elem(q, 3, 3, (1, ("t",))) * e31
    images = {
        "b1p": e((1, ("b1",)), (-1, ("b-1",)), (-1, ("b1", "b-2r", "b-2")),
                 (1, ("b-1", "b-2r", "b-2"))),
        "a1p": e((1, ("a1",)), (-1, ("a-1",))),
        "tp": timg,
        1: idem[1], 2: idem[2], 3: idem[3],
    }
    mult = IntMatrix.from_rows([[1, 2, 1], [0, 1, 1], [0, 0, 1]])
    return Fixture("cubewp3", desc, [main], idem, target, images, mult)


FIXTURES = {
    "simple3": simple3,
    "cycle3": cycle3,
    "symcle3": symcle3,
    "cube3": cube3,
    "cubewp3": cubewp3,
}


def fixture(name) -> Fixture:
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name}; have {sorted(FIXTURES)}")
    return FIXTURES[name]()
