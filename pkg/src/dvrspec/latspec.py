"""Finite bounded distributive lattices and their spectral spaces.

Points of the spectrum are prime ideals and specialization is inclusion
P <= Q of prime ideals; the Hochster dual reverses it.

The module also carries a symbolic model of the spectrum of the totally
ordered lattice of power sequences n -> floor(n**alpha).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import asymorder as ao
from . import seqcore as sc
from .errors import MalformedInput, NotALattice, NotAMorphism, NotAPoset, NotAPrime, NotDistributive, Unbounded


@dataclass(frozen=True)
class FiniteLattice:
    """A validated finite bounded distributive lattice.

    ``leq`` is the full order relation as a frozenset of pairs; ``meet`` and
    ``join`` are dicts keyed by ordered pairs of elements.
    """

    elements: tuple[str, ...]
    leq: frozenset
    meet: dict
    join: dict
    bottom: str
    top: str

    def __hash__(self):
        return hash((self.elements, self.leq))

    def __eq__(self, other):
        return isinstance(other, FiniteLattice) and self.elements == other.elements and self.leq == other.leq

    def le(self, a, b) -> bool:
        return (a, b) in self.leq

    def down(self, a) -> frozenset:
        return frozenset(x for x in self.elements if self.le(x, a))

    def to_dict(self):
        cover = covering_pairs(self.elements, self.leq)
        return {"elements": list(self.elements), "leq": [list(p) for p in cover]}


def covering_pairs(elements, leq) -> list[tuple[str, str]]:
    out = []
    for a in elements:
        for b in elements:
            if a != b and (a, b) in leq:
                if not any(c not in (a, b) and (a, c) in leq and (c, b) in leq for c in elements):
                    out.append((a, b))
    return out


def _closure(elements, pairs) -> set:
    rel = {(a, a) for a in elements} | set(pairs)
    for k in elements:
        for i in elements:
            if (i, k) in rel:
                rel.update((i, j) for j in elements if (k, j) in rel)
    return rel


def validate_lattice(elements, leq_pairs) -> FiniteLattice:
    """Build a lattice from generating order pairs (closed reflexively and
    transitively), or raise a named failure carrying a witness."""
    elems = tuple(str(e) for e in elements)
    if len(set(elems)) != len(elems):
        raise NotAPoset("duplicate element", witness=[e for e in elems if elems.count(e) > 1][:1])
    if not elems:
        raise Unbounded("the empty order has no bottom or top")
    known = set(elems)
    pairs = []
    for p in leq_pairs:
        a, b = str(p[0]), str(p[1])
        if a not in known or b not in known:
            raise NotAPoset(f"pair ({a}, {b}) names an unknown element", witness=[a, b])
        pairs.append((a, b))
    rel = _closure(elems, pairs)
    for a, b in itertools.combinations(elems, 2):
        if (a, b) in rel and (b, a) in rel:
            raise NotAPoset(f"{a} and {b} are distinct but mutually below each other", witness=[a, b])
    le = lambda x, y: (x, y) in rel  # noqa: E731
    bottoms = [x for x in elems if all(le(x, y) for y in elems)]
    tops = [x for x in elems if all(le(y, x) for y in elems)]
    meet, join = {}, {}
    for a in elems:
        for b in elems:
            lower = [c for c in elems if le(c, a) and le(c, b)]
            glb = [c for c in lower if all(le(d, c) for d in lower)]
            upper = [c for c in elems if le(a, c) and le(b, c)]
            lub = [c for c in upper if all(le(c, d) for d in upper)]
            if not glb or not lub:
                raise NotALattice(f"{a} and {b} lack a {'meet' if not glb else 'join'}", witness=[a, b])
            meet[a, b], join[a, b] = glb[0], lub[0]
    if not bottoms or not tops:
        raise Unbounded("missing bottom or top")
    for a, b, c in itertools.product(elems, repeat=3):
        if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
            raise NotDistributive(f"a meet (b join c) differs from (a meet b) join (a meet c) at {(a, b, c)}", witness=[a, b, c])
    return FiniteLattice(elems, frozenset(rel), meet, join, bottoms[0], tops[0])


def lattice_from_dict(d) -> FiniteLattice:
    if not isinstance(d, dict) or not isinstance(d.get("elements"), list) or not isinstance(d.get("leq", []), list):
        raise MalformedInput("lattice: expected {elements: [...], leq: [[a, b], ...]}")
    for p in d.get("leq", []):
        if not isinstance(p, list) or len(p) != 2:
            raise MalformedInput("lattice.leq: each entry must be a pair")
    return validate_lattice(d["elements"], d.get("leq", []))


# ---------------------------------------------------------------- small lattices


def chain(n: int) -> FiniteLattice:
    """0 < 1 < ... < n-1."""
    els = [str(i) for i in range(n)]
    return validate_lattice(els, [(els[i], els[i + 1]) for i in range(n - 1)])


def boolean_lattice(k: int) -> FiniteLattice:
    """Subsets of a k-element set, named by bit strings."""
    els = [format(m, f"0{k}b") if k else "e" for m in range(1 << k)]
    pairs = [(els[m], els[m | (1 << j)]) for m in range(1 << k) for j in range(k) if not m & (1 << j)]
    return validate_lattice(els, pairs)


def boolean_square() -> FiniteLattice:
    return validate_lattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


DIAMOND_M3 = (["0", "a", "b", "c", "1"], [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])
PENTAGON_N5 = (["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def product(l1: FiniteLattice, l2: FiniteLattice) -> FiniteLattice:
    els = [f"{a},{b}" for a in l1.elements for b in l2.elements]
    pairs = [(f"{a},{b}", f"{c},{d}") for a in l1.elements for b in l2.elements
             for c in l1.elements for d in l2.elements if l1.le(a, c) and l2.le(b, d)]
    return validate_lattice(els, pairs)


def adjoin_top(lat: FiniteLattice, name: str = "inf") -> FiniteLattice:
    """Add a new maximum element."""
    while name in lat.elements:
        name += "'"
    pairs = list(lat.leq) + [(a, name) for a in lat.elements]
    return validate_lattice(lat.elements + (name,), pairs)


# ---------------------------------------------------------------- primes and spectra


def prime_elements(lat: FiniteLattice) -> list[str]:
    """Elements a != top such that b meet c <= a forces b <= a or c <= a."""
    out = []
    for a in lat.elements:
        if a == lat.top:
            continue
        if all(lat.le(b, a) or lat.le(c, a) for b in lat.elements for c in lat.elements
               if lat.le(lat.meet[b, c], a)):
            out.append(a)
    return out


def _down_sets(lat: FiniteLattice):
    els = list(lat.elements)
    below = {a: [b for b in els if lat.le(b, a) and b != a] for a in els}
    # grow down-sets element by element in a linear extension
    order = sorted(els, key=lambda a: len(below[a]))
    out = [frozenset()]
    for a in order:
        out += [s | {a} for s in out if all(b in s for b in below[a])]
    return out


def prime_ideals(lat: FiniteLattice, cross_check: bool = True) -> list[frozenset]:
    """Prime ideals found by enumerating down-sets, in a canonical order."""
    found = []
    for s in _down_sets(lat):
        if not s or len(s) == len(lat.elements):
            continue
        if any(lat.join[a, b] not in s for a in s for b in s):
            continue
        if all(a in s or b in s for a in lat.elements for b in lat.elements if lat.meet[a, b] in s):
            found.append(s)
    found = sorted(found, key=lambda p: (len(p), sorted(p)))
    if cross_check:
        via_elements = sorted((lat.down(a) for a in prime_elements(lat)), key=lambda p: (len(p), sorted(p)))
        if via_elements != found:
            raise AssertionError("prime ideals disagree with down-sets of prime elements")
    return found


def _generator(lat: FiniteLattice, p: frozenset) -> str:
    return next(a for a in lat.elements if lat.down(a) == p)


@dataclass(frozen=True)
class SpectralSpaceModel:
    """A finite spectral space.

    ``points`` are labelled prime ideals; ``specialization`` holds pairs
    (x, y) meaning x specializes to y; ``qc_opens`` maps each lattice element
    to its basic quasi-compact open.
    """

    points: tuple[str, ...]
    ideals: tuple[frozenset, ...]
    specialization: frozenset
    qc_opens: tuple[tuple[str, frozenset], ...]
    dual: bool = False

    def opens(self) -> dict[str, frozenset]:
        return dict(self.qc_opens)

    def closed_points(self) -> list[str]:
        return [x for x in self.points if all(y == x for (a, y) in self.specialization if a == x)]

    def generic_points(self) -> list[str]:
        return [y for y in self.points if all(x == y for (x, b) in self.specialization if b == y)]

    def to_dict(self):
        return {
            "points": [{"label": p, "ideal": sorted(i)} for p, i in zip(self.points, self.ideals)],
            "specialization": sorted([list(p) for p in self.specialization]),
            "qc_opens": {a: sorted(u) for a, u in self.qc_opens},
            "dual": self.dual,
        }

    def to_dot(self, name: str = "spectrum") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for p in self.points:
            lines.append(f'  "{p}";')
        for a, b in covering_pairs(self.points, self.specialization):
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines)


def spec(lat: FiniteLattice) -> SpectralSpaceModel:
    ideals = prime_ideals(lat)
    labels = tuple(_generator(lat, p) for p in ideals)
    spec_rel = frozenset((labels[i], labels[j]) for i, p in enumerate(ideals) for j, q in enumerate(ideals) if p <= q)
    opens = tuple((a, frozenset(labels[i] for i, p in enumerate(ideals) if a not in p)) for a in lat.elements)
    return SpectralSpaceModel(labels, tuple(ideals), spec_rel, opens)


def hochster_dual(s: SpectralSpaceModel) -> SpectralSpaceModel:
    """Reverse specialization; the quasi-compact opens become the complements
    of the old ones."""
    allp = frozenset(s.points)
    rel = frozenset((b, a) for a, b in s.specialization)
    opens = tuple((a, allp - u) for a, u in s.qc_opens)
    return SpectralSpaceModel(s.points, s.ideals, rel, opens, not s.dual)


def check_open_laws(lat: FiniteLattice, s: SpectralSpaceModel) -> bool:
    """U(a meet b) = U(a) & U(b), U(a join b) = U(a) | U(b), U(0) empty, U(1) everything."""
    u = s.opens()
    allp = frozenset(s.points)
    if u[lat.bottom] or u[lat.top] != allp:
        return False
    return all(u[lat.meet[a, b]] == u[a] & u[b] and u[lat.join[a, b]] == u[a] | u[b]
               for a in lat.elements for b in lat.elements)


def check_morphism(h: dict, a: FiniteLattice, b: FiniteLattice) -> None:
    if set(h) != set(a.elements) or not set(h.values()) <= set(b.elements):
        raise NotAMorphism("map must send every element of the source into the target")
    if h[a.bottom] != b.bottom or h[a.top] != b.top:
        raise NotAMorphism("bottom or top not preserved", witness=[a.bottom, a.top])
    for x in a.elements:
        for y in a.elements:
            if h[a.meet[x, y]] != b.meet[h[x], h[y]] or h[a.join[x, y]] != b.join[h[x], h[y]]:
                raise NotAMorphism(f"meet or join of ({x}, {y}) not preserved", witness=[x, y])


def induced_spec_map(h: dict, a: FiniteLattice, b: FiniteLattice) -> dict[frozenset, frozenset]:
    """Prime ideals of b mapped to their preimages, prime ideals of a."""
    h = {str(k): str(v) for k, v in h.items()}
    check_morphism(h, a, b)
    primes_a = set(prime_ideals(a))
    out = {}
    for p in prime_ideals(b):
        pre = frozenset(x for x in a.elements if h[x] in p)
        if pre not in primes_a:
            raise AssertionError("preimage of a prime ideal is not prime")
        out[p] = pre
    return out


# ---------------------------------------------------------------- power-sequence spectrum model


@dataclass(frozen=True)
class PSeqPoint:
    """A point o, p(alpha) with alpha >= 0, or q(alpha) with 0 < alpha <= inf."""

    tag: str
    alpha: object = None

    def __post_init__(self):
        if self.tag == "o":
            if self.alpha is not None:
                raise ValueError("o carries no parameter")
            return
        if self.tag not in ("p", "q"):
            raise ValueError(f"unknown tag {self.tag!r}")
        a = self.alpha
        if a == math.inf or a == "inf":
            if self.tag == "p":
                raise ValueError("p(alpha) needs a finite alpha")
            object.__setattr__(self, "alpha", math.inf)
            return
        a = Fraction(a)
        if a < 0 or (self.tag == "q" and a == 0):
            raise ValueError("parameter out of range")
        object.__setattr__(self, "alpha", a)

    def __str__(self):
        return "o" if self.tag == "o" else f"{self.tag}({'inf' if self.alpha == math.inf else self.alpha})"


O = PSeqPoint("o")


def p_point(alpha) -> PSeqPoint:
    return PSeqPoint("p", alpha)


def q_point(alpha) -> PSeqPoint:
    return PSeqPoint("q", alpha)


def pseq_closure_contains(x: PSeqPoint, y: PSeqPoint) -> bool:
    """Is y in the closure of {x}?

    closure(p_a) = {o} + {p_b : b <= a} + {q_b : 0 < b <= a}
    closure(q_a) = {o} + {p_b : b < a} + {q_b : 0 < b <= a}
    closure(o)   = {o}
    """
    if y.tag == "o":
        return True
    if x.tag == "o":
        return False
    if x.tag == "p":
        return y.alpha <= x.alpha
    if y.tag == "p":
        return y.alpha < x.alpha
    return y.alpha <= x.alpha


def pseq_specializes(x: PSeqPoint, y: PSeqPoint) -> bool:
    return pseq_closure_contains(x, y)


def pseq_in_V(x: PSeqPoint, alpha) -> bool:
    """Membership in V(alpha) = {o} + {p_b : b < alpha} + {q_b : b <= alpha}."""
    a = math.inf if alpha in (math.inf, "inf") else Fraction(alpha)
    if x.tag == "o":
        return True
    if x.tag == "p":
        return x.alpha < a
    return x.alpha <= a


def comparison_map_model(f: sc.SeqExpr, budget: ao.SearchBudget = ao.DEFAULT_BUDGET) -> str:
    """Image of the prime generated by R/x^f: "m" for the zero class, "eta" for bounded."""
    from .ideals import is_prime_principal

    v = is_prime_principal(f, budget)
    if v.status is not ao.PROVED:
        raise NotAPrime(f"primality is {v.status.value}")
    return "m" if v.witness.rule_id == "prime.zero_class" else "eta"


def pseq_dot(points) -> str:
    """Hasse diagram of specialization on a finite sample of points."""
    pts = [str(p) for p in points]
    rel = {(str(a), str(b)) for a in points for b in points if pseq_specializes(a, b)}
    lines = ["digraph pseq {", "  rankdir=BT;"] + [f'  "{p}";' for p in pts]
    lines += [f'  "{a}" -> "{b}";' for a, b in covering_pairs(pts, rel)]
    return "\n".join(lines + ["}"])
