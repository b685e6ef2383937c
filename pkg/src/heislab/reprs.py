"""Representations G <= UT3(R) and the exact decision procedures on them.

A representation is a finite list of named matrix generators over a product
ring, always containing the distinguished integer generators a1 and a2.  The
map g -> (g12, g23) is a homomorphism onto an additive subgroup of R^2, and
every ring entry in sight lives in the Z-span of finitely many (component,
monomial) coordinates -- the representation's monomial frame.  That turns
each question below (zero divisors among centralizer entries, solvability of
the centralizer systems, commutator surjectivity) into a Hermite-normal-form
computation, which is how the checkers get to be exact over infinite groups.

Checkers return a Verdict; a "violated" verdict always carries a witness
reconstructed as an explicit product of the generators, so it can be
re-checked by direct matrix arithmetic.
"""

from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Optional

from . import rings, zlattice
from .rings import RingDesc, RingElem, is_domain, is_zero_divisor
from .ut3 import UT3Elem, a1 as _a1, a2 as _a2, identity as _ut3_identity
from .zlattice import Lattice


@dataclass(frozen=True)
class Verdict:
    status: str  # holds | violated | inconclusive
    method: str  # exact_lattice | bounded_search
    witness: object = None
    bound: Optional[int] = None

    def to_dict(self) -> dict:
        w = self.witness
        if w is not None and hasattr(w, "to_dict"):
            w = w.to_dict()
        elif w is not None:
            w = str(w)
        return {
            "status": self.status,
            "method": self.method,
            "bound": self.bound,
            "witness": w,
        }


@dataclass(frozen=True)
class LameWitness:
    """Element of C(a_i) \\ Z whose off-diagonal entry is a zero divisor."""

    centralizer: int  # 1 or 2
    element: UT3Elem
    entry: RingElem
    dead_component: int

    def to_dict(self):
        return {
            "centralizer": f"a{self.centralizer}",
            "element": str(self.element),
            "entry": str(self.entry),
            "dead_component": self.dead_component + 1,
        }


@dataclass(frozen=True)
class TauWitness:
    """Assignment (x1=x, x2=y) falsifying tau: y in C(a2), x in C(a1),
    [y,x]=1, yet [y,a1] != 1 and [a2,x] != 1."""

    y: UT3Elem
    x: UT3Elem

    def to_dict(self):
        return {"y": str(self.y), "x": str(self.x)}


@dataclass(frozen=True)
class NzctWitness:
    """Assignment falsifying NZCT: q noncentral (does not commute with y),
    p and w commute with q but not with each other."""

    q: UT3Elem
    p: UT3Elem
    w: UT3Elem
    y: UT3Elem

    def to_dict(self):
        return {"x2": str(self.q), "x1": str(self.p), "x3": str(self.w), "y": str(self.y)}


@dataclass(frozen=True)
class SigmaWitness:
    """Commutator value whose centralizer system has no solution."""

    value: RingElem
    system: str  # "S" or "T"

    def to_dict(self):
        return {"commutator_13_entry": str(self.value), "unsolvable_system": self.system}


@dataclass(frozen=True)
class Solution:
    element: UT3Elem
    coefficients: tuple[int, ...]  # exponents over the generator list

    def to_dict(self):
        return {"element": str(self.element), "exponents": list(self.coefficients)}


@dataclass
class Representation:
    """Finitely generated H-subgroup of UT3(R) given by named generators.

    ``full_center`` marks the center-adjoined variant: the (1,3) entries are
    treated as ranging over all of R.  None of the lattice checkers look at
    (1,3) entries, so the flag only matters for bookkeeping and C-rank
    invariance.
    """

    ring: RingDesc
    generators: tuple[tuple[str, UT3Elem], ...]
    full_center: bool = False

    @cached_property
    def frame(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """Sorted (component, monomial) coordinates spanning every generator
        entry and every pairwise entry determinant."""
        monos: set[tuple[int, tuple[int, ...]]] = set()

        def absorb(elem: RingElem):
            for j, p in enumerate(elem.parts):
                for e, _c in p:
                    monos.add((j, e))

        elems = []
        for _, g in self.generators:
            elems.append(g)
            absorb(g.u12)
            absorb(g.u13)
            absorb(g.u23)
        for (_, g), (_, h) in itertools.combinations(self.generators, 2):
            absorb(g.u12 * h.u23 - h.u12 * g.u23)
        return tuple(sorted(monos))

    @cached_property
    def _frame_index(self) -> dict:
        return {m: i for i, m in enumerate(self.frame)}

    @property
    def dim(self) -> int:
        return len(self.frame)

    def coords(self, elem: RingElem) -> Optional[tuple[int, ...]]:
        """Frame coordinates of a ring element; None if outside the span."""
        v = [0] * self.dim
        for j, p in enumerate(elem.parts):
            for e, c in p:
                i = self._frame_index.get((j, e))
                if i is None:
                    return None
                v[i] = c
        return tuple(v)

    def elem_from_coords(self, v) -> RingElem:
        out = RingElem.zero(self.ring)
        for x, (j, e) in zip(v, self.frame):
            if x:
                part = [() for _ in self.ring.components]
                part[j] = ((e, x),)
                out = out + RingElem(self.ring, tuple(part))
        return out

    def component_coords(self, component: int) -> list[int]:
        return [i for i, (j, _e) in enumerate(self.frame) if j == component]

    def product_of_generators(self, exponents) -> UT3Elem:
        """prod_k g_k^{c_k} in generator order; its entry pair is the
        corresponding integer combination of generator entry pairs."""
        out = _ut3_identity(self.ring)
        for (_, g), c in zip(self.generators, exponents):
            if c:
                out = out * g.pow_int(c)
        return out

    def env(self):
        """Evaluation environment over this group for the formula module."""
        from .formula import GroupEnv

        constants = {name: g for name, g in self.generators}
        return GroupEnv(_ut3_identity(self.ring), constants, list(self.generators))

    def gen(self, name: str) -> UT3Elem:
        for n, g in self.generators:
            if n == name:
                return g
        raise KeyError(name)


def representation(
    ring: RingDesc,
    extra_generators: dict[str, UT3Elem] | None = None,
    full_center: bool = False,
) -> Representation:
    """Build a representation; a1 and a2 are always prepended."""
    gens: list[tuple[str, UT3Elem]] = [("a1", _a1(ring)), ("a2", _a2(ring))]
    for name, g in (extra_generators or {}).items():
        if name in ("a1", "a2"):
            raise ValueError("a1 and a2 are implicit and fixed")
        if g.ring != ring:
            raise ValueError(f"generator {name!r} is over the wrong ring")
        gens.append((name, g))
    return Representation(ring, tuple(gens), full_center)


def heisenberg() -> Representation:
    return representation(rings.Z)


@dataclass(frozen=True)
class EntryLattices:
    """The derived lattices of a representation, all in frame coordinates.

    A lives in Z^(2d): 12-block then 23-block of generator entry pairs.
    A1 (resp. A2) is the sublattice with the 12-block (resp. 23-block) zero:
    entry pairs realized in the centralizer of a1 (resp. a2).  D, in Z^d, is
    generated by the pairwise entry determinants of the generators: the
    (1,3) entries of commutators.
    """

    A: Lattice
    A1: Lattice
    A2: Lattice
    D: Lattice


def entry_lattices(rep: Representation) -> EntryLattices:
    d = rep.dim
    rows = []
    for _, g in rep.generators:
        rows.append(rep.coords(g.u12) + rep.coords(g.u23))
    A = zlattice.hnf(rows, ambient_dim=2 * d)
    A1 = zlattice.intersect_coordinate_zero(A, range(d))
    A2 = zlattice.intersect_coordinate_zero(A, range(d, 2 * d))
    det_rows = []
    for (_, g), (_, h) in itertools.combinations(rep.generators, 2):
        det_rows.append(rep.coords(g.u12 * h.u23 - h.u12 * g.u23))
    D = zlattice.hnf(det_rows, ambient_dim=d) if det_rows else Lattice(d, (), ())
    return EntryLattices(A, A1, A2, D)


def lattices(rep: Representation) -> EntryLattices:
    cached = rep.__dict__.get("_lattices")
    if cached is None:
        cached = entry_lattices(rep)
        rep.__dict__["_lattices"] = cached
    return cached


def _block_coords(rep: Representation, block: int, component: int) -> list[int]:
    """Coordinates of one ring component inside the 12-block (0) or the
    23-block (1) of the Z^(2d) ambient."""
    offset = 0 if block == 0 else rep.dim
    return [offset + i for i in rep.component_coords(component)]


def _split_pair(rep: Representation, vec) -> tuple[RingElem, RingElem]:
    d = rep.dim
    return rep.elem_from_coords(vec[:d]), rep.elem_from_coords(vec[d:])


# ---------------------------------------------------------------------------
# Checkers


def lame_check(rep: Representation) -> Verdict:
    """Exact check of the two centralizer-entry conditions: no noncentral
    element of C(a2) has a zero-divisor (1,2) entry, and dually for C(a1)
    with (2,3) entries.  Over a product ring an entry is a zero divisor iff
    it vanishes on some component, which is a lattice condition."""
    if is_domain(rep.ring):
        return Verdict("holds", "exact_lattice")
    L = lattices(rep)
    candidates = []
    for centralizer, lat, block in ((2, L.A2, 0), (1, L.A1, 1)):
        for comp in range(rep.ring.ncomponents):
            sub = zlattice.intersect_coordinate_zero(
                lat, _block_coords(rep, block, comp)
            )
            for coeffs in sub.transform or ():
                g = rep.product_of_generators(coeffs)
                entry = g.u12 if centralizer == 2 else g.u23
                candidates.append(
                    (coeffs, LameWitness(centralizer, g, entry, comp))
                )
    if not candidates:
        return Verdict("holds", "exact_lattice")

    def is_single_generator(coeffs):
        return sum(1 for c in coeffs if c) == 1 and all(c in (0, 1) for c in coeffs)

    for coeffs, witness in candidates:
        if is_single_generator(coeffs):
            return Verdict("violated", "exact_lattice", witness)
    return Verdict("violated", "exact_lattice", candidates[0][1])


def lame_check_def1(rep: Representation, bound: int = 3) -> Verdict:
    """The definitional formulation: search elements g of C(a1) u C(a2) and
    test whether g12^2 + g23^2 is zero or a non-zero-divisor.

    Candidates are small lattice vectors of A1 and A2 plus the basis vectors
    of every component-vanishing sublattice (which makes the search complete
    over this ring family while keeping it a genuine second code path)."""
    L = lattices(rep)
    for lat, block in ((L.A2, 0), (L.A1, 1)):
        candidates = list(lat.vectors_up_to(min(bound, 2) if lat.rank > 4 else bound))
        for comp in range(rep.ring.ncomponents):
            sub = zlattice.intersect_coordinate_zero(
                lat, _block_coords(rep, block, comp)
            )
            candidates.extend(sub.basis)
        for vec in candidates:
            u12, u23 = _split_pair(rep, vec)
            s = u12 * u12 + u23 * u23
            if not s.is_zero() and is_zero_divisor(s):
                coeffs = zlattice.in_source_coordinates(lat, vec)
                g = rep.product_of_generators(coeffs)
                entry = u12 if block == 0 else u23
                comp_dead = min(
                    set(range(rep.ring.ncomponents)) - set(s.support)
                )
                return Verdict(
                    "violated",
                    "exact_lattice",
                    LameWitness(2 if block == 0 else 1, g, entry, comp_dead),
                )
    return Verdict("holds", "exact_lattice")


def tau_check(rep: Representation) -> Verdict:
    """Exact: tau fails iff some nonzero 12-entry u realized in C(a2) and
    nonzero 23-entry v realized in C(a1) have disjoint component supports
    (then u*v = 0).  Support patterns are enumerated over the components."""
    if is_domain(rep.ring):
        return Verdict("holds", "exact_lattice")
    L = lattices(rep)
    k = rep.ring.ncomponents
    for mask in range(1, 2**k - 1):
        inside = [j for j in range(k) if mask >> j & 1]
        outside = [j for j in range(k) if not mask >> j & 1]
        # u in A2's 12-block supported inside the mask
        u_coords = [c for j in outside for c in _block_coords(rep, 0, j)]
        latU = zlattice.intersect_coordinate_zero(L.A2, u_coords)
        if latU.rank == 0:
            continue
        v_coords = [c for j in inside for c in _block_coords(rep, 1, j)]
        latV = zlattice.intersect_coordinate_zero(L.A1, v_coords)
        if latV.rank == 0:
            continue
        y = rep.product_of_generators(latU.transform[0])
        x = rep.product_of_generators(latV.transform[0])
        return Verdict("violated", "exact_lattice", TauWitness(y, x))
    return Verdict("holds", "exact_lattice")


def _pair_det(rep, u, v) -> RingElem:
    u12, u23 = _split_pair(rep, u)
    v12, v23 = _split_pair(rep, v)
    return u12 * v23 - v12 * u23


def nzct_check(rep: Representation, bound: int = 2) -> Verdict:
    """NZCT over UT3(R): noncentral elements commute iff their entry pairs
    have vanishing determinant.  Over a domain the determinant relation is
    transitive through a noncentral element, so NZCT holds outright; the
    same is true when all generator pairs commute.  Otherwise small lattice
    vectors are searched for a violating triple; a verified witness is
    exact, exhaustion is not a proof."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    L = lattices(rep)
    if all(
        _pair_det(rep, u, v).is_zero() for u, v in itertools.combinations(L.A.basis, 2)
    ):
        return Verdict("holds", "exact_lattice")
    if is_domain(rep.ring):
        return Verdict("holds", "exact_lattice")

    def diagonal(e: RingElem) -> bool:
        return all(p == e.parts[0] for p in e.parts[1:])

    if len(set(rep.ring.components)) == 1 and all(
        diagonal(x) for v in L.A.basis for x in _split_pair(rep, v)
    ):
        # every realized entry is constant across the identical components, so
        # the group embeds in UT3 of one component -- a domain
        return Verdict("holds", "exact_lattice")
    vectors = [v for v in L.A.vectors_up_to(bound) if any(v)]
    for q in vectors:
        parallels = [p for p in vectors if _pair_det(rep, p, q).is_zero()]
        for p, w in itertools.combinations(parallels, 2):
            if _pair_det(rep, p, w).is_zero():
                continue
            witness_y = next(
                (y for y in vectors if not _pair_det(rep, q, y).is_zero()), None
            )
            if witness_y is None:
                continue  # q is central as far as the group is concerned

            def build(vec):
                return rep.product_of_generators(
                    zlattice.in_source_coordinates(L.A, vec)
                )

            return Verdict(
                "violated",
                "exact_lattice",
                NzctWitness(build(q), build(p), build(w), build(witness_y)),
                bound=bound,
            )
    return Verdict("inconclusive", "bounded_search", bound=bound)


def solve_S(rep: Representation, z: UT3Elem) -> Optional[Solution]:
    """Solve [a2,y]=1, [y,a1]=z for central z; None when unsolvable.

    y must realize the 12-entry z13 inside C(a2), i.e. the vector
    (z13, 0) must lie in the entry-pair lattice."""
    if not z.is_central():
        raise ValueError("z must be central")
    zc = rep.coords(z.u13)
    if zc is None:
        return None  # outside the span of realizable entries
    L = lattices(rep)
    vec = zc + (0,) * rep.dim
    coeffs = zlattice.in_source_coordinates(L.A, vec)
    if coeffs is None:
        return None
    return Solution(rep.product_of_generators(coeffs), coeffs)


def solve_T(rep: Representation, z: UT3Elem) -> Optional[Solution]:
    """Solve [x,a1]=1, [a2,x]=z for central z; None when unsolvable."""
    if not z.is_central():
        raise ValueError("z must be central")
    zc = rep.coords(z.u13)
    if zc is None:
        return None
    L = lattices(rep)
    vec = (0,) * rep.dim + zc
    coeffs = zlattice.in_source_coordinates(L.A, vec)
    if coeffs is None:
        return None
    return Solution(rep.product_of_generators(coeffs), coeffs)


def sigma_check(rep: Representation) -> Verdict:
    """Exact: every commutator value is an integer combination of the
    generator determinants, and system solvability is additive in the
    value, so it suffices that both (d,0) and (0,d) lie in the entry-pair
    lattice for each basis generator d of the determinant lattice."""
    L = lattices(rep)
    d = rep.dim
    for dvec in L.D.basis:
        value = rep.elem_from_coords(dvec)
        if not zlattice.member(L.A, dvec + (0,) * d):
            return Verdict("violated", "exact_lattice", SigmaWitness(value, "S"))
        if not zlattice.member(L.A, (0,) * d + dvec):
            return Verdict("violated", "exact_lattice", SigmaWitness(value, "T"))
    return Verdict("holds", "exact_lattice")


# ---------------------------------------------------------------------------
# Constructions


def _fresh_name(rep: Representation, stem: str) -> str:
    names = {n for n, _ in rep.generators}
    if stem not in names:
        return stem
    k = 2
    while f"{stem}{k}" in names:
        k += 1
    return f"{stem}{k}"


def adjoin_Y(rep: Representation, z: UT3Elem, name: str | None = None) -> Representation:
    """Adjoin Y with (1,2) entry z13: then [a2,Y]=1 and [Y,a1]=z.

    Meant for central z whose system S is unsolvable; other inputs are
    allowed with a warning to keep pipelines total."""
    if not z.is_central():
        raise ValueError("z must be central")
    if z.is_identity():
        warnings.warn("adjoin_Y with z = identity adjoins the identity")
    elif solve_S(rep, z) is not None:
        warnings.warn("system S is already solvable; adjoin_Y is redundant")
    zero = RingElem.zero(rep.ring)
    Y = UT3Elem(rep.ring, z.u13, zero, zero)
    name = name or _fresh_name(rep, "Y")
    return Representation(rep.ring, rep.generators + ((name, Y),), rep.full_center)


def adjoin_center(rep: Representation) -> Representation:
    """Mark the center as all of {(1,3) entries}: C-rank is unchanged and
    no lattice checker is affected (they read the 12/23 entries only)."""
    return replace(rep, full_center=True)


def extend_centralizer(rep: Representation, i: int, name: str) -> Representation:
    """Free rank-1 extension of C(a_i): adjoin an indeterminate to the ring
    and a generator whose only off-center entry is that indeterminate (it
    commutes with the whole centralizer slice by construction)."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    new_ring = rings.adjoin_indeterminate(rep.ring, name)
    gens = tuple(
        (
            n,
            UT3Elem(
                new_ring,
                rings.embed(g.u12, new_ring),
                rings.embed(g.u13, new_ring),
                rings.embed(g.u23, new_ring),
            ),
        )
        for n, g in rep.generators
    )
    theta = RingElem.var(new_ring, name)
    zero = RingElem.zero(new_ring)
    t = UT3Elem(new_ring, zero, zero, theta) if i == 1 else UT3Elem(new_ring, theta, zero, zero)
    gen_name = _fresh_name(Representation(new_ring, gens), "t")
    return Representation(new_ring, gens + ((gen_name, t),), rep.full_center)


@dataclass(frozen=True)
class BigPowersCertificate:
    n: int
    indeterminate: str
    retracted_targets: tuple[UT3Elem, ...]

    def to_dict(self):
        return {
            "n": self.n,
            "indeterminate": self.indeterminate,
            "retracted_targets": [str(t) for t in self.retracted_targets],
        }


def big_powers_retraction(
    rep_ext: Representation,
    targets,
    i: int,
    name: str | None = None,
    cap: int = 100000,
) -> BigPowersCertificate:
    """Smallest n >= 1 such that the retraction sending the extension
    indeterminate to n (i.e. t to a_i^n) kills no target.

    Each nonzero entry is a polynomial in the indeterminate over a product
    of domains, so only finitely many n are excluded and the search
    terminates."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    if name is None:
        comp0 = rep_ext.ring.components[0]
        if not comp0:
            raise ValueError("representation ring has no indeterminates to retract")
        name = comp0[-1]
    targets = list(targets)
    for t in targets:
        if t.is_identity():
            raise ValueError("identity target cannot survive any retraction")
    for n in range(1, cap + 1):
        images = []
        alive = True
        for t in targets:
            img = UT3Elem(
                rep_ext.ring,
                rings.substitute(t.u12, name, n),
                rings.substitute(t.u13, name, n),
                rings.substitute(t.u23, name, n),
            )
            if img.is_identity():
                alive = False
                break
            images.append(img)
        if alive:
            return BigPowersCertificate(n, name, tuple(images))
    raise AssertionError("big powers search exhausted its safety cap")


def c_rank(rep: Representation) -> int:
    """rank(C(a1)/Z) + rank(C(a2)/Z) - 1, read off the entry lattices."""
    L = lattices(rep)
    return L.A1.rank + L.A2.rank - 1


# ---------------------------------------------------------------------------
# Appropriateness


@dataclass(frozen=True)
class Appropriateness:
    status: str  # confirmed | refuted | inconclusive
    witness: Optional[RingElem] = None
    degree_bound: int = 0

    def to_dict(self):
        return {
            "status": self.status,
            "witness": None if self.witness is None else str(self.witness),
            "degree_bound": self.degree_bound,
        }


def _ring_targets(ring: RingDesc) -> list[RingElem]:
    """Designated generators of the product ring: the component idempotents
    (when there are several components) and each indeterminate confined to
    its component."""
    targets = []
    if ring.ncomponents > 1:
        for j in range(ring.ncomponents):
            targets.append(RingElem.idempotent(ring, j))
    for j, names in enumerate(ring.components):
        ej = RingElem.idempotent(ring, j)
        for n in names:
            # the indeterminate n placed in component j only
            diag = RingElem.var(ring, n) if all(n in c for c in ring.components) else None
            if diag is not None:
                targets.append(ej * diag)
            else:
                idx = names.index(n)
                e = tuple(1 if t == idx else 0 for t in range(len(names)))
                parts = [() for _ in ring.components]
                parts[j] = ((e, 1),)
                targets.append(RingElem(ring, tuple(parts)))
    return targets


def _split_top_commas(text: str) -> list[str]:
    parts = [[]]
    depth = 0
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise ConfigError("unbalanced brackets")
        if ch == "," and depth == 0:
            parts.append([])
        else:
            parts[-1].append(ch)
    return ["".join(p).strip() for p in parts]


class ConfigError(ValueError):
    pass


def _balanced_block(text: str, start: int) -> tuple[str, int]:
    """The contents of the brace block opening at text[start] == '{'."""
    if start >= len(text) or text[start] != "{":
        raise ConfigError("expected '{'")
    depth = 0
    for i in range(start, len(text)):
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                return text[start + 1 : i], i + 1
    raise ConfigError("unterminated '{' block")


def parse_elem_block(ring: RingDesc, body: str) -> UT3Elem:
    """Parse ``e12: <lit>, e13: <lit>, e23: <lit>`` into a matrix element."""
    entries = {}
    for item in _split_top_commas(body):
        if not item:
            continue
        key, sep, value = item.partition(":")
        key = key.strip()
        if not sep or key not in ("e12", "e13", "e23"):
            raise ConfigError(f"bad entry {item!r} (want e12/e13/e23)")
        if key in entries:
            raise ConfigError(f"duplicate entry {key}")
        entries[key] = rings.parse_elem(ring, value.strip())
    zero = RingElem.zero(ring)
    return UT3Elem(
        ring,
        entries.get("e12", zero),
        entries.get("e13", zero),
        entries.get("e23", zero),
    )


def parse_config(text: str) -> Representation:
    """Parse the representation config format:

        ring: Z x Z
        full_center: false
        generators: {
          b: {e12: 0, e13: 0, e23: (1,0)}
        }

    a1 and a2 are implied; ``full_center`` and ``generators`` are optional;
    ``#`` starts a comment."""
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    m = re.search(r"^\s*ring\s*:\s*(.+?)\s*$", text, re.M)
    if not m:
        raise ConfigError("missing 'ring:' line")
    try:
        ring = rings.parse_ring(m.group(1))
    except rings.RingParseError as exc:
        raise ConfigError(str(exc)) from exc
    full_center = False
    m = re.search(r"^\s*full_center\s*:\s*(\S+)\s*$", text, re.M)
    if m:
        if m.group(1) not in ("true", "false"):
            raise ConfigError("full_center must be true or false")
        full_center = m.group(1) == "true"
    extra: dict[str, UT3Elem] = {}
    m = re.search(r"generators\s*:\s*", text)
    if m:
        body, _end = _balanced_block(text, text.index("{", m.end()))
        pos = 0
        while True:
            nm = re.compile(r"\s*([A-Za-z][A-Za-z0-9]*)\s*:\s*").match(body, pos)
            if not nm:
                if body[pos:].strip(" \t\n,"):
                    raise ConfigError(f"bad generator syntax near {body[pos:pos+30]!r}")
                break
            name = nm.group(1)
            if name in extra or name in ("a1", "a2"):
                raise ConfigError(f"duplicate or reserved generator name {name!r}")
            block, pos = _balanced_block(body, body.index("{", nm.end()))
            try:
                extra[name] = parse_elem_block(ring, block)
            except rings.RingParseError as exc:
                raise ConfigError(f"generator {name!r}: {exc}") from exc
            rest = re.compile(r"\s*,?").match(body, pos)
            pos = rest.end()
    return representation(ring, extra, full_center)


def serialize_config(rep: Representation) -> str:
    lines = [f"ring: {rep.ring}"]
    lines.append(f"full_center: {'true' if rep.full_center else 'false'}")
    extra = [(n, g) for n, g in rep.generators if n not in ("a1", "a2")]
    if extra:
        lines.append("generators: {")
        for name, g in extra:
            lines.append(
                f"  {name}: {{e12: {g.u12}, e13: {g.u13}, e23: {g.u23}}},"
            )
        lines[-1] = lines[-1].rstrip(",")
        lines.append("}")
    else:
        lines.append("generators: {}")
    return "\n".join(lines) + "\n"


def appropriateness_check(rep: Representation, degree_bound: int) -> Appropriateness:
    """Bounded test of whether the ring is generated by the entries of the
    group: enumerate monomials in the entries up to the degree bound and
    decide membership of each designated ring generator in their Z-span."""
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    entries = [RingElem.one(rep.ring)]
    for _, g in rep.generators:
        for entry in (g.u12, g.u13, g.u23):
            if not entry.is_zero() and entry not in entries:
                entries.append(entry)
    products = [RingElem.one(rep.ring)]
    seen = set(products)
    layer = [RingElem.one(rep.ring)]
    for _ in range(degree_bound):
        nxt = []
        for p in layer:
            for e in entries:
                q = p * e
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        products.extend(nxt)
        layer = nxt
    targets = _ring_targets(rep.ring)
    # one shared frame for span and targets
    monos: set = set()
    for x in products + targets:
        for j, p in enumerate(x.parts):
            for e, _c in p:
                monos.add((j, e))
    frame = sorted(monos)
    index = {m: i for i, m in enumerate(frame)}

    def vec(x):
        v = [0] * len(frame)
        for j, p in enumerate(x.parts):
            for e, c in p:
                v[index[(j, e)]] = c
        return v

    span = zlattice.hnf([vec(p) for p in products], ambient_dim=len(frame))
    entry_vars = {
        n
        for e in entries
        for j, names in enumerate(rep.ring.components)
        for n in names
        if e.uses_var(n)
    }
    for t in targets:
        if not zlattice.member(span, vec(t)):
            target_vars = {
                n
                for j, names in enumerate(rep.ring.components)
                for n in names
                if t.uses_var(n)
            }
            if target_vars and not (target_vars & entry_vars):
                # the indeterminate appears in no entry: unreachable at any degree
                return Appropriateness("refuted", t, degree_bound)
            return Appropriateness("inconclusive", t, degree_bound)
    return Appropriateness("confirmed", None, degree_bound)
