"""Counting representations of surface groups into a finite group.

For a finite group G the number of homomorphisms from the genus-g surface
group into G is

    N_g = #{(a_1, b_1, ..., a_g, b_g) : [a_1, b_1] ... [a_g, b_g] = e}.

It is computed by convolving the commutator distribution in the algebra of
class functions. With ``z_E`` a fixed representative of the class E and

    k[C][D][E] = #{(x, y) in C x D : x y = z_E},

a class function ``f`` (value per class, read at any element of the class)
convolves with ``N_1`` as

    (f * N_1)(E) = sum_{C, D} f(C) N_1(D) k[C][D][E].

No extra size or centralizer factor is needed because ``k`` already counts
element pairs. The formula is checked against tuple enumeration whenever
``|G|^(2g) <= 10^6``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product
from pathlib import Path
from typing import NamedTuple, Sequence

from .quantize import InvariantSequence

DEFAULT_CLOSURE_BOUND = 10**4
THETA_MATRIX_CAP = 512
BRUTE_FORCE_LIMIT = 10**6
_EXHAUSTIVE_ASSOC = 64
_RANDOM_ASSOC_TRIALS = 20000


class NotAGroupError(ValueError):
    """A table or generator set fails one of the group axioms."""

    def __init__(self, axiom: str, witness: tuple = ()):
        self.axiom = axiom
        self.witness = witness
        msg = f"not a group: {axiom} fails"
        if witness:
            msg += f" at {witness}"
        super().__init__(msg)


class ClosureBoundError(ValueError):
    """Permutation closure grew past the configured element bound."""


class FiniteGroup:
    """A finite group given by its multiplication table on ``0..order-1``.

    ``mult[i][j]`` is the index of ``i * j``. Construction validates the
    axioms; use :func:`build_group` or the builtins rather than filling the
    table by hand.
    """

    def __init__(self, mult: Sequence[Sequence[int]], element_names: Sequence[str] | None = None):
        n = len(mult)
        if n == 0:
            raise NotAGroupError("nonempty")
        table = tuple(tuple(int(x) for x in row) for row in mult)
        for i, row in enumerate(table):
            if len(row) != n:
                raise NotAGroupError("square table", (i, len(row)))
            for j, x in enumerate(row):
                if not 0 <= x < n:
                    raise NotAGroupError("closure", (i, j, x))
        self.order = n
        self.mult = table
        self.identity = _find_identity(table)
        self.inv = _find_inverses(table, self.identity)
        _check_associative(table)
        if element_names is not None and len(element_names) != n:
            raise ValueError(f"{len(element_names)} names for {n} elements")
        self.element_names = tuple(element_names) if element_names is not None else None

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def commutator(self, a: int, b: int) -> int:
        m, inv = self.mult, self.inv
        return m[m[m[a][b]][inv[a]]][inv[b]]

    def is_abelian(self) -> bool:
        m = self.mult
        return all(m[i][j] == m[j][i] for i in range(self.order) for j in range(i))

    @cached_property
    def class_data(self) -> "ClassData":
        return conjugacy_classes(self)


def _find_identity(m: tuple) -> int:
    n = len(m)
    for e in range(n):
        if all(m[e][x] == x and m[x][e] == x for x in range(n)):
            return e
    raise NotAGroupError("identity")


def _find_inverses(m: tuple, e: int) -> tuple[int, ...]:
    inv = []
    for a, row in enumerate(m):
        b = next((b for b, x in enumerate(row) if x == e), None)
        if b is None or m[b][a] != e:
            raise NotAGroupError("inverse", (a,))
        inv.append(b)
    return tuple(inv)


def _check_associative(m: tuple, seed: int = 0) -> None:
    n = len(m)
    if n <= _EXHAUSTIVE_ASSOC:
        triples = product(range(n), repeat=3)
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(_RANDOM_ASSOC_TRIALS))
    for a, b, c in triples:
        if m[m[a][b]][c] != m[a][m[b][c]]:
            raise NotAGroupError("associativity", (a, b, c))


# -- construction ----------------------------------------------------------------


Permutation = tuple[int, ...]


def _compose(p: Permutation, r: Permutation) -> Permutation:
    # (p * r)(k) = p(r(k)): apply r first
    return tuple(p[k] for k in r)


def group_from_permutations(
    generators: Sequence[Permutation],
    bound: int = DEFAULT_CLOSURE_BOUND,
) -> FiniteGroup:
    """Close the generators under composition and tabulate the result.

    Permutations are 0-based image tuples; all must have the same degree.
    Element 0 is the identity.
    """
    degree = max((len(p) for p in generators), default=1)
    gens = []
    for p in generators:
        p = tuple(p) + tuple(range(len(p), degree))
        if sorted(p) != list(range(degree)):
            raise NotAGroupError("permutation", (p,))
        gens.append(p)
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _compose(x, s)
                if y not in index:
                    if len(elements) >= bound:
                        raise ClosureBoundError(f"permutation closure exceeds {bound} elements")
                    index[y] = len(elements)
                    elements.append(y)
                    nxt.append(y)
        frontier = nxt
    table = [[index[_compose(x, y)] for y in elements] for x in elements]
    names = [format_cycles(p) for p in elements]
    return FiniteGroup(table, names)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-based cycle notation such as ``(1 2)(3 4 5)``; ``()`` is the identity."""
    text = text.strip()
    if not text or _CYCLE.sub("", text).strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        pts = [int(t) for t in body.replace(",", " ").split()]
        if any(p < 1 for p in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"malformed cycle ({body})")
        cycles.append(pts)
    top = max((max(c) for c in cycles if c), default=1)
    degree = max(degree or 0, top)
    img = list(range(degree))
    seen: set[int] = set()
    for c in cycles:
        if seen & set(c):
            raise ValueError(f"cycles in {text!r} are not disjoint")
        seen |= set(c)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def format_cycles(p: Permutation) -> str:
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        k = p[start]
        while k != start:
            cyc.append(k)
            seen.add(k)
            k = p[k]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def build_group(spec, bound: int = DEFAULT_CLOSURE_BOUND) -> FiniteGroup:
    """Build from a multiplication table (0-based rows) or a list of
    permutations (tuples, or strings in cycle notation)."""
    spec = list(spec)
    if spec and all(isinstance(s, str) for s in spec):
        return group_from_permutations([parse_cycles(s) for s in spec], bound)
    if spec and all(isinstance(s, (list, tuple)) for s in spec):
        n = len(spec)
        if all(len(s) == n for s in spec):
            return FiniteGroup(spec)
        return group_from_permutations([tuple(s) for s in spec], bound)
    raise ValueError("group spec must be a square table or a list of permutations")


def parse_group_text(text: str, bound: int = DEFAULT_CLOSURE_BOUND) -> FiniteGroup:
    """Read the group file format.

    Either ``order n`` followed by ``n`` rows of 1-based indices, or a
    ``perm`` header followed by one generator per line in cycle notation.
    Blank lines and ``#`` comments are ignored.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty group file")
    head = lines[0].split()
    if head[0] == "order":
        if len(head) != 2 or not head[1].isdigit():
            raise ValueError(f"bad header {lines[0]!r}")
        n = int(head[1])
        rows = lines[1:]
        if len(rows) != n:
            raise ValueError(f"expected {n} table rows, found {len(rows)}")
        table = []
        for r, ln in enumerate(rows, 2):
            try:
                table.append([int(t) - 1 for t in ln.replace(",", " ").split()])
            except ValueError:
                raise ValueError(f"line {r}: non-integer table entry") from None
        return FiniteGroup(table)
    if head == ["perm"]:
        if len(lines) < 2:
            raise ValueError("perm file lists no generators")
        return group_from_permutations([parse_cycles(ln) for ln in lines[1:]], bound)
    raise ValueError(f"unknown group file header {lines[0]!r}")


def load_group_file(path: str | Path, bound: int = DEFAULT_CLOSURE_BOUND) -> FiniteGroup:
    return parse_group_text(Path(path).read_text(), bound)


# -- builtins ----------------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element ``a + n*b`` is ``r^a s^b``."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")

    def mul(x: int, y: int) -> int:
        a1, b1 = x % n, x // n
        a2, b2 = y % n, y // n
        a = (a1 - a2 if b1 else a1 + a2) % n
        return a + n * ((b1 + b2) % 2)

    return FiniteGroup([[mul(x, y) for y in range(2 * n)] for x in range(2 * n)])


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    if n == 1:
        return group_from_permutations([(0,)])
    cycle = tuple(list(range(1, n)) + [0])
    swap = (1, 0) + tuple(range(2, n))
    return group_from_permutations([swap, cycle])


def quaternion_group() -> FiniteGroup:
    # left-regular action of i and j on 8 points
    return group_from_permutations(
        [parse_cycles("(1 2 3 4)(5 6 7 8)"), parse_cycles("(1 5 3 7)(2 8 4 6)")]
    )


_BUILTIN = re.compile(r"^(C|Z|D|S)(\d+)$")


def builtin_group(name: str) -> FiniteGroup:
    """``trivial``, ``Q8``, ``Cn``/``Zn`` (cyclic), ``Dn`` (order 2n), ``Sn`` for n <= 5."""
    key = name.strip()
    if key.lower() == "trivial":
        return cyclic_group(1)
    if key.upper() == "Q8":
        return quaternion_group()
    m = _BUILTIN.match(key.upper())
    if m:
        kind, n = m.group(1), int(m.group(2))
        if kind in "CZ":
            return cyclic_group(n)
        if kind == "D":
            return dihedral_group(n)
        if n <= 5:
            return symmetric_group(n)
    raise ValueError(f"unknown builtin group {name!r}")


BUILTIN_NAMES = ("trivial", "C2", "C3", "C4", "D3", "D4", "S3", "S4", "Q8")


# -- classes and class functions ---------------------------------------------------


@dataclass(frozen=True)
class ClassData:
    """Conjugacy classes; class 0 is always ``{e}``."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    centralizer_order: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def conjugacy_classes(G: FiniteGroup) -> ClassData:
    m, inv, n = G.mult, G.inv, G.order
    class_of = [-1] * n
    classes = []
    order = [G.identity] + [g for g in range(n) if g != G.identity]
    for g in order:
        if class_of[g] >= 0:
            continue
        orbit = sorted({m[m[x][g]][inv[x]] for x in range(n)})
        for h in orbit:
            class_of[h] = len(classes)
        classes.append(tuple(orbit))
    cent = tuple(n // len(classes[class_of[g]]) for g in range(n))
    data = ClassData(tuple(classes), tuple(class_of), cent)
    for g in range(n):
        assert len(classes[class_of[g]]) * cent[g] == n
    return data


@dataclass(frozen=True)
class ClassFunction:
    """One integer per conjugacy class, in the order of ``ClassData.classes``."""

    values: tuple[int, ...]

    def __getitem__(self, c: int) -> int:
        return self.values[c]

    def __len__(self) -> int:
        return len(self.values)

    def at_identity(self) -> int:
        return self.values[0]


def commutator_distribution(G: FiniteGroup) -> ClassFunction:
    """``N_1(c) = #{(a, b) : [a, b] = z}`` for ``z`` any element of class c."""
    cd = G.class_data
    tally = [0] * cd.count
    for a in range(G.order):
        for b in range(G.order):
            tally[cd.class_of[G.commutator(a, b)]] += 1
    # tally counts pairs landing anywhere in the class; divide by its size
    vals = []
    for c, t in enumerate(tally):
        size = len(cd.classes[c])
        assert t % size == 0
        vals.append(t // size)
    return ClassFunction(tuple(vals))


def class_structure_constants(G: FiniteGroup) -> list[list[list[int]]]:
    """``k[C][D][E] = #{(x, y) in C x D : x y = z_E}`` with ``z_E`` the first element of E."""
    cd = G.class_data
    c = cd.count
    k = [[[0] * c for _ in range(c)] for _ in range(c)]
    m, inv = G.mult, G.inv
    for E, cls in enumerate(cd.classes):
        z = cls[0]
        for x in range(G.order):
            y = m[inv[x]][z]
            k[cd.class_of[x]][cd.class_of[y]][E] += 1
    return k


def convolve(f: ClassFunction, h: ClassFunction, k: list) -> ClassFunction:
    c = len(f)
    out = [0] * c
    for C in range(c):
        if not f[C]:
            continue
        for D in range(c):
            if not h[D]:
                continue
            w = f[C] * h[D]
            kk = k[C][D]
            for E in range(c):
                if kk[E]:
                    out[E] += w * kk[E]
    return ClassFunction(tuple(out))


def brute_force_genus_count(G: FiniteGroup, g: int) -> int:
    """Enumerate all 2g-tuples and count those with trivial commutator product."""
    if g == 0:
        return 1
    comms = [G.commutator(a, b) for a in range(G.order) for b in range(G.order)]
    m, e = G.mult, G.identity
    count = 0
    for combo in product(comms, repeat=g):
        if reduce(lambda x, y: m[x][y], combo) == e:
            count += 1
    return count


def genus_counts(G: FiniteGroup, max_genus: int) -> list[int]:
    """``N_0, ..., N_max_genus`` via class-function convolution."""
    if max_genus < 0:
        raise ValueError("max_genus must be nonnegative")
    cd = G.class_data
    n1 = commutator_distribution(G)
    k = class_structure_constants(G)
    delta = ClassFunction(tuple([1] + [0] * (cd.count - 1)))
    out = [1]
    f = delta
    for g in range(1, max_genus + 1):
        f = convolve(f, n1, k)
        out.append(f.at_identity())
        if G.order ** (2 * g) <= BRUTE_FORCE_LIMIT:
            assert out[g] == brute_force_genus_count(G, g), f"convolution disagrees with enumeration at genus {g}"
    return out


def genus_count(G: FiniteGroup, g: int) -> int:
    """Number of homomorphisms from the genus-g surface group into G."""
    return genus_counts(G, g)[g]


def pointed_count(G: FiniteGroup, g: int, points: int) -> int:
    """Count for a connected genus-g surface with ``points`` basepoints."""
    if points < 1:
        raise ValueError("a connected surface needs at least one basepoint")
    return G.order ** (points - 1) * genus_count(G, g)


# -- the twisting cylinder -------------------------------------------------------


class TwistTrace(NamedTuple):
    trace: int
    operator: list[list[int]] | None

    @property
    def provenance(self) -> str:
        return "matrix" if self.operator is not None else "identity-based"


def twist_operator(G: FiniteGroup) -> list[list[int]]:
    """Matrix of ``1_g -> sum_{h ~ g} |Stab(g)| 1_h`` (column g is the image of 1_g)."""
    cd = G.class_data
    n = G.order
    M = [[0] * n for _ in range(n)]
    for g in range(n):
        s = cd.centralizer_order[g]
        for h in cd.classes[cd.class_of[g]]:
            M[h][g] = s
    return M


def _sparse_square(M: list[list[int]]) -> list[list[int]]:
    n = len(M)
    nz_rows = [[i for i in range(n) if M[i][j]] for j in range(n)]
    out = [[0] * n for _ in range(n)]
    for j in range(n):
        for k in nz_rows[j]:
            mkj = M[k][j]
            for i in nz_rows[k]:
                out[i][j] += M[i][k] * mkj
    return out


def twist_trace(G: FiniteGroup, cap: int = THETA_MATRIX_CAP) -> TwistTrace:
    """Trace of the twisting cylinder, with the operator for ``|G| <= cap``.

    Asserts ``Tr = |G| c``, ``Theta^2 = |G| Theta`` (so every eigenvalue is
    ``|G|`` or 0) and ``Tr(Theta^2) / |G|`` = number of commuting pairs.
    """
    n, c = G.order, G.class_data.count
    expected = n * c
    if n > cap:
        return TwistTrace(expected, None)
    M = twist_operator(G)
    tr = sum(M[i][i] for i in range(n))
    assert tr == expected, f"trace {tr} != |G| c = {expected}"
    M2 = _sparse_square(M)
    assert all(M2[i][j] == n * M[i][j] for i in range(n) for j in range(n)), "Theta^2 != |G| Theta"
    tr2 = sum(M2[i][i] for i in range(n))
    assert tr2 % n == 0 and tr2 // n == commutator_distribution(G).at_identity()
    return TwistTrace(tr, M)


def repvar_sequence(G: FiniteGroup, max_genus: int) -> InvariantSequence:
    """``N_0, ..., N_max_genus`` as an invariant sequence over Q."""
    if max_genus < 1:
        raise ValueError("max_genus must be at least 1")
    return InvariantSequence(tuple(genus_counts(G, max_genus)))
