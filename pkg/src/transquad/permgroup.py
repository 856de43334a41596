"""Permutations, generator files, finite group closure and triple classes.

Points are 0-based in code and 1-based in every text format.  A permutation
``p`` sends point ``i`` to ``p.images[i]``; products compose like functions,
so ``(p * q)(i) == p(q(i))``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

DEFAULT_CAP = 5040


class CapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"group closure exceeds the cap of {cap} elements")
        self.cap = cap


class CycleParseError(ValueError):
    pass


class GeneratorFileError(ValueError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True, order=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation of 0..{len(self.images) - 1}")

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Perm) -> Perm:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        img = self.images
        return Perm(tuple(img[j] for j in other.images))

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def act(self, v: Sequence) -> tuple:
        """Permute coordinates: the entry at position i moves to position p(i)."""
        out = [None] * self.degree
        for i, j in enumerate(self.images):
            out[j] = v[i]
        return tuple(out)

    def __str__(self) -> str:
        return format_cycles(self)


def format_cycles(p: Perm) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)


_CYCLE_TOKEN = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse disjoint-cycle notation with 1-based points, e.g. ``(1 2 3)(4 5)``.

    Commas may separate points.  Unmentioned points are fixed.
    """
    s = text.strip()
    if not s:
        raise CycleParseError("empty permutation text")
    pos = 0
    images = list(range(degree))
    used: set[int] = set()
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_TOKEN.match(s, pos)
        if m is None:
            raise CycleParseError(f"malformed cycle notation near {s[pos:]!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        pts = []
        for tok in body:
            if not tok.isdigit():
                raise CycleParseError(f"bad point {tok!r}")
            k = int(tok)
            if not 1 <= k <= degree:
                raise CycleParseError(f"point {k} out of range 1..{degree}")
            if k - 1 in used:
                raise CycleParseError(f"point {k} repeated")
            used.add(k - 1)
            pts.append(k - 1)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Perm(tuple(images))


def read_generator_file(path) -> tuple[int, list[Perm]]:
    """Read ``degree = n`` followed by one cycle-notation generator per line."""
    path = Path(path)
    degree = None
    gens: list[Perm] = []
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s*=\s*(\d+)", line)
            if m is None:
                raise GeneratorFileError(path, lineno, "expected 'degree = n'")
            degree = int(m.group(1))
            if degree < 1:
                raise GeneratorFileError(path, lineno, "degree must be positive")
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except CycleParseError as exc:
            raise GeneratorFileError(path, lineno, str(exc)) from None
    if degree is None:
        raise GeneratorFileError(path, 0, "missing 'degree = n' header")
    return degree, gens


@dataclass(eq=False)
class PermGroup:
    """A finite permutation group with all of its elements enumerated.

    ``elements[0]`` is the identity.  Element indices are the currency used
    by triples and subgroup bookkeeping.
    """
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    name: str = "group"
    _index: dict = field(default_factory=dict, repr=False)
    _inverse: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {p.images: i for i, p in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, p: Perm) -> int:
        return self._index[p.images]

    def __contains__(self, p: Perm) -> bool:
        return p.images in self._index

    def mul(self, i: int, j: int) -> int:
        return self._index[(self.elements[i] * self.elements[j]).images]

    def inverse_index(self, i: int) -> int:
        if self._inverse is None:
            self._inverse = [self.index(p.inverse()) for p in self.elements]
        return self._inverse[i]

    def conjugation_table(self) -> list[list[int]]:
        """``table[g][x]`` is the index of ``g x g^-1``."""
        els = self.elements
        out = []
        for g in els:
            ginv = g.inverse()
            out.append([self._index[(g * x * ginv).images] for x in els])
        return out

    def fingerprint(self) -> str:
        """Stable text identifying the element sequence (for cache keys)."""
        return f"{self.degree}|" + ";".join(",".join(map(str, p.images)) for p in self.elements)

    def __getstate__(self):
        return {"degree": self.degree, "generators": self.generators,
                "elements": self.elements, "name": self.name}

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._inverse = None
        self.__post_init__()


def close(generators: Iterable[Perm], cap: int = DEFAULT_CAP, name: str = "group",
          degree: int | None = None) -> PermGroup:
    """Breadth-first closure of ``generators``.

    Elements appear in discovery order: the identity, then products
    ``g * x`` taken with ``x`` in queue order and ``g`` in generator order.
    """
    gens = list(generators)
    if degree is None:
        if not gens:
            raise ValueError("degree required when there are no generators")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators of differing degree")
    ident = Perm.identity(degree)
    elements = [ident]
    seen = {ident.images}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y.images not in seen:
                if len(elements) >= cap:
                    raise CapExceeded(cap)
                seen.add(y.images)
                elements.append(y)
                queue.append(y)
    return PermGroup(degree, tuple(gens), tuple(elements), name)


def is_transitive(group: PermGroup) -> bool:
    orbit = {group.elements[k](0) for k in range(group.order)} if group.degree else set()
    return len(orbit) == group.degree


def _cycle(*pts: int, degree: int) -> Perm:
    img = list(range(degree))
    for a, b in zip(pts, pts[1:] + pts[:1]):
        img[a] = b
    return Perm(tuple(img))


CATALOG_NAMES = ("cyclic", "dihedral", "symmetric", "alternating", "regular_dihedral8")


def catalog(name: str, n: int | None = None, cap: int = DEFAULT_CAP) -> PermGroup:
    """Standard transitive groups by name.  ``n`` is the degree."""
    if name == "regular_dihedral8":
        d8 = catalog("dihedral", 4)
        # left-regular action of D8 on its own elements
        gens = [Perm(tuple(d8.mul(d8.index(g), k) for k in range(d8.order)))
                for g in d8.generators]
        return close(gens, cap, name="regular_dihedral8")
    if name not in CATALOG_NAMES:
        raise ValueError(f"unknown catalog group {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    if n is None:
        raise ValueError(f"{name} needs a degree")
    minimum = {"cyclic": 1, "dihedral": 3, "symmetric": 1, "alternating": 3}[name]
    if n < minimum:
        raise ValueError(f"{name} needs degree >= {minimum}, got {n}")
    rot = _cycle(*range(n), degree=n)
    if name == "cyclic":
        gens = [rot]
    elif name == "dihedral":
        gens = [rot, Perm(tuple(n - 1 - i for i in range(n)))]
    elif name == "symmetric":
        gens = [rot, _cycle(0, 1, degree=n)] if n > 1 else []
    else:
        gens = [_cycle(0, 1, k, degree=n) for k in range(2, n)]
    return close(gens, cap, name=f"{name}:{n}", degree=n)


class Triple(NamedTuple):
    a: int
    b: int
    c: int


class TripleClass(NamedTuple):
    triple: Triple
    size: int


def all_triples(group: PermGroup) -> list[TripleClass]:
    n = group.order
    return [TripleClass(Triple(a, b, c), 1)
            for a in range(n) for b in range(n) for c in range(n)]


def triples_reduced(group: PermGroup) -> list[TripleClass]:
    """One representative per simultaneous-conjugacy class of ``G^3``.

    The representative is the lexicographically least index triple of its
    class; classes are listed in representative order.
    """
    n = group.order
    conj = group.conjugation_table()
    seen = bytearray(n ** 3)
    out = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                key = (a * n + b) * n + c
                if seen[key]:
                    continue
                members = set()
                for row in conj:
                    members.add((row[a] * n + row[b]) * n + row[c])
                for m in members:
                    seen[m] = 1
                out.append(TripleClass(Triple(a, b, c), len(members)))
    return out


def triple_classes(group: PermGroup, reduce: bool = True) -> list[TripleClass]:
    return triples_reduced(group) if reduce else all_triples(group)


def parse_group_spec(spec: str, cap: int = DEFAULT_CAP) -> PermGroup:
    """``catalog_name:parameter``, ``regular_dihedral8`` or ``file:path``."""
    kind, sep, arg = spec.partition(":")
    if kind == "file":
        if not arg:
            raise ValueError("file: group spec needs a path")
        degree, gens = read_generator_file(arg)
        return close(gens, cap, name=f"file:{Path(arg).name}", degree=degree)
    if kind == "regular_dihedral8":
        return catalog(kind, cap=cap)
    if not sep:
        raise ValueError(f"group spec {spec!r} must look like name:degree or file:path")
    try:
        n = int(arg)
    except ValueError:
        raise ValueError(f"bad degree in group spec {spec!r}") from None
    return catalog(kind, n, cap=cap)
