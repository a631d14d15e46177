"""Molecular graph types: Atom, Bond, MolGraph with ring perception.

A MolGraph is produced by the SMILES parser and treated as immutable
afterwards; all chemistry (canonicalization, matching, descriptors)
operates on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

SINGLE = "single"
DOUBLE = "double"
TRIPLE = "triple"
AROMATIC = "aromatic"

BOND_ORDER_VALUE = {SINGLE: 1, DOUBLE: 2, TRIPLE: 3, AROMATIC: 1}
BOND_SORT_KEY = {SINGLE: 1, DOUBLE: 2, TRIPLE: 3, AROMATIC: 4}


@dataclass(slots=True)
class Atom:
    element: str
    charge: int = 0
    isotope: int | None = None
    aromatic: bool = False
    explicit_h: int | None = None  # bracket-specified H count, None if implied
    hcount: int = 0  # resolved total hydrogens
    chiral: str | None = None  # "@" / "@@", parsed but excluded from canon
    from_bracket: bool = False
    offset: int = 0  # char offset in the source string, for errors


@dataclass(slots=True)
class Bond:
    a: int
    b: int
    order: str = SINGLE
    stereo_mark: str | None = None  # "up" / "down"
    arom_default: bool = False  # order came from an unspecified aromatic-aromatic bond

    def other(self, i: int) -> int:
        return self.b if i == self.a else self.a


@dataclass(slots=True)
class MolGraph:
    atoms: list[Atom]
    bonds: list[Bond]
    source: str = ""
    ring_info: list[list[int]] = field(default_factory=list)  # SSSR atom cycles
    adjacency: list[list[tuple[int, int]]] = field(default_factory=list)
    ring_bonds: set[int] = field(default_factory=set)  # bond idx in any cycle
    ring_atoms: set[int] = field(default_factory=set)
    stereo_present: bool = False

    def neighbors(self, i: int) -> list[tuple[int, int]]:
        """(atom index, bond index) pairs adjacent to atom i."""
        return self.adjacency[i]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    def bond_between(self, a: int, b: int) -> Bond | None:
        for j, bi in self.adjacency[a]:
            if j == b:
                return self.bonds[bi]
        return None

    def bond_order_sum(self, i: int) -> int:
        """Sum of bond orders at atom i, counting aromatic bonds as 1."""
        return sum(BOND_ORDER_VALUE[self.bonds[bi].order] for _, bi in self.adjacency[i])

    def double_bonds_at(self, i: int) -> int:
        return sum(1 for _, bi in self.adjacency[i] if self.bonds[bi].order == DOUBLE)

    def needs_ring_double(self, i: int) -> bool:
        """Whether an aromatic atom contributes a double bond when kekulized."""
        a = self.atoms[i]
        if not a.aromatic:
            return False
        deg = self.degree(i)
        el = a.element
        if el in ("C", "B"):
            return all(self.bonds[bi].order in (SINGLE, AROMATIC) for _, bi in self.adjacency[i])
        if el in ("N", "P"):
            if a.charge == 0:
                return a.hcount == 0 and deg == 2
            if a.charge == 1:
                return a.hcount + deg == 3
            return False
        if el in ("O", "S", "Se"):
            return a.charge == 1
        return False

    def effective_valence(self, i: int) -> int:
        """Bond-order sum (aromatic as 1) + hydrogens + kekulized ring double."""
        extra = 1 if self.needs_ring_double(i) else 0
        return self.bond_order_sum(i) + self.atoms[i].hcount + extra

    def fragments(self) -> list[list[int]]:
        """Connected components as sorted atom-index lists."""
        seen = [False] * len(self.atoms)
        out = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            comp = []
            stack = [start]
            seen[start] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for u, _ in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            out.append(sorted(comp))
        return out

    # --- construction helpers (used by the parser only) -------------------

    def build_adjacency(self) -> None:
        adj: list[list[tuple[int, int]]] = [[] for _ in self.atoms]
        for bi, b in enumerate(self.bonds):
            adj[b.a].append((b.b, bi))
            adj[b.b].append((b.a, bi))
        self.adjacency = adj

    def perceive_rings(self) -> None:
        """Find ring bonds/atoms (non-bridges) and an SSSR cycle list."""
        self.ring_bonds = _non_bridge_bonds(self)
        self.ring_atoms = set()
        for bi in self.ring_bonds:
            self.ring_atoms.add(self.bonds[bi].a)
            self.ring_atoms.add(self.bonds[bi].b)
        self.ring_info = _sssr(self)


def _non_bridge_bonds(mol: MolGraph) -> set[int]:
    """Bond indices that lie on at least one cycle (iterative bridge finding)."""
    n = len(mol.atoms)
    disc = [-1] * n
    low = [0] * n
    bridges: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack = [(root, -1, iter(mol.adjacency[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, pbond, it = stack[-1]
            advanced = False
            for u, bi in it:
                if bi == pbond:
                    continue
                if disc[u] == -1:
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append((u, bi, iter(mol.adjacency[u])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[u])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv]:
                        bridges.add(pbond)
    return set(range(len(mol.bonds))) - bridges


def _sssr(mol: MolGraph) -> list[list[int]]:
    """Smallest set of smallest rings via shortest-cycle candidates + GF(2) basis."""
    nbonds = len(mol.bonds)
    comp_count = len(mol.fragments())
    target = nbonds - len(mol.atoms) + comp_count
    if target <= 0:
        return []

    candidates: dict[frozenset[int], list[int]] = {}

    def add_cycle(atom_path: list[int]) -> None:
        edges = []
        k = len(atom_path)
        for idx in range(k):
            a, b = atom_path[idx], atom_path[(idx + 1) % k]
            for u, bi in mol.adjacency[a]:
                if u == b:
                    edges.append(bi)
                    break
        if len(edges) != k:
            return
        key = frozenset(edges)
        if key not in candidates:
            candidates[key] = atom_path

    # Shortest cycle through every ring bond.
    for bi in sorted(mol.ring_bonds):
        b = mol.bonds[bi]
        path = _shortest_path_avoiding(mol, b.a, b.b, bi)
        if path is not None:
            add_cycle(path)

    # Fundamental cycles from a spanning forest guarantee a complete basis.
    parent = {}
    parent_bond = {}
    order = []
    seen = set()
    tree_bonds = set()
    for root in range(len(mol.atoms)):
        if root in seen:
            continue
        seen.add(root)
        parent[root] = -1
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u, bi in mol.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    parent[u] = v
                    parent_bond[u] = bi
                    tree_bonds.add(bi)
                    queue.append(u)
    for bi, b in enumerate(mol.bonds):
        if bi in tree_bonds or bi not in mol.ring_bonds:
            continue
        pa = _tree_path(parent, b.a)
        pb = _tree_path(parent, b.b)
        common = set(pa) & set(pb)
        cut_a = [x for x in pa if x not in common]
        anchor = next(x for x in pa if x in common)
        cut_b = [x for x in pb if x not in common]
        cycle = cut_a + [anchor] + list(reversed(cut_b))
        add_cycle(cycle)

    ordered = sorted(candidates.items(), key=lambda kv: (len(kv[0]), sorted(kv[1])))
    basis_by_pivot: dict[int, int] = {}  # lowest set bit -> reduced bitmask
    rings: list[list[int]] = []
    for key, atoms in ordered:
        if len(rings) >= target:
            break
        vec = 0
        for bi in key:
            vec |= 1 << bi
        while vec:
            pivot = vec & -vec
            if pivot not in basis_by_pivot:
                basis_by_pivot[pivot] = vec
                rings.append(atoms)
                break
            vec ^= basis_by_pivot[pivot]
    return rings


def _tree_path(parent: dict[int, int], v: int) -> list[int]:
    path = [v]
    while parent.get(v, -1) != -1:
        v = parent[v]
        path.append(v)
    return path


def _shortest_path_avoiding(mol: MolGraph, src: int, dst: int, skip_bond: int):
    """BFS path src->dst avoiding one bond; returns the cycle atom list."""
    from collections import deque

    prev = {src: -1}
    q = deque([src])
    while q:
        v = q.popleft()
        if v == dst:
            break
        for u, bi in mol.adjacency[v]:
            if bi == skip_bond or u in prev:
                continue
            prev[u] = v
            q.append(u)
    if dst not in prev:
        return None
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return list(reversed(path))
