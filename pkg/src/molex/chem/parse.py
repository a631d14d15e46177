"""SMILES parser producing a validated MolGraph.

Supports the Daylight organic subset, bracket atoms (isotope, charge,
H-count, atom class), bond symbols ``- = # :``, stereo marks ``/ \\ @ @@``
(parsed and stored, excluded from canonicalization), ring closures
including ``%nn``, branches, and dot-separated fragments. Every error is
reported with the character offset it occurred at.
"""

from __future__ import annotations

import re

from .elements import (
    AROMATIC_OK,
    KNOWN_ELEMENTS,
    ORGANIC_SUBSET,
    default_hydrogens,
    permitted_valences,
)
from .graph import AROMATIC, DOUBLE, SINGLE, TRIPLE, Atom, Bond, MolGraph

__all__ = ["ParseError", "parse_smiles"]


class ParseError(ValueError):
    """SMILES rejection with the offending character offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.message = message
        self.offset = offset


_BRACKET_RE = re.compile(
    r"\[(?P<isotope>\d+)?(?P<symbol>[A-Z][a-z]?|se|as|[bcnops]|\*)"
    r"(?P<chiral>@{1,2})?(?P<hcount>H\d*)?"
    r"(?P<charge>\+\++|--+|[+-]\d*)?(?::(?P<cls>\d+))?\]"
)

_TWO_LETTER_ORGANIC = ("Cl", "Br")
_BOND_CHARS = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}


def parse_smiles(text: str, pattern: bool = False) -> MolGraph:
    """Parse one SMILES string into a MolGraph.

    With pattern=True the relaxed query-pattern semantics are used:
    aromatic atoms need not sit in rings, valences are not enforced, and
    unspecified bonds between aromatic atoms stay aromatic even when
    acyclic (so ``cc`` matches an aromatic ring edge).
    """
    if text is None or not text.strip():
        raise ParseError("empty input", 0)
    s = text.strip()

    atoms: list[Atom] = []
    bonds: list[Bond] = []
    prev: int | None = None
    branch_stack: list[int | None] = []
    pending: tuple[str | None, str | None, int] | None = None  # order, stereo, offset
    ring_open: dict[int, tuple[int, str | None, str | None, int]] = {}
    i = 0
    n = len(s)

    def add_atom(atom: Atom) -> None:
        nonlocal prev, pending
        idx = len(atoms)
        atoms.append(atom)
        if prev is not None:
            _add_bond(bonds, atoms, prev, idx, pending)
        elif pending is not None and pending[0] is not None:
            raise ParseError("bond symbol with no preceding atom", pending[2])
        pending = None
        prev = idx

    while i < n:
        ch = s[i]
        if ch == "[":
            m = _BRACKET_RE.match(s, i)
            if not m:
                end = s.find("]", i)
                raise ParseError("malformed bracket atom", i)
            sym = m.group("symbol")
            element = sym.capitalize() if sym != "*" else "*"
            if element not in KNOWN_ELEMENTS:
                raise ParseError(f"unknown element symbol {sym!r}", i)
            aromatic = sym[0].islower() and sym != "*"
            if aromatic and element not in AROMATIC_OK:
                raise ParseError(f"element {element} cannot be aromatic", i)
            htxt = m.group("hcount")
            if htxt is None:
                hcount = 0
            elif htxt == "H":
                hcount = 1
            else:
                hcount = int(htxt[1:])
            ctxt = m.group("charge")
            if ctxt is None:
                charge = 0
            elif set(ctxt) == {"+"}:
                charge = len(ctxt)
            elif set(ctxt) == {"-"}:
                charge = -len(ctxt)
            else:
                mag = int(ctxt[1:]) if len(ctxt) > 1 else 1
                charge = mag if ctxt[0] == "+" else -mag
            iso = int(m.group("isotope")) if m.group("isotope") else None
            add_atom(
                Atom(
                    element=element,
                    charge=charge,
                    isotope=iso,
                    aromatic=aromatic,
                    explicit_h=hcount,
                    hcount=hcount,
                    chiral=m.group("chiral"),
                    from_bracket=True,
                    offset=i,
                )
            )
            i = m.end()
        elif ch.isupper():
            sym = s[i : i + 2] if s[i : i + 2] in _TWO_LETTER_ORGANIC else ch
            if sym not in ORGANIC_SUBSET:
                raise ParseError(f"unknown element symbol {sym!r}", i)
            add_atom(Atom(element=sym, offset=i))
            i += len(sym)
        elif ch in "bcnops":
            add_atom(Atom(element=ch.upper(), aromatic=True, offset=i))
            i += 1
        elif ch == "*":
            add_atom(Atom(element="*", offset=i))
            i += 1
        elif ch in _BOND_CHARS:
            if pending is not None and pending[0] is not None:
                raise ParseError("two bond symbols in a row", i)
            pending = (_BOND_CHARS[ch], None, i)
            i += 1
        elif ch in "/\\":
            if pending is not None and pending[0] is not None:
                raise ParseError("stereo mark after bond symbol", i)
            pending = (SINGLE, "up" if ch == "/" else "down", i)
            i += 1
        elif ch.isdigit() or ch == "%":
            if ch == "%":
                if i + 2 >= n or not s[i + 1 : i + 3].isdigit():
                    raise ParseError("malformed %nn ring closure", i)
                num = int(s[i + 1 : i + 3])
                width = 3
            else:
                num = int(ch)
                width = 1
            if prev is None:
                raise ParseError("ring closure before any atom", i)
            _close_or_open_ring(bonds, atoms, ring_open, num, prev, pending, i)
            pending = None
            i += width
        elif ch == "(":
            if prev is None:
                raise ParseError("branch with no preceding atom", i)
            branch_stack.append(prev)
            i += 1
        elif ch == ")":
            if not branch_stack:
                raise ParseError("unbalanced parentheses", i)
            prev = branch_stack.pop()
            i += 1
        elif ch == ".":
            if pending is not None and pending[0] is not None:
                raise ParseError("bond symbol before fragment separator", i)
            prev = None
            i += 1
        elif ch.isspace():
            break  # trailing title/whitespace
        else:
            raise ParseError(f"unexpected character {ch!r}", i)

    if branch_stack:
        raise ParseError("unbalanced parentheses", n)
    if pending is not None and pending[0] is not None:
        raise ParseError("dangling bond symbol", pending[2])
    if ring_open:
        num, (_, _, _, off) = sorted(ring_open.items())[0]
        raise ParseError(f"unmatched ring-closure digit {num}", off)
    if not atoms:
        raise ParseError("empty input", 0)

    mol = MolGraph(atoms=atoms, bonds=bonds, source=text)
    mol.stereo_present = any(a.chiral for a in atoms) or any(b.stereo_mark for b in bonds)
    mol.build_adjacency()
    _check_simple(mol)
    mol.perceive_rings()
    _settle_default_aromatic_bonds(mol, pattern)
    _perceive_benzenoid_aromaticity(mol)
    if not pattern:
        _validate_aromatic_atoms(mol)
    _resolve_hydrogens(mol, strict=not pattern)
    if not pattern:
        _check_valences(mol)
    return mol


def _add_bond(bonds, atoms, a, b, pending):
    order, stereo, off = pending if pending is not None else (None, None, 0)
    if order is None:
        if atoms[a].aromatic and atoms[b].aromatic:
            bonds.append(Bond(a, b, AROMATIC, arom_default=True))
        else:
            bonds.append(Bond(a, b, SINGLE))
    else:
        bonds.append(Bond(a, b, order, stereo_mark=stereo))


def _close_or_open_ring(bonds, atoms, ring_open, num, cur, pending, off):
    order, stereo, _ = pending if pending is not None else (None, None, 0)
    if num in ring_open:
        other, o_order, o_stereo, o_off = ring_open.pop(num)
        if other == cur:
            raise ParseError(f"ring-closure digit {num} bonds atom to itself", off)
        if any((b.a, b.b) in ((cur, other), (other, cur)) for b in bonds):
            raise ParseError(f"duplicate bond via ring closure {num}", off)
        if order is not None and o_order is not None and order != o_order:
            raise ParseError(f"conflicting bond orders on ring closure {num}", off)
        final = order if order is not None else o_order
        stereo_mark = stereo if stereo is not None else o_stereo
        if final is None:
            if atoms[other].aromatic and atoms[cur].aromatic:
                bonds.append(Bond(other, cur, AROMATIC, arom_default=True))
            else:
                bonds.append(Bond(other, cur, SINGLE, stereo_mark=stereo_mark))
        else:
            bonds.append(Bond(other, cur, final, stereo_mark=stereo_mark))
    else:
        ring_open[num] = (cur, order, stereo, off)


def _check_simple(mol: MolGraph) -> None:
    seen = set()
    for b in mol.bonds:
        if b.a == b.b:
            raise ParseError("self bond", mol.atoms[b.a].offset)
        key = (min(b.a, b.b), max(b.a, b.b))
        if key in seen:
            raise ParseError("duplicate bond between atoms", mol.atoms[b.b].offset)
        seen.add(key)


def _settle_default_aromatic_bonds(mol: MolGraph, pattern: bool) -> None:
    """Demote unspecified aromatic-aromatic bonds that are not in an aromatic ring."""
    if pattern:
        return
    aromatic_ring_bonds: set[int] = set()
    for ring in mol.ring_info:
        if all(mol.atoms[i].aromatic for i in ring):
            k = len(ring)
            for idx in range(k):
                a, b = ring[idx], ring[(idx + 1) % k]
                for u, bi in mol.adjacency[a]:
                    if u == b:
                        aromatic_ring_bonds.add(bi)
    for bi, b in enumerate(mol.bonds):
        if b.arom_default and bi not in aromatic_ring_bonds:
            b.order = SINGLE


def _perceive_benzenoid_aromaticity(mol: MolGraph) -> None:
    """Mark kekulized six-membered all-sp2 C/N rings as aromatic."""
    changed: list[list[int]] = []
    for ring in mol.ring_info:
        if len(ring) != 6:
            continue
        ok = True
        for i in ring:
            a = mol.atoms[i]
            if a.aromatic:
                ok = False  # declared rings handled on input
                break
            if a.element not in ("C", "N") or a.charge != 0 or mol.degree(i) > 3:
                ok = False
                break
            if a.element == "N" and (a.explicit_h or 0) > 0:
                ok = False
                break
            doubles = [bi for _, bi in mol.adjacency[i] if mol.bonds[bi].order == DOUBLE]
            if len(doubles) != 1:
                ok = False
                break
            db = mol.bonds[doubles[0]]
            partner = db.other(i)
            if doubles[0] not in mol.ring_bonds:
                ok = False
                break
            p = mol.atoms[partner]
            if p.element not in ("C", "N") or p.charge != 0:
                ok = False
                break
            if any(mol.bonds[bi].order == TRIPLE for _, bi in mol.adjacency[i]):
                ok = False
                break
        if ok:
            changed.append(ring)
    for ring in changed:
        for i in ring:
            mol.atoms[i].aromatic = True
        k = len(ring)
        for idx in range(k):
            a, b = ring[idx], ring[(idx + 1) % k]
            for u, bi in mol.adjacency[a]:
                if u == b:
                    mol.bonds[bi].order = AROMATIC


def _validate_aromatic_atoms(mol: MolGraph) -> None:
    in_aromatic_ring: set[int] = set()
    for ring in mol.ring_info:
        if all(mol.atoms[i].aromatic for i in ring):
            in_aromatic_ring.update(ring)
    for i, a in enumerate(mol.atoms):
        if a.aromatic and i not in in_aromatic_ring:
            raise ParseError("aromatic atom not in an aromatic ring", a.offset)


def _resolve_hydrogens(mol: MolGraph, strict: bool) -> None:
    for i, a in enumerate(mol.atoms):
        if a.from_bracket:
            a.hcount = a.explicit_h or 0
            continue
        if a.element == "*":
            a.hcount = 0
            continue
        if a.aromatic:
            if a.element == "C":
                heavy = mol.bond_order_sum(i)
                extra = 1 if mol.needs_ring_double(i) else 0
                h = 4 - heavy - extra
                if h < 0:
                    if strict:
                        raise ParseError("valence violation", a.offset)
                    h = 0
                a.hcount = h
            else:
                a.hcount = 0
            continue
        h = default_hydrogens(a.element, mol.bond_order_sum(i))
        if h < 0:
            if strict:
                raise ParseError("valence violation", a.offset)
            h = 0
        a.hcount = h


def _check_valences(mol: MolGraph) -> None:
    for i, a in enumerate(mol.atoms):
        if a.element == "*":
            continue
        allowed = permitted_valences(a.element, a.charge)
        if not allowed:
            continue  # untabulated element, accepted as written
        if mol.effective_valence(i) not in allowed:
            raise ParseError("valence violation", a.offset)
