"""Best-effort 2D depiction: ring-template + chain-extension layout to SVG.

Rings are placed as regular polygons (fused rings reflected across the
shared edge), chains extend in hexagonal zig-zag directions. Coordinates
are deterministic functions of the graph. Output is standalone SVG; a
highlight set renders halo circles on atoms and thick strokes on bonds
between highlighted atoms.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .graph import AROMATIC, DOUBLE, MolGraph, TRIPLE

__all__ = ["compute_coords", "depict_svg"]

BOND_LEN = 1.0


def compute_coords(mol: MolGraph) -> list[tuple[float, float]]:
    """Deterministic 2D coordinates, one (x, y) per atom."""
    coords: dict[int, tuple[float, float]] = {}
    x_shift = 0.0
    for frag in mol.fragments():
        fc = _layout_fragment(mol, frag)
        xs = [p[0] for p in fc.values()]
        ys = [p[1] for p in fc.values()]
        dx = x_shift - min(xs)
        for i, (x, y) in fc.items():
            coords[i] = (x + dx, y - min(ys))
        x_shift += (max(xs) - min(xs)) + 1.5 * BOND_LEN
    return [coords[i] for i in range(len(mol.atoms))]


def _layout_fragment(mol: MolGraph, frag: list[int]) -> dict[int, tuple[float, float]]:
    pos: dict[int, tuple[float, float]] = {}
    rings = [r for r in mol.ring_info if r[0] in set(frag)]
    rings = [r for r in rings if all(a in set(frag) for a in r)]
    placed_rings: list[int] = []

    if rings:
        _place_ring_polygon(rings[0], pos, center=(0.0, 0.0), start_angle=math.pi / 2)
        placed_rings.append(0)
        pending = True
        while pending:
            pending = False
            for ri, ring in enumerate(rings):
                if ri in placed_rings:
                    continue
                shared = [a for a in ring if a in pos]
                if len(shared) >= 2:
                    _place_fused_ring(ring, shared, pos)
                    placed_rings.append(ri)
                    pending = True
                elif len(shared) == 1:
                    _place_spiro_ring(mol, ring, shared[0], pos)
                    placed_rings.append(ri)
                    pending = True
    if not pos:
        start = frag[0]
        pos[start] = (0.0, 0.0)

    # chain extension from placed atoms, breadth-first, deterministic order
    queue = sorted(pos)
    seen = set(pos)
    while queue:
        nxt: list[int] = []
        for v in queue:
            for u, _ in sorted(mol.adjacency[v]):
                if u in pos or u not in set(frag):
                    continue
                pos[u] = _extend_position(mol, v, u, pos)
                seen.add(u)
                nxt.append(u)
        queue = sorted(nxt)
        # rings reachable only through chains
        for ri, ring in enumerate(rings):
            if ri in placed_rings:
                continue
            shared = [a for a in ring if a in pos]
            if len(shared) >= 2:
                _place_fused_ring(ring, shared, pos)
                placed_rings.append(ri)
                queue = sorted(set(queue) | set(ring))
            elif len(shared) == 1:
                _place_spiro_ring(mol, ring, shared[0], pos)
                placed_rings.append(ri)
                queue = sorted(set(queue) | set(ring))
    return pos


def _place_ring_polygon(ring, pos, center, start_angle) -> None:
    n = len(ring)
    radius = BOND_LEN / (2.0 * math.sin(math.pi / n))
    for k, atom in enumerate(ring):
        ang = start_angle + 2.0 * math.pi * k / n
        pos[atom] = (center[0] + radius * math.cos(ang), center[1] + radius * math.sin(ang))


def _place_fused_ring(ring, shared, pos) -> None:
    """Place a ring sharing an edge: polygon reflected away from placed mass."""
    n = len(ring)
    # rotate the cycle so two adjacent shared atoms lead
    idx = None
    for k in range(n):
        if ring[k] in pos and ring[(k + 1) % n] in pos:
            idx = k
            break
    if idx is None:  # shared atoms not adjacent in this ring; fall back to spiro
        anchor = shared[0]
        others = [a for a in ring if a != anchor]
        _place_ring_polygon([anchor] + others, pos | {}, pos[anchor], 0.0)
        return
    cyc = [ring[(idx + t) % n] for t in range(n)]
    a, b = cyc[0], cyc[1]
    ax, ay = pos[a]
    bx, by = pos[b]
    placed = [p for at, p in pos.items() if at not in (a, b)]
    cxm = sum(p[0] for p in placed) / len(placed) if placed else ax + 1.0
    cym = sum(p[1] for p in placed) / len(placed) if placed else ay
    # interior angle walk from edge a->b, choosing the side away from the mass
    for sign in (1.0, -1.0):
        trial = _walk_polygon(cyc, ax, ay, bx, by, sign)
        cx = sum(p[0] for p in trial.values()) / n
        cy = sum(p[1] for p in trial.values()) / n
        d = (cx - cxm) ** 2 + (cy - cym) ** 2
        if sign == 1.0:
            best = (d, trial)
        elif d > best[0]:
            best = (d, trial)
    for at, p in best[1].items():
        if at not in pos:
            pos[at] = p


def _walk_polygon(cyc, ax, ay, bx, by, sign):
    """Vertices of a regular polygon continuing edge (a->b) with turn sign."""
    n = len(cyc)
    interior = math.pi - 2.0 * math.pi / n
    out = {cyc[0]: (ax, ay), cyc[1]: (bx, by)}
    ang = math.atan2(by - ay, bx - ax)
    x, y = bx, by
    for t in range(2, n):
        ang += sign * (math.pi - interior)
        x += BOND_LEN * math.cos(ang)
        y += BOND_LEN * math.sin(ang)
        out[cyc[t]] = (x, y)
    return out


def _place_spiro_ring(mol, ring, anchor, pos) -> None:
    n = len(ring)
    idx = ring.index(anchor)
    cyc = [ring[(idx + t) % n] for t in range(n)]
    ax, ay = pos[anchor]
    placed = [p for at, p in pos.items() if at != anchor]
    if placed:
        mx = sum(p[0] for p in placed) / len(placed)
        my = sum(p[1] for p in placed) / len(placed)
        away = math.atan2(ay - my, ax - mx)
    else:
        away = 0.0
    radius = BOND_LEN / (2.0 * math.sin(math.pi / n))
    cx = ax + radius * math.cos(away)
    cy = ay + radius * math.sin(away)
    start = math.atan2(ay - cy, ax - cx)
    for k, atom in enumerate(cyc):
        if atom in pos:
            continue
        ang = start + 2.0 * math.pi * k / n
        pos[atom] = (cx + radius * math.cos(ang), cy + radius * math.sin(ang))


def _extend_position(mol, parent, child, pos):
    px, py = pos[parent]
    taken = [
        math.atan2(pos[u][1] - py, pos[u][0] - px)
        for u, _ in mol.adjacency[parent]
        if u in pos
    ]
    if not taken:
        return (px + BOND_LEN * math.cos(math.pi / 6), py + BOND_LEN * math.sin(math.pi / 6))
    # pick the candidate direction maximizing the minimal angular gap
    candidates = [k * math.pi / 6.0 for k in range(12)]
    best_ang, best_gap = None, -1.0
    for cand in candidates:
        gap = min(_ang_dist(cand, t) for t in taken)
        if gap > best_gap + 1e-12:
            best_gap = gap
            best_ang = cand
    return (px + BOND_LEN * math.cos(best_ang), py + BOND_LEN * math.sin(best_ang))


def _ang_dist(a, b):
    d = abs(a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)


# --- SVG rendering ---------------------------------------------------------

_SCALE = 40.0
_MARGIN = 30.0


def depict_svg(mol: MolGraph, highlight: set[int] | None = None) -> str:
    """Standalone SVG depiction; highlighted atoms get halo circles."""
    highlight = highlight or set()
    coords = compute_coords(mol)
    xs = [c[0] for c in coords]
    ys = [c[1] for c in coords]
    w = (max(xs) - min(xs)) * _SCALE + 2 * _MARGIN
    h = (max(ys) - min(ys)) * _SCALE + 2 * _MARGIN

    def sx(x):
        return (x - min(xs)) * _SCALE + _MARGIN

    def sy(y):
        return h - ((y - min(ys)) * _SCALE + _MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
        f'viewBox="0 0 {w:.2f} {h:.2f}">',
        f'<rect width="{w:.2f}" height="{h:.2f}" fill="white"/>',
    ]
    for b in mol.bonds:
        x1, y1 = sx(coords[b.a][0]), sy(coords[b.a][1])
        x2, y2 = sx(coords[b.b][0]), sy(coords[b.b][1])
        hl = b.a in highlight and b.b in highlight
        cls = "bond highlight" if hl else "bond"
        stroke = "#e6550d" if hl else "#222"
        width = 4.5 if hl else 1.6
        lines = _bond_lines(x1, y1, x2, y2, b.order)
        for lx1, ly1, lx2, ly2, dash in lines:
            dash_attr = ' stroke-dasharray="4,3"' if dash else ""
            parts.append(
                f'<line class="{cls}" x1="{lx1:.2f}" y1="{ly1:.2f}" x2="{lx2:.2f}" '
                f'y2="{ly2:.2f}" stroke="{stroke}" stroke-width="{width}"{dash_attr}/>'
            )
    for i, a in enumerate(mol.atoms):
        x, y = sx(coords[i][0]), sy(coords[i][1])
        hl = i in highlight
        cls = "atom highlight" if hl else "atom"
        parts.append(f'<g class="{cls}" data-idx="{i}">')
        if hl:
            parts.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="11" fill="#fdd0a2" stroke="none"/>'
            )
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="2.2" fill="#222"/>')
        label = _atom_label(a)
        if label:
            parts.append(
                f'<text x="{x:.2f}" y="{y - 6:.2f}" font-size="13" '
                f'text-anchor="middle" fill="#14508c">{escape(label)}</text>'
            )
        parts.append("</g>")
    parts.append("</svg>")
    return "".join(parts)


def _bond_lines(x1, y1, x2, y2, order):
    dx, dy = x2 - x1, y2 - y1
    ln = math.hypot(dx, dy) or 1.0
    ox, oy = -dy / ln * 3.2, dx / ln * 3.2
    if order == DOUBLE:
        return [
            (x1 + ox, y1 + oy, x2 + ox, y2 + oy, False),
            (x1 - ox, y1 - oy, x2 - ox, y2 - oy, False),
        ]
    if order == TRIPLE:
        return [
            (x1, y1, x2, y2, False),
            (x1 + 1.6 * ox, y1 + 1.6 * oy, x2 + 1.6 * ox, y2 + 1.6 * oy, False),
            (x1 - 1.6 * ox, y1 - 1.6 * oy, x2 - 1.6 * ox, y2 - 1.6 * oy, False),
        ]
    if order == AROMATIC:
        return [
            (x1, y1, x2, y2, False),
            (x1 + ox, y1 + oy, x2 + ox, y2 + oy, True),
        ]
    return [(x1, y1, x2, y2, False)]


def _atom_label(a) -> str:
    if a.element == "C" and a.charge == 0 and a.isotope is None:
        return ""
    label = a.element
    if a.isotope is not None:
        label = f"{a.isotope}{label}"
    if a.hcount == 1:
        label += "H"
    elif a.hcount > 1:
        label += f"H{a.hcount}"
    if a.charge == 1:
        label += "+"
    elif a.charge == -1:
        label += "-"
    elif a.charge > 1:
        label += f"+{a.charge}"
    elif a.charge < -1:
        label += f"-{-a.charge}"
    return label
