"""Pure-Python HNSW kernels (numpy + heapq fallback).

Same contract as the compiled `_hnswk` module: beam search over one
adjacency layer and the distance-diversity neighbor selection. Distances
are cosine distances 1 - <q, v> accumulated in float64 over float32 rows;
ties always break toward the lower node id.
"""

import heapq

import numpy as np


def search_layer(vectors, links, query, entry, ef, visit_tag, epoch):
    """Beam search one layer starting from `entry`.

    vectors: float32 (N, d); links: int32 (N, cap+1) with column 0 holding
    the neighbor count; query: float64 (d,); visit_tag/epoch implement an
    O(1)-reset visited set. Returns (ids int64, dists float64) sorted
    ascending by (dist, id); at most `ef` hits.
    """
    entry_dist = 1.0 - float(vectors[entry].astype(np.float64) @ query)
    cand = [(entry_dist, int(entry))]  # min-heap
    res = [(-entry_dist, -int(entry))]  # max-heap on (dist, id)
    visit_tag[entry] = epoch
    while cand:
        d, c = heapq.heappop(cand)
        worst = -res[0][0]
        if d > worst and len(res) >= ef:
            break
        row = links[c]
        ids = row[1 : 1 + row[0]]
        if ids.size == 0:
            continue
        fresh = ids[visit_tag[ids] != epoch]
        if fresh.size == 0:
            continue
        visit_tag[fresh] = epoch
        dists = 1.0 - vectors[fresh].astype(np.float64) @ query
        for u, du in zip(fresh.tolist(), dists.tolist()):
            worst, worst_id = res[0]
            if len(res) < ef or (du, u) < (-worst, -worst_id):
                heapq.heappush(cand, (du, u))
                heapq.heappush(res, (-du, -u))
                if len(res) > ef:
                    heapq.heappop(res)
    out_ids = np.empty(len(res), dtype=np.int64)
    out_dists = np.empty(len(res), dtype=np.float64)
    for i in range(len(res) - 1, -1, -1):
        nd, ni = heapq.heappop(res)
        out_ids[i] = -ni
        out_dists[i] = -nd
    return out_ids, out_dists


def select_neighbors(vectors, cand_ids, cand_dists, m):
    """Distance-diversity heuristic over candidates sorted asc by (dist, id).

    A candidate is kept unless it lies closer to an already-selected
    neighbor than to the query; leftover slots are filled from the
    rejected list in candidate order. Returns int64 ids, selection order.
    """
    n = len(cand_ids)
    if n <= m:
        return np.asarray(cand_ids[:n], dtype=np.int64).copy()
    selected = []
    rejected = []
    for idx in range(n):
        if len(selected) >= m:
            break
        c = int(cand_ids[idx])
        dq = float(cand_dists[idx])
        vc = vectors[c].astype(np.float64)
        good = True
        for s in selected:
            ds = 1.0 - float(vectors[s].astype(np.float64) @ vc)
            if ds < dq:
                good = False
                break
        if good:
            selected.append(c)
        else:
            rejected.append(c)
    for c in rejected:
        if len(selected) >= m:
            break
        selected.append(c)
    return np.asarray(selected, dtype=np.int64)


def link_mutual(vectors, links, new, nbr, cap):
    """Add the reverse edge nbr->new, re-selecting nbr's neighborhood when full.

    Keeps links strictly mutual: any neighbor evicted by the re-selection
    (possibly `new` itself) loses its edge back to `nbr` as well.
    """
    row = links[nbr]
    cnt = int(row[0])
    if cnt < cap:
        row[1 + cnt] = new
        row[0] = cnt + 1
        return
    old = row[1 : 1 + cnt].astype(np.int64)
    cand = np.concatenate([old, [new]])
    base = vectors[nbr].astype(np.float64)
    dists = 1.0 - vectors[cand].astype(np.float64) @ base
    order = np.lexsort((cand, dists))
    keep = select_neighbors(vectors, cand[order], dists[order], cap)
    keep_set = set(keep.tolist())
    row[0] = len(keep)
    row[1 : 1 + len(keep)] = keep
    for e in cand.tolist():
        if e in keep_set:
            continue
        erow = links[e]
        ecnt = int(erow[0])
        ids = [x for x in erow[1 : 1 + ecnt].tolist() if x != nbr]
        erow[0] = len(ids)
        erow[1 : 1 + len(ids)] = ids
