# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled HNSW kernels: layer beam search and neighbor selection.

Mirrors the pure-Python kernels in pyk.py; distances are cosine distances
1 - <q, v> accumulated in float64 over float32 rows, ties break toward
the lower node id.
"""

from libc.stdlib cimport free, malloc, realloc

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline double dotf(const float* a, const double* q, Py_ssize_t d) nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        s += (<double> a[i]) * q[i]
    return s


cdef inline bint pair_lt(double d1, long long i1, double d2, long long i2) nogil:
    return d1 < d2 or (d1 == d2 and i1 < i2)


# --- binary heaps keyed by (dist, id) -------------------------------------

cdef inline void min_push(double* hd, long long* hi, Py_ssize_t* n, double d, long long v) nogil:
    cdef Py_ssize_t i = n[0], p
    hd[i] = d
    hi[i] = v
    n[0] += 1
    while i > 0:
        p = (i - 1) >> 1
        if pair_lt(hd[i], hi[i], hd[p], hi[p]):
            hd[i], hd[p] = hd[p], hd[i]
            hi[i], hi[p] = hi[p], hi[i]
            i = p
        else:
            break

cdef inline void min_pop(double* hd, long long* hi, Py_ssize_t* n) nogil:
    cdef Py_ssize_t i = 0, c
    n[0] -= 1
    hd[0] = hd[n[0]]
    hi[0] = hi[n[0]]
    while True:
        c = 2 * i + 1
        if c >= n[0]:
            break
        if c + 1 < n[0] and pair_lt(hd[c + 1], hi[c + 1], hd[c], hi[c]):
            c += 1
        if pair_lt(hd[c], hi[c], hd[i], hi[i]):
            hd[i], hd[c] = hd[c], hd[i]
            hi[i], hi[c] = hi[c], hi[i]
            i = c
        else:
            break

cdef inline void max_push(double* hd, long long* hi, Py_ssize_t* n, double d, long long v) nogil:
    cdef Py_ssize_t i = n[0], p
    hd[i] = d
    hi[i] = v
    n[0] += 1
    while i > 0:
        p = (i - 1) >> 1
        if pair_lt(hd[p], hi[p], hd[i], hi[i]):
            hd[i], hd[p] = hd[p], hd[i]
            hi[i], hi[p] = hi[p], hi[i]
            i = p
        else:
            break

cdef inline void max_pop(double* hd, long long* hi, Py_ssize_t* n) nogil:
    cdef Py_ssize_t i = 0, c
    n[0] -= 1
    hd[0] = hd[n[0]]
    hi[0] = hi[n[0]]
    while True:
        c = 2 * i + 1
        if c >= n[0]:
            break
        if c + 1 < n[0] and pair_lt(hd[c], hi[c], hd[c + 1], hi[c + 1]):
            c += 1
        if pair_lt(hd[i], hi[i], hd[c], hi[c]):
            hd[i], hd[c] = hd[c], hd[i]
            hi[i], hi[c] = hi[c], hi[i]
            i = c
        else:
            break


def search_layer(const float[:, ::1] vectors, const int[:, ::1] links,
                 const double[::1] query, long long entry,
                 Py_ssize_t ef, long long[::1] visit_tag, long long epoch):
    """Beam search one layer; see pyk.search_layer for the contract."""
    cdef Py_ssize_t d = vectors.shape[1]
    cdef double entry_dist = 1.0 - dotf(&vectors[entry, 0], &query[0], d)
    cdef Py_ssize_t cap = ef + 2
    cdef Py_ssize_t ccap = 4 * ef + 16
    cdef double* rd = <double*> malloc(cap * sizeof(double))
    cdef long long* ri = <long long*> malloc(cap * sizeof(long long))
    cdef double* cd = <double*> malloc(ccap * sizeof(double))
    cdef long long* ci = <long long*> malloc(ccap * sizeof(long long))
    if rd == NULL or ri == NULL or cd == NULL or ci == NULL:
        free(rd); free(ri); free(cd); free(ci)
        raise MemoryError()
    cdef Py_ssize_t nres = 0, ncand = 0
    cdef double dcur, du, worst
    cdef long long ccur, u, worst_id
    cdef int nlinks
    cdef Py_ssize_t j
    cdef const float* vrow
    cdef double* ncd
    cdef long long* nci
    cdef bint fail = 0

    with nogil:
        min_push(cd, ci, &ncand, entry_dist, entry)
        max_push(rd, ri, &nres, entry_dist, entry)
        visit_tag[entry] = epoch
        while ncand > 0:
            dcur = cd[0]
            ccur = ci[0]
            min_pop(cd, ci, &ncand)
            if dcur > rd[0] and nres >= ef:
                break
            nlinks = links[ccur, 0]
            for j in range(nlinks):
                u = links[ccur, 1 + j]
                if visit_tag[u] == epoch:
                    continue
                visit_tag[u] = epoch
                vrow = &vectors[u, 0]
                du = 1.0 - dotf(vrow, &query[0], d)
                worst = rd[0]
                worst_id = ri[0]
                if nres < ef or pair_lt(du, u, worst, worst_id):
                    if ncand + 1 > ccap:
                        ccap = ccap * 2
                        ncd = <double*> realloc(cd, ccap * sizeof(double))
                        nci = <long long*> realloc(ci, ccap * sizeof(long long))
                        if ncd == NULL or nci == NULL:
                            if ncd != NULL:
                                cd = ncd
                            if nci != NULL:
                                ci = nci
                            fail = 1
                            break
                        cd = ncd
                        ci = nci
                    min_push(cd, ci, &ncand, du, u)
                    max_push(rd, ri, &nres, du, u)
                    if nres > ef:
                        max_pop(rd, ri, &nres)
            if fail:
                break

    if fail:
        free(rd); free(ri); free(cd); free(ci)
        raise MemoryError()

    out_ids = np.empty(nres, dtype=np.int64)
    out_dists = np.empty(nres, dtype=np.float64)
    cdef long long[::1] oi = out_ids
    cdef double[::1] od = out_dists
    cdef Py_ssize_t k = nres - 1
    while nres > 0:
        od[k] = rd[0]
        oi[k] = ri[0]
        max_pop(rd, ri, &nres)
        k -= 1
    free(rd); free(ri); free(cd); free(ci)
    return out_ids, out_dists


def select_neighbors(const float[:, ::1] vectors, const long long[::1] cand_ids,
                     const double[::1] cand_dists, Py_ssize_t m):
    """Distance-diversity selection; see pyk.select_neighbors for the contract."""
    cdef Py_ssize_t n = cand_ids.shape[0]
    cdef Py_ssize_t d = vectors.shape[1]
    if n <= m:
        return np.asarray(cand_ids[:n]).astype(np.int64, copy=True)
    out = np.empty(m, dtype=np.int64)
    rej = np.empty(n, dtype=np.int64)
    cdef long long[::1] sel = out
    cdef long long[::1] rejected = rej
    cdef Py_ssize_t nsel = 0, nrej = 0, idx, s
    cdef long long c
    cdef double dq, ds
    cdef bint good
    cdef const float* vc
    with nogil:
        for idx in range(n):
            if nsel >= m:
                break
            c = cand_ids[idx]
            dq = cand_dists[idx]
            vc = &vectors[c, 0]
            good = 1
            for s in range(nsel):
                ds = 1.0 - dotf2(&vectors[sel[s], 0], vc, d)
                if ds < dq:
                    good = 0
                    break
            if good:
                sel[nsel] = c
                nsel += 1
            else:
                rejected[nrej] = c
                nrej += 1
        for idx in range(nrej):
            if nsel >= m:
                break
            sel[nsel] = rejected[idx]
            nsel += 1
    return out[:nsel].copy()


cdef inline double dotf2(const float* a, const float* b, Py_ssize_t d) nogil:
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(d):
        s += (<double> a[i]) * (<double> b[i])
    return s


def link_mutual(const float[:, ::1] vectors, int[:, ::1] links,
                long long new, long long nbr, int cap):
    """Reverse-edge maintenance; see pyk.link_mutual for the contract."""
    cdef int cnt = links[nbr, 0]
    if cnt < cap:
        links[nbr, 1 + cnt] = <int> new
        links[nbr, 0] = cnt + 1
        return
    cdef Py_ssize_t d = vectors.shape[1]
    cdef int n = cnt + 1
    cdef long long* cand = <long long*> malloc(n * sizeof(long long))
    cdef double* dist = <double*> malloc(n * sizeof(double))
    cdef long long* kept = <long long*> malloc(cap * sizeof(long long))
    cdef double* kept_d = <double*> malloc(cap * sizeof(double))
    cdef long long* rej = <long long*> malloc(n * sizeof(long long))
    cdef unsigned char* is_kept = <unsigned char*> malloc(n * sizeof(unsigned char))
    if cand == NULL or dist == NULL or kept == NULL or kept_d == NULL or rej == NULL or is_kept == NULL:
        free(cand); free(dist); free(kept); free(kept_d); free(rej); free(is_kept)
        raise MemoryError()
    cdef Py_ssize_t i, j, t
    cdef long long tmp_i, e
    cdef double tmp_d, ds
    cdef int nk = 0, nr = 0, ecnt, w
    cdef const float* vb = &vectors[nbr, 0]
    cdef bint good
    with nogil:
        for i in range(cnt):
            cand[i] = links[nbr, 1 + i]
        cand[cnt] = new
        for i in range(n):
            dist[i] = 1.0 - dotf2(&vectors[cand[i], 0], vb, d)
            is_kept[i] = 0
        # insertion sort ascending by (dist, id); n is small (cap + 1)
        for i in range(1, n):
            tmp_d = dist[i]
            tmp_i = cand[i]
            j = i
            while j > 0 and pair_lt(tmp_d, tmp_i, dist[j - 1], cand[j - 1]):
                dist[j] = dist[j - 1]
                cand[j] = cand[j - 1]
                j -= 1
            dist[j] = tmp_d
            cand[j] = tmp_i
        # distance-diversity selection with fill-from-rejected
        for i in range(n):
            if nk >= cap:
                break
            good = 1
            for t in range(nk):
                ds = 1.0 - dotf2(&vectors[cand[i], 0], &vectors[kept[t], 0], d)
                if ds < dist[i]:
                    good = 0
                    break
            if good:
                kept[nk] = cand[i]
                kept_d[nk] = dist[i]
                is_kept[i] = 1
                nk += 1
            else:
                rej[nr] = cand[i]
                nr += 1
        t = 0
        while nk < cap and t < nr:
            kept[nk] = rej[t]
            nk += 1
            t += 1
        # kept beyond the diversity pass must be re-flagged
        for i in range(n):
            if is_kept[i]:
                continue
            for t in range(nk):
                if kept[t] == cand[i]:
                    is_kept[i] = 1
                    break
        links[nbr, 0] = nk
        for t in range(nk):
            links[nbr, 1 + t] = <int> kept[t]
        # strict mutual symmetry: evicted nodes drop their edge back to nbr
        for i in range(n):
            if is_kept[i]:
                continue
            e = cand[i]
            ecnt = links[e, 0]
            w = 0
            for t in range(ecnt):
                if links[e, 1 + t] != <int> nbr:
                    links[e, 1 + w] = links[e, 1 + t]
                    w += 1
            links[e, 0] = w
    free(cand); free(dist); free(kept); free(kept_d); free(rej); free(is_kept)
