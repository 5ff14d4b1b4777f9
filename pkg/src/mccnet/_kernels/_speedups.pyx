# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Brandes betweenness, BFS path statistics, and the
force-directed layout inner loops. Mirrors pyref.py exactly."""

from libc.math cimport sqrt
from libc.stdlib cimport free, malloc

import numpy as np

BACKEND = "c"


def betweenness(int n, int[:] indptr, int[:] indices):
    cdef double[:] scores = np.zeros(n)
    cdef long long *dist = <long long *> malloc(n * sizeof(long long))
    cdef double *sigma = <double *> malloc(n * sizeof(double))
    cdef double *delta = <double *> malloc(n * sizeof(double))
    cdef int *queue = <int *> malloc(n * sizeof(int))
    cdef int *order = <int *> malloc(n * sizeof(int))
    # predecessor lists stored flat: at most one entry per directed edge
    cdef int *pred = <int *> malloc(indices.shape[0] * sizeof(int))
    cdef int *pred_start = <int *> malloc((n + 1) * sizeof(int))
    cdef int *pred_len = <int *> malloc(n * sizeof(int))
    cdef int s, v, w, k, qhead, qtail, norder, p
    cdef double coeff
    if not (dist and sigma and delta and queue and order and pred and pred_start and pred_len):
        raise MemoryError()
    try:
        pred_start[0] = 0
        for v in range(n):
            pred_start[v + 1] = pred_start[v] + (indptr[v + 1] - indptr[v])
        for s in range(n):
            for v in range(n):
                dist[v] = -1
                sigma[v] = 0.0
                delta[v] = 0.0
                pred_len[v] = 0
            dist[s] = 0
            sigma[s] = 1.0
            qhead = 0
            qtail = 0
            norder = 0
            queue[qtail] = s
            qtail += 1
            while qhead < qtail:
                v = queue[qhead]
                qhead += 1
                order[norder] = v
                norder += 1
                for k in range(indptr[v], indptr[v + 1]):
                    w = indices[k]
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        queue[qtail] = w
                        qtail += 1
                    if dist[w] == dist[v] + 1:
                        sigma[w] += sigma[v]
                        pred[pred_start[w] + pred_len[w]] = v
                        pred_len[w] += 1
            for k in range(norder - 1, -1, -1):
                w = order[k]
                coeff = (1.0 + delta[w]) / sigma[w]
                for p in range(pred_len[w]):
                    v = pred[pred_start[w] + p]
                    delta[v] += sigma[v] * coeff
                if w != s:
                    scores[w] += delta[w]
        for v in range(n):
            scores[v] *= 0.5
    finally:
        free(dist); free(sigma); free(delta); free(queue)
        free(order); free(pred); free(pred_start); free(pred_len)
    return np.asarray(scores)


def path_stats(int n, int[:] indptr, int[:] indices, int[:] nodes):
    cdef double total = 0.0
    cdef long long diameter = 0
    cdef long long *dist = <long long *> malloc(n * sizeof(long long))
    cdef int *queue = <int *> malloc(n * sizeof(int))
    cdef int si, s, v, w, k, qhead, qtail
    cdef long long dv
    if not (dist and queue):
        raise MemoryError()
    try:
        for si in range(nodes.shape[0]):
            s = nodes[si]
            for v in range(n):
                dist[v] = -1
            dist[s] = 0
            qhead = 0
            qtail = 0
            queue[qtail] = s
            qtail += 1
            while qhead < qtail:
                v = queue[qhead]
                qhead += 1
                dv = dist[v]
                if dv > diameter:
                    diameter = dv
                total += dv
                for k in range(indptr[v], indptr[v + 1]):
                    w = indices[k]
                    if dist[w] < 0:
                        dist[w] = dv + 1
                        queue[qtail] = w
                        qtail += 1
    finally:
        free(dist)
        free(queue)
    return total, int(diameter)


def repulsion_exact(double[:] x, double[:] y, double C, double K,
                    double[:] fx, double[:] fy):
    cdef int n = x.shape[0]
    cdef double CK2 = C * K * K
    cdef int i, j
    cdef double dx, dy, d2, f
    for i in range(n):
        for j in range(i + 1, n):
            dx = x[i] - x[j]
            dy = y[i] - y[j]
            d2 = dx * dx + dy * dy
            if d2 < 1e-18:
                d2 = 1e-18
                dx = 1e-9
                dy = 0.0
            f = CK2 / d2
            fx[i] += dx * f
            fy[i] += dy * f
            fx[j] -= dx * f
            fy[j] -= dy * f


def repulsion_bh(double[:] x, double[:] y, double C, double K, double theta,
                 int[:, :] child, double[:] half, double[:] cx, double[:] cy,
                 double[:] count, int[:] head, int[:] nextp,
                 double[:] fx, double[:] fy):
    cdef int n = x.shape[0]
    cdef int ncells = half.shape[0]
    cdef double CK2 = C * K * K
    cdef int *stack = <int *> malloc((ncells + 4) * sizeof(int))
    cdef int i, c, q, ch, p, top
    cdef double xi, yi, dx, dy, d2, pd2, width, f
    if not stack:
        raise MemoryError()
    try:
        for i in range(n):
            xi = x[i]
            yi = y[i]
            top = 0
            stack[top] = 0
            top += 1
            while top > 0:
                top -= 1
                c = stack[top]
                dx = xi - cx[c]
                dy = yi - cy[c]
                d2 = dx * dx + dy * dy
                width = 2.0 * half[c]
                if child[c, 0] < 0:
                    p = head[c]
                    while p >= 0:
                        if p != i:
                            dx = xi - x[p]
                            dy = yi - y[p]
                            pd2 = dx * dx + dy * dy
                            if pd2 < 1e-18:
                                pd2 = 1e-18
                                dx = 1e-9
                                dy = 0.0
                            f = CK2 / pd2
                            fx[i] += dx * f
                            fy[i] += dy * f
                        p = nextp[p]
                elif width * width < theta * theta * d2:
                    f = CK2 * count[c] / d2
                    fx[i] += dx * f
                    fy[i] += dy * f
                else:
                    for q in range(4):
                        ch = child[c, q]
                        if ch >= 0:
                            stack[top] = ch
                            top += 1
    finally:
        free(stack)


def attraction(double[:] x, double[:] y, int[:] esrc, int[:] edst, double K,
               double[:] fx, double[:] fy):
    cdef int e, i, j
    cdef double dx, dy, d, f
    for e in range(esrc.shape[0]):
        i = esrc[e]
        j = edst[e]
        dx = x[i] - x[j]
        dy = y[i] - y[j]
        d = sqrt(dx * dx + dy * dy)
        if d < 1e-12:
            continue
        f = d / K
        fx[i] -= dx * f
        fy[i] -= dy * f
        fx[j] += dx * f
        fy[j] += dy * f
