"""Edge-subset enumeration kernels.

Both kernels walk a backtracking tree with an explicit stack and return the
accepted edge subsets as int64 bitmasks (bit i = edge i), so they compile
under numba's nopython mode unchanged.  The same source runs as plain Python
when numba is missing or ``COMBPFAFF_DISABLE_NUMBA`` is set to a non-empty
value other than ``0``; ``USING_NUMBA`` tells which path is live.

Symbolic weights are never touched here: callers map masks to monomials.
"""

import os

import numpy as np

MAX_KERNEL_EDGES = 62


def _want_numba():
    flag = os.environ.get("COMBPFAFF_DISABLE_NUMBA", "")
    return flag in ("", "0")


try:
    if not _want_numba():
        raise ImportError("numba disabled by COMBPFAFF_DISABLE_NUMBA")
    from numba import njit

    USING_NUMBA = True
except ImportError:
    USING_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn


def _grow(buf, n):
    new = np.empty(buf.shape[0] * 2, np.int64)
    new[:n] = buf[:n]
    return new


def _find(parent, v):
    while parent[v] != v:
        v = parent[v]
    return v


def grove_masks_py(n_vertices, eu, ev, label, need):
    """Forests with exactly ``need`` edges that never join two differently labelled vertices.

    ``label[v]`` is the part id of a boundary vertex and -1 for interior
    vertices.  With ``need = |V| - #parts`` the accepted forests are exactly
    the groves inducing the labelled partition: a forest with that many
    edges has #parts components, and since no two parts merge every part is
    one component and no component lacks a boundary vertex.
    """
    m = eu.shape[0]
    parent = np.arange(n_vertices)
    size = np.ones(n_vertices, np.int64)
    lab = label.copy()
    state = np.zeros(m + 1, np.int64)
    child = np.full(m + 1, -1, np.int64)
    oldlab = np.zeros(m + 1, np.int64)
    out = np.empty(64, np.int64)
    n_out = 0
    count = 0
    mask = np.int64(0)
    i = 0
    while i >= 0:
        if i == m:
            if count == need:
                if n_out == out.shape[0]:
                    out = _grow(out, n_out)
                out[n_out] = mask
                n_out += 1
            i -= 1
            continue
        if state[i] == 0:
            state[i] = 1
            child[i] = -1
            if count < need:
                ru = _find(parent, eu[i])
                rv = _find(parent, ev[i])
                if ru != rv and not (lab[ru] >= 0 and lab[rv] >= 0 and lab[ru] != lab[rv]):
                    if size[ru] < size[rv]:
                        ru, rv = rv, ru
                    parent[rv] = ru
                    size[ru] += size[rv]
                    oldlab[i] = lab[ru]
                    if lab[rv] > lab[ru]:
                        lab[ru] = lab[rv]
                    child[i] = rv
                    count += 1
                    mask |= np.int64(1) << i
                    i += 1
                    continue
        if state[i] == 1:
            c = child[i]
            if c >= 0:
                r = parent[c]
                parent[c] = c
                size[r] -= size[c]
                lab[r] = oldlab[i]
                child[i] = -1
                count -= 1
                mask &= ~(np.int64(1) << i)
            state[i] = 2
            if count + (m - i - 1) >= need:
                i += 1
                continue
        state[i] = 0
        i -= 1
    return out[:n_out]


def flow_masks_py(n_int, inc, pat_start, pat_mask, pat_theta, fixed_mask, fixed_val):
    """Alternating flows as consistent choices of one local pattern per interior vertex.

    ``inc[v]`` is the mask of edges incident to interior vertex v; its
    admissible local patterns are ``pat_mask[pat_start[v]:pat_start[v+1]]``
    with collision contributions in ``pat_theta``.  Edges in ``fixed_mask``
    are pinned to the bits of ``fixed_val``.  Returns (masks, thetas).
    """
    choice = np.full(n_int + 1, -1, np.int64)
    chosen = np.zeros(n_int + 1, np.int64)
    decided = np.zeros(n_int + 1, np.int64)
    theta = np.zeros(n_int + 1, np.int64)
    chosen[0] = fixed_val & fixed_mask
    decided[0] = fixed_mask
    out = np.empty(64, np.int64)
    out_t = np.empty(64, np.int64)
    n_out = 0
    v = 0
    while v >= 0:
        if v == n_int:
            if n_out == out.shape[0]:
                out = _grow(out, n_out)
                out_t = _grow(out_t, n_out)
            out[n_out] = chosen[v]
            out_t[n_out] = theta[v]
            n_out += 1
            v -= 1
            continue
        p = choice[v] + 1
        end = pat_start[v + 1]
        if p < pat_start[v]:
            p = pat_start[v]
        found = False
        while p < end:
            pm = pat_mask[p]
            if ((pm ^ chosen[v]) & inc[v] & decided[v]) == 0:
                found = True
                break
            p += 1
        if found:
            choice[v] = p
            chosen[v + 1] = chosen[v] | pat_mask[p]
            decided[v + 1] = decided[v] | inc[v]
            theta[v + 1] = theta[v] + pat_theta[p]
            v += 1
        else:
            choice[v] = -1
            v -= 1
    return out[:n_out], out_t[:n_out]


if USING_NUMBA:
    _grow = njit(cache=True)(_grow)
    _find = njit(cache=True)(_find)
    grove_masks = njit(cache=True)(grove_masks_py)
    flow_masks = njit(cache=True)(flow_masks_py)
else:
    grove_masks = grove_masks_py
    flow_masks = flow_masks_py


def popcount_masks(masks):
    return [bin(int(m)).count("1") for m in masks]
