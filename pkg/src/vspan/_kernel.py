"""Gray-code state enumeration with an undoable path-endpoint structure.

Darts are the path endpoints.  Initially every edge of the diagram is a path
whose two endpoints are partners.  Applying a splice pair ``(u, w)`` either
closes a loop (``u`` and ``w`` are partners) or joins two paths, relinking
the outer endpoints.  Each application is O(1) and is undone by restoring two
entries, so a Gray-code walk that flips the deepest crossing most often costs
amortized O(1) per state.
"""

from __future__ import annotations

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _run(alpha, pairs, prefix, nprefix, hist):
    """Accumulate ``hist[b, loops]`` over all states that agree with
    ``prefix`` on the first ``nprefix`` crossings.

    ``pairs[8k + 4ch + 2h : ... + 2]`` holds the two darts of splice pair
    ``h`` of crossing ``k`` under choice ``ch`` (0 for A, 1 for B).  Loop
    counts exclude free loops.  Written without helper calls so the same
    source serves as the plain-Python oracle and the compiled kernel.
    """
    c = pairs.shape[0] // 8
    partner = alpha.copy()
    choice = np.zeros(c, dtype=np.int64)
    log_a = np.zeros(2 * c, dtype=np.int64)
    log_b = np.zeros(2 * c, dtype=np.int64)
    loops = 0
    nb = 0
    lo = 0
    for k in range(nprefix):
        choice[k] = prefix[k]
        nb += prefix[k]
    for t in range(1 << (c - nprefix)):
        if t:
            # lowest set bit of t picks the crossing to flip; bit i is crossing c-1-i
            i = 0
            while not (t >> i) & 1:
                i += 1
            lo = c - 1 - i
            for k in range(c - 1, lo - 1, -1):
                base = 8 * k + 4 * choice[k]
                for h in (1, 0):
                    top = 2 * k + h
                    pu = log_a[top]
                    if pu < 0:
                        loops -= 1
                    else:
                        partner[pu] = pairs[base + 2 * h]
                        partner[log_b[top]] = pairs[base + 2 * h + 1]
            nb += 1 - 2 * choice[lo]
            choice[lo] = 1 - choice[lo]
        for k in range(lo, c):
            base = 8 * k + 4 * choice[k]
            for h in (0, 1):
                top = 2 * k + h
                u = pairs[base + 2 * h]
                w = pairs[base + 2 * h + 1]
                pu = partner[u]
                if pu == w:
                    # closes a loop
                    log_a[top] = -1
                    loops += 1
                else:
                    # joins two paths: their far endpoints become partners
                    pw = partner[w]
                    partner[pu] = pw
                    partner[pw] = pu
                    log_a[top] = pu
                    log_b[top] = pw
        hist[nb, loops] += 1


_histogram_py = _run
_histogram_jit = numba.njit(cache=True, nogil=True)(_run) if numba is not None else None


def histogram(alpha: np.ndarray, pairs: np.ndarray, prefix: np.ndarray, nprefix: int,
              hist: np.ndarray, compiled: bool = True) -> None:
    """Fill ``hist`` in place; ``pairs`` may be given as a ``(c, 2, 4)`` array."""
    flat = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1)
    if compiled and _histogram_jit is not None:
        _histogram_jit(alpha, flat, prefix, nprefix, hist)
    else:
        _histogram_py(alpha, flat, prefix, nprefix, hist)
