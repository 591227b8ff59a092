"""Independent reference computations used to pin derived values.

Nothing here imports the package's state-sum or surface code.  Diagrams are
taken as raw lists of (crossing, role, sign) words so the oracles do not
share the package's dart encoding either.
"""

from __future__ import annotations

from itertools import product

# Corner geometry at a crossing, written out by hand.  Going counterclockwise
# around a positive crossing one meets: over strand coming in, under strand
# coming in, over strand going out, under strand going out.  For a negative
# crossing the under strand runs the other way.
CCW = {
    +1: ("oi", "ui", "oo", "uo"),
    -1: ("oi", "uo", "oo", "ui"),
}


def words(d):
    return [[(p.crossing, p.role.value, p.sign) for p in comp] for comp in d.components]


def _ends(ws):
    """Map each (crossing, end) to the (crossing, end) it is joined to by an arc."""
    link = {}
    for w in ws:
        n = len(w)
        for j, (k, role, _) in enumerate(w):
            k2, role2, _ = w[(j + 1) % n]
            a = (k, "oo" if role == "O" else "uo")
            b = (k2, "oi" if role2 == "O" else "ui")
            link[a], link[b] = b, a
    return link


def _signs(ws):
    return {k: s for w in ws for k, _, s in w}


def _splice_link(sign, kind):
    """Ends joined inside a crossing by an A or B smoothing.

    The region swept counterclockwise from an incoming or outgoing over end to
    the next end is an A region; an A smoothing joins across the B regions,
    leaving the A regions open.
    """
    r = CCW[sign]
    # corners are (r[i], r[i+1]); corners starting at an over end are A corners
    a_corners = [(r[i], r[(i + 1) % 4]) for i in range(4) if r[i][0] == "o"]
    b_corners = [(r[i], r[(i + 1) % 4]) for i in range(4) if r[i][0] == "u"]
    return b_corners if kind == "A" else a_corners


def loops_in_state(ws, free, state):
    link = _ends(ws)
    signs = _signs(ws)
    inner = {}
    for k, kind in state.items():
        for x, y in _splice_link(signs[k], kind):
            inner[(k, x)], inner[(k, y)] = (k, y), (k, x)
    seen = set()
    n = 0
    for start in link:
        if start in seen:
            continue
        n += 1
        x = start
        while x not in seen:
            seen.add(x)
            y = link[x]
            seen.add(y)
            x = inner[y]
    return n + free


def bracket_terms(d):
    """{(natural, loops): count} by brute force."""
    ws = words(d)
    ks = sorted(_signs(ws))
    out = {}
    for choice in product("AB", repeat=len(ks)):
        state = dict(zip(ks, choice))
        key = (choice.count("A") - choice.count("B"), loops_in_state(ws, d.free_loops, state))
        out[key] = out.get(key, 0) + 1
    return out


def bracket_dict(d):
    """Bracket as {exponent: coefficient}, expanding delta powers by hand."""
    total = {}
    for (nat, loops), cnt in bracket_terms(d).items():
        poly = {0: 1}
        for _ in range(loops - 1):
            nxt = {}
            for e, c in poly.items():
                nxt[e + 2] = nxt.get(e + 2, 0) - c
                nxt[e - 2] = nxt.get(e - 2, 0) - c
            poly = nxt
        for e, c in poly.items():
            total[e + nat] = total.get(e + nat, 0) + c * cnt
    return {e: c for e, c in total.items() if c}


def f_dict(d):
    ws = words(d)
    w = sum(_signs(ws).values())
    sgn = -1 if w % 2 else 1
    return {e - 3 * w: sgn * c for e, c in bracket_dict(d).items()}


def faces(d):
    """Boundary components of the ribbon surface, traced with the inverse
    face permutation, plus two per free loop.  Also returns, per crossing,
    the face ids at its four corners."""
    ws = words(d)
    signs = _signs(ws)
    link = _ends(ws)
    cw = {}
    for k, s in signs.items():
        r = CCW[s]
        for i in range(4):
            cw[(k, r[i])] = (k, r[i - 1])
    # inverse of (rotation after edge): edge after inverse rotation
    perm = {x: link[cw[x]] for x in link}
    label = {}
    n = 0
    for x in perm:
        if x in label:
            continue
        y = x
        while y not in label:
            label[y] = n
            y = perm[y]
        n += 1
    return n + 2 * d.free_loops, label


def genus(d):
    n, _ = faces(d)
    # components via shared crossings
    ws = words(d)
    parent = list(range(len(ws)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first = {}
    for i, w in enumerate(ws):
        for k, _, _ in w:
            if k in first:
                parent[find(i)] = find(first[k])
            else:
                first[k] = i
    m = len({find(i) for i in range(len(ws))})
    c = len(_signs(ws))
    twice = 2 * m + c - n
    assert twice % 2 == 0 and twice >= 0
    return twice // 2, m, n
