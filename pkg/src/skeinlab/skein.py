"""Kauffman brackets of closed skein elements: crossings plus projector boxes.

A :class:`SkeinElement` is a port graph: crossing nodes (4 ports,
counterclockwise from the incoming under-strand), projector boxes
(2m ports, m per side), and arcs welding ports in pairs.  The production
evaluator contracts the diagram node by node, maintaining a dictionary
from frontier matchings to exact Laurent coefficients, so structurally
identical partial states merge instead of multiplying; the naive 2^c
state enumeration is kept as an independent oracle.

Projector coefficients live in the fraction field; the engine clears each
box's common denominator up front, works entirely over Z[A, A^-1], and
divides once at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .diagrams import cable_with_map, normalize, relabel, subdivide_edges, writhe
from .errors import OpenSkein, StrandMismatch
from .laurent import LaurentPoly, RationalFunc, loop_value, unknot_colored
from .tl import jones_wenzl_cleared


@dataclass(frozen=True)
class SkeinElement:
    """Closed planar diagram mixing crossings and colored projector boxes."""

    crossings: tuple[tuple[int, int, int, int], ...] = ()
    boxes: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...] = ()
    arcs: tuple[tuple[int, int], ...] = ()
    free_loops: int = 0

    def open_ports(self):
        ports = set()
        for quad in self.crossings:
            ports.update(quad)
        for _, s1, s2 in self.boxes:
            ports.update(s1)
            ports.update(s2)
        for x, y in self.arcs:
            ports.discard(x)
            ports.discard(y)
        return ports

    @property
    def closed(self):
        return not self.open_ports()

    @property
    def crossing_count(self):
        return len(self.crossings)


class SkeinBuilder:
    """Assemble a skein element from labeled strand ends.

    Every label must occur exactly twice across all declared node slots;
    each label pair becomes one arc.  Boxes of color 0 are dropped (an
    empty projector is the empty diagram).
    """

    def __init__(self):
        self._crossings = []
        self._boxes = []
        self._free = 0

    def crossing(self, a, b, c, d):
        self._crossings.append((a, b, c, d))
        return self

    def box(self, color, side1, side2):
        side1, side2 = tuple(side1), tuple(side2)
        if len(side1) != color or len(side2) != color:
            raise StrandMismatch(
                "box of color %d needs %d strands per side" % (color, color))
        if color > 0:
            self._boxes.append((color, side1, side2))
        return self

    def loop(self, count=1):
        self._free += count
        return self

    def build(self):
        counter = [0]
        label_ports = {}

        def new_port(label):
            p = counter[0]
            counter[0] += 1
            label_ports.setdefault(label, []).append(p)
            return p

        crossings = tuple(tuple(new_port(e) for e in quad)
                          for quad in self._crossings)
        boxes = tuple((color,
                       tuple(new_port(e) for e in s1),
                       tuple(new_port(e) for e in s2))
                      for color, s1, s2 in self._boxes)
        arcs = []
        for label in sorted(label_ports, key=repr):
            ports = label_ports[label]
            if len(ports) != 2:
                raise OpenSkein(
                    "label %r occurs %d times (needs 2)" % (label, len(ports)))
            arcs.append(tuple(ports))
        return SkeinElement(crossings, boxes, tuple(arcs), self._free)


def from_diagram(d):
    """Closed skein element of a plain diagram (no boxes)."""
    d = relabel(normalize(d))
    b = SkeinBuilder()
    for quad in d.crossings:
        b.crossing(*quad)
    # after normalize() the remaining joins form pure circles
    neigh = {}
    for x, y in d.joins:
        neigh.setdefault(x, []).append(y)
        neigh.setdefault(y, []).append(x)
    seen = set()
    loops = 0
    for e in sorted(neigh):
        if e in seen:
            continue
        stack = [e]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            stack.extend(neigh[v])
        loops += 1
    b.loop(d.free_loops + loops)
    return b.build()


# -- contraction engine -------------------------------------------------

_CROSSING_BRANCHES = (
    (LaurentPoly.monomial(1, 1), ((0, 1), (2, 3))),    # A-smoothing
    (LaurentPoly.monomial(1, -1), ((0, 3), (1, 2))),   # B-smoothing
)


def _box_expansions(color):
    """(common denominator, [(Laurent coeff, point pairs)]) for p_color."""
    if color == 0:
        return LaurentPoly.one(), [(LaurentPoly.one(), [])]
    den, terms = jones_wenzl_cleared(color)
    out = []
    for m in sorted(terms):
        pairs = [(i, j) for i, j in enumerate(m.partner) if i < j]
        out.append((terms[m], pairs))
    return den, out


def _node_ports(s, key):
    kind, idx = key
    if kind == "X":
        return s.crossings[idx]
    color, s1, s2 = s.boxes[idx]
    return s1 + s2


def _contraction_order(s):
    """Greedy order minimizing frontier growth; crossings first on ties."""
    keys = [("X", i) for i in range(len(s.crossings))]
    keys += [("B", i) for i in range(len(s.boxes))]
    if not keys:
        return []
    arc_of = {}
    for ai, (x, y) in enumerate(s.arcs):
        arc_of[x] = ai
        arc_of[y] = ai
    arc_keys = {}
    for key in keys:
        for p in _node_ports(s, key):
            arc_keys.setdefault(arc_of[p], []).append(key)
    remaining = set(keys)
    order = []
    open_arcs = set()
    while remaining:
        best = None
        for key in remaining:
            arcs_here = {arc_of[p] for p in _node_ports(s, key)}
            consumed = len(arcs_here & open_arcs)
            internal = sum(1 for a in arcs_here
                           if all(k == key for k in arc_keys[a]))
            growth = len(arcs_here) - internal - 2 * consumed
            rank = (growth, 0 if key[0] == "X" else 1, key[1])
            if best is None or rank < best[0]:
                best = (rank, key, arcs_here)
        _, key, arcs_here = best
        order.append(key)
        remaining.discard(key)
        for a in arcs_here:
            if a in open_arcs:
                open_arcs.discard(a)
            elif not all(k == key for k in arc_keys[a]):
                open_arcs.add(a)
    return order


def _merge_node(match_key, pairs, port_arc):
    """Fuse one node into a frontier matching.

    Returns (new matching key, closed loop count).  Graph nodes are open
    arcs and this node's ports; every port has degree 2 (its arc and its
    pairing), so components are paths between still-open arcs, or loops.
    """
    adj = {}

    def add(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for x, y in match_key:
        add(("a", x), ("a", y))
    for x, y in pairs:
        add(("p", x), ("p", y))
    for p, a in port_arc.items():
        add(("p", p), ("a", a))
    new_pairs = []
    loops = 0
    seen = set()
    for u in sorted(adj):
        if u in seen:
            continue
        comp = []
        stack = [u]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            comp.append(v)
            stack.extend(adj[v])
        ends = sorted(v[1] for v in comp if len(adj[v]) == 1)
        if not ends:
            loops += 1
        else:
            new_pairs.append((ends[0], ends[1]))
    return tuple(sorted(new_pairs)), loops


def bracket(s):
    """Kauffman bracket by frontier contraction.  Exact RationalFunc.

    Resolution order does not affect the value (tested); the engine picks
    a frontier-minimizing order with crossings expanded before boxes.
    """
    if not s.closed:
        raise OpenSkein("skein element has free boundary points")
    delta = loop_value()
    arc_of = {}
    for ai, (x, y) in enumerate(s.arcs):
        arc_of[x] = ai
        arc_of[y] = ai

    box_exp = {}
    total_den = LaurentPoly.one()
    for color, _, _ in s.boxes:
        if color not in box_exp:
            box_exp[color] = _box_expansions(color)
        total_den = total_den * box_exp[color][0]

    states = {(): LaurentPoly.one()}
    for key in _contraction_order(s):
        kind, idx = key
        ports = _node_ports(s, key)
        if kind == "X":
            branches = [(w, [(ports[a], ports[b]) for a, b in prs])
                        for w, prs in _CROSSING_BRANCHES]
        else:
            color = s.boxes[idx][0]
            branches = [(w, [(ports[a], ports[b]) for a, b in prs])
                        for w, prs in box_exp[color][1]]
        port_arc = {p: arc_of[p] for p in ports}
        new_states = {}
        for match_key, coeff in states.items():
            for weight, pairs in branches:
                new_match, loops = _merge_node(match_key, pairs, port_arc)
                c = coeff * weight
                if loops:
                    c = c * delta ** loops
                acc = new_states.get(new_match)
                new_states[new_match] = c if acc is None else acc + c
        states = {k: v for k, v in new_states.items() if not v.is_zero()}
    if len(states) > 1:
        raise AssertionError("frontier did not close")
    value = states.get((), LaurentPoly.zero())
    if s.free_loops:
        value = value * delta ** s.free_loops
    return RationalFunc(value, total_den)


# -- naive oracle --------------------------------------------------------

def bracket_naive(s):
    """Independent oracle: boxes expanded term by term, then the full
    2^c Kauffman state sum with union-find loop counting."""
    if not s.closed:
        raise OpenSkein("skein element has free boundary points")
    if s.boxes:
        from .tl import jones_wenzl

        total = RationalFunc.zero()
        for coeff, piece in insert_into_skein(s, jones_wenzl(s.boxes[0][0]), 0):
            total = total + coeff * bracket_naive(piece)
        return total
    delta = loop_value()
    c = len(s.crossings)
    total = LaurentPoly.zero()
    for state in range(1 << c):
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for x, y in s.arcs:
            union(x, y)
        for k, (a, b, cc, d) in enumerate(s.crossings):
            if (state >> k) & 1:
                union(a, d)
                union(b, cc)
            else:
                union(a, b)
                union(cc, d)
        loops = len({find(x) for x in parent})
        w = bin(state).count("1")
        total = total + (delta ** loops).shift(c - 2 * w)
    if s.free_loops:
        total = total * delta ** s.free_loops
    return RationalFunc(total)


def bracket_pd(d):
    """Bracket of a plain diagram via the contraction engine (Laurent)."""
    return bracket(from_diagram(d)).as_laurent()


def bracket_pd_naive(d):
    """Bracket of a plain diagram from the kernel state histogram."""
    from .diagrams import kernel_inputs

    d = normalize(d)
    quads, n_points, pre = kernel_inputs(d)
    delta = loop_value()
    c = len(quads)
    base = delta ** d.free_loops if d.free_loops else LaurentPoly.one()
    if n_points == 0:
        return base
    hist = kernels.bracket_histogram(quads, n_points, pre)
    delta_pow = [LaurentPoly.one()]
    for _ in range(hist.shape[1]):
        delta_pow.append(delta_pow[-1] * delta)
    total = LaurentPoly.zero()
    for w in range(hist.shape[0]):
        for loops in range(hist.shape[1]):
            k = int(hist[w, loops])
            if k:
                total = total + delta_pow[loops].scale(k).shift(c - 2 * w)
    return total * base


def insert_into_skein(host, box, index=0):
    """Expand one projector box into its matchings.

    Returns a list of (coefficient, SkeinElement) pairs, one per matching
    of `box`, with the box replaced by that matching's arcs; loops formed
    entirely inside the box contribute delta factors to the coefficient.
    """
    if index >= len(host.boxes):
        raise IndexError("no box at index %d" % index)
    color, s1, s2 = host.boxes[index]
    if box.n != color:
        raise StrandMismatch("box arity %d != element strands %d"
                             % (color, box.n))
    pts = list(s1) + list(s2)
    removed = set(pts)
    link = {}
    for x, y in host.arcs:
        link[x] = y
        link[y] = x
    other_boxes = host.boxes[:index] + host.boxes[index + 1:]
    out = []
    for m in sorted(box.terms):
        coeff = box.terms[m]
        mlink = {pts[i]: pts[j] for i, j in enumerate(m.partner)}
        new_arcs = []
        seen = set()
        for x, y in host.arcs:
            for start in (x, y):
                if start in removed or start in seen:
                    continue
                cur = link[start]
                while cur in removed:
                    cur = link[mlink[cur]]
                seen.add(start)
                seen.add(cur)
                new_arcs.append((min(start, cur), max(start, cur)))
        # loops entirely inside the removed box
        loops = 0
        inner_seen = set()
        for p in pts:
            if p in inner_seen:
                continue
            comp = []
            stack = [p]
            is_loop = True
            while stack:
                v = stack.pop()
                if v in inner_seen:
                    continue
                inner_seen.add(v)
                comp.append(v)
                q = mlink[v]
                if q not in inner_seen:
                    stack.append(q)
                r = link[v]
                if r in removed:
                    if r not in inner_seen:
                        stack.append(r)
                else:
                    is_loop = False
            if is_loop:
                loops += 1
        coeff_rf = coeff if isinstance(coeff, RationalFunc) \
            else RationalFunc(coeff)
        out.append((coeff_rf,
                    SkeinElement(host.crossings, other_boxes,
                                 tuple(sorted(new_arcs)),
                                 host.free_loops + loops)))
    return out


# -- label-level assembly ---------------------------------------------------

class _Assembler:
    """Mutable label-level skein assembly with edge cutting."""

    def __init__(self, d):
        self.quads = [list(q) for q in d.crossings]
        self.joins = [list(j) for j in d.joins]
        self.free = d.free_loops
        self.boxes = []
        self._fresh = max(d.edge_labels(), default=0)

    def fresh(self):
        self._fresh += 1
        return self._fresh

    def remove_joins(self, pairs):
        """Delete the listed cut-joins (either orientation) exactly once."""
        for x, y in pairs:
            for idx, pair in enumerate(self.joins):
                if pair == [x, y] or pair == [y, x]:
                    del self.joins[idx]
                    break
            else:
                raise OpenSkein("join (%r, %r) not present" % (x, y))

    def add_box(self, color, side1, side2):
        self.boxes.append((color, tuple(side1), tuple(side2)))

    def contract_joins(self):
        while self.joins:
            x, y = self.joins.pop()
            if x == y:
                self.free += 1
                continue
            for quad in self.quads:
                for pos, e in enumerate(quad):
                    if e == y:
                        quad[pos] = x
            for pair in self.joins:
                for pos, e in enumerate(pair):
                    if e == y:
                        pair[pos] = x
            self.boxes = [
                (color,
                 tuple(x if e == y else e for e in sa),
                 tuple(x if e == y else e for e in sb))
                for color, sa, sb in self.boxes]

    def build(self):
        self.contract_joins()
        b = SkeinBuilder()
        for quad in self.quads:
            b.crossing(*quad)
        for color, sa, sb in self.boxes:
            b.box(color, sa, sb)
        b.loop(self.free)
        return b.build()


# -- colored Jones ------------------------------------------------------------

def colored_jones_skein(d, n):
    """The decorated cable: n parallel copies with one p_n per component.

    Each component's first edge is subdivided before cabling; the cabled
    cut joins pair copy i with copy i, so the box sides are aligned with
    the strand orientation.
    """
    d = relabel(normalize(d))
    comps = d.components()
    d_cut, cut_pairs = subdivide_edges(d, [comp[0] for comp in comps])
    cabled, copies = cable_with_map(d_cut, n)
    asm = _Assembler(cabled)
    for x, y in cut_pairs:
        ins = [copies[(x, i)] for i in range(1, n + 1)]
        outs = [copies[(y, i)] for i in range(1, n + 1)]
        asm.remove_joins(list(zip(ins, outs)))
        asm.add_box(n, ins, outs)
    for _ in range(d.free_loops):
        labels = [asm.fresh() for _ in range(n)]
        asm.add_box(n, labels, labels)
    asm.free -= d.free_loops * n  # those circles now close through boxes
    return asm.build()


def colored_jones(d, n, reduced=True):
    """Colored Jones polynomial by cabling and projector insertion.

    Reduced: writhe-adjusted bracket of the decorated cable divided by the
    colored unknot bracket; the quotient must come out Laurent (asserted).
    Unreduced multiplies the colored unknot back.
    """
    if n < 1:
        raise ValueError("color must be >= 1")
    d = relabel(normalize(d))
    w = writhe(d)
    raw = bracket(colored_jones_skein(d, n))
    sign = -1 if (n * w) % 2 else 1
    framing = RationalFunc(LaurentPoly.monomial(sign, -(n * n + 2 * n) * w))
    reduced_rf = framing * raw / RationalFunc(unknot_colored(n))
    if not reduced_rf.is_laurent():
        raise AssertionError("reduced colored Jones is not Laurent: %s"
                             % reduced_rf)
    red = reduced_rf.as_laurent()
    if reduced:
        return red
    return red * unknot_colored(n)


# -- limiting skein elements ---------------------------------------------------

def limiting_skein(template, n):
    """n-cable of the template with every twist slot replaced by a joined
    2n-projector box; components not passing any slot get a p_n.

    Built from the all-zeros fill: smoothing a slot crossing leaves two
    pass-through joins, and the 2n box straddles exactly those joins (the
    under strand's copies first, then the over strand's, entry side
    first).  Components that do pass a slot need no extra p_n because the
    2n projector absorbs them.
    """
    if n < 1:
        raise ValueError("color must be >= 1")
    from .diagrams import smooth_slots

    d0, slot_joins = smooth_slots(template)
    slot_edges = set()
    for quad, _oe, _mode in slot_joins:
        slot_edges.update(quad)
    comps = d0.components()
    splice_at = [comp[0] for comp in comps
                 if not slot_edges.intersection(comp)]
    d_cut, cut_pairs = subdivide_edges(d0, splice_at)
    cabled, copies = cable_with_map(d_cut, n)
    asm = _Assembler(cabled)
    for (a, b, c, d), oe, axis in slot_joins:
        ac = [copies[(a, i)] for i in range(1, n + 1)]
        cc = [copies[(c, i)] for i in range(1, n + 1)]
        bc = [copies[(b, i)] for i in range(1, n + 1)]
        dc = [copies[(d, i)] for i in range(1, n + 1)]
        # sides are the channel's two cross-sections read left to right
        if axis == "12":
            asm.remove_joins(list(zip(ac, bc)) + list(zip(cc, dc)))
            asm.add_box(2 * n, dc + ac, cc + bc)
        else:
            asm.remove_joins(list(zip(ac, dc)) + list(zip(bc, cc)))
            asm.add_box(2 * n, ac + bc, dc + cc)
    for x, y in cut_pairs:
        ins = [copies[(x, i)] for i in range(1, n + 1)]
        outs = [copies[(y, i)] for i in range(1, n + 1)]
        asm.remove_joins(list(zip(ins, outs)))
        asm.add_box(n, ins, outs)
    for _ in range(d0.free_loops):
        labels = [asm.fresh() for _ in range(n)]
        asm.add_box(n, labels, labels)
    asm.free -= d0.free_loops * n
    return asm.build()


def jones_infinity(template, n):
    """Bracket of the limiting skein over the colored unknot bracket."""
    return bracket(limiting_skein(template, n)) / RationalFunc(
        unknot_colored(n))
