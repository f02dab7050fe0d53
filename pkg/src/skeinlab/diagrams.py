"""Planar link diagrams: PD codes, twist templates, cabling, resolutions.

PD convention: a crossing is written ``X[a,b,c,d]`` with positive integer
edge labels counterclockwise from the incoming under-strand, so the
under-strand runs a -> c and the over-strand occupies b and d.  Crossing
order is list order; every sign rule downstream references that order.

Zero-crossing unknot components are written ``U`` (anonymous) or
``U[1,2,...]`` (a circle subdivided into labeled arcs, so that twist
templates can reference them).  Internally a subdivided circle is a chain
of *joins*: a join (x, y) welds an end of edge x to an end of edge y.
Every edge label has exactly two incidences across crossings and joins.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import kernels
from .errors import ParseError, TopologyError


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[tuple[int, int, int, int], ...] = ()
    joins: tuple[tuple[int, int], ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        counts = {}
        for quad in self.crossings:
            if len(quad) != 4:
                raise TopologyError("crossing is not a quadruple: %r" % (quad,))
            for e in quad:
                if e <= 0:
                    raise TopologyError("edge labels must be positive")
                counts[e] = counts.get(e, 0) + 1
        for pair in self.joins:
            if len(pair) != 2:
                raise TopologyError("join is not a pair: %r" % (pair,))
            for e in pair:
                if e <= 0:
                    raise TopologyError("edge labels must be positive")
                counts[e] = counts.get(e, 0) + 1
        bad = [e for e, k in counts.items() if k != 2]
        if bad:
            raise TopologyError(
                "edge labels not used exactly twice: %s" % sorted(bad))
        if self.free_loops < 0:
            raise TopologyError("negative free loop count")

    @property
    def crossing_count(self):
        return len(self.crossings)

    def edge_labels(self):
        out = set()
        for quad in self.crossings:
            out.update(quad)
        for pair in self.joins:
            out.update(pair)
        return sorted(out)

    def components(self):
        """Strand components, traced through crossings (a<->c, b<->d)
        and joins.  Anonymous free loops are not listed."""
        nxt = {}
        for a, b, c, d in self.crossings:
            _link(nxt, a, c)
            _link(nxt, b, d)
        for x, y in self.joins:
            _link(nxt, x, y)
        comps = []
        seen = set()
        for e in self.edge_labels():
            if e in seen:
                continue
            comp_edges = set()
            stack = [e]
            while stack:
                x = stack.pop()
                if x in comp_edges:
                    continue
                comp_edges.add(x)
                stack.extend(nxt.get(x, ()))
            seen |= comp_edges
            comps.append(sorted(comp_edges))
        return comps

    def component_count(self):
        return len(self.components()) + self.free_loops

    def __str__(self):
        return to_text(self)


def _link(nxt, x, y):
    nxt.setdefault(x, []).append(y)
    nxt.setdefault(y, []).append(x)


def _incidences(d):
    """label -> list of its two incidences, scanned crossings then joins."""
    incid = {}
    for idx, quad in enumerate(d.crossings):
        for pos, e in enumerate(quad):
            incid.setdefault(e, []).append(("X", idx, pos))
    for ji, pair in enumerate(d.joins):
        for end, e in enumerate(pair):
            incid.setdefault(e, []).append(("J", ji, end))
    return incid


# -- parsing / printing ------------------------------------------------

_X_RE = re.compile(r"^X\[([0-9,\s]+)\]$")
_U_RE = re.compile(r"^U(?:\[([0-9,\s]+)\])?$")
_TOKEN_RE = re.compile(r"[XU](?:\[[^\]]*\])?")


def parse_pd(text):
    """Parse whitespace-separated ``X[a,b,c,d]`` and ``U``/``U[...]`` tokens."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty diagram text; use the token U for an unknot")
    pos = 0
    tokens = []
    for m in _TOKEN_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise ParseError("unexpected text: %r" % stripped[pos:m.start()])
        tokens.append(m.group(0))
        pos = m.end()
    if stripped[pos:].strip():
        raise ParseError("unexpected text: %r" % stripped[pos:])
    crossings = []
    joins = []
    free = 0
    for tok in tokens:
        xm = _X_RE.match(tok)
        if xm:
            parts = [p for p in xm.group(1).split(",") if p.strip()]
            if len(parts) != 4:
                raise ParseError("crossing needs 4 labels: %r" % tok)
            crossings.append(tuple(int(p) for p in parts))
            continue
        um = _U_RE.match(tok)
        if um:
            if um.group(1) is None:
                free += 1
            else:
                cyc = [int(p) for p in um.group(1).split(",") if p.strip()]
                if not cyc:
                    raise ParseError("labeled unknot needs labels: %r" % tok)
                for i in range(len(cyc)):
                    joins.append((cyc[i], cyc[(i + 1) % len(cyc)]))
            continue
        raise ParseError("bad token: %r" % tok)
    return Diagram(tuple(crossings), tuple(joins), free)


def to_text(d):
    """Serialize; crossings as X tokens, pure-join circles as U tokens.

    Joins touching crossing edges are contracted away first, so the text
    is always expressible in the X/U vocabulary.
    """
    d = normalize(d)
    parts = ["X[%d,%d,%d,%d]" % quad for quad in d.crossings]
    # reconstruct circles from the (now pure) joins
    neigh = {}
    for ji, (x, y) in enumerate(d.joins):
        neigh.setdefault(x, []).append((ji, y))
        neigh.setdefault(y, []).append((ji, x))
    seen = set()
    for e in sorted(neigh):
        if e in seen:
            continue
        cyc = [e]
        seen.add(e)
        ji, cur = neigh[e][0]
        used = {ji}
        while cur != e:
            cyc.append(cur)
            seen.add(cur)
            for nji, nxt in neigh[cur]:
                if nji not in used:
                    used.add(nji)
                    cur = nxt
                    break
            else:
                break
        parts.append("U[%s]" % ",".join(str(x) for x in cyc))
    parts += ["U"] * d.free_loops
    return " ".join(parts)


def normalize(d):
    """Contract joins incident to crossing edges; keep pure circles."""
    cross_edges = set()
    for quad in d.crossings:
        cross_edges.update(quad)
    crossings = list(d.crossings)
    joins = list(d.joins)
    free = d.free_loops
    changed = True
    while changed:
        changed = False
        for i, (x, y) in enumerate(joins):
            if x in cross_edges or y in cross_edges:
                del joins[i]
                if x == y:
                    # both incidences consumed by the join: a free circle,
                    # but x touches a crossing, so this cannot happen in a
                    # valid diagram; guard anyway
                    free += 1
                else:
                    # relabel y -> x everywhere
                    crossings = [tuple(x if e == y else e for e in quad)
                                 for quad in crossings]
                    joins = [tuple(x if e == y else e for e in pair)
                             for pair in joins]
                    cross_edges = set()
                    for quad in crossings:
                        cross_edges.update(quad)
                changed = True
                break
    # pure self-joins of edges with no other structure stay as U[x]
    return Diagram(tuple(crossings), tuple(joins), free)


# -- orientation and writhe --------------------------------------------

@dataclass(frozen=True)
class Orientation:
    """Per-crossing over-strand entry position (1 for b, 3 for d) and sign."""

    over_entry: tuple[int, ...]
    signs: tuple[int, ...]


def orient(d):
    """Orient every component so under-strands enter crossings at a.

    The PD convention declares the under-direction; each component's
    global direction is forced by its under-passes (or chosen for
    components with none).  Incoherent diagrams raise TopologyError.
    """
    incid = _incidences(d)
    entered = {}
    seen_edges = set()
    for start in sorted(incid):
        if start in seen_edges:
            continue
        edges, events = _trace_component(d, incid, start)
        seen_edges |= edges
        under_events = [flag for (key, flag) in events.items() if key[1] == 0]
        if all(under_events):
            flip = False
        elif not any(under_events):
            flip = True
        else:
            raise TopologyError("incoherent under-strand directions")
        for (idx, pos), flag in events.items():
            entered[(idx, pos)] = (not flag) if flip else flag

    over_entry = []
    signs = []
    for idx in range(len(d.crossings)):
        if entered.get((idx, 1), False):
            over_entry.append(1)
            signs.append(-1)
        elif entered.get((idx, 3), False):
            over_entry.append(3)
            signs.append(1)
        else:
            raise TopologyError("crossing %d has no over entry" % idx)
    return Orientation(tuple(over_entry), tuple(signs))


def _trace_component(d, incid, start_edge):
    """Walk one component; record (crossing, position) -> entered? flags.

    Join incidences are silent pass-throughs.  The walk state is
    (edge, index of the incidence we are heading toward).
    """
    events = {}
    edges = set()
    edge, inc_index = start_edge, 0
    steps = 0
    limit = 8 * (4 * len(d.crossings) + 2 * len(d.joins) + 2)
    while True:
        steps += 1
        if steps > limit:
            raise TopologyError("component tracing did not close")
        edges.add(edge)
        kind, idx, pos = incid[edge][inc_index]
        if kind == "X":
            events[(idx, pos)] = True
            out_pos = (pos + 2) % 4
            events[(idx, out_pos)] = False
            nxt = d.crossings[idx][out_pos]
            consumed = ("X", idx, out_pos)
        else:
            other_end = 1 - pos
            nxt = d.joins[idx][other_end]
            consumed = ("J", idx, other_end)
        pair = incid[nxt]
        inc_index = 1 if pair[0] == consumed else 0
        edge = nxt
        if edge == start_edge and inc_index == 0:
            break
    return edges, events


def make_coherent(d):
    """Rotate crossings so under-strands enter at position a.

    A quadruple written against the strand direction is rotated by two
    places, which fixes the same geometric crossing (and the same A/B
    smoothing pairs) with the incoming under-edge listed first.
    """
    if not d.crossings:
        return d
    incid = _incidences(d)
    entered = {}
    seen_edges = set()
    for start in sorted(incid):
        if start in seen_edges:
            continue
        edges, events = _trace_component(d, incid, start)
        seen_edges |= edges
        entered.update(events)
    crossings = []
    for idx, quad in enumerate(d.crossings):
        if entered.get((idx, 0)) is False:
            quad = (quad[2], quad[3], quad[0], quad[1])
        crossings.append(quad)
    return Diagram(tuple(crossings), d.joins, d.free_loops)


def writhe(d):
    """Sum of crossing signs under the traced orientation."""
    if not d.crossings:
        return 0
    return sum(orient(d).signs)


def crossing_signs(d):
    if not d.crossings:
        return ()
    return orient(d).signs


# -- Kauffman states -----------------------------------------------------

def _edge_index(d):
    return {e: i for i, e in enumerate(d.edge_labels())}


def kernel_inputs(d):
    """(quads, n_points, pre_pairs) with 0-based contiguous edge ids."""
    idx = _edge_index(d)
    quads = [tuple(idx[e] for e in quad) for quad in d.crossings]
    pre = [(idx[x], idx[y]) for x, y in d.joins]
    return quads, len(idx), pre


def resolve(d, state):
    """Loop count and edge -> circle labeling for one Kauffman state.

    `state` is a bit string (least significant crossing first) or an int;
    bit i = 0 picks the A-smoothing at crossing i.  Anonymous free loops
    are included in the count.
    """
    if isinstance(state, str):
        if len(state) != len(d.crossings):
            raise ValueError("state length != crossing count")
        s = int(state[::-1], 2) if state else 0
    else:
        s = int(state)
    quads, n_points, pre = kernel_inputs(d)
    if n_points == 0:
        return d.free_loops, {}
    count, labels = kernels.state_circles(quads, n_points, pre, s)
    edge_of = {e: labels[i] for e, i in _edge_index(d).items()}
    return count + d.free_loops, edge_of


# -- cabling -------------------------------------------------------------

def cable_with_map(d, n):
    """n-parallel blackboard cable plus the copy map.

    Returns (cabled diagram, {(edge, i): cabled label}).  Copy i of an
    edge is the i-th strand counted left-to-right facing along the strand
    direction; that order is preserved along arcs and through joins, so
    the local wiring below is globally consistent.  Every crossing becomes
    an n x n grid of crossings of the same sign.
    """
    if n < 1:
        raise ValueError("cable width must be >= 1")
    over_entry = orient(d).over_entry if d.crossings else ()
    fresh = [0]

    def new_label():
        fresh[0] += 1
        return fresh[0]

    copies = {}

    def copy_of(e, i):
        if (e, i) not in copies:
            copies[(e, i)] = new_label()
        return copies[(e, i)]

    crossings = []
    for idx, (a, b, c, cd) in enumerate(d.crossings):
        u = {}
        for i in range(1, n + 1):
            u[(i, 0)] = copy_of(a, i)
            u[(i, n)] = copy_of(c, i)
            for t in range(1, n):
                u[(i, t)] = new_label()
        v = {}
        if over_entry[idx] == 3:
            # over runs d -> b (west to east); rows numbered 1..n from north
            for j in range(1, n + 1):
                v[(j, 0)] = copy_of(cd, j)
                v[(j, n)] = copy_of(b, j)
                for t in range(1, n):
                    v[(j, t)] = new_label()
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    crossings.append((u[(i, n - j)], v[(j, i)],
                                      u[(i, n - j + 1)], v[(j, i - 1)]))
        else:
            # over runs b -> d (east to west); rows numbered 1..n from south
            for j in range(1, n + 1):
                v[(j, 0)] = copy_of(b, j)
                v[(j, n)] = copy_of(cd, j)
                for t in range(1, n):
                    v[(j, t)] = new_label()
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    crossings.append((u[(i, j - 1)], v[(j, n - i)],
                                      u[(i, j)], v[(j, n - i + 1)]))
    joins = []
    for x, y in d.joins:
        for i in range(1, n + 1):
            joins.append((copy_of(x, i), copy_of(y, i)))
    raw = Diagram(tuple(crossings), tuple(joins), d.free_loops * n)
    out, mapping = relabel(raw, return_map=True)
    return out, {key: mapping[lab] for key, lab in copies.items()}


def cable(d, n):
    return cable_with_map(d, n)[0]


def subdivide_edges(d, edges):
    """Cut each listed edge once, introducing a join at the cut.

    Returns (diagram, [(first_half, second_half), ...]) aligned with
    `edges`.  Repeated mentions cut the (current) edge again.  Cutting
    commutes with cabling copy-by-copy, which is what makes projector
    splicing orientation-safe.
    """
    crossings = [list(q) for q in d.crossings]
    joins = [list(j) for j in d.joins]
    fresh = max(d.edge_labels(), default=0)
    pairs = []
    for e in edges:
        fresh += 1
        new = fresh
        count = 0
        done = False
        for quad in crossings:
            for pos, lab in enumerate(quad):
                if lab == e:
                    count += 1
                    if count == 2:
                        quad[pos] = new
                        done = True
                        break
            if done:
                break
        if not done:
            for pair in joins:
                for pos, lab in enumerate(pair):
                    if lab == e:
                        count += 1
                        if count == 2:
                            pair[pos] = new
                            done = True
                            break
                if done:
                    break
        if not done:
            raise TopologyError("edge %r not cuttable" % (e,))
        joins.append([e, new])
        pairs.append((e, new))
    out = Diagram(tuple(tuple(q) for q in crossings),
                  tuple(tuple(j) for j in joins), d.free_loops)
    return out, pairs


def relabel(d, return_map=False):
    """Deterministic canonical relabeling: 1..E in order of appearance."""
    mapping = {}

    def get(e):
        if e not in mapping:
            mapping[e] = len(mapping) + 1
        return mapping[e]

    crossings = tuple(tuple(get(e) for e in quad) for quad in d.crossings)
    joins = tuple(tuple(get(e) for e in pair) for pair in d.joins)
    out = Diagram(crossings, joins, d.free_loops)
    if return_map:
        return out, mapping
    return out


# -- twist templates -------------------------------------------------------

@dataclass(frozen=True)
class TwistTemplate:
    """A base diagram with marked twist slots.

    A slot (x, y, sign) is anchored at a crossing of the base whose
    under-out edge is x and over-out edge is y.  The slot's region is the
    maximal twist ladder through that crossing; filling with k replaces
    the whole region by k parallel half-twists of the anchor's
    handedness (k = 0 smooths the region into two parallel strands).
    Anchoring regions in an honest planar base keeps every fill planar.
    """

    base: Diagram
    slots: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        over = orient(self.base).over_entry if self.base.crossings else ()
        anchors = []
        for x, y, sign in self.slots:
            if sign not in (1, -1):
                raise TopologyError("slot sign must be +-1")
            ci, _side = _slot_anchor(self.base, x, y)
            want = 1 if over[ci] == 3 else -1
            if sign != want:
                raise TopologyError(
                    "slot sign %+d does not match crossing handedness" % sign)
            anchors.append(ci)
        if len(set(anchors)) != len(anchors):
            raise TopologyError("two slots anchor the same crossing")
        claimed = set()
        for region in self.regions():
            if claimed & set(region):
                raise TopologyError("slot regions overlap")
            claimed.update(region)

    @property
    def t(self):
        return len(self.slots)

    def anchors(self):
        return tuple(_slot_anchor(self.base, x, y)[0]
                     for x, y, _ in self.slots)

    def sides(self):
        return tuple(_slot_anchor(self.base, x, y)[1]
                     for x, y, _ in self.slots)

    def regions(self):
        """Per slot, the twist ladder claimed by its anchor; extension
        stops at other slots' anchors so declared regions stay disjoint."""
        anchors = self.anchors()
        return tuple(
            _region_of(self.base, ci, stop=set(anchors) - {ci})
            for ci in anchors)


def _slot_anchor(base, x, y):
    """(crossing index, side) with edge x at the side position and y at
    the next counterclockwise position; the side pair is the channel the
    twist region extends through."""
    for ci, quad in enumerate(base.crossings):
        for i in range(4):
            if quad[i] == x and quad[(i + 1) % 4] == y:
                return ci, i
    raise TopologyError("no crossing side with strand ends (%d, %d)" % (x, y))


def _slot_axis(side):
    """'12' if the twist channel runs through position pairs {1,2}/{3,0},
    else '23' (pairs {2,3}/{0,1})."""
    return "12" if side in (1, 3) else "23"


def faces(d):
    """Faces of the crossing rotation system (quadruple order = CCW).

    Each face is a list of darts (crossing, position); a dart points INTO
    its crossing at that position.  Pure-circle joins are ignored.
    """
    d = normalize(d)
    incid = {}
    for ci, quad in enumerate(d.crossings):
        for pos, e in enumerate(quad):
            incid.setdefault(e, []).append((ci, pos))

    def face_next(dart):
        ci, pos = dart
        out = (ci, (pos - 1) % 4)
        e = d.crossings[out[0]][out[1]]
        a, b = incid[e]
        return b if a == out else a

    out_faces = []
    seen = set()
    for ci in range(len(d.crossings)):
        for pos in range(4):
            start = (ci, pos)
            if start in seen:
                continue
            face = []
            cur = start
            while True:
                seen.add(cur)
                face.append(cur)
                cur = face_next(cur)
                if cur == start:
                    break
            out_faces.append(face)
    return out_faces


def genus(d):
    """Total genus of the crossing rotation system (0 = planar)."""
    d = normalize(d)
    if not d.crossings:
        return 0
    # connected components of the crossing graph
    comp = {}
    nxt = {}
    for ci, quad in enumerate(d.crossings):
        for e in quad:
            nxt.setdefault(e, []).append(ci)
    parent = list(range(len(d.crossings)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cis in nxt.values():
        for other in cis[1:]:
            ra, rb = find(cis[0]), find(other)
            if ra != rb:
                parent[rb] = ra
    comp_of = {ci: find(ci) for ci in range(len(d.crossings))}
    v_count = {}
    e_count = {}
    f_count = {}
    for ci in comp_of:
        v_count[comp_of[ci]] = v_count.get(comp_of[ci], 0) + 1
    for e, cis in nxt.items():
        e_count[comp_of[cis[0]]] = e_count.get(comp_of[cis[0]], 0) + 1
    for face in faces(d):
        root = comp_of[face[0][0]]
        f_count[root] = f_count.get(root, 0) + 1
    total = 0
    for root in v_count:
        euler = v_count[root] - e_count[root] + f_count.get(root, 0)
        total += (2 - euler) // 2
    return total


def _region_adjacent(d, face_list):
    """Pairs of crossings joined by a bigon face (one twist step)."""
    pairs = set()
    for face in face_list:
        if len(face) == 2:
            (c1, _), (c2, _) = face
            if c1 != c2:
                pairs.add(frozenset((c1, c2)))
    return pairs


def _region_of(base, ci, stop=()):
    """The twist region through crossing ci: the maximal chain of
    crossings connected by bigon faces.  Crossings in `stop` bound the
    extension.  Returns a list of crossing indices."""
    pairs = _region_adjacent(base, faces(base))
    adj = {}
    for pair in pairs:
        x, y = tuple(pair)
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    region = {ci}
    frontier = [ci]
    while frontier:
        cur = frontier.pop()
        for other in adj.get(cur, ()):
            if other not in region and other not in stop:
                region.add(other)
                frontier.append(other)
    return sorted(region)


def smooth_slots(template):
    """The k = (0,...,0) fill before normalization.

    Every crossing of every slot region is removed with both strands
    passing straight through as joins.  Returns (diagram, slot_data) with
    slot_data[i] = (anchor quad, over_entry, channel axis) per slot.
    """
    base = template.base
    anchors = template.anchors()
    sides = template.sides()
    regions = template.regions()
    over = orient(base).over_entry if base.crossings else ()
    removed = {}
    for region, side in zip(regions, sides):
        axis = _slot_axis(side)
        for ci in region:
            removed[ci] = _crossing_axis(base, ci, region, axis)
    crossings = [q for ci, q in enumerate(base.crossings)
                 if ci not in removed]
    joins = list(base.joins)
    for ci in sorted(removed):
        a, b, c, d = base.crossings[ci]
        if removed[ci] == "12":
            # channel through sides {1,2}/{3,0}: planar A-type smoothing
            joins.append((a, b))
            joins.append((c, d))
        else:
            joins.append((a, d))
            joins.append((b, c))
    slot_data = []
    for ci, side in zip(anchors, sides):
        slot_data.append((base.crossings[ci], over[ci], _slot_axis(side)))
    return Diagram(tuple(crossings), tuple(joins),
                   base.free_loops), slot_data


def _crossing_axis(base, ci, region, anchor_axis):
    """Channel axis at a region member, read off its bigon face.

    The face walk arrives at (ci, pos) and leaves via (ci, pos-1), so the
    bigon occupies the side pair {pos-1, pos}; the channel runs through
    that side.  Single-crossing regions use the anchor's declared axis.
    """
    if len(region) < 2:
        return anchor_axis
    for face in faces(base):
        if len(face) != 2:
            continue
        cis = {dart[0] for dart in face}
        if ci in cis and len(cis) == 2 and cis <= set(region):
            pos = next(p for c2, p in face if c2 == ci)
            return _slot_axis((pos - 1) % 4)
    return anchor_axis


def _double_anchor(quad, oe, axis, new_label):
    """One extra half-twist of the same handedness along the channel.

    Returns (new anchor quad, extra crossing quad).  The channel axis
    runs through position pairs {1,2}/{3,0} ('12') or {2,3}/{0,1} ('23');
    with over-entry 3 the '12' axis is a parallel twist region and '23'
    a clasp, and conversely for over-entry 1.
    """
    a, b, c, d = quad
    g, h = new_label(), new_label()
    if oe == 3:
        if axis == "12":
            return (a, h, g, d), (h, b, c, g)
        return (a, b, g, h), (c, d, h, g)
    if axis == "23":
        return (a, b, g, h), (h, g, c, d)
    return (a, h, g, d), (c, g, h, b)


def twist_fill(template, k):
    """Fill slot i's region with k[i] half-twists of its handedness.

    Region crossings other than the anchor are smoothed away; the anchor
    is removed (k = 0) or doubled in place k - 1 times, which keeps every
    fill planar.  Negative twist counts are rejected: the stabilization
    experiments are one-sided (k -> infinity).
    """
    k = tuple(k)
    if len(k) != template.t:
        raise ValueError("need %d twist counts, got %d"
                         % (template.t, len(k)))
    if any(ki < 0 for ki in k):
        raise ValueError("negative twist counts are not supported")
    d0, slot_data = smooth_slots(template)
    crossings = list(d0.crossings)
    joins = list(d0.joins)
    fresh = [max(d0.edge_labels(), default=0)]

    def new_label():
        fresh[0] += 1
        return fresh[0]

    for (quad, oe, axis), ki in zip(slot_data, k):
        if ki == 0:
            continue
        a, b, c, d = quad
        if axis == "12":
            joins.remove((a, b))
            joins.remove((c, d))
        else:
            joins.remove((a, d))
            joins.remove((b, c))
        anchor = quad
        for _ in range(ki - 1):
            anchor, extra = _double_anchor(anchor, oe, axis, new_label)
            crossings.append(extra)
        crossings.append(anchor)
    filled = normalize(Diagram(tuple(crossings), tuple(joins),
                               d0.free_loops))
    return relabel(make_coherent(filled))


# -- stock diagrams and templates -------------------------------------------

TREFOIL_PD = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
FIGURE_EIGHT_PD = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
HOPF_PD = "X[4,1,3,2] X[2,3,1,4]"


def trefoil():
    return parse_pd(TREFOIL_PD)


def figure_eight():
    return parse_pd(FIGURE_EIGHT_PD)


def hopf_link():
    return parse_pd(HOPF_PD)


def unknot():
    return parse_pd("U")


def one_slot_template(sign=1):
    """A single twist region closed off: fills to the (2,k) torus family.

    The base is a one-kink unknot; its limiting graph is the theta graph
    with colors (n, n, 2n)."""
    if sign > 0:
        base = parse_pd("X[1,1,2,2]")
        return TwistTemplate(base, ((1, 2, 1),))
    base = parse_pd("X[1,2,2,1]")
    return TwistTemplate(base, ((2, 1, -1),))


def two_slot_template():
    """Two positive twist regions stacked in a 2-braid closure.

    Fills to the (2, k1+k2) family; the limiting graph is a cycle of two
    2n-projector edges joined by parallel strand pairs."""
    base = braid_pd([1, 1], 2)
    return TwistTemplate(base, ((2, 3, 1), (1, 4, 1)))


def rational_template():
    """The double-twist clasp family: two 2-crossing twist regions.

    The base is the figure-eight knot; fills are the double-twist knots
    and links.  The limiting graph is the tetrahedron, reached by one
    inverse triangle move (T = 1)."""
    base = parse_pd(FIGURE_EIGHT_PD)
    # slots name the channel side pair of one crossing per clasp
    return TwistTemplate(base, ((5, 1, 1), (3, 7, -1)))


def pretzel_template(sign=1):
    """Three twist regions in the pretzel pattern.

    Fills are the pretzel links P(k1, k2, k3); the limiting graph is the
    triangular prism, reached by two inverse triangle moves (T = 2)."""
    if sign > 0:
        base = parse_pd("X[4,6,3,1] X[5,4,1,2] X[6,5,2,3]")
        return TwistTemplate(base, ((3, 1, 1), (1, 2, 1), (2, 3, 1)))
    base = parse_pd("X[4,1,3,6] X[5,2,1,4] X[6,3,2,5]")
    return TwistTemplate(base, ((1, 3, -1), (2, 1, -1), (3, 2, -1)))


def braid_pd(word, strands):
    """Closure of a braid word as a Diagram.

    `word` is a sequence of nonzero ints: +i is the positive generator
    crossing strands i, i+1 (left strand over), -i its inverse.
    """
    if strands < 2:
        raise ValueError("need at least 2 strands")
    fresh = [0]

    def new_label():
        fresh[0] += 1
        return fresh[0]

    current = [new_label() for _ in range(strands)]
    first = list(current)
    crossings = []
    for g in word:
        i = abs(g)
        if not 1 <= i <= strands - 1:
            raise ValueError("generator out of range: %d" % g)
        a0, b0 = current[i - 1], current[i]
        a1, b1 = new_label(), new_label()
        if g > 0:
            crossings.append((b0, a1, b1, a0))
        else:
            crossings.append((a0, b0, a1, b1))
        current[i - 1], current[i] = b1, a1
    mapping = {}
    free = 0
    for top, bottom in zip(current, first):
        if top == bottom:
            free += 1  # strand position never crossed
        else:
            mapping[top] = bottom
    remapped = tuple(tuple(mapping.get(e, e) for e in quad)
                     for quad in crossings)
    if not remapped:
        return Diagram((), (), strands)
    return relabel(Diagram(remapped, (), free))


def random_diagram(rng, max_crossings=12, min_crossings=1):
    """Random braid closure with at most max_crossings crossings."""
    strands = rng.randint(2, 4)
    c = rng.randint(min_crossings, max_crossings)
    word = []
    for _ in range(c):
        g = rng.randint(1, strands - 1)
        word.append(g if rng.random() < 0.5 else -g)
    return braid_pd(word, strands)
