"""Translations between the traditional models and higher dimensional
automata, region synthesis, and the net/automaton transposition.

Each direction of each adjunction is a standalone function; the
round-trip identities they satisfy are exercised by the law suite.  All
outputs carry ``cell_keys`` naming the model elements each cell came
from, which is what makes the round trips land on the original names.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .cts import CtsMorphism, cts_morphism_to_hda_morphism, cts_to_hda, es_to_cts, pn_to_cts
from .cubical import (
    STAR,
    CellId,
    DegeneracyWitness,
    Hda,
    LabelWord,
    as_witness,
    cell_face,
    cell_transpose,
    check_linear_labeling,
    index_complex,
    nest_witness,
    truncate,
    zero_source,
    zero_target,
)
from .errors import (
    CapExceeded,
    NotLinear,
    NotOneDeterministic,
    NotPartialOrder,
    OutOfReachableFragment,
    SquareIncomplete,
    StarClash,
)
from .models import (
    Acr,
    AcrMorphism,
    EsMorphism,
    EventStructure,
    Marking,
    PetriNet,
    PnMorphism,
    TransitionSystem,
    TsMorphism,
    successor,
    validate_acr,
    validate_es,
)
from .util import ValidationReport, canon_key, sorted_by_key


# ---------------------------------------------------------------------------
# HDA morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HdaMorphism:
    """Cell map into possibly-degenerate cells plus a pointed label map.

    ``label_map`` is total on the source alphabet; sending a label to STAR
    encodes partiality.
    """

    cell_map: Mapping  # CellId -> DegeneracyWitness
    label_map: Mapping

    def label_image(self, label):
        if label == STAR:
            return STAR
        return self.label_map.get(label, STAR)

    def word_image(self, w: LabelWord) -> LabelWord:
        return tuple(self.label_image(e) for e in w)

    def apply(self, cell) -> DegeneracyWitness:
        w = as_witness(cell)
        return nest_witness(w.stars, self.cell_map[w.base])


def identity_hda_morphism(h: Hda) -> HdaMorphism:
    return HdaMorphism(
        cell_map={c: DegeneracyWitness(c) for c in h.skeleton.all_cells()},
        label_map={a: a for a in h.alphabet},
    )


def compose_hda_morphisms(f: HdaMorphism, g: HdaMorphism) -> HdaMorphism:
    """g after f."""
    return HdaMorphism(
        cell_map={c: g.apply(w) for c, w in f.cell_map.items()},
        label_map={a: g.label_image(b) for a, b in f.label_map.items()},
    )


def validate_hda_morphism(m: HdaMorphism, src: Hda, dst: Hda) -> ValidationReport:
    report = ValidationReport("hda morphism")
    image_init = m.cell_map.get(src.initial)
    if image_init != DegeneracyWitness(dst.initial):
        report.add("initial cell not preserved")
    for a in src.alphabet:
        if m.label_image(a) != STAR and m.label_image(a) not in dst.alphabet:
            report.add(f"label {a!r} maps outside the target alphabet")
    for cell in src.skeleton.all_cells():
        image = m.cell_map.get(cell)
        if image is None:
            report.add(f"cell map undefined on {cell}")
            continue
        if image.dim != cell.dim:
            report.add(f"cell {cell} maps to dimension {image.dim}")
            continue
        if not dst.skeleton.has_cell(image.base):
            report.add(f"image base of {cell} is not a cell of the target")
            continue
        if dst.label(image) != m.word_image(src.labeling[cell]):
            report.add(f"label square fails at {cell}")
        for i in range(cell.dim):
            for sign in ("-", "+"):
                src_face = src.skeleton.face(cell, i, sign)
                lhs = m.cell_map.get(src_face)
                rhs = cell_face(dst.complex, image, i, sign)
                if lhs != rhs:
                    report.add(f"face ({i},{sign}) not natural at {cell}")
        for i in range(cell.dim - 1):
            lhs = m.cell_map.get(src.complex.transpose(cell, i))
            rhs = cell_transpose(dst.complex, image, i)
            if lhs != rhs:
                report.add(f"transposition {i} not natural at {cell}")
    return report


# ---------------------------------------------------------------------------
# Transition systems <-> 1-dimensional automata
# ---------------------------------------------------------------------------

def ts_to_hda1(t: TransitionSystem, idle: bool = False) -> Hda:
    """States become vertices, transitions become labeled edges.

    With ``idle`` set, the input is a completed system: the idle event is
    allowed, its self-loops are read as degenerate edges (so they are not
    materialized), and the remaining events form the alphabet.
    """
    if not idle and STAR in t.events:
        raise StarClash("input already carries the idle event; pass idle=True")
    alphabet = tuple(sorted_by_key(e for e in t.events if e != STAR))
    edges = []
    for (s, e, s2) in t.trans:
        if e == STAR:
            if not idle:
                raise StarClash("idle transition in a plain system")
            if s != s2:
                raise StarClash(f"idle transition {(s, e, s2)!r} is not a self-loop")
            continue
        edges.append((s, e, s2))
    cells_by_dim = {0: list(t.states), 1: edges}

    def face_key(n, key, i, sign):
        return key[0] if sign == "-" else key[2]

    complex_, keys = index_complex(cells_by_dim, face_key, transpose_key=lambda n, k, i: k)
    by_key = {k: c for c, k in keys.items()}
    labeling = {c: ((k[1],) if c.dim == 1 else ()) for c, k in keys.items()}
    return Hda(
        complex=complex_,
        alphabet=alphabet,
        labeling=labeling,
        initial=by_key[t.initial],
        cell_keys=keys,
    )


def hda1_to_ts(h: Hda, idle: bool = False) -> TransitionSystem:
    """Read the 1-skeleton back as a transition system.

    Events are the labels without the idle symbol; edges labeled by the
    idle symbol induce no transition.  With ``idle`` set the result is the
    completed system: the idle event returns with a loop at every state.
    """
    states = {h.key(c) for c in h.cells(0)}
    trans = set()
    for edge in h.cells(1):
        (label,) = h.labeling[edge]
        if label == STAR:
            continue
        trans.add((h.key(h.skeleton.face(edge, 0, "-")),
                   label,
                   h.key(h.skeleton.face(edge, 0, "+"))))
    events = set(h.alphabet)
    if idle:
        events.add(STAR)
        trans |= {(s, STAR, s) for s in states}
    return TransitionSystem(
        states=frozenset(states),
        initial=h.key(h.initial),
        events=frozenset(events),
        trans=frozenset(trans),
    )


# ---------------------------------------------------------------------------
# Automata with concurrency relations <-> 2-dimensional automata
# ---------------------------------------------------------------------------

def acr_to_hda2(a: Acr) -> Hda:
    """One square per ordered independent pair, glued on the closing
    transitions that the axioms make unique."""
    report = validate_acr(a)
    if not report.ok:
        raise SquareIncomplete(str(report))
    t = a.ts
    edges = [(s, e, s2) for (s, e, s2) in t.trans]
    squares = []
    for (s, x, y) in a.indep:
        squares.append((s, x, y))
    cells_by_dim = {0: list(t.states), 1: edges, 2: squares}

    def closing(s, x, y):
        s1 = successor(t, s, x)
        s2 = successor(t, s, y)
        r = successor(t, s1, y)
        return s1, s2, r

    def face_key(n, key, i, sign):
        if n == 1:
            return key[0] if sign == "-" else key[2]
        s, x, y = key
        s1, s2, r = closing(s, x, y)
        # the label is (x, y); dropping position 0 leaves the y-edge
        if i == 0:
            return (s, y, s2) if sign == "-" else (s1, y, r)
        return (s, x, s1) if sign == "-" else (s2, x, r)

    def transpose_key(n, key, i):
        s, x, y = key
        return (s, y, x)

    complex_, keys = index_complex(cells_by_dim, face_key, transpose_key)
    by_key = {k: c for c, k in keys.items()}
    labeling = {}
    for c, k in keys.items():
        if c.dim == 0:
            labeling[c] = ()
        elif c.dim == 1:
            labeling[c] = (k[1],)
        else:
            labeling[c] = (k[1], k[2])
    return Hda(
        complex=complex_,
        alphabet=tuple(sorted_by_key(t.events)),
        labeling=labeling,
        initial=by_key[t.initial],
        cell_keys=keys,
    )


def hda2_to_acr(h: Hda) -> Acr:
    """Independence holds at a vertex exactly when a square starts there."""
    low = truncate(h, 2) if h.max_dim > 2 else h
    from .cubical import check_deterministic

    if not check_deterministic(low, 1):
        raise NotOneDeterministic("two edges share source and label")
    ts = hda1_to_ts(low)
    indep = set()
    for cell in low.cells(2):
        s = low.key(zero_source(low.complex, cell))
        x, y = low.labeling[cell]
        indep.add((s, x, y))
    a = Acr(ts=ts, indep=frozenset(indep))
    report = validate_acr(a)
    if not report.ok:
        raise SquareIncomplete(str(report))
    return a


# ---------------------------------------------------------------------------
# Event structures <-> automata
# ---------------------------------------------------------------------------

def es_to_hda(es: EventStructure, max_dim: Optional[int] = None,
              truncate_cells: bool = False) -> Hda:
    report = validate_es(es)
    if not report.ok:
        raise ValueError(str(report))
    cap = len(es.events) if max_dim is None else max_dim
    return cts_to_hda(es_to_cts(es), cap, truncate_cells=truncate_cells)


def hda_to_es(h: Hda) -> EventStructure:
    """Recover causality and conflict from the runs of the automaton.

    A run chains cells 0-target to 0-source starting at the initial cell.
    Runs whose concatenated labels stay duplicate-free are fully described
    by walks on the 1-skeleton (in a valid complex a cell's letters are
    traversable through its edge faces), so the search keeps only the pair
    (vertex, set of fired events).
    """
    if not check_linear_labeling(h):
        raise NotLinear("some cell label repeats an event")
    events = set(h.alphabet)

    edges_at = {}
    for edge in h.cells(1):
        (label,) = h.labeling[edge]
        if label == STAR:
            continue
        src = h.skeleton.face(edge, 0, "-")
        tgt = h.skeleton.face(edge, 0, "+")
        edges_at.setdefault(src, []).append((label, tgt))

    start = (h.initial, frozenset())
    seen = {start}
    stack = [start]
    co_occur = set()
    order_break = set()  # (e, e2): some run fires e2 with no earlier e
    while stack:
        vertex, used = stack.pop()
        for a in used:
            for b in used:
                co_occur.add((a, b))
        for label, tgt in edges_at.get(vertex, ()):
            if label in used:
                continue
            for e in events:
                if e != label and e not in used:
                    order_break.add((e, label))
            nxt = (tgt, used | {label})
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)

    leq = set()
    for e in events:
        for e2 in events:
            if e == e2 or (e, e2) not in order_break:
                leq.add((e, e2))
    for e, e2 in itertools.combinations(sorted_by_key(events), 2):
        if (e, e2) in leq and (e2, e) in leq:
            raise NotPartialOrder(f"{e!r} and {e2!r} each precede the other")
    conflict = set()
    for e in events:
        for e2 in events:
            if e != e2 and (e, e2) not in co_occur:
                conflict.add((e, e2))
    es = EventStructure(events=frozenset(events), leq=frozenset(leq),
                        conflict=frozenset(conflict))
    report = validate_es(es)
    if not report.ok:
        raise NotPartialOrder(str(report))
    return es


# ---------------------------------------------------------------------------
# Petri nets <-> automata
# ---------------------------------------------------------------------------

def pn_to_hda(n: PetriNet, max_states: int, max_dim: int,
              truncate_cells: bool = False) -> Hda:
    return cts_to_hda(pn_to_cts(n, max_states), max_dim, truncate_cells=truncate_cells)


@dataclass(frozen=True)
class Region:
    """A place candidate: token flow per label plus a token count per vertex.

    ``flows`` maps each label to (consumed, produced); ``tokens`` maps each
    0-cell to its count.  Both are stored as sorted tuples so regions are
    hashable and canonically ordered.
    """

    flows: tuple   # ((label, (consumed, produced)), ...)
    tokens: tuple  # ((CellId, count), ...)

    @staticmethod
    def of(flows: Mapping, tokens: Mapping) -> "Region":
        return Region(
            flows=tuple(sorted(((e, (int(a), int(b))) for e, (a, b) in flows.items()),
                               key=lambda kv: canon_key(kv[0]))),
            tokens=tuple(sorted(((c, int(v)) for c, v in tokens.items()),
                                key=lambda kv: canon_key(kv[0]))),
        )

    def flow(self, label) -> tuple[int, int]:
        if label == STAR:
            return (0, 0)
        return dict(self.flows).get(label, (0, 0))

    def word_flow(self, w: LabelWord) -> tuple[int, int]:
        pre = post = 0
        for e in w:
            a, b = self.flow(e)
            pre += a
            post += b
        return (pre, post)

    def tokens_at(self, vertex: CellId) -> int:
        return dict(self.tokens)[vertex]

    def canon_key(self):
        return ("region", canon_key(self.flows), canon_key(self.tokens))


def region_check(h: Hda, reg: Region) -> bool:
    """Coherence on every cell: both ends carry enough tokens and the
    difference matches the flow of the label."""
    flows = dict(reg.flows)
    for a in h.alphabet:
        if a not in flows:
            raise ValueError(f"region does not cover label {a!r}")
    tokens = dict(reg.tokens)
    for v in h.cells(0):
        if v not in tokens:
            return False
    for n in range(h.max_dim + 1):
        for cell in h.cells(n):
            pre, post = reg.word_flow(h.labeling[cell])
            sx = tokens[zero_source(h.complex, cell)]
            tx = tokens[zero_target(h.complex, cell)]
            if sx < pre or tx < post or sx - pre != tx - post:
                return False
    return True


def enumerate_regions(h: Hda, cap: int) -> frozenset:
    """All regions with every flow and token value bounded by ``cap``.

    For each flow assignment the token counts are forced along edges up to
    one additive offset per connected component of the 1-skeleton; offsets
    are then enumerated within the cap and the higher cells checked.
    """
    vertices = h.cells(0)
    labels = tuple(sorted_by_key(h.alphabet))
    edges = []
    for e in h.cells(1):
        edges.append((h.skeleton.face(e, 0, "-"), h.skeleton.face(e, 0, "+"),
                      h.labeling[e]))

    # connected components of the 1-skeleton
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s, t, _ in edges:
        parent[find(s)] = find(t)
    components: dict[CellId, list[CellId]] = {}
    for v in vertices:
        components.setdefault(find(v), []).append(v)

    higher = [(cell, h.labeling[cell], zero_source(h.complex, cell),
               zero_target(h.complex, cell))
              for n in range(2, h.max_dim + 1) for cell in h.cells(n)]

    out = set()
    values = range(cap + 1)
    for combo in itertools.product(itertools.product(values, values), repeat=len(labels)):
        flows = dict(zip(labels, combo))

        def flow_of(word):
            pre = post = 0
            for e in word:
                if e == STAR:
                    continue
                a, b = flows[e]
                pre += a
                post += b
            return pre, post

        # propagate relative token counts inside each component
        rel = {}
        consistent = True
        for root, members in components.items():
            rel[members[0]] = 0
            queue = [members[0]]
            adjacency = {}
            for s, t, w in edges:
                pre, post = flow_of(w)
                adjacency.setdefault(s, []).append((t, post - pre))
                adjacency.setdefault(t, []).append((s, pre - post))
            while queue:
                v = queue.pop()
                for u, diff in adjacency.get(v, ()):
                    if u in rel:
                        if rel[u] != rel[v] + diff:
                            consistent = False
                    else:
                        rel[u] = rel[v] + diff
                        queue.append(u)
            if not consistent:
                break
        if not consistent:
            continue

        # per component: admissible offsets keep every constraint within cap
        choices = []
        for root, members in sorted(components.items(), key=lambda kv: canon_key(kv[0])):
            lo, hi = 0, cap
            for v in members:
                lo = max(lo, -rel[v])
                hi = min(hi, cap - rel[v])
            for s, t, w in edges:
                if find(s) != root:
                    continue
                pre, post = flow_of(w)
                lo = max(lo, pre - rel[s], post - rel[t])
            ok_cells = []
            for cell, w, src, tgt in higher:
                if find(src) != root:
                    continue
                pre, post = flow_of(w)
                if (rel[src] - pre) != (rel[tgt] - post):
                    lo, hi = 1, 0  # coherence fails for every offset
                    break
                lo = max(lo, pre - rel[src], post - rel[tgt])
            if lo > hi:
                choices = None
                break
            choices.append((members, range(lo, hi + 1)))
        if choices is None:
            continue

        for offsets in itertools.product(*(rng for _, rng in choices)):
            tokens = {}
            for (members, _), delta in zip(choices, offsets):
                for v in members:
                    tokens[v] = rel[v] + delta
            out.add(Region.of(flows, tokens))
    return frozenset(out)


@dataclass(frozen=True)
class SynthesizedNet:
    """A net whose places are regions, with the naming kept alongside."""

    net: PetriNet
    regions: Mapping  # place name -> Region

    def place_of(self, reg: Region):
        for name, r in self.regions.items():
            if r == reg:
                return name
        return None


def hda_to_pn(h: Hda, cap: int) -> SynthesizedNet:
    """Synthesize the net whose places are the cap-bounded regions."""
    regions = sorted_by_key(enumerate_regions(h, cap))
    names = {f"p{i}": reg for i, reg in enumerate(regions)}
    events = tuple(sorted_by_key(h.alphabet))
    pre = {e: Marking.of({name: reg.flow(e)[0] for name, reg in names.items()})
           for e in events}
    post = {e: Marking.of({name: reg.flow(e)[1] for name, reg in names.items()})
            for e in events}
    m0 = Marking.of({name: reg.tokens_at(h.initial) for name, reg in names.items()})
    net = PetriNet(
        places=frozenset(names),
        m0=m0,
        events=frozenset(events),
        pre=pre,
        post=post,
    )
    return SynthesizedNet(net=net, regions=names)


# ---------------------------------------------------------------------------
# The net/automaton transposition
# ---------------------------------------------------------------------------

def transpose_to_hda(f: PnMorphism, source: Hda, synth: SynthesizedNet,
                     net: PetriNet, target: Hda) -> HdaMorphism:
    """Turn a net morphism out of the synthesized net into an automaton
    morphism into the net's automaton.

    A vertex goes to the marking that reads, at each place, the token count
    of the place's pulled-back region; higher cells follow their 0-source
    and the image of their label word.
    """
    target_by_key = target.cells_by_key()

    def marking_at(vertex: CellId) -> Marking:
        return Marking.of({p: synth.regions[f.phi[p]].tokens_at(vertex)
                           for p in net.places})

    cell_map = {}
    for vertex in source.cells(0):
        m = marking_at(vertex)
        if (m, ()) not in target_by_key:
            raise OutOfReachableFragment(
                f"marking {m.to_dict()!r} of vertex {source.key(vertex)!r} is not reachable")
        cell_map[vertex] = DegeneracyWitness(target_by_key[(m, ())])
    for n in range(1, source.max_dim + 1):
        for cell in source.cells(n):
            word = tuple(f.psi.get(e) for e in source.labeling[cell])
            stars = tuple(i for i, e in enumerate(word) if e is None)
            kept = tuple(e for e in word if e is not None)
            m = marking_at(zero_source(source.complex, cell))
            if (m, kept) not in target_by_key:
                raise OutOfReachableFragment(
                    f"cell over {kept!r} at {m.to_dict()!r} is outside the target caps")
            cell_map[cell] = DegeneracyWitness(target_by_key[(m, kept)], stars)
    lam = {a: f.psi.get(a, STAR) for a in source.alphabet}
    return HdaMorphism(cell_map=cell_map, label_map=lam)


def transpose_to_pn(g: HdaMorphism, source: Hda, synth: SynthesizedNet,
                    net: PetriNet, target: Hda, cap: int) -> PnMorphism:
    """Turn an automaton morphism into the net's automaton back into a net
    morphism out of the synthesized net.

    Each place pulls back to the region reading its token count through the
    image markings; flows come from the net's pre/postconditions along the
    label map.
    """
    phi = {}
    for p in sorted_by_key(net.places):
        flows = {}
        for e in source.alphabet:
            lam = g.label_image(e)
            if lam == STAR:
                flows[e] = (0, 0)
            else:
                flows[e] = (net.pre[lam].get(p), net.post[lam].get(p))
        tokens = {}
        for vertex in source.cells(0):
            image = g.cell_map[vertex]
            marking, _ = target.cell_keys[image.base]
            tokens[vertex] = marking.get(p)
        reg = Region.of(flows, tokens)
        for _, (a, b) in reg.flows:
            if a > cap or b > cap:
                raise CapExceeded(f"place {p!r} pulls back to flows above {cap}")
        for _, v in reg.tokens:
            if v > cap:
                raise CapExceeded(f"place {p!r} pulls back to token counts above {cap}")
        name = synth.place_of(reg)
        if name is None:
            raise CapExceeded(f"place {p!r} pulls back outside the synthesized places")
        phi[p] = name
    psi = {a: g.label_image(a) for a in source.alphabet if g.label_image(a) != STAR}
    return PnMorphism(phi=phi, psi=psi)


# ---------------------------------------------------------------------------
# Functorial action on morphisms
# ---------------------------------------------------------------------------

def map_morphism(functor: str, m, src, dst, **context):
    """Image of a model morphism under a translation.

    ``src`` and ``dst`` are the source and target models of ``m``;
    ``context`` carries whatever the translation itself needed (caps,
    precomputed automata), keyed by the same argument names.
    """
    if functor == "ts_to_hda1":
        return _graph_morphism_to_hda(
            m, src,
            context.get("src_hda") or ts_to_hda1(src),
            context.get("dst_hda") or ts_to_hda1(dst))
    if functor == "acr_to_hda2":
        base = m.base if isinstance(m, AcrMorphism) else m
        return _graph_morphism_to_hda(
            base, src.ts,
            context.get("src_hda") or acr_to_hda2(src),
            context.get("dst_hda") or acr_to_hda2(dst))
    if functor in ("hda1_to_ts", "hda2_to_acr"):
        sigma = {src.key(c): dst.key(m.cell_map[c].base) for c in src.cells(0)}
        tau = {a: b for a, b in m.label_map.items() if b != STAR}
        base = TsMorphism(sigma=sigma, tau=tau)
        return base if functor == "hda1_to_ts" else AcrMorphism(base)
    if functor == "es_to_hda":
        src_cts = es_to_cts(src)
        f = CtsMorphism(
            sigma={x: frozenset(m.mapping[e] for e in x if e in m.mapping)
                   for x in src_cts.states},
            tau=dict(m.mapping),
            lam=dict(m.mapping),
        )
        src_hda = context.get("src_hda") or es_to_hda(src)
        dst_hda = context.get("dst_hda") or es_to_hda(dst)
        return cts_morphism_to_hda_morphism(f, src_hda, dst_hda)
    if functor == "hda_to_es":
        return EsMorphism({a: b for a, b in m.label_map.items() if b != STAR})
    if functor == "pn_to_hda":
        max_states = context.get("max_states", 10000)
        max_dim = context.get("max_dim", 3)
        src_cts = pn_to_cts(src, max_states)
        f = CtsMorphism(
            sigma={mk: Marking.of({p: mk.get(m.phi[p]) for p in dst.places})
                   for mk in src_cts.states},
            tau=dict(m.psi),
            lam=dict(m.psi),
        )
        src_hda = context.get("src_hda") or pn_to_hda(src, max_states, max_dim)
        dst_hda = context.get("dst_hda") or pn_to_hda(dst, max_states, max_dim)
        return cts_morphism_to_hda_morphism(f, src_hda, dst_hda)
    if functor == "hda_to_pn":
        cap = context.get("cap", 1)
        src_synth = context.get("src_synth") or hda_to_pn(src, cap)
        dst_synth = context.get("dst_synth") or hda_to_pn(dst, cap)
        phi = {}
        for name, reg in dst_synth.regions.items():
            flows = {a: reg.flow(m.label_image(a)) for a in src.alphabet}
            tokens = {v: reg.tokens_at(m.cell_map[v].base) for v in src.cells(0)}
            pulled = Region.of(flows, tokens)
            pulled_name = src_synth.place_of(pulled)
            if pulled_name is None:
                raise CapExceeded(f"pulled-back region of {name!r} is not a place")
            phi[name] = pulled_name
        psi = {a: m.label_image(a) for a in src.alphabet if m.label_image(a) != STAR}
        return PnMorphism(phi=phi, psi=psi)
    raise ValueError(f"no morphism action for functor {functor!r}")


def _graph_morphism_to_hda(m: TsMorphism, src_ts: TransitionSystem,
                           src_hda: Hda, dst_hda: Hda) -> HdaMorphism:
    """Cell map induced on vertices, edges, and independence squares.

    Dropped events collapse their direction: the image is a degenerate cell
    over the image of the surviving face.
    """
    dst_by_key = dst_hda.cells_by_key()
    cell_map = {}
    for cell in src_hda.skeleton.all_cells():
        key = src_hda.cell_keys[cell]
        if cell.dim == 0:
            cell_map[cell] = DegeneracyWitness(dst_by_key[m.sigma[key]])
        elif cell.dim == 1:
            s, e, s2 = key
            if e in m.tau:
                image = (m.sigma[s], m.tau[e], m.sigma[s2])
                cell_map[cell] = DegeneracyWitness(dst_by_key[image])
            else:
                cell_map[cell] = DegeneracyWitness(dst_by_key[m.sigma[s]], (0,))
        else:
            s, x, y = key
            s1 = successor(src_ts, s, x)
            s2 = successor(src_ts, s, y)
            tx, ty = m.tau.get(x), m.tau.get(y)
            if tx is not None and ty is not None:
                cell_map[cell] = DegeneracyWitness(dst_by_key[(m.sigma[s], tx, ty)])
            elif tx is None and ty is None:
                cell_map[cell] = DegeneracyWitness(dst_by_key[m.sigma[s]], (0, 1))
            elif tx is None:
                edge = dst_by_key[(m.sigma[s], ty, m.sigma[s2])]
                cell_map[cell] = DegeneracyWitness(edge, (0,))
            else:
                edge = dst_by_key[(m.sigma[s], tx, m.sigma[s1])]
                cell_map[cell] = DegeneracyWitness(edge, (1,))
    lam = {a: m.tau.get(a, STAR) for a in src_hda.alphabet}
    return HdaMorphism(cell_map=cell_map, label_map=lam)
