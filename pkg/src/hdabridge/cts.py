"""Cubical transition systems: the generic engine behind every
model-to-automaton translation.

A CTS is a state space acted on by words of events.  Because enabling is
invariant under reordering and idle insertion, it is stored as a predicate
on multisets; the action of a word is the composite of single-event steps,
which the axioms make order-independent.  Every CTS generates a higher
dimensional automaton whose n-cells are the enabled words of length n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping

from .cubical import (
    STAR,
    DegeneracyWitness,
    Hda,
    LabelWord,
    index_complex,
)
from .errors import DimensionCapExceeded
from .models import EventStructure, PetriNet, configurations, es_enabled, reachable_markings
from .util import ValidationReport, canon_key, sorted_by_key

Multiset = tuple  # events in canonical sorted order, repeats allowed


def multiset(events) -> Multiset:
    return tuple(sorted(events, key=canon_key))


def sub_multisets(m: Multiset):
    seen = set()
    for k in range(len(m) + 1):
        for combo in itertools.combinations(m, k):
            ms = multiset(combo)
            if ms not in seen:
                seen.add(ms)
                yield ms


def multiset_minus(m: Multiset, part: Multiset) -> Multiset:
    out = list(m)
    for e in part:
        out.remove(e)
    return multiset(out)


@dataclass(frozen=True)
class Cts:
    states: frozenset
    initial: object
    events: frozenset
    alphabet: tuple                      # labels without the idle symbol
    labeling: Mapping                    # event -> label
    delta: Mapping                       # (state, event) -> state
    enabled: Callable[[object, Multiset], bool]

    def step(self, state, event):
        return self.delta.get((state, event))

    def successor(self, state, m: Multiset):
        """Fire the multiset in canonical order; None when a step is missing."""
        current = state
        for e in m:
            current = self.delta.get((current, e))
            if current is None:
                return None
        return current


@dataclass(frozen=True)
class CtsMorphism:
    """sigma total on states, tau partial on events, lam pointed on labels."""

    sigma: Mapping
    tau: Mapping
    lam: Mapping

    def label_image(self, label):
        if label == STAR:
            return STAR
        return self.lam.get(label, STAR)

    def word_image(self, w: LabelWord) -> LabelWord:
        return tuple(STAR if e == STAR or e not in self.tau else self.tau[e] for e in w)


def validate_cts(c: Cts, max_word: int) -> ValidationReport:
    """Check the axioms on every multiset of size at most ``max_word``."""
    report = ValidationReport("cubical transition system")
    if c.initial not in c.states:
        report.add(f"initial state {c.initial!r} not a state")
    for (s, e), s2 in c.delta.items():
        if s not in c.states or s2 not in c.states or e not in c.events:
            report.add(f"step {(s, e)!r} -> {s2!r} out of range")
    for e in sorted_by_key(c.events):
        if c.labeling.get(e) is None:
            report.add(f"event {e!r} has no label")

    states = sorted_by_key(c.states)
    events = sorted_by_key(c.events)
    for x in states:
        if not c.enabled(x, ()):
            report.add(f"empty word not enabled at {x!r}")
    for size in range(1, max_word + 1):
        for combo in itertools.combinations_with_replacement(events, size):
            m = multiset(combo)
            for x in states:
                if not c.enabled(x, m):
                    continue
                # all orderings must walk through delta to the same state
                targets = set()
                for order in set(itertools.permutations(m)):
                    current = x
                    for e in order:
                        current = c.delta.get((current, e))
                        if current is None:
                            report.add(f"enabled {m!r} at {x!r} but no step {e!r} along {order!r}")
                            break
                    else:
                        targets.add(current)
                if len(targets) > 1:
                    report.add(f"firing order of {m!r} at {x!r} is ambiguous: {targets!r}")
                for part in sub_multisets(m):
                    if not c.enabled(x, part):
                        report.add(f"{m!r} enabled at {x!r} but sub-multiset {part!r} is not")
                        continue
                    mid = c.successor(x, part)
                    rest = multiset_minus(m, part)
                    if mid is None:
                        continue
                    if not c.enabled(mid, rest):
                        report.add(f"{m!r} enabled at {x!r} but {rest!r} not enabled after {part!r}")
                    elif c.successor(mid, rest) != c.successor(x, m):
                        report.add(f"decomposition of {m!r} at {x!r} through {part!r} disagrees")
    return report


def validate_cts_morphism(f: CtsMorphism, src: Cts, dst: Cts, max_word: int) -> ValidationReport:
    report = ValidationReport("cts morphism")
    if f.sigma.get(src.initial) != dst.initial:
        report.add("initial state not preserved")
    for e in sorted_by_key(src.events):
        expected = f.label_image(src.labeling[e])
        image = f.tau.get(e)
        got = dst.labeling[image] if image is not None else STAR
        if got != expected:
            report.add(f"label square fails at {e!r}: {got!r} != {expected!r}")
    events = sorted_by_key(src.events)
    states = sorted_by_key(src.states)
    for size in range(max_word + 1):
        for combo in itertools.combinations_with_replacement(events, size):
            m = multiset(combo)
            for x in states:
                if not src.enabled(x, m):
                    continue
                image = multiset(f.tau[e] for e in m if e in f.tau)
                y = f.sigma.get(x)
                if y is None or not dst.enabled(y, image):
                    report.add(f"image of enabled {m!r} at {x!r} not enabled at {y!r}")
                    continue
                src_succ = src.successor(x, m)
                if src_succ is not None and f.sigma.get(src_succ) != dst.successor(y, image):
                    report.add(f"successor square fails for {m!r} at {x!r}")
    return report


# ---------------------------------------------------------------------------
# CTS -> HDA
# ---------------------------------------------------------------------------

def enabled_cells_by_dim(c: Cts, max_dim: int) -> dict:
    """Enabled star-free words per length, grown by extending enabled
    prefixes (every prefix of an enabled word is enabled, so this is
    complete without scanning the full word space)."""
    events = sorted_by_key(c.events)
    cells = {0: [(x, ()) for x in sorted_by_key(c.states)]}
    for n in range(1, max_dim + 1):
        layer = []
        for (x, w) in cells[n - 1]:
            for e in events:
                w2 = w + (e,)
                if c.enabled(x, multiset(w2)):
                    layer.append((x, w2))
        cells[n] = layer
    return cells


def cts_to_hda(c: Cts, max_dim: int, truncate_cells: bool = False) -> Hda:
    """The automaton with one n-cell per enabled star-free word of length n.

    Negative faces drop a letter; positive faces additionally advance the
    state through that letter.  Transpositions permute adjacent letters.
    Raises DimensionCapExceeded when an enabled word longer than ``max_dim``
    exists, unless ``truncate_cells`` asks for the truncated automaton.
    """
    cells_by_dim = enabled_cells_by_dim(c, max_dim + 1)
    if cells_by_dim.pop(max_dim + 1):
        if not truncate_cells:
            raise DimensionCapExceeded(
                f"enabled words longer than {max_dim} exist; pass truncate_cells=True to drop them")

    def face_key(n, key, i, sign):
        x, w = key
        rest = w[:i] + w[i + 1:]
        if sign == "-":
            return (x, rest)
        return (c.delta[(x, w[i])], rest)

    def transpose_key(n, key, i):
        x, w = key
        swapped = list(w)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        return (x, tuple(swapped))

    complex_, keys = index_complex(cells_by_dim, face_key, transpose_key)
    labeling = {
        cell: tuple(c.labeling[e] for e in key[1]) for cell, key in keys.items()
    }
    by_key = {key: cell for cell, key in keys.items()}
    return Hda(
        complex=complex_,
        alphabet=tuple(sorted_by_key(set(c.alphabet))),
        labeling=labeling,
        initial=by_key[(c.initial, ())],
        cell_keys=keys,
    )


def cts_morphism_to_hda_morphism(f: CtsMorphism, src_hda: Hda, dst_hda: Hda):
    """Cell map (x, w) -> (sigma x, tau w); dropped letters become collapsed
    positions of the image cell."""
    from .functors import HdaMorphism  # deferred: functors depends on this module

    dst_by_key = dst_hda.cells_by_key()
    cell_map = {}
    for cell in src_hda.skeleton.all_cells():
        x, w = src_hda.cell_keys[cell]
        image_word = tuple(f.tau.get(e) for e in w)
        stars = tuple(i for i, e in enumerate(image_word) if e is None)
        kept = tuple(e for e in image_word if e is not None)
        state = f.sigma[x]
        # advance past dropped letters: their steps collapse in the image,
        # but the base cell sits at the image of the source state
        base_key = (state, kept)
        if base_key not in dst_by_key:
            raise KeyError(f"image cell {base_key!r} missing in the target automaton")
        base = dst_by_key[base_key]
        cell_map[cell] = DegeneracyWitness(base, stars)
    lam = {a: f.label_image(a) for a in src_hda.alphabet}
    return HdaMorphism(cell_map=cell_map, label_map=lam)


# ---------------------------------------------------------------------------
# Instantiations
# ---------------------------------------------------------------------------

def es_to_cts(es: EventStructure) -> Cts:
    """States are configurations; a multiset is enabled when it is a set of
    pairwise compatible events, each individually enabled."""
    configs = configurations(es)

    delta = {}
    for x in configs:
        for e in es.events:
            if es_enabled(es, x, e):
                delta[(x, e)] = x | {e}

    def enabled(x, m: Multiset) -> bool:
        if x not in configs:
            return False
        if len(set(m)) != len(m):
            return False
        for e in m:
            if not es_enabled(es, x, e):
                return False
        for a, b in itertools.combinations(m, 2):
            if (a, b) in es.conflict:
                return False
        return True

    return Cts(
        states=frozenset(configs),
        initial=frozenset(),
        events=es.events,
        alphabet=tuple(sorted_by_key(es.events)),
        labeling={e: e for e in es.events},
        delta=delta,
        enabled=enabled,
    )


def pn_to_cts(n: PetriNet, max_states: int) -> Cts:
    """States are the reachable markings; a multiset is enabled when the
    marking covers the sum of its preconditions."""
    graph = reachable_markings(n, max_states)

    delta = {}
    for m in graph.markings:
        for e in n.events:
            if m >= n.pre[e]:
                delta[(m, e)] = (m - n.pre[e]) + n.post[e]

    def enabled(m, ms: Multiset) -> bool:
        if m not in graph.markings:
            return False
        total = None
        for e in ms:
            total = n.pre[e] if total is None else total + n.pre[e]
        return total is None or m >= total

    return Cts(
        states=graph.markings,
        initial=n.m0,
        events=n.events,
        alphabet=tuple(sorted_by_key(n.events)),
        labeling={e: e for e in n.events},
        delta=delta,
        enabled=enabled,
    )
