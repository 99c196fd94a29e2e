"""JSON documents for every model kind.

Every document carries ``kind`` and ``format_version``.  Printing is
canonical (sorted keys and lists), so printing after parsing returns the
same bytes, and parsing after printing returns an equal model.

Schemas (see docs/formats.md for the worked examples):

* ``ts``:   states, initial, events, trans (triples).
* ``lts``:  as ts, plus labels and a total labeling.
* ``acr``:  as ts, plus indep (state, event, event triples; both orders).
* ``es``:   events, causality (strict pairs of the full order), conflict
            (unordered pairs, listed once).
* ``pnet``: places, m0, events, pre, post; markings are place -> count
            objects with zero entries omitted.
* ``hda``:  alphabet, dims, cells per dimension, faces keyed "n,i,sign",
            transpositions keyed "n,i" under "sym", labels per dimension,
            and the initial 0-cell index.  Labels of listed cells never
            use the idle symbol; idle loops are degenerate and implicit.
            A 1-cell labeled by the idle symbol alone is normalized away
            when it is an unreferenced self-loop.
"""

from __future__ import annotations

import json

from .cubical import (
    STAR,
    CellId,
    Hda,
    PrecubicalComplex,
    SymmetricCubicalComplex,
)
from .errors import ParseError, UnknownKind
from .models import (
    Acr,
    EventStructure,
    LabeledTransitionSystem,
    Marking,
    PetriNet,
    TransitionSystem,
)
from .util import canon_key, sorted_by_key

FORMAT_VERSION = 1

KINDS = ("ts", "lts", "acr", "es", "pnet", "hda")


# ---------------------------------------------------------------------------
# model -> document
# ---------------------------------------------------------------------------

def _marking_obj(m: Marking) -> dict:
    return {str(p): n for p, n in m.items}


def _scalarize(values) -> dict:
    """Deterministic JSON-scalar names for state-like values.  Strings and
    ints pass through; anything else (cell ids, markings from in-process
    translations) is renamed q0, q1, ... in canonical order."""
    if all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in values):
        return {v: v for v in values}
    return {v: f"q{i}" for i, v in enumerate(sorted_by_key(values))}


def _ts_body(t: TransitionSystem, rename=None) -> dict:
    rename = rename if rename is not None else _scalarize(t.states)
    return {
        "states": sorted_by_key(rename[s] for s in t.states),
        "initial": rename[t.initial],
        "events": sorted_by_key(t.events),
        "trans": sorted_by_key([[rename[s], e, rename[s2]] for (s, e, s2) in t.trans]),
    }


def model_to_document(kind: str, model) -> dict:
    if kind == "ts":
        body = _ts_body(model)
    elif kind == "lts":
        body = _ts_body(model.ts)
        body["labels"] = sorted_by_key(model.labels)
        body["labeling"] = {str(e): model.labeling[e] for e in sorted_by_key(model.ts.events)}
    elif kind == "acr":
        rename = _scalarize(model.ts.states)
        body = _ts_body(model.ts, rename)
        body["indep"] = sorted_by_key([[rename[s], a, b] for (s, a, b) in model.indep])
    elif kind == "es":
        body = {
            "events": sorted_by_key(model.events),
            "causality": sorted_by_key([[a, b] for (a, b) in model.leq if a != b]),
            "conflict": sorted_by_key(
                [[a, b] for (a, b) in model.conflict if canon_key(a) < canon_key(b)]),
        }
    elif kind == "pnet":
        for p in model.places:
            if not isinstance(p, str):
                raise ParseError(f"net documents need string place names, got {p!r}")
        body = {
            "places": sorted_by_key(model.places),
            "m0": _marking_obj(model.m0),
            "events": sorted_by_key(model.events),
            "pre": {str(e): _marking_obj(model.pre[e]) for e in sorted_by_key(model.events)},
            "post": {str(e): _marking_obj(model.post[e]) for e in sorted_by_key(model.events)},
        }
    elif kind == "hda":
        sk = model.skeleton
        body = {
            "alphabet": sorted_by_key(model.alphabet),
            "dims": list(range(sk.max_dim + 1)),
            "cells": {str(n): sorted(sk.cells.get(n, ())) for n in range(sk.max_dim + 1)},
            "faces": {
                f"{n},{i},{sign}": {str(idx): tgt for idx, tgt in sorted(table.items())}
                for (n, i, sign), table in sorted(sk.faces.items())
            },
            "sym": {
                f"{n},{i}": {str(idx): tgt for idx, tgt in sorted(table.items())}
                for (n, i), table in sorted(model.complex.transpositions.items())
            },
            "labels": {
                str(n): {
                    str(c.index): list(model.labeling[c])
                    for c in sk.cell_ids(n)
                }
                for n in range(1, sk.max_dim + 1)
            },
            "initial": model.initial.index,
        }
    else:
        raise UnknownKind(f"cannot serialize kind {kind!r}")
    return {"kind": kind, "format_version": FORMAT_VERSION, **body}


def print_document(kind: str, model) -> str:
    return json.dumps(model_to_document(kind, model), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# document -> model
# ---------------------------------------------------------------------------

def _need(doc: dict, field: str):
    if field not in doc:
        raise ParseError(f"missing field {field!r}")
    return doc[field]


def _parse_ts(doc: dict) -> TransitionSystem:
    trans = [_triple(t, "trans") for t in _need(doc, "trans")]
    return TransitionSystem(
        states=frozenset(_need(doc, "states")),
        initial=_need(doc, "initial"),
        events=frozenset(_need(doc, "events")),
        trans=frozenset(trans),
    )


def _triple(value, field: str) -> tuple:
    if not isinstance(value, list) or len(value) != 3:
        raise ParseError(f"{field} entries must be triples, got {value!r}")
    return tuple(value)


def _parse_marking(obj, what: str) -> Marking:
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be an object")
    try:
        return Marking.of(obj)
    except (TypeError, ValueError) as err:
        raise ParseError(f"bad {what}: {err}") from err


def document_to_model(doc: dict):
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    kind = _need(doc, "kind")
    if kind not in KINDS:
        raise UnknownKind(f"unknown kind {kind!r}")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}")
    if kind == "ts":
        return kind, _parse_ts(doc)
    if kind == "lts":
        ts = _parse_ts(doc)
        labeling = {e: l for e, l in _need(doc, "labeling").items()}
        return kind, LabeledTransitionSystem(
            ts=ts, labels=frozenset(_need(doc, "labels")), labeling=labeling)
    if kind == "acr":
        ts = _parse_ts(doc)
        indep = {_triple(t, "indep") for t in _need(doc, "indep")}
        indep |= {(s, b, a) for (s, a, b) in indep}
        return kind, Acr(ts=ts, indep=frozenset(indep))
    if kind == "es":
        events = frozenset(_need(doc, "events"))
        leq = {(e, e) for e in events}
        for pair in _need(doc, "causality"):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"causality entries must be pairs, got {pair!r}")
            leq.add(tuple(pair))
        conflict = set()
        for pair in _need(doc, "conflict"):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"conflict entries must be pairs, got {pair!r}")
            conflict.add(tuple(pair))
            conflict.add((pair[1], pair[0]))
        return kind, EventStructure(events=events, leq=frozenset(leq),
                                    conflict=frozenset(conflict))
    if kind == "pnet":
        events = list(_need(doc, "events"))
        pre_doc, post_doc = _need(doc, "pre"), _need(doc, "post")
        return kind, PetriNet(
            places=frozenset(_need(doc, "places")),
            m0=_parse_marking(_need(doc, "m0"), "m0"),
            events=frozenset(events),
            pre={e: _parse_marking(pre_doc.get(str(e), {}), f"pre[{e}]") for e in events},
            post={e: _parse_marking(post_doc.get(str(e), {}), f"post[{e}]") for e in events},
        )
    return kind, _parse_hda(doc)


def _parse_hda(doc: dict) -> Hda:
    try:
        cells = {int(n): tuple(sorted(ids)) for n, ids in _need(doc, "cells").items()}
    except (TypeError, ValueError) as err:
        raise ParseError(f"bad cells table: {err}") from err
    max_dim = max(cells, default=0)
    faces = {}
    for key, table in _need(doc, "faces").items():
        try:
            n, i, sign = key.split(",")
            faces[(int(n), int(i), sign)] = {int(a): int(b) for a, b in table.items()}
        except ValueError as err:
            raise ParseError(f"bad face key {key!r}: {err}") from err
        if sign not in ("-", "+"):
            raise ParseError(f"bad face sign in key {key!r}")
    sym = {}
    for key, table in doc.get("sym", {}).items():
        try:
            n, i = key.split(",")
            sym[(int(n), int(i))] = {int(a): int(b) for a, b in table.items()}
        except ValueError as err:
            raise ParseError(f"bad sym key {key!r}: {err}") from err
    labels_doc = doc.get("labels", {})
    labeling = {}
    for n in range(max_dim + 1):
        for idx in cells.get(n, ()):
            if n == 0:
                labeling[CellId(0, idx)] = ()
                continue
            table = labels_doc.get(str(n), {})
            if str(idx) not in table:
                raise ParseError(f"cell ({n},{idx}) has no label")
            labeling[CellId(n, idx)] = tuple(table[str(idx)])
    initial = CellId(0, int(_need(doc, "initial")))

    # ingestion normalization: a lone idle-labeled self-loop denotes the
    # degenerate edge over its endpoint and is dropped; any other idle
    # occurrence in a listed label is an error
    droppable = set()
    for idx in cells.get(1, ()):
        word = labeling[CellId(1, idx)]
        if STAR in word:
            if word != (STAR,):
                raise ParseError(f"cell (1,{idx}) mixes idle and ordinary labels")
            src = faces.get((1, 0, "-"), {}).get(idx)
            tgt = faces.get((1, 0, "+"), {}).get(idx)
            if src != tgt:
                raise ParseError(f"idle-labeled cell (1,{idx}) is not a self-loop")
            droppable.add(idx)
    for n in range(2, max_dim + 1):
        for idx in cells.get(n, ()):
            if STAR in labeling[CellId(n, idx)]:
                raise ParseError(
                    f"cell ({n},{idx}) lists an idle label; degeneracies are implicit")
            for i in range(n):
                for sign in ("-", "+"):
                    if faces.get((n, i, sign), {}).get(idx) in droppable and n - 1 == 1:
                        raise ParseError(
                            f"cell ({n},{idx}) has an idle-labeled face; "
                            "replace it with the degenerate edge")
    if droppable:
        cells[1] = tuple(i for i in cells.get(1, ()) if i not in droppable)
        for sign in ("-", "+"):
            table = faces.get((1, 0, sign))
            if table:
                faces[(1, 0, sign)] = {a: b for a, b in table.items() if a not in droppable}
        for idx in droppable:
            labeling.pop(CellId(1, idx))

    alphabet = tuple(sorted_by_key(set(_need(doc, "alphabet")) - {STAR}))
    complex_ = SymmetricCubicalComplex(
        skeleton=PrecubicalComplex(cells=cells, faces=faces, max_dim=max_dim),
        transpositions=sym,
    )
    return Hda(complex=complex_, alphabet=alphabet, labeling=labeling, initial=initial)


def parse_document(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"not valid JSON: {err}") from err
    return document_to_model(doc)
