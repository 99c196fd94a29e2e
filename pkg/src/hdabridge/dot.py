"""DOT rendering of the 1-skeleton with optional square annotations.

Output ordering is fully sorted, so a fixed input always produces the
same bytes.
"""

from __future__ import annotations

from .cubical import Hda, zero_source, zero_target
from .util import canon_key, sorted_by_key

DIM2_STYLES = ("diagonals", "clusters", "none")


def _quote(value) -> str:
    return '"' + str(value).replace('"', '\\"') + '"'


def hda_to_dot(h: Hda, dim2: str = "diagonals") -> str:
    """Vertices and labeled edges as a digraph; the initial state is
    double-circled.  Squares appear once per unordered pair, either as a
    dashed diagonal edge or as annotation clusters."""
    if dim2 not in DIM2_STYLES:
        raise ValueError(f"dim2 style must be one of {DIM2_STYLES}")
    lines = ["digraph model {"]
    names = {v: h.key(v) for v in h.cells(0)}
    for v in sorted_by_key(h.cells(0)):
        shape = "doublecircle" if v == h.initial else "circle"
        lines.append(f"  {_quote(names[v])} [shape={shape}];")
    edge_lines = []
    for e in h.cells(1):
        src = names[h.skeleton.face(e, 0, "-")]
        tgt = names[h.skeleton.face(e, 0, "+")]
        (label,) = h.labeling[e]
        edge_lines.append(f"  {_quote(src)} -> {_quote(tgt)} [label={_quote(label)}];")
    lines.extend(sorted(edge_lines))

    if dim2 != "none" and h.max_dim >= 2:
        seen = set()
        squares = []
        for cell in h.cells(2):
            orbit = frozenset({cell, h.complex.transpose(cell, 0)})
            if orbit in seen:
                continue
            seen.add(orbit)
            a, b = sorted(h.labeling[cell][:2], key=canon_key)
            src = names[zero_source(h.complex, cell)]
            tgt = names[zero_target(h.complex, cell)]
            squares.append((src, tgt, a, b))
        for i, (src, tgt, a, b) in enumerate(sorted(squares, key=canon_key)):
            if dim2 == "diagonals":
                lines.append(
                    f"  {_quote(src)} -> {_quote(tgt)} "
                    f"[style=dashed, dir=none, label={_quote(a + '||' + b)}];")
            else:
                lines.append(f"  subgraph cluster_square_{i} {{")
                lines.append(f"    label={_quote(a + '||' + b + ' at ' + str(src))};")
                lines.append(f"    {_quote(f'square_{i}')} [shape=point];")
                lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
