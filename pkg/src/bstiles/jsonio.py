"""JSON encodings of tilesets and patches, plus NUM/DEN text parsing.

Inside tileset files rationals are {"num": p, "den": q} objects, integer labels
stay plain integers and coloured side labels are [rational, colour] pairs.
Scalar command-line values and reports use "p/q" strings.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .group import CanonicalForm, GroupParams, canonical_form, format_word, parse_word
from .multsys import LinearPiece
from .wang import Patch, Tileset, WangTile

_RATIONAL = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """'p/q' or an integer; decimals are refused to keep inputs exact."""
    mt = _RATIONAL.match(text)
    if mt is None:
        raise ValueError(f"expected NUM/DEN, got {text!r}")
    den = int(mt.group(2)) if mt.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(mt.group(1)), den)


def rational_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


_TERM = re.compile(r"([+-]?)\s*(\d+)(?:\s*/\s*(\d+))?")


def _sum_expr(text: str) -> Fraction:
    text = text.strip()
    pos, total = 0, Fraction(0)
    if not text:
        raise ValueError("empty interval bound")
    while pos < len(text):
        mt = _TERM.match(text, pos)
        if mt is None or mt.end() == pos:
            raise ValueError(f"cannot read interval bound {text!r}")
        if pos > 0 and not mt.group(1):
            raise ValueError(f"missing operator in {text!r}")
        val = Fraction(int(mt.group(2)), int(mt.group(3)) if mt.group(3) else 1)
        total += -val if mt.group(1) == "-" else val
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return total


def parse_interval(text: str) -> tuple[Fraction, Fraction]:
    """'a+d1/e1,a+1-d2/e2' (any sums of rationals) -> (lo, hi)."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"interval needs two comma-separated bounds, got {text!r}")
    lo, hi = _sum_expr(parts[0]), _sum_expr(parts[1])
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    return lo, hi


def piece_from_text(q: str, interval: str) -> LinearPiece:
    lo, hi = parse_interval(interval)
    return LinearPiece.from_bounds(parse_rational(q), lo, hi)


# --- labels ---------------------------------------------------------------

def label_to_json(v):
    if isinstance(v, tuple):
        return [label_to_json(x) for x in v]
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    raise TypeError(f"cannot encode label {v!r}")


def label_from_json(v):
    if isinstance(v, list):
        return tuple(label_from_json(x) for x in v)
    if isinstance(v, dict):
        return Fraction(int(v["num"]), int(v["den"]))
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    raise ValueError(f"cannot decode label {v!r}")


def tile_to_json(t: WangTile) -> dict:
    return {"top": [label_to_json(v) for v in t.top], "left": label_to_json(t.left),
            "right": label_to_json(t.right), "bottom": [label_to_json(v) for v in t.bottom]}


def tile_from_json(d: dict) -> WangTile:
    return WangTile(tuple(label_from_json(v) for v in d["top"]), label_from_json(d["left"]),
                    label_from_json(d["right"]), tuple(label_from_json(v) for v in d["bottom"]))


def tileset_to_json(ts: Tileset) -> dict:
    return {"m": ts.params.m, "n": ts.params.n, "tiles": [tile_to_json(t) for t in ts.tiles]}


def tileset_from_json(d: dict) -> Tileset:
    return Tileset(GroupParams(int(d["m"]), int(d["n"])), tuple(tile_from_json(t) for t in d["tiles"]))


def constraint_to_json(c) -> dict:
    return {"color": c.color, "length": c.length, "count": c.count, "label": c.label}


def constraint_from_json(d: dict):
    from .multiplying import WindowConstraint
    return WindowConstraint(int(d["color"]), int(d["length"]), int(d["count"]), int(d["label"]))


def patch_to_json(x: Patch, tileset_ref: str | None = None, constraints=()) -> dict:
    d = {"m": x.params.m, "n": x.params.n}
    if tileset_ref is None:
        d["tileset"] = tileset_to_json(x.tileset)
    else:
        d["tileset_ref"] = tileset_ref
    d["cells"] = [{"word": format_word(g.word()), "tile_index": i}
                  for g, i in sorted(x.cells.items())]
    if constraints:
        d["constraints"] = [constraint_to_json(c) for c in constraints]
    return d


def patch_from_json(d: dict, base_dir: str | Path = ".") -> tuple[Patch, list]:
    """(patch, window constraints); ``tileset_ref`` is resolved relative to base_dir."""
    if "tileset" in d:
        ts = tileset_from_json(d["tileset"])
    elif "tileset_ref" in d:
        ref = Path(base_dir) / d["tileset_ref"]
        ts = tileset_from_json(json.loads(ref.read_text()))
    else:
        raise ValueError("patch has neither 'tileset' nor 'tileset_ref'")
    p = ts.params
    if "m" in d and (int(d["m"]), int(d["n"])) != (p.m, p.n):
        raise ValueError(f"patch is on BS({d['m']},{d['n']}) but its tileset is on {p}")
    cells: dict[CanonicalForm, int] = {}
    for c in d["cells"]:
        g = canonical_form(parse_word(c["word"]), p)
        if g in cells:
            raise ValueError(f"cell {c['word']} appears twice")
        cells[g] = int(c["tile_index"])
    constraints = [constraint_from_json(c) for c in d.get("constraints", [])]
    return Patch(ts, cells), constraints


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False)
