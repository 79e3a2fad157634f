"""JSON structure documents.

A document lists the carrier by name and gives the tables row by row::

    {"name": "...", "m": 2, "n": 2, "elements": ["0", "1", "u"],
     "zero": "0", "one": "1",
     "f": [{"args": ["1", "1"], "value": ["0", "1", "u"]}, ...],
     "g": [{"args": ["u", "u"], "value": "0"}, ...]}

Rows may be given once per multiset of arguments; permutations are filled
in on load. Redundant rows must agree. Documents written by this module use
canonical names ``a0 .. a{N-1}`` and keep the original names in
``name_map``.
"""
import json
from itertools import permutations
from pathlib import Path

import numpy as np

from .core import FiniteHyperring, InputError, mask_of, members

FORMAT_VERSION = 1


def _require(doc, key, kind):
    if key not in doc:
        raise InputError(f"structure document lacks field {key!r}")
    val = doc[key]
    if not isinstance(val, kind):
        raise InputError(f"field {key!r} has the wrong type")
    return val


def structure_from_doc(doc):
    if not isinstance(doc, dict):
        raise InputError("structure document must be a JSON object")
    name = str(doc.get("name", "K"))
    m = _require(doc, "m", int)
    n = _require(doc, "n", int)
    elems = _require(doc, "elements", list)
    if not elems or len(set(map(str, elems))) != len(elems):
        raise InputError("elements must be a nonempty list of distinct names")
    elems = [str(x) for x in elems]
    idx = {x: i for i, x in enumerate(elems)}

    def lookup(x):
        try:
            return idx[str(x)]
        except KeyError:
            raise InputError(f"unknown element {x!r}") from None

    k = len(elems)
    if k > 64:
        raise InputError(f"carrier of {k} elements exceeds 64")
    if m < 2 or n < 2:
        raise InputError("arities must be >= 2")
    f = np.zeros((k,) * m, dtype=np.uint64)
    have_f = np.zeros((k,) * m, dtype=bool)
    seen = {}
    for row in _require(doc, "f", list):
        args = tuple(lookup(x) for x in row.get("args", ()))
        if len(args) != m:
            raise InputError(f"f row {row.get('args')} does not have {m} arguments")
        val = row.get("value")
        if not isinstance(val, list) or not val:
            raise InputError(f"f row {row.get('args')} needs a nonempty list value")
        v = mask_of(lookup(x) for x in val)
        for perm in set(permutations(args)):
            if perm in seen and seen[perm] != v:
                raise InputError(f"conflicting f rows for {[elems[i] for i in perm]}")
            seen[perm] = v
            f[perm] = v
            have_f[perm] = True
    if not have_f.all():
        miss = tuple(int(x) for x in np.argwhere(~have_f)[0])
        raise InputError(f"f has no row for {[elems[i] for i in miss]}")
    g = np.zeros((k,) * n, dtype=np.int64)
    have_g = np.zeros((k,) * n, dtype=bool)
    seen = {}
    for row in _require(doc, "g", list):
        args = tuple(lookup(x) for x in row.get("args", ()))
        if len(args) != n:
            raise InputError(f"g row {row.get('args')} does not have {n} arguments")
        v = lookup(row.get("value"))
        for perm in set(permutations(args)):
            if perm in seen and seen[perm] != v:
                raise InputError(f"conflicting g rows for {[elems[i] for i in perm]}")
            seen[perm] = v
            g[perm] = v
            have_g[perm] = True
    if not have_g.all():
        miss = tuple(int(x) for x in np.argwhere(~have_g)[0])
        raise InputError(f"g has no row for {[elems[i] for i in miss]}")
    h = FiniteHyperring(m, n, f, g, lookup(_require(doc, "zero", str)), lookup(_require(doc, "one", str)),
                        names=elems, name=name)
    h.name_map = dict(doc.get("name_map") or {})
    return h


def load_structure(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from None
    return structure_from_doc(doc)


def structure_to_doc(h, canonical=True):
    """Document with one row per argument multiset. With ``canonical`` the
    elements are renamed a0..a{N-1} and ``name_map`` records the originals."""
    names = [f"a{i}" for i in range(h.size)] if canonical else list(h.names)
    f_rows, g_rows = [], []
    for t in np.ndindex(*(h.size,) * h.m):
        if list(t) == sorted(t):
            f_rows.append({"args": [names[i] for i in t], "value": [names[i] for i in members(int(h.F[t]))]})
    for t in np.ndindex(*(h.size,) * h.n):
        if list(t) == sorted(t):
            g_rows.append({"args": [names[i] for i in t], "value": names[int(h.G[t])]})
    doc = {
        "format_version": FORMAT_VERSION,
        "name": h.name,
        "m": h.m,
        "n": h.n,
        "elements": names,
        "zero": names[h.zero],
        "one": names[h.one],
        "f": f_rows,
        "g": g_rows,
    }
    if canonical:
        prior = getattr(h, "name_map", None) or {}
        doc["name_map"] = {names[i]: prior.get(h.names[i], h.names[i]) for i in range(h.size)}
    return doc


def dump_structure(h, path=None, canonical=True):
    text = json.dumps(structure_to_doc(h, canonical), indent=1, ensure_ascii=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def same_tables(h1, h2):
    """Identical arities, distinguished elements and tables (names ignored)."""
    return (
        (h1.m, h1.n, h1.size, h1.zero, h1.one) == (h2.m, h2.n, h2.size, h2.zero, h2.one)
        and np.array_equal(h1.f, h2.f)
        and np.array_equal(h1.g, h2.g)
    )
