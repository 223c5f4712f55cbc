"""Bichrome string diagrams as words of elementary slices.

A diagram is read bottom to top.  Every boundary point and strand carries
an orientation sign (+1 points up the page, -1 down) and a color: either
``RED`` (no module attached; these are the surgery strands) or the name of
a module, resolved against a concrete algebra only when a numeric question
is asked.  Positions are 0-based columns counted from the left.

The two bichrome coupons tie red strands to the coend: ``BCouponI`` turns
an adjacent red pair into one "L"-colored leg, ``BCouponJ`` turns an
"E"-colored leg into a red pair.  Smoothing them (cap, cup) recovers the
plain red curve, which is what the crossing bookkeeping below counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .exact import Cyclo, CyclotomicField, FieldMatrix
from .hopf import RibbonHopfAlgebra, compute_integrals
from .rep import (HModule, decompose_regular, dual_module, is_projective,
                  projective_cover_of_unit, regular_module, simple_modules,
                  trivial_module)

RED = None

SCHEMA = "diagram/v1"

_KINDS = ("Id", "Cup", "Cap", "CrossPos", "CrossNeg",
          "Coupon", "BCouponI", "BCouponJ")


@dataclass(frozen=True)
class Slice:
    kind: str
    pos: int = 0
    chirality: str = "left"
    color: str | None = RED
    morphism: str = ""
    n_in: int = 0
    n_out: int = 0


def cup(pos, chirality="left", color=RED) -> Slice:
    return Slice("Cup", pos, chirality, color)


def cap(pos, chirality="left", color=RED) -> Slice:
    return Slice("Cap", pos, chirality, color)


def cross_pos(pos) -> Slice:
    return Slice("CrossPos", pos)


def cross_neg(pos) -> Slice:
    return Slice("CrossNeg", pos)


def coupon(pos, morphism, n_in, n_out) -> Slice:
    return Slice("Coupon", pos, morphism=morphism, n_in=n_in, n_out=n_out)


def bcoupon_i(pos) -> Slice:
    return Slice("BCouponI", pos)


def bcoupon_j(pos) -> Slice:
    return Slice("BCouponJ", pos)


@dataclass(frozen=True)
class MorphismEntry:
    """Legs and matrix of a coupon.  All legs must be blue."""
    source: tuple            # ((sign, color), ...) read left to right, below
    target: tuple            # same, above
    matrix: FieldMatrix      # rows: target effective basis, cols: source


@dataclass(frozen=True)
class BichromeDiagram:
    bottom: tuple            # ((sign, color), ...)
    top: tuple
    slices: tuple
    morphisms: dict = field(default_factory=dict)


def diagram(bottom, top, slices, morphisms=None) -> BichromeDiagram:
    """Normalizing constructor: accepts lists and pairs, stores tuples."""
    return BichromeDiagram(
        bottom=tuple((int(s), c) for s, c in bottom),
        top=tuple((int(s), c) for s, c in top),
        slices=tuple(slices),
        morphisms=dict(morphisms or {}))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _fmt(pattern) -> str:
    bits = []
    for s, c in pattern:
        arrow = "+" if s > 0 else "-"
        bits.append(f"{arrow}{'red' if c is RED else c}")
    return "[" + " ".join(bits) + "]"


def _check_point(where, point):
    try:
        s, c = point
    except (TypeError, ValueError):
        raise ValueError(f"{where}: boundary point {point!r} is not a pair")
    if s not in (1, -1):
        raise ValueError(f"{where}: orientation sign must be +1 or -1, got {s!r}")
    if c is not RED and not isinstance(c, str):
        raise ValueError(f"{where}: color must be RED or a module name, got {c!r}")


def _cup_pattern(chirality, color):
    if chirality == "left":
        return ((1, color), (-1, color))
    return ((-1, color), (1, color))


def validate(d: BichromeDiagram) -> tuple:
    """Type-check the word; return the strand pattern at every level.

    Level i is the pattern below slice i; the last level must equal the
    declared top boundary.  Raises ValueError naming the offending slice.
    """
    for p in d.bottom:
        _check_point("bottom boundary", p)
    for p in d.top:
        _check_point("top boundary", p)
    pat = list(d.bottom)
    levels = [tuple(pat)]
    for i, s in enumerate(d.slices):
        w = f"slice {i}"
        if s.kind not in _KINDS:
            raise ValueError(f"{w}: unknown kind {s.kind!r}")
        if s.kind == "Id":
            levels.append(tuple(pat))
            continue
        if s.pos < 0:
            raise ValueError(f"{w}: negative position {s.pos}")
        if s.kind == "Cup":
            if s.chirality not in ("left", "right"):
                raise ValueError(f"{w}: bad chirality {s.chirality!r}")
            if s.pos > len(pat):
                raise ValueError(f"{w}: position {s.pos} beyond width {len(pat)}")
            pat[s.pos:s.pos] = _cup_pattern(s.chirality, s.color)
        elif s.kind == "Cap":
            if s.chirality not in ("left", "right"):
                raise ValueError(f"{w}: bad chirality {s.chirality!r}")
            if s.pos + 2 > len(pat):
                raise ValueError(f"{w}: cap at {s.pos} needs two strands, "
                                 f"pattern is {_fmt(pat)}")
            want = _cup_pattern(s.chirality, s.color)
            got = tuple(pat[s.pos:s.pos + 2])
            if got != want:
                raise ValueError(f"{w}: cap expects {_fmt(want)} at {s.pos}, "
                                 f"found {_fmt(got)}")
            del pat[s.pos:s.pos + 2]
        elif s.kind in ("CrossPos", "CrossNeg"):
            if s.pos + 2 > len(pat):
                raise ValueError(f"{w}: crossing at {s.pos} needs two strands, "
                                 f"pattern is {_fmt(pat)}")
            pat[s.pos], pat[s.pos + 1] = pat[s.pos + 1], pat[s.pos]
        elif s.kind == "Coupon":
            entry = d.morphisms.get(s.morphism)
            if entry is None:
                raise ValueError(f"{w}: unknown morphism {s.morphism!r}")
            if len(entry.source) != s.n_in or len(entry.target) != s.n_out:
                raise ValueError(f"{w}: coupon legs ({s.n_in}, {s.n_out}) do not "
                                 f"match morphism {s.morphism!r} with "
                                 f"({len(entry.source)}, {len(entry.target)})")
            for leg in entry.source + entry.target:
                if leg[1] is RED:
                    raise ValueError(f"{w}: coupon {s.morphism!r} has a red leg; "
                                     "coupon legs must carry modules")
            if s.pos + s.n_in > len(pat):
                raise ValueError(f"{w}: coupon at {s.pos} needs {s.n_in} strands, "
                                 f"pattern is {_fmt(pat)}")
            got = tuple(pat[s.pos:s.pos + s.n_in])
            if got != tuple(entry.source):
                raise ValueError(f"{w}: coupon expects {_fmt(entry.source)} at "
                                 f"{s.pos}, found {_fmt(got)}")
            pat[s.pos:s.pos + s.n_in] = list(entry.target)
        elif s.kind == "BCouponI":
            want = ((-1, RED), (1, RED))
            got = tuple(pat[s.pos:s.pos + 2])
            if got != want:
                raise ValueError(f"{w}: BCouponI expects {_fmt(want)} at {s.pos}, "
                                 f"found {_fmt(got)}")
            pat[s.pos:s.pos + 2] = [(1, "L")]
        elif s.kind == "BCouponJ":
            got = tuple(pat[s.pos:s.pos + 1])
            if got != ((1, "E"),):
                raise ValueError(f"{w}: BCouponJ expects [+E] at {s.pos}, "
                                 f"found {_fmt(got)}")
            pat[s.pos:s.pos + 1] = [(1, RED), (-1, RED)]
        levels.append(tuple(pat))
    if tuple(pat) != tuple(d.top):
        raise ValueError(f"top boundary: final pattern {_fmt(pat)} does not "
                         f"match declared top {_fmt(d.top)}")
    return tuple(levels)


def is_closed(d: BichromeDiagram) -> bool:
    return not d.bottom and not d.top


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _point_doc(point):
    s, c = point
    return ["+" if s > 0 else "-",
            {"red": True} if c is RED else {"module": c}]


def _point_from_doc(where, doc):
    if (not isinstance(doc, list) or len(doc) != 2
            or doc[0] not in ("+", "-") or not isinstance(doc[1], dict)):
        raise ValueError(f"{where}: malformed boundary point {doc!r}")
    sign = 1 if doc[0] == "+" else -1
    if doc[1] == {"red": True}:
        return (sign, RED)
    name = doc[1].get("module")
    if not isinstance(name, str):
        raise ValueError(f"{where}: malformed color {doc[1]!r}")
    return (sign, name)


def _matrix_doc(m: FieldMatrix) -> dict:
    ents = []
    zero = m.field.zero
    for i in range(m.nrows):
        for j in range(m.ncols):
            v = m.get(i, j)
            if v != zero:
                ents.append([i, j, v.to_json()])
    return {"field": m.field.n, "nrows": m.nrows, "ncols": m.ncols,
            "entries": ents}


def _matrix_from_doc(where, doc) -> FieldMatrix:
    try:
        f = CyclotomicField(int(doc["field"]))
        m = FieldMatrix.zeros(f, int(doc["nrows"]), int(doc["ncols"]))
        for i, j, v in doc["entries"]:
            m.set(int(i), int(j), Cyclo.from_json(v))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"{where}: malformed matrix ({exc})")
    return m


def serialize(d: BichromeDiagram) -> str:
    """Deterministic JSON text for the word, its boundary and its coupons."""
    slices = []
    for s in d.slices:
        doc = {"kind": s.kind}
        if s.kind != "Id":
            doc["pos"] = s.pos
        if s.kind in ("Cup", "Cap"):
            doc["chirality"] = s.chirality
            doc["color"] = {"red": True} if s.color is RED else {"module": s.color}
        if s.kind == "Coupon":
            doc["morphism"] = s.morphism
            doc["n_in"] = s.n_in
            doc["n_out"] = s.n_out
        slices.append(doc)
    morphs = {}
    for name in sorted(d.morphisms):
        e = d.morphisms[name]
        morphs[name] = {"source": [_point_doc(p) for p in e.source],
                        "target": [_point_doc(p) for p in e.target],
                        "matrix": _matrix_doc(e.matrix)}
    doc = {"schema": SCHEMA,
           "bottom": [_point_doc(p) for p in d.bottom],
           "top": [_point_doc(p) for p in d.top],
           "slices": slices,
           "morphisms": morphs}
    return json.dumps(doc, sort_keys=True, indent=1)


def parse(text: str) -> BichromeDiagram:
    """Inverse of serialize; validates the word before returning it."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}")
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise ValueError(f"expected schema {SCHEMA!r}, "
                         f"got {doc.get('schema')!r}")
    bottom = tuple(_point_from_doc("bottom boundary", p)
                   for p in doc.get("bottom", []))
    top = tuple(_point_from_doc("top boundary", p) for p in doc.get("top", []))
    slices = []
    for i, sdoc in enumerate(doc.get("slices", [])):
        kind = sdoc.get("kind")
        if kind not in _KINDS:
            raise ValueError(f"slice {i}: unknown kind {kind!r}")
        s = Slice(kind, pos=int(sdoc.get("pos", 0)))
        if kind in ("Cup", "Cap"):
            _, color = _point_from_doc(f"slice {i}", ["+", sdoc.get("color")])
            s = replace(s, chirality=sdoc.get("chirality", "left"), color=color)
        if kind == "Coupon":
            s = replace(s, morphism=sdoc.get("morphism", ""),
                        n_in=int(sdoc.get("n_in", 0)),
                        n_out=int(sdoc.get("n_out", 0)))
        slices.append(s)
    morphs = {}
    for name, mdoc in doc.get("morphisms", {}).items():
        where = f"morphism {name!r}"
        if not isinstance(mdoc, dict):
            raise ValueError(f"{where}: malformed entry")
        src = tuple(_point_from_doc(where, p) for p in mdoc.get("source", []))
        tgt = tuple(_point_from_doc(where, p) for p in mdoc.get("target", []))
        morphs[name] = MorphismEntry(src, tgt,
                                     _matrix_from_doc(where, mdoc.get("matrix")))
    d = BichromeDiagram(bottom, top, tuple(slices), morphs)
    validate(d)
    return d


# ---------------------------------------------------------------------------
# strand identity sweep
# ---------------------------------------------------------------------------

class _Sweep:
    """Edge bookkeeping for one pass over the word.

    Edges are keyed by their creation event: (-1, i) for bottom points,
    (slice index, leg index) for cups, coupons and bichrome coupons.  A cup
    gives both legs one key; caps and BCouponI merge keys, so a union-find
    class is one maximal strand.  Coupons sever blue strands.
    """

    def __init__(self):
        self.parent = {}
        self.color = {}              # key -> color at creation
        self.open_keys = set()
        self.passages = {}           # key -> [(level, col, sign)]
        self.red_events = []         # (key, key, signed crossing)

    def make(self, key, color):
        self.parent[key] = key
        self.color[key] = color
        self.passages[key] = []
        return key

    def find(self, key):
        while self.parent[key] != key:
            self.parent[key] = self.parent[self.parent[key]]
            key = self.parent[key]
        return key

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the lexicographically least key as the class root
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self, red):
        by_root = {}
        for key in self.parent:
            if (self.color[key] is RED) == red:
                by_root.setdefault(self.find(key), []).append(key)
        out = []
        for root, keys in by_root.items():
            keys.sort()
            opn = any(k in self.open_keys for k in keys)
            out.append((tuple(keys), opn))
        out.sort()
        return out


def _sweep(d: BichromeDiagram, levels=None) -> _Sweep:
    if levels is None:
        levels = validate(d)
    sw = _Sweep()
    strands = []                      # (sign, color, key) per column
    for i, (sign, color) in enumerate(d.bottom):
        key = sw.make((-1, i), color)
        sw.open_keys.add(key)
        strands.append((sign, color, key))

    def log(level):
        for col, (sign, color, key) in enumerate(strands):
            sw.passages[key].append((level, col, sign))

    log(0)
    for i, s in enumerate(d.slices):
        p = s.pos
        if s.kind == "Cup":
            key = sw.make((i, 0), s.color)
            a, b = _cup_pattern(s.chirality, s.color)
            strands[p:p] = [(a[0], s.color, key), (b[0], s.color, key)]
        elif s.kind == "Cap":
            sw.union(strands[p][2], strands[p + 1][2])
            del strands[p:p + 2]
        elif s.kind in ("CrossPos", "CrossNeg"):
            a, b = strands[p], strands[p + 1]
            if a[1] is RED and b[1] is RED:
                csign = a[0] * b[0] * (1 if s.kind == "CrossPos" else -1)
                sw.red_events.append((a[2], b[2], csign))
            strands[p], strands[p + 1] = b, a
        elif s.kind == "Coupon":
            entry = d.morphisms[s.morphism]
            del strands[p:p + s.n_in]
            made = [(sg, c, sw.make((i, j), c))
                    for j, (sg, c) in enumerate(entry.target)]
            strands[p:p] = made
        elif s.kind == "BCouponI":
            sw.union(strands[p][2], strands[p + 1][2])
            key = sw.make((i, 0), "L")
            strands[p:p + 2] = [(1, "L", key)]
        elif s.kind == "BCouponJ":
            key = sw.make((i, 0), RED)
            strands[p:p + 1] = [(1, RED, key), (-1, RED, key)]
        log(i + 1)
    for sign, color, key in strands:
        sw.open_keys.add(key)
    return sw


# ---------------------------------------------------------------------------
# red curve structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RedStructure:
    """Closed red components and their signed crossing counts.

    ``cycles[i]`` lists the edge keys of cycle i, components ordered by
    least creation key.  ``crossings_by_pair[(i, j)]`` with i <= j is the
    signed number of crossing events; the diagonal counts self-crossings,
    so it already is the writhe, while a distinct pair sees each geometric
    crossing twice.
    """

    cycles: tuple
    crossings_by_pair: dict
    open_chains: tuple

    def writhe(self, i) -> int:
        return self.crossings_by_pair.get((i, i), 0)

    def linking(self, i, j) -> int:
        if i == j:
            raise ValueError("linking number needs two distinct cycles")
        key = (min(i, j), max(i, j))
        return self.crossings_by_pair.get(key, 0) // 2

    def linking_matrix(self) -> list:
        n = len(self.cycles)
        return [[self.writhe(i) if i == j else self.linking(i, j)
                 for j in range(n)] for i in range(n)]


def red_structure(d: BichromeDiagram) -> RedStructure:
    sw = _sweep(d)
    closed = []
    opened = []
    for keys, opn in sw.classes(red=True):
        (opened if opn else closed).append(keys)
    index = {}
    for i, keys in enumerate(closed):
        for k in keys:
            index[k] = i
    pairs = {}
    for a, b, s in sw.red_events:
        ia = index.get(sw.find(a))
        ib = index.get(sw.find(b))
        if ia is None or ib is None:
            continue
        key = (min(ia, ib), max(ia, ib))
        pairs[key] = pairs.get(key, 0) + s
    pairs = {k: v for k, v in pairs.items() if v}
    return RedStructure(tuple(closed), pairs, tuple(opened))


# ---------------------------------------------------------------------------
# color resolution against an algebra
# ---------------------------------------------------------------------------

def resolve_color(H: RibbonHopfAlgebra, name: str, extra=None) -> HModule:
    """Map a color name to a module: "1", "H", "S[i]", "P[i]", "P1",
    the coend "L" and its dual partner "E", plus caller-supplied names."""
    if extra and name in extra:
        return extra[name]
    key = "diagram_inventory"
    inv = H._cache.get(key)
    if inv is None:
        inv = {"1": trivial_module(H), "H": regular_module(H)}
        for i, s in enumerate(simple_modules(H)):
            inv[f"S[{i}]"] = s
        for i, part in enumerate(decompose_regular(H)):
            inv[f"P[{i}]"] = part.module
        inv["P1"] = projective_cover_of_unit(H)[0]
        H._cache[key] = inv
    if name in inv:
        return inv[name]
    if name in ("L", "E"):
        from .coend import build_coend
        C = build_coend(H)
        inv["L"] = C.L
        inv["E"] = C.E
        return inv[name]
    raise ValueError(f"unknown module color {name!r}")


def point_module(H: RibbonHopfAlgebra, point, extra=None) -> HModule:
    """Effective module of one boundary point: the dual for downward legs.
    Red points resolve to the regular module, which is how the coend is
    probed at evaluation time."""
    sign, color = point
    V = regular_module(H) if color is RED else resolve_color(H, color, extra)
    return V if sign > 0 else dual_module(V)


def _is_semisimple(H: RibbonHopfAlgebra) -> bool:
    key = "semisimple"
    if key not in H._cache:
        data = compute_integrals(H)
        H._cache[key] = H.el_counit(data.integral_element) != H.field.zero
    return H._cache[key]


def is_admissible(d: BichromeDiagram, H: RibbonHopfAlgebra, extra=None) -> bool:
    """A closed diagram supports the renormalized evaluation when some blue
    edge carries a projective module; over a semisimple algebra there is
    nothing to require."""
    validate(d)
    if not is_closed(d):
        raise ValueError("admissibility is asked of closed diagrams only")
    if _is_semisimple(H):
        return True
    sw = _sweep(d)
    seen = set()
    for keys, _ in sw.classes(red=False):
        color = sw.color[keys[0]]
        if color in seen:
            continue
        seen.add(color)
        if is_projective(resolve_color(H, color, extra)):
            return True
    return False


# ---------------------------------------------------------------------------
# cutting a projective blue edge
# ---------------------------------------------------------------------------

def cut_at_projective_edge(d: BichromeDiagram, H: RibbonHopfAlgebra, *,
                           extra=None, index=0):
    """Open the diagram along a projective blue edge.

    Returns (d_cut, P) where d_cut has bottom and top both equal to one
    upward P-colored point and closing it up top-to-bottom recovers d.
    The edge is cut at its first upward passage; a new strand rises from
    the bottom on the far left, crosses over to take the upper half of the
    edge, while the lower half slides out to the right and exits at the
    top.  ``index`` picks a later projective edge in creation order; an
    edge that never points upward is skipped in favor of the next one.
    """
    levels = validate(d)
    if not is_closed(d):
        raise ValueError("cutting is defined for closed diagrams")
    sw = _sweep(d)
    blues = sw.classes(red=False)
    if not blues:
        raise ValueError("no blue edge to cut")
    projective = []
    for keys, _ in blues:
        color = sw.color[keys[0]]
        if is_projective(resolve_color(H, color, extra)):
            projective.append((keys, color))
    if not projective:
        raise ValueError("inadmissible: no projective blue edge")
    if not 0 <= index < len(projective):
        raise ValueError(f"projective edge index {index} out of range "
                         f"({len(projective)} available)")
    chosen = None
    for keys, color in projective[index:]:
        ups = sorted((lvl, col) for k in keys
                     for (lvl, col, sign) in sw.passages[k] if sign > 0)
        if ups:
            chosen = (ups[0], color)
            break
    if chosen is None:
        raise ValueError("no projective blue edge with an upward passage")
    (lvl, col), color = chosen
    width = len(levels[lvl])
    before = tuple(replace(s, pos=s.pos + 1) for s in d.slices[:lvl])
    shuffle = [cross_pos(q) for q in range(col)]
    shuffle += [cross_pos(q) for q in range(col + 1, width)]
    d_cut = BichromeDiagram(
        bottom=((1, color),),
        top=((1, color),),
        slices=before + tuple(shuffle) + d.slices[lvl:],
        morphisms=d.morphisms)
    validate(d_cut)
    return d_cut, resolve_color(H, color, extra)


# ---------------------------------------------------------------------------
# dragging red cycles to the bottom
# ---------------------------------------------------------------------------

def _band_curl(turns) -> list:
    """Full twists of the adjacent (down, up) red pair at columns 0, 1."""
    if not turns:
        return []
    plain = "CrossPos" if turns > 0 else "CrossNeg"
    flipped = "CrossNeg" if turns > 0 else "CrossPos"
    one = [cup(1, "right"), Slice(plain, 0), cap(1, "right"),
           cup(2, "left"), Slice(plain, 1), cap(2, "left"),
           Slice(flipped, 0), Slice(flipped, 0)]
    return one * abs(turns)


def _red_stage(word, lvl, col, over, curl, flips, counter):
    """Cut one red cycle at (lvl, col) and hang it off a new bottom pair.

    The pair enters at columns 0, 1.  Its upward wire picks up a kink,
    crosses over to the cut column and continues as the cycle; the old
    lower end shadows the same route back and is capped against the
    downward wire, so every strand it passed is crossed once each way and
    the single unavoidable self-crossing is cancelled by the kink.
    """
    bottom = ((-1, RED), (1, RED)) + word.bottom
    before = [replace(s, pos=s.pos + 2) for s in word.slices[:lvl]]
    kink = [cup(2, "left"), Slice("CrossPos" if over else "CrossNeg", 1),
            cap(2, "left")]
    target = col + 2
    out_kind = "CrossPos" if over else "CrossNeg"
    back_kind = "CrossNeg" if over else "CrossPos"
    route = []
    for q in range(1, target - 1):
        kind = back_kind if counter in flips else out_kind
        counter += 1
        route.append(Slice(kind, q))
    route.append(Slice(back_kind, target - 1))
    for q in range(target - 2, 0, -1):
        kind = out_kind if counter in flips else back_kind
        counter += 1
        route.append(Slice(kind, q))
    route.append(cap(0, "right"))
    slices = (tuple(kink) + tuple(_band_curl(curl)) + tuple(before)
              + tuple(route) + word.slices[lvl:])
    return BichromeDiagram(bottom, word.top, slices, word.morphisms), counter


def bottom_presentation(d: BichromeDiagram, *, order=None, basepoints=None,
                        route_over=True, curls=None, flips=None):
    """Present every closed red cycle as a (down, up) pair on the bottom.

    Returns (d_bot, n).  Pair j at bottom columns 2j, 2j+1 carries cycle
    ``order[j]`` (identity order by default, cycles as numbered by
    red_structure); closing each pair with a cup recovers d up to isotopy.
    The remaining keywords perturb choices that the evaluation must not
    see: ``basepoints`` picks another edge of a cycle to cut (by rank),
    ``route_over`` sends the dragged band under instead of over the
    strands it passes, ``curls`` adds full twists to a band, and ``flips``
    exchanges single over/under routing crossings, counted in emission
    order.
    """
    validate(d)
    comps0 = red_structure(d).cycles
    n = len(comps0)
    order = tuple(order) if order is not None else tuple(range(n))
    if sorted(order) != list(range(n)):
        raise ValueError(f"order {order!r} is not a permutation of the "
                         f"{n} cycles")
    basepoints = dict(basepoints or {})
    curls = dict(curls or {})
    flips = set(flips or ())
    word = d
    remaining = list(range(n))
    counter = 0
    # later pairs first: each stage slides the earlier ones two columns right
    for j in reversed(range(n)):
        target = order[j]
        sw = _sweep(word)
        comps = [keys for keys, opn in sw.classes(red=True) if not opn]
        comp = comps[remaining.index(target)]
        edge = comp[basepoints.get(target, 0) % len(comp)]
        ups = sorted((lvl, c) for (lvl, c, sign) in sw.passages[edge]
                     if sign > 0)
        lvl, c = ups[0]
        word, counter = _red_stage(word, lvl, c, route_over,
                                   curls.get(target, 0), flips, counter)
        remaining.remove(target)
    validate(word)
    return word, n
