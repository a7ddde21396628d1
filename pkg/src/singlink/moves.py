"""Move calculus: precondition-checked rewrites on link states.

Primitive moves rewrite the decorated data directly; composite moves are
compositions of primitives, so their label and linking effects can never
drift from the primitive rules.  Every move carries ``homology_tag``
through unchanged and preserves the mod-2 invariants (checked by the
property suite, not re-derived here).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import groups as G_
from .state import (
    ACTIVE, INACTIVE, TYPE1, TYPE2,
    Circle, LinkState, StateError, pkey, state_hash,
)


class MoveError(ValueError):
    pass


class ScriptError(MoveError):
    def __init__(self, index, move, message):
        super().__init__(f"step {index} ({move}): {message}")
        self.index = index
        self.move = move


def _eps0(G, g) -> bool:
    return not np.any(G.eps(g))


def _dual_id(c: Circle) -> str:
    return c.id if c.kind == TYPE2 else c.partner


class _B:
    """Mutable scratch copy of a state, for building the post-state."""

    def __init__(self, state: LinkState):
        self.circles = {c.id: c for c in state.circles}
        self.lk = set(state.lk)
        self.clasps = list(state.clasps)
        self.tw = dict(state.tw)
        self.tag = state.homology_tag

    def flip_lk(self, a, b):
        k = pkey(a, b)
        if k in self.lk:
            self.lk.discard(k)
        else:
            self.lk.add(k)

    def toggle_clasp(self, a, b):
        k = pkey(a, b)
        if k in self.clasps:
            self.clasps.remove(k)
        else:
            self.clasps.append(k)

    def link_with_clasp(self, a, b):
        self.flip_lk(a, b)
        self.clasps.append(pkey(a, b))

    def add_pair(self, act_id, inact_id, label):
        self.circles[act_id] = Circle(act_id, TYPE1, inact_id, ACTIVE, label)
        self.circles[inact_id] = Circle(inact_id, TYPE1, act_id, INACTIVE)

    def remove_circle(self, cid):
        del self.circles[cid]
        self.lk = {k for k in self.lk if cid not in k}
        self.clasps = [k for k in self.clasps if cid not in k]
        self.tw = {k: v for k, v in self.tw.items() if cid not in k}

    def state(self) -> LinkState:
        return LinkState(
            circles=tuple(self.circles.values()),
            lk=frozenset(self.lk),
            clasps=tuple(self.clasps),
            tw=tuple(self.tw.items()),
            homology_tag=self.tag,
        ).normalized()


def _fully_split(state: LinkState, cid: str) -> bool:
    return not state.linked_ids(cid) and all(cid not in k for k in state.clasps)


def _type2_guard(G, state: LinkState, a: str, b: str):
    """Crossing-change moves may touch type II circles only when the twist
    data provably cannot drift (tw transport is not modeled in general)."""
    ca, cb = state.circle(a), state.circle(b)
    t2 = [c for c in {ca.id: ca, cb.id: cb}.values() if c.kind == TYPE2]
    if len(t2) == 1 and a != b and not _eps0(G, t2[0].label):
        raise MoveError(
            "crossing change between a type II circle with homologically "
            "nontrivial label and a type I circle is not modeled")
    if len(t2) == 2 and a != b:
        if not np.array_equal(G.eps(t2[0].label), G.eps(t2[1].label)):
            raise MoveError(
                "crossing change between type II circles of different "
                "homology class is not modeled")


# -- crossing-change primitives --------------------------------------------

def _cross(G, ctx, state, a, b, remove_clasp):
    ca, cb = state.circle(a), state.circle(b)
    _type2_guard(G, state, a, b)
    bld = _B(state)
    if remove_clasp:
        if state.clasp_count(a, b) == 0:
            raise MoveError(f"no clasp between {a!r} and {b!r}")
        bld.clasps.remove(pkey(a, b))
    else:
        bld.clasps.append(pkey(a, b))
    if a != b:
        bld.flip_lk(a, b)
    e = G.mul(state.read(G, a), G.inv(state.read(G, b)))
    E, Ep = state.fresh_ids(2, "e")
    bld.add_pair(E, Ep, e)
    bld.link_with_clasp(E, _dual_id(ca))
    bld.link_with_clasp(Ep, _dual_id(cb))
    return bld.state(), {"spawned": (E, Ep)}


def _clasp_finger(G, ctx, state, a, b):
    return _cross(G, ctx, state, a, b, remove_clasp=True)


def _finger_move(G, ctx, state, a, b):
    return _cross(G, ctx, state, a, b, remove_clasp=False)


def _trivial_finger(G, ctx, state, g):
    g = G.check(g)
    bld = _B(state)
    A, Ap = state.fresh_ids(2, "u")
    bld.add_pair(A, Ap, g)
    return bld.state(), {"spawned": (A, Ap)}


def _introduce_type_II(G, ctx, state):
    bld = _B(state)
    cid = state.fresh_ids(1, "t")[0]
    bld.circles[cid] = Circle(cid, TYPE2, cid, None, G.identity)
    for c in state.type2_circles():
        if c.label is not None and G.element_key(c.label) == G.element_key(G.identity):
            bld.tw[pkey(cid, c.id)] = 0
    return bld.state(), {"spawned": (cid,)}


def _flip_activity(G, ctx, state, a):
    c = state.circle(a)
    if c.kind != TYPE1:
        raise MoveError(f"{a!r} is not a type I circle")
    act = c if c.role == ACTIVE else state.circle(c.partner)
    from .state import flip_activity as _fa
    return _fa(G, state, act.id), {"active": act.partner}


# -- whitney moves ---------------------------------------------------------

@dataclass(frozen=True)
class WhitneySpec:
    a: str
    b: str
    mode: str = "equal"          # "equal" | "inverse"
    sigma: tuple = ()            # ((circle id, (s1, s2)), ...)
    nu: int | None = None
    clean: bool = True
    n: int = 0


def _add_belts(G, bld, fresh_source, targets, n):
    ids = fresh_source.fresh_ids(2 * n, "belt")
    for j in range(n):
        B, Bp = ids[2 * j], ids[2 * j + 1]
        bld.add_pair(B, Bp, G.identity)
        for t in targets:
            bld.link_with_clasp(B, t)


def _pair_from_type2(G, ctx, state, a, b):
    ca, cb = state.circle(a), state.circle(b)
    if ca.kind != TYPE2 or cb.kind != TYPE2 or a == b:
        raise MoveError("expected two distinct type II circles")
    if G.element_key(ca.label) != G.element_key(cb.label):
        raise MoveError("type II labels differ")
    if not (_fully_split(state, a) and _fully_split(state, b)):
        raise MoveError("type II circles must be split before pairing")
    for c in state.type2_circles():
        if c.id in (a, b):
            continue
        if G.element_key(c.label) == G.element_key(ca.label):
            if state.twist(a, c.id) != state.twist(b, c.id):
                raise MoveError(
                    f"twist data with {c.id!r} differs between the two "
                    "circles; transport not modeled")
    t = state.twist(a, b)
    bld = _B(state)
    bld.remove_circle(a)
    bld.remove_circle(b)
    O, Op = state.fresh_ids(2, "w")
    bld.add_pair(O, Op, ca.label)
    if t:
        bld.link_with_clasp(O, Op)
    return bld, (O, Op)


def _whitney_pair_typeII(G, ctx, state, a, b):
    bld, (O, Op) = _pair_from_type2(G, ctx, state, a, b)
    return bld.state(), {"outputs": (O, Op)}


def _row_sum_excluding(state, cid, excluded):
    return sum(1 for x in state.linked_ids(cid) if x not in excluded) % 2


def _whitney_split(G, ctx, state, spec, act, inact):
    g = act.label
    if state.linking(act.id, inact.id):
        raise MoveError("split configuration needs a mutually unlinked pair")
    if state.clasp_count(act.id, inact.id):
        raise MoveError("split configuration needs a clasp-free pair")
    t_act = set(state.linked_ids(act.id))
    t_in = set(state.linked_ids(inact.id))
    if t_act & t_in:
        raise MoveError(
            "a third circle links both members; split assignment ambiguous")
    sigma = dict(spec.sigma)
    for x, bits in sigma.items():
        s1, s2 = int(bits[0]) & 1, int(bits[1]) & 1
        want = (1 if x in (t_act | t_in) else 0)
        if (s1 + s2) % 2 != want:
            raise MoveError(f"split assignment for {x!r} has wrong parity")
        sigma[x] = (s1, s2)
    schar = ctx.s_characteristic and ctx.dual_sphere is not None
    if spec.n % 2 and schar:
        raise MoveError("odd intersection count breaks dual-pair parity")
    nu = 0 if spec.nu is None else int(spec.nu) & 1

    def route(x):
        s1, _ = sigma.get(x, (1, 0))
        return 0 if s1 else 1

    bld = _B(state)
    bld.remove_circle(act.id)
    bld.remove_circle(inact.id)
    O1, O1p, O2, O2p = state.fresh_ids(4, "w")
    bld.add_pair(O1, O1p, g)
    bld.add_pair(O2, O2p, g)
    outs_act, outs_in = (O1, O2), (O1p, O2p)
    t1 = u1 = 0
    for x in sorted(t_act):
        i = route(x)
        t1 += (i == 0)
        bld.link_with_clasp(outs_act[i], x)
    for x in sorted(t_in):
        i = route(x)
        u1 += (i == 0)
        bld.link_with_clasp(outs_in[i], x)
    if nu:
        bld.link_with_clasp(O1, O1p)
        bld.link_with_clasp(O2, O2p)
    tau = (t1 + u1) % 2
    if tau:
        bld.link_with_clasp(O1, O2)
    _add_belts(G, bld, state, (O1, O2), spec.n)
    return bld.state(), {"outputs": ((O1, O1p), (O2, O2p))}


def _whitney_merge(G, ctx, state, spec, cu, cv):
    u, v = cu.id, cv.id
    up, vp = state.circle(cu.partner), state.circle(cv.partner)
    same_role = cu.role == cv.role
    if spec.mode == "equal" and not same_role:
        raise MoveError("equal-labels pairing joins like roles")
    if spec.mode == "inverse" and same_role:
        raise MoveError("inverse-labels pairing joins opposite roles")
    ru, rv = state.read(G, u), state.read(G, v)
    if G.element_key(ru) != G.element_key(rv):
        raise MoveError("band-end labels incompatible")
    if dict(spec.sigma):
        raise MoveError("split assignment is not consulted when merging")
    act1 = cu if cu.role == ACTIVE else up
    in1 = up if cu.role == ACTIVE else cu
    act2 = cv if cv.role == ACTIVE else vp
    in2 = vp if cv.role == ACTIVE else cv
    part = {u, up.id, v, vp.id}
    if len(part) != 4:
        raise MoveError("expected circles from two distinct pairs")
    nu_forced = (
        _row_sum_excluding(state, act1.id, part)
        + _row_sum_excluding(state, act2.id, part)
        + _row_sum_excluding(state, u, part)
        + _row_sum_excluding(state, v, part)
        + state.linking(act1.id, in1.id) + state.linking(act2.id, in2.id)
        + state.linking(act1.id, in2.id) + state.linking(in1.id, act2.id)
    ) % 2
    schar = ctx.s_characteristic and ctx.dual_sphere is not None
    if spec.nu is None:
        nu = nu_forced
    else:
        nu = int(spec.nu) & 1
        if schar and nu != nu_forced:
            raise MoveError("mutual-linking bit inconsistent with dual-pair parity")
    row_c = {x for x in state.linked_ids(u) if x not in part}
    row_c ^= {x for x in state.linked_ids(v) if x not in part}
    row_cp = {x for x in state.linked_ids(up.id) if x not in part}
    row_cp ^= {x for x in state.linked_ids(vp.id) if x not in part}
    bld = _B(state)
    for cid in sorted(part):
        bld.remove_circle(cid)
    C, Cp = state.fresh_ids(2, "w")
    bld.add_pair(C, Cp, ru)
    for x in sorted(row_c):
        bld.link_with_clasp(C, x)
    for x in sorted(row_cp):
        bld.link_with_clasp(Cp, x)
    if nu:
        bld.link_with_clasp(C, Cp)
    # intersections with the surface leave split belt pairs here: both
    # strands through a belt end up on the same output circle
    _add_belts(G, bld, state, (), spec.n)
    return bld.state(), {"outputs": (C, Cp)}


def _whitney_move(G, ctx, state, spec):
    if isinstance(spec, dict):
        spec = WhitneySpec(**spec)
    if spec.mode not in ("equal", "inverse"):
        raise MoveError(f"unknown pairing mode {spec.mode!r}")
    if spec.n < 0 or (spec.clean and spec.n):
        raise MoveError("a clean move has no interior intersections")
    ca, cb = state.circle(spec.a), state.circle(spec.b)
    if ca.kind == TYPE2 and cb.kind == TYPE2:
        if spec.mode != "equal":
            raise MoveError("type II circles pair with equal labels")
        if dict(spec.sigma):
            raise MoveError("type II pairing takes no split assignment")
        if spec.n % 2:
            raise MoveError("odd intersection count breaks the twist readout")
        bld, (O, Op) = _pair_from_type2(G, ctx, state, spec.a, spec.b)
        if spec.nu is not None and (int(spec.nu) & 1) != state.twist(spec.a, spec.b):
            raise MoveError("mutual-linking bit must equal the recorded twist")
        _add_belts(G, bld, state, (O, Op), spec.n)
        return bld.state(), {"outputs": (O, Op)}
    if ca.kind != TYPE1 or cb.kind != TYPE1:
        raise MoveError("band ends must sit on circles of matching kind")
    if spec.a == spec.b:
        raise MoveError("both band ends on a single circle are not modeled")
    if cb.id == ca.partner:
        if spec.mode != "inverse":
            raise MoveError("a dual pair joins with inverse labels")
        act = ca if ca.role == ACTIVE else cb
        inact = cb if ca.role == ACTIVE else ca
        return _whitney_split(G, ctx, state, spec, act, inact)
    return _whitney_merge(G, ctx, state, spec, ca, cb)


# -- ambient surgery -------------------------------------------------------

def _ambient_surgery(G, ctx, state, a):
    ca = state.circle(a)
    if ca.kind != TYPE1:
        raise MoveError("surgery applies to a type I dual pair")
    if ctx.dual_sphere is None:
        raise MoveError("surgery needs a dual sphere in the ambient context")
    dual = state.circle(ca.partner)
    if not _fully_split(state, dual.id):
        raise MoveError(f"dual circle {dual.id!r} is not split")
    bld = _B(state)
    if ctx.dual_sphere == "unframed":
        linkers = state.linked_ids(a)
        if len(linkers) % 2:
            raise MoveError("twisted surgery needs an even number of linkers")
        for x, y in combinations(sorted(linkers), 2):
            bld.flip_lk(x, y)
            bld.toggle_clasp(x, y)
    bld.remove_circle(a)
    bld.remove_circle(dual.id)
    return bld.state(), {"removed": (a, dual.id)}


# -- hopf-pair primitives --------------------------------------------------

def _split_hopf_pair(G, state, cid):
    c = state.circle(cid)
    if c.kind != TYPE1:
        raise MoveError(f"{cid!r} is not a type I circle")
    act = c if c.role == ACTIVE else state.circle(c.partner)
    inact = state.circle(act.partner)
    if state.linked_ids(act.id) != [inact.id] or state.linked_ids(inact.id) != [act.id]:
        raise MoveError(f"pair of {cid!r} is not a split Hopf pair")
    mutual = pkey(act.id, inact.id)
    if any(x in k for x in (act.id, inact.id) for k in state.clasps if k != mutual):
        raise MoveError(f"pair of {cid!r} carries external clasps")
    return act, inact


def _merge_hopf_pairs(G, ctx, state, a, b):
    act_a, in_a = _split_hopf_pair(G, state, a)
    act_b, in_b = _split_hopf_pair(G, state, b)
    if {act_a.id, in_a.id} & {act_b.id, in_b.id}:
        raise MoveError("expected two distinct pairs")
    label = G.mul(act_b.label, act_a.label)
    bld = _B(state)
    for cid in (act_a.id, in_a.id, act_b.id, in_b.id):
        bld.remove_circle(cid)
    C, Cp = state.fresh_ids(2, "m")
    bld.add_pair(C, Cp, label)
    bld.link_with_clasp(C, Cp)
    return bld.state(), {"outputs": (C, Cp)}


def _remove_trivial_hopf_pairs(G, ctx, state, a, b):
    if ctx.dual_sphere is None:
        raise MoveError("removal needs a dual sphere in the ambient context")
    act_a, in_a = _split_hopf_pair(G, state, a)
    act_b, in_b = _split_hopf_pair(G, state, b)
    if {act_a.id, in_a.id} & {act_b.id, in_b.id}:
        raise MoveError("expected two distinct pairs")
    ik = G.element_key(G.identity)
    if G.element_key(act_a.label) != ik or G.element_key(act_b.label) != ik:
        raise MoveError("both pairs must carry the identity label")
    bld = _B(state)
    for cid in (act_a.id, in_a.id, act_b.id, in_b.id):
        bld.remove_circle(cid)
    return bld.state(), {"removed": (act_a.id, in_a.id, act_b.id, in_b.id)}


# -- composites ------------------------------------------------------------

class _Runner:
    """Applies primitive steps sequentially, recording the expansion."""

    def __init__(self, G, ctx, state):
        self.G, self.ctx = G, ctx
        self.state = state
        self.steps = []
        self.info = None

    def do(self, name, **params):
        fn = _PRIMITIVES[name]
        self.state, self.info = fn(self.G, self.ctx, self.state, **params)
        self.steps.append((name, dict(params)))
        return self.info


def _move_meridian(G, ctx, state, a, e):
    ca = state.circle(a)
    ce = state.circle(e)
    if ca.kind != TYPE1 or ce.kind != TYPE1:
        raise MoveError("both circles must be type I")
    if state.linked_ids(e) != [a] or state.linking(e, a) != 1:
        raise MoveError(f"{e!r} is not a meridian of {a!r}")
    if state.clasp_count(e, a) == 0:
        raise MoveError("meridian linking carries no clasp")
    r = _Runner(G, ctx, state)
    r.do("clasp_finger", a=a, b=e)
    r.do("ambient_surgery", a=ce.partner)
    return r.state, {"steps": r.steps}


def _shorten_cycle(G, ctx, state, actives):
    actives = list(actives)
    m = len(actives)
    if m < 2:
        raise MoveError("a cycle of length 1 cannot be shortened")
    if ctx.dual_sphere != "unframed":
        raise MoveError("cycle shortening needs an unframed dual sphere")
    circles = [state.circle(x) for x in actives]
    for c in circles:
        if c.kind != TYPE1 or c.role != ACTIVE:
            raise MoveError(f"{c.id!r} is not an active type I circle")
    if len({c.id for c in circles}) != m:
        raise MoveError("cycle entries repeat a pair")
    for i, c in enumerate(circles):
        nxt = circles[(i + 1) % m]
        if state.linking(c.id, nxt.partner) != 1:
            raise MoveError(f"{c.id!r} does not link the next dual circle")
    a1, a2 = circles[0], circles[1]
    g1, g2 = state.read(G, a1.id), state.read(G, a2.id)
    target = G.mul(g2, g1)
    r = _Runner(G, ctx, state)
    info = r.do("clasp_finger", a=a1.id, b=a2.partner)
    E, Ep = info["spawned"]
    r.do("ambient_surgery", a=a1.partner)
    r.do("ambient_surgery", a=a2.id)
    # the new pair reads g1*g2 at E; present it so the merged circle reads
    # g2*g1 whenever either presentation achieves that
    tk = G.element_key(target)
    e_read = G.mul(g1, g2)
    if tk != G.element_key(e_read) and tk == G.element_key(G.inv(e_read)):
        r.do("flip_activity", a=E)
        merged = Ep
    else:
        merged = E
    return r.state, {"steps": r.steps, "merged": merged}


def _add_hopf_pair(G, ctx, state, g):
    g = G.check(g)
    if not _eps0(G, g):
        raise MoveError("element is homologically nontrivial mod 2")
    ik = G.element_key(G.identity)
    if G.element_key(g) == ik:
        word = [(None, 1), (None, 1)]
    else:
        word = [(i, e) for i, e in G.balanced_word(g)]
    r = _Runner(G, ctx, state)
    # insert one split pair per two word letters sharing a generator, then
    # split each into two Hopf pairs (Fig-19 style) and merge in word order
    pending = {}
    slot = [None] * len(word)
    for pos, (i, e) in enumerate(word):
        if i in pending and pending[i]:
            slot[pos] = pending[i].pop()
            continue
        gen = G.identity if i is None else G.check(G.generators[i])
        info = r.do("trivial_finger", g=gen)
        U, Up = info["spawned"]
        info = r.do("whitney_move",
                    spec={"a": U, "b": Up, "mode": "inverse", "nu": 1, "clean": True})
        (p1, _), (p2, _) = info["outputs"]
        slot[pos] = p1
        pending.setdefault(i, []).append(p2)
    for pos, (i, e) in enumerate(word):
        if e == -1:
            info = r.do("flip_activity", a=slot[pos])
            slot[pos] = info["active"]
    cur = slot[-1]
    for pos in range(len(word) - 2, -1, -1):
        info = r.do("merge_hopf_pairs", a=cur, b=slot[pos])
        cur = info["outputs"][0]
    return r.state, {"steps": r.steps, "active": cur}


# -- records, registry, scripts --------------------------------------------

@dataclass(frozen=True)
class MoveRecord:
    move: str
    params: dict
    pre_hash: str
    post_hash: str
    steps: tuple = ()


_PRIMITIVES = {
    "clasp_finger": _clasp_finger,
    "finger_move": _finger_move,
    "trivial_finger": _trivial_finger,
    "introduce_type_II": _introduce_type_II,
    "flip_activity": _flip_activity,
    "whitney_move": _whitney_move,
    "whitney_pair_typeII": _whitney_pair_typeII,
    "ambient_surgery": _ambient_surgery,
    "merge_hopf_pairs": _merge_hopf_pairs,
    "remove_trivial_hopf_pairs": _remove_trivial_hopf_pairs,
}

_COMPOSITES = {
    "move_meridian": _move_meridian,
    "shorten_cycle": _shorten_cycle,
    "add_hopf_pair": _add_hopf_pair,
}

MOVES = {**_PRIMITIVES, **_COMPOSITES}

_ELEMENT_PARAMS = {"trivial_finger": ("g",), "add_hopf_pair": ("g",)}


def encode_params(G, move, params):
    out = {}
    for k, v in params.items():
        if k in _ELEMENT_PARAMS.get(move, ()):
            out[k] = G_.element_to_json(G, v)
        elif k == "spec" or (move == "whitney_move" and k == "sigma"):
            if isinstance(v, WhitneySpec):
                v = {"a": v.a, "b": v.b, "mode": v.mode, "sigma": list(map(list, dict(v.sigma).items())),
                     "nu": v.nu, "clean": v.clean, "n": v.n}
            out[k] = v
        else:
            out[k] = v
    return out


def decode_params(G, move, params):
    out = {}
    for k, v in params.items():
        if k in _ELEMENT_PARAMS.get(move, ()):
            out[k] = G_.element_from_json(G, v)
        elif move == "whitney_move" and k == "spec" and isinstance(v, dict):
            v = dict(v)
            if "sigma" in v:
                v["sigma"] = tuple((x, tuple(bits)) for x, bits in v["sigma"])
            out[k] = v
        else:
            out[k] = v
    return out


def apply_move(G, ctx, state, move, params):
    """Apply one named move; returns (post state, record)."""
    if move not in MOVES:
        raise MoveError(f"unknown move {move!r}")
    pre = state_hash(G, state)
    post_state, info = MOVES[move](G, ctx, state, **params)
    steps = tuple((n, encode_params(G, n, p)) for n, p in info.get("steps", []))
    rec = MoveRecord(
        move=move,
        params=encode_params(G, move, params),
        pre_hash=pre,
        post_hash=state_hash(G, post_state),
        steps=steps,
    )
    return post_state, rec


def apply_script(G, ctx, state, script):
    """Run a script (list of {move, params} entries or MoveRecords).

    Fails atomically at the first violated precondition: the exception
    reports the step index and the caller keeps the input state.
    """
    trace = []
    cur = state
    for i, entry in enumerate(script):
        if isinstance(entry, MoveRecord):
            move, params = entry.move, decode_params(G, entry.move, entry.params)
            want_pre, want_post = entry.pre_hash, entry.post_hash
        else:
            move = entry.get("move")
            params = decode_params(G, move, entry.get("params", {}))
            want_pre, want_post = entry.get("pre_hash"), entry.get("post_hash")
        try:
            if want_pre and want_pre != state_hash(G, cur):
                raise MoveError("pre-state hash mismatch")
            cur, rec = apply_move(G, ctx, cur, move, params)
            if want_post and want_post != rec.post_hash:
                raise MoveError("post-state hash mismatch")
        except (MoveError, StateError, G_.GroupError) as err:
            raise ScriptError(i, move, str(err)) from err
        trace.append(rec)
    return cur, trace


# -- public single-move wrappers -------------------------------------------

def clasp_finger(G, ctx, state, a, b):
    return _clasp_finger(G, ctx, state, a, b)[0]


def finger_move(G, ctx, state, a, b):
    return _finger_move(G, ctx, state, a, b)[0]


def trivial_finger(G, ctx, state, g):
    return _trivial_finger(G, ctx, state, g)[0]


def introduce_type_II(G, ctx, state):
    return _introduce_type_II(G, ctx, state)[0]


def whitney_move(G, ctx, state, spec):
    return _whitney_move(G, ctx, state, spec)[0]


def whitney_pair_typeII(G, ctx, state, a, b):
    return _whitney_pair_typeII(G, ctx, state, a, b)[0]


def ambient_surgery(G, ctx, state, a):
    return _ambient_surgery(G, ctx, state, a)[0]


def move_meridian(G, ctx, state, a, e):
    return _move_meridian(G, ctx, state, a, e)[0]


def shorten_cycle(G, ctx, state, actives):
    return _shorten_cycle(G, ctx, state, actives)[0]


def merge_hopf_pairs(G, ctx, state, a, b):
    return _merge_hopf_pairs(G, ctx, state, a, b)[0]


def add_hopf_pair(G, ctx, state, g):
    return _add_hopf_pair(G, ctx, state, g)[0]


def remove_trivial_hopf_pairs(G, ctx, state, a, b):
    return _remove_trivial_hopf_pairs(G, ctx, state, a, b)[0]
