"""Decorated singular-link states.

A state is a finite set of labeled circles with mod-2 linking data:

* type I circles come in dual pairs (one active, one inactive); the group
  label is stored on the active circle and reads as its inverse from the
  inactive side,
* type II circles are self-dual and carry an involution label,
* ``lk`` is the symmetric mod-2 linking relation, ``clasps`` a multiset of
  unordered circle pairs realizing it, and ``tw`` a mod-2 twist bit for
  pairs of equal-labeled type II circles.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace

from . import groups as G_

TYPE1 = "type1"
TYPE2 = "type2"
ACTIVE = "active"
INACTIVE = "inactive"


class StateError(ValueError):
    pass


@dataclass(frozen=True)
class Circle:
    id: str
    kind: str
    partner: str
    role: str | None = None          # type1 only
    label: object = None             # active type1 and type2 only


@dataclass(frozen=True)
class Context:
    """Ambient data the invariants depend on but the link does not encode."""

    s_characteristic: bool = False
    dual_sphere: str | None = None   # None | "framed" | "unframed"
    based: bool = True
    mu_pi3: tuple = ()               # spanning bit-vectors over the two-torsion basis
    delta_self: tuple = ()           # spanning bit-vectors over the H_1 basis
    boundary_note: str = ""


def pkey(a: str, b: str) -> tuple:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class LinkState:
    circles: tuple = ()
    lk: frozenset = frozenset()      # sorted pairs with linking 1
    clasps: tuple = ()               # sorted multiset of sorted pairs
    tw: tuple = ()                   # ((a, b), bit) for equal-labeled type2 pairs
    homology_tag: str | None = None

    # -- access ------------------------------------------------------------
    def circle(self, cid: str) -> Circle:
        for c in self.circles:
            if c.id == cid:
                return c
        raise StateError(f"no circle with id {cid!r}")

    def has(self, cid: str) -> bool:
        return any(c.id == cid for c in self.circles)

    def linking(self, a: str, b: str) -> int:
        if a == b:
            return 0
        return 1 if pkey(a, b) in self.lk else 0

    def lk_total(self, cid: str) -> int:
        """lk(C, L - C) mod 2."""
        return sum(1 for p in self.lk if cid in p) % 2

    def linked_ids(self, cid: str):
        out = [b for a, b in self.lk if a == cid] + [a for a, b in self.lk if b == cid]
        return sorted(out)

    def twist(self, a: str, b: str) -> int:
        k = pkey(a, b)
        for p, bit in self.tw:
            if p == k:
                return bit
        raise StateError(f"missing tw entry for pair {k}")

    def read(self, G, cid: str):
        """Group element read at a circle: stored label on active/type II
        circles, the inverse of the partner's label on inactive ones."""
        c = self.circle(cid)
        if c.kind == TYPE2 or c.role == ACTIVE:
            return c.label
        return G.inv(self.circle(c.partner).label)

    def pairs(self):
        """Type I dual pairs as (active, inactive) circle tuples, sorted by
        active id."""
        out = []
        for c in self.circles:
            if c.kind == TYPE1 and c.role == ACTIVE:
                out.append((c, self.circle(c.partner)))
        return sorted(out, key=lambda p: p[0].id)

    def type2_circles(self):
        return sorted((c for c in self.circles if c.kind == TYPE2), key=lambda c: c.id)

    def clasp_count(self, a: str, b: str) -> int:
        k = pkey(a, b)
        return sum(1 for p in self.clasps if p == k)

    def fresh_ids(self, count: int, prefix: str = "c"):
        used = {c.id for c in self.circles}
        out, n = [], 0
        while len(out) < count:
            cid = f"{prefix}{n}"
            if cid not in used:
                out.append(cid)
                used.add(cid)
            n += 1
        return out

    # -- construction helpers ---------------------------------------------
    def with_circles(self, circles):
        return replace(self, circles=tuple(sorted(circles, key=lambda c: c.id)))

    def normalized(self):
        return LinkState(
            circles=tuple(sorted(self.circles, key=lambda c: c.id)),
            lk=frozenset(pkey(*p) for p in self.lk),
            clasps=tuple(sorted(pkey(*p) for p in self.clasps)),
            tw=tuple(sorted((pkey(*p), int(bit) & 1) for p, bit in self.tw)),
            homology_tag=self.homology_tag,
        )


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(G, ctx: Context, state: LinkState) -> ValidationReport:
    rep = ValidationReport()
    bad = rep.violations.append
    ids = [c.id for c in state.circles]
    if len(set(ids)) != len(ids):
        bad(("duplicate-ids", tuple(sorted(i for i in ids if ids.count(i) > 1))))
        return rep
    by_id = {c.id: c for c in state.circles}

    for c in state.circles:
        if c.kind == TYPE1:
            if c.role not in (ACTIVE, INACTIVE):
                bad(("bad-role", c.id))
                continue
            p = by_id.get(c.partner)
            if p is None or p.kind != TYPE1 or p.partner != c.id or p.role == c.role:
                bad(("broken-duality", c.id))
                continue
            if c.role == ACTIVE:
                try:
                    G.check(c.label)
                except G_.GroupError:
                    bad(("bad-label", c.id))
            elif c.label is not None:
                bad(("inactive-label-stored", c.id))
        elif c.kind == TYPE2:
            if c.partner != c.id or c.role is not None:
                bad(("type2-not-self-dual", c.id))
            try:
                g = G.check(c.label)
                if G.mul(g, g) != G.identity:
                    bad(("type2-label-not-involution", c.id))
            except G_.GroupError:
                bad(("bad-label", c.id))
        else:
            bad(("bad-kind", c.id))

    for a, b in sorted(state.lk):
        if a == b:
            bad(("self-linking", a))
        if a not in by_id or b not in by_id:
            bad(("dangling-lk", (a, b)))
    for a, b in state.clasps:
        if a not in by_id or b not in by_id:
            bad(("dangling-clasp", (a, b)))
    # mod-2 congruence between linking and the clasp multiset
    seen = set()
    for a, b in list(state.lk) + list(state.clasps):
        k = pkey(a, b)
        if k in seen or k[0] == k[1] or k[0] not in by_id or k[1] not in by_id:
            continue
        seen.add(k)
        if state.linking(*k) != state.clasp_count(*k) % 2:
            bad(("clasp-linking-mismatch", k))

    tw_keys = [p for p, _ in state.tw]
    if len(set(tw_keys)) != len(tw_keys):
        bad(("duplicate-tw-entries", tuple(sorted(set(k for k in tw_keys if tw_keys.count(k) > 1)))))
    for (a, b), bit in sorted(state.tw):
        ca, cb = by_id.get(a), by_id.get(b)
        if ca is None or cb is None or ca.kind != TYPE2 or cb.kind != TYPE2 or a == b:
            bad(("bad-tw-domain", (a, b)))
        elif G.element_key(ca.label) != G.element_key(cb.label):
            bad(("tw-label-mismatch", (a, b)))
        if bit not in (0, 1):
            bad(("bad-tw-value", (a, b)))
    # tw must be total on equal-labeled type II pairs
    t2 = [c for c in state.circles if c.kind == TYPE2 and c.label is not None]
    have = set(tw_keys)
    for i, ca in enumerate(t2):
        for cb in t2[i + 1:]:
            try:
                same = G.element_key(ca.label) == G.element_key(cb.label)
            except G_.GroupError:
                continue
            if same and pkey(ca.id, cb.id) not in have:
                bad(("missing-tw-entry", pkey(ca.id, cb.id)))

    if ctx.s_characteristic and ctx.dual_sphere is not None and rep.ok:
        # dual-sphere parity: both members of a dual pair link the rest of
        # the link with the same parity
        for act, inact in state.pairs():
            if state.lk_total(act.id) != state.lk_total(inact.id):
                bad(("dual-parity", (act.id, inact.id)))

    tdim = len(G.two_torsion())
    for v in ctx.mu_pi3:
        if len(v) != tdim:
            bad(("mu-pi3-dim", len(v)))
    hdim = G.h1_dim()
    for v in ctx.delta_self:
        if len(v) != hdim:
            bad(("delta-self-dim", len(v)))

    if ctx.s_characteristic and ctx.dual_sphere == "framed":
        rep.warnings.append(("framed-dual-forced-unframed", None))
    return rep


def flip_activity(G, state: LinkState, active_id: str) -> LinkState:
    """Swap the active/inactive roles in a type I pair, inverting the label."""
    act = state.circle(active_id)
    if act.kind != TYPE1 or act.role != ACTIVE:
        raise StateError(f"{active_id!r} is not an active type I circle")
    inact = state.circle(act.partner)
    new_act = replace(act, role=INACTIVE, label=None)
    new_inact = replace(inact, role=ACTIVE, label=G.inv(act.label))
    others = [c for c in state.circles if c.id not in (act.id, inact.id)]
    return state.with_circles(others + [new_act, new_inact])


# -- serialization ---------------------------------------------------------

def state_to_json(G, state: LinkState) -> dict:
    circles = []
    for c in sorted(state.circles, key=lambda c: c.id):
        obj = {"id": c.id, "kind": c.kind, "partner": c.partner}
        if c.kind == TYPE1:
            obj["role"] = c.role
        if c.label is not None:
            obj["label"] = G_.element_to_json(G, c.label)
        circles.append(obj)
    return {
        "circles": circles,
        "lk": sorted([list(p) for p in state.lk]),
        "clasps": sorted([list(p) for p in state.clasps]),
        "tw": sorted([[list(p), int(bit) & 1] for p, bit in state.tw]),
        "homology_tag": state.homology_tag,
    }


def state_from_json(G, obj: dict) -> LinkState:
    circles = []
    for c in obj.get("circles", []):
        label = c.get("label")
        if label is not None:
            label = G_.element_from_json(G, label)
        circles.append(Circle(
            id=c["id"], kind=c["kind"], partner=c.get("partner", c["id"]),
            role=c.get("role"), label=label,
        ))
    return LinkState(
        circles=tuple(circles),
        lk=frozenset(tuple(p) for p in obj.get("lk", [])),
        clasps=tuple(tuple(p) for p in obj.get("clasps", [])),
        tw=tuple((tuple(p), int(bit)) for p, bit in obj.get("tw", [])),
        homology_tag=obj.get("homology_tag"),
    ).normalized()


def context_to_json(ctx: Context) -> dict:
    return {
        "s_characteristic": ctx.s_characteristic,
        "dual_sphere": ctx.dual_sphere,
        "based": ctx.based,
        "mu_pi3": [list(map(int, v)) for v in ctx.mu_pi3],
        "delta_self": [list(map(int, v)) for v in ctx.delta_self],
        "boundary_note": ctx.boundary_note,
    }


def context_from_json(obj: dict) -> Context:
    return Context(
        s_characteristic=bool(obj.get("s_characteristic", False)),
        dual_sphere=obj.get("dual_sphere"),
        based=bool(obj.get("based", True)),
        mu_pi3=tuple(tuple(int(x) for x in v) for v in obj.get("mu_pi3", [])),
        delta_self=tuple(tuple(int(x) for x in v) for v in obj.get("delta_self", [])),
        boundary_note=obj.get("boundary_note", ""),
    )


def state_hash(G, state: LinkState) -> str:
    blob = json.dumps(state_to_json(G, state), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()
