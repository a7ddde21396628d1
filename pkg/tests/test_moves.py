"""Move-level unit tests: spawn rules, label bookkeeping, preconditions,
script replay.  Randomized invariance is exercised separately in the
acceptance suite; here the expected post-states are written out by hand."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from singlink import moves
from singlink.groups import AbelianGroup
from singlink.invariants import delta, mu
from singlink.moves import MoveError, ScriptError, WhitneySpec, apply_move, apply_script
from singlink.randwalk import random_step, seed_state, standard_groups
from singlink.state import (
    ACTIVE, INACTIVE, TYPE1, TYPE2,
    Circle, Context, LinkState, pkey, state_hash, validate,
)

Z = AbelianGroup(1)
CTX = Context()
SCHAR = Context(s_characteristic=True, dual_sphere="unframed")


def pair(cid, label=(0,)):
    return [Circle(cid, TYPE1, cid + "p", ACTIVE, label),
            Circle(cid + "p", TYPE1, cid, INACTIVE)]


def state_of(circles, lk=(), clasps=(), tw=()):
    return LinkState(circles=tuple(circles), lk=frozenset(lk),
                     clasps=tuple(clasps), tw=tuple(tw)).normalized()


class TestCrossingMoves:
    def test_clasp_finger_spawns_meridians(self):
        st = state_of(pair("a", (2,)) + pair("b", (5,)),
                      lk={("a", "b")}, clasps=[("a", "b")])
        post, info = moves._clasp_finger(Z, CTX, st, "a", "b")
        e, ep = info["spawned"]
        assert post.linking("a", "b") == 0
        assert post.clasp_count("a", "b") == 0
        assert post.linked_ids(e) == ["ap"]
        assert post.linked_ids(ep) == ["bp"]
        # label: reading at a times inverse of reading at b
        assert post.circle(e).label == (-3,)
        assert validate(Z, CTX, post).ok

    def test_clasp_finger_needs_a_clasp(self):
        st = state_of(pair("a") + pair("b"))
        with pytest.raises(MoveError):
            moves.clasp_finger(Z, CTX, st, "a", "b")

    def test_finger_move_adds_clasp(self):
        st = state_of(pair("a", (1,)) + pair("b", (1,)))
        post, info = moves._finger_move(Z, CTX, st, "a", "b")
        assert post.linking("a", "b") == 1
        assert post.clasp_count("a", "b") == 1
        assert post.circle(info["spawned"][0]).label == (0,)
        assert validate(Z, CTX, post).ok

    def test_self_clasp(self):
        st = state_of(pair("a", (1,)))
        post, info = moves._finger_move(Z, CTX, st, "a", "a")
        e, ep = info["spawned"]
        assert post.clasp_count("a", "a") == 1
        # both meridians sit on the dual
        assert post.linked_ids(e) == ["ap"] and post.linked_ids(ep) == ["ap"]
        assert validate(Z, CTX, post).ok

    def test_type2_guard(self):
        G = AbelianGroup(0, (2,))
        cs = [Circle("s", TYPE2, "s", None, (1,))] + pair("a", G.identity)
        st = state_of(cs)
        with pytest.raises(MoveError):
            moves.finger_move(G, CTX, st, "s", "a")


class TestWhitney:
    def test_split_routes_by_sigma(self):
        circles = pair("a", (2,)) + pair("x") + pair("y")
        st = state_of(circles, lk={("a", "x"), ("ap", "y")},
                      clasps=[("a", "x"), ("ap", "y")])
        spec = WhitneySpec(a="a", b="ap", mode="inverse",
                           sigma=(("x", (0, 1)), ("y", (0, 1))))
        post, info = moves._whitney_move(Z, CTX, st, spec)
        (o1, o1p), (o2, o2p) = info["outputs"]
        assert post.circle(o1).label == (2,)
        assert post.circle(o2).label == (2,)
        assert post.linked_ids("x") == [o2]
        assert post.linked_ids("y") == [o2p]
        assert post.linking(o1, o2) == 0  # tau even: nothing kept on side 1
        assert validate(Z, CTX, post).ok

    def test_split_tau_odd(self):
        circles = pair("a", (1,)) + pair("x") + pair("y")
        st = state_of(circles, lk={("a", "x"), ("ap", "y")},
                      clasps=[("a", "x"), ("ap", "y")])
        spec = WhitneySpec(a="a", b="ap", mode="inverse",
                           sigma=(("x", (1, 0)), ("y", (0, 1))))
        post, info = moves._whitney_move(Z, CTX, st, spec)
        (o1, _), (o2, _) = info["outputs"]
        assert post.linking(o1, o2) == 1

    def test_split_rejects_linked_pair(self):
        st = state_of(pair("a"), lk={("a", "ap")}, clasps=[("a", "ap")])
        with pytest.raises(MoveError):
            moves.whitney_move(Z, CTX, st, WhitneySpec(a="a", b="ap", mode="inverse"))

    def test_split_rejects_shared_third_circle(self):
        st = state_of(pair("a") + pair("x"),
                      lk={("a", "x"), ("ap", "x")},
                      clasps=[("a", "x"), ("ap", "x")])
        with pytest.raises(MoveError):
            moves.whitney_move(Z, CTX, st, WhitneySpec(a="a", b="ap", mode="inverse"))

    def test_merge_xors_rows(self):
        circles = pair("a", (1,)) + pair("b", (1,)) + pair("x") + pair("y")
        st = state_of(circles,
                      lk={("a", "x"), ("b", "x"), ("b", "y")},
                      clasps=[("a", "x"), ("b", "x"), ("b", "y")])
        post, info = moves._whitney_move(
            Z, CTX, st, WhitneySpec(a="a", b="b", mode="equal"))
        c, cp = info["outputs"]
        assert post.circle(c).label == (1,)
        assert post.linking(c, "x") == 0   # both summands linked x
        assert post.linking(c, "y") == 1
        assert validate(Z, CTX, post).ok

    def test_merge_mode_must_match_roles(self):
        st = state_of(pair("a", (1,)) + pair("b", (1,)))
        with pytest.raises(MoveError):
            moves.whitney_move(Z, CTX, st, WhitneySpec(a="a", b="b", mode="inverse"))

    def test_merge_label_mismatch(self):
        st = state_of(pair("a", (1,)) + pair("b", (2,)))
        with pytest.raises(MoveError):
            moves.whitney_move(Z, CTX, st, WhitneySpec(a="a", b="b", mode="equal"))

    def test_merge_forced_nu_under_schar(self):
        st = state_of(pair("a", (1,)) + pair("b", (1,)))
        with pytest.raises(MoveError):
            moves.whitney_move(Z, SCHAR, st,
                               WhitneySpec(a="a", b="b", mode="equal", nu=1))
        post = moves.whitney_move(Z, SCHAR, st,
                                  WhitneySpec(a="a", b="b", mode="equal", nu=0))
        assert validate(Z, SCHAR, post).ok

    def test_pair_type2_reads_twist(self):
        G = AbelianGroup(0, (2,))
        cs = [Circle("s0", TYPE2, "s0", None, (1,)),
              Circle("s1", TYPE2, "s1", None, (1,))]
        st = state_of(cs, tw=[(pkey("s0", "s1"), 1)])
        post, info = moves._whitney_pair_typeII(G, CTX, st, "s0", "s1")
        o, op = info["outputs"]
        assert post.linking(o, op) == 1
        assert post.circle(o).label == (1,)
        assert not post.type2_circles()

    def test_pair_type2_twist_compat_guard(self):
        G = AbelianGroup(0, (2,))
        cs = [Circle(f"s{i}", TYPE2, f"s{i}", None, (1,)) for i in range(3)]
        tw = [(pkey("s0", "s1"), 0), (pkey("s0", "s2"), 0), (pkey("s1", "s2"), 1)]
        st = state_of(cs, tw=tw)
        with pytest.raises(MoveError):
            moves.whitney_pair_typeII(G, CTX, st, "s0", "s1")
        # s1, s2 agree about s0 -- wait, they do not; s0, s2 agree about s1?
        # tw(s0,s1)=0 vs tw(s2,s1)=1: no pair here is compatible
        with pytest.raises(MoveError):
            moves.whitney_pair_typeII(G, CTX, st, "s0", "s2")


class TestSurgery:
    def test_needs_dual_sphere(self):
        st = state_of(pair("a"))
        with pytest.raises(MoveError):
            moves.ambient_surgery(Z, CTX, st, "a")

    def test_framed_no_side_effect(self):
        ctx = Context(dual_sphere="framed")
        st = state_of(pair("a") + pair("x") + pair("y"),
                      lk={("a", "x"), ("a", "y")},
                      clasps=[("a", "x"), ("a", "y")])
        post, info = moves._ambient_surgery(Z, ctx, st, "a")
        assert info["removed"] == ("a", "ap")
        assert post.linking("x", "y") == 0

    def test_unframed_twists_linkers(self):
        st = state_of(pair("a") + pair("x") + pair("y"),
                      lk={("a", "x"), ("a", "y")},
                      clasps=[("a", "x"), ("a", "y")])
        post = moves.ambient_surgery(Z, SCHAR, st, "a")
        assert post.linking("x", "y") == 1
        assert post.clasp_count("x", "y") == 1

    def test_unframed_rejects_odd_linkers(self):
        st = state_of(pair("a") + pair("x"),
                      lk={("a", "x")}, clasps=[("a", "x")])
        with pytest.raises(MoveError):
            moves.ambient_surgery(Z, SCHAR, st, "a")

    def test_rejects_unsplit_dual(self):
        ctx = Context(dual_sphere="framed")
        st = state_of(pair("a") + pair("x"),
                      lk={("ap", "x")}, clasps=[("ap", "x")])
        with pytest.raises(MoveError):
            moves.ambient_surgery(Z, ctx, st, "a")


class TestComposites:
    def test_move_meridian_shifts_side(self):
        ctx = Context(dual_sphere="framed")
        st = state_of(pair("a", (1,)) + pair("e", (0,)),
                      lk={("a", "e")}, clasps=[("a", "e")])
        post, info = moves._move_meridian(Z, ctx, st, "a", "e")
        assert len(info["steps"]) == 2
        assert post.linked_ids("a") == []
        assert len(post.linked_ids("ap")) == 1
        assert validate(Z, ctx, post).ok

    def test_merge_hopf_label_order(self):
        # merging pairs labeled a then b carries label b*a
        st = state_of(pair("u", (3,)) + pair("v", (5,)),
                      lk={("u", "up"), ("v", "vp")},
                      clasps=[("u", "up"), ("v", "vp")])
        post, info = moves._merge_hopf_pairs(Z, CTX, st, "u", "v")
        c, cp = info["outputs"]
        assert post.circle(c).label == (8,)
        assert post.linking(c, cp) == 1

    def test_merge_hopf_rejects_external_links(self):
        st = state_of(pair("u", (1,)) + pair("v", (1,)) + pair("x"),
                      lk={("u", "up"), ("v", "vp"), ("u", "x")},
                      clasps=[("u", "up"), ("v", "vp"), ("u", "x")])
        with pytest.raises(MoveError):
            moves.merge_hopf_pairs(Z, CTX, st, "u", "v")

    @pytest.mark.parametrize("gname,g", [
        ("Z", (2,)), ("Z", (-4,)), ("Z", (0,)),
        ("Z4", (2,)), ("Z2xZ2", (0, 0)), ("Q8", 1),
    ])
    def test_add_hopf_pair_labels(self, gname, g):
        G = standard_groups()[gname]
        post, info = moves._add_hopf_pair(G, CTX, LinkState(), g)
        act = post.circle(info["active"])
        assert G.element_key(act.label) == G.element_key(G.check(g))
        assert post.linking(act.id, act.partner) == 1
        assert validate(G, CTX, post).ok

    def test_add_hopf_pair_rejects_essential_class(self):
        with pytest.raises(MoveError):
            moves.add_hopf_pair(Z, CTX, LinkState(), (1,))

    def test_remove_trivial_pairs(self):
        st = state_of(pair("u", (0,)) + pair("v", (0,)),
                      lk={("u", "up"), ("v", "vp")},
                      clasps=[("u", "up"), ("v", "vp")])
        ctx = Context(dual_sphere="framed")
        post = moves.remove_trivial_hopf_pairs(Z, ctx, st, "u", "v")
        assert not post.circles
        st_bad = state_of(pair("u", (2,)) + pair("v", (0,)),
                          lk={("u", "up"), ("v", "vp")},
                          clasps=[("u", "up"), ("v", "vp")])
        with pytest.raises(MoveError):
            moves.remove_trivial_hopf_pairs(Z, ctx, st_bad, "u", "v")


class TestScripts:
    def test_replay_is_atomic(self):
        st = state_of(pair("a", (1,)))
        script = [
            {"move": "finger_move", "params": {"a": "a", "b": "ap"}},
            {"move": "clasp_finger", "params": {"a": "a", "b": "nonexistent"}},
        ]
        with pytest.raises(ScriptError) as err:
            apply_script(Z, CTX, st, script)
        assert err.value.index == 1

    def test_trace_replays_to_same_hash(self):
        st = state_of(pair("a", (1,)) + pair("b", (1,)))
        post1, rec1 = apply_move(Z, CTX, st, "finger_move", {"a": "a", "b": "b"})
        post2, rec2 = apply_move(Z, CTX, post1, "clasp_finger", {"a": "a", "b": "b"})
        final, trace = apply_script(Z, CTX, st, [rec1, rec2])
        assert state_hash(Z, final) == rec2.post_hash

    def test_hash_mismatch_detected(self):
        st = state_of(pair("a", (1,)))
        _, rec = apply_move(Z, CTX, st, "finger_move", {"a": "a", "b": "ap"})
        tampered = [{"move": rec.move, "params": rec.params,
                     "pre_hash": "0" * 64}]
        with pytest.raises(ScriptError):
            apply_script(Z, CTX, st, tampered)

    def test_composite_records_expand_to_primitives(self):
        ctx = Context(dual_sphere="framed")
        st = state_of(pair("a", (1,)) + pair("e", (0,)),
                      lk={("a", "e")}, clasps=[("a", "e")])
        _, rec = apply_move(Z, ctx, st, "move_meridian", {"a": "a", "e": "e"})
        # the recorded primitive expansion replays to the same post state
        final, _ = apply_script(Z, ctx, st, [dict(move=n, params=p) for n, p in rec.steps])
        assert state_hash(Z, final) == rec.post_hash


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(sorted(standard_groups())),
       st.integers(0, 2 ** 32 - 1))
def test_random_move_preserves_mu_and_validity(gname, seed):
    G = standard_groups()[gname]
    rng = np.random.default_rng(seed)
    ctx = SCHAR if seed % 2 else Context(dual_sphere="framed")
    state = seed_state(G, ctx, rng)
    for _ in range(4):
        got = random_step(G, ctx, state, rng)
        if got is None:
            break
        _, _, post = got
        assert validate(G, ctx, post).ok
        assert np.array_equal(mu(G, state), mu(G, post))
        if ctx.s_characteristic:
            assert np.array_equal(delta(G, ctx, state), delta(G, ctx, post))
        state = post
