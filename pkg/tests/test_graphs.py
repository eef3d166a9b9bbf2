import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leavitt.graphs import (
    Graph,
    GraphError,
    LagSet,
    Lasso,
    SinkPath,
    ClosedPath,
    canonical_cycle,
    concat,
    count_paths_ending_at,
    elementary_cycles,
    enumerate_paths_ending_at,
    initial_remainder,
    lasso,
    maximal_cycles,
    maximal_sinks,
    prepend,
    simple_closed_paths,
    sink_path,
    strip_prefix,
    strongly_connected_components,
    tail_lags,
    unroll,
    validate,
)


class TestValidate:
    def test_single_vertex_ok(self, single_vertex):
        report = validate(single_vertex)
        assert report.ok
        assert report.sinks == ("w",)

    def test_a2_ok(self, a2):
        report = validate(a2)
        assert report.ok
        assert report.sinks == ("v",)
        assert report.regular == ("u",)

    def test_dangling_endpoint(self):
        with pytest.raises(GraphError, match="dangling endpoint"):
            Graph(["u"], [("f", "u", "v")])

    def test_duplicate_name(self):
        with pytest.raises(GraphError, match="duplicate name"):
            Graph(["u", "v"], [("u", "u", "v")])
        with pytest.raises(GraphError, match="duplicate name"):
            Graph(["u", "v"], [("f", "u", "v"), ("f", "v", "u")])

    def test_empty_vertex_set(self):
        with pytest.raises(GraphError, match="empty"):
            Graph([], [])

    def test_bad_name(self):
        with pytest.raises(GraphError, match="bad vertex name"):
            Graph(["a.b"], [])


class TestPathOps:
    def test_concat(self, chain3):
        f = chain3.path(["f"])
        g = chain3.path(["g"])
        fg = concat(f, g)
        assert fg.edges == ("f", "g")
        assert (fg.src, fg.rng) == ("u", "v")
        assert len(fg) == len(f) + len(g)

    def test_concat_mismatch(self, chain3):
        with pytest.raises(GraphError):
            concat(chain3.path(["g"]), chain3.path(["f"]))

    def test_concat_associative(self, cycle3):
        a, b, c = (cycle3.path([n]) for n in "abc")
        assert concat(concat(a, b), c) == concat(a, concat(b, c))

    def test_trivial_prefix(self, a2):
        x = sink_path(a2, a2.path(["f"]))
        rem = strip_prefix(a2, a2.vertex_path("u"), x)
        assert rem == x

    def test_periodic_unrolling(self, r1):
        x = lasso(r1, r1.vertex_path("v"), ["e"])
        mu = r1.path(["e", "e", "e"])
        assert strip_prefix(r1, mu, x) == x

    def test_prefix_too_long(self, a2):
        x = sink_path(a2, a2.vertex_path("v"))
        assert strip_prefix(a2, a2.path(["f"]), x) is None

    def test_initial_remainder(self, toeplitz):
        p = toeplitz.path(["e", "e", "f"])
        rem = initial_remainder(toeplitz.path(["e"]), p)
        assert rem == toeplitz.path(["e", "f"])
        assert initial_remainder(toeplitz.path(["f"]), p) is None


class TestLassoCanonicalForm:
    def test_absorbs_trailing_cycle_edges(self, r1):
        v = r1.vertex_path("v")
        assert lasso(r1, r1.path(["e", "e"]), ["e"]) == lasso(r1, v, ["e"])

    def test_reduces_proper_powers(self, r1):
        v = r1.vertex_path("v")
        assert lasso(r1, v, ["e", "e", "e"]) == lasso(r1, v, ["e"])

    def test_rotation_representative(self, cycle3):
        x = lasso(cycle3, cycle3.vertex_path("v2"), ["b", "c", "a"])
        assert x.cycle == ("a", "b", "c")
        assert x.rotation == 1
        assert str(x) == "(b.c.a)^inf"

    def test_prefix_absorption_shifts_rotation(self, cycle3):
        x = lasso(cycle3, cycle3.path(["a"]), ["b", "c", "a"])
        assert x == lasso(cycle3, cycle3.vertex_path("v1"), ["a", "b", "c"])

    def test_nontrivial_canonical_prefix(self, rose2):
        x = lasso(rose2, rose2.path(["e"]), ["e", "g"])
        assert x.prefix.edges == ("e",)

    @given(
        prefix_len=st.integers(0, 3),
        rot=st.integers(0, 5),
        power=st.integers(1, 3),
        data=st.data(),
    )
    @settings(max_examples=120, deadline=None)
    def test_canonical_iff_same_unrolling(self, prefix_len, rot, power, data):
        # Two lassos denote the same infinite path iff their canonical
        # forms coincide; cross-checked on a graph with two entwined cycles.
        g = Graph(
            ["p", "q"],
            [("x", "p", "q"), ("y", "q", "p"), ("z", "p", "p"), ("w", "q", "p")],
        )
        base = ("x", "y") if rot % 2 == 0 else ("y", "x")
        seq = base * power
        start = g.edge(seq[0]).src
        names = []
        at = start
        for _ in range(prefix_len):
            e = data.draw(st.sampled_from(g.in_edges(at)))
            names.insert(0, e.name)
            at = e.src
        prefix = g.path(names) if names else g.vertex_path(start)
        first = lasso(g, prefix, seq)
        second_seq = seq + seq[:2]
        second = lasso(g, prefix, second_seq)
        assert first == second
        horizon = 3 * (prefix_len + len(seq) + 2)
        assert unroll(first, horizon) == unroll(second, horizon)


class TestEnumeratePaths:
    def test_a2(self, a2):
        res = enumerate_paths_ending_at(a2, "v")
        assert [str(p) for p in res.paths] == ["v", "f"]
        assert res.exact

    def test_toeplitz_bounded(self, toeplitz):
        res = enumerate_paths_ending_at(toeplitz, "v", bound=3)
        assert [str(p) for p in res.paths] == ["v", "f", "e.f", "e.e.f"]
        assert not res.exact

    def test_isolated_vertex(self, single_vertex):
        res = enumerate_paths_ending_at(single_vertex, "w")
        assert [str(p) for p in res.paths] == ["w"]
        assert res.exact

    def test_bound_required_when_cyclic(self, toeplitz):
        with pytest.raises(GraphError):
            enumerate_paths_ending_at(toeplitz, "v")

    def test_count_matches_enumeration(self, chain3):
        res = enumerate_paths_ending_at(chain3, "v")
        assert count_paths_ending_at(chain3, "v") == len(res.paths) == 3


class TestCycles:
    def test_acyclic(self, a2):
        assert elementary_cycles(a2) == ()

    def test_rose(self, rose2):
        assert [str(c) for c in elementary_cycles(rose2)] == ["e", "g"]

    def test_rotation_dedup(self, cycle3):
        cycles = elementary_cycles(cycle3)
        assert len(cycles) == 1
        assert cycles[0].edges == ("a", "b", "c")

    def test_every_rotation_canonicalizes_to_it(self, cycle3):
        for rot in (["a", "b", "c"], ["b", "c", "a"], ["c", "a", "b"]):
            assert canonical_cycle(cycle3, cycle3.path(rot)).edges == ("a", "b", "c")

    def test_closed_path_flags(self, rose2):
        eg = ClosedPath.analyze(rose2, rose2.path(["e", "g"]))
        assert eg.is_simple and not eg.is_cycle and eg.has_exit
        ee = ClosedPath.analyze(rose2, rose2.path(["e", "e"]))
        assert not ee.is_simple
        e = ClosedPath.analyze(rose2, rose2.path(["e"]))
        assert e.is_simple and e.is_cycle and e.has_exit

    def test_no_exit_flag(self, r1):
        e = ClosedPath.analyze(r1, r1.path(["e"]))
        assert not e.has_exit


class TestSimpleClosedPaths:
    def test_r1(self, r1):
        res = simple_closed_paths(r1, 5)
        assert [str(c) for c in res.paths] == ["e"]
        assert res.complete

    def test_rose_bound2(self, rose2):
        res = simple_closed_paths(rose2, 2)
        assert [str(c) for c in res.paths] == ["e", "g", "e.g"]
        assert not res.complete

    def test_a2(self, a2):
        res = simple_closed_paths(a2, 5)
        assert res.paths == ()
        assert res.complete


class TestMaximality:
    def test_a2_sinks(self, a2):
        assert maximal_sinks(a2) == (("v", 2),)

    def test_toeplitz_sink_not_maximal(self, toeplitz):
        assert maximal_sinks(toeplitz) == ()

    def test_single_vertex(self, single_vertex):
        assert maximal_sinks(single_vertex) == (("w", 1),)

    def test_toeplitz_cycle_maximal(self, toeplitz):
        assert [str(c) for c in maximal_cycles(toeplitz)] == ["e"]

    def test_rose_no_maximal_cycle(self, rose2):
        assert maximal_cycles(rose2) == ()

    def test_disjoint_loops_both_maximal(self, two_loops):
        assert [str(c) for c in maximal_cycles(two_loops)] == ["e", "g"]

    def test_sccs(self, cycle3_exit):
        comps = set(strongly_connected_components(cycle3_exit))
        assert frozenset({"v1", "v2", "v3"}) in comps
        assert frozenset({"w"}) in comps


class TestTailLags:
    @pytest.mark.parametrize("fixture,n", [("r1", 1), ("rose2", 2), ("cycle3", 3)])
    def test_cycle_self_lags(self, fixture, n, request):
        g = request.getfixturevalue(fixture)
        if fixture == "r1":
            x = lasso(g, g.vertex_path("v"), ["e"])
        elif fixture == "rose2":
            x = lasso(g, g.vertex_path("v"), ["e", "g"])
        else:
            x = lasso(g, g.vertex_path("v1"), ["a", "b", "c"])
        assert tail_lags(x, x) == LagSet.coset(0, n)

    def test_a2_sink_lag(self, a2):
        x = sink_path(a2, a2.path(["f"]))
        y = sink_path(a2, a2.vertex_path("v"))
        assert tail_lags(x, y) == LagSet.single(1)

    def test_partition_preserved(self, toeplitz):
        x = sink_path(toeplitz, toeplitz.path(["f"]))
        y = lasso(toeplitz, toeplitz.vertex_path("u"), ["e"])
        assert tail_lags(x, y).is_empty
        assert tail_lags(y, x).is_empty

    def test_symmetry_up_to_negation(self, lasso_graph):
        x = lasso(lasso_graph, lasso_graph.path(["f"]), ["e"])
        y = lasso(lasso_graph, lasso_graph.vertex_path("v"), ["e"])
        fwd, bwd = tail_lags(x, y), tail_lags(y, x)
        for k in range(-6, 7):
            assert fwd.contains(k) == bwd.contains(-k)
        assert tail_lags(x, x).contains(0)

    def test_different_sinks_empty(self, cycle3_exit):
        g = Graph(["a1", "b1"], [])
        x = sink_path(g, g.vertex_path("a1"))
        y = sink_path(g, g.vertex_path("b1"))
        assert tail_lags(x, y).is_empty


class TestPrepend:
    def test_prepend_sink(self, a2):
        x = sink_path(a2, a2.vertex_path("v"))
        assert prepend(a2, a2.path(["f"]), x) == sink_path(a2, a2.path(["f"]))

    def test_prepend_lasso_recanonicalizes(self, r1):
        x = lasso(r1, r1.vertex_path("v"), ["e"])
        assert prepend(r1, r1.path(["e", "e"]), x) == x

    def test_strip_then_prepend_roundtrip(self, toeplitz):
        x = lasso(toeplitz, toeplitz.vertex_path("u"), ["e"])
        mu = toeplitz.path(["e", "e"])
        rem = strip_prefix(toeplitz, mu, x)
        assert prepend(toeplitz, mu, rem) == x


class TestJson:
    def test_roundtrip(self, toeplitz):
        assert Graph.from_json_dict(toeplitz.to_json_dict()).to_json_dict() == toeplitz.to_json_dict()
