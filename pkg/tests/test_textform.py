import random

import pytest

from leavitt.algebra import LeavittAlgebra, random_element
from leavitt.fields import QQ, ExtensionField, PrimeField, parse_poly
from leavitt.graphs import lasso, sink_path
from leavitt.reps import (
    ChenExtSpec,
    ChenSpec,
    InducedSpec,
    LaurentCoeff,
    NvcSpec,
    QuotientCoeff,
    ScalarAction,
    TrivialCoeff,
    build_module,
)
from leavitt.textform import (
    ParseError,
    parse_boundary_path,
    parse_element,
    parse_module_spec,
    parse_nspec,
    parse_twist,
    parse_vector,
)

F2 = PrimeField(2)


class TestBoundaryPaths:
    def test_finite(self, a2):
        assert str(parse_boundary_path(a2, "v")) == "v"
        assert str(parse_boundary_path(a2, "f")) == "f"

    def test_lasso_forms(self, toeplitz):
        assert str(parse_boundary_path(toeplitz, "(e)^inf")) == "(e)^inf"
        x = parse_boundary_path(toeplitz, "e.e.(e)^inf")
        assert str(x) == "(e)^inf"  # prefix absorbed

    def test_lasso_with_prefix(self, lasso_graph):
        x = parse_boundary_path(lasso_graph, "f.(e)^inf")
        assert str(x) == "f.(e)^inf"

    def test_rotation_roundtrip(self, cycle3):
        for text in ("(a.b.c)^inf", "(b.c.a)^inf", "(c.a.b)^inf"):
            assert str(parse_boundary_path(cycle3, text)) == text

    def test_non_sink_finite_rejected(self, toeplitz):
        with pytest.raises(ParseError, match="not a boundary path"):
            parse_boundary_path(toeplitz, "e")


class TestElements:
    def test_vertex(self, a2):
        A = LeavittAlgebra(a2, QQ)
        assert parse_element(A, "v") == A.vertex("v")

    def test_double_edge(self, r1):
        A = LeavittAlgebra(r1, QQ)
        assert parse_element(A, "2 e.e") == A.path_element(r1.path(["e", "e"])).scale(2)

    def test_ghost_monomial(self, a2):
        A = LeavittAlgebra(a2, QQ)
        x = parse_element(A, "1/3 f v^")
        assert x == A.edge("f").scale(QQ.parse("1/3"))  # f.v* = f

    def test_ghost_only(self, a2):
        A = LeavittAlgebra(a2, QQ)
        assert parse_element(A, "f^*") == A.ghost("f")
        assert parse_element(A, "f^") == A.ghost("f")

    def test_star_separator(self, a2):
        A = LeavittAlgebra(a2, QQ)
        assert parse_element(A, "2 f*v^") == parse_element(A, "2 f v^")

    def test_sums_and_differences(self, r1):
        A = LeavittAlgebra(r1, QQ)
        x = parse_element(A, "e + e^ - 2 v")
        assert x == A.edge("e") + A.ghost("e") - A.vertex("v").scale(2)

    def test_extension_coefficients(self, r1):
        K = ExtensionField(F2, parse_poly("t^2+t+1", F2))
        A = LeavittAlgebra(r1, K)
        x = parse_element(A, "(t+1) e")
        assert x == A.edge("e").scale(K.parse("(t+1)"))

    def test_unknown_name(self, a2):
        A = LeavittAlgebra(a2, QQ)
        with pytest.raises(ParseError):
            parse_element(A, "q")

    def test_range_mismatch(self, a2):
        A = LeavittAlgebra(a2, QQ)
        with pytest.raises(ParseError, match="ranges differ"):
            parse_element(A, "f u^")

    @pytest.mark.parametrize("gname", ["a2", "r1", "toeplitz", "rose2"])
    @pytest.mark.parametrize("field", [QQ, F2], ids=["Q", "F2"])
    def test_print_parse_roundtrip(self, gname, field, request):
        graph = request.getfixturevalue(gname)
        A = LeavittAlgebra(graph, field)
        rng = random.Random(42)
        for _ in range(40):
            x = random_element(A, rng, max_len=3, max_terms=3)
            if x.is_zero:
                continue
            assert parse_element(A, str(x)).terms == x.terms


class TestVectors:
    def test_chen_vector(self, a2):
        M = build_module(a2, QQ, ChenSpec(sink_path(a2, a2.vertex_path("v"))))
        v = parse_vector(M, "2 v + f")
        assert str(v) == "2 v + f"

    def test_chen_ext_tensor_index(self, toeplitz):
        M = build_module(toeplitz, F2, ChenExtSpec(toeplitz.path(["e"]), parse_poly("t^2+t+1", F2)))
        v = parse_vector(M, "(e)^inf + (e)^inf#1")
        assert len(v.terms) == 2
        assert str(v) == "(e)^inf + (e)^inf#1"

    def test_nvc_vector(self, r1):
        M = build_module(r1, QQ, NvcSpec(r1.path(["e"])))
        v = parse_vector(M, "e.e e^ + 3 v")
        assert str(v) == "3 v + e.e e^"

    def test_induced_vector(self, r1):
        x = lasso(r1, r1.vertex_path("v"), ["e"])
        M = build_module(r1, QQ, InducedSpec(x, LaurentCoeff(0)))
        v = parse_vector(M, "(e)^inf@1 - (e)^inf@0")
        assert str(v) == "-1 (e)^inf@0 + (e)^inf@1"

    def test_vector_roundtrip(self, lasso_graph):
        x = lasso(lasso_graph, lasso_graph.vertex_path("v"), ["e"])
        M = build_module(lasso_graph, QQ, InducedSpec(x, ScalarAction(QQ.coerce(2))))
        for text in ("(e)^inf@0", "f.(e)^inf@1", "1/2 (e)^inf@0 + -2 f.(e)^inf@1"):
            v = parse_vector(M, text)
            assert parse_vector(M, str(v)) == v


class TestSpecs:
    def test_chen(self, a2):
        spec = parse_module_spec(a2, QQ, "chen:v")
        assert isinstance(spec, ChenSpec)

    def test_chenext(self, toeplitz):
        spec = parse_module_spec(toeplitz, F2, "chenext:e:t^2+t+1")
        assert isinstance(spec, ChenExtSpec)
        assert str(spec.modulus) == "t^2+t+1"

    def test_chenext_rejects_t(self, toeplitz):
        with pytest.raises(Exception):
            parse_module_spec(toeplitz, F2, "chenext:e:t")

    def test_nvc(self, r1):
        assert isinstance(parse_module_spec(r1, QQ, "nvc:e"), NvcSpec)

    def test_induced_variants(self, r1):
        assert parse_nspec(QQ, "K") == TrivialCoeff(0)
        assert parse_nspec(QQ, "K(2)") == TrivialCoeff(2)
        assert parse_nspec(QQ, "Ka(3)") == ScalarAction(QQ.coerce(3))
        assert isinstance(parse_nspec(QQ, "quot(t-2)"), QuotientCoeff)
        assert parse_nspec(QQ, "laurent(1)") == LaurentCoeff(1)
        spec = parse_module_spec(r1, QQ, "ind:(e)^inf:laurent(0)")
        assert isinstance(spec, InducedSpec)

    def test_twist(self, rose2):
        tw = parse_twist(rose2, QQ, "e=3, g=1/2")
        assert tw.value("e") == 3
        assert tw.value("g") == QQ.parse("1/2")

    def test_bad_spec(self, a2):
        with pytest.raises(ParseError):
            parse_module_spec(a2, QQ, "wat:v")
