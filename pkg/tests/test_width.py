import math

import numpy as np
import pytest

from groupsquares.perm import Parity, Permutation, cycle_type, parity
from groupsquares.squares import decompose_two_squares, is_square_in_an, squares_not_closed_witness
from groupsquares.width import (
    GroupLimitExceeded,
    builtin_group,
    builtin_names,
    builtin_order,
    enumerate_builtin,
    enumerate_group,
    load_generators,
    naive_width_report,
    parse_generator_file,
    squares_set,
    squaring_chain,
    width_by_squares,
)


def P(text, n=None):
    return Permutation.parse(text, n)


class TestEnumerate:
    def test_s3(self):
        G = enumerate_group([P("(1,2,3)"), P("(1,2)", 3)])
        assert G.order == 6
        assert P("e", 3) in G

    def test_carmichael_a5(self):
        G = enumerate_group([P("(1,2,3)", 5), P("(3,4,5)")])
        assert G.order == 60

    def test_deterministic(self):
        a = enumerate_builtin("A6").elements
        b = enumerate_builtin("A6").elements
        assert np.array_equal(a, b)

    def test_limit(self):
        with pytest.raises(GroupLimitExceeded):
            enumerate_builtin("A7", limit=100)
        with pytest.raises(GroupLimitExceeded):
            enumerate_builtin("A10")

    def test_mixed_degrees(self):
        with pytest.raises(ValueError):
            enumerate_group([P("(1,2)", 3), P("(1,2)", 4)])

    @pytest.mark.parametrize("name", [n for n in builtin_names() if n not in ("A10", "S10")])
    def test_builtin_orders(self, name):
        G = enumerate_builtin(name)
        assert G.order == builtin_order(name)

    def test_large_builtin_needs_opt_in(self):
        with pytest.raises(ValueError):
            builtin_group("M23")
        assert len(builtin_group("M24", allow_large=True)) >= 2
        with pytest.raises(ValueError):
            builtin_group("M13")
        with pytest.raises(ValueError):
            builtin_group("A3")

    def test_closed_under_products_and_inverses(self):
        G = enumerate_builtin("M11")
        rng = np.random.default_rng(0)
        idx = rng.integers(0, G.order, size=(500, 2))
        rows = np.take_along_axis(G.elements[idx[:, 1]], G.elements[idx[:, 0]].astype(np.intp), axis=1)
        assert (G.index.lookup(rows) >= 0).all()
        assert (G.inverse_map >= 0).all()


class TestGeneratorFiles:
    def test_parse(self, tmp_path):
        path = tmp_path / "q.txt"
        path.write_text("# Q 8 8\n# comment\n(1,2,7,5)(3,6,4,8)\n\n(1,4,7,3)(2,6,5,8)\n")
        data = load_generators(path)
        assert (data.name, data.order, data.degree, len(data.generators)) == ("Q", 8, 8, 2)

    @pytest.mark.parametrize(
        "text", ["", "(1,2)\n", "# X 2 2\n", "# X 2 2\n(1,2\n", "# X 2 2\n(1,3)\n"]
    )
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_generator_file(text)


class TestSquares:
    def test_a4(self):
        G = enumerate_builtin("A4")
        S = G.permutations(squares_set(G))
        assert len(S) == 9
        assert all(cycle_type(s).as_dict() in ({1: 4}, {3: 1, 1: 1}) for s in S)
        assert P("(1,3)(2,4)") not in S

    def test_s3(self):
        G = enumerate_builtin("S3")
        assert set(G.permutations(squares_set(G))) == {P("e", 3), P("(1,2,3)"), P("(1,3,2)")}

    def test_c2(self):
        G = enumerate_group([P("(1,2)")])
        assert G.permutations(squares_set(G)) == [P("e", 2)]

    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    def test_matches_criterion(self, n):
        G = enumerate_builtin(f"A{n}")
        S = set(G.permutations(squares_set(G)))
        for g in G.permutations():
            assert (g in S) == is_square_in_an(cycle_type(g))

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_conjugation_closed(self, n):
        G = enumerate_builtin(f"A{n}")
        S = squares_set(G)
        s_rows = G.elements[S]
        for i in range(G.order):
            g, gi = G.elements[i], G.elements[G.inverse_map[i]]
            # row (g^-1 s g)[x] = g[s[g^-1[x]]]
            conj = np.take_along_axis(s_rows, np.broadcast_to(gi, s_rows.shape).astype(np.intp), axis=1)
            conj = g[conj]
            assert np.array_equal(np.sort(G.lookup(conj)), S)

    @pytest.mark.parametrize("n", range(4, 10))
    def test_not_multiplication_closed(self, n):
        G = enumerate_builtin(f"A{n}")
        S = set(G.permutations(squares_set(G)))
        g1, g2 = squares_not_closed_witness(n)
        assert g1 in S and g2 in S and g1 * g2 not in S

    @pytest.mark.parametrize("name", [n for n in builtin_names() if n not in ("A10", "S10")])
    def test_squaring_chain_stabilises(self, name):
        G = enumerate_builtin(name)
        chain = squaring_chain(G)
        assert chain[0] == G.order
        assert all(a > b for a, b in zip(chain, chain[1:]))
        assert len(chain) <= G.order

    def test_classes_are_conjugacy_classes(self):
        G = enumerate_builtin("S5")
        labels = G.class_labels
        elems = G.permutations()
        for i, g in enumerate(elems):
            same = {j for j in range(G.order) if labels[j] == labels[i]}
            assert same == {j for j, h in enumerate(elems) if cycle_type(h) == cycle_type(g)}


class TestWidth:
    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_alternating_width_two(self, n):
        G = enumerate_builtin(f"A{n}")
        rep = width_by_squares(G)
        assert rep.generates and rep.width == 2 and rep.diameter == 2
        for g in G.permutations():
            assert decompose_two_squares(g).product() == g

    @pytest.mark.parametrize("name", ["A4", "A5", "A6", "S3", "S4", "S5", "M8", "M9", "M10", "M20"])
    def test_matches_naive(self, name):
        G = enumerate_builtin(name)
        fast, ref = width_by_squares(G), naive_width_report(G)
        for f in ("order", "squares_count", "squares_order", "generates", "width", "diameter"):
            assert getattr(fast, f) == getattr(ref, f), f

    def test_m9(self):
        rep = width_by_squares(enumerate_builtin("M9"))
        assert rep.order == 72 and rep.squares_order == 18
        assert not rep.generates and math.isinf(rep.diameter)
        assert rep.to_json()["diameter"] == "inf"

    def test_invariants(self):
        for name in ["A4", "S4", "S6", "M8", "M9", "M10", "M11"]:
            rep = width_by_squares(enumerate_builtin(name))
            if math.isfinite(rep.diameter):
                assert rep.width <= rep.diameter
            if not rep.generates:
                assert math.isinf(rep.diameter)

    @pytest.mark.parametrize("n", range(5, 10))
    def test_simple_alternating_width_at_least_two(self, n):
        rep = width_by_squares(enumerate_builtin(f"A{n}"))
        assert rep.width >= 2

    def test_trivial_group(self):
        rep = width_by_squares(enumerate_group([P("e", 3)]))
        assert (rep.order, rep.width, rep.diameter, rep.generates) == (1, 0, 0, True)

    def test_json(self):
        out = width_by_squares(enumerate_builtin("A5")).to_json()
        assert set(out) == {"name", "order", "squares_order", "generates", "width", "diameter", "runtime_ms"}
        assert out["diameter"] == 2 and out["name"] == "A5"


def test_symmetric_groups_not_generated_by_squares():
    # squares are even, so <S(S_n)> lies in A_n
    for n in range(3, 8):
        G = enumerate_builtin(f"S{n}")
        rep = width_by_squares(G)
        assert not rep.generates and rep.squares_order == math.factorial(n) // 2
        assert all(parity(x) is Parity.EVEN for x in G.permutations(squares_set(G)))
