from hypothesis import given, settings, strategies as st

from conftest import W, words
from tilecert.automaton import ShiftAutomaton, from_tiles, shift
from tilecert.srs import LEFT, RIGHT
from tilecert.tiling import TileSet, btiled, tiled

L, R = LEFT, RIGHT
T0 = TileSet.of(2, ["<b", "bc", "<a", "ac", "c>"])


def sparse_start():
    return from_tiles(T0)


def test_from_tiles_sparse_start():
    a = from_tiles(T0)
    assert a.states == {(L,), ("a",), ("b",), ("c",), (R,)}
    assert a.tile_count == 5
    assert a.tiles_of() == T0


def test_from_tiles_empty():
    a = from_tiles(TileSet(2, frozenset()))
    assert a.states == {(L,)}
    assert a.tile_count == 0
    assert a.tiles_of() == TileSet(2, frozenset())


def test_add_paths_adds_ab_bb():
    a = sparse_start().add_path(("a",), W("bc")).add_path(("b",), W("bc"))
    assert a.tiles_of() == T0.union(TileSet.of(2, ["ab", "bb"]))


def test_trace():
    a = sparse_start()
    assert a.trace((L,), W("ac") + (R,)) == (R,)
    assert a.trace(("b",), ()) == ("b",)
    assert a.trace((L,), W("ab")) is None


def test_redex_endpoints():
    a = sparse_start()
    assert a.redex_endpoints(("c", R)) == {(("a",), (R,)), (("b",), (R,))}
    assert a.redex_endpoints(W("ba")) == set()
    assert a.redex_endpoints(()) == {(p, p) for p in a.states}


def test_add_path_forces_shift_states():
    a = ShiftAutomaton(2).add_path((L,), W("ab"))
    assert a.states == {(L,), ("a",), ("b",)}
    assert a.tiles_of() == TileSet.of(2, ["<a", "ab"])
    again = a.add_path((L,), W("ab"))
    assert again == a
    b = sparse_start().add_path(("b",), W("bc") + (R,))
    assert "bb" in {t.plain for t in b.tiles_of()}


def test_right_contexts():
    a = sparse_start().add_path(("a",), W("bc")).add_path(("b",), W("bc"))
    assert a.right_contexts(("b",), 0) == {()}
    assert a.right_contexts(("b",), 2) == {W("bb"), W("bc"), ("c", R)}
    assert a.right_contexts((R,), 1) == set()
    loop = ShiftAutomaton(3).add_path((R, R), (L, L, "a"))
    assert loop.right_contexts((R, R), 2) == set()


def test_to_dot_names_states_plainly():
    dot = sparse_start().to_dot()
    assert '"<" -> "a" [label="a"];' in dot
    assert dot.startswith("digraph")


def test_k1_has_single_state():
    a = ShiftAutomaton(1).add_path((), W("abc"))
    assert a.states == {()}
    assert a.tile_count == 3


@settings(max_examples=100, deadline=None)
@given(st.lists(words, min_size=1, max_size=4), st.integers(1, 4))
def test_paths_give_tiles_and_round_trip(ws, k):
    a = ShiftAutomaton(k)
    for w in ws:
        a = a.add_path(a.initial, tuple(w) + (R,) * (k - 1))
    assert a.check_shift_property() == []
    T = a.tiles_of()
    for w in ws:
        assert set(btiled(w, k)) <= T.tiles
        assert set(tiled(a.initial + tuple(w), k)) <= T.tiles
    assert from_tiles(T, a.initial) == a
    for p, c, q in a.edges():
        assert q == shift(p, c)
