"""Tree primitives: construction, rotation, traversal, encodings,
subtree extraction and substitution, shape enumeration."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from splaylab.tree import (
    DisconnectedSubtreeError,
    DuplicateKeyError,
    KeyAbsentError,
    Node,
    RotationAtRootError,
    all_shapes,
    bst_from_sequence,
    canonical_relabel,
    catalan,
    child_pointer_diff,
    decode_path,
    insert_leaf,
    left_spine_tree,
    parse_shape,
    path_encoding,
    postorder,
    preorder,
    right_spine_tree,
    root_subtree,
    rotate,
    shape_print,
    shapes_on_keys,
    size,
    substitute,
    tree_keys,
)


def naive_insertion_tree(keys):
    t = None
    seen = set()
    for k in keys:
        if k not in seen:
            t = insert_leaf(t, k)
            seen.add(k)
    return t


class TestConstruction:
    def test_empty(self):
        assert bst_from_sequence(()) is None

    def test_balanced(self):
        assert shape_print(bst_from_sequence([2, 1, 3])) == "(2 (1 . .) (3 . .))"

    def test_descending_gives_left_spine(self):
        assert shape_print(bst_from_sequence([3, 2, 1])) == "(3 (2 (1 . .) .) .)"

    @given(st.lists(st.integers(1, 40), max_size=40))
    def test_matches_naive_insertion(self, keys):
        assert bst_from_sequence(keys) == naive_insertion_tree(keys)

    def test_preorder_roundtrip_exhaustive(self):
        for n in range(0, 6):
            for t in all_shapes(n):
                assert bst_from_sequence(preorder(t)) == t

    def test_big_spine_is_fast(self):
        t = bst_from_sequence(range(20_000, 0, -1))
        assert size(t) == 20_000
        assert t.key == 20_000


class TestRotation:
    def test_rotate_left_child(self):
        t = rotate(bst_from_sequence([2, 1, 3]), 1)
        assert shape_print(t) == "(1 . (2 . (3 . .)))"

    def test_rotation_inverse_exhaustive(self):
        for n in range(2, 6):
            for t in all_shapes(n):
                for key in range(1, n + 1):
                    if t.key == key:
                        continue
                    parent = None
                    node = t
                    while node.key != key:
                        parent = node
                        node = node.left if key < node.key else node.right
                    assert rotate(rotate(t, key), parent.key) == t

    def test_rotate_at_root_is_error(self):
        with pytest.raises(RotationAtRootError):
            rotate(bst_from_sequence([2, 1, 3]), 2)

    def test_rotate_absent_key_is_error(self):
        with pytest.raises(KeyAbsentError):
            rotate(bst_from_sequence([2, 1, 3]), 9)

    def test_rotation_changes_three_pointers(self):
        for n in range(2, 6):
            for t in all_shapes(n):
                for key in range(1, n + 1):
                    if t.key == key:
                        continue
                    assert child_pointer_diff(t, rotate(t, key)) == 3


class TestTraversals:
    def test_empty(self):
        assert preorder(None) == ()
        assert postorder(None) == ()

    def test_small(self):
        t = bst_from_sequence([2, 1, 3])
        assert preorder(t) == (2, 1, 3)
        assert postorder(t) == (1, 3, 2)


class TestPathEncoding:
    def test_root_is_empty(self):
        assert path_encoding(bst_from_sequence([5]), 5) == ""

    def test_left_spine(self):
        assert path_encoding(bst_from_sequence([3, 2, 1]), 1) == "00"

    def test_right_child(self):
        assert path_encoding(bst_from_sequence([2, 1, 3]), 3) == "1"

    def test_absent_key(self):
        with pytest.raises(KeyAbsentError):
            path_encoding(bst_from_sequence([2, 1, 3]), 4)

    def test_decode_reaches_key_exhaustive(self):
        for n in range(1, 6):
            for t in all_shapes(n):
                for key in range(1, n + 1):
                    assert decode_path(t, path_encoding(t, key)) == key


class TestRootSubtree:
    def test_single_root(self):
        t = bst_from_sequence([2, 1, 3])
        assert shape_print(root_subtree(t, {2})) == "(2 . .)"

    def test_whole_tree(self):
        t = bst_from_sequence([2, 1, 3])
        assert root_subtree(t, {1, 2, 3}) == t

    def test_disconnected(self):
        t = bst_from_sequence([3, 2, 1])
        with pytest.raises(DisconnectedSubtreeError):
            root_subtree(t, {3, 1})

    def test_root_missing(self):
        t = bst_from_sequence([3, 2, 1])
        with pytest.raises(DisconnectedSubtreeError):
            root_subtree(t, {2, 1})


def all_root_subtree_keysets(t):
    from splaylab.opt import _root_subtree_keysets

    return _root_subtree_keysets(t, t.key)


class TestSubstitute:
    def test_identity(self):
        t = bst_from_sequence([2, 1, 3])
        q = root_subtree(t, {2, 1})
        assert substitute(t, q) == t

    def test_involution(self):
        t = bst_from_sequence([4, 2, 1, 3, 5])
        q = root_subtree(t, {4, 2})
        other = Node(2, None, Node(4))
        swapped = substitute(t, other)
        assert substitute(swapped, q) == t

    def test_symmetric_order_exhaustive(self):
        # Every rearrangement of every root subtree reattaches hanging
        # subtrees into the unique symmetric-order slots.
        for n in range(1, 7):
            for t in all_shapes(n):
                for keyset in all_root_subtree_keysets(t):
                    for arrangement in shapes_on_keys(keyset):
                        out = substitute(t, arrangement)
                        assert tree_keys(out) == tree_keys(t)
                        assert sorted(preorder(out)) == list(range(1, n + 1))
                        _assert_search_order(out)


def _assert_search_order(t, lo=float("-inf"), hi=float("inf")):
    if t is None:
        return
    assert lo < t.key < hi
    _assert_search_order(t.left, lo, t.key)
    _assert_search_order(t.right, t.key, hi)


class TestShapes:
    def test_counts_match_catalan(self):
        for n in range(0, 9):
            assert len(all_shapes(n)) == catalan(n)

    def test_shapes_distinct(self):
        for n in range(0, 7):
            seen = {preorder(t) for t in all_shapes(n)}
            assert len(seen) == catalan(n)

    def test_small_counts(self):
        assert len(all_shapes(0)) == 1
        assert len(all_shapes(3)) == 5
        assert len(all_shapes(4)) == 14


class TestPrintForms:
    def test_roundtrip(self):
        for n in range(0, 5):
            for t in all_shapes(n):
                assert parse_shape(shape_print(t)) == t

    def test_spines(self):
        assert shape_print(left_spine_tree([1, 2])) == "(2 (1 . .) .)"
        assert shape_print(right_spine_tree([1, 2])) == "(1 . (2 . .))"


class TestRelabel:
    def test_canonicalizes_to_dense_keys(self):
        t = bst_from_sequence([20, 7, 93])
        canon, mapping = canonical_relabel(t)
        assert preorder(canon) == (2, 1, 3)
        assert mapping == {7: 1, 20: 2, 93: 3}


def test_duplicate_insert_rejected():
    with pytest.raises(DuplicateKeyError):
        insert_leaf(bst_from_sequence([1]), 1)
