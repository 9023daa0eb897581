"""Words, successor sets, the neighborhood recursion, and interior words."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import map_key, word_neighborhood_maps
from selfsim.errors import NoInteriorWordError
from selfsim.interior import (
    find_interior_word,
    format_word,
    is_interior_word,
    mask_to_set,
    neighborhood_of_word,
    parse_word,
    set_to_mask,
    successor_set,
)
from selfsim.neighbor import build_neighbor_graph
from selfsim.presets import load_preset


class TestWords:
    def test_parse_and_format_round_trip(self):
        assert parse_word("214", 4) == (2, 1, 4)
        assert format_word((2, 1, 4)) == "214"

    @pytest.mark.parametrize("bad", ["", "0", "5", "12a", "102"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_word(bad, 4)

    def test_parse_needs_single_digits(self):
        with pytest.raises(ValueError):
            parse_word("1", 12)

    @given(word=st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=12))
    def test_round_trip_property(self, word):
        assert parse_word(format_word(word), 4) == tuple(word)


class TestMasks:
    def test_round_trip(self):
        assert mask_to_set(set_to_mask({1, 3, 10})) == {1, 3, 10}

    def test_identity_rejected_in_mask(self):
        with pytest.raises(ValueError):
            set_to_mask({0, 1})


class TestSuccessorSets:
    def test_identity_gives_first_level_sets(self, chair):
        view = chair.view
        for i in range(1, view.m + 1):
            assert successor_set(view, {0}, i) == mask_to_set(view.base_mask(i))

    def test_identity_must_be_alone(self, chair):
        with pytest.raises(ValueError):
            successor_set(chair.view, {0, 1}, 1)

    def test_label_out_of_range(self, chair):
        with pytest.raises(ValueError):
            successor_set(chair.view, {1}, 5)


class TestNeighborhoodRecursion:
    def test_empty_word_rejected(self, chair):
        with pytest.raises(ValueError):
            neighborhood_of_word(chair.view, ())

    def test_recursion_unfolds_one_step(self, chair):
        view = chair.view
        for word in [(1, 2), (2, 1, 3), (4, 4, 2, 1)]:
            prefix = neighborhood_of_word(view, word[:-1])
            last = word[-1]
            expected = mask_to_set(view.base_mask(last)) | successor_set(
                view, prefix, last
            )
            assert neighborhood_of_word(view, word) == expected

    @settings(max_examples=25, deadline=None)
    @given(word=st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=4))
    def test_matches_cloud_oracle_on_chair(self, chair_spec, chair_graph, word):
        fold = {
            map_key(chair_graph.vertices[v])
            for v in neighborhood_of_word(chair_graph, tuple(word))
        }
        assert fold == word_neighborhood_maps(chair_spec, tuple(word))


class TestInteriorWords:
    def test_chair_shortest_interior_word(self, chair):
        assert find_interior_word(chair.view) == (1, 2)

    def test_chair_both_orders_interior(self, chair):
        assert is_interior_word(chair.view, (1, 2))
        assert is_interior_word(chair.view, (2, 1))
        assert not is_interior_word(chair.view, (1,))
        assert not is_interior_word(chair.view, (2,))

    def test_interior_extends(self, chair):
        # emptiness is stable: any extension of an interior word is interior
        for tail in [(1,), (3, 4), (2, 2, 2)]:
            assert is_interior_word(chair.view, (1, 2) + tail)

    def test_chair_paper_style_seeds_interior(self, chair):
        for word in [(2, 1), (3, 1), (4, 1)]:
            assert is_interior_word(chair.view, word)

    def test_fsquare_interior_word(self, fsquare):
        word = find_interior_word(fsquare.view)
        assert word == (1, 3)
        assert is_interior_word(fsquare.view, word)

    def test_boundaryless_attractor_has_no_interior_word(self):
        # two separated pieces: every piece keeps boundary contact with
        # nothing, the full vertex set is empty, trivially interior
        g = build_neighbor_graph(load_preset("sierpinski"))
        view = g.restricted_to_continuum()
        assert find_interior_word(view) == (1,)

    def test_square_tile_interior_word(self, square_tile):
        word = find_interior_word(square_tile.view)
        assert is_interior_word(square_tile.view, word)
