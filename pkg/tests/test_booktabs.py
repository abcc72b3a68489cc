import random

import pytest

from tabgrid.booktabs import (
    HeaderLevels,
    compute_column_threshold,
    find_rule_triples,
    group_inner_rules,
    horizontal_profile,
    recognize_booktabs_tables,
    segment_columns,
    segment_rows,
    vertical_profile,
)
from tabgrid.errors import EmptyBody, InsufficientContext
from tabgrid.fixtures import gen_booktabs_page
from tabgrid.geometry import box
from tabgrid.model import PageLayout, RecognizerConfig, Separator, SeparatorOrientation, Word


def h_rule(x0, y, x1):
    return Separator(box=box(x0, y - 1, x1, y + 1),
                     orientation=SeparatorOrientation.HORIZONTAL)


def word(l, t, r, b, text="w", line_id=None):
    return Word(box=box(l, t, r, b), text=text, line_id=line_id)


CFG = RecognizerConfig()


# ---------------------------------------------------------------------------
# rule triples


def test_three_aligned_rules_form_one_triple():
    rules = [h_rule(100, 100, 500), h_rule(100, 150, 500), h_rule(100, 300, 500)]
    triples = find_rule_triples(rules, CFG)
    assert len(triples) == 1
    t = triples[0]
    assert t.top.box.center[1] == 100
    assert t.middle.box.center[1] == 150
    assert t.bottom.box.center[1] == 300
    assert t.inner_rules == ()


def test_short_rules_between_top_and_middle_become_inner():
    rules = [
        h_rule(100, 100, 500),
        h_rule(120, 120, 260),   # grouping rules: narrower, between top and middle
        h_rule(300, 120, 480),
        h_rule(100, 150, 500),
        h_rule(100, 300, 500),
    ]
    triples = find_rule_triples(rules, CFG)
    assert len(triples) == 1
    assert len(triples[0].inner_rules) == 2


def test_misaligned_middle_rule_blocks_triple():
    # middle rule 40% narrower than the others: no compatible triple
    rules = [h_rule(100, 100, 500), h_rule(100, 150, 340), h_rule(100, 300, 500)]
    assert find_rule_triples(rules, CFG) == []


def test_alignment_tolerance_scales_with_width():
    # 2% of a 1000 px rule is 20 px: edges 15 px apart still align
    rules = [h_rule(0, 100, 1000), h_rule(15, 150, 995), h_rule(5, 300, 1000)]
    assert len(find_rule_triples(rules, CFG)) == 1
    # but on a 100 px rule the tolerance is max(5, 2) = 5: 15 px breaks it
    rules = [h_rule(0, 100, 100), h_rule(15, 150, 100), h_rule(0, 300, 100)]
    assert find_rule_triples(rules, CFG) == []


def test_greedy_scan_takes_first_compatible_pair():
    # four aligned rules: the first three are consumed, the fourth stays free
    rules = [h_rule(0, y, 400) for y in (100, 150, 300, 360)]
    triples = find_rule_triples(rules, CFG)
    assert len(triples) == 1
    assert triples[0].bottom.box.center[1] == 300


def test_two_stacked_tables_found_in_one_pass():
    rules = [h_rule(0, y, 400) for y in (100, 150, 300)]
    rules += [h_rule(0, y, 400) for y in (500, 540, 700)]
    triples = find_rule_triples(rules, CFG)
    assert len(triples) == 2
    assert [t.top.box.center[1] for t in triples] == [100, 500]


def test_inner_rules_cluster_into_levels():
    t = find_rule_triples(
        [
            h_rule(0, 100, 400),
            h_rule(10, 120, 150),
            h_rule(200, 121, 390),  # same level: centers 1 px apart
            h_rule(10, 130, 200),   # separate level
            h_rule(0, 160, 400),
            h_rule(0, 300, 400),
        ],
        CFG,
    )[0]
    levels = group_inner_rules(t)
    assert levels.header_row_count == 3  # two grouping levels + the title row
    assert len(levels.levels) == 2
    assert len(levels.levels[0].rules) == 2
    assert len(levels.levels[1].rules) == 1


def test_no_inner_rules_single_header_row():
    t = find_rule_triples(
        [h_rule(0, 100, 400), h_rule(0, 150, 400), h_rule(0, 300, 400)], CFG
    )[0]
    levels = group_inner_rules(t)
    assert levels.levels == ()
    assert levels.header_row_count == 1


# ---------------------------------------------------------------------------
# projection profiles


def test_horizontal_profile_example():
    region = box(0, 0, 100, 40)
    p = horizontal_profile([word(10, 10, 30, 20)], region)
    assert p.origin == 0
    assert len(p.values) == 40
    assert all(p.values[y] == 20 for y in range(10, 20))
    assert all(p.values[y] == 0 for y in list(range(0, 10)) + list(range(20, 40)))


def test_profiles_clip_to_region():
    # contributions are clipped to the region: a huge word counts only
    # its in-region extent
    region = box(10, 10, 50, 30)
    p = horizontal_profile([word(0, 0, 100, 100)], region)
    assert p.values.tolist() == [40] * 20
    v = vertical_profile([word(0, 0, 100, 100)], region)
    assert v.values.tolist() == [20] * 40


def test_segment_rows_midpoints():
    region = box(0, 0, 50, 30)
    words = [word(0, 0, 50, 10), word(0, 20, 50, 30)]
    p = horizontal_profile(words, region)
    assert segment_rows(p) == [15]


def test_segment_rows_ignores_boundary_gaps():
    region = box(0, 0, 50, 40)
    words = [word(0, 8, 50, 16), word(0, 24, 50, 32)]
    p = horizontal_profile(words, region)
    # leading [0,8) and trailing [32,40) runs are not row gaps
    assert segment_rows(p) == [20]


def test_segment_rows_empty_body():
    p = horizontal_profile([], box(0, 0, 10, 10))
    with pytest.raises(EmptyBody):
        segment_rows(p)


def test_segment_columns_threshold():
    region = box(0, 0, 130, 20)
    words = [word(0, 0, 30, 20), word(50, 0, 80, 20), word(100, 0, 130, 20)]
    # gaps [30,50) and [80,100) are 20 px wide
    assert segment_columns(words, region, d_column=10.0) == [40, 90]
    # threshold is strict: a gap equal to d_column is ignored
    assert segment_columns(words, region, d_column=20.0) == []
    assert segment_columns(words, region, d_column=19.999) == [40, 90]


def test_segment_columns_empty():
    with pytest.raises(EmptyBody):
        segment_columns([], box(0, 0, 10, 10), 1.0)


# ---------------------------------------------------------------------------
# column threshold


def test_threshold_simple_line():
    words = [
        word(0, 0, 20, 10, "a", line_id=0),
        word(25, 0, 45, 10, "b", line_id=0),  # gap 5, heights 10
        word(50, 0, 70, 10, "c", line_id=0),
    ]
    page = PageLayout(page_width=200, page_height=50, words=tuple(words), separators=())
    th = compute_column_threshold(page, words, gamma=2.0)
    assert th.d_page == pytest.approx(0.5)
    assert th.h_table == pytest.approx(10.0)
    assert th.d_column == pytest.approx(10.0)


def test_threshold_is_median_over_pairs():
    words = [
        word(0, 0, 10, 10, line_id=0), word(12, 0, 22, 10, line_id=0),   # 0.2
        word(0, 20, 10, 30, line_id=1), word(14, 20, 24, 30, line_id=1),  # 0.4
        word(0, 40, 10, 50, line_id=2), word(110, 40, 120, 50, line_id=2),  # 10.0
    ]
    page = PageLayout(page_width=300, page_height=100, words=tuple(words), separators=())
    th = compute_column_threshold(page, [word(0, 0, 10, 10)], gamma=1.0)
    assert th.d_page == pytest.approx(0.4)


def test_threshold_overlapping_words_clamp_to_zero_gap():
    words = [
        word(0, 0, 30, 10, line_id=0), word(25, 0, 50, 10, line_id=0),  # overlap -> gap 0
        word(0, 20, 10, 30, line_id=1), word(16, 20, 26, 30, line_id=1),  # 0.6
    ]
    page = PageLayout(page_width=100, page_height=50, words=tuple(words), separators=())
    th = compute_column_threshold(page, words, gamma=1.0)
    assert th.d_page == pytest.approx(0.3)  # median of {0.0, 0.6}


def test_threshold_reconstructs_lines_without_ids():
    # same geometry as the simple case but line_id stripped: chained by
    # >= 50% vertical overlap
    words = [word(0, 0, 20, 10), word(25, 2, 45, 12), word(50, 0, 70, 10)]
    page = PageLayout(page_width=200, page_height=50, words=tuple(words), separators=())
    th = compute_column_threshold(page, words, gamma=2.0)
    assert th.d_page == pytest.approx(0.5)


def test_threshold_insufficient_context():
    lonely = [word(0, 0, 20, 10, line_id=0), word(0, 30, 20, 40, line_id=1)]
    page = PageLayout(page_width=100, page_height=60, words=tuple(lonely), separators=())
    with pytest.raises(InsufficientContext):
        compute_column_threshold(page, lonely, gamma=2.0)
    pair = [word(0, 0, 20, 10, line_id=0), word(25, 0, 45, 10, line_id=0)]
    page2 = PageLayout(page_width=100, page_height=30, words=tuple(pair), separators=())
    with pytest.raises(InsufficientContext):
        compute_column_threshold(page2, [], gamma=2.0)


# ---------------------------------------------------------------------------
# end to end


def test_booktabs_end_to_end_flat_header():
    rng = random.Random(12)
    page = gen_booktabs_page(rng, "t", 1, rows=4, cols=3, cmidrule_levels=[])
    tables, diags = recognize_booktabs_tables(page.layout, CFG)
    assert len(tables) == 1
    got, want = tables[0], page.gt.tables[0]
    assert got.header_row_count == 1
    assert (got.n_rows, got.n_cols) == (want.n_rows, want.n_cols)
    assert got.region == want.region
    assert {(c.row_start, c.col_start): c.content for c in got.cells} == {
        (c.row_start, c.col_start): c.content for c in want.cells
    }


def test_booktabs_end_to_end_grouped_header():
    rng = random.Random(13)
    page = gen_booktabs_page(
        rng, "t", 1, rows=3, cols=4, cmidrule_levels=[[(0, 1), (2, 3)]]
    )
    tables, _ = recognize_booktabs_tables(page.layout, CFG)
    assert len(tables) == 1
    got, want = tables[0], page.gt.tables[0]
    assert got.header_row_count == 2
    spans = {(c.row_start, c.row_end, c.col_start, c.col_end) for c in got.cells}
    assert (0, 0, 0, 1) in spans and (0, 0, 2, 3) in spans
    assert spans == {(c.row_start, c.row_end, c.col_start, c.col_end) for c in want.cells}


def test_booktabs_random_round_trip():
    rng = random.Random(14)
    for _ in range(20):
        page = gen_booktabs_page(rng, "t", 1)
        tables, diags = recognize_booktabs_tables(page.layout, CFG)
        assert len(tables) == 1, diags
        got, want = tables[0], page.gt.tables[0]
        got_cells = {(c.row_start, c.row_end, c.col_start, c.col_end): (c.content, c.box)
                     for c in got.cells}
        want_cells = {(c.row_start, c.row_end, c.col_start, c.col_end): (c.content, c.box)
                      for c in want.cells}
        assert got_cells == want_cells


def test_booktabs_requires_body_region():
    # middle rule at the bottom rule: no room for body rows
    layout_words = [
        word(0, 0, 20, 10, "a", line_id=0),
        word(25, 0, 45, 10, "b", line_id=0),
    ]
    rules = [h_rule(0, 30, 300), h_rule(0, 198, 300), h_rule(0, 200, 300)]
    page = PageLayout(
        page_width=400, page_height=300, words=tuple(layout_words),
        separators=tuple(rules),
    )
    tables, diags = recognize_booktabs_tables(page, CFG)
    assert tables == []
    assert diags  # explains why the candidate was dropped
