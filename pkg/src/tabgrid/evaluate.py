"""Evaluation protocols for recognition and interpretation output.

Recognition quality follows the adjacency-relation protocol: each
non-blank cell relates to its nearest non-blank right and down
neighbors, relations compare as (content, content, direction) multisets
within greedily IoU-matched tables, and corpora macro-average
per-document precision/recall/F1. Cell-level scoring matches cell boxes
at several IoU thresholds and weights the resulting F1 values by
threshold.  Interpretation output compares extracted tuples exactly
(whitespace-trimmed) inside per-page matched tuple sets, micro-pooled.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import DuplicateKey, EmptyCorpus
from .interpret import TupleSet
from .kernels import iou_matrix
from .matching import WeightedBipartiteGraph, max_weight_matching
from .model import RecognizedTable, cell_grid


class Direction(enum.Enum):
    RIGHT = "right"
    DOWN = "down"


@dataclass(frozen=True)
class AdjacencyRelation:
    from_content: str
    to_content: str
    direction: Direction
    from_key: tuple[int, int]  # (row_start, col_start) of the origin cell

    @property
    def triple(self) -> tuple[str, str, str]:
        return (self.from_content, self.to_content, self.direction.value)


@dataclass(frozen=True)
class PRF:
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float:
        d = self.tp + self.fp
        return self.tp / d if d else 1.0

    @property
    def recall(self) -> float:
        d = self.tp + self.fn
        return self.tp / d if d else 1.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 0.0 if p + r == 0 else 2 * p * r / (p + r)


@dataclass(frozen=True)
class MacroPRF:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvalConfig:
    iou_min: float = 0.5
    cell_iou_thresholds: tuple[float, ...] = (0.6, 0.7, 0.8, 0.9)


def _blank(content: str) -> bool:
    return not content.strip()


def adjacency_relations(table: RecognizedTable) -> list[AdjacencyRelation]:
    """Right/down relations from every non-blank cell to its nearest
    non-blank neighbor, skipping blank cells in between."""
    grid = cell_grid(table)
    cells = sorted(set(table.cells), key=lambda c: (c.row_start, c.col_start))
    relations = []
    for c in cells:
        if _blank(c.content):
            continue
        right = None
        for j in range(c.col_end + 1, table.n_cols):
            for r in range(c.row_start, c.row_end + 1):
                cand = grid[r][j]
                if not _blank(cand.content):
                    right = cand
                    break
            if right is not None:
                break
        if right is not None:
            relations.append(
                AdjacencyRelation(
                    c.content, right.content, Direction.RIGHT, (c.row_start, c.col_start)
                )
            )
        down = None
        for r in range(c.row_end + 1, table.n_rows):
            for j in range(c.col_start, c.col_end + 1):
                cand = grid[r][j]
                if not _blank(cand.content):
                    down = cand
                    break
            if down is not None:
                break
        if down is not None:
            relations.append(
                AdjacencyRelation(
                    c.content, down.content, Direction.DOWN, (c.row_start, c.col_start)
                )
            )
    return relations


@dataclass(frozen=True)
class TableMatch:
    pairs: tuple[tuple[int, int], ...]
    unmatched_gt: tuple[int, ...]
    unmatched_pred: tuple[int, ...]


def _greedy_iou_pairs(
    gt_boxes: np.ndarray, pred_boxes: np.ndarray, threshold: float
) -> list[tuple[int, int]]:
    matrix = iou_matrix(gt_boxes, pred_boxes)
    candidates = [
        (-matrix[i, j], i, j)
        for i in range(matrix.shape[0])
        for j in range(matrix.shape[1])
        if matrix[i, j] >= threshold
    ]
    candidates.sort()
    used_gt: set[int] = set()
    used_pred: set[int] = set()
    pairs = []
    for _, i, j in candidates:
        if i in used_gt or j in used_pred:
            continue
        used_gt.add(i)
        used_pred.add(j)
        pairs.append((i, j))
    return pairs


def match_tables(
    gt: list[RecognizedTable], pred: list[RecognizedTable], iou_min: float
) -> TableMatch:
    """Greedy one-to-one region matching by descending IoU (ties by index)."""
    gt_boxes = np.array([t.region.as_tuple() for t in gt], dtype=np.int64).reshape(-1, 4)
    pred_boxes = np.array([t.region.as_tuple() for t in pred], dtype=np.int64).reshape(-1, 4)
    pairs = _greedy_iou_pairs(gt_boxes, pred_boxes, iou_min)
    used_gt = {i for i, _ in pairs}
    used_pred = {j for _, j in pairs}
    return TableMatch(
        pairs=tuple(sorted(pairs)),
        unmatched_gt=tuple(i for i in range(len(gt)) if i not in used_gt),
        unmatched_pred=tuple(j for j in range(len(pred)) if j not in used_pred),
    )


PageTableMap = dict[int, list[RecognizedTable]]


def _as_page_map(doc: PageTableMap | list[RecognizedTable]) -> PageTableMap:
    if isinstance(doc, dict):
        return doc
    return {0: list(doc)}


def recognition_score(
    gt_doc: PageTableMap | list[RecognizedTable],
    pred_doc: PageTableMap | list[RecognizedTable],
    cfg: EvalConfig = EvalConfig(),
) -> PRF:
    """Adjacency-relation PRF for one document (tables aligned per page)."""
    gt_pages = _as_page_map(gt_doc)
    pred_pages = _as_page_map(pred_doc)
    tp = fp = fn = 0
    for page in sorted(set(gt_pages) | set(pred_pages)):
        gt_tables = gt_pages.get(page, [])
        pred_tables = pred_pages.get(page, [])
        match = match_tables(gt_tables, pred_tables, cfg.iou_min)
        for gi, pi in match.pairs:
            gt_rels = Counter(r.triple for r in adjacency_relations(gt_tables[gi]))
            pred_rels = Counter(r.triple for r in adjacency_relations(pred_tables[pi]))
            tp += sum((gt_rels & pred_rels).values())
            fp += sum((pred_rels - gt_rels).values())
            fn += sum((gt_rels - pred_rels).values())
        for gi in match.unmatched_gt:
            fn += len(adjacency_relations(gt_tables[gi]))
        for pi in match.unmatched_pred:
            fp += len(adjacency_relations(pred_tables[pi]))
    return PRF(tp=tp, fp=fp, fn=fn)


def corpus_average(per_document: list[PRF]) -> MacroPRF:
    """Mean of per-document precision, recall, and F1 (not recomputed)."""
    if not per_document:
        raise EmptyCorpus("no documents to average")
    n = len(per_document)
    return MacroPRF(
        precision=sum(d.precision for d in per_document) / n,
        recall=sum(d.recall for d in per_document) / n,
        f1=sum(d.f1 for d in per_document) / n,
    )


def cell_f1_at_iou(
    gt_table: RecognizedTable, pred_table: RecognizedTable, threshold: float
) -> PRF:
    """Greedy one-to-one cell box matching at the given IoU threshold."""
    gt_boxes = np.array([c.box.as_tuple() for c in gt_table.cells], dtype=np.int64)
    pred_boxes = np.array([c.box.as_tuple() for c in pred_table.cells], dtype=np.int64)
    pairs = _greedy_iou_pairs(gt_boxes.reshape(-1, 4), pred_boxes.reshape(-1, 4), threshold)
    tp = len(pairs)
    return PRF(tp=tp, fp=len(pred_table.cells) - tp, fn=len(gt_table.cells) - tp)


def wavg_f1(f1_by_threshold: dict[float, float]) -> float:
    """Threshold-weighted average: sum(t * F1_t) / sum(t); empty -> 0.0."""
    if not f1_by_threshold:
        return 0.0
    total = sum(f1_by_threshold)
    return sum(t * f1 for t, f1 in f1_by_threshold.items()) / total


def _canon(values: dict[str, str]) -> tuple[tuple[str, str], ...]:
    return tuple(sorted((k, v.strip()) for k, v in values.items()))


def tuple_set_f1(gt: TupleSet, pred: TupleSet) -> PRF:
    """Exact tuple matching (values trimmed), each tuple used at most once."""
    gt_counts = Counter(_canon(t.values) for t in gt.tuples)
    pred_counts = Counter(_canon(t.values) for t in pred.tuples)
    tp = sum((gt_counts & pred_counts).values())
    return PRF(tp=tp, fp=len(pred.tuples) - tp, fn=len(gt.tuples) - tp)


def _check_unique_keys(sets: list[TupleSet], side: str) -> None:
    seen = set()
    for ts in sets:
        key = (ts.file_id, ts.page_nr, ts.table_idx)
        if key in seen:
            raise DuplicateKey(f"{side} tuple sets share key {key}")
        seen.add(key)


def interpretation_score(gt_sets: list[TupleSet], pred_sets: list[TupleSet]) -> PRF:
    """Micro-pooled tuple PRF; per page, tuple sets pair up by a
    maximum-weight matching over their mutual tuple F1."""
    _check_unique_keys(gt_sets, "ground-truth")
    _check_unique_keys(pred_sets, "predicted")
    by_page_gt: dict[tuple[str, int], list[TupleSet]] = {}
    by_page_pred: dict[tuple[str, int], list[TupleSet]] = {}
    for ts in gt_sets:
        by_page_gt.setdefault((ts.file_id, ts.page_nr), []).append(ts)
    for ts in pred_sets:
        by_page_pred.setdefault((ts.file_id, ts.page_nr), []).append(ts)

    tp = fp = fn = 0
    for page in sorted(set(by_page_gt) | set(by_page_pred)):
        gts = sorted(by_page_gt.get(page, []), key=lambda ts: ts.table_idx)
        preds = sorted(by_page_pred.get(page, []), key=lambda ts: ts.table_idx)
        edges = tuple(
            (gi, pi, tuple_set_f1(g, p).f1)
            for gi, g in enumerate(gts)
            for pi, p in enumerate(preds)
        )
        graph = WeightedBipartiteGraph(n_left=len(gts), n_right=len(preds), edges=edges)
        matching = max_weight_matching(graph)
        matched_gt = {gi for gi, _ in matching.pairs}
        matched_pred = {pi for _, pi in matching.pairs}
        for gi, pi in matching.pairs:
            counts = tuple_set_f1(gts[gi], preds[pi])
            tp += counts.tp
            fp += counts.fp
            fn += counts.fn
        for gi, g in enumerate(gts):
            if gi not in matched_gt:
                fn += len(g.tuples)
        for pi, p in enumerate(preds):
            if pi not in matched_pred:
                fp += len(p.tuples)
    return PRF(tp=tp, fp=fp, fn=fn)
