import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from testability.dataset import (
    BadCell,
    DegenerateSplit,
    DuplicateRecord,
    ForbiddenFeature,
    MissingColumn,
    TooFewValues,
    compute_quartiles,
    ingest_csv,
    label_by_quartiles,
    to_feature_matrix,
)
from testability.metrics import INDEPENDENT_VARIABLES, MetricId
from testability.records import EffectivenessLabel, RawDataset


def csv_text(rows, header="class_path,test_path,LOC,WMC,M"):
    return header + "\n" + "\n".join(rows) + "\n"


def test_metadata_columns_dropped_paths_become_ids():
    text = csv_text(
        [
            "proj,http://x,abc1,a/B.java,a/BTest.java,10,2,0.5",
            "proj,http://x,abc1,c/D.java,c/DTest.java,4,1,0.9",
        ],
        header="project,url,commit,class_path,test_path,LOC,WMC,M",
    )
    data = ingest_csv(text)
    assert len(data) == 2
    record = data.records[0]
    assert record.class_id == "a/B.java"
    assert record.test_id == "a/BTest.java"
    assert set(record.metrics) == {MetricId.LOC, MetricId.WMC, MetricId.M}


def test_bad_cell_names_row_and_column():
    text = csv_text(["a,b,10,2,n/a"])
    with pytest.raises(BadCell) as info:
        ingest_csv(text)
    assert info.value.row == 2
    assert info.value.column == "M"


def test_missing_required_column():
    with pytest.raises(MissingColumn, match="NBI"):
        ingest_csv(csv_text(["a,b,10,2,0.5"]), require=[MetricId.NBI])


def test_duplicate_ids_rejected():
    text = csv_text(["a,b,10,2,0.5", "a,b,11,3,0.6"])
    with pytest.raises(DuplicateRecord):
        ingest_csv(text)


def test_unknown_columns_ignored_with_note():
    text = "class_path,test_path,LOC,WMC,M,mystery\na,b,1,1,0.5,zzz\n"
    data = ingest_csv(text)
    assert "mystery" in data.provenance
    assert MetricId.LOC in data.records[0].metrics


def test_missing_metric_cell_is_hard_error():
    text = "class_path,test_path,LOC,WMC,M\na,b,1,1\n"
    with pytest.raises(BadCell):
        ingest_csv(text)


def test_quartiles_exact_rank_positions():
    assert compute_quartiles([0, 1, 2, 3, 4]) == (1.0, 3.0)


def test_quartiles_interpolated():
    assert compute_quartiles([1, 2, 3, 4]) == (1.75, 3.25)


def test_quartiles_need_four_values():
    with pytest.raises(TooFewValues):
        compute_quartiles([1, 2, 3])


def make_raw(scores):
    records = []
    for i, score in enumerate(scores):
        from testability.records import ClassRecord

        records.append(
            ClassRecord(f"c{i}", f"t{i}", {MetricId.LOC: float(i), MetricId.M: score})
        )
    return RawDataset(records=tuple(records))


def test_labeling_splits_and_discards():
    raw = make_raw([0.0, 0.2, 0.5, 0.7, 0.9, 1.0, 1.0, 0.4])
    labeled = label_by_quartiles(raw)
    assert len(labeled) + labeled.discarded_count == len(raw)
    for record, label in labeled.records:
        score = record[MetricId.M]
        if label is EffectivenessLabel.NON_EFFECTIVE:
            assert score <= labeled.q1_threshold
        else:
            assert score >= labeled.q3_threshold
        assert not labeled.q1_threshold < score < labeled.q3_threshold


def test_boundary_scores_are_kept():
    raw = make_raw([0.1, 0.4, 0.7, 1.0, 0.4, 1.0, 0.2, 0.9])
    labeled = label_by_quartiles(raw, thresholds=(0.4, 1.0))
    by_id = {r.class_id: l for r, l in labeled.records}
    assert by_id["c1"] is EffectivenessLabel.NON_EFFECTIVE  # M = 0.4 kept
    assert by_id["c3"] is EffectivenessLabel.EFFECTIVE  # M = 1.0 kept
    assert "c2" not in by_id  # 0.7 strictly between -> discarded


def test_degenerate_split_rejected():
    raw = make_raw([0.5] * 8)
    with pytest.raises(DegenerateSplit):
        label_by_quartiles(raw)


def test_labeling_idempotent_under_same_thresholds():
    raw = make_raw([0.0, 0.2, 0.5, 0.7, 0.9, 1.0, 1.0, 0.4])
    once = label_by_quartiles(raw)
    again = label_by_quartiles(
        RawDataset(records=tuple(r for r, _ in once.records)),
        thresholds=(once.q1_threshold, once.q3_threshold),
    )
    assert [(r.class_id, l) for r, l in again.records] == [
        (r.class_id, l) for r, l in once.records
    ]
    assert again.discarded_count == 0


def test_feature_matrix_rejects_target_leakage():
    raw = make_raw([0.0, 0.1, 0.9, 1.0])
    labeled = label_by_quartiles(raw, thresholds=(0.1, 0.9))
    with pytest.raises(ForbiddenFeature, match="M"):
        to_feature_matrix(labeled, [MetricId.LOC, MetricId.M])


def test_feature_matrix_shape_and_alignment():
    raw = make_raw([0.0, 1.0, 0.1, 0.9])
    labeled = label_by_quartiles(raw, thresholds=(0.1, 0.9))
    matrix = to_feature_matrix(labeled, [MetricId.LOC])
    assert matrix.X.shape == (4, 1)
    assert list(matrix.y) == [
        1 if l is EffectivenessLabel.EFFECTIVE else 0 for _, l in labeled.records
    ]


@settings(max_examples=200)
@given(st.lists(st.floats(min_value=0, max_value=1, allow_nan=False), min_size=4))
def test_quartiles_match_numpy_linear_interpolation(scores):
    q1, q3 = compute_quartiles(scores)
    assert q1 == pytest.approx(float(np.percentile(scores, 25)), abs=1e-12)
    assert q3 == pytest.approx(float(np.percentile(scores, 75)), abs=1e-12)


@settings(max_examples=200)
@given(
    st.lists(
        st.floats(min_value=0, max_value=1, allow_nan=False).map(
            lambda v: round(v, 3)
        ),
        min_size=4,
        max_size=60,
    )
)
def test_labeling_properties_hold_for_random_multisets(scores):
    raw = make_raw(scores)
    try:
        labeled = label_by_quartiles(raw)
    except DegenerateSplit:
        q1, q3 = compute_quartiles(scores)
        assert q1 == q3
        return
    assert len(labeled) + labeled.discarded_count == len(raw)
    for record, _ in labeled.records:
        assert not labeled.q1_threshold < record[MetricId.M] < labeled.q3_threshold
