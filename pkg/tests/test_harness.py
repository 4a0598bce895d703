import csv
import math
from pathlib import Path

import numpy as np
import pytest

from hdann.data import fit_scaler_x, fit_scaler_y, generate, load_csv
from hdann.harness import (
    PLOT_COLUMNS,
    RECORD_COLUMNS,
    SELECTION_COLUMNS,
    GridSpec,
    Prepared,
    RunRecord,
    StudyBundle,
    bundle_from_records,
    emit_report,
    expand_grid,
    preset_grids,
    read_records,
    run_grid,
    run_kfold_study,
    run_simulation_study,
    select_all,
    select_best,
    select_small,
    summarize,
)
from hdann.network import NetworkKind, param_count
from hdann.training import TrainConfig

FIXTURES = Path(__file__).parent / "fixtures"
FAST = TrainConfig(lr=1e-2, batch_size=64, max_epochs=5)


def rec(network="HDANN1", val=0.5, n_params=100, test=None, sample_id=0, q=3, basis="poly"):
    dnn = network == "DNN"
    return RunRecord(network, 1, 4, None if dnn else q, "tanh", None if dnn else basis,
                     val, val if test is None else test, 0.0, n_params, 0, sample_id)


def tiny_grids(kinds=("DNN", "HDANN1")):
    out = []
    for k in kinds:
        if k == "DNN":
            out.append(GridSpec(k, L=[1], p=[3], sigma=["tanh"]))
        else:
            out.append(GridSpec(k, L=[1], p=[3], q=[2], sigma=["tanh"], basis=["poly"]))
    return out


class TestGrid:
    def test_paper_cardinalities(self):
        grids = {g.kind: g for g in preset_grids("paper")}
        assert len(expand_grid(grids[NetworkKind.DNN], 6)) == 135
        for k in NetworkKind:
            if k is not NetworkKind.DNN:
                assert len(expand_grid(grids[k], 6)) == 750

    def test_desk_cardinalities(self):
        grids = {g.kind: g for g in preset_grids("desk")}
        assert len(expand_grid(grids[NetworkKind.DNN], 6)) == 4
        assert len(expand_grid(grids[NetworkKind.HDANN2], 6)) == 16

    def test_singleton(self):
        specs = expand_grid(GridSpec("DANN", L=[2], p=[3], q=[4], sigma=["relu"], basis=["cos"]), 5)
        assert len(specs) == 1
        s = specs[0]
        assert (s.d, s.L, s.p, s.q, s.sigma.value, s.basis.value) == (5, 2, 3, 4, "relu", "cos")

    def test_order_is_lexicographic(self):
        g = GridSpec("HDANN1", L=[1, 3], p=[4], q=[3, 5], sigma=["tanh"], basis=["poly", "cos"])
        keys = [(s.L, s.q, s.basis.value) for s in expand_grid(g, 2)]
        assert keys == [(1, 3, "poly"), (1, 3, "cos"), (1, 5, "poly"), (1, 5, "cos"),
                        (3, 3, "poly"), (3, 3, "cos"), (3, 5, "poly"), (3, 5, "cos")]

    def test_empty_lists_rejected(self):
        with pytest.raises(ValueError):
            GridSpec("DNN", L=[], p=[4])
        with pytest.raises(ValueError):
            GridSpec("DANN", L=[1], p=[4], q=[], basis=["poly"])

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            preset_grids("huge")


class TestSelectors:
    def test_best_single(self):
        r = rec()
        assert select_best([r]) is r

    def test_best_lowest_val(self):
        a, b = rec(val=0.5), rec(val=0.4)
        assert select_best([a, b]) is b

    def test_best_tie_on_params(self):
        a, b = rec(val=0.5, n_params=100), rec(val=0.5, n_params=50)
        assert select_best([a, b]) is b

    def test_best_full_tie_keeps_order(self):
        a, b = rec(q=3), rec(q=5)
        assert select_best([a, b]) is a

    def test_best_skips_failed(self):
        a, b = rec(val=float("nan")), rec(val=0.9)
        assert select_best([a, b]) is b
        assert select_best([a]) is None

    def test_small_none_when_nothing_beats_dnn(self):
        rs = [rec(val=0.5), rec(val=0.6)]
        assert select_small(rs, 0.5) is None

    def test_small_rule(self):
        a, b = rec(val=0.3, n_params=100), rec(val=0.2, n_params=500)
        assert select_small([a, b], 0.4) is a

    def test_small_tie_on_params(self):
        a, b = rec(val=0.3, n_params=100), rec(val=0.2, n_params=100)
        assert select_small([a, b], 0.4) is b

    def test_small_infinite_thresholds(self):
        rs = [rec(val=v, n_params=n) for v, n in [(0.3, 500), (0.9, 20), (0.1, 80)]]
        assert select_small(rs, math.inf) is rs[1]
        assert select_small(rs, -math.inf) is None


class TestSummaries:
    def test_select_all_per_sample(self):
        rs = [rec("DNN", 0.4, 10, sample_id=0), rec("HDANN1", 0.3, 20, sample_id=0),
              rec("DNN", 0.2, 10, sample_id=1), rec("HDANN1", 0.3, 20, sample_id=1)]
        sels = select_all(rs)
        assert [(s.sample_id, s.network) for s in sels] == [(0, "DNN"), (0, "HDANN1"), (1, "DNN"), (1, "HDANN1")]
        assert sels[1].small is rs[1]
        assert sels[3].small is None
        assert sels[0].small is None

    def test_averaging(self):
        rs = []
        tests = [0.11, 0.37, 0.25]
        for sid, t in enumerate(tests):
            rs.append(rec("DNN", 1.0, 10, test=9.0, sample_id=sid))
            rs.append(rec("DANN", 0.5, 30 + sid, test=t, sample_id=sid))
        rows = {(r.network, r.role): r for r in summarize(select_all(rs))}
        assert abs(rows["DANN", "best"].avg_test_error - sum(tests) / 3) < 1e-12
        assert rows["DANN", "best"].avg_n_params == 31.0
        assert rows["DANN", "small"].n_samples == 3
        assert ("DNN", "small") not in rows

    def test_missing_small_excluded_from_average(self):
        rs = [rec("DNN", 0.4, 10, sample_id=0), rec("DANN", 0.3, 20, test=0.1, sample_id=0),
              rec("DNN", 0.2, 10, sample_id=1), rec("DANN", 0.3, 20, test=0.5, sample_id=1)]
        rows = {(r.network, r.role): r for r in summarize(select_all(rs))}
        assert rows["DANN", "small"].n_samples == 1
        assert rows["DANN", "small"].avg_test_error == pytest.approx(0.1)
        assert rows["DANN", "best"].avg_test_error == pytest.approx(0.3)


def prepared_model1(n_train=200, seed=0):
    tr, va, te = (generate(1, n, seed + i) for i, n in enumerate((n_train, 100, 100)))
    return Prepared.from_datasets(tr, va, te, scale_x=False)


class TestRunGrid:
    def test_one_spec(self):
        spec = expand_grid(tiny_grids(["HDANN2"])[0], 6)
        recs = run_grid(spec, prepared_model1(), FAST)
        assert len(recs) == 1 and recs[0].n_params == param_count(spec[0])

    def test_smoke_and_determinism(self):
        grid = GridSpec("DANN", L=[1], p=[2, 4], q=[2], sigma=["tanh"], basis=["poly", "cos"])
        specs = expand_grid(grid, 6)
        prep = prepared_model1()
        a = run_grid(specs, prep, FAST, seed=3, record_time=False)
        b = run_grid(specs, prep, FAST, seed=3, record_time=False)
        assert len(a) == 4
        assert all(math.isfinite(r.validation_error) and r.validation_error > 0 for r in a)
        assert a == b

    def test_parallel_matches_serial(self):
        specs = [s for g in tiny_grids(["DNN", "DANN", "HDANN3"]) for s in expand_grid(g, 6)]
        prep = prepared_model1(100)
        serial = run_grid(specs, prep, FAST, seed=1, record_time=False)
        parallel = run_grid(specs, prep, FAST, seed=1, record_time=False, threads=2)
        assert serial == parallel

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_failed_run_is_flagged(self):
        # a huge learning rate with ReLU overflows; the run is recorded, not raised
        spec = expand_grid(GridSpec("DNN", L=[3], p=[16], sigma=["relu"]), 6)
        prep = prepared_model1(100)
        prep.train_y = prep.train_y * 1e200
        recs = run_grid(spec, prep, TrainConfig(lr=1e3, max_epochs=3))
        assert recs[0].failed and recs[0].error

    def test_errors_on_original_scale(self):
        spec = expand_grid(tiny_grids(["DNN"])[0], 6)
        prep = prepared_model1()
        shifted = Prepared(prep.train_X, prep.train_y, prep.val_X, prep.val_y + 100.0,
                           prep.test_X, prep.test_y, prep.scaler_y)
        base = run_grid(spec, prep, FAST)[0].validation_error
        far = run_grid(spec, shifted, FAST)[0].validation_error
        assert far > base + 9000


class TestStudies:
    def test_simulation_one_sample(self):
        bundle = run_simulation_study(1, 60, tiny_grids(["DNN", "DANN", "HDANN1"]), FAST,
                                      n_val=30, n_test=30, n_monte_carlo=1, record_time=False)
        assert [s.network for s in bundle.selections] == ["DNN", "DANN", "HDANN1"]
        assert len(bundle.records) == 3

    def test_kfold_coverage_and_leakage(self):
        ds = load_csv(FIXTURES / "housing50.csv", "mhv", log_response=True)
        bundle = run_kfold_study(ds, tiny_grids(["DNN"]), FAST, k=2, seed=4, record_time=False)
        assert len(bundle.folds) == 2
        tests = [f.test_idx for f in bundle.folds]
        assert not set(tests[0]) & set(tests[1])
        assert sorted(np.concatenate(tests).tolist()) == list(range(50))
        for f in bundle.folds:
            assert not set(f.train_idx) & set(f.test_idx)
            assert not set(f.val_idx) & set(f.test_idx)
            sx = fit_scaler_x(ds.X[f.train_idx])
            np.testing.assert_array_equal(f.scaler_x.mins, sx.mins)
            np.testing.assert_array_equal(f.scaler_x.maxs, sx.maxs)
            sy = fit_scaler_y(ds.y[f.train_idx])
            assert (f.scaler_y.mean, f.scaler_y.sd) == (sy.mean, sy.sd)
        assert not np.array_equal(bundle.folds[0].scaler_x.mins, bundle.folds[1].scaler_x.mins)

    def test_kfold_deterministic(self):
        ds = load_csv(FIXTURES / "housing50.csv", "mhv", log_response=True)
        a = run_kfold_study(ds, tiny_grids(["DNN"]), FAST, k=2, seed=4, record_time=False)
        b = run_kfold_study(ds, tiny_grids(["DNN"]), FAST, k=2, seed=4, record_time=False)
        assert a.records == b.records


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


class TestReport:
    def test_empty_bundle(self, tmp_path):
        paths = emit_report(StudyBundle(), tmp_path)
        assert read_csv(paths["records"]) == [RECORD_COLUMNS]
        assert read_csv(paths["selection"]) == [SELECTION_COLUMNS]
        assert read_csv(paths["plotdata"]) == [PLOT_COLUMNS]

    def test_header_exact(self, tmp_path):
        paths = emit_report(StudyBundle(), tmp_path)
        assert paths["records"].read_text().splitlines()[0] == (
            "network,L,p,q,sigma,basis,validation_error,test_error,training_time_sec,n_params,seed,sample_id")

    def test_one_record(self, tmp_path):
        r = rec("DANN", 0.123, 1249)
        paths = emit_report(bundle_from_records([r]), tmp_path)
        rows = read_csv(paths["plotdata"])
        assert len(rows) == 2
        assert float(rows[1][2]) == math.log10(1249)
        assert len(read_csv(paths["records"])) == 2

    def test_na_rows(self, tmp_path):
        rs = [rec("DNN", 0.1, 10), rec("HDANN2", 0.5, 20)]
        paths = emit_report(bundle_from_records(rs), tmp_path)
        rows = read_csv(paths["selection"])
        small = [r for r in rows if r[1] == "HDANN2" and r[2] == "small"][0]
        assert small[3:] == ["NA"] * (len(SELECTION_COLUMNS) - 3)

    def test_round_trip(self, tmp_path):
        rs = [rec("DNN", 0.1 / 3, 10, test=2 / 7), rec("HDANN3", math.pi / 10, 12345, sample_id=1, basis="cos")]
        rs[0].training_time_sec = 1.0 / 3.0
        paths = emit_report(bundle_from_records(rs), tmp_path)
        back = read_records(paths["records"])
        assert back == rs
        again = emit_report(bundle_from_records(back), tmp_path / "again")
        for name in paths:
            assert paths[name].read_bytes() == again[name].read_bytes()

    def test_floats_have_17_digits(self, tmp_path):
        paths = emit_report(bundle_from_records([rec("DNN", 1 / 3, 10)]), tmp_path)
        row = read_csv(paths["records"])[1]
        assert row[RECORD_COLUMNS.index("validation_error")] == "0.33333333333333331"

    def test_bad_header_rejected(self, tmp_path):
        p = tmp_path / "r.csv"
        p.write_text("network,L\nDNN,1\n")
        with pytest.raises(ValueError):
            read_records(p)
