from nfres.array_model import ArrayConfig
from nfres.bench import bench, bench_pair, format_table


def test_same_seed_same_pair():
    cfg = ArrayConfig(8, 8)
    assert bench_pair(cfg, 3) == bench_pair(cfg, 3)
    assert bench_pair(cfg, 3) != bench_pair(cfg, 4)


def test_timings_positive_and_oracle_grows():
    rows = bench([(4, 4), (16, 16), (64, 64)], reps=20)
    assert all(r.closed_form_s > 0 and r.oracle_s > 0 for r in rows)
    oracle = [r.oracle_s for r in rows]
    assert oracle == sorted(oracle)
    assert "ratio" in format_table(rows)
