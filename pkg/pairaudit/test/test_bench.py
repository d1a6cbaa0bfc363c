import unittest

from pathlib import Path
import tempfile

from pairaudit.bench import size_bucket, run_benchmark
from pairaudit.audit import write_bench_csv


def without_time(report):
    return [row._replace(wall_time=None) for row in report.rows]


class BenchmarkTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.res_path = Path(__file__).parent / "res"

    def test_size_bucket(self):
        for n, bucket in ((0, 0), (1, 1), (2, 2), (3, 2), (5, 4), (8, 8),
                          (1023, 512), (1024, 1024)):
            with self.subTest(n=n):
                self.assertEqual(size_bucket(n), bucket)

    def test_rows(self):
        report = run_benchmark([100, 200], seeds=2)
        self.assertEqual(report.cells, [(100, 0), (100, 1), (200, 0),
                                        (200, 1)])
        self.assertEqual(sum(row.count for row in report.rows), 600)
        keys = [(row.size, row.bucket, row.kind) for row in report.rows]
        self.assertEqual(keys, sorted(keys))
        for row in report.rows:
            self.assertEqual(row.total_cost, row.count + row.pairings)
            self.assertAlmostEqual(row.mean_cost, row.total_cost / row.count)
            self.assertIsNone(row.mean_slack)
        self.assertEqual(report.total_cost(),
                         600 + report.total_pairings())
        first = report.rows[0]
        self.assertIs(report.row(first.size, first.bucket, first.kind),
                      first)
        self.assertIsNone(report.row(5, 0, 'insert'))

    def test_determinism(self):
        first = run_benchmark([150], seeds=2)
        second = run_benchmark([150], seeds=2, n_jobs=2)
        self.assertEqual(without_time(first), without_time(second))

    def test_audited_slack(self):
        report = run_benchmark([120], audit=True)
        for row in report.rows:
            self.assertGreaterEqual(row.mean_slack, -1e-6)

    def test_csv(self):
        report = run_benchmark([80], seeds=1)
        with tempfile.TemporaryDirectory(dir=self.res_path,
                                         suffix="tmp") as tmp_dir:
            csv_file = Path(tmp_dir) / "bench.csv"
            timed_file = Path(tmp_dir) / "timed.csv"
            write_bench_csv(report, csv_file)
            write_bench_csv(report, timed_file, include_time=True)
            lines = csv_file.read_text().splitlines()
            self.assertEqual(lines[0], "size,bucket,kind,count,total_cost,"
                                       "mean_cost,pairings,mean_slack")
            self.assertEqual(len(lines), len(report.rows) + 1)
            self.assertTrue(lines[1].endswith(","))
            self.assertTrue(timed_file.read_text().startswith(
                lines[0] + ",wall_time\n"))


if __name__ == "__main__":
    unittest.main()
