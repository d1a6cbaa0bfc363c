import contextlib
import io
import json
import unittest

from pathlib import Path
import tempfile

from pairaudit.cli import (main, EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE,
                           EXIT_FILE_ERROR)
from pairaudit.settings import pairaudit_setting
from pairaudit.trace import load_trace


class CommandLineTestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.res_path = Path(__file__).parent / "res"
        cls.golden = str(cls.res_path / "golden.trace")
        cls.invalid = str(cls.res_path / "invalid.trace")
        cls.malformed = str(cls.res_path / "malformed.trace")

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory(dir=self.res_path,
                                                    suffix="tmp")
        self.tmp_path = Path(self.temp_dir.name)

    def tearDown(self):
        self.temp_dir.cleanup()

    def run_main(self, *args):
        stdout = io.StringIO()
        stderr = io.StringIO()
        with contextlib.redirect_stdout(stdout), \
                contextlib.redirect_stderr(stderr):
            code = main([str(arg) for arg in args])
        return code, stdout.getvalue(), stderr.getvalue()

    def test_usage(self):
        self.assertEqual(self.run_main()[0], EXIT_USAGE)
        self.assertEqual(self.run_main('shuffle')[0], EXIT_USAGE)
        self.assertEqual(self.run_main('--help')[0], EXIT_OK)

    def test_gen(self):
        out = self.tmp_path / "gen.trace"
        code, stdout, _ = self.run_main('gen', '--ops', 200, '--seed', 4,
                                        '--out', out)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("200 operations", stdout)
        first = out.read_text()
        self.run_main('gen', '--ops', 200, '--seed', 4, '--out', out)
        self.assertEqual(out.read_text(), first)
        self.assertEqual(len(load_trace(out).operations), 200)

    def test_gen_empty(self):
        out = self.tmp_path / "empty.trace"
        code, _, _ = self.run_main('gen', '--ops', 0, '--out', out)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.read_text(), "")

    def test_gen_infeasible_mix(self):
        out = self.tmp_path / "bad.trace"
        code, _, stderr = self.run_main('gen', '--ops', 10, '--mix',
                                        'insert=1', '--out', out)
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("make_heap", stderr)
        self.assertFalse(out.exists())

    def test_validate(self):
        self.assertEqual(self.run_main('validate', self.golden)[0], EXIT_OK)
        code, stdout, _ = self.run_main('validate', self.invalid)
        self.assertEqual(code, EXIT_CHECK_FAILED)
        self.assertIn("operation 5: stale heap id 1", stdout)
        self.assertIn("operation 7: empty heap 3", stdout)

    def test_file_errors(self):
        code, _, stderr = self.run_main('validate', self.malformed)
        self.assertEqual(code, EXIT_FILE_ERROR)
        self.assertIn("line 2", stderr)
        missing = self.tmp_path / "missing.trace"
        for command in ('validate', 'run', 'diff', 'audit'):
            with self.subTest(command=command):
                self.assertEqual(self.run_main(command, missing)[0],
                                 EXIT_FILE_ERROR)

    def test_run(self):
        events = self.tmp_path / "events.jsonl"
        graph = self.tmp_path / "heaps.graphml"
        code, stdout, _ = self.run_main('run', self.golden, '--events-out',
                                        events, '--graph-out', graph)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("total actual cost 26", stdout)
        records = [json.loads(line)
                   for line in events.read_text().splitlines()]
        self.assertEqual(sum(record['type'] == 'cost'
                             for record in records), 11)
        self.assertEqual(sum(record['type'] == 'pairing'
                             for record in records), 15)
        self.assertEqual(records[-1]['actual_cost'], 8)
        self.assertIn(records[-2]['pass'], ('first', 'second'))
        self.assertTrue(graph.exists())

        self.assertEqual(self.run_main('run', self.invalid)[0],
                         EXIT_CHECK_FAILED)
        self.assertEqual(self.run_main('run', self.golden, '--graph-out',
                                       self.tmp_path / "heaps.png")[0],
                         EXIT_USAGE)

    def test_diff(self):
        code, stdout, _ = self.run_main('diff', self.golden)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stdout.strip(), "equivalent")

    def test_audit(self):
        report = self.tmp_path / "report.jsonl"
        csv_file = self.tmp_path / "report.csv"
        code, stdout, _ = self.run_main('audit', self.golden, '--report',
                                        report, '--csv', csv_file,
                                        '--check-structure')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(stdout.startswith("pass: 11 operations"))
        summary = json.loads(report.read_text().splitlines()[-1])
        self.assertEqual(summary['verdict'], 'pass')
        self.assertEqual(len(csv_file.read_text().splitlines()), 12)

        code, stdout, _ = self.run_main('audit', self.golden, '--tolerance',
                                        -1000)
        self.assertEqual(code, EXIT_CHECK_FAILED)
        self.assertIn("make_heap_bound", stdout)

        self.assertEqual(self.run_main('audit', self.invalid)[0],
                         EXIT_CHECK_FAILED)

    def test_audit_limit(self):
        previous = pairaudit_setting('max_audit_ops')
        code, _, stderr = self.run_main('audit', self.golden, '--max-ops', 5)
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--max-ops", stderr)
        self.assertEqual(pairaudit_setting('max_audit_ops'), previous)

    def test_bench(self):
        csv_file = self.tmp_path / "bench.csv"
        code, stdout, _ = self.run_main('bench', '--sizes', '60,90',
                                        '--seeds', 2, '--audit', '--csv',
                                        csv_file)
        self.assertEqual(code, EXIT_OK)
        self.assertIn("total pairings", stdout)
        self.assertTrue(csv_file.read_text().startswith("size,bucket,kind"))
        self.assertEqual(self.run_main('bench', '--sizes', 'a,b')[0],
                         EXIT_USAGE)
        self.assertEqual(self.run_main('bench', '--sizes', '10', '--mix',
                                       'insert=1')[0], EXIT_USAGE)


if __name__ == "__main__":
    unittest.main()
