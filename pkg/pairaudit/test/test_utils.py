import hashlib
import unittest

from pathlib import Path
import tempfile

from pairaudit.utils import get_file_format, file_sha256, text_sha256


class FileUtilsTestCase(unittest.TestCase):

    def test_get_file_format_no_ext(self):
        self.assertIsNone(get_file_format("/home/test"))

    def test_get_file_format(self):
        self.assertEqual(get_file_format("/home/test.gexf"), "gexf")

    def test_get_file_format_upper_case(self):
        self.assertEqual(get_file_format("heaps.GraphML"), "graphml")

    def test_get_file_format_path(self):
        self.assertEqual(get_file_format(Path("/tmp/run.trace")), "trace")

    def test_text_sha256(self):
        self.assertEqual(text_sha256(""), hashlib.sha256(b"").hexdigest())

    def test_file_sha256(self):
        content = '{"op":"make_heap","heap_out":1}\n' * 1000
        with tempfile.TemporaryDirectory(suffix="tmp") as tmp_dir:
            file_name = Path(tmp_dir) / "heap.trace"
            file_name.write_text(content)
            # Blocks smaller than the file
            self.assertEqual(file_sha256(file_name, block_size=100),
                             text_sha256(content))
            self.assertEqual(file_sha256(file_name), text_sha256(content))


if __name__ == "__main__":
    unittest.main()
