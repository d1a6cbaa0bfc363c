from .files import get_file_format, file_sha256, text_sha256
