"""
This module contains utility functions to work with file names, extensions
and content hashes.

.. autofunction:: pairaudit.utils.files.get_file_format
.. autofunction:: pairaudit.utils.files.file_sha256
"""

import hashlib
from pathlib import Path


def get_file_format(file_name):
    """
    Returns the extension of `file_name` without the period, in lower case,
    or None if there is no extension.
    """
    extension = Path(file_name).suffix
    if not extension.startswith('.'):
        return None
    return extension[1:].lower()


def file_sha256(file_name, block_size=4096 * 1024):
    """
    Returns the hexadecimal SHA-256 of the content of `file_name`, read in
    blocks of `block_size` bytes.
    """
    file_hash = hashlib.sha256()
    with open(file_name, 'rb') as content:
        for block in iter(lambda: content.read(block_size), b""):
            file_hash.update(block)
    return file_hash.hexdigest()


def text_sha256(text):
    """ Hexadecimal SHA-256 of the UTF-8 encoding of `text`. """
    return hashlib.sha256(text.encode('utf-8')).hexdigest()
