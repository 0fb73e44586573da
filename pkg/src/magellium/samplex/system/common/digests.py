import hashlib
from typing import Iterable


DIGEST_LENGTH: int = 16


def digest_lines(lines: Iterable[str]) -> str:
    """Short SHA-256 digest of newline-joined canonical lines."""
    hasher = hashlib.sha256()
    for line in lines:
        hasher.update(line.encode("utf-8"))
        hasher.update(b"\n")
    return hasher.hexdigest()[:DIGEST_LENGTH]
