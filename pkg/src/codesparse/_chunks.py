"""Fixed partitioning of index ranges and a thread-pool map over the pieces.

The partition depends only on the range, never on the thread count, and
partial results are reduced in chunk order, so any ``threads`` value yields
bit-identical results.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")

#: Upper bound on the number of pieces a range is cut into.
MAX_CHUNKS = 256


def split_range(total: int, max_chunks: int = MAX_CHUNKS, min_size: int = 1 << 12) -> list[tuple[int, int]]:
    if total <= 0:
        return []
    nchunks = max(1, min(max_chunks, total // min_size))
    bounds = [total * i // nchunks for i in range(nchunks + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(nchunks)]


def map_chunks(fn: Callable[[T], object], pieces: Iterable[T], threads: int = 1) -> list:
    pieces = list(pieces)
    if threads <= 1 or len(pieces) <= 1:
        return [fn(piece) for piece in pieces]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, pieces))
