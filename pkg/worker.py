"""Shard runner for harness work: splits a task list over a process pool and
returns per-shard results in shard order."""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, List, Sequence, TypeVar

import logbot

T = TypeVar("T")


def shard(items: Sequence[T], workers: int) -> List[List[T]]:
    """Contiguous chunks, at most `workers * 4` of them, in input order."""
    if not items:
        return []
    count = max(1, min(len(items), workers * 4))
    size = -(-len(items) // count)
    return [list(items[i:i + size]) for i in range(0, len(items), size)]


def run_shards(fn: Callable[[Any], Any], shards: Sequence[Any], workers: int = 1, label: str = "") -> List[Any]:
    """fn(shard) for every shard; results keep shard order."""
    tag = f"[Worker] {label}" if label else "[Worker]"
    if workers <= 1 or len(shards) <= 1:
        out = []
        for i, s in enumerate(shards, start=1):
            out.append(fn(s))
            logbot.logs(f"{tag} shard {i}/{len(shards)} done", log_to_discord=False)
        return out
    logbot.logs(f"{tag} 🚀 {len(shards)} shards on {workers} workers", log_to_discord=False)
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(fn, shards))
    except Exception as e:
        logbot.logs(f">>> /!\\ {tag} worker pool failed: {e}", True)
        raise
    logbot.logs(f"{tag} ✅ {len(shards)} shards done", log_to_discord=False)
    return out
