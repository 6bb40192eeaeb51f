from concurrent.futures import ThreadPoolExecutor

from src.config import settings


def parallel_map(fn, items, threads: int = None) -> list:
    """
    Apply fn to every item, in order. Runs inline for a single thread, otherwise on a
    thread pool of `threads` workers (default settings.threads).
    """
    items = list(items)
    threads = threads or settings.threads
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
