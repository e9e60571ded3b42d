# abacus/services/cache.py
from __future__ import annotations

import functools
import logging
import time
from typing import Any, Callable, Dict, Tuple

logger = logging.getLogger(__name__)

# In-process memo caches by namespace
# value = (stored_at_epoch, data); constructed operators are immutable so nothing expires
_CACHES: Dict[str, Dict[Tuple[Any, ...], Tuple[int, Any]]] = {}
_STATS: Dict[str, Dict[str, int]] = {}


def _cache_for(namespace: str) -> Dict[Tuple[Any, ...], Tuple[int, Any]]:
    if namespace not in _CACHES:
        _CACHES[namespace] = {}
        _STATS[namespace] = {"hits": 0, "misses": 0}
    return _CACHES[namespace]


def cached_operator(
    *,
    namespace: str,
    key_builder: Callable[..., Tuple[Any, ...]],
):
    """
    Decorator for pure operator builders.
    - Caches the returned value by a computed key.
    - Logs HIT/MISS at debug level and keeps per-namespace counters.
    Callers run their budget checks before calling the decorated builder.
    """
    cache = _cache_for(namespace)

    def decorator(fn: Callable):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            key = key_builder(*args, **kwargs)
            entry = cache.get(key)
            if entry is not None:
                _STATS[namespace]["hits"] += 1
                logger.debug("[CACHE] %s %r HIT stored_at=%s", namespace, key, entry[0])
                return entry[1]

            data = fn(*args, **kwargs)
            cache[key] = (int(time.time()), data)
            _STATS[namespace]["misses"] += 1
            logger.debug("[CACHE] %s %r MISS", namespace, key)
            return data

        return wrapper

    return decorator


def cache_stats() -> Dict[str, Dict[str, int]]:
    return {ns: dict(counts, size=len(_CACHES[ns])) for ns, counts in _STATS.items()}


def clear_caches() -> None:
    for ns, cache in _CACHES.items():
        cache.clear()
        _STATS[ns] = {"hits": 0, "misses": 0}


# ------------- common key helpers -------------

def key_tuple(*parts: Any) -> Tuple[Any, ...]:
    return tuple(parts)
