"""Select the Jacobi kernel at import time.

The compiled extension is used when it was built; otherwise the numpy
implementation takes over. ``PROJPAIR_BACKEND=python`` forces the fallback.
"""
import os
from functools import lru_cache

import numpy as np

from . import _jacobi_py

try:
    from . import _jacobi as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _jacobi_py.jacobi_eigh}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled.jacobi_eigh

_requested = os.environ.get("PROJPAIR_BACKEND", "").strip().lower()
if _requested in BACKENDS:
    NAME = _requested
else:
    NAME = "compiled" if _compiled is not None else "python"

jacobi_eigh = BACKENDS[NAME]


@lru_cache(maxsize=64)
def round_robin(n):
    """Round-robin pairing of ``range(n)``: ``(rounds, n//2, 2)`` array, p < q.

    Circle method with a dummy player for odd ``n``; pairs touching the dummy
    are dropped, so odd sizes have one fewer pair per round.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0]] + [players[-1]] + players[1:-1]
    width = min(len(r) for r in rounds) if rounds else 0
    sched = np.array([r[:width] for r in rounds], dtype=np.intp).reshape(len(rounds), width, 2)
    return sched
