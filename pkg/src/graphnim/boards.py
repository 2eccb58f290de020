"""Built-in boards."""

from __future__ import annotations

from .core import GameGraph


def demo_board() -> GameGraph:
    """Small weighted board used in the docs, tests and the web UI.

    Four vertices; v1-v3 is the one missing edge, so v2 and v4 are the
    hubs.  The piece starts on v1.
    """
    return GameGraph(
        "demo",
        ("v1", "v2", "v3", "v4"),
        (
            (0, 1, 2),   # v1-v2
            (0, 3, 5),   # v1-v4
            (1, 2, 3),   # v2-v3
            (1, 3, 2),   # v2-v4
            (2, 3, 4),   # v3-v4
        ),
        0,
    )
