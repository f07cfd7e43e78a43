"""Python bindings for the accx graph engine."""

import json
from collections import namedtuple

from . import _accx
from ._accx import (
    AccxError,
    Graph,
    from_edges,
    generate_rmat,
    generate_weights,
    load_edge_list,
    max_resident_ctas,
    plan_launch_count,
    read_binary,
    reference,
    simulate_barrier,
)

Result = namedtuple("Result", ["values", "stats"])
KCoreResult = namedtuple("KCoreResult", ["alive", "counts", "stats"])


def _wrap(fn):
    def run(*args, **kwargs):
        values, stats = fn(*args, **kwargs)
        return Result(values, json.loads(stats))

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


bfs = _wrap(_accx.bfs)
sssp = _wrap(_accx.sssp)
pagerank = _wrap(_accx.pagerank)
belief_propagation = _wrap(_accx.belief_propagation)


def kcore(graph, k=16, **kwargs):
    alive, counts, stats = _accx.kcore(graph, k, **kwargs)
    return KCoreResult(alive, counts, json.loads(stats))


def cli(*args):
    """Run the command line in-process; returns (exit_code, stdout, stderr)."""
    return _accx.cli(list(args))


UNVISITED = 2**32 - 1
