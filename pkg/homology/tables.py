"""Homology tables and the runs that fill them.

A table is written as ``#`` provenance lines followed by tab separated
``degree<TAB>loop<TAB>dim`` rows, sorted by loop and then by degree. ``jobs > 1``
fans the buckets out as a Celery group of :mod:`homology.tasks`.
"""

import logging
import time
from dataclasses import dataclass, field

from celery import group
from django.conf import settings

from homology.maps import ChainMap
from homology.windows import ComplexSpec, buckets

logger = logging.getLogger(__name__)


@dataclass
class HomologyTable:
    spec: ComplexSpec
    dims: dict
    max_loop: int = None
    max_size: int = None
    tool_version: str = field(default_factory=lambda: settings.GRAPHCX["TOOL_VERSION"])

    def rows(self):
        return sorted(self.dims.items(), key=lambda item: (item[0][1], item[0][0]))

    def header(self):
        yield f"# complex: {self.spec.describe()}"
        yield f"# twist: {self.spec.twist_label()}"
        yield (
            f"# window: loop<={self.max_loop} size<={self.max_size} "
            f"hairs<={self.spec.max_hairs}"
        )
        yield f"# tool: {self.tool_version}"

    def lines(self):
        yield from self.header()
        for (degree, loop), dim in self.rows():
            yield f"{degree}\t{loop}\t{dim}"

    def text(self):
        return "\n".join(self.lines()) + "\n"

    def window_info(self):
        return {
            "max_loop": self.max_loop,
            "max_size": self.max_size,
            "max_hairs": self.spec.max_hairs,
        }

    def records(self):
        return [{"degree": d, "loop": g, "dim": dim} for (d, g), dim in self.rows()]

    def nonzero(self):
        return {bucket: dim for bucket, dim in self.dims.items() if dim}

    def as_dict(self):
        return {
            "complex": self.spec.as_dict(),
            "description": self.spec.describe(),
            "twist": self.spec.twist_label(),
            "window": self.window_info(),
            "tool_version": self.tool_version,
            "rows": self.records(),
        }


def _fan_out(task, payloads, jobs):
    if jobs > 1:
        return group(task.s(*payload) for payload in payloads)().get()
    return [task(*payload) for payload in payloads]


def compute_table(spec, max_loop=None, max_size=None, jobs=None):
    """Homology dimensions of ``spec`` over the window ``loop <= max_loop, size <= max_size``."""
    from homology.tasks import bucket_dimension_task

    jobs = jobs or settings.GRAPHCX["JOBS"]
    started = time.time()
    bucket_list = buckets(spec, max_loop, max_size)
    results = _fan_out(
        bucket_dimension_task, [(spec.as_dict(), list(b)) for b in bucket_list], jobs
    )
    dims = {(r["degree"], r["loop"]): r["dim"] for r in results}
    logger.info(
        "Homology table of %s over %d buckets (elapsed: %.3fs)",
        spec.describe(),
        len(dims),
        time.time() - started,
    )
    return HomologyTable(spec, dims, max_loop, max_size)


@dataclass
class ComparisonReport:
    chain_map: ChainMap
    rows: list

    @property
    def chain_map_ok(self):
        return all(row["chain_map"] for row in self.rows)

    @property
    def iso(self):
        return all(row["iso"] for row in self.rows)

    @property
    def failures(self):
        return [row for row in self.rows if not (row["chain_map"] and row["iso"])]

    def lines(self):
        source, target = self.chain_map.source, self.chain_map.target
        yield f"# map: {self.chain_map.case} {source.describe()} -> {target.describe()}"
        yield f"# twist: {target.twist_label()}"
        yield "degree\tloop\tsource\ttarget\trank\tchain_map\tiso"
        for row in self.rows:
            yield (
                f"{row['degree']}\t{row['loop']}\t{row['source_dim']}\t{row['target_dim']}"
                f"\t{row['rank']}\t{'yes' if row['chain_map'] else 'NO'}"
                f"\t{'yes' if row['iso'] else 'NO'}"
            )

    def as_dict(self):
        return {
            "map": self.chain_map.as_dict(),
            "chain_map": self.chain_map_ok,
            "iso": self.iso,
            "rows": self.rows,
        }


def compare(chain_map, max_loop, max_size, jobs=None):
    """Chain-map check and induced ranks of ``chain_map`` over a window."""
    from homology.tasks import comparison_task

    jobs = jobs or settings.GRAPHCX["JOBS"]
    started = time.time()
    bucket_list = buckets(chain_map.source, max_loop, max_size)
    rows = _fan_out(
        comparison_task, [(chain_map.as_dict(), list(b)) for b in bucket_list], jobs
    )
    rows = sorted(rows, key=lambda r: (r["loop"], r["degree"]))
    logger.info(
        "Compared %s homology on %d buckets (elapsed: %.3fs)",
        chain_map.case,
        len(rows),
        time.time() - started,
    )
    return ComparisonReport(chain_map, rows)
