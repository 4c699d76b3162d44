"""Sampled residual checks behind ``graphcx linfty check``.

Samples are index tuples into the instance's pool of small atoms, drawn with
``random.Random(seed)`` so that a seed fixes the whole run. Each tuple is
checked by :func:`linfty.tasks.residual_task`; ``jobs > 1`` fans the tuples out
as a Celery group.
"""

import logging
import random
import time
from dataclasses import dataclass, field

from celery import group

from graphcx.exceptions import UsageError
from linfty.instances import instance_from_spec
from linfty.structure import (
    DERIVATION,
    U_bundle,
    W_bundle,
    compose_with_W,
    linfty_residual,
    nu_structure,
)

logger = logging.getLogger(__name__)

CHECKS = ("nu", "W", "U", "UD", "composite")


def residual_for(instance, what, inputs, derivations=0):
    if what == "nu":
        return linfty_residual(nu_structure(instance), inputs)
    if what == "W":
        return linfty_residual(W_bundle(instance), inputs)
    if what == "U":
        return linfty_residual(U_bundle(instance), inputs)
    if what == "UD":
        bundle = U_bundle(instance, with_derivation=True)
        return linfty_residual(bundle, [DERIVATION] * derivations + list(inputs))
    if what == "composite":
        return linfty_residual(compose_with_W(instance), inputs)
    raise UsageError(f"unknown check {what!r}; choose from {', '.join(CHECKS)}")


def sample_tuples(pool_size, arity, samples, seed):
    if pool_size == 0:
        raise UsageError("the instance has no sample atoms in this window")
    rng = random.Random(seed)
    return [[rng.randrange(pool_size) for _ in range(arity)] for _ in range(samples)]


@dataclass
class ResidualReport:
    what: str
    instance: str
    arity: int
    results: list = field(default_factory=list)

    @property
    def failures(self):
        return [r for r in self.results if not r["zero"]]

    @property
    def ok(self):
        return not self.failures

    def lines(self):
        yield (
            f"{self.what} on {self.instance} in arity {self.arity}: "
            f"{len(self.results) - len(self.failures)}/{len(self.results)} residuals vanish"
        )
        for failure in self.failures:
            yield f"FAIL inputs {failure['indices']} (D x{failure['derivations']})"
            yield failure["offending"]


def plan(what, arity, samples, seed, pool_size):
    """``(derivations, indices)`` pairs to check."""
    if arity < 1:
        raise UsageError(f"arity must be at least 1, got {arity}")
    if what != "UD":
        return [(0, t) for t in sample_tuples(pool_size, arity, samples, seed)]
    jobs = []
    for s in range(1, arity + 1):
        for t in sample_tuples(pool_size, arity - s, samples if s < arity else 1, seed):
            jobs.append((s, t))
    return jobs


def run_check(spec, what, arity, samples=1, seed=0, jobs=1):
    """Evaluate residuals of ``what`` on sampled inputs and collect a report."""
    from linfty.tasks import residual_task

    if what not in CHECKS:
        raise UsageError(f"unknown check {what!r}; choose from {', '.join(CHECKS)}")
    started = time.time()
    instance = instance_from_spec(spec)
    work = plan(what, arity, samples, seed, len(instance.pool))
    if jobs > 1:
        results = group(
            residual_task.s(spec, what, indices, s) for s, indices in work
        )().get()
    else:
        results = [residual_task(spec, what, indices, s) for s, indices in work]
    report = ResidualReport(what, spec["instance"], arity, list(results))
    logger.info(
        "Checked %d %s residuals on %s (elapsed: %.3fs)",
        len(work),
        what,
        spec["instance"],
        time.time() - started,
    )
    return report
