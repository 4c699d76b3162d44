from celery import shared_task

from linfty.checks import residual_for
from linfty.instances import instance_from_spec

# -----------------------------------------


@shared_task
def residual_task(spec, what, indices, derivations=0):
    """
    This task rebuilds the instance described by ``spec``, evaluates the
    residual of ``what`` on the pool atoms at ``indices`` and reports whether
    it vanishes, with the first offending term otherwise.
    """
    instance = instance_from_spec(spec)
    inputs = [instance.element(i) for i in indices]
    residual = residual_for(instance, what, inputs, derivations)
    offending = None
    if not residual.is_zero():
        offending = "\n".join(str(residual).splitlines()[:2])
    return {
        "indices": list(indices),
        "derivations": derivations,
        "zero": residual.is_zero(),
        "offending": offending,
    }
