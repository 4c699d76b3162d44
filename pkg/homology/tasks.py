from celery import shared_task

from homology.maps import ChainMap, comparison
from homology.windows import ComplexSpec, bucket_dimension

# -----------------------------------------


@shared_task
def bucket_dimension_task(spec, bucket):
    """
    This task rebuilds the complex described by ``spec`` and returns the
    homology dimension of one ``(degree, loop)`` bucket.
    """
    degree, loop = bucket
    dim = bucket_dimension(ComplexSpec.from_dict(spec), (degree, loop))
    return {"degree": degree, "loop": loop, "dim": dim}


@shared_task
def comparison_task(chain_map, bucket):
    """
    This task checks the chain-map equation of one comparison map on a bucket
    and returns the rank of the map it induces on homology there.
    """
    return comparison(ChainMap.from_dict(chain_map), tuple(bucket))
