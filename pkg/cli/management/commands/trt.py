from cli.base import GraphcxCommand
from graphcx.exceptions import CheckFailed, UsageError
from treeop.hall import format_lie_word, hall_basis
from treeop.twisted import trt_homology


class Command(GraphcxCommand):
    help = "Homology of TRT in one arity, checked against the multilinear Lie words"

    def add_verb_arguments(self, parser):
        parser.add_argument("--arity", type=int, required=True)
        parser.add_argument(
            "--homology", action="store_true", help="print the degree and dimension table"
        )
        parser.add_argument("--lie", action="store_true", help="list the Hall basis")

    def run(self, **options):
        arity = options["arity"]
        if arity < 1:
            raise UsageError(f"arity must be positive, got {arity}")
        dims = trt_homology(arity)
        words = hall_basis(arity)
        lines = [f"# TRT({arity}); Lie({arity}) has dimension {len(words)}"]
        if options["homology"] or not options["lie"]:
            lines += [f"{degree}\t{dim}" for degree, dim in sorted(dims.items())]
        if options["lie"]:
            lines += [f"# {format_lie_word(word)}" for word in words]
        self.emit(
            "\n".join(lines),
            {
                "arity": arity,
                "dims": [{"degree": d, "dim": dim} for d, dim in sorted(dims.items())],
                "lie": [format_lie_word(word) for word in words],
            },
        )
        if dims != {0: len(words)}:
            raise CheckFailed(f"H(TRT({arity})) is {dims}, expected {len(words)} in degree 0")
