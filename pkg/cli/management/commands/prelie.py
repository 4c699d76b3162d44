from cli.base import GraphcxCommand
from gcalg.algebra import prelie
from graphcx.exceptions import UsageError
from hgcalg.algebra import gc_action
from treeop.operad import graft
from treeop.trees import parse_tree_combination


class Command(GraphcxCommand):
    help = "Pre-Lie product x•y in GC_n, the GC_n action on a hairy x, or grafting of trees"

    def add_verb_arguments(self, parser):
        parser.add_argument("left")
        parser.add_argument("right", help="a GC_n combination")
        parser.add_argument(
            "--trees",
            action="store_true",
            help="read left and right as tree texts such as '1/2 a(c) + c' and graft them",
        )

    def run(self, **options):
        if options["trees"]:
            left, right = (parse_tree_combination(options[k]) for k in ("left", "right"))
            result = graft(left, right)
            self.emit(str(result), {"result": str(result)})
            return
        x = self.read_combination(options["left"])
        y = self.read_combination(options["right"])
        if y.m is not None:
            raise UsageError("the right factor of a pre-Lie product lives in GC_n")
        result = prelie(x, y) if x.m is None else gc_action(x, y)
        self.emit_combination(result.project(self.config["valence_class"]))
