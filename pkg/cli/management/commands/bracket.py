from cli.base import GraphcxCommand
from gcalg.algebra import bracket
from graphcx.exceptions import UsageError
from hgcalg.algebra import graft_bracket


class Command(GraphcxCommand):
    help = "Lie bracket of two combinations: GC_n bracket or the grafting bracket of HGC"

    def add_verb_arguments(self, parser):
        parser.add_argument("left")
        parser.add_argument("right")

    def run(self, **options):
        x = self.read_combination(options["left"])
        y = self.read_combination(options["right"])
        if (x.m is None) != (y.m is None):
            raise UsageError("bracket needs two GC combinations or two hairy ones")
        result = bracket(x, y) if x.m is None else graft_bracket(x, y)
        self.emit_combination(result.project(self.config["valence_class"]))
