from cli.base import GraphcxCommand
from gcalg.algebra import brace as gc_brace
from graphcx.exceptions import UsageError
from hgcalg.algebra import brace as module_brace


class Command(GraphcxCommand):
    help = "Symmetric brace host{x_1, ..., x_r} with GC_n arguments"

    def add_verb_arguments(self, parser):
        parser.add_argument("host")
        parser.add_argument("inputs", nargs="+", metavar="arg")

    def run(self, **options):
        host = self.read_combination(options["host"])
        args = [self.read_combination(path) for path in options["inputs"]]
        if any(x.m is not None for x in args):
            raise UsageError("brace arguments live in GC_n")
        result = gc_brace(host, args) if host.m is None else module_brace(host, args)
        self.emit_combination(result.project(self.config["valence_class"]))
