from cli.base import GraphcxCommand
from gcalg.algebra import differential
from graphcx.exceptions import CheckFailed
from hgcalg.algebra import alpha_action, twisted_differential
from hgcalg.elements import line, tripod_series

TWISTS = {"line": "L", "tripod": "T"}


class Command(GraphcxCommand):
    help = "Apply the (twisted) differential to a combination file"

    def add_verb_arguments(self, parser):
        parser.add_argument("path", help="combination file, '-' for stdin")
        parser.add_argument(
            "--twist",
            choices=["none", "m", "L", "T", "line", "tripod"],
            default="m",
            help=(
                "hairy inputs: none is x•α alone, m adds [m_hair, -], "
                "L (line) and T (tripod) add the line or tripods"
            ),
        )
        parser.add_argument(
            "--square", action="store_true", help="apply twice and fail unless the result is zero"
        )

    def differential(self, x, twist):
        valence_class = self.config["valence_class"]
        if x.m is None:
            return differential(x, valence_class)
        if twist == "none":
            return alpha_action(x).project(valence_class)
        twist = TWISTS.get(twist, twist)
        extra = None
        if twist == "L":
            extra = line(x.n, x.m, window=x.window)
        elif twist == "T":
            extra = tripod_series(self.config["lam"], x.n, x.m, window=x.window)
        return twisted_differential(x, extra_mc=extra, valence_class=valence_class)

    def run(self, **options):
        x = self.read_combination(options["path"])
        result = self.differential(x, options["twist"])
        if not options["square"]:
            self.emit_combination(result)
            return
        square = self.differential(result, options["twist"])
        self.emit_combination(square, {"zero": square.is_zero()})
        if not square.is_zero():
            raise CheckFailed("the differential does not square to zero on this input")
