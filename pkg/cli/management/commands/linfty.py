from cli.base import GraphcxCommand
from graphcx.exceptions import CheckFailed
from linfty.checks import CHECKS, run_check
from linfty.instances import INSTANCE_NAMES


class Command(GraphcxCommand):
    help = "Sampled residual checks of the L-infinity structures and morphisms"

    def add_verb_arguments(self, parser):
        parser.add_argument("action", choices=["check"])
        parser.add_argument("--instance", choices=INSTANCE_NAMES, default="gc-l")
        parser.add_argument("--what", choices=CHECKS, default="nu")
        parser.add_argument("--arity", type=int, default=2)

    def run(self, **options):
        config = self.config
        spec = {
            "instance": options["instance"],
            "n": config["n"],
            "lambda": str(config["lam"]),
            "max_weight": config["truncate_weight"],
            "max_hairs": config["truncate_hairs"],
            "valence_class": config["valence_class"],
        }
        report = run_check(
            spec,
            options["what"],
            options["arity"],
            samples=config["samples"],
            seed=config["seed"],
            jobs=config["jobs"],
        )
        self.emit(
            "\n".join(report.lines()),
            {"spec": spec, "what": report.what, "arity": report.arity, "results": report.results},
        )
        if not report.ok:
            raise CheckFailed(
                f"{len(report.failures)} of {len(report.results)} {report.what} residuals are nonzero"
            )
