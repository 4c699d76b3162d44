from cli.api.serializers import HomologyTableSerializer
from cli.base import GraphcxCommand
from graphcx.exceptions import CheckFailed, UsageError
from homology.maps import CASES, ChainMap
from homology.tables import compare, compute_table
from homology.windows import KINDS, TWISTS, ComplexSpec, build_window


class Command(GraphcxCommand):
    help = "Homology tables of graph and tree complexes, and the comparison maps"

    def add_verb_arguments(self, parser):
        parser.add_argument("--complex", dest="kind", choices=KINDS, default="gc")
        parser.add_argument("--twist", choices=TWISTS, default="m")
        parser.add_argument("--arity", type=int)
        parser.add_argument("--max-size", type=int)
        parser.add_argument("--compare", choices=CASES)
        parser.add_argument("--drop-line", action="store_true")
        parser.add_argument(
            "--dump-matrix",
            nargs=2,
            type=int,
            metavar=("DEGREE", "LOOP"),
            help="write the boundary matrix leaving one bucket",
        )

    def spec(self, options):
        config = self.config
        return ComplexSpec(
            options["kind"],
            n=config["n"],
            m=config["m"],
            valence_class=config["valence_class"],
            twist=options["twist"],
            lam=str(config["lam"]),
            max_hairs=config["truncate_hairs"],
            arity=options["arity"],
        )

    def compare(self, options):
        chain_map = ChainMap(
            options["compare"],
            n=self.config["n"],
            lam=str(self.config["lam"]),
            max_hairs=self.config["truncate_hairs"],
            drop_line=options["drop_line"],
        )
        report = compare(
            chain_map, self.config["loops"], options["max_size"], jobs=self.config["jobs"]
        )
        self.emit("\n".join(report.lines()), report.as_dict())
        if not report.chain_map_ok:
            raise CheckFailed(f"the {chain_map.case} map is not a chain map")
        if not report.iso:
            buckets = ", ".join(f"({r['degree']},{r['loop']})" for r in report.failures)
            raise CheckFailed(f"the induced map is not an isomorphism at {buckets}")

    def run(self, **options):
        if options["compare"]:
            return self.compare(options)
        spec = self.spec(options)
        if options["dump_matrix"]:
            window = build_window(spec, tuple(options["dump_matrix"]))
            self.emit(window.boundary.dump(), {**window.provenance, "matrix": window.boundary.dump()})
            return
        if spec.kind != "trt" and options["max_size"] is None:
            raise UsageError("graph complexes need --max-size")
        table = compute_table(
            spec, self.config["loops"], options["max_size"], jobs=self.config["jobs"]
        )
        self.emit(table.text(), HomologyTableSerializer(table).data)
