from cli.api.serializers import GraphSerializer
from cli.base import GraphcxCommand
from graphcore.canon import automorphism_report
from graphcore.enumeration import BasisQuery, enumerate_basis
from graphcore.grammar import format_graph
from graphcx.exceptions import UsageError


class Command(GraphcxCommand):
    help = "List the canonical basis of one (degree, loop) bucket of GC_n or HGC_{m,n}"

    def add_verb_arguments(self, parser):
        parser.add_argument("--degree", type=int, required=True)
        parser.add_argument(
            "--aut", action="store_true", help="report the automorphism group order"
        )

    def run(self, **options):
        config = self.config
        if config["loops"] is None:
            raise UsageError("enum needs --loops")
        query = BasisQuery(
            config["n"],
            config["m"],
            options["degree"],
            config["loops"],
            valence_class=config["valence_class"],
            max_hairs=config["truncate_hairs"],
            max_vertices=config["max_vertices"],
        )
        basis = enumerate_basis(query)
        kind = "GC" if config["m"] is None else f"HGC_{{{config['m']},{config['n']}}}"
        lines = [
            f"# {kind} n={config['n']} class {config['valence_class']} "
            f"degree {options['degree']} loop {config['loops']}: {len(basis)} graphs"
        ]
        records = []
        for graph in basis:
            record = dict(GraphSerializer(graph).data)
            if options["aut"]:
                report = automorphism_report(graph)
                record["aut_order"] = report["order"]
                record["vertex_aut_order"] = report["vertex_order"]
                lines.append(
                    f"# |Aut| = {report['order']} (on vertices {report['vertex_order']})"
                )
            lines.append(format_graph(graph))
            records.append(record)
        self.emit(
            "\n".join(lines),
            {
                "n": config["n"],
                "m": config["m"],
                "degree": options["degree"],
                "loop": config["loops"],
                "valence_class": config["valence_class"],
                "count": len(basis),
                "graphs": records,
            },
        )
