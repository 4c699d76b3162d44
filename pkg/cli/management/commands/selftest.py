from cli.base import GraphcxCommand
from cli.selftest import run_selftest
from graphcx.exceptions import CheckFailed


class Command(GraphcxCommand):
    help = "Run the acceptance checks in their smallest windows and print a pass/fail matrix"

    def add_verb_arguments(self, parser):
        parser.add_argument("--json", action="store_true", help="same as --emit json")
        parser.add_argument("--only", action="append", help="run only checks with this prefix")

    def run(self, **options):
        if options["json"]:
            self.config["emit"] = "json"
        results = run_selftest(options["only"])
        lines = [f"{'PASS' if r['ok'] else 'FAIL'}\t{r['name']}" for r in results]
        lines += [f"# {r['name']}: {r['detail']}" for r in results if not r["ok"]]
        passed = sum(r["ok"] for r in results)
        lines.append(f"# {passed}/{len(results)} checks pass")
        self.emit("\n".join(lines), {"passed": passed, "total": len(results), "checks": results})
        if passed != len(results):
            raise CheckFailed(f"{len(results) - passed} selftest checks failed")
