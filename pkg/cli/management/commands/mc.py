from fractions import Fraction

from cli.base import GraphcxCommand
from gcalg.algebra import alpha, bracket, differential
from gcalg.algebra import mc_residual as gc_mc_residual
from graphcore.grammar import format_combination, format_fraction
from graphcx.exceptions import CheckFailed, UsageError
from hgcalg.algebra import graft_bracket, twisted_differential
from hgcalg.elements import line, m_element, tripod_series, verify_mc
from hgcalg.elements import mc_residual as hairy_mc_residual
from linfty.bch import bch_series
from linfty.instances import INSTANCE_NAMES, build_instance
from linfty.mc import (
    exp_action_algebra,
    exp_action_module,
    gauge_action,
    instance_bch,
    mc_pushforward,
    module_residual,
)
from linfty.structure import compose_with_W
from treeop.trees import TreeCombination, parse_tree_combination

ACTIONS = ("verify", "push", "act", "gauge", "bch")
ELEMENTS = ("alpha", "m", "L", "T", "line", "tripod", "file")
ALIASES = {"line": "L", "tripod": "T"}


def format_word(word):
    if isinstance(word, tuple):
        return f"[{format_word(word[0])},{format_word(word[1])}]"
    return word


class Command(GraphcxCommand):
    help = "Maurer-Cartan elements: verify, push forward, act, gauge and BCH"

    def add_verb_arguments(self, parser):
        parser.add_argument("action", choices=ACTIONS)
        parser.add_argument(
            "elements",
            nargs="*",
            metavar="element",
            help="combination files, or tree texts such as '1/2 a(c) + c' for the oracle",
        )
        parser.add_argument(
            "--element",
            choices=ELEMENTS,
            help="verify a built-in element, or 'file' to read the one combination file given",
        )
        parser.add_argument("--untwisted", action="store_true")
        parser.add_argument("--instance", choices=INSTANCE_NAMES, default=None)
        parser.add_argument("--order", type=int, default=3)
        parser.add_argument("--module", action="store_true", help="act on the module side")

    # -----------------------------------
    def instance(self, default):
        config = self.config
        return build_instance(
            self.options["instance"] or default,
            n=config["n"],
            lam=config["lam"],
            max_weight=config["truncate_weight"],
            max_hairs=config["truncate_hairs"],
            valence_class=config["valence_class"],
        )

    def element(self, text, instance):
        if instance.name == "oracle":
            return parse_tree_combination(text, max_size=instance.m.max_size)
        return self.read_combination(text, window=instance.description["window"])

    def expect(self, count):
        if len(self.options["elements"]) != count:
            raise UsageError(
                f"mc {self.options['action']} takes {count} element(s), "
                f"got {len(self.options['elements'])}"
            )
        return self.options["elements"]

    def emit_element(self, x, status):
        if isinstance(x, TreeCombination):
            text = f"{x}\n# {status}"
            data = {"element": str(x), "status": status}
        else:
            text = format_combination(x) + f"# {status}"
            data = {"element": format_combination(x), "status": status}
        self.emit(text, data)

    # -----------------------------------
    def builtin(self, name):
        n, m, window = self.config["n"], self.config["m"], self.window
        if name == "alpha":
            return alpha(n, window=window)
        m = n if m is None and name != "T" else m
        if name == "m":
            return m_element(n, m, window=window)
        if name == "L":
            return line(n, m, window=window)
        return tripod_series(self.config["lam"], n, m, window=window)

    def verify(self):
        options = self.options
        name = ALIASES.get(options["element"], options["element"])
        if name and name != "file":
            self.expect(0)
            x = self.builtin(name)
        else:
            x = self.read_combination(self.expect(1)[0])
        twisted = not options["untwisted"] and name not in ("m", "alpha")
        if x.m is not None:
            result = verify_mc(x, window=self.window, twisted=twisted)
            self.emit(result.certificate(), {"ok": result.certified, "status": result.certificate()})
            if not result.certified:
                raise CheckFailed("not a Maurer-Cartan element")
            return
        if x.degrees() not in ([], [-1]):
            raise UsageError(f"MC elements have degree -1, got degrees {x.degrees()}")
        residual = gc_mc_residual(x, twisted=twisted)
        status = "OK exactly" if residual.is_zero() else "FAIL: nonzero residual"
        self.emit_element(residual, status)
        if not residual.is_zero():
            raise CheckFailed("not a Maurer-Cartan element")

    def push(self):
        instance = self.instance("gc-l")
        if instance.name == "oracle":
            raise UsageError("mc push runs on the graph instances")
        beta = self.element(self.expect(1)[0], instance)
        pushed = mc_pushforward(compose_with_W(instance), beta, self.options["order"])
        residual = module_residual(pushed, instance)
        status = "MC in the twisted module: " + ("OK" if residual.is_zero() else "FAIL")
        self.emit_element(pushed, status)
        if not residual.is_zero():
            raise CheckFailed("the pushforward is not Maurer-Cartan", str(residual))

    def act(self):
        instance = self.instance("oracle")
        beta, x = (self.element(text, instance) for text in self.expect(2))
        order = self.options["order"]
        if self.options["module"]:
            result = exp_action_module(beta, x, order, instance)
        else:
            result = exp_action_algebra(beta, x, order, instance)
        self.emit_element(result, f"acted to order {order}")

    def gauge(self):
        beta, x = (self.read_combination(path) for path in self.expect(2))
        order = self.options["order"]
        if beta.m is None:
            result = gauge_action(beta, x, order, differential=differential, bracket=bracket)
            residual = gc_mc_residual(result)
        else:
            result = gauge_action(
                beta, x, order, differential=twisted_differential, bracket=graft_bracket
            )
            residual = hairy_mc_residual(result)
        status = "MC after gauge: " + ("OK" if residual.is_zero() else "FAIL")
        self.emit_element(result, status)
        if not residual.is_zero():
            raise CheckFailed("the gauged element is not Maurer-Cartan", str(residual))

    def bch(self):
        depth = self.options["order"]
        if not self.options["elements"]:
            series = bch_series(depth)
            rows = [(format_fraction(Fraction(coef)), format_word(word)) for coef, word in series]
            self.emit(
                "\n".join(f"{coef}\t{word}" for coef, word in rows),
                {"depth": depth, "terms": [{"coef": c, "word": w} for c, w in rows]},
            )
            return
        instance = self.instance("oracle")
        x, y = (self.element(text, instance) for text in self.expect(2))
        self.emit_element(instance_bch(x, y, depth, instance), f"BCH to depth {depth}")

    def run(self, **options):
        self.options = options
        getattr(self, options["action"])()
