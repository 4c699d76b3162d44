from cli.base import GraphcxCommand
from graphcx.exceptions import CheckFailed, UsageError
from treeop.operad import graft, labeled_trees, rt_compose
from treeop.trees import parse_tree_combination

ACTIONS = ("compose", "graft", "count")


class Command(GraphcxCommand):
    help = "Rooted-tree operad: partial composition, grafting and Cayley counts"

    def add_verb_arguments(self, parser):
        parser.add_argument("action", choices=ACTIONS)
        parser.add_argument("trees", nargs="*", metavar="tree")
        parser.add_argument("--label", default="1", help="input of the left tree to compose into")
        parser.add_argument("--arity", type=int)

    def run(self, **options):
        action, trees = options["action"], options["trees"]
        if action == "count":
            arity = options["arity"]
            if arity is None or arity < 1:
                raise UsageError("rt count needs a positive --arity")
            count = len(labeled_trees(arity))
            expected = arity ** (arity - 1)
            self.emit(
                f"{arity}\t{count}",
                {"arity": arity, "count": count, "expected": expected},
            )
            if count != expected:
                raise CheckFailed(f"found {count} rooted trees on {arity} labels, expected {expected}")
            return
        if len(trees) != 2:
            raise UsageError(f"rt {action} takes two trees, got {len(trees)}")
        left, right = (parse_tree_combination(text) for text in trees)
        if action == "compose":
            label = options["label"]
            result = rt_compose(left, int(label) if label.isdigit() else label, right)
        else:
            result = graft(left, right)
        self.emit(str(result), {"result": str(result)})
