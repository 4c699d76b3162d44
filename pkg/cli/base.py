"""Base class of the graphcx management commands.

Every verb accepts the common flags, validates them through
:class:`~cli.api.serializers.RunConfigSerializer` and writes either text or
JSON (``--emit``) to stdout or to ``--out``. Engine errors become
``CommandError`` with the exit code of the error class.
"""

import logging
import sys

from django.core.management.base import BaseCommand, CommandError
from rest_framework.renderers import JSONRenderer

from cli.api.serializers import CombinationSerializer, RunConfigSerializer
from graphcore.combination import Window
from graphcore.grammar import format_combination, parse_combination
from graphcx.exceptions import GraphcxError, UsageError

logger = logging.getLogger(__name__)

CONFIG_FIELDS = (
    "n",
    "m",
    "valence_class",
    "lam",
    "truncate_weight",
    "truncate_hairs",
    "max_vertices",
    "loops",
    "samples",
    "seed",
    "jobs",
    "emit",
    "out",
)


class GraphcxCommand(BaseCommand):
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, default=2)
        parser.add_argument("--m", type=int, default=None)
        parser.add_argument("--class", dest="valence_class", type=int, default=1)
        parser.add_argument("--lambda", dest="lam", default="1")
        parser.add_argument("--truncate-weight", type=int)
        parser.add_argument("--truncate-hairs", type=int)
        parser.add_argument("--max-vertices", type=int)
        parser.add_argument("--loops", type=int)
        parser.add_argument("--samples", type=int, default=1)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--jobs", type=int)
        parser.add_argument("--emit", choices=["text", "json"], default="text")
        parser.add_argument("--out")
        self.add_verb_arguments(parser)

    def add_verb_arguments(self, parser):
        pass

    # -----------------------------------
    def handle(self, *args, **options):
        data = {k: options[k] for k in CONFIG_FIELDS if options.get(k) is not None}
        serializer = RunConfigSerializer(data=data)
        if not serializer.is_valid():
            problems = "; ".join(
                f"{field}: {' '.join(str(e) for e in errors)}"
                for field, errors in serializer.errors.items()
            )
            raise CommandError(f"invalid flags: {problems}", returncode=UsageError.exit_code)
        self.config = serializer.validated_data
        try:
            self.run(**options)
        except GraphcxError as exc:
            message = str(exc)
            if getattr(exc, "offending", None):
                message += f"\n{exc.offending}"
            raise CommandError(message, returncode=exc.exit_code)

    def run(self, **options):
        raise NotImplementedError

    # ----------------------------------- inputs
    @property
    def window(self):
        window = Window(
            max_weight=self.config["truncate_weight"],
            max_vertices=self.config["max_vertices"],
            max_hairs=self.config["truncate_hairs"],
        )
        return None if window.unbounded else window

    def read_text(self, path):
        if path == "-":
            return sys.stdin.read()
        try:
            with open(path, encoding="utf-8") as handle:
                return handle.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}")

    def read_combination(self, path, window=None):
        return parse_combination(self.read_text(path), window=window or self.window)

    # ----------------------------------- outputs
    def emit(self, text, data):
        """Write ``text`` or, with ``--emit json``, the rendered ``data``."""
        if self.config["emit"] == "json":
            body = JSONRenderer().render(data, renderer_context={"indent": 2}).decode()
            body += "\n"
        else:
            body = text if text.endswith("\n") else text + "\n"
        if self.config["out"]:
            try:
                with open(self.config["out"], "w", encoding="utf-8") as handle:
                    handle.write(body)
            except OSError as exc:
                raise UsageError(f"cannot write {self.config['out']}: {exc.strerror}")
            logger.info("Wrote %d bytes to %s", len(body), self.config["out"])
            self.stdout.write(self.style.SUCCESS(f"Wrote {self.config['out']}"))
        else:
            self.stdout.write(body, ending="")

    def emit_combination(self, combination, extra=None):
        data = CombinationSerializer(combination).data
        if extra:
            data = {**data, **extra}
        self.emit(format_combination(combination), data)
