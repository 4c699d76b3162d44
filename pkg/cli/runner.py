"""``graphcx <verb> [flags]`` on top of the management commands of this app.

``manage.py <verb>`` runs the same commands; this entry point only adds the
documented exit codes and a verb listing.
"""

import os
import sys

from django.core.management import find_commands, load_command_class
from django.core.management.base import CommandError

PROG = "graphcx"
USAGE_EXIT = 2
VERBS = sorted(find_commands(os.path.join(os.path.dirname(__file__), "management")))


def usage():
    return f"usage: {PROG} <verb> [flags]\n\nverbs: {', '.join(VERBS)}\n"


def run(argv=None, stdout=None, stderr=None):
    """Run one verb and return its exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if not argv or argv[0] in ("-h", "--help"):
        (stdout if argv else stderr).write(usage())
        return 0 if argv else USAGE_EXIT
    verb, rest = argv[0], argv[1:]
    if verb not in VERBS:
        stderr.write(f"{PROG}: unknown verb {verb!r}\n{usage()}")
        return USAGE_EXIT

    command = load_command_class("cli", verb)
    parser = command.create_parser(PROG, verb)
    try:
        options = vars(parser.parse_args(rest))
    except CommandError as exc:
        stderr.write(f"{PROG} {verb}: {exc}\n")
        return USAGE_EXIT
    except SystemExit as exc:
        return exc.code or 0
    args = options.pop("args", ())
    options["skip_checks"] = True
    try:
        command.execute(*args, stdout=stdout, stderr=stderr, **options)
    except CommandError as exc:
        stderr.write(f"{PROG} {verb}: {exc}\n")
        return exc.returncode
    return 0


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "graphcx.settings")
    import django

    django.setup()
    sys.exit(run())


if __name__ == "__main__":
    main()
