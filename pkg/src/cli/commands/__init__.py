"""devpatch subcommands."""

from . import export, solve, unroll, verify

COMMANDS = (solve, verify, export, unroll)

__all__ = ["COMMANDS", "export", "solve", "unroll", "verify"]
