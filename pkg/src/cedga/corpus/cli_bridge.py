"""Late import of the CLI entry point, breaking the corpus <-> cli cycle."""

from __future__ import annotations


def cli_main(argv) -> int:
    from ..cli import main
    return main(argv)
