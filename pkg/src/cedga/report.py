"""Deterministic machine-readable reports.

Every report carries the tool version and a digest of the raw inputs, and
fields are emitted in a fixed order so identical inputs produce
byte-identical reports.
"""

from __future__ import annotations

import hashlib
import json

TOOL_NAME = "cedga"
VERSION = "0.1.0"


def input_digest(*texts: str) -> str:
    h = hashlib.sha256()
    for text in texts:
        h.update(text.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()


def make_report(command: str, digest: str, status: str, payload: dict) -> dict:
    report = {
        "tool": TOOL_NAME,
        "version": VERSION,
        "command": command,
        "input_sha256": digest,
        "status": status,
    }
    report.update(payload)
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"
