"""Exact elementary-group word calculator.

Dict-in / dict-out wrappers over the native JSON bridge. Payload and
response layouts are documented by the JSON schema files shipped in
``schemas/v1`` of the source tree; arbitrary-size integers travel as
decimal strings.
"""

from __future__ import annotations

import json
from typing import Any

try:
    from ._elemex import commands, run_json, selftest_json
except ImportError:  # flat layout: extension next to the package (build tree)
    from _elemex import commands, run_json, selftest_json

__all__ = ["CommandError", "commands", "run", "selftest"]


class CommandError(RuntimeError):
    """A command failed; ``kind`` is the machine-readable error kind."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.message = message


def run(command: str, payload: dict[str, Any] | None = None, *, seed: int = 0,
        cases: int = 500) -> dict[str, Any]:
    """Run one command and return its result dict; raises CommandError on failure."""
    envelope = json.loads(run_json(command, json.dumps(payload or {}), seed, cases))
    if envelope["status"] != "ok":
        err = envelope["error"]
        raise CommandError(err["kind"], err["message"])
    return envelope["result"]


def selftest(seed: int = 0, cases: int = 500) -> dict[str, Any]:
    """Run every property suite; failures are report content, not exceptions."""
    return json.loads(selftest_json(seed, cases))
