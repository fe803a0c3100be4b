"""Packaged indexing rule sets, one minilang prelude per rule."""

from __future__ import annotations

from importlib import resources

__all__ = ["RULE_NAMES", "UnknownRuleError", "prelude_source"]

RULE_NAMES = ("trailing-drop", "all-drop", "apl", "drop-size1")

_FILES = {
    "trailing-drop": "trailing_drop.mjl",
    "all-drop": "all_drop.mjl",
    "apl": "apl.mjl",
    "drop-size1": "drop_size1.mjl",
}


class UnknownRuleError(ValueError):
    def __init__(self, rule: str):
        known = ", ".join(RULE_NAMES)
        super().__init__(f"unknown indexing rule {rule!r}; known rules: {known}")
        self.rule = rule


def prelude_source(rule: str) -> str:
    fname = _FILES.get(rule)
    if fname is None:
        raise UnknownRuleError(rule)
    return (
        resources.files("dispatchkit").joinpath("preludes").joinpath(fname)
        .read_text(encoding="utf-8")
    )
