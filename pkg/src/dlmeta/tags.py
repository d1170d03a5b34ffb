"""Tags and tagged conclusions (``+partial ~fly(tweety)``)."""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import DLError
from .theory import Literal, parse_literal

PLUS = "+"
MINUS = "-"

_TAG_RE = re.compile(r"^([+-])([A-Za-z_][A-Za-z0-9_]*)$")


class Tag(NamedTuple):
    sign: str
    name: str

    def __str__(self):
        return self.sign + self.name

    @property
    def opposite(self) -> "Tag":
        return Tag(MINUS if self.sign == PLUS else PLUS, self.name)

    @property
    def positive(self) -> bool:
        return self.sign == PLUS


def parse_tag(text: str) -> Tag:
    m = _TAG_RE.match(text.strip())
    if not m:
        raise DLError(f"malformed tag {text!r} (expected +name or -name)")
    return Tag(m.group(1), m.group(2))


class Conclusion(NamedTuple):
    tag: Tag
    literal: Literal

    def __str__(self):
        return f"{self.tag} {self.literal}"

    def to_json(self) -> dict:
        return {"sign": self.tag.sign, "tag": self.tag.name, "literal": str(self.literal)}

    @classmethod
    def from_json(cls, obj: dict) -> "Conclusion":
        return cls(Tag(obj["sign"], obj["tag"]), parse_literal(obj["literal"]))


def parse_conclusion(text: str) -> Conclusion:
    """Parse ``"+partial ~fly(tweety)"`` into a :class:`Conclusion`."""
    parts = text.split(None, 1)
    if len(parts) != 2:
        raise DLError(f"malformed conclusion {text!r}")
    return Conclusion(parse_tag(parts[0]), parse_literal(parts[1]))
