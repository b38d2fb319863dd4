"""Small SGF (FF[4]) reader/writer.

Only the collection/game-tree/node/property grammar is handled; property
values are kept as raw strings.  Errors carry the byte offset at which
parsing failed.
"""
from __future__ import annotations

from dataclasses import dataclass, field


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


@dataclass
class Node:
    props: dict[str, list[str]] = field(default_factory=dict)

    def get(self, key: str, default: str | None = None) -> str | None:
        vals = self.props.get(key)
        return vals[0] if vals else default

    def add(self, key: str, *values: str) -> None:
        self.props.setdefault(key, []).extend(values)


@dataclass
class GameTree:
    nodes: list[Node] = field(default_factory=list)
    variations: list[GameTree] = field(default_factory=list)


def parse(data: bytes | str) -> GameTree:
    """Parse the first game tree of a collection."""
    if isinstance(data, bytes):
        text = data.decode("utf-8", errors="replace")
    else:
        text = data
    i = _skip(text, 0)
    if i >= len(text) or text[i] != "(":
        raise ParseError("expected '('", i)
    tree, _ = _tree(text, i)
    return tree


def _skip(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _tree(text: str, i: int) -> tuple[GameTree, int]:
    assert text[i] == "("
    i = _skip(text, i + 1)
    tree = GameTree()
    while i < len(text) and text[i] == ";":
        node, i = _node(text, i + 1)
        tree.nodes.append(node)
        i = _skip(text, i)
    if not tree.nodes:
        raise ParseError("game tree without nodes", i)
    while i < len(text) and text[i] == "(":
        sub, i = _tree(text, i)
        tree.variations.append(sub)
        i = _skip(text, i)
    if i >= len(text):
        raise ParseError("unexpected end of input, missing ')'", i)
    if text[i] != ")":
        raise ParseError(f"unexpected {text[i]!r}", i)
    return tree, i + 1


def _node(text: str, i: int) -> tuple[Node, int]:
    node = Node()
    i = _skip(text, i)
    while i < len(text) and text[i].isalpha():
        j = i
        while j < len(text) and text[j].isalpha():
            j += 1
        key = "".join(ch for ch in text[i:j] if ch.isupper())
        if not key:
            raise ParseError("property identifier must contain upper case letters", i)
        i = _skip(text, j)
        if i >= len(text) or text[i] != "[":
            raise ParseError(f"property {key} without value", i)
        while i < len(text) and text[i] == "[":
            value, i = _value(text, i + 1)
            node.add(key, value)
            i = _skip(text, i)
    return node, i


def _value(text: str, i: int) -> tuple[str, int]:
    out = []
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if i + 1 >= len(text):
                break
            nxt = text[i + 1]
            if nxt != "\n":
                out.append(nxt)
            i += 2
            continue
        if ch == "]":
            return "".join(out), i + 1
        out.append(ch)
        i += 1
    raise ParseError("unterminated property value", i)


def escape(value: str) -> str:
    return value.replace("\\", "\\\\").replace("]", "\\]")


def dumps(tree: GameTree) -> str:
    parts: list[str] = []
    _dump(tree, parts)
    return "".join(parts) + "\n"


def _dump(tree: GameTree, parts: list[str]) -> None:
    parts.append("(")
    for node in tree.nodes:
        parts.append(";")
        for key, values in node.props.items():
            parts.append(key)
            parts.extend(f"[{escape(v)}]" for v in values)
    for sub in tree.variations:
        parts.append("\n")
        _dump(sub, parts)
    parts.append(")")


def to_sgf_point(size: int, p: int) -> str:
    if p < 0:
        return ""
    row, col = divmod(p, size)
    return "abcdefghijklmnopqrs"[col] + "abcdefghijklmnopqrs"[row]


def from_sgf_point(size: int, s: str) -> int:
    """Point index; ``-1`` (pass) for an empty value or ``tt`` on small boards."""
    if s == "" or (s == "tt" and size <= 19):
        return -1
    if len(s) != 2:
        raise ValueError(f"bad SGF point {s!r}")
    col, row = ord(s[0]) - 97, ord(s[1]) - 97
    if not (0 <= col < size and 0 <= row < size):
        raise ValueError(f"SGF point {s!r} off a {size}x{size} board")
    return row * size + col


def expand_points(size: int, values: list[str]) -> list[int]:
    """Expand point lists, including ``aa:cc`` compressed rectangles."""
    out = []
    for v in values:
        if ":" in v:
            a, b = v.split(":")
            c0, r0 = ord(a[0]) - 97, ord(a[1]) - 97
            c1, r1 = ord(b[0]) - 97, ord(b[1]) - 97
            for r in range(min(r0, r1), max(r0, r1) + 1):
                for c in range(min(c0, c1), max(c0, c1) + 1):
                    out.append(from_sgf_point(size, chr(97 + c) + chr(97 + r)))
        else:
            out.append(from_sgf_point(size, v))
    return out
